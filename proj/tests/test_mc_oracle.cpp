#include "mzuq/mc_oracle.hpp"
#include "mzuq/uq_stats.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mzuq;
using namespace mzuq::testing;

TEST_SUITE("mc_oracle") {

TEST_CASE("splitmix64 reference outputs") {
    // Consecutive outputs of the reference generator seeded with 0.
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("draws are uniform on [-1, 1) and reproducible") {
    McConfig cfg;
    cfg.seed = 7;
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double xi = draw_xi(cfg, i);
        CHECK(xi >= -1.0);
        CHECK(xi < 1.0);
        CHECK(xi == draw_xi(cfg, i));
        sum += xi;
        sum2 += xi * xi;
    }
    CHECK(std::abs(sum / n) < 4 * std::sqrt(1.0 / 3.0 / n));
    CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.02));

    cfg.antithetic = true;
    for (int i = 0; i < 10; i += 2) CHECK(draw_xi(cfg, i + 1) == -draw_xi(cfg, i));
}

TEST_CASE("xi = -1 gives the zero trajectory") {
    const auto u = sample_trajectory(-1.0, 16, 0.1, 1e-3, 0.1);
    CHECK(u.max_abs() == 0.0);
}

TEST_CASE("xi = 0 starts from sin x with energy pi / 2") {
    bool seen = false;
    sample_trajectory(0.0, 16, 0.1, 1e-3, 0.01, [&](double t, const PCField& u) {
        if (t == 0.0) {
            CHECK(mean_energy(u, 1) == doctest::Approx(kPi / 2).epsilon(1e-14));
            seen = true;
        }
    });
    CHECK(seen);
}

TEST_CASE("energy of every viscous sample is non-increasing") {
    for (double xi : {-0.5, 0.0, 0.6, 1.0}) {
        double previous = INFINITY;
        sample_trajectory(xi, 32, 0.1, 1e-3, 0.5, [&](double, const PCField& u) {
            const double e = mean_energy(u, 1);
            CHECK(e <= previous + 1e-10);
            previous = e;
        });
    }
}

TEST_CASE("moment estimates") {
    const auto m = estimate_moments({1.0, 2.0, 3.0, 4.0});
    CHECK(m.mean == doctest::Approx(2.5));
    CHECK(m.variance == doctest::Approx(5.0 / 3.0));
    CHECK(m.mean_stderr == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(m.stddev() == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(m.variance_stderr > 0.0);
    CHECK_THROWS(estimate_moments({1.0}));
}

TEST_CASE("initial statistics within three standard errors") {
    McConfig cfg;
    cfg.n_samples = 1000;
    cfg.n_modes = 8;
    cfg.t_end = 1e-3;
    const auto stats = mc_statistics(cfg, {0.0});
    REQUIRE(stats.size() == 1);
    const auto& e = stats[0].energy;
    CHECK(std::abs(e.mean - 2 * kPi / 3) < 3 * e.mean_stderr);
    CHECK(std::abs(e.variance - 16 * kPi * kPi / 45) < 3 * e.variance_stderr);
    const auto& g = stats[0].gradient;
    CHECK(std::abs(g.mean - 4 * kPi / 3) < 3 * g.mean_stderr);
}

TEST_CASE("equal seeds give identical statistics regardless of threads") {
    McConfig cfg;
    cfg.n_samples = 16;
    cfg.n_modes = 16;
    cfg.t_end = 0.05;
    cfg.threads = 1;
    const auto a = mc_statistics(cfg, {0.0, 0.02, 0.05});
    cfg.threads = 3;
    const auto b = mc_statistics(cfg, {0.0, 0.02, 0.05});
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].t == b[i].t);
        CHECK(a[i].energy.mean == b[i].energy.mean);
        CHECK(a[i].energy.variance == b[i].energy.variance);
        CHECK(a[i].gradient.mean == b[i].gradient.mean);
        CHECK(a[i].gradient.variance == b[i].gradient.variance);
    }
    cfg.seed += 1;
    CHECK(mc_statistics(cfg, {0.05})[0].energy.mean != a[2].energy.mean);
}

TEST_CASE("requested times outside the run are rejected") {
    McConfig cfg;
    cfg.n_samples = 2;
    cfg.n_modes = 8;
    cfg.t_end = 0.01;
    CHECK_THROWS(mc_statistics(cfg, {0.5}));
}

} // TEST_SUITE
