#include "mzuq/run_config.hpp"
#include "mzuq/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv) {
    CLI::App app{"Polynomial chaos Burgers solver with adaptive Mori-Zwanzig memory closure"};
    app.set_version_flag("--version", "mzuq 0.1.0");

    std::string config_path;
    app.add_option("-c,--config", config_path, "key = value configuration file")->check(CLI::ExistingFile);

    // Every configuration key doubles as an override flag, e.g. --mode=adaptive.
    std::map<std::string, std::string> flags;
    for (const auto& key : mzuq::config_keys())
        app.add_option("--" + key, flags[key], "override '" + key + "'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mzuq::kExitConfig;
    }

    mzuq::Overrides overrides;
    for (const auto& key : mzuq::config_keys())
        if (app.count("--" + key) > 0) overrides.emplace_back(key, flags[key]);

    mzuq::RunConfig config;
    try {
        config = config_path.empty() ? mzuq::parse_config_text("", overrides)
                                     : mzuq::parse_config(config_path, overrides);
    } catch (const mzuq::ConfigError& e) {
        std::cerr << "mzuq: " << e.what() << '\n';
        return mzuq::kExitConfig;
    }
    return mzuq::run(config, std::cerr);
}
