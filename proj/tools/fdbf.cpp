// SPDX-License-Identifier: Apache-2.0
//
// fdbf -- wideband full-duplex beamforming simulator
//
// Command line front end. Exit codes: 0 success, 2 usage, 3 config,
// 4 io, 5 numeric, 1 internal. Errors go to stderr as a single line
// `fdbf: error category=<cat>: <detail>`.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fdbf/config.hpp"
#include "fdbf/sweep.hpp"

namespace {

int fail(const char* category, int code, const std::string& detail) {
    std::cerr << "fdbf: error category=" << category << ": " << detail << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wideband full-duplex beamforming link-level simulator"};
    app.require_subcommand(1);

    std::string config_path, preset, out_path, format;
    std::uint64_t seed = 0;
    int trials = 0;
    bool full = false;
    bool seed_set = false, trials_set = false;

    CLI::App* run = app.add_subcommand("run", "Run a Monte Carlo sweep");
    run->add_option("--config", config_path, "Flat key = value scenario file");
    run->add_option("--preset", preset, "Named preset or figure recipe (overrides the file's)");
    run->add_option("--seed", seed, "Master seed")->each([&](const std::string&) { seed_set = true; });
    run->add_option("--trials", trials, "Trials per sweep point")
        ->each([&](const std::string&) { trials_set = true; });
    run->add_option("--out", out_path, "Output path (default stdout)");
    run->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    run->add_flag("--full", full, "Include per-trial records in JSON output");

    CLI::App* recipes = app.add_subcommand("recipes", "List figure recipes");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return fail("usage", 2, "invalid command line");
    }

    if (recipes->parsed()) {
        for (const auto& [name, desc] : fdbf::recipe_list())
            std::cout << name << "  " << desc << "\n";
        return 0;
    }

    try {
        fdbf::ScenarioConfig cfg;
        if (!config_path.empty())
            cfg = fdbf::load_config(config_path, preset);
        else if (!preset.empty())
            cfg = fdbf::preset_config(preset);
        else
            return fail("usage", 2, "run needs --config or --preset");

        // precedence: --seed > FDBF_SEED > config file
        if (const char* env = std::getenv("FDBF_SEED"))
            cfg.seed = std::strtoull(env, nullptr, 10);
        if (seed_set)
            cfg.seed = seed;
        if (trials_set)
            cfg.trials = trials;
        if (!out_path.empty())
            cfg.out_path = out_path;
        if (!format.empty())
            cfg.format = format;
        if (full)
            cfg.full_records = true;
        fdbf::validate_config(cfg);

        const fdbf::SweepResult res = fdbf::run_sweep(cfg);
        fdbf::emit_results(res, cfg);
        return 0;
    } catch (const fdbf::ConfigError& e) {
        return fail("config", 3, e.what());
    } catch (const std::invalid_argument& e) {
        return fail("config", 3, e.what());
    } catch (const std::domain_error& e) {
        return fail("numeric", 5, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail("io", 4, e.what());
    } catch (const std::runtime_error& e) {
        const std::string what = e.what();
        if (what.find("cannot open") != std::string::npos ||
            what.find("write failed") != std::string::npos)
            return fail("io", 4, what);
        return fail("numeric", 5, what);
    } catch (const std::exception& e) {
        return fail("internal", 1, e.what());
    }
}
