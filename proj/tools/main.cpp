// main.cpp - dickesim command-line driver
#include <CLI11.hpp>

#include "dickesim/runner.hpp"
#include "dickesim/version.hpp"

#include <functional>
#include <iostream>

namespace {

struct SubcommandArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    int jobs = 0;
};

void add_common_options(CLI::App* sub, SubcommandArgs& args) {
    sub->add_option("--config", args.config_path, "Config file, TOML or JSON");
    sub->add_option("--preset", args.preset, "Named preset recipe (see --list-presets)");
    sub->add_option("--out", args.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--jobs", args.jobs, "Worker threads, 0 = hardware default");
}

dicke::RunConfig resolve_config(const SubcommandArgs& args, const char* fallback_preset) {
    dicke::RunConfig cfg;
    bool have = false;
    if (!args.preset.empty()) {
        cfg = dicke::preset_config(args.preset);
        have = true;
    }
    if (!args.config_path.empty()) {
        cfg = dicke::load_config_file(args.config_path, cfg);
        have = true;
    }
    if (!have) {
        if (fallback_preset == nullptr)
            throw dicke::ConfigError("provide --config or --preset");
        cfg = dicke::preset_config(fallback_preset);
        std::cerr << "note: no config given, using preset '" << fallback_preset << "'\n";
    }
    if (args.jobs > 0) cfg.jobs = args.jobs;
    return cfg;
}

int execute(const SubcommandArgs& args, const char* fallback_preset,
            const std::function<dicke::Dataset(dicke::RunConfig)>& runner) {
    try {
        dicke::RunConfig cfg = resolve_config(args, fallback_preset);
        dicke::Dataset ds = runner(std::move(cfg));
        std::vector<std::string> files = ds.write(args.out_dir);
        for (const auto& f : files) std::cout << "wrote " << f << "\n";
        std::cout << "done in " << ds.wall_clock_s << " s\n";
        if (ds.any_breach) {
            std::cerr << "warning: Fock-space truncation breached; affected cells are "
                         "flagged and partial output was written\n";
            return 3;
        }
        return 0;
    } catch (const dicke::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dickesim - quench dynamics of the Dicke model and its reductions"};
    app.set_version_flag("--version", dicke::kVersion);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "List preset names and exit");

    SubcommandArgs scan_args, compare_args, husimi_args, thresholds_args;
    CLI::App* scan = app.add_subcommand(
        "scan", "Photon-number heatmap over a g/g_c sweep (optionally the echo map)");
    add_common_options(scan, scan_args);
    CLI::App* compare = app.add_subcommand(
        "compare", "Isolated vs inverted-oscillator vs open dynamics at one coupling");
    add_common_options(compare, compare_args);
    CLI::App* husimi =
        app.add_subcommand("husimi", "Husimi function snapshots at configured times");
    add_common_options(husimi, husimi_args);
    CLI::App* thresholds =
        app.add_subcommand("thresholds", "Closed-form critical thresholds across the sweep");
    add_common_options(thresholds, thresholds_args);

    app.require_subcommand(0, 1);
    CLI11_PARSE(app, argc, argv);

    if (list_presets) {
        for (const auto& name : dicke::preset_names()) std::cout << name << "\n";
        return 0;
    }

    if (scan->parsed()) return execute(scan_args, nullptr, dicke::run_scan);
    if (compare->parsed()) return execute(compare_args, "fig3-desk", dicke::run_compare);
    if (husimi->parsed()) return execute(husimi_args, nullptr, dicke::run_husimi);
    if (thresholds->parsed()) return execute(thresholds_args, nullptr, dicke::run_thresholds);

    std::cout << app.help();
    return 0;
}
