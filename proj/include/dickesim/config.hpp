// config.hpp - run configuration, file parsing (JSON / flat TOML), presets
#pragma once

#include "dickesim/hamiltonians.hpp"
#include "dickesim/propagators.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dicke {

// One simulation recipe; the sweep runs one job per g/g_c entry. Sweep lists
// are normalized (sorted ascending, deduplicated) at validation so outputs
// are invariant under permutations of the input list.
struct RunConfig {
    std::string name = "run";
    double omega = 1.0;
    double Omega_ratio = 0.0;  // Omega / omega, required
    int n_spins = 1;
    std::vector<double> g_over_gc;  // required, non-empty
    double kappa_over_omega = 0.0;
    double gamma_over_Omega = 0.0;
    int cutoff = 0;  // required
    ModelKind model = ModelKind::FullDicke;
    bool open_system = false;
    bool quench = true;  // start from the g = 0 ground state (the only protocol)
    double t_max_omega = 25.0;
    int n_times = 251;
    std::vector<double> husimi_times_omega;
    double tolerance = 1e-10;
    double tail_threshold = 1e-6;
    double max_step_omega = 0.0;  // Lindblad step cap in omega*t units; 0 = stability-limited
    int husimi_points = 201;
    std::vector<std::string> outputs;  // scan: photon_heatmap (default) and/or echo_map
    int jobs = 0;                      // 0 = hardware default

    bool operator==(const RunConfig&) const = default;

    // Throws ConfigError listing every problem; normalizes the sweep.
    void validate_and_normalize();

    ModelParams make_params(double g_ratio) const;
    TimeGrid make_grid() const;  // uniform samples merged with husimi times
    bool wants_output(const std::string& key) const;
};

void to_json(nlohmann::ordered_json& j, const RunConfig& c);
// Applies only the keys present in j; unknown keys and type mismatches are
// collected into errors with field names.
void apply_json(RunConfig& c, const nlohmann::json& j, std::vector<std::string>& errors);

// Flat TOML subset (key = value; strings, numbers, booleans, one-line numeric
// arrays, # comments) parsed into a JSON object. Line numbers in diagnostics.
nlohmann::json parse_flat_toml(const std::string& text);

// Reads .json or .toml (by extension, else sniffed) and overlays onto `base`.
RunConfig load_config_file(const std::string& path, RunConfig base = RunConfig{});

std::vector<std::string> preset_names();
RunConfig preset_config(const std::string& name);

}  // namespace dicke
