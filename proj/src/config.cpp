// config.cpp - RunConfig validation, JSON/TOML parsing, figure-recipe presets
#include "dickesim/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dicke {

using nlohmann::json;
using nlohmann::ordered_json;

void RunConfig::validate_and_normalize() {
    std::vector<std::string> errors;
    if (!(omega > 0)) errors.push_back("omega: must be > 0");
    if (!(Omega_ratio > 0)) errors.push_back("Omega_ratio: must be set > 0");
    if (n_spins < 1) errors.push_back("n_spins: must be >= 1");
    if (cutoff < 1) errors.push_back("cutoff: must be set >= 1");
    if (g_over_gc.empty()) errors.push_back("g_over_gc: sweep list must be non-empty");
    for (double g : g_over_gc)
        if (!(g >= 0) || !std::isfinite(g)) {
            errors.push_back("g_over_gc: entries must be finite and >= 0");
            break;
        }
    if (kappa_over_omega < 0) errors.push_back("kappa_over_omega: must be >= 0");
    if (gamma_over_Omega < 0) errors.push_back("gamma_over_Omega: must be >= 0");
    if (!(t_max_omega > 0)) errors.push_back("t_max_omega: must be > 0");
    if (n_times < 2) errors.push_back("n_times: must be >= 2");
    if (!(tolerance > 0)) errors.push_back("tolerance: must be > 0");
    if (!(tail_threshold > 0)) errors.push_back("tail_threshold: must be > 0");
    if (max_step_omega < 0) errors.push_back("max_step_omega: must be >= 0");
    if (husimi_points < 11) errors.push_back("husimi_points: must be >= 11");
    if (!quench) errors.push_back("quench: only the quench protocol (true) is supported");
    for (double t : husimi_times_omega)
        if (t < 0 || t > t_max_omega) {
            errors.push_back("husimi_times_omega: entries must lie in [0, t_max_omega]");
            break;
        }
    for (const std::string& o : outputs)
        if (o != "photon_heatmap" && o != "echo_map")
            errors.push_back("outputs: unknown product '" + o + "'");
    if (open_system && gamma_over_Omega > 0 && !model_acts_on_product_space(model))
        errors.push_back("gamma_over_Omega: spin damping requires a spin-carrying model");
    if (jobs < 0) errors.push_back("jobs: must be >= 0");

    if (!errors.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }

    std::sort(g_over_gc.begin(), g_over_gc.end());
    g_over_gc.erase(std::unique(g_over_gc.begin(), g_over_gc.end()), g_over_gc.end());
    std::sort(husimi_times_omega.begin(), husimi_times_omega.end());
    husimi_times_omega.erase(std::unique(husimi_times_omega.begin(), husimi_times_omega.end()),
                             husimi_times_omega.end());
}

ModelParams RunConfig::make_params(double g_ratio) const {
    ModelParams p;
    p.omega = omega;
    p.Omega = omega * Omega_ratio;
    p.n_spins = n_spins;
    p.g = g_ratio * p.g_c();
    p.kappa = kappa_over_omega * omega;
    p.gamma = gamma_over_Omega * p.Omega;
    p.cutoff = cutoff;
    return p;
}

TimeGrid RunConfig::make_grid() const {
    std::vector<double> samples;
    samples.reserve(n_times + husimi_times_omega.size());
    for (int i = 0; i < n_times; ++i)
        samples.push_back(t_max_omega * double(i) / double(n_times - 1) / omega);
    for (double t : husimi_times_omega) samples.push_back(t / omega);
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                  samples.end());
    return TimeGrid::from_samples(std::move(samples));
}

bool RunConfig::wants_output(const std::string& key) const {
    if (outputs.empty()) return key == "photon_heatmap";
    return std::find(outputs.begin(), outputs.end(), key) != outputs.end();
}

void to_json(ordered_json& j, const RunConfig& c) {
    j = ordered_json{{"name", c.name},
                     {"omega", c.omega},
                     {"Omega_ratio", c.Omega_ratio},
                     {"n_spins", c.n_spins},
                     {"g_over_gc", c.g_over_gc},
                     {"kappa_over_omega", c.kappa_over_omega},
                     {"gamma_over_Omega", c.gamma_over_Omega},
                     {"cutoff", c.cutoff},
                     {"model", model_kind_name(c.model)},
                     {"open_system", c.open_system},
                     {"quench", c.quench},
                     {"t_max_omega", c.t_max_omega},
                     {"n_times", c.n_times},
                     {"husimi_times_omega", c.husimi_times_omega},
                     {"tolerance", c.tolerance},
                     {"tail_threshold", c.tail_threshold},
                     {"max_step_omega", c.max_step_omega},
                     {"husimi_points", c.husimi_points},
                     {"outputs", c.outputs},
                     {"jobs", c.jobs}};
}

namespace {

template <typename T>
bool read_field(const json& j, const char* key, T& out, std::vector<std::string>& errors) {
    auto it = j.find(key);
    if (it == j.end()) return false;
    try {
        out = it->get<T>();
        return true;
    } catch (const json::exception&) {
        errors.push_back(std::string(key) + ": wrong type");
        return false;
    }
}

// scalar-or-list
bool read_sweep(const json& j, const char* key, std::vector<double>& out,
                std::vector<std::string>& errors) {
    auto it = j.find(key);
    if (it == j.end()) return false;
    if (it->is_number()) {
        out = {it->get<double>()};
        return true;
    }
    try {
        out = it->get<std::vector<double>>();
        return true;
    } catch (const json::exception&) {
        errors.push_back(std::string(key) + ": expected a number or a list of numbers");
        return false;
    }
}

}  // namespace

void apply_json(RunConfig& c, const json& j, std::vector<std::string>& errors) {
    if (!j.is_object()) {
        errors.push_back("config root must be an object/table");
        return;
    }
    static const std::vector<std::string> known = {
        "name",         "omega",        "Omega_ratio",        "n_spins",
        "g_over_gc",    "kappa_over_omega", "gamma_over_Omega", "cutoff",
        "model",        "open_system",  "quench",             "t_max_omega",
        "n_times",      "husimi_times_omega", "tolerance",    "tail_threshold",
        "max_step_omega", "husimi_points", "outputs",     "jobs"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            errors.push_back(it.key() + ": unknown config key");

    read_field(j, "name", c.name, errors);
    read_field(j, "omega", c.omega, errors);
    read_field(j, "Omega_ratio", c.Omega_ratio, errors);
    read_field(j, "n_spins", c.n_spins, errors);
    read_sweep(j, "g_over_gc", c.g_over_gc, errors);
    read_field(j, "kappa_over_omega", c.kappa_over_omega, errors);
    read_field(j, "gamma_over_Omega", c.gamma_over_Omega, errors);
    read_field(j, "cutoff", c.cutoff, errors);
    std::string model_name;
    if (read_field(j, "model", model_name, errors)) {
        try {
            c.model = model_kind_from_name(model_name);
        } catch (const ConfigError& e) {
            errors.push_back(std::string("model: ") + e.what());
        }
    }
    read_field(j, "open_system", c.open_system, errors);
    read_field(j, "quench", c.quench, errors);
    read_field(j, "t_max_omega", c.t_max_omega, errors);
    read_field(j, "n_times", c.n_times, errors);
    read_field(j, "husimi_times_omega", c.husimi_times_omega, errors);
    read_field(j, "tolerance", c.tolerance, errors);
    read_field(j, "tail_threshold", c.tail_threshold, errors);
    read_field(j, "max_step_omega", c.max_step_omega, errors);
    read_field(j, "husimi_points", c.husimi_points, errors);
    read_field(j, "outputs", c.outputs, errors);
    read_field(j, "jobs", c.jobs, errors);
}

namespace {

std::string strip_toml_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

json parse_toml_value(const std::string& value, int line_no) {
    if (value.empty())
        throw ConfigError("toml line " + std::to_string(line_no) + ": missing value");
    if (value == "true") return true;
    if (value == "false") return false;
    if (value.front() == '"') {
        if (value.size() < 2 || value.back() != '"')
            throw ConfigError("toml line " + std::to_string(line_no) + ": unterminated string");
        return value.substr(1, value.size() - 2);
    }
    if (value.front() == '[') {
        if (value.back() != ']')
            throw ConfigError("toml line " + std::to_string(line_no) +
                              ": arrays must close on the same line");
        json arr = json::array();
        std::string inner = value.substr(1, value.size() - 2);
        std::stringstream ss(inner);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            if (item.empty()) continue;
            arr.push_back(parse_toml_value(item, line_no));
        }
        return arr;
    }
    try {
        std::size_t used = 0;
        double d = std::stod(value, &used);
        if (used != value.size())
            throw ConfigError("toml line " + std::to_string(line_no) + ": bad number '" +
                              value + "'");
        if (value.find_first_of(".eE") == std::string::npos &&
            std::abs(d) < 9.0e15)  // integral literal
            return static_cast<std::int64_t>(d);
        return d;
    } catch (const std::invalid_argument&) {
        throw ConfigError("toml line " + std::to_string(line_no) + ": cannot parse value '" +
                          value + "'");
    } catch (const std::out_of_range&) {
        throw ConfigError("toml line " + std::to_string(line_no) + ": number out of range");
    }
}

}  // namespace

json parse_flat_toml(const std::string& text) {
    json out = json::object();
    std::stringstream ss(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(ss, raw)) {
        ++line_no;
        std::string line = trim(strip_toml_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[')
            throw ConfigError("toml line " + std::to_string(line_no) +
                              ": tables are not supported; use flat keys");
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("toml line " + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        if (key.empty() ||
            key.find_first_not_of(
                "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_") !=
                std::string::npos)
            throw ConfigError("toml line " + std::to_string(line_no) + ": bad key '" + key + "'");
        out[key] = parse_toml_value(trim(line.substr(eq + 1)), line_no);
    }
    return out;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();

    bool looks_json = false;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") looks_json = true;
    if (!looks_json) {
        std::string t = trim(text);
        looks_json = !t.empty() && t.front() == '{';
    }

    json j;
    if (looks_json) {
        try {
            j = json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("json parse error in '") + path + "': " + e.what());
        }
    } else {
        j = parse_flat_toml(text);
    }

    std::vector<std::string> errors;
    apply_json(base, j, errors);
    if (!errors.empty()) {
        std::string msg = "config file '" + path + "':";
        for (const auto& e : errors) msg += "\n  - " + e;
        throw ConfigError(msg);
    }
    return base;
}

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

RunConfig make_fig1(const std::string& name, double ratio, int cutoff, int g_points,
                    int n_times) {
    RunConfig c;
    c.name = name;
    c.Omega_ratio = ratio;
    c.cutoff = cutoff;
    c.g_over_gc = linspace(0.0, 1.6, g_points);
    c.t_max_omega = 25.0;
    c.n_times = n_times;
    c.model = ModelKind::FullDicke;
    return c;
}

RunConfig make_figA2(const std::string& name, double kappa, int cutoff, int g_points,
                     double t_max, int n_times) {
    RunConfig c;
    c.name = name;
    c.Omega_ratio = 1000.0;  // sqrt(Omega N / omega) = 31.62
    c.cutoff = cutoff;
    c.g_over_gc = linspace(0.0, 1.6, g_points);
    c.kappa_over_omega = kappa;
    c.gamma_over_Omega = 0.1;
    c.open_system = true;
    c.t_max_omega = t_max;
    c.n_times = n_times;
    return c;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"fig1a",      "fig1b",      "fig1c",      "fig1a-desk", "fig1b-desk", "fig1c-desk",
            "fig3",       "fig3-desk",  "figA1s",     "figA1s-desk",
            "figA2a",     "figA2b",     "figA2c",     "figA2b-desk",
            "figA4osc",   "thresholds"};
}

RunConfig preset_config(const std::string& name) {
    if (name == "fig1a") return make_fig1(name, 1e4, 3000, 161, 251);
    if (name == "fig1b") return make_fig1(name, 1000.0, 3000, 161, 251);
    if (name == "fig1c") return make_fig1(name, 100.0, 3000, 161, 251);
    if (name == "fig1a-desk") return make_fig1(name, 1e4, 700, 33, 126);
    if (name == "fig1b-desk") return make_fig1(name, 1000.0, 600, 33, 126);
    if (name == "fig1c-desk") return make_fig1(name, 100.0, 200, 33, 126);

    if (name == "fig3" || name == "fig3-desk") {
        RunConfig c;
        c.name = name;
        c.model = ModelKind::FullDicke;
        c.g_over_gc = {1.03};
        c.kappa_over_omega = 0.1;
        c.gamma_over_Omega = 0.01;
        c.open_system = true;
        c.t_max_omega = 25.0;
        c.husimi_times_omega = {5.0, 10.0, 15.0, 20.0, 25.0};
        if (name == "fig3") {
            c.Omega_ratio = 1e4;
            c.cutoff = 1500;
            c.n_times = 251;
        } else {
            c.Omega_ratio = 1000.0;
            c.cutoff = 256;
            c.n_times = 101;
        }
        return c;
    }

    if (name == "figA1s") {
        RunConfig c = make_fig1(name, 1e4, 3000, 161, 251);
        c.outputs = {"photon_heatmap", "echo_map"};
        return c;
    }
    if (name == "figA1s-desk") {
        RunConfig c = make_fig1(name, 1000.0, 400, 33, 121);
        c.t_max_omega = 12.0;
        c.outputs = {"photon_heatmap", "echo_map"};
        return c;
    }

    if (name == "figA2a") return make_figA2(name, 0.01, 200, 161, 25.0, 251);
    if (name == "figA2b") return make_figA2(name, 0.1, 200, 161, 25.0, 251);
    if (name == "figA2c") return make_figA2(name, 0.5, 200, 161, 25.0, 251);
    if (name == "figA2b-desk") return make_figA2(name, 0.1, 80, 7, 15.0, 76);

    if (name == "figA4osc") {
        RunConfig c;
        c.name = name;
        c.Omega_ratio = 1e4;
        c.cutoff = 200;
        c.g_over_gc = {0.9};
        c.t_max_omega = 7.2;
        c.n_times = 181;
        c.husimi_times_omega = {0.0, 0.8, 1.6, 2.4, 3.2, 4.0, 4.8, 5.6, 6.4, 7.2};
        return c;
    }

    if (name == "thresholds") {
        RunConfig c;
        c.name = name;
        c.Omega_ratio = 1e4;
        c.cutoff = 2;
        c.g_over_gc = linspace(0.8, 2.0, 25);
        return c;
    }

    throw ConfigError("unknown preset '" + name + "'; available: " + [] {
        std::string s;
        for (const auto& n : preset_names()) s += n + " ";
        return s;
    }());
}

}  // namespace dicke
