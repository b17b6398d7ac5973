#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dickesim/config.hpp"
#include "dickesim/dataset.hpp"

#include <fstream>

using namespace dicke;

namespace {

RunConfig minimal_config() {
    RunConfig c;
    c.Omega_ratio = 100.0;
    c.cutoff = 40;
    c.g_over_gc = {0.5};
    return c;
}

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = std::string("/tmp/dickesim_test_") + name;
    std::ofstream out(path);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("flat toml parsing") {
    nlohmann::json j = parse_flat_toml(R"(
# a comment
omega = 1.0
Omega_ratio = 1e4   # trailing comment
n_spins = 1
g_over_gc = [0.5, 0.9, 1.2]
model = "FullDicke"
open_system = false
cutoff = 200
name = "demo"
)");
    CHECK(j["omega"].get<double>() == 1.0);
    CHECK(j["Omega_ratio"].get<double>() == 1e4);
    CHECK(j["g_over_gc"].size() == 3);
    CHECK(j["model"].get<std::string>() == "FullDicke");
    CHECK(j["open_system"].get<bool>() == false);
    CHECK(j["cutoff"].get<int>() == 200);
    CHECK(j["name"].get<std::string>() == "demo");

    CHECK_THROWS_AS(parse_flat_toml("[section]\nx = 1"), ConfigError);
    CHECK_THROWS_AS(parse_flat_toml("key 1.0"), ConfigError);
    CHECK_THROWS_AS(parse_flat_toml("x = oops"), ConfigError);
}

TEST_CASE("config files load with overlay semantics") {
    std::string toml = write_temp("cfg.toml", R"(
Omega_ratio = 1000
cutoff = 80
g_over_gc = 0.9
t_max_omega = 10.0
n_times = 51
)");
    RunConfig c = load_config_file(toml);
    CHECK(c.Omega_ratio == 1000.0);
    CHECK(c.cutoff == 80);
    CHECK(c.g_over_gc == std::vector<double>{0.9});
    CHECK(c.t_max_omega == 10.0);

    // json carrying only one key overrides just that key
    std::string json_path = write_temp("cfg.json", R"({"cutoff": 99})");
    RunConfig c2 = load_config_file(json_path, c);
    CHECK(c2.cutoff == 99);
    CHECK(c2.Omega_ratio == 1000.0);

    std::string bad = write_temp("bad.toml", "Omega_ratio = 10\nwhatever = 1\n");
    CHECK_THROWS_WITH_AS(load_config_file(bad), doctest::Contains("unknown config key"),
                         ConfigError);
}

TEST_CASE("validation reports every broken field") {
    RunConfig c;  // omega_ratio/cutoff/sweep all missing
    c.kappa_over_omega = -1.0;
    try {
        c.validate_and_normalize();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string msg = e.what();
        CHECK(msg.find("Omega_ratio") != std::string::npos);
        CHECK(msg.find("cutoff") != std::string::npos);
        CHECK(msg.find("g_over_gc") != std::string::npos);
        CHECK(msg.find("kappa_over_omega") != std::string::npos);
    }
}

TEST_CASE("sweep normalization sorts and dedupes") {
    RunConfig c = minimal_config();
    c.g_over_gc = {1.2, 0.3, 0.9, 0.3};
    c.validate_and_normalize();
    CHECK(c.g_over_gc == std::vector<double>{0.3, 0.9, 1.2});
}

TEST_CASE("config json round trip") {
    RunConfig c = minimal_config();
    c.name = "round";
    c.g_over_gc = {0.2, 1.4};
    c.husimi_times_omega = {1.0, 2.0};
    c.kappa_over_omega = 0.1;
    c.model = ModelKind::FieldOnly;
    c.open_system = true;
    c.outputs = {"photon_heatmap"};
    c.validate_and_normalize();

    nlohmann::ordered_json j;
    to_json(j, c);
    RunConfig back;
    std::vector<std::string> errors;
    apply_json(back, nlohmann::json::parse(j.dump()), errors);
    CHECK(errors.empty());
    back.validate_and_normalize();
    CHECK(back == c);
}

TEST_CASE("presets exist and validate") {
    for (const std::string& name : preset_names()) {
        RunConfig c = preset_config(name);
        CHECK_NOTHROW(c.validate_and_normalize());
        CHECK(c.name == name);
    }
    CHECK_THROWS_AS(preset_config("nope"), ConfigError);

    RunConfig fig3 = preset_config("fig3");
    CHECK(fig3.Omega_ratio == doctest::Approx(1e4));
    CHECK(fig3.kappa_over_omega == doctest::Approx(0.1));
    CHECK(fig3.gamma_over_Omega == doctest::Approx(0.01));
    CHECK(fig3.g_over_gc == std::vector<double>{1.03});
    CHECK(fig3.husimi_times_omega == std::vector<double>{5.0, 10.0, 15.0, 20.0, 25.0});

    RunConfig a2 = preset_config("figA2b");
    CHECK(a2.cutoff == 200);
    CHECK(a2.open_system);
    CHECK(a2.gamma_over_Omega == doctest::Approx(0.1));
}

TEST_CASE("grid construction merges husimi times") {
    RunConfig c = minimal_config();
    c.t_max_omega = 10.0;
    c.n_times = 11;
    c.husimi_times_omega = {2.5, 5.0};  // 5.0 coincides with a uniform sample
    c.validate_and_normalize();
    TimeGrid g = c.make_grid();
    CHECK(g.samples.size() == 12);
    bool has = false;
    for (double t : g.samples) has = has || t == 2.5;
    CHECK(has);
}

TEST_CASE("csv formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.25e-12) == "-1.25e-12");
    CHECK(format_double(std::nan("")) == "nan");
    CHECK(csv_escape("plain") == "plain");
    CHECK(csv_escape("a,b") == "\"a,b\"");
    CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");

    Table t;
    t.name = "t";
    t.columns = {{"a", ""}, {"b", ""}};
    t.add_row({1.5, std::string("x")});
    CHECK(t.to_csv() == "a,b\n1.5,x\n");
    CHECK_THROWS(t.add_row({1.0}));
}
