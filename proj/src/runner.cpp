// runner.cpp - scan/compare/husimi/thresholds products
#include "dickesim/runner.hpp"

#include "dickesim/version.hpp"
#include "banded.hpp"

#include <chrono>
#include <cmath>
#include <thread>

namespace dicke {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

int resolve_jobs(const RunConfig& c) {
    if (c.jobs > 0) return c.jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

StateVector initial_state(ModelKind model, const ModelParams& p) {
    if (model_acts_on_product_space(model)) return vacuum_spin_down(p.fock(), p.spin());
    return coherent_state(0.0, p.fock());
}

PropagatorOptions propagator_options(const RunConfig& c, int threads) {
    PropagatorOptions opts;
    opts.tail_threshold = c.tail_threshold;
    opts.threads = threads;
    if (c.max_step_omega > 0.0) opts.max_step = c.max_step_omega / c.omega;
    return opts;
}

Trajectory evolve_cell(const RunConfig& c, double g_ratio, const TimeGrid& grid,
                       const PropagatorOptions& opts) {
    ModelParams p = c.make_params(g_ratio);
    Operator h = build_hamiltonian(c.model, p);
    StateVector psi0 = initial_state(c.model, p);
    if (c.open_system) return evolve_lindblad(h, p, DensityOperator::pure(psi0), grid, opts);
    return evolve_unitary(h, psi0, grid, opts);
}

// value + flag pair for a sample index against an achieved trajectory length
struct FlaggedValue {
    Cell value;
    std::string flag;
};

FlaggedValue log10_cell(const Trajectory& traj, std::size_t i) {
    bool cut = traj.breached && i + 1 >= traj.records.size();
    if (i >= traj.records.size() || cut) return {std::string("nan"), "breach"};
    double n = traj.records[i].photon;
    if (n <= 0.0) return {std::string("nan"), "zero"};
    return {std::log10(n), "ok"};
}

FlaggedValue plain_cell(const Trajectory& traj, std::size_t i) {
    bool cut = traj.breached && i + 1 >= traj.records.size();
    if (i >= traj.records.size() || cut) return {std::string("nan"), "breach"};
    return {traj.records[i].photon, "ok"};
}

double wall_seconds(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string frame_time_label(double omega_t) {
    std::string s = format_double(omega_t);
    for (char& ch : s)
        if (ch == '.') ch = 'p';
    return s;
}

}  // namespace

Dataset run_scan(RunConfig config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate_and_normalize();
    const bool want_photon = config.wants_output("photon_heatmap");
    const bool want_echo = config.wants_output("echo_map");
    if (want_echo && config.model != ModelKind::FullDicke)
        throw ConfigError("echo_map output requires model = FullDicke");

    const TimeGrid grid = config.make_grid();
    const int n_cells = static_cast<int>(config.g_over_gc.size());
    const int jobs = std::min(resolve_jobs(config), n_cells);
    const int inner_threads = n_cells > 1 ? 1 : resolve_jobs(config);

    struct CellResult {
        Trajectory traj;
        EchoResult echo;
    };
    std::vector<CellResult> cells(n_cells);

    detail::parallel_ranges(n_cells, jobs, [&](int b, int e) {
        for (int i = b; i < e; ++i) {
            const double g_ratio = config.g_over_gc[i];
            PropagatorOptions opts = propagator_options(config, inner_threads);
            cells[i].traj = evolve_cell(config, g_ratio, grid, opts);
            if (want_echo) {
                ModelParams p = config.make_params(g_ratio);
                Operator hd = build_hamiltonian(ModelKind::FullDicke, p);
                Operator hio = build_hamiltonian(ModelKind::FieldOnly, p);
                cells[i].echo =
                    echo_overlap(hd, hio, initial_state(ModelKind::FullDicke, p), grid, opts);
            }
        }
    });

    Dataset ds;
    ds.config = config;
    ds.version = kVersion;

    if (want_photon) {
        Table t;
        t.name = config.name + "_scan";
        t.columns = {{"g_over_gc", "dimensionless"},
                     {"omega_t", "dimensionless"},
                     {"log10_photon_number", "log10(<n>)"},
                     {"tail_population", "probability"},
                     {"flag", "ok|zero|breach"}};
        for (int i = 0; i < n_cells; ++i) {
            const Trajectory& traj = cells[i].traj;
            ds.any_breach = ds.any_breach || traj.breached;
            for (std::size_t k = 0; k < grid.samples.size(); ++k) {
                FlaggedValue fv = log10_cell(traj, k);
                Cell tail = k < traj.records.size() ? Cell(traj.records[k].tail)
                                                    : Cell(std::string("nan"));
                t.add_row({config.g_over_gc[i], grid.samples[k] * config.omega, fv.value, tail,
                           fv.flag});
            }
        }
        ds.tables.push_back(std::move(t));
    }

    if (want_echo) {
        Table t;
        t.name = config.name + "_echo";
        t.columns = {{"g_over_gc", "dimensionless"},
                     {"omega_t", "dimensionless"},
                     {"log10_overlap_modulus", "log10 |<psi_io|psi_dicke>|"},
                     {"flag", "ok|breach"}};
        for (int i = 0; i < n_cells; ++i) {
            const EchoResult& echo = cells[i].echo;
            ds.any_breach = ds.any_breach || echo.breached;
            for (std::size_t k = 0; k < grid.samples.size(); ++k) {
                bool cut = echo.breached && k + 1 >= echo.overlaps.size();
                if (k >= echo.overlaps.size() || cut)
                    t.add_row({config.g_over_gc[i], grid.samples[k] * config.omega,
                               std::string("nan"), std::string("breach")});
                else
                    t.add_row({config.g_over_gc[i], grid.samples[k] * config.omega,
                               std::log10(std::max(std::abs(echo.overlaps[k]), 1e-300)),
                               std::string("ok")});
            }
        }
        ds.tables.push_back(std::move(t));
    }

    ds.wall_clock_s = wall_seconds(t0);
    return ds;
}

Dataset run_compare(RunConfig config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate_and_normalize();
    if (config.g_over_gc.size() != 1)
        throw ConfigError("compare runs a single coupling; g_over_gc must have one entry");
    if (!model_acts_on_product_space(config.model))
        throw ConfigError("compare requires a spin-carrying model (FullDicke)");

    const TimeGrid grid = config.make_grid();
    const int jobs = resolve_jobs(config);
    const double g_ratio = config.g_over_gc.front();
    ModelParams p = config.make_params(g_ratio);

    Operator hd = build_hamiltonian(ModelKind::FullDicke, p);
    Operator hio = build_hamiltonian(ModelKind::FieldOnly, p);
    StateVector psi_d = vacuum_spin_down(p.fock(), p.spin());
    StateVector psi_f = coherent_state(0.0, p.fock());

    PropagatorOptions opts = propagator_options(config, jobs);
    Trajectory iso = evolve_unitary(hd, psi_d, grid, opts);
    Trajectory io = evolve_unitary(hio, psi_f, grid, opts);
    Trajectory open = evolve_lindblad(hd, p, DensityOperator::pure(psi_d), grid, opts);
    EchoResult echo = echo_overlap(hd, hio, psi_d, grid, opts);

    Dataset ds;
    ds.config = config;
    ds.version = kVersion;
    ds.any_breach = iso.breached || io.breached || open.breached || echo.breached;

    Table t;
    t.name = config.name + "_compare";
    t.columns = {{"omega_t", "dimensionless"},
                 {"n_dicke", "photons"},
                 {"flag_dicke", "ok|breach"},
                 {"n_inverted_oscillator", "photons"},
                 {"flag_io", "ok|breach"},
                 {"n_open", "photons"},
                 {"flag_open", "ok|breach"},
                 {"log10_echo_overlap", "log10 |<psi_io|psi_dicke>|"},
                 {"flag_echo", "ok|breach"}};
    for (std::size_t k = 0; k < grid.samples.size(); ++k) {
        FlaggedValue fd = plain_cell(iso, k);
        FlaggedValue fi = plain_cell(io, k);
        FlaggedValue fo = plain_cell(open, k);
        Cell echo_cell = std::string("nan");
        std::string echo_flag = "breach";
        bool cut = echo.breached && k + 1 >= echo.overlaps.size();
        if (k < echo.overlaps.size() && !cut) {
            echo_cell = std::log10(std::max(std::abs(echo.overlaps[k]), 1e-300));
            echo_flag = "ok";
        }
        t.add_row({grid.samples[k] * config.omega, fd.value, fd.flag, fi.value, fi.flag, fo.value,
                   fo.flag, echo_cell, echo_flag});
    }
    ds.tables.push_back(std::move(t));
    ds.wall_clock_s = wall_seconds(t0);
    return ds;
}

Dataset run_husimi(RunConfig config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate_and_normalize();
    if (config.g_over_gc.size() != 1)
        throw ConfigError("husimi runs a single coupling; g_over_gc must have one entry");
    if (config.husimi_times_omega.empty())
        throw ConfigError("husimi requires husimi_times_omega snapshot times");

    const TimeGrid grid = config.make_grid();
    const int jobs = resolve_jobs(config);
    const double g_ratio = config.g_over_gc.front();
    ModelParams p = config.make_params(g_ratio);

    PropagatorOptions opts = propagator_options(config, jobs);
    opts.retain_states = true;
    opts.retain_times.clear();
    for (double wt : config.husimi_times_omega) opts.retain_times.push_back(wt / config.omega);

    Trajectory traj = evolve_cell(config, g_ratio, grid, opts);

    double marker = kNan;
    if (g_ratio > 1.0) marker = well_minima(p) / std::sqrt(2.0);
    HusimiGridSpec spec = HusimiGridSpec::auto_extent(std::isnan(marker) ? 0.0 : marker,
                                                      config.husimi_points);

    Dataset ds;
    ds.config = config;
    ds.version = kVersion;
    ds.any_breach = traj.breached;

    Table t;
    t.name = config.name + "_husimi";
    t.columns = {{"omega_t", "dimensionless"},
                 {"photon_number", "photons"},
                 {"frame", "csv file base name"},
                 {"marker_re_alpha_plus", "Re alpha"},
                 {"marker_re_alpha_minus", "Re alpha"},
                 {"flagged_cells", "count"},
                 {"flag", "ok|breach"}};

    for (double wt : config.husimi_times_omega) {
        const double tt = wt / config.omega;
        int idx = -1;
        for (std::size_t s = 0; s < traj.state_times.size(); ++s)
            if (std::abs(traj.state_times[s] - tt) <= 1e-9 * std::max(1.0, tt)) {
                idx = static_cast<int>(s);
                break;
            }
        Cell marker_plus = std::isnan(marker) ? Cell(std::string("n/a")) : Cell(marker);
        Cell marker_minus = std::isnan(marker) ? Cell(std::string("n/a")) : Cell(-marker);
        if (idx < 0) {
            t.add_row({wt, std::string("nan"), std::string("n/a"), marker_plus, marker_minus,
                       std::string("n/a"), std::string("breach")});
            continue;
        }
        DensityOperator rho_field = [&] {
            if (config.open_system) {
                const DensityOperator& rho = traj.density_states[idx];
                return rho.space().is_product() ? reduce_field(rho) : rho;
            }
            DensityOperator rho = DensityOperator::pure(traj.states[idx]);
            return rho.space().is_product() ? reduce_field(rho) : rho;
        }();
        HusimiFrame frame = husimi_q(rho_field, spec, jobs);
        std::string frame_name = config.name + "_husimi_t" + frame_time_label(wt);
        double n_mean = photon_number(rho_field);
        t.add_row({wt, n_mean, frame_name, marker_plus, marker_minus,
                   double(frame.flagged_count()), std::string("ok")});
        ds.frames.emplace_back(frame_name, std::move(frame));
    }
    ds.tables.push_back(std::move(t));
    ds.wall_clock_s = wall_seconds(t0);
    return ds;
}

Dataset run_thresholds(RunConfig config) {
    auto t0 = std::chrono::steady_clock::now();
    config.validate_and_normalize();

    Dataset ds;
    ds.config = config;
    ds.version = kVersion;

    Table t;
    t.name = config.name + "_thresholds";
    t.columns = {{"g_over_gc", "dimensionless"},
                 {"x0", "quadrature position"},
                 {"n_c", "photons"},
                 {"t_c_approx", "1/omega"},
                 {"t_c_exact", "1/omega"}};

    double prev_x0 = -1.0, prev_nc = -1.0, prev_tc = -1e300;
    for (double g_ratio : config.g_over_gc) {
        ModelParams p = config.make_params(g_ratio);
        if (g_ratio <= 1.0) {
            t.add_row({g_ratio, std::string("n/a"), std::string("n/a"), std::string("n/a"),
                       std::string("n/a")});
            continue;
        }
        double x0 = well_minima(p);
        double nc = critical_photon_number(p);
        double tc_exact = critical_time_exact(p);
        Cell tc_approx = std::string("n/a");
        try {
            tc_approx = critical_time(p);
        } catch (const RegimeError&) {
        }
        if (x0 < prev_x0 || nc < prev_nc || tc_exact < prev_tc)
            throw NumericalError("thresholds: columns must be non-decreasing in g");
        prev_x0 = x0;
        prev_nc = nc;
        prev_tc = tc_exact;
        t.add_row({g_ratio, x0, nc, tc_approx, tc_exact});
    }
    ds.tables.push_back(std::move(t));
    ds.wall_clock_s = wall_seconds(t0);
    return ds;
}

}  // namespace dicke
