// propagators.hpp - time evolution (unitary + Lindblad), Gaussian oracle, echo overlap
#pragma once

#include "dickesim/fock.hpp"
#include "dickesim/hamiltonians.hpp"

#include <limits>
#include <vector>

namespace dicke {

// Output time grid; samples strictly increasing, first = t_start, last = t_end.
struct TimeGrid {
    double t_start = 0.0;
    double t_end = 0.0;
    std::vector<double> samples;

    static TimeGrid uniform(double t_end, int n_samples, double t_start = 0.0);
    static TimeGrid from_samples(std::vector<double> samples);
    void validate() const;
};

struct SampleRecord {
    double t = 0.0;
    double photon = 0.0;
    double sx = std::numeric_limits<double>::quiet_NaN();
    double sy = std::numeric_limits<double>::quiet_NaN();
    double sz = std::numeric_limits<double>::quiet_NaN();
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0;
    double norm_or_trace = 1.0;  // ||psi|| for pure runs, tr(rho) for mixed runs
    double tail = 0.0;           // population of the top tail_fraction Fock levels
};

struct PropagatorOptions {
    double tail_threshold = 1e-6;
    double tail_fraction = 0.05;
    bool retain_states = false;
    // retain only at these times (empty: every sample) when retain_states is set
    std::vector<double> retain_times;
    double max_step = 0.0;  // Lindblad integrator cap; 0 = stability-limited
    int threads = 0;        // 0 = hardware default (results независимы of thread count)
};

struct Trajectory {
    SpaceTag space;
    std::vector<SampleRecord> records;  // one per achieved sample
    bool breached = false;              // tail guard tripped; trajectory truncated
    double breach_time = std::numeric_limits<double>::quiet_NaN();
    std::vector<StateVector> states;           // retained pure states
    std::vector<DensityOperator> density_states;  // retained mixed states
    std::vector<double> state_times;
    bool positivity_warning = false;    // Lindblad: estimated min eigenvalue < -1e-6
    double min_eigenvalue_estimate = 0.0;
};

// psi(t) = exp(-i H t) psi0 sampled on the grid (Chebyshev propagation with
// Gershgorin spectral bounds; norm drift < 1e-8 enforced).
Trajectory evolve_unitary(const Operator& hamiltonian, const StateVector& psi0,
                          const TimeGrid& grid, const PropagatorOptions& opts = {});

// d rho/dt = -i[H,rho] + kappa(2 a rho a^dag - {a^dag a, rho})
//                      + gamma(2 S- rho S+ - {S+ S-, rho})
// Classic RK4 with a stability-derived fixed step (deterministic).
Trajectory evolve_lindblad(const Operator& hamiltonian, const ModelParams& params,
                           const DensityOperator& rho0, const TimeGrid& grid,
                           const PropagatorOptions& opts = {});

// Exact second moments of the vacuum quench under the quadratic field
// Hamiltonian: trigonometric below g_c, free-particle at g_c, hyperbolic above.
struct CovarianceState {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.5;
    double var_p = 0.5;
    double cov_xp = 0.0;

    double photon_number() const {
        double xx = var_x + mean_x * mean_x;
        double pp = var_p + mean_p * mean_p;
        return 0.5 * (xx + pp - 1.0);
    }
    Eigen::Matrix2d sigma() const {
        Eigen::Matrix2d s;
        s << var_x, cov_xp, cov_xp, var_p;
        return s;
    }
};

std::vector<CovarianceState> gaussian_oracle(const ModelParams& p, const TimeGrid& grid);

// <psi(t; H_b) | psi(t; H_a)> from two forward evolutions. A field-only
// Hamiltonian is embedded as H (x) 1_spin when paired with a product-space one.
struct EchoResult {
    std::vector<double> times;
    std::vector<Complex> overlaps;
    bool breached = false;
    double breach_time = std::numeric_limits<double>::quiet_NaN();
};

EchoResult echo_overlap(const Operator& h_a, const Operator& h_b, const StateVector& psi0,
                        const TimeGrid& grid, const PropagatorOptions& opts = {});

}  // namespace dicke
