// lindblad.cpp - master-equation integrator (fixed-step RK4, banded superoperator)
#include "dickesim/propagators.hpp"

#include "banded.hpp"
#include "obs_set.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

// Per-column contributions to L(X), all expressible through stored diagonals.
struct LeftBand {  // out.col(j) += scale * vals .* in.col(j) shifted by off
    int off;
    VectorCd vals;
    Complex scale;
};
struct RightBand {  // out.col(j) += scale * vals(j - off) * in.col(j - off)
    int off;
    VectorCd vals;
    Complex scale;
};
struct SandwichBand {  // out(i,j) += 2 rate c_i conj(c_j) in(i+off, j+off)
    int off;
    VectorCd vals;
    double rate;
};

struct LindbladGenerator {
    int dim = 0;
    int threads = 1;
    std::vector<LeftBand> left;
    std::vector<RightBand> right;
    std::vector<SandwichBand> sandwich;

    void add_hamiltonian(const detail::BandedOp& h) {
        const Complex mi(0.0, -1.0), pi_(0.0, 1.0);
        for (const detail::Band& b : h.bands()) {
            left.push_back({b.offset, b.vals, mi});
            right.push_back({b.offset, b.vals, pi_});
        }
    }

    // Collapse operator C with rate r: 2r C X C^dag - r {C^dag C, X}.
    // C must be a single stored diagonal (true for a and S-).
    void add_collapse(const detail::BandedOp& c, double rate) {
        if (c.band_count() != 1)
            throw NumericalError("lindblad: collapse operator is not single-banded");
        const detail::Band& b = c.bands().front();
        sandwich.push_back({b.offset, b.vals, rate});
        VectorCd q = VectorCd::Zero(dim);
        const int r0 = std::max(0, -b.offset);
        const int len = dim - std::abs(b.offset);
        for (int i = r0; i < r0 + len; ++i) q(i + b.offset) = std::norm(b.vals(i));
        left.push_back({0, q, Complex(-rate, 0.0)});
        right.push_back({0, q, Complex(-rate, 0.0)});
    }

    // out = L(in)
    void eval(DenseCd& out, const DenseCd& in) const {
        const int d = dim;
        detail::parallel_ranges(d, threads, [&](int c0, int c1) {
            for (int j = c0; j < c1; ++j) {
                auto ocol = out.col(j);
                ocol.setZero();
                for (const LeftBand& lb : left) {
                    const int r0 = std::max(0, -lb.off);
                    const int len = d - std::abs(lb.off);
                    ocol.segment(r0, len).array() += lb.scale * lb.vals.segment(r0, len).array() *
                                                     in.col(j).segment(r0 + lb.off, len).array();
                }
                for (const RightBand& rb : right) {
                    const int src = j - rb.off;
                    if (src < 0 || src >= d) continue;
                    const Complex w = rb.scale * rb.vals(src);
                    if (w != Complex(0.0, 0.0)) ocol.noalias() += w * in.col(src);
                }
                for (const SandwichBand& sb : sandwich) {
                    const int r0 = std::max(0, -sb.off);
                    const int len = d - std::abs(sb.off);
                    if (j < r0 || j >= r0 + len) continue;
                    const Complex w = 2.0 * sb.rate * std::conj(sb.vals(j));
                    if (w == Complex(0.0, 0.0)) continue;
                    ocol.segment(r0, len).array() +=
                        w * sb.vals.segment(r0, len).array() *
                        in.col(j + sb.off).segment(r0 + sb.off, len).array();
                }
            }
        });
    }
};

// Largest eigenvalue magnitude scale of L for the RK4 stability bound.
double generator_radius(const SparseCd& h, const std::vector<std::pair<double, SparseCd>>& jumps) {
    auto [lo, hi] = detail::gershgorin_interval(h);
    double r = hi - lo;
    for (const auto& [rate, c] : jumps) {
        double qmax = 0.0;
        for (int k = 0; k < c.outerSize(); ++k)
            for (SparseCd::InnerIterator it(c, k); it; ++it)
                qmax = std::max(qmax, std::norm(it.value()));
        r += 2.0 * rate * qmax;
    }
    return r;
}

// Estimated smallest eigenvalue of a Hermitian trace-one matrix via power
// iteration on 2I - rho (deterministic start vector).
double min_eigenvalue_estimate(const DenseCd& rho, int iters = 24) {
    const int d = static_cast<int>(rho.rows());
    VectorCd v = VectorCd::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
    VectorCd w(d);
    for (int it = 0; it < iters; ++it) {
        w.noalias() = 2.0 * v - rho * v;
        double n = w.norm();
        if (n == 0.0) return 0.0;
        v = w / n;
    }
    double lam = (2.0 * v - rho * v).dot(v).real();
    return 2.0 - lam;
}

}  // namespace

Trajectory evolve_lindblad(const Operator& hamiltonian, const ModelParams& params,
                           const DensityOperator& rho0, const TimeGrid& grid,
                           const PropagatorOptions& opts) {
    grid.validate();
    params.validate();
    if (hamiltonian.space() != rho0.space())
        throw DimensionError("evolve_lindblad: Hamiltonian and state spaces differ");
    if (!hamiltonian.is_hermitian(1e-12))
        throw NumericalError("evolve_lindblad: Hamiltonian is not Hermitian");

    const SpaceTag space = rho0.space();
    if (!space.has_fock()) throw DimensionError("evolve_lindblad: state needs a field factor");
    if (params.gamma > 0.0 && !space.has_spin())
        throw DimensionError("evolve_lindblad: gamma > 0 requires a spin factor");

    const int spin_levels = space.has_spin() ? space.spin_dim : 1;
    std::vector<std::pair<double, SparseCd>> jumps;
    if (params.kappa > 0.0) {
        SparseCd a = destroy(FockSpace(space.fock_dim - 1)).matrix();
        jumps.emplace_back(params.kappa, detail::embed_sparse_field(a, spin_levels));
    }
    if (params.gamma > 0.0) {
        SpinOperators s = spin_operators(SpinSpace(space.spin_dim - 1));
        SparseCd eye(space.fock_dim, space.fock_dim);
        eye.setIdentity();
        jumps.emplace_back(params.gamma,
                           SparseCd(Eigen::kroneckerProduct(eye, s.s_minus.matrix())));
    }

    LindbladGenerator gen;
    gen.dim = space.dim();
    gen.threads = opts.threads > 0
                      ? opts.threads
                      : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
    // thread-spawn overhead dwarfs the work below this size
    if (gen.dim < 384) gen.threads = 1;
    gen.add_hamiltonian(detail::BandedOp::from_sparse(hamiltonian.matrix()));
    for (const auto& [rate, c] : jumps) gen.add_collapse(detail::BandedOp::from_sparse(c), rate);

    // RK4 stability along the imaginary axis: |lambda| h <= 2*sqrt(2).
    const double radius = generator_radius(hamiltonian.matrix(), jumps);
    double h_stab = radius > 0.0 ? 0.92 * 2.8284271247461903 / radius : 1.0;
    if (opts.max_step > 0.0) h_stab = std::min(h_stab, opts.max_step);

    detail::FieldObservableSet obs = detail::make_observables(space);

    const int d = gen.dim;
    DenseCd rho = rho0.matrix();
    DenseCd k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);

    auto axpy_stage = [&](const DenseCd& k, double factor) {
        detail::parallel_ranges(d, gen.threads, [&](int c0, int c1) {
            for (int j = c0; j < c1; ++j) stage.col(j) = rho.col(j) + factor * k.col(j);
        });
    };

    Trajectory traj;
    traj.space = space;
    traj.min_eigenvalue_estimate = 0.0;

    double t_now = 0.0;
    for (double t : grid.samples) {
        const double span = t - t_now;
        if (span > 0.0) {
            int nsub = std::max(1, static_cast<int>(std::ceil(span / h_stab)));
            double h = span / nsub;
            for (int s = 0; s < nsub; ++s) {
                gen.eval(k1, rho);
                axpy_stage(k1, 0.5 * h);
                gen.eval(k2, stage);
                axpy_stage(k2, 0.5 * h);
                gen.eval(k3, stage);
                axpy_stage(k3, h);
                gen.eval(k4, stage);
                detail::parallel_ranges(d, gen.threads, [&](int c0, int c1) {
                    for (int j = c0; j < c1; ++j)
                        rho.col(j) += (h / 6.0) * (k1.col(j) + 2.0 * k2.col(j) + 2.0 * k3.col(j) +
                                                   k4.col(j));
                });
            }
        }
        t_now = t;

        SampleRecord rec = detail::make_record(t, rho, obs, opts.tail_fraction);
        if (std::abs(rec.norm_or_trace - 1.0) > 1e-8 * std::max(1.0, t))
            throw NumericalError("evolve_lindblad: trace drift " +
                                 std::to_string(rec.norm_or_trace - 1.0) + " at t = " +
                                 std::to_string(t));
        double herm_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        if (herm_dev > 1e-8)
            throw NumericalError("evolve_lindblad: hermiticity loss " + std::to_string(herm_dev));
        double min_eig = min_eigenvalue_estimate(rho);
        traj.min_eigenvalue_estimate = std::min(traj.min_eigenvalue_estimate, min_eig);
        if (min_eig < -1e-6) traj.positivity_warning = true;

        traj.records.push_back(rec);
        if (detail::wants_retain(opts, t)) {
            DenseCd sym = 0.5 * (rho + rho.adjoint());
            double tr = sym.trace().real();
            traj.density_states.emplace_back(DenseCd(sym / tr), space);
            traj.state_times.push_back(t);
        }
        if (rec.tail > opts.tail_threshold) {
            traj.breached = true;
            traj.breach_time = t;
            break;
        }
    }
    return traj;
}

}  // namespace dicke
