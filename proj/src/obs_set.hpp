// obs_set.hpp - internal per-sample observable extraction shared by propagators
#pragma once

#include "dickesim/fock.hpp"
#include "dickesim/propagators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace dicke::detail {

struct FieldObservableSet {
    SparseCd number, a, a2;
    SparseCd sx, sy, sz;
    bool has_spin = false;
    int fock_dim = 0, spin_dim = 1;
};

inline SparseCd embed_sparse_field(const SparseCd& m, int spin_dim) {
    if (spin_dim <= 1) return m;
    SparseCd eye(spin_dim, spin_dim);
    eye.setIdentity();
    return Eigen::kroneckerProduct(m, eye).eval();
}

inline FieldObservableSet make_observables(SpaceTag space) {
    if (!space.has_fock()) throw DimensionError("propagation requires a field factor");
    FieldObservableSet set;
    set.fock_dim = space.fock_dim;
    set.spin_dim = space.has_spin() ? space.spin_dim : 1;
    set.has_spin = space.has_spin();
    FockSpace fock(space.fock_dim - 1);
    SparseCd a = destroy(fock).matrix();
    set.number = embed_sparse_field(number_operator(fock).matrix(), set.spin_dim);
    set.a = embed_sparse_field(a, set.spin_dim);
    set.a2 = embed_sparse_field(SparseCd(a * a), set.spin_dim);
    if (set.has_spin) {
        SpinOperators s = spin_operators(SpinSpace(space.spin_dim - 1));
        SparseCd eye(set.fock_dim, set.fock_dim);
        eye.setIdentity();
        set.sx = Eigen::kroneckerProduct(eye, s.sx.matrix()).eval();
        set.sy = Eigen::kroneckerProduct(eye, s.sy.matrix()).eval();
        set.sz = Eigen::kroneckerProduct(eye, s.sz.matrix()).eval();
    }
    return set;
}

inline Complex quad_form(const SparseCd& m, const VectorCd& psi) {
    Complex acc = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCd::InnerIterator it(m, k); it; ++it)
            acc += std::conj(psi(it.row())) * it.value() * psi(it.col());
    return acc;
}

// tr(A rho) for sparse A
inline Complex trace_form(const SparseCd& m, const DenseCd& rho) {
    Complex acc = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCd::InnerIterator it(m, k); it; ++it)
            acc += it.value() * rho(it.col(), it.row());
    return acc;
}

inline int tail_start_level(int fock_dim, double tail_fraction) {
    int k = std::max(1, static_cast<int>(std::ceil(tail_fraction * fock_dim)));
    return std::max(0, fock_dim - k);
}

inline double tail_population(const VectorCd& psi, int fock_dim, int spin_dim,
                              double tail_fraction) {
    int start = tail_start_level(fock_dim, tail_fraction);
    return psi.segment(start * spin_dim, (fock_dim - start) * spin_dim).squaredNorm();
}

inline double tail_population(const DenseCd& rho, int fock_dim, int spin_dim,
                              double tail_fraction) {
    int start = tail_start_level(fock_dim, tail_fraction);
    double acc = 0.0;
    for (int i = start * spin_dim; i < fock_dim * spin_dim; ++i) acc += rho(i, i).real();
    return acc;
}

template <typename FormFn>
SampleRecord make_record_impl(double t, const FieldObservableSet& obs, FormFn&& form) {
    SampleRecord r;
    r.t = t;
    const double n = form(obs.number).real();
    const Complex a_mean = form(obs.a);
    const Complex a2_mean = form(obs.a2);
    r.photon = n;
    r.mean_x = std::sqrt(2.0) * a_mean.real();
    r.mean_p = std::sqrt(2.0) * a_mean.imag();
    const double xx = a2_mean.real() + n + 0.5;
    const double pp = -a2_mean.real() + n + 0.5;
    r.var_x = xx - r.mean_x * r.mean_x;
    r.var_p = pp - r.mean_p * r.mean_p;
    r.cov_xp = a2_mean.imag() - r.mean_x * r.mean_p;
    if (obs.has_spin) {
        r.sx = form(obs.sx).real();
        r.sy = form(obs.sy).real();
        r.sz = form(obs.sz).real();
    }
    return r;
}

inline SampleRecord make_record(double t, const VectorCd& psi, const FieldObservableSet& obs,
                                double tail_fraction) {
    SampleRecord r =
        make_record_impl(t, obs, [&](const SparseCd& m) { return quad_form(m, psi); });
    r.norm_or_trace = psi.norm();
    r.tail = tail_population(psi, obs.fock_dim, obs.spin_dim, tail_fraction);
    return r;
}

inline SampleRecord make_record(double t, const DenseCd& rho, const FieldObservableSet& obs,
                                double tail_fraction) {
    SampleRecord r =
        make_record_impl(t, obs, [&](const SparseCd& m) { return trace_form(m, rho); });
    r.norm_or_trace = rho.trace().real();
    r.tail = tail_population(rho, obs.fock_dim, obs.spin_dim, tail_fraction);
    return r;
}

inline bool wants_retain(const PropagatorOptions& opts, double t) {
    if (!opts.retain_states) return false;
    if (opts.retain_times.empty()) return true;
    for (double rt : opts.retain_times)
        if (std::abs(rt - t) <= 1e-9 * std::max(1.0, std::abs(rt))) return true;
    return false;
}

}  // namespace dicke::detail
