// observables.cpp - photon/spin/quadrature observables, partial trace, Husimi Q
#include "dickesim/observables.hpp"

#include "banded.hpp"
#include "obs_set.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

constexpr double kPi = 3.14159265358979323846;

detail::FieldObservableSet obs_for(SpaceTag space) { return detail::make_observables(space); }

}  // namespace

double photon_number(const StateVector& psi) {
    auto obs = obs_for(psi.space());
    return detail::quad_form(obs.number, psi.amplitudes()).real();
}

double photon_number(const DensityOperator& rho) {
    auto obs = obs_for(rho.space());
    return detail::trace_form(obs.number, rho.matrix()).real();
}

DensityOperator reduce_field(const DensityOperator& rho) {
    SpaceTag space = rho.space();
    if (!space.is_product())
        throw DimensionError("reduce_field requires a Fock x spin product state");
    const int fd = space.fock_dim, sd = space.spin_dim;
    DenseCd out = DenseCd::Zero(fd, fd);
    for (int n = 0; n < fd; ++n)
        for (int m = 0; m < fd; ++m) {
            Complex acc = 0.0;
            for (int s = 0; s < sd; ++s) acc += rho.matrix()(n * sd + s, m * sd + s);
            out(n, m) = acc;
        }
    return DensityOperator(std::move(out), SpaceTag::fock(fd));
}

namespace {

Variances variances_from(const SampleRecord& r) {
    return Variances{r.var_x, r.var_p, r.cov_xp};
}

}  // namespace

Variances quadrature_variances(const StateVector& psi) {
    auto obs = obs_for(psi.space());
    return variances_from(detail::make_record(0.0, psi.amplitudes(), obs, 0.05));
}

Variances quadrature_variances(const DensityOperator& rho) {
    auto obs = obs_for(rho.space());
    return variances_from(detail::make_record(0.0, rho.matrix(), obs, 0.05));
}

SpinExpectations spin_expectations(const StateVector& psi) {
    if (!psi.space().has_spin()) throw DimensionError("spin_expectations: no spin factor");
    auto obs = obs_for(psi.space());
    SampleRecord r = detail::make_record(0.0, psi.amplitudes(), obs, 0.05);
    return SpinExpectations{r.sx, r.sy, r.sz};
}

SpinExpectations spin_expectations(const DensityOperator& rho) {
    if (!rho.space().has_spin()) throw DimensionError("spin_expectations: no spin factor");
    auto obs = obs_for(rho.space());
    SampleRecord r = detail::make_record(0.0, rho.matrix(), obs, 0.05);
    return SpinExpectations{r.sx, r.sy, r.sz};
}

HusimiGridSpec HusimiGridSpec::auto_extent(double marker_re_alpha, int points) {
    HusimiGridSpec spec;
    spec.n_re = spec.n_im = points;
    double ext = 1.2 * std::max(3.0, std::abs(marker_re_alpha) + 3.0);
    spec.re_max = spec.im_max = ext;
    return spec;
}

double HusimiFrame::normalization() const {
    return values.sum() * cell_re() * cell_im();
}

int HusimiFrame::flagged_count() const {
    int c = 0;
    for (Eigen::Index i = 0; i < flagged.rows(); ++i)
        for (Eigen::Index j = 0; j < flagged.cols(); ++j) c += flagged(i, j) != 0;
    return c;
}

HusimiFrame husimi_q(const DensityOperator& rho_field, const HusimiGridSpec& spec, int threads) {
    SpaceTag space = rho_field.space();
    if (!space.has_fock() || space.has_spin())
        throw DimensionError("husimi_q requires a field-only density operator");
    const int d = space.fock_dim;
    if (spec.n_re < 2 || spec.n_im < 2) throw ConfigError("husimi_q: grid needs >= 2 points");

    HusimiFrame frame;
    frame.re_alpha.resize(spec.n_re);
    frame.im_alpha.resize(spec.n_im);
    for (int j = 0; j < spec.n_re; ++j)
        frame.re_alpha(j) = -spec.re_max + 2.0 * spec.re_max * j / (spec.n_re - 1);
    for (int i = 0; i < spec.n_im; ++i)
        frame.im_alpha(i) = -spec.im_max + 2.0 * spec.im_max * i / (spec.n_im - 1);
    frame.values.resize(spec.n_im, spec.n_re);
    frame.flagged.setZero(spec.n_im, spec.n_re);

    // Spectral form: Q(alpha) = sum_k lam_k |<alpha|psi_k>|^2 / pi. Small
    // negative eigenvalues (integration noise) are dropped to keep Q >= 0.
    Eigen::SelfAdjointEigenSolver<DenseCd> es(rho_field.matrix());
    const VectorXd lam = es.eigenvalues();
    const DenseCd& vecs = es.eigenvectors();
    std::vector<int> kept;
    const double lam_floor = std::max(1e-16, lam.maxCoeff() * 1e-14);
    for (int k = 0; k < lam.size(); ++k)
        if (lam(k) > lam_floor) kept.push_back(k);

    detail::parallel_ranges(spec.n_re, threads, [&](int j0, int j1) {
        VectorCd conj_coh(d);
        for (int j = j0; j < j1; ++j) {
            for (int i = 0; i < spec.n_im; ++i) {
                const Complex alpha(frame.re_alpha(j), frame.im_alpha(i));
                // conj(c_n(alpha)) = e^{-|a|^2/2} conj(alpha)^n / sqrt(n!)
                conj_coh(0) = std::exp(-0.5 * std::norm(alpha));
                const Complex ac = std::conj(alpha);
                for (int n = 1; n < d; ++n) conj_coh(n) = conj_coh(n - 1) * ac / std::sqrt(double(n));
                const double captured = conj_coh.squaredNorm();
                if (1.0 - captured > 1e-8) frame.flagged(i, j) = 1;
                double q = 0.0;
                for (int k : kept) {
                    const Complex amp = conj_coh.transpose() * vecs.col(k);
                    q += lam(k) * std::norm(amp);
                }
                frame.values(i, j) = q / kPi;
            }
        }
    });
    return frame;
}

InvarianceOverlap invariance_overlap(const ModelParams& p) {
    p.validate();
    InvarianceOverlap out;
    const double gc2 = p.omega * p.Omega;
    out.leading_order = 1.0 - p.g * p.g / (4.0 * p.Omega * p.Omega);
    out.condition_value = 0.25 * (p.g * p.g / gc2) * (p.omega / p.Omega);
    Operator u = polaron_transform(p);
    StateVector ket = vacuum_spin_down(p.fock(), p.spin());
    Complex ov = expectation(u, ket);
    out.overlap = ov.real();
    out.overlap_squared = std::norm(ov);
    return out;
}

}  // namespace dicke
