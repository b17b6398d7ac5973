// propagators.cpp - Chebyshev unitary propagation, Gaussian oracle, echo overlap
#include "dickesim/propagators.hpp"

#include "banded.hpp"
#include "obs_set.hpp"

#include <algorithm>
#include <cmath>

namespace dicke {

namespace {

// J_0..J_n(x) by Miller's downward recurrence (x >= 0), long double accumulation.
std::vector<double> bessel_j_sequence(int n, double x) {
    std::vector<double> out(n + 1, 0.0);
    if (x <= 0.0) {
        out[0] = 1.0;
        return out;
    }
    const int top = std::max(n, static_cast<int>(x));
    const int m_big = top + static_cast<int>(16.0 * std::cbrt(top + 1.0)) + 32;
    long double bkp1 = 0.0L, bk = 1e-300L, sum = 0.0L;
    std::vector<long double> kept(n + 1, 0.0L);
    for (int k = m_big; k >= 1; --k) {
        long double bkm1 = (2.0L * k / x) * bk - bkp1;
        bkp1 = bk;
        bk = bkm1;
        if (k - 1 <= n) kept[k - 1] = bk;
        if ((k - 1) % 2 == 0 && k - 1 > 0) sum += 2.0L * bk;
        if (std::fabs(static_cast<double>(bk)) > 1e250) {
            bk *= 1e-250L;
            bkp1 *= 1e-250L;
            sum *= 1e-250L;
            for (auto& v : kept) v *= 1e-250L;
        }
    }
    sum += kept[0];
    for (int k = 0; k <= n; ++k) out[k] = static_cast<double>(kept[k] / sum);
    return out;
}

// Chebyshev expansion of exp(-i H dt) psi with Gershgorin spectral bounds.
class ChebyshevStepper {
public:
    ChebyshevStepper(const Operator& hamiltonian, VectorCd psi)
        : op_(detail::BandedOp::from_sparse(hamiltonian.matrix())), psi_(std::move(psi)) {
        auto [lo, hi] = detail::gershgorin_interval(hamiltonian.matrix());
        center_ = 0.5 * (hi + lo);
        radius_ = 0.5 * (hi - lo);
        t0_.resize(psi_.size());
        t1_.resize(psi_.size());
        t2_.resize(psi_.size());
        acc_.resize(psi_.size());
    }

    const VectorCd& state() const { return psi_; }

    void advance(double dt) {
        if (dt == 0.0) return;
        if (radius_ <= 1e-300) {  // H proportional to the identity
            psi_ *= std::exp(Complex(0.0, -center_ * dt));
            return;
        }
        const std::vector<Complex>& coef = coefficients(dt);
        t0_ = psi_;
        apply_scaled(t1_, t0_);
        acc_ = coef[0] * t0_ + coef[1] * t1_;
        for (std::size_t k = 2; k < coef.size(); ++k) {
            apply_scaled(t2_, t1_);
            t2_ = 2.0 * t2_ - t0_;
            acc_.noalias() += coef[k] * t2_;
            t0_.swap(t1_);
            t1_.swap(t2_);
        }
        psi_.swap(acc_);
    }

private:
    void apply_scaled(VectorCd& out, const VectorCd& in) {
        // out = (H - center)/radius * in
        out = in * (-center_ / radius_);
        op_.apply(out, in, Complex(1.0 / radius_, 0.0));
    }

    const std::vector<Complex>& coefficients(double dt) {
        for (const auto& entry : cache_)
            if (entry.first == dt) return entry.second;
        const double theta = std::abs(radius_ * dt);
        int kmax = static_cast<int>(theta + 16.0 * std::cbrt(theta + 4.0) + 24.0);
        std::vector<double> j = bessel_j_sequence(kmax, theta);
        while (kmax > 1 && std::abs(j[kmax]) < 1e-18 && std::abs(j[kmax - 1]) < 1e-18) --kmax;
        const Complex global = std::exp(Complex(0.0, -center_ * dt));
        const Complex step(0.0, dt >= 0.0 ? -1.0 : 1.0);
        std::vector<Complex> coef(kmax + 1);
        Complex ik(1.0, 0.0);
        for (int k = 0; k <= kmax; ++k) {
            coef[k] = (k == 0 ? 1.0 : 2.0) * ik * j[k] * global;
            ik *= step;
        }
        cache_.emplace_back(dt, std::move(coef));
        return cache_.back().second;
    }

    detail::BandedOp op_;
    VectorCd psi_, t0_, t1_, t2_, acc_;
    double center_ = 0.0, radius_ = 0.0;
    std::vector<std::pair<double, std::vector<Complex>>> cache_;
};

}  // namespace

TimeGrid TimeGrid::uniform(double t_end, int n_samples, double t_start) {
    if (n_samples < 2) throw ConfigError("TimeGrid::uniform requires at least 2 samples");
    TimeGrid g;
    g.t_start = t_start;
    g.t_end = t_end;
    g.samples.resize(n_samples);
    for (int i = 0; i < n_samples; ++i)
        g.samples[i] = t_start + (t_end - t_start) * double(i) / double(n_samples - 1);
    g.samples.front() = t_start;
    g.samples.back() = t_end;
    g.validate();
    return g;
}

TimeGrid TimeGrid::from_samples(std::vector<double> samples) {
    TimeGrid g;
    if (samples.empty()) throw ConfigError("TimeGrid requires at least one sample");
    g.samples = std::move(samples);
    g.t_start = g.samples.front();
    g.t_end = g.samples.back();
    g.validate();
    return g;
}

void TimeGrid::validate() const {
    if (samples.empty()) throw ConfigError("TimeGrid: empty sample list");
    if (t_start < 0.0) throw ConfigError("TimeGrid: t_start must be >= 0");
    if (samples.front() != t_start || samples.back() != t_end)
        throw ConfigError("TimeGrid: samples must start at t_start and end at t_end");
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (!(samples[i] > samples[i - 1]))
            throw ConfigError("TimeGrid: samples must be strictly increasing");
}

Trajectory evolve_unitary(const Operator& hamiltonian, const StateVector& psi0,
                          const TimeGrid& grid, const PropagatorOptions& opts) {
    grid.validate();
    if (hamiltonian.space() != psi0.space())
        throw DimensionError("evolve_unitary: Hamiltonian and state spaces differ");
    if (!hamiltonian.is_hermitian(1e-12))
        throw NumericalError("evolve_unitary: Hamiltonian is not Hermitian");

    detail::FieldObservableSet obs = detail::make_observables(psi0.space());
    ChebyshevStepper stepper(hamiltonian, psi0.amplitudes());

    Trajectory traj;
    traj.space = psi0.space();
    double t_now = 0.0;
    for (double t : grid.samples) {
        stepper.advance(t - t_now);
        t_now = t;
        SampleRecord rec = detail::make_record(t, stepper.state(), obs, opts.tail_fraction);
        if (std::abs(rec.norm_or_trace - 1.0) > 1e-8)
            throw NumericalError("evolve_unitary: norm drift " +
                                 std::to_string(rec.norm_or_trace - 1.0) + " at t = " +
                                 std::to_string(t));
        traj.records.push_back(rec);
        if (detail::wants_retain(opts, t)) {
            traj.states.emplace_back(stepper.state(), psi0.space());
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

std::vector<CovarianceState> gaussian_oracle(const ModelParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate();
    const double w = p.omega;
    const double gc = p.g_c();
    const double ratio2 = (p.g * p.g) / (gc * gc);
    std::vector<CovarianceState> out;
    out.reserve(grid.samples.size());
    for (double t : grid.samples) {
        CovarianceState cs;
        if (std::abs(ratio2 - 1.0) <= 1e-12) {
            // flat potential: X(t) = X0 + w t P0
            cs.var_x = 0.5 * (1.0 + w * w * t * t);
            cs.var_p = 0.5;
            cs.cov_xp = 0.5 * w * t;
        } else if (ratio2 < 1.0) {
            const double we = w * std::sqrt(1.0 - ratio2);
            const double c = std::cos(we * t), s = std::sin(we * t);
            const double up = w / we, dn = we / w;
            cs.var_x = 0.5 * (c * c + up * up * s * s);
            cs.var_p = 0.5 * (c * c + dn * dn * s * s);
            cs.cov_xp = 0.5 * c * s * (up - dn);
        } else {
            const double mu = w * std::sqrt(ratio2 - 1.0);
            const double c = std::cosh(mu * t), s = std::sinh(mu * t);
            const double up = w / mu, dn = mu / w;
            cs.var_x = 0.5 * (c * c + up * up * s * s);
            cs.var_p = 0.5 * (c * c + dn * dn * s * s);
            cs.cov_xp = 0.5 * c * s * (up + dn);
        }
        out.push_back(cs);
    }
    return out;
}

EchoResult echo_overlap(const Operator& h_a, const Operator& h_b, const StateVector& psi0,
                        const TimeGrid& grid, const PropagatorOptions& opts) {
    grid.validate();
    Operator ha = h_a, hb = h_b;
    if (ha.space() != hb.space()) {
        if (ha.space().is_product() && !hb.space().has_spin())
            hb = embed_field(hb, SpinSpace(ha.space().spin_dim - 1));
        else if (hb.space().is_product() && !ha.space().has_spin())
            ha = embed_field(ha, SpinSpace(hb.space().spin_dim - 1));
        else
            throw DimensionError("echo_overlap: incompatible Hamiltonian spaces");
    }
    if (ha.space() != psi0.space())
        throw DimensionError("echo_overlap: state space does not match Hamiltonians");
    if (!ha.is_hermitian(1e-12) || !hb.is_hermitian(1e-12))
        throw NumericalError("echo_overlap: Hamiltonians must be Hermitian");

    const int fock_dim = psi0.space().fock_dim;
    const int spin_dim = psi0.space().has_spin() ? psi0.space().spin_dim : 1;

    ChebyshevStepper sa(ha, psi0.amplitudes());
    ChebyshevStepper sb(hb, psi0.amplitudes());

    EchoResult res;
    double t_now = 0.0;
    for (double t : grid.samples) {
        sa.advance(t - t_now);
        sb.advance(t - t_now);
        t_now = t;
        Complex ov = sb.state().dot(sa.state());
        if (std::abs(ov) > 1.0 + 1e-8)
            throw NumericalError("echo_overlap: |overlap| exceeds 1");
        res.times.push_back(t);
        res.overlaps.push_back(ov);
        double tail =
            std::max(detail::tail_population(sa.state(), fock_dim, spin_dim, opts.tail_fraction),
                     detail::tail_population(sb.state(), fock_dim, spin_dim, opts.tail_fraction));
        if (tail > opts.tail_threshold) {
            res.breached = true;
            res.breach_time = t;
            break;
        }
    }
    return res;
}

}  // namespace dicke
