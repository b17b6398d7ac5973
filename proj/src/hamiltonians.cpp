// hamiltonians.cpp - Hamiltonian builders and critical-point closed forms
#include "dickesim/hamiltonians.hpp"

#include <cmath>
#include <vector>

namespace dicke {

void ModelParams::validate() const {
    if (!(omega > 0)) throw ConfigError("ModelParams: omega must be > 0");
    if (!(Omega > 0)) throw ConfigError("ModelParams: Omega must be > 0");
    if (!(g >= 0)) throw ConfigError("ModelParams: g must be >= 0");
    if (!(kappa >= 0)) throw ConfigError("ModelParams: kappa must be >= 0");
    if (!(gamma >= 0)) throw ConfigError("ModelParams: gamma must be >= 0");
    if (n_spins < 1) throw ConfigError("ModelParams: n_spins must be >= 1");
    if (cutoff < 1) throw ConfigError("ModelParams: cutoff must be >= 1");
}

bool model_acts_on_product_space(ModelKind kind) {
    return kind == ModelKind::FullDicke || kind == ModelKind::EffectiveSpinField;
}

std::string model_kind_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::FullDicke: return "FullDicke";
        case ModelKind::EffectiveSpinField: return "EffectiveSpinField";
        case ModelKind::FieldOnly: return "FieldOnly";
        case ModelKind::QuadratureOscillator: return "QuadratureOscillator";
    }
    throw ConfigError("unknown ModelKind");
}

ModelKind model_kind_from_name(const std::string& name) {
    if (name == "FullDicke" || name == "full_dicke" || name == "dicke") return ModelKind::FullDicke;
    if (name == "EffectiveSpinField" || name == "effective_spin_field" || name == "effective")
        return ModelKind::EffectiveSpinField;
    if (name == "FieldOnly" || name == "field_only") return ModelKind::FieldOnly;
    if (name == "QuadratureOscillator" || name == "quadrature_oscillator" || name == "quadrature")
        return ModelKind::QuadratureOscillator;
    throw ConfigError("unknown model name '" + name + "'");
}

Operator build_hamiltonian(ModelKind kind, const ModelParams& p) {
    p.validate();
    FockSpace fock = p.fock();
    switch (kind) {
        case ModelKind::FullDicke: {
            SpinSpace spin = p.spin();
            SpinOperators s = spin_operators(spin);
            Operator a = destroy(fock);
            Operator x_unscaled = a + a.adjoint();
            Operator h = embed_field(number_operator(fock), spin).scaled(p.omega) +
                         embed_spin(s.sz, fock).scaled(p.Omega) +
                         tensor(x_unscaled, s.sx).scaled(p.g / std::sqrt(double(p.n_spins)));
            return h;
        }
        case ModelKind::EffectiveSpinField: {
            SpinSpace spin = p.spin();
            SpinOperators s = spin_operators(spin);
            Operator a = destroy(fock);
            Operator x_unscaled = a + a.adjoint();
            Operator x2 = x_unscaled * x_unscaled;
            Operator h = embed_field(number_operator(fock), spin).scaled(p.omega) +
                         embed_spin(s.sz, fock).scaled(p.Omega) +
                         tensor(x2, s.sz).scaled(p.g * p.g / (2.0 * p.Omega * p.n_spins));
            return h;
        }
        case ModelKind::FieldOnly: {
            Operator a = destroy(fock);
            Operator adag = a.adjoint();
            Operator squeeze = a * a + adag * adag;
            double g2 = p.g * p.g;
            return number_operator(fock).scaled(p.omega - g2 / (2.0 * p.Omega)) +
                   squeeze.scaled(-g2 / (4.0 * p.Omega));
        }
        case ModelKind::QuadratureOscillator: {
            // X^2 and P^2 in normal order (a^2, a^dag^2, n, 1) so that the
            // truncated matrix has no corner defect at the cutoff level:
            //   X^2 = (a^2 + a^dag^2)/2 + n + 1/2,  P^2 = -(a^2 + a^dag^2)/2 + n + 1/2
            Operator a = destroy(fock);
            Operator adag = a.adjoint();
            Operator squeeze = a * a + adag * adag;
            Operator n_op = number_operator(fock);
            Operator one = identity_operator(fock.tag());
            double half_mass = 0.5 * p.omega;
            double spring = (p.omega * p.omega - p.omega * p.g * p.g / p.Omega) / (2.0 * p.omega);
            return squeeze.scaled(0.5 * (spring - half_mass)) +
                   n_op.scaled(spring + half_mass) + one.scaled(0.5 * (spring + half_mass));
        }
    }
    throw ConfigError("unknown ModelKind");
}

double critical_coupling(const ModelParams& p) {
    p.validate();
    return p.g_c();
}

Complex effective_frequency(const ModelParams& p) {
    p.validate();
    double ratio2 = (p.g * p.g) / (p.g_c() * p.g_c());
    if (ratio2 <= 1.0) return Complex(p.omega * std::sqrt(1.0 - ratio2), 0.0);
    return Complex(0.0, p.omega * std::sqrt(ratio2 - 1.0));
}

double superradiant_rate(const ModelParams& p) {
    Complex w = effective_frequency(p);
    if (w.imag() <= 0.0) throw SubcriticalError("superradiant_rate requires g > g_c");
    return w.imag();
}

Operator polaron_transform(const ModelParams& p) {
    p.validate();
    FockSpace fock = p.fock();
    SpinSpace spin = p.spin();
    Operator a = destroy(fock);
    Operator generator =
        tensor(a + a.adjoint(), spin_operators(spin).sy).scaled(p.g / (std::sqrt(double(p.n_spins)) * p.Omega));
    // U = exp(i G) with G Hermitian, via eigendecomposition of G.
    Eigen::SelfAdjointEigenSolver<DenseCd> es(generator.dense());
    VectorCd phases = (Complex(0, 1) * es.eigenvalues().cast<Complex>()).array().exp();
    DenseCd u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    return Operator(u.sparseView(1.0, 1e-300), generator.space());
}

double double_well_potential(double x, const ModelParams& p) {
    p.validate();
    double n = p.n_spins;
    return 0.5 * p.omega * x * x -
           0.5 * std::sqrt(n) * std::sqrt(2.0 * p.g * p.g * x * x + n * p.Omega * p.Omega);
}

double well_minima(const ModelParams& p) {
    p.validate();
    double gc = p.g_c();
    if (p.g <= gc)
        throw SubcriticalError("well_minima requires g > g_c (g/g_c = " +
                               std::to_string(p.g / gc) + ")");
    double r2 = (p.g * p.g) / (gc * gc);
    return std::sqrt(p.n_spins * p.Omega / (2.0 * p.omega)) * std::sqrt(r2 - 1.0 / r2);
}

double critical_photon_number(const ModelParams& p, double fraction) {
    p.validate();
    double gc = p.g_c();
    if (p.g <= gc)
        throw SubcriticalError("critical_photon_number requires g > g_c");
    double r2 = (p.g * p.g) / (gc * gc);
    return 0.5 * fraction * fraction * (p.n_spins * p.Omega / p.omega) * (r2 - 1.0 / r2);
}

double critical_time(const ModelParams& p, double fraction) {
    double nc = critical_photon_number(p, fraction);
    double arg = 2.0 * std::sqrt(nc);
    if (arg <= std::exp(1.0))
        throw RegimeError("critical_time: log form invalid (2 sqrt(n_c) = " +
                          std::to_string(arg) + " <= e)");
    return std::log(arg) / p.omega;
}

double critical_time_exact(const ModelParams& p, double fraction) {
    double nc = critical_photon_number(p, fraction);
    return std::asinh(std::sqrt(nc)) / p.omega;
}

Operator parity_operator(const FockSpace& fock, const SpinSpace& spin) {
    const int fd = fock.dim(), sd = spin.dim();
    SparseCd m(fd * sd, fd * sd);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(fd * sd);
    for (int n = 0; n < fd; ++n)
        for (int s = 0; s < sd; ++s)
            trip.emplace_back(n * sd + s, n * sd + s, ((n + s) % 2 == 0) ? 1.0 : -1.0);
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(std::move(m), SpaceTag::product(fd, sd));
}

}  // namespace dicke
