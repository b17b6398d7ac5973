// hamiltonians.hpp - model Hamiltonians and closed-form critical quantities
#pragma once

#include "dickesim/fock.hpp"

namespace dicke {

// Physical parameters of a run; the single source of truth. omega sets the
// time scale, rates kappa/gamma are the amplitude-damping rates of the
// field / collective spin.
struct ModelParams {
    double omega = 1.0;
    double Omega = 1.0;
    int n_spins = 1;
    double g = 0.0;
    double kappa = 0.0;
    double gamma = 0.0;
    int cutoff = 1;

    void validate() const;

    double g_c() const { return std::sqrt(omega * Omega); }
    double g_over_gc() const { return g / g_c(); }
    // sqrt(Omega N / omega); the effective description becomes exact as
    // this diverges.
    double thermodynamic_parameter() const { return std::sqrt(Omega * n_spins / omega); }

    FockSpace fock() const { return FockSpace(cutoff); }
    SpinSpace spin() const { return SpinSpace(n_spins); }
};

enum class ModelKind {
    FullDicke,           // omega a^dag a + Omega S_z + (g/sqrt(N)) (a + a^dag) S_x
    EffectiveSpinField,  // omega a^dag a + Omega S_z + (g^2/2 Omega N) (a + a^dag)^2 S_z
    FieldOnly,           // (omega - g^2/2 Omega) a^dag a - (g^2/4 Omega)(a^2 + a^dag^2)
    QuadratureOscillator // (omega/2) P^2 + (1/2 omega)(omega^2 - omega g^2/Omega) X^2
};

bool model_acts_on_product_space(ModelKind kind);
std::string model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(const std::string& name);

Operator build_hamiltonian(ModelKind kind, const ModelParams& p);

// g_c = sqrt(omega * Omega)
double critical_coupling(const ModelParams& p);

// omega sqrt(1 - g^2/g_c^2); purely imaginary (positive imaginary part)
// above the critical coupling.
Complex effective_frequency(const ModelParams& p);

// Exponential-growth rate omega sqrt(g^2/g_c^2 - 1) for g > g_c.
double superradiant_rate(const ModelParams& p);

// U = exp{ i (g / (sqrt(N) Omega)) (a + a^dag) (x) S_y }
Operator polaron_transform(const ModelParams& p);

// V(x) = (omega/2) x^2 - (1/2) sqrt(N) sqrt(2 g^2 x^2 + N Omega^2)
double double_well_potential(double x, const ModelParams& p);

// Positive minimum x0 of V for g > g_c; throws SubcriticalError otherwise.
double well_minima(const ModelParams& p);

// Photon-number bound (fraction^2/2) (N Omega/omega) (g^2/g_c^2 - g_c^2/g^2);
// fraction = 1/4 reproduces the x_c = x0/4 bound.
double critical_photon_number(const ModelParams& p, double fraction = 0.25);

// log-form critical time ln(2 sqrt(n_c))/omega; throws RegimeError when
// 2 sqrt(n_c) <= e (outside the omega t > 1 validity domain).
double critical_time(const ModelParams& p, double fraction = 0.25);

// arcsinh inversion of sinh^2(omega t_c) = n_c; defined for all g > g_c.
double critical_time_exact(const ModelParams& p, double fraction = 0.25);

// Parity exp{i pi (a^dag a + S_z + N/2)}; diagonal with entries (-1)^(n+s).
Operator parity_operator(const FockSpace& fock, const SpinSpace& spin);

}  // namespace dicke
