// observables.hpp - measured quantities: photon number, spin, variances, Husimi Q
#pragma once

#include "dickesim/fock.hpp"
#include "dickesim/hamiltonians.hpp"

#include <vector>

namespace dicke {

double photon_number(const StateVector& psi);
double photon_number(const DensityOperator& rho);

// Partial trace over the spin factor.
DensityOperator reduce_field(const DensityOperator& rho);

struct Variances {
    double var_x = 0.0;
    double var_p = 0.0;
    double cov_xp = 0.0;  // symmetrized covariance
};

Variances quadrature_variances(const StateVector& psi);
Variances quadrature_variances(const DensityOperator& rho);

struct SpinExpectations {
    double sx = 0.0, sy = 0.0, sz = 0.0;
};

SpinExpectations spin_expectations(const StateVector& psi);
SpinExpectations spin_expectations(const DensityOperator& rho);

// Phase-space grid in alpha-plane units; alpha = (X + i P)/sqrt(2), so a
// potential minimum at position x0 sits at Re alpha = x0/sqrt(2).
struct HusimiGridSpec {
    int n_re = 201;
    int n_im = 201;
    double re_max = 6.0;  // symmetric extent +-re_max
    double im_max = 6.0;

    // Default paper-style extent: +-1.2 * max(3, marker + 3)
    static HusimiGridSpec auto_extent(double marker_re_alpha, int points = 201);
};

struct HusimiFrame {
    VectorXd re_alpha;  // grid along Re alpha
    VectorXd im_alpha;  // grid along Im alpha
    Eigen::MatrixXd values;  // values(i, j) = Q(re_alpha(j) + i*im_alpha(i))
    Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> flagged;  // truncation-marked cells
    std::string alpha_convention = "alpha = (X + i P)/sqrt(2)";

    double cell_re() const { return re_alpha.size() > 1 ? re_alpha(1) - re_alpha(0) : 0.0; }
    double cell_im() const { return im_alpha.size() > 1 ? im_alpha(1) - im_alpha(0) : 0.0; }
    // Riemann sum of Q dA over the grid
    double normalization() const;
    int flagged_count() const;
};

// Q(alpha) = <alpha| rho |alpha> / pi on the grid; rho must be field-only.
HusimiFrame husimi_q(const DensityOperator& rho_field, const HusimiGridSpec& spec,
                     int threads = 0);

// Appendix-style invariance diagnostic of the vacuum/spin-down state under
// the polaron transform.
struct InvarianceOverlap {
    double overlap = 1.0;          // Re <0,down| U |0,down>
    double overlap_squared = 1.0;  // |<0,down| U |0,down>|^2
    double leading_order = 1.0;    // 1 - g^2/(4 Omega^2)
    double condition_value = 0.0;  // (1/4)(g^2/g_c^2)(omega/Omega)
};

InvarianceOverlap invariance_overlap(const ModelParams& p);

}  // namespace dicke
