// fock.hpp - truncated bosonic / collective-spin operators, states, tensor products
#pragma once

#include "dickesim/types.hpp"

#include <optional>

namespace dicke {

// Truncated single-mode Fock space keeping levels 0..cutoff.
struct FockSpace {
    int cutoff;

    explicit FockSpace(int cutoff_) : cutoff(cutoff_) {
        if (cutoff < 1) throw DimensionError("FockSpace cutoff must be >= 1");
    }
    int dim() const { return cutoff + 1; }
    SpaceTag tag() const { return SpaceTag::fock(dim()); }
};

// Symmetric (maximal-J) subspace of N spin-1/2 constituents, J = N/2.
// Basis ordered by ascending S_z eigenvalue; index 0 is m = -N/2.
struct SpinSpace {
    int n_spins;

    explicit SpinSpace(int n_spins_) : n_spins(n_spins_) {
        if (n_spins < 1) throw DimensionError("SpinSpace n_spins must be >= 1");
    }
    int dim() const { return n_spins + 1; }
    double j() const { return 0.5 * n_spins; }
    SpaceTag tag() const { return SpaceTag::spin(dim()); }
};

// Complex matrix together with the basis it acts on. Storage is sparse;
// the contract is plain matrix semantics.
class Operator {
public:
    Operator(SparseCd matrix, SpaceTag space);

    const SparseCd& matrix() const { return mat_; }
    SpaceTag space() const { return space_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    Operator adjoint() const;
    DenseCd dense() const { return DenseCd(mat_); }
    bool is_hermitian(double tol = 1e-12) const;

    Operator operator+(const Operator& other) const;
    Operator operator-(const Operator& other) const;
    Operator operator*(const Operator& other) const;
    Operator scaled(Complex factor) const;

private:
    SparseCd mat_;
    SpaceTag space_;
};

Operator operator*(Complex factor, const Operator& op);

// Normalized pure state with basis metadata.
class StateVector {
public:
    StateVector(VectorCd amplitudes, SpaceTag space);

    const VectorCd& amplitudes() const { return amps_; }
    SpaceTag space() const { return space_; }
    int dim() const { return static_cast<int>(amps_.size()); }

private:
    VectorCd amps_;
    SpaceTag space_;
};

// Mixed state; Hermitian, unit trace (checked at construction).
class DensityOperator {
public:
    DensityOperator(DenseCd matrix, SpaceTag space);

    static DensityOperator pure(const StateVector& psi);

    const DenseCd& matrix() const { return mat_; }
    SpaceTag space() const { return space_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

    // Smallest eigenvalue (exact dense solve); used by validation paths.
    double min_eigenvalue() const;

private:
    DenseCd mat_;
    SpaceTag space_;
};

// --- operator constructors -------------------------------------------------

// Annihilation operator: <n-1| a |n> = sqrt(n).
Operator destroy(const FockSpace& space);
Operator create(const FockSpace& space);
Operator number_operator(const FockSpace& space);
// X = (a + a^dag)/sqrt(2), P = (a - a^dag)/(sqrt(2) i)
Operator position_quadrature(const FockSpace& space);
Operator momentum_quadrature(const FockSpace& space);

struct SpinOperators {
    Operator sx, sy, sz, s_minus;
};

// Standard spin-J matrices with J = N/2 in the ascending-m S_z eigenbasis.
SpinOperators spin_operators(const SpinSpace& space);

Operator identity_operator(SpaceTag space);

// Kronecker product, field factor major / spin factor minor.
Operator tensor(const Operator& field_op, const Operator& spin_op);
// Embed a field-only (spin-only) operator into the product space.
Operator embed_field(const Operator& field_op, const SpinSpace& spin);
Operator embed_spin(const Operator& spin_op, const FockSpace& fock);

// --- state constructors ----------------------------------------------------

// |0> (x) |m = -N/2>
StateVector vacuum_spin_down(const FockSpace& fock, const SpinSpace& spin);
StateVector fock_state(int n, const FockSpace& space);
// Truncated coherent state, renormalized; throws TruncationError when the
// pre-normalization deficit 1 - sum |c_n|^2 exceeds 1e-8.
StateVector coherent_state(Complex alpha, const FockSpace& space);

// --- expectation helpers ---------------------------------------------------

double expectation_real(const Operator& op, const StateVector& psi);
Complex expectation(const Operator& op, const StateVector& psi);
double expectation_real(const Operator& op, const DensityOperator& rho);
Complex expectation(const Operator& op, const DensityOperator& rho);

}  // namespace dicke
