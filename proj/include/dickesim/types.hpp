// types.hpp - shared aliases, space metadata, and error types
#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <stdexcept>
#include <string>

namespace dicke {

using Complex = std::complex<double>;
using SparseCd = Eigen::SparseMatrix<Complex>;
using DenseCd = Eigen::MatrixXcd;
using VectorCd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

// Basis descriptor for operators and states. A factor dimension of zero
// means the factor is absent. Product ordering is fixed globally: field
// index major, spin index minor, i.e. flat index = n * spin_dim + s.
struct SpaceTag {
    int fock_dim = 0;
    int spin_dim = 0;

    static SpaceTag fock(int d) { return {d, 0}; }
    static SpaceTag spin(int d) { return {0, d}; }
    static SpaceTag product(int f, int s) { return {f, s}; }

    bool has_fock() const { return fock_dim > 0; }
    bool has_spin() const { return spin_dim > 0; }
    bool is_product() const { return has_fock() && has_spin(); }

    int dim() const {
        int d = 1;
        if (has_fock()) d *= fock_dim;
        if (has_spin()) d *= spin_dim;
        return d;
    }

    bool operator==(const SpaceTag&) const = default;

    std::string str() const;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SubcriticalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dicke
