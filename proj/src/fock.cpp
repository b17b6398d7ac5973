// fock.cpp - operator/state constructors on the truncated Fock x spin basis
#include "dickesim/fock.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

namespace dicke {

std::string SpaceTag::str() const {
    std::ostringstream os;
    if (is_product())
        os << "fock(" << fock_dim << ")*spin(" << spin_dim << ")";
    else if (has_fock())
        os << "fock(" << fock_dim << ")";
    else if (has_spin())
        os << "spin(" << spin_dim << ")";
    else
        os << "scalar";
    return os.str();
}

Operator::Operator(SparseCd matrix, SpaceTag space) : mat_(std::move(matrix)), space_(space) {
    if (mat_.rows() != mat_.cols())
        throw DimensionError("Operator matrix must be square");
    if (mat_.rows() != space_.dim())
        throw DimensionError("Operator dimension " + std::to_string(mat_.rows()) +
                             " does not match space " + space_.str());
    mat_.makeCompressed();
}

Operator Operator::adjoint() const {
    return Operator(SparseCd(mat_.adjoint()), space_);
}

bool Operator::is_hermitian(double tol) const {
    SparseCd diff = SparseCd(mat_.adjoint()) - mat_;
    double base = mat_.norm();
    return diff.norm() <= tol * std::max(1.0, base);
}

Operator Operator::operator+(const Operator& other) const {
    if (space_ != other.space_) throw DimensionError("operator+: space mismatch");
    return Operator(SparseCd(mat_ + other.mat_), space_);
}

Operator Operator::operator-(const Operator& other) const {
    if (space_ != other.space_) throw DimensionError("operator-: space mismatch");
    return Operator(SparseCd(mat_ - other.mat_), space_);
}

Operator Operator::operator*(const Operator& other) const {
    if (space_ != other.space_) throw DimensionError("operator*: space mismatch");
    return Operator(SparseCd(mat_ * other.mat_), space_);
}

Operator Operator::scaled(Complex factor) const {
    return Operator(SparseCd(mat_ * factor), space_);
}

Operator operator*(Complex factor, const Operator& op) {
    return op.scaled(factor);
}

StateVector::StateVector(VectorCd amplitudes, SpaceTag space)
    : amps_(std::move(amplitudes)), space_(space) {
    if (amps_.size() != space_.dim())
        throw DimensionError("StateVector dimension does not match space " + space_.str());
    double n2 = amps_.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-10)
        throw NumericalError("StateVector not normalized: |psi|^2 = " + std::to_string(n2));
}

DensityOperator::DensityOperator(DenseCd matrix, SpaceTag space)
    : mat_(std::move(matrix)), space_(space) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != space_.dim())
        throw DimensionError("DensityOperator dimension does not match space " + space_.str());
    double herm = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > 1e-10)
        throw NumericalError("DensityOperator not Hermitian (max dev " + std::to_string(herm) + ")");
    double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > 1e-8)
        throw NumericalError("DensityOperator trace " + std::to_string(tr) + " != 1");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
    DenseCd m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityOperator(std::move(m), psi.space());
}

double DensityOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<DenseCd> es(mat_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

Operator destroy(const FockSpace& space) {
    const int d = space.dim();
    SparseCd m(d, d);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(d - 1);
    for (int n = 1; n < d; ++n) trip.emplace_back(n - 1, n, std::sqrt(double(n)));
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(std::move(m), space.tag());
}

Operator create(const FockSpace& space) {
    return destroy(space).adjoint();
}

Operator number_operator(const FockSpace& space) {
    const int d = space.dim();
    SparseCd m(d, d);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(d);
    for (int n = 1; n < d; ++n) trip.emplace_back(n, n, double(n));
    m.setFromTriplets(trip.begin(), trip.end());
    return Operator(std::move(m), space.tag());
}

Operator position_quadrature(const FockSpace& space) {
    Operator a = destroy(space);
    return (a + a.adjoint()).scaled(1.0 / std::sqrt(2.0));
}

Operator momentum_quadrature(const FockSpace& space) {
    Operator a = destroy(space);
    return (a - a.adjoint()).scaled(Complex(0.0, -1.0) / std::sqrt(2.0));
}

SpinOperators spin_operators(const SpinSpace& space) {
    const int d = space.dim();
    const double j = space.j();
    SparseCd sp(d, d);
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(d - 1);
    for (int i = 0; i + 1 < d; ++i) {
        double m = -j + i;
        trip.emplace_back(i + 1, i, std::sqrt(j * (j + 1) - m * (m + 1)));
    }
    sp.setFromTriplets(trip.begin(), trip.end());
    SparseCd sm = SparseCd(sp.adjoint());

    SparseCd sx = ((sp + sm) * Complex(0.5)).eval();
    SparseCd sy = ((sp - sm) * (Complex(0.0, -0.5))).eval();
    SparseCd sz(d, d);
    std::vector<Eigen::Triplet<Complex>> tz;
    for (int i = 0; i < d; ++i) tz.emplace_back(i, i, -j + i);
    sz.setFromTriplets(tz.begin(), tz.end());

    SpaceTag tag = space.tag();
    return SpinOperators{Operator(std::move(sx), tag), Operator(std::move(sy), tag),
                         Operator(std::move(sz), tag), Operator(std::move(sm), tag)};
}

Operator identity_operator(SpaceTag space) {
    const int d = space.dim();
    SparseCd m(d, d);
    m.setIdentity();
    return Operator(std::move(m), space);
}

Operator tensor(const Operator& field_op, const Operator& spin_op) {
    if (!field_op.space().has_fock() || field_op.space().has_spin())
        throw DimensionError("tensor: first factor must be a field operator");
    if (!spin_op.space().has_spin() || spin_op.space().has_fock())
        throw DimensionError("tensor: second factor must be a spin operator");
    SparseCd m = Eigen::kroneckerProduct(field_op.matrix(), spin_op.matrix()).eval();
    return Operator(std::move(m),
                    SpaceTag::product(field_op.space().fock_dim, spin_op.space().spin_dim));
}

Operator embed_field(const Operator& field_op, const SpinSpace& spin) {
    return tensor(field_op, identity_operator(spin.tag()));
}

Operator embed_spin(const Operator& spin_op, const FockSpace& fock) {
    return tensor(identity_operator(fock.tag()), spin_op);
}

StateVector vacuum_spin_down(const FockSpace& fock, const SpinSpace& spin) {
    VectorCd amps = VectorCd::Zero(fock.dim() * spin.dim());
    amps(0) = 1.0;  // field level 0, spin index 0 (m = -N/2)
    return StateVector(std::move(amps), SpaceTag::product(fock.dim(), spin.dim()));
}

StateVector fock_state(int n, const FockSpace& space) {
    if (n < 0 || n > space.cutoff) throw DimensionError("fock_state level out of range");
    VectorCd amps = VectorCd::Zero(space.dim());
    amps(n) = 1.0;
    return StateVector(std::move(amps), space.tag());
}

StateVector coherent_state(Complex alpha, const FockSpace& space) {
    const int d = space.dim();
    VectorCd amps(d);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d; ++n) amps(n) = amps(n - 1) * alpha / std::sqrt(double(n));
    double captured = amps.squaredNorm();
    double deficit = 1.0 - captured;
    if (deficit > 1e-8)
        throw TruncationError("coherent_state: truncation loss " + std::to_string(deficit) +
                              " at |alpha|^2 = " + std::to_string(std::norm(alpha)));
    amps /= std::sqrt(captured);
    return StateVector(std::move(amps), space.tag());
}

Complex expectation(const Operator& op, const StateVector& psi) {
    if (op.space() != psi.space()) throw DimensionError("expectation: space mismatch");
    return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

double expectation_real(const Operator& op, const StateVector& psi) {
    return expectation(op, psi).real();
}

Complex expectation(const Operator& op, const DensityOperator& rho) {
    if (op.space() != rho.space()) throw DimensionError("expectation: space mismatch");
    // tr(A rho) via the sparse entries of A
    Complex acc = 0.0;
    const SparseCd& a = op.matrix();
    for (int k = 0; k < a.outerSize(); ++k)
        for (SparseCd::InnerIterator it(a, k); it; ++it)
            acc += it.value() * rho.matrix()(it.col(), it.row());
    return acc;
}

double expectation_real(const Operator& op, const DensityOperator& rho) {
    return expectation(op, rho).real();
}

}  // namespace dicke
