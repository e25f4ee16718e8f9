#include "cheshire/tensor_core.hpp"

#include <algorithm>
#include <cmath>

#include "cheshire/errors.hpp"

namespace cheshire {

StateVector basis_ket(Spin s1, Spin s2, Path p1, Path p2) {
    const BasisIndex idx{static_cast<int>(s1), static_cast<int>(s2), static_cast<int>(p1),
                         static_cast<int>(p2)};
    return basis_ket(idx.flat());
}

StateVector basis_ket(int flat) {
    if (flat < 0 || flat >= kDim) {
        throw DomainError("basis index out of range: " + std::to_string(flat));
    }
    StateVector v = StateVector::Zero();
    v(flat) = 1.0;
    return v;
}

double Operator::hermiticity_defect() const {
    return (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
}

Operator operator*(const Operator& a, const Operator& b) {
    return Operator(a.matrix() * b.matrix(), a.label() + "*" + b.label());
}

Operator operator+(const Operator& a, const Operator& b) {
    return Operator(a.matrix() + b.matrix(), a.label() + "+" + b.label());
}

Matrix16 SpectralDecomposition::reconstruct() const {
    Matrix16 out = Matrix16::Zero();
    for (int k = 0; k < kDim; ++k) {
        out += eigenvalues[k] * eigenvectors.col(k) * eigenvectors.col(k).adjoint();
    }
    return out;
}

Matrix16 SpectralDecomposition::exp_neg(double t) const {
    Eigen::Matrix<Complex, kDim, 1> weights;
    for (int k = 0; k < kDim; ++k) {
        weights(k) = std::exp(-eigenvalues[k] * t);
    }
    return eigenvectors * weights.asDiagonal() * eigenvectors.adjoint();
}

Complex inner(const StateVector& a, const StateVector& b) {
    // Eigen's dot() conjugates its left operand.
    return a.dot(b);
}

StateVector act(const Operator& op, const StateVector& v) {
    return op.matrix() * v;
}

double norm(const StateVector& v) {
    return v.norm();
}

Operator tensor4(const Matrix2& spin1, const Matrix2& spin2, const Matrix2& path1,
                 const Matrix2& path2, std::string label) {
    Matrix16 m;
    for (int row = 0; row < kDim; ++row) {
        const auto r = BasisIndex::from_flat(row);
        for (int col = 0; col < kDim; ++col) {
            const auto c = BasisIndex::from_flat(col);
            m(row, col) = spin1(r.s1, c.s1) * spin2(r.s2, c.s2) * path1(r.p1, c.p1) *
                          path2(r.p2, c.p2);
        }
    }
    return Operator(std::move(m), std::move(label));
}

SpectralDecomposition spectral(const Operator& op) {
    const double defect = op.hermiticity_defect();
    if (!(defect <= kHermitianTol)) {
        throw NonHermitianInput("operator '" + op.label() +
                                "' is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    // Symmetrize so the solver sees an exactly Hermitian input.
    const Matrix16 h = 0.5 * (op.matrix() + op.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix16> solver(h);
    if (solver.info() != Eigen::Success) {
        throw Error("eigensolver failed for operator '" + op.label() + "'");
    }
    SpectralDecomposition out;
    for (int k = 0; k < kDim; ++k) {
        out.eigenvalues[k] = solver.eigenvalues()(k);
    }
    out.eigenvectors = solver.eigenvectors();
    return out;
}

Operator matexp_neg(const Operator& op, double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("imaginary time must be finite and non-negative");
    }
    if (t == 0.0) {
        if (!op.is_hermitian()) {
            throw NonHermitianInput("operator '" + op.label() + "' is not Hermitian");
        }
        return Operator(Matrix16::Identity(), "exp(-" + op.label() + "*0)");
    }
    return Operator(spectral(op).exp_neg(t), "exp(-" + op.label() + "*t)");
}

}  // namespace cheshire
