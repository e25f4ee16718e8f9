#pragma once

#include <array>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace cheshire {

// Joint Hilbert space of two spin-1/2 atoms, each on one of two paths.
//
// Factor order is (spin1, spin2, path1, path2) and the flat basis index is
//
//     flat = s1*8 + s2*4 + p1*2 + p2
//
// with spin bit 0 = up, 1 = down and path bit 0 = u, 1 = d. Every builder,
// kernel and test in the project relies on this layout.
inline constexpr int kDim = 16;

using Complex = std::complex<double>;
using StateVector = Eigen::Matrix<Complex, kDim, 1>;
using Matrix16 = Eigen::Matrix<Complex, kDim, kDim>;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kHermitianTol = 1e-10;

enum class Spin : int { up = 0, down = 1 };
enum class Path : int { u = 0, d = 1 };

struct BasisIndex {
    int s1 = 0;
    int s2 = 0;
    int p1 = 0;
    int p2 = 0;

    constexpr int flat() const { return s1 * 8 + s2 * 4 + p1 * 2 + p2; }

    static constexpr BasisIndex from_flat(int flat) {
        return BasisIndex{(flat >> 3) & 1, (flat >> 2) & 1, (flat >> 1) & 1, flat & 1};
    }

    friend constexpr bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

// Unit vector |s1 s2>|p1 p2>.
StateVector basis_ket(Spin s1, Spin s2, Path p1, Path p2);
StateVector basis_ket(int flat);

// 16x16 complex matrix with a display label. Observables are Hermitian;
// evolution operators built from them need not be.
class Operator {
public:
    Operator() : matrix_(Matrix16::Zero()) {}
    Operator(Matrix16 matrix, std::string label)
        : matrix_(std::move(matrix)), label_(std::move(label)) {}

    const Matrix16& matrix() const { return matrix_; }
    const std::string& label() const { return label_; }

    static Operator identity() { return Operator(Matrix16::Identity(), "I"); }
    static Operator zero() { return Operator(Matrix16::Zero(), "0"); }

    // Largest |A_jk - conj(A_kj)|.
    double hermiticity_defect() const;
    bool is_hermitian(double tol = kHermitianTol) const { return hermiticity_defect() <= tol; }

private:
    Matrix16 matrix_;
    std::string label_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);

// Eigen-decomposition of a Hermitian operator. Degenerate eigenspaces carry an
// arbitrary orthonormal basis; only the spectral projectors are meaningful.
struct SpectralDecomposition {
    std::array<double, kDim> eigenvalues{};  // ascending
    Matrix16 eigenvectors;                   // column k pairs with eigenvalues[k]

    StateVector eigenvector(int k) const { return eigenvectors.col(k); }
    Matrix16 reconstruct() const;
    double min_eigenvalue() const { return eigenvalues.front(); }

    // exp(-O t) = sum_k exp(-lambda_k t) |v_k><v_k|
    Matrix16 exp_neg(double t) const;
};

Complex inner(const StateVector& a, const StateVector& b);
StateVector act(const Operator& op, const StateVector& v);
double norm(const StateVector& v);

// Kronecker product ordered (spin1, spin2, path1, path2).
Operator tensor4(const Matrix2& spin1, const Matrix2& spin2, const Matrix2& path1,
                 const Matrix2& path2, std::string label = {});

// Throws NonHermitianInput when the hermiticity defect exceeds kHermitianTol.
SpectralDecomposition spectral(const Operator& op);

// exp(-O t) through the exact spectral route. Throws NonHermitianInput, and
// DomainError for negative t.
Operator matexp_neg(const Operator& op, double t);

}  // namespace cheshire
