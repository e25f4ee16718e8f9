#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "cheshire/errors.hpp"
#include "cheshire/observables.hpp"
#include "cheshire/tensor_core.hpp"
#include "cheshire/tsvf.hpp"

using namespace cheshire;

namespace {

Matrix16 random_hermitian(std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    Matrix16 a;
    for (int r = 0; r < kDim; ++r)
        for (int c = 0; c < kDim; ++c) a(r, c) = Complex(g(gen), g(gen));
    return 0.5 * (a + a.adjoint());
}

StateVector random_state(std::mt19937_64& gen) {
    std::normal_distribution<double> g;
    StateVector v;
    for (int k = 0; k < kDim; ++k) v(k) = Complex(g(gen), g(gen));
    return v;
}

Matrix2 diag2(double a, double b) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return m;
}

}  // namespace

TEST(BasisIndex, FlatRoundTripIsBijective) {
    for (int flat = 0; flat < kDim; ++flat) {
        const auto idx = BasisIndex::from_flat(flat);
        EXPECT_EQ(idx.flat(), flat);
        EXPECT_EQ(flat, idx.s1 * 8 + idx.s2 * 4 + idx.p1 * 2 + idx.p2);
    }
    static_assert(BasisIndex{0, 1, 1, 0}.flat() == 6);
}

TEST(Inner, OrthonormalBasis) {
    EXPECT_EQ(inner(basis_ket(0), basis_ket(0)), Complex(1.0));
    EXPECT_EQ(inner(basis_ket(0), basis_ket(1)), Complex(0.0));
}

TEST(Inner, ExchangePostAgainstQuarterPiPre) {
    const Complex v = inner(post_exchange(), preselect(std::numbers::pi / 4));
    EXPECT_NEAR(v.real(), 0.5, 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);
}

TEST(Inner, ConjugateSymmetricAndConjugateLinearInFirstArgument) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const StateVector a = random_state(gen);
        const StateVector b = random_state(gen);
        EXPECT_LT(std::abs(inner(a, b) - std::conj(inner(b, a))), 1e-12);
        const Complex s(0.3, -1.2);
        EXPECT_LT(std::abs(inner(s * a, b) - std::conj(s) * inner(a, b)), 1e-12);
    }
}

TEST(Apply, IdentityAndZero) {
    std::mt19937_64 gen(3);
    const StateVector v = random_state(gen);
    EXPECT_EQ(act(Operator::identity(), v), v);
    EXPECT_EQ(act(Operator::zero(), v), StateVector::Zero().eval());
}

TEST(Apply, ProjectorKeepsOnlyTheU1D2Component) {
    const double alpha = 0.6;
    const StateVector out = act(path_projector(Particle::one, Path::u), preselect(alpha));
    for (int flat = 0; flat < kDim; ++flat) {
        const auto idx = BasisIndex::from_flat(flat);
        const bool u1d2 = idx.p1 == 0 && idx.p2 == 1 && idx.s1 != idx.s2;
        if (u1d2) {
            EXPECT_NEAR(std::abs(out(flat)), std::sin(alpha) / std::sqrt(2.0), 1e-15);
        } else {
            EXPECT_EQ(out(flat), Complex(0.0));
        }
    }
}

TEST(Tensor4, IdentityFactors) {
    const Matrix2 id = Matrix2::Identity();
    EXPECT_EQ(tensor4(id, id, id, id).matrix(), Matrix16::Identity().eval());
}

TEST(Tensor4, PathProjectorOnFirstAtom) {
    const Matrix2 id = Matrix2::Identity();
    const auto op = tensor4(id, id, diag2(1, 0), id);
    int ones = 0;
    for (int r = 0; r < kDim; ++r) {
        for (int c = 0; c < kDim; ++c) {
            if (r != c) {
                EXPECT_EQ(op.matrix()(r, c), Complex(0.0));
            }
        }
        if (op.matrix()(r, r) == Complex(1.0)) {
            ++ones;
            EXPECT_EQ(BasisIndex::from_flat(r).p1, 0);
        }
    }
    EXPECT_EQ(ones, 8);
}

TEST(Tensor4, SpinZOnFirstAtomKeyedByS1) {
    const Matrix2 id = Matrix2::Identity();
    const auto op = tensor4(diag2(0.5, -0.5), id, id, id);
    for (int r = 0; r < kDim; ++r) {
        const double expected = BasisIndex::from_flat(r).s1 == 0 ? 0.5 : -0.5;
        EXPECT_EQ(op.matrix()(r, r), Complex(expected));
    }
}

TEST(Spectral, IdentityAndProjectors) {
    for (double ev : spectral(Operator::identity()).eigenvalues) EXPECT_NEAR(ev, 1.0, 1e-14);

    const auto proj = spectral(path_projector(Particle::one, Path::u)).eigenvalues;
    for (int k = 0; k < 8; ++k) EXPECT_NEAR(proj[k], 0.0, 1e-14);
    for (int k = 8; k < 16; ++k) EXPECT_NEAR(proj[k], 1.0, 1e-14);

    const auto comp = spectral(path_spin(Particle::one, Path::u)).eigenvalues;
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(comp[k], -0.5, 1e-14);
    for (int k = 4; k < 12; ++k) EXPECT_NEAR(comp[k], 0.0, 1e-14);
    for (int k = 12; k < 16; ++k) EXPECT_NEAR(comp[k], 0.5, 1e-14);
}

TEST(Spectral, RejectsNonHermitian) {
    Matrix16 m = Matrix16::Zero();
    m(0, 1) = 1.0;
    EXPECT_THROW(spectral(Operator(m, "raise")), NonHermitianInput);
    EXPECT_THROW(matexp_neg(Operator(m, "raise"), 0.0), NonHermitianInput);
    EXPECT_THROW(matexp_neg(Operator(m, "raise"), 0.3), NonHermitianInput);
}

TEST(Spectral, DeterministicForIdenticalInput) {
    std::mt19937_64 gen(11);
    const Operator op(random_hermitian(gen), "H");
    const auto a = spectral(op);
    const auto b = spectral(op);
    EXPECT_EQ(a.eigenvalues, b.eigenvalues);
    EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(SpectralProperty, ReconstructionAndOrthonormality) {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const Operator op(random_hermitian(gen), "H");
        const auto dec = spectral(op);
        EXPECT_LT((dec.reconstruct() - op.matrix()).norm(), 1e-10);
        const Matrix16 gram = dec.eigenvectors.adjoint() * dec.eigenvectors;
        EXPECT_LT((gram - Matrix16::Identity()).norm(), 1e-10);
        for (int k = 1; k < kDim; ++k) EXPECT_LE(dec.eigenvalues[k - 1], dec.eigenvalues[k]);
    }
}

TEST(MatexpNeg, ZeroTimeIsIdentity) {
    EXPECT_EQ(matexp_neg(path_spin(Particle::two, Path::d), 0.0).matrix(),
              Matrix16::Identity().eval());
}

TEST(MatexpNeg, ScalarCase) {
    const double t = 0.37;
    EXPECT_LT((matexp_neg(Operator::identity(), t).matrix() -
               std::exp(-t) * Matrix16::Identity()).cwiseAbs().maxCoeff(),
              1e-14);
}

TEST(MatexpNeg, RejectsNegativeTime) {
    EXPECT_THROW(matexp_neg(Operator::identity(), -0.1), DomainError);
}

TEST(MatexpNegProperty, ProjectorClosedForm) {
    std::vector<Operator> projectors;
    for (auto k : {Particle::one, Particle::two})
        for (auto b : {Path::u, Path::d}) projectors.push_back(path_projector(k, b));
    for (const auto& p : projectors) {
        for (double t : {0.0, 0.01, 0.1, 1.0}) {
            const Matrix16 closed =
                Matrix16::Identity() + (std::exp(-t) - 1.0) * p.matrix();
            EXPECT_LE((matexp_neg(p, t).matrix() - closed).cwiseAbs().maxCoeff(), 1e-12)
                << p.label() << " t=" << t;
        }
    }
}

TEST(MatexpNegProperty, Semigroup) {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> ut(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const Operator op(random_hermitian(gen) * 0.5, "H");
        const double s = ut(gen);
        const double t = ut(gen);
        const Matrix16 lhs = matexp_neg(op, s).matrix() * matexp_neg(op, t).matrix();
        const Matrix16 rhs = matexp_neg(op, s + t).matrix();
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(MatexpNegProperty, HermitianPositiveDefinite) {
    std::mt19937_64 gen(5);
    const Operator op(random_hermitian(gen), "H");
    const auto u = matexp_neg(op, 0.4);
    EXPECT_LT(u.hermiticity_defect(), 1e-12);
    for (double ev : spectral(u).eigenvalues) EXPECT_GT(ev, 0.0);
}
