#include <gtest/gtest.h>

#include "cheshire/errors.hpp"
#include "cheshire/observables.hpp"

using namespace cheshire;

namespace {

double max_abs(const Matrix16& m) { return m.cwiseAbs().maxCoeff(); }

const Matrix2 kId = Matrix2::Identity();

}  // namespace

TEST(PathProjector, CompletenessIdempotenceTrace) {
    for (auto k : {Particle::one, Particle::two}) {
        const auto u = path_projector(k, Path::u).matrix();
        const auto d = path_projector(k, Path::d).matrix();
        EXPECT_EQ(u + d, Matrix16::Identity().eval());
        EXPECT_EQ(u * u, u);
        EXPECT_EQ(max_abs(u * d), 0.0);
        EXPECT_EQ(d.trace(), Complex(8.0));
    }
}

TEST(SpinZ, EigenstatesAndTrace) {
    const StateVector ket = basis_ket(Spin::up, Spin::down, Path::u, Path::d);
    EXPECT_EQ(act(spin_z(Particle::one), ket), (0.5 * ket).eval());
    EXPECT_EQ(act(spin_z(Particle::two), ket), (-0.5 * ket).eval());
    EXPECT_EQ(spin_z(Particle::one).matrix().trace(), Complex(0.0));
    EXPECT_EQ(spin_z(Particle::two).matrix().trace(), Complex(0.0));
}

TEST(PathSpin, DecomposesSpinAndBranchesAreOrthogonal) {
    for (auto k : {Particle::one, Particle::two}) {
        const auto u = path_spin(k, Path::u).matrix();
        const auto d = path_spin(k, Path::d).matrix();
        EXPECT_EQ(u + d, spin_z(k).matrix());
        EXPECT_EQ(max_abs(u * d), 0.0);
    }
}

TEST(PathSpin, DiagonalSpectrum) {
    const auto m = path_spin(Particle::one, Path::u).matrix();
    int neg = 0, zero = 0, pos = 0;
    for (int r = 0; r < kDim; ++r) {
        const double v = m(r, r).real();
        neg += v == -0.5;
        zero += v == 0.0;
        pos += v == 0.5;
    }
    EXPECT_EQ(neg, 4);
    EXPECT_EQ(zero, 8);
    EXPECT_EQ(pos, 4);
}

TEST(Observables, AllBuildersExactlyHermitian) {
    for (const auto& op : canonical_observables()) {
        EXPECT_LE(op.hermiticity_defect(), 1e-15) << op.label();
    }
    for (auto k : {Particle::one, Particle::two}) {
        EXPECT_LE(spin_z(k).hermiticity_defect(), 1e-15);
    }
}

TEST(Observables, ParticleOneProjectorCommutesWithParticleTwoOperators) {
    Matrix2 flip = Matrix2::Zero();
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    const std::vector<Matrix16> particle_two{
        tensor4(kId, flip, kId, kId).matrix(), tensor4(kId, kId, kId, flip).matrix(),
        spin_z(Particle::two).matrix(), path_projector(Particle::two, Path::u).matrix()};
    for (auto b : {Path::u, Path::d}) {
        const auto p = path_projector(Particle::one, b).matrix();
        for (const auto& q : particle_two) {
            EXPECT_EQ(max_abs(p * q - q * p), 0.0);
        }
    }
}

TEST(Observables, CanonicalOrderAndLookup) {
    const std::vector<std::string> expected{"Pi_u1",    "Pi_u2",    "Pi_d1",    "Pi_d2",
                                            "Pi_u1*S1", "Pi_u2*S2", "Pi_d1*S1", "Pi_d2*S2"};
    EXPECT_EQ(canonical_labels(), expected);
    EXPECT_EQ(observable_by_label("Pi_d2*S2").matrix(),
              path_spin(Particle::two, Path::d).matrix());
    EXPECT_THROW(observable_by_label("Pi_x1"), DomainError);
    EXPECT_EQ(label_slug("Pi_u1*S1"), "Pi_u1_S1");
}
