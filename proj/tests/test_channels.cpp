#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"

#include "test_support.hpp"
#include "tsm/channels.hpp"

using namespace tsm;
using namespace tsm::test;

namespace {

// Direct numeric integration of the continuous-outcome POVM; validates the
// closed-form partial-dephasing reduction used in the main path.
CMatrix gaussian_channel_quadrature(double beta_M, const CMatrix& rho) {
    const double sigma = 1.0;
    const double q0 = sigma * std::sqrt(beta_M);
    const CMatrix pp = proj_axis(0.0, +1, BasisLabel::A).mat;
    const CMatrix pm = proj_axis(0.0, -1, BasisLabel::A).mat;
    const double lo = -q0 - 10.0 * sigma;
    const double hi = q0 + 10.0 * sigma;
    const int n = 20000;  // composite Simpson, even interval count
    const double h = (hi - lo) / n;
    const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);
    CMatrix acc = CMatrix::Zero(2, 2);
    for (int i = 0; i <= n; ++i) {
        const double q = lo + h * i;
        const CMatrix mq = norm * (std::exp(-(q - q0) * (q - q0) / (4 * sigma * sigma)) * pp +
                                   std::exp(-(q + q0) * (q + q0) / (4 * sigma * sigma)) * pm);
        const double weight = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        acc += weight * (mq * rho * mq);
    }
    return acc * (h / 3.0);
}

void check_cptp(const Channel& ch) {
    CMatrix sum = CMatrix::Zero(ch.dim(), ch.dim());
    for (const KrausTerm& t : ch.kraus) {
        CHECK(t.weight >= 0.0);
        sum += t.weight * (t.k.mat.adjoint() * t.k.mat);
    }
    CHECK(max_abs_diff(sum, CMatrix::Identity(ch.dim(), ch.dim())) < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(choi_matrix(ch));
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
}

void check_bloch_consistency(const Channel& ch) {
    REQUIRE(ch.bloch.has_value());
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            Vec3 r = Vec3::Zero();
            r(axis) = sign;
            const DensityMatrix in = DensityMatrix::from_bloch(r);
            const Vec3 via_kraus = apply_channel(ch, in).bloch();
            const Vec3 via_affine = ch.bloch->linear * r + ch.bloch->offset;
            CHECK((via_kraus - via_affine).norm() < 1e-12);
        }
    }
}

}  // namespace

TEST_CASE("zero-strength gaussian measurement is the identity channel") {
    const Channel ch = gaussian_povm_channel(0.0);
    auto rng = fixed_rng(10);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_qubit_state(rng);
        CHECK(max_abs_diff(apply_channel(ch, rho).mat(), rho.mat()) < 1e-15);
    }
}

TEST_CASE("strong gaussian measurement reduces to projective x dephasing") {
    const Channel ch = gaussian_povm_channel(200.0);
    const CMatrix pp = proj_axis(0.0, +1, BasisLabel::A).mat;
    const CMatrix pm = proj_axis(0.0, -1, BasisLabel::A).mat;
    auto rng = fixed_rng(11);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_qubit_state(rng);
        const CMatrix want = pp * rho.mat() * pp + pm * rho.mat() * pm;
        CHECK(max_abs_diff(apply_channel(ch, rho).mat(), want) < 1e-12);
    }
}

TEST_CASE("gaussian channel closed form matches the POVM quadrature at beta_M = 2") {
    const Channel ch = gaussian_povm_channel(2.0);
    // suppression factor on the x-basis off-diagonal block
    const DensityMatrix zplus = DensityMatrix::from_bloch({0.0, 0.0, 1.0});
    const Vec3 out = apply_channel(ch, zplus).bloch();
    CHECK(out.z() == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

    auto rng = fixed_rng(12);
    for (int i = 0; i < 5; ++i) {
        const DensityMatrix rho = random_qubit_state(rng);
        const CMatrix quad = gaussian_channel_quadrature(2.0, rho.mat());
        CHECK(max_abs_diff(apply_channel(ch, rho).mat(), quad) < 1e-8);
    }
}

TEST_CASE("gaussian channel rejects negative strength") {
    CHECK_THROWS_AS(gaussian_povm_channel(-0.1), ValidationError);
    CHECK_THROWS_AS(gaussian_povm_channel(std::numeric_limits<double>::infinity()), ValidationError);
}

TEST_CASE("projective channel at phi = pi/2 dephases in the energy basis") {
    const Channel ch = projective_channel(kPi / 2);
    const DensityMatrix rho = DensityMatrix::from_bloch({0.3, 0.4, 0.2});
    const Vec3 out = apply_channel(ch, rho).bloch();
    CHECK((out - Vec3(0.0, 0.0, 0.2)).norm() < 1e-14);
}

TEST_CASE("projective channel at phi = 0 coincides with the strong gaussian limit") {
    const Channel a = projective_channel(0.0);
    const Channel b = gaussian_povm_channel(200.0);
    auto rng = fixed_rng(13);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix rho = random_qubit_state(rng);
        CHECK(max_abs_diff(apply_channel(a, rho).mat(), apply_channel(b, rho).mat()) < 1e-12);
    }
}

TEST_CASE("projective channel is idempotent") {
    auto rng = fixed_rng(14);
    std::uniform_real_distribution<double> angle(0.0, kPi / 2);
    for (int i = 0; i < 100; ++i) {
        const Channel ch = projective_channel(angle(rng));
        const DensityMatrix rho = random_qubit_state(rng);
        const DensityMatrix once = apply_channel(ch, rho);
        CHECK(max_abs_diff(apply_channel(ch, once).mat(), once.mat()) < 1e-12);
    }
}

TEST_CASE("partial swap block structure and special angles") {
    CHECK(max_abs_diff(build_unitary({UnitaryKind::PartialSwap, 0.0}).mat,
                       CMatrix::Identity(4, 4)) == 0.0);

    // perfect swap maps |z+z-> to i |z-z+>
    const CMatrix u = build_unitary({UnitaryKind::PartialSwap, kPi / 2}).mat;
    CMatrix want = CMatrix::Zero(4, 1);
    want(2, 0) = Complex(0.0, 1.0);
    CHECK(max_abs_diff(u.col(1), want) < 1e-15);

    const CMatrix aug0 = build_unitary({UnitaryKind::AugmentedSwap, 0.0}).mat;
    const CMatrix had = tensor(hadamard(BasisLabel::A), identity(2, BasisLabel::B)).mat;
    CHECK(max_abs_diff(aug0, had) == 0.0);
}

TEST_CASE("closed-form partial swap matches the matrix exponential") {
    CMatrix gen = CMatrix::Zero(4, 4);
    gen(1, 2) = gen(2, 1) = 1.0;  // s+_A s-_B + s-_A s+_B
    for (int i = 0; i <= 16; ++i) {
        const double theta = kPi * i / 16.0;
        const CMatrix direct = build_unitary({UnitaryKind::PartialSwap, theta}).mat;
        const CMatrix expm = (Complex(0.0, theta) * gen).exp();
        CHECK(max_abs_diff(direct, expm) < 1e-12);
    }
}

TEST_CASE("unitarity across the theta sweep") {
    for (int i = 0; i <= 16; ++i) {
        const double theta = kPi * i / 16.0;
        for (UnitaryKind kind : {UnitaryKind::PartialSwap, UnitaryKind::AugmentedSwap}) {
            const CMatrix u = build_unitary({kind, theta}).mat;
            CHECK(max_abs_diff(u.adjoint() * u, CMatrix::Identity(4, 4)) < 1e-12);
        }
    }
}

TEST_CASE("channels are certified CPTP, unital, and Bloch-consistent") {
    for (double bM : {0.0, 0.5, 2.0, 10.0, 200.0}) {
        const Channel ch = gaussian_povm_channel(bM);
        check_cptp(ch);
        CHECK(ch.unital);
        CHECK(max_abs_diff(ch.apply(identity(2, BasisLabel::A)).mat, CMatrix::Identity(2, 2)) < 1e-12);
        check_bloch_consistency(ch);
    }
    for (int i = 0; i <= 8; ++i) {
        const Channel ch = projective_channel(kPi / 2 * i / 8.0);
        check_cptp(ch);
        CHECK(max_abs_diff(ch.apply(identity(2, BasisLabel::A)).mat, CMatrix::Identity(2, 2)) < 1e-12);
        check_bloch_consistency(ch);
    }
}

TEST_CASE("measurement pumps energy away from the commuting point") {
    const Operator h = hamiltonian(2.0, BasisLabel::A);
    for (double bM : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const Operator img = gaussian_povm_channel(bM).apply(h);
        CHECK(max_abs_diff(img.mat, h.mat) > 1e-8);
    }
    for (int i = 0; i < 8; ++i) {  // phi strictly below pi/2
        const double phi = kPi / 2 * i / 8.0;
        const Operator img = projective_channel(phi).apply(h);
        CHECK(max_abs_diff(img.mat, h.mat) > 1e-8);
    }
    // the commuting cases leave it invariant
    CHECK(max_abs_diff(projective_channel(kPi / 2).apply(h).mat, h.mat) < 1e-15);
    CHECK(max_abs_diff(gaussian_povm_channel(0.0).apply(h).mat, h.mat) < 1e-15);
}

TEST_CASE("channel application rejects mismatched dimensions") {
    const Channel ch = projective_channel(0.3);
    CHECK_THROWS_AS(ch.apply(identity(4, BasisLabel::AB)), DimensionError);
}

TEST_CASE("unital channels fix the maximally mixed state") {
    const DensityMatrix mixed = DensityMatrix::from_bloch(Vec3::Zero());
    for (double bM : {0.3, 3.0}) {
        CHECK(max_abs_diff(apply_channel(gaussian_povm_channel(bM), mixed).mat(), mixed.mat()) < 1e-12);
    }
    CHECK(max_abs_diff(apply_channel(projective_channel(0.9), mixed).mat(), mixed.mat()) < 1e-12);
}
