#include "doctest.h"

#include "test_support.hpp"
#include "tsm/engine.hpp"

using namespace tsm;
using namespace tsm::test;

namespace {

CycleSpec spec_of(MeasurementKind mk, UnitaryKind uk, double theta, double mparam,
                  double beta = 1.0, double omega_A = 2.0) {
    CycleSpec s;
    s.omega_A = omega_A;
    s.beta = beta;
    s.unitary = {uk, theta};
    s.measurement = {mk, mparam};
    return s;
}

DensityMatrix iterate_map(DensityMatrix rho, const CycleSpec& spec, int n) {
    for (int i = 0; i < n; ++i) {
        rho = unmonitored_cycle_map(rho, spec);
    }
    return rho;
}

}  // namespace

TEST_CASE("commuting cycle leaves diagonal states unchanged") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, 0.0, kPi / 2);
    auto rng = fixed_rng(20);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i) {
        const double p = u(rng);
        const DensityMatrix rho = DensityMatrix::from_bloch({0.0, 0.0, 2 * p - 1});
        CHECK(max_abs_diff(unmonitored_cycle_map(rho, spec).mat(), rho.mat()) < 1e-14);
    }
}

TEST_CASE("perfect swap without measurement hands A the thermal populations") {
    const CycleSpec spec = spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, kPi / 2, 0.0);
    auto rng = fixed_rng(21);
    for (int i = 0; i < 10; ++i) {
        const DensityMatrix out = unmonitored_cycle_map(random_qubit_state(rng), spec);
        CHECK(out.excited_population() == doctest::Approx(kPBeta1).epsilon(1e-13));
    }
}

TEST_CASE("cycle map is linear in the state") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::AugmentedSwap, 1.1, 0.5);
    auto rng = fixed_rng(22);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const DensityMatrix r1 = random_qubit_state(rng);
        const DensityMatrix r2 = random_qubit_state(rng);
        const double a = u(rng);
        const DensityMatrix mix{
            Operator{a * r1.mat() + (1.0 - a) * r2.mat(), BasisLabel::A}};
        const CMatrix lhs = unmonitored_cycle_map(mix, spec).mat();
        const CMatrix rhs = a * unmonitored_cycle_map(r1, spec).mat() +
                            (1.0 - a) * unmonitored_cycle_map(r2, spec).mat();
        CHECK(max_abs_diff(lhs, rhs) < 1e-12);
    }
}

TEST_CASE("unmonitored invariant: gaussian POVM closed-form point") {
    const CycleSpec spec = spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, kPi / 2, 2.0);
    const InvariantStateResult res = unmonitored_invariant(spec);
    CHECK(res.unique);
    CHECK(res.residual < 1e-10);
    CHECK(res.state.excited_population() == doctest::Approx(kGaussPM).epsilon(1e-12));
    CHECK(std::abs(res.state.real_coherence()) < 1e-14);
    CHECK(std::abs(res.state.mat()(0, 1).imag()) < 1e-14);

    // map-iteration oracle
    const DensityMatrix iterated = iterate_map(DensityMatrix::from_bloch(Vec3::Zero()), spec, 200);
    CHECK(max_abs_diff(iterated.mat(), res.state.mat()) < 1e-10);
}

TEST_CASE("unmonitored invariant: projective swap carries real coherence") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, kPi / 4, kPi / 4);
    const InvariantStateResult res = unmonitored_invariant(spec);
    CHECK(res.unique);
    CHECK(res.state.excited_population() == doctest::Approx(kProjPUm).epsilon(1e-12));
    CHECK(res.state.real_coherence() == doctest::Approx(kProjCR).epsilon(1e-12));
    CHECK(std::abs(res.state.mat()(0, 1).imag()) < 1e-13);

    const DensityMatrix iterated = iterate_map(DensityMatrix::from_bloch({0.9, 0.0, 0.1}), spec, 200);
    CHECK(max_abs_diff(iterated.mat(), res.state.mat()) < 1e-10);
}

TEST_CASE("unmonitored invariant: commuting measurement keeps the bath equilibrium") {
    for (double theta : {0.4, 1.2, 2.2}) {
        const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, theta, kPi / 2);
        const InvariantStateResult res = unmonitored_invariant(spec);
        CHECK(res.state.excited_population() == doctest::Approx(kPBeta1).epsilon(1e-12));
        CHECK(std::abs(res.state.real_coherence()) < 1e-13);
    }
}

TEST_CASE("fixed point satisfies its defining equation") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::AugmentedSwap, 2.0, 0.7);
    const InvariantStateResult res = unmonitored_invariant(spec);
    const DensityMatrix image = unmonitored_cycle_map(res.state, spec);
    CHECK(max_abs_diff(image.mat(), res.state.mat()) < 1e-10);
}

TEST_CASE("transition matrix: commuting corner gives the identity") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, 0.0, kPi / 2);
    const TransitionMatrix tm = monitored_transition_matrix(spec);
    CHECK(max_abs_diff(CMatrix(tm.t.cast<Complex>()), CMatrix::Identity(2, 2)) < 1e-14);
    CHECK_FALSE(monitored_invariant(spec).unique);
}

TEST_CASE("transition matrix: x measurement randomizes the populations") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, 0.0, 0.0);
    const TransitionMatrix tm = monitored_transition_matrix(spec);
    Eigen::Matrix2d want;
    want << 0.5, 0.5, 0.5, 0.5;
    CHECK((tm.t - want).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("transition matrix columns are stochastic") {
    auto rng = fixed_rng(23);
    std::uniform_real_distribution<double> angle(0.0, kPi);
    for (int i = 0; i < 40; ++i) {
        const bool gauss = i % 2 == 0;
        const CycleSpec spec =
            spec_of(gauss ? MeasurementKind::GaussianPOVM : MeasurementKind::Projective,
                    i % 3 == 0 ? UnitaryKind::AugmentedSwap : UnitaryKind::PartialSwap, angle(rng),
                    gauss ? 5.0 * angle(rng) / kPi : angle(rng) / 2.0);
        const TransitionMatrix tm = monitored_transition_matrix(spec);
        for (int c = 0; c < 2; ++c) {
            CHECK(tm.t.col(c).sum() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(tm.t.col(c).minCoeff() >= 0.0);
            CHECK(tm.t.col(c).maxCoeff() <= 1.0);
        }
    }
}

TEST_CASE("monitored invariant: projective swap point and full-randomization case") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, kPi / 4, kPi / 4);
    const InvariantStateResult res = monitored_invariant(spec);
    CHECK(res.unique);
    CHECK(res.residual < 1e-10);
    CHECK(res.state.excited_population() == doctest::Approx(kProjPM).epsilon(1e-12));
    CHECK(res.state.real_coherence() == 0.0);  // diagonal by construction

    for (double theta : {0.3, 1.0, 2.5}) {
        const CycleSpec sp = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, theta, 0.0);
        CHECK(monitored_invariant(sp).state.excited_population() == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("gaussian POVM: monitored and unmonitored invariants coincide") {
    for (double theta : {0.5, 1.2, 2.7}) {
        for (double bM : {0.0, 1.0, 6.0}) {
            const CycleSpec spec =
                spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, theta, bM);
            const DensityMatrix um = unmonitored_invariant(spec).state;
            const DensityMatrix m = monitored_invariant(spec).state;
            CHECK(max_abs_diff(um.mat(), m.mat()) < 1e-10);
        }
    }
}

TEST_CASE("measurement acts as a hot bath: p_M >= p_beta on the grid") {
    for (int ti = 1; ti < 12; ++ti) {
        const double theta = kPi * ti / 12.0;
        for (double bM : {0.0, 0.5, 2.0, 10.0}) {
            const CycleSpec spec =
                spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, theta, bM);
            CHECK(unmonitored_invariant(spec).state.excited_population() >= kPBeta1 - 1e-12);
            CHECK(monitored_invariant(spec).state.excited_population() >= kPBeta1 - 1e-12);
        }
        for (int pi_ = 0; pi_ <= 8; ++pi_) {
            const double phi = kPi / 2 * pi_ / 8.0;
            const CycleSpec spec =
                spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, theta, phi);
            CHECK(unmonitored_invariant(spec).state.excited_population() >= kPBeta1 - 1e-12);
            CHECK(monitored_invariant(spec).state.excited_population() >= kPBeta1 - 1e-12);
        }
    }
}

TEST_CASE("projective swap: populations coincide at theta = pi/2") {
    for (int pi_ = 0; pi_ <= 8; ++pi_) {
        const double phi = kPi / 2 * pi_ / 8.0;
        const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, kPi / 2, phi);
        const double p_um = unmonitored_invariant(spec).state.excited_population();
        const double p_m = monitored_invariant(spec).state.excited_population();
        CHECK(std::abs(p_um - p_m) < 1e-10);
    }
}

TEST_CASE("degenerate corners are flagged, not guessed") {
    const CycleSpec spec = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, 0.0, kPi / 2);
    const InvariantStateResult um = unmonitored_invariant(spec);
    CHECK_FALSE(um.unique);
    // minimum-norm representative is the maximally mixed state
    CHECK(um.state.bloch().norm() < 1e-12);

    const CycleSpec gauss0 = spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, 0.0, 0.0);
    CHECK_FALSE(unmonitored_invariant(gauss0).unique);
    CHECK_FALSE(monitored_invariant(gauss0).unique);
}

TEST_CASE("cycle spec validation") {
    CycleSpec bad = spec_of(MeasurementKind::Projective, UnitaryKind::PartialSwap, 1.0, 1.0);
    bad.omega_A = -1.0;
    CHECK_THROWS_AS(bad.validate(), ValidationError);
    CycleSpec bad2 = spec_of(MeasurementKind::GaussianPOVM, UnitaryKind::PartialSwap, 1.0, -2.0);
    CHECK_THROWS_AS(bad2.validate(), ValidationError);
}
