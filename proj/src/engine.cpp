#include "tsm/engine.hpp"

#include <cmath>

namespace tsm {

namespace {

constexpr double kDegenerateTol = 1e-10;

}  // namespace

void CycleSpec::validate() const {
    if (!(omega_A > 0.0) || !(omega_B > 0.0)) {
        throw ValidationError("cycle omegas must be positive");
    }
    if (!(beta >= 0.0)) {
        throw ValidationError("cycle beta must be nonnegative");
    }
    if (measurement.kind == MeasurementKind::GaussianPOVM && !(measurement.param >= 0.0)) {
        throw ValidationError("gaussian measurement strength must be nonnegative");
    }
}

Channel CycleSpec::measurement_channel() const {
    return measurement.kind == MeasurementKind::GaussianPOVM
               ? gaussian_povm_channel(measurement.param)
               : projective_channel(measurement.param);
}

DensityMatrix unmonitored_cycle_map(const DensityMatrix& rho_A, const CycleSpec& spec) {
    spec.validate();
    const Operator u = spec.unitary_op();
    const Operator joint = tensor(rho_A.op(), spec.thermal_B().op());
    const Operator evolved{u.mat * joint.mat * u.mat.adjoint(), BasisLabel::AB};
    const Operator reduced = partial_trace_B(evolved);
    return apply_channel(spec.measurement_channel(), DensityMatrix(reduced));
}

BlochAffine cycle_bloch_affine(const CycleSpec& spec) {
    BlochAffine aff;
    aff.offset = unmonitored_cycle_map(DensityMatrix::from_bloch(Vec3::Zero()), spec).bloch();
    for (int i = 0; i < 3; ++i) {
        Vec3 e = Vec3::Zero();
        e(i) = 1.0;
        aff.linear.col(i) = unmonitored_cycle_map(DensityMatrix::from_bloch(e), spec).bloch() - aff.offset;
    }
    return aff;
}

InvariantStateResult unmonitored_invariant(const CycleSpec& spec) {
    const BlochAffine aff = cycle_bloch_affine(spec);
    const Eigen::Matrix3d A = Eigen::Matrix3d::Identity() - aff.linear;
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const bool unique = svd.singularValues().minCoeff() > kDegenerateTol;
    Vec3 r;
    if (unique) {
        r = A.partialPivLu().solve(aff.offset);
    } else {
        // minimum-norm representative of the solution family
        svd.setThreshold(kDegenerateTol);
        r = svd.solve(aff.offset);
    }
    DensityMatrix state = DensityMatrix::from_bloch(r);
    const double residual = max_abs_diff(unmonitored_cycle_map(state, spec).mat(), state.mat());
    return {std::move(state), unique, residual};
}

TransitionMatrix monitored_transition_matrix(const CycleSpec& spec) {
    spec.validate();
    const Channel meas = spec.measurement_channel();
    const Operator u = spec.unitary_op();
    const double p_beta = spec.thermal_B().excited_population();
    const double pop_B[2] = {p_beta, 1.0 - p_beta};

    // q(l, n) = Tr[Pi_l Phi_M(Pi_n)]
    Eigen::Matrix2d q;
    for (int n = 0; n < 2; ++n) {
        const Operator img = meas.apply(proj_z(n, BasisLabel::A));
        for (int l = 0; l < 2; ++l) {
            q(l, n) = img.mat(l, l).real();
        }
    }
    // joint energy-basis transition probabilities |<n|U|m>|^2
    const Eigen::Matrix4d s = u.mat.cwiseAbs2();

    TransitionMatrix out;
    for (int l = 0; l < 2; ++l) {
        for (int mA = 0; mA < 2; ++mA) {
            double acc = 0.0;
            for (int nA = 0; nA < 2; ++nA) {
                double reach = 0.0;
                for (int nB = 0; nB < 2; ++nB) {
                    for (int mB = 0; mB < 2; ++mB) {
                        reach += s(2 * nA + nB, 2 * mA + mB) * pop_B[mB];
                    }
                }
                acc += q(l, nA) * reach;
            }
            out.t(l, mA) = acc;
        }
    }
    return out;
}

InvariantStateResult monitored_invariant(const CycleSpec& spec) {
    const TransitionMatrix tm = monitored_transition_matrix(spec);
    const double a = tm.t(1, 0);  // leave excited
    const double b = tm.t(0, 1);  // enter excited
    // eigenvalues of a 2x2 column-stochastic matrix are 1 and 1-a-b
    const bool unique = (a + b) > kDegenerateTol;
    const double p = unique ? b / (a + b) : 0.5;

    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = 1.0 - p;
    DensityMatrix state{Operator{std::move(m), BasisLabel::A}};

    const Eigen::Vector2d pop(p, 1.0 - p);
    const double residual = (tm.t * pop - pop).cwiseAbs().maxCoeff();
    return {std::move(state), unique, residual};
}

}  // namespace tsm
