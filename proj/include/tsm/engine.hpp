#pragma once

#include "tsm/channels.hpp"
#include "tsm/qops.hpp"

namespace tsm {

enum class MeasurementKind { GaussianPOVM, Projective };

struct MeasurementSpec {
    MeasurementKind kind;
    double param;  // beta_M for GaussianPOVM, phi for Projective

    static MeasurementSpec gaussian(double beta_M) { return {MeasurementKind::GaussianPOVM, beta_M}; }
    static MeasurementSpec projective(double phi) { return {MeasurementKind::Projective, phi}; }
};

// Full engine configuration. omega_B is the energy unit and defaults to 1.
struct CycleSpec {
    double omega_A;
    double omega_B = 1.0;
    double beta;
    UnitarySpec unitary;
    MeasurementSpec measurement;

    void validate() const;
    Channel measurement_channel() const;
    Operator unitary_op() const { return build_unitary(unitary); }
    DensityMatrix thermal_B() const { return thermal_state({omega_B, beta}); }
};

// t(l, m) = probability that A ends the cycle in level l given start in m.
// Column-stochastic: each column sums to 1.
struct TransitionMatrix {
    Eigen::Matrix2d t;
};

struct InvariantStateResult {
    DensityMatrix state;
    bool unique;      // false when the fixed point is degenerate
    double residual;  // distance between state and its image under the map
};

// One unmonitored cycle: Phi_M(Tr_B(U rho⊗rho_B0 U^dag)).
DensityMatrix unmonitored_cycle_map(const DensityMatrix& rho_A, const CycleSpec& spec);

// Affine Bloch form r -> M r + v of the unmonitored cycle map.
BlochAffine cycle_bloch_affine(const CycleSpec& spec);

// Fixed point of the unmonitored map by direct linear solve of (I - M) r = v.
// Degenerate maps (smallest singular value of I - M below 1e-10) are flagged
// unique = false and the minimum-norm solution is returned.
InvariantStateResult unmonitored_invariant(const CycleSpec& spec);

TransitionMatrix monitored_transition_matrix(const CycleSpec& spec);

// Stationary populations of the transition matrix, as a diagonal state.
// Flagged unique = false when the spectral gap is below 1e-10.
InvariantStateResult monitored_invariant(const CycleSpec& spec);

}  // namespace tsm
