#pragma once

#include <optional>
#include <vector>

#include "tsm/qops.hpp"

namespace tsm {

struct KrausTerm {
    double weight;  // nonnegative mixture weight
    Operator k;
};

// Affine action on the Bloch ball: r -> linear * r + offset.
struct BlochAffine {
    Eigen::Matrix3d linear;
    Vec3 offset;
};

// CPTP map in Kraus-mixture form, Phi(rho) = sum_i weight_i K_i rho K_i^dag,
// with an affine Bloch representation for dimension 2.
struct Channel {
    std::vector<KrausTerm> kraus;
    std::optional<BlochAffine> bloch;
    bool unital = false;

    int dim() const { return kraus.front().k.dim(); }
    Operator apply(const Operator& x) const;
};

enum class UnitaryKind { PartialSwap, AugmentedSwap };

struct UnitarySpec {
    UnitaryKind kind;
    double theta;  // radians
};

// Weak sigma_x measurement of qubit A via a continuous-outcome gaussian POVM,
// reduced to closed form: x-basis off-diagonals are damped by exp(-beta_M/2).
Channel gaussian_povm_channel(double beta_M);

// Projective spin measurement along n = cos(phi) e_x + sin(phi) e_z.
Channel projective_channel(double phi);

// PartialSwap: exp(i theta [s+_A s-_B + s-_A s+_B]), built from the exact
// 2x2 block closed form. AugmentedSwap: PartialSwap(theta) * (Hadamard ⊗ I).
Operator build_unitary(const UnitarySpec& spec);

DensityMatrix apply_channel(const Channel& ch, const DensityMatrix& rho);

// Choi matrix sum_ij |i><j| ⊗ Phi(|i><j|); positive semidefinite iff CP.
CMatrix choi_matrix(const Channel& ch);

}  // namespace tsm
