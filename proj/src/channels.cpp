#include "tsm/channels.hpp"

#include <cmath>

namespace tsm {

Operator Channel::apply(const Operator& x) const {
    if (x.dim() != dim()) {
        throw DimensionError("channel/operator dimension mismatch");
    }
    CMatrix out = CMatrix::Zero(x.dim(), x.dim());
    for (const KrausTerm& t : kraus) {
        out += t.weight * (t.k.mat * x.mat * t.k.mat.adjoint());
    }
    return {std::move(out), x.basis};
}

Channel gaussian_povm_channel(double beta_M) {
    if (!(beta_M >= 0.0) || !std::isfinite(beta_M)) {
        throw ValidationError("gaussian POVM strength beta_M must be nonnegative and finite");
    }
    // Integrating the gaussian POVM leaves the x-basis blocks intact and
    // multiplies x-basis off-diagonals by the overlap exp(-beta_M/2), which is
    // the mixture ((1+g)/2) rho + ((1-g)/2) sx rho sx.
    const double g = std::exp(-0.5 * beta_M);
    Channel ch;
    ch.kraus = {{0.5 * (1.0 + g), identity(2, BasisLabel::A)},
                {0.5 * (1.0 - g), pauli_x(BasisLabel::A)}};
    BlochAffine aff;
    aff.linear = Eigen::Vector3d(1.0, g, g).asDiagonal();
    aff.offset = Vec3::Zero();
    ch.bloch = aff;
    ch.unital = true;
    return ch;
}

Channel projective_channel(double phi) {
    Channel ch;
    ch.kraus = {{1.0, proj_axis(phi, +1, BasisLabel::A)},
                {1.0, proj_axis(phi, -1, BasisLabel::A)}};
    const Vec3 n(std::cos(phi), 0.0, std::sin(phi));
    BlochAffine aff;
    aff.linear = n * n.transpose();
    aff.offset = Vec3::Zero();
    ch.bloch = aff;
    ch.unital = true;
    return ch;
}

Operator build_unitary(const UnitarySpec& spec) {
    // identity on |z+z+>, |z-z->; [[cos, i sin],[i sin, cos]] on the
    // single-excitation block span{|z+z->, |z-z+>}
    CMatrix u = CMatrix::Identity(4, 4);
    u(1, 1) = u(2, 2) = std::cos(spec.theta);
    u(1, 2) = u(2, 1) = Complex(0.0, std::sin(spec.theta));
    Operator swap{std::move(u), BasisLabel::AB};
    if (spec.kind == UnitaryKind::PartialSwap) {
        return swap;
    }
    const Operator aug = tensor(hadamard(BasisLabel::A), identity(2, BasisLabel::B));
    return {swap.mat * aug.mat, BasisLabel::AB};
}

DensityMatrix apply_channel(const Channel& ch, const DensityMatrix& rho) {
    return DensityMatrix(ch.apply(rho.op()));
}

CMatrix choi_matrix(const Channel& ch) {
    const int d = ch.dim();
    CMatrix choi = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            CMatrix eij = CMatrix::Zero(d, d);
            eij(i, j) = 1.0;
            CMatrix img = CMatrix::Zero(d, d);
            for (const KrausTerm& t : ch.kraus) {
                img += t.weight * (t.k.mat * eij * t.k.mat.adjoint());
            }
            choi.block(i * d, j * d, d, d) = img;
        }
    }
    return choi;
}

}  // namespace tsm
