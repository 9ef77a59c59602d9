#include "tsm/qops.hpp"

#include <cmath>

namespace tsm {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kEigTol = 1e-10;

int expected_dim(BasisLabel b) { return b == BasisLabel::AB ? 4 : 2; }

}  // namespace

Operator::Operator(CMatrix m, BasisLabel b) : mat(std::move(m)), basis(b) {
    if (mat.rows() != mat.cols()) {
        throw DimensionError("operator matrix must be square");
    }
    if (dim() != expected_dim(basis)) {
        throw DimensionError("operator dimension does not match basis label");
    }
}

void ThermalParams::validate() const {
    if (!(omega > 0.0)) {
        throw ValidationError("thermal omega must be positive");
    }
    if (!(beta >= 0.0)) {
        throw ValidationError("thermal beta must be nonnegative");
    }
}

DensityMatrix::DensityMatrix(Operator op) : op_(std::move(op)) {
    const CMatrix& m = op_.mat;
    if (std::abs(m.trace() - Complex(1.0, 0.0)) > kTraceTol) {
        throw ValidationError("density matrix trace differs from 1");
    }
    if (max_abs_diff(m, m.adjoint()) > kHermTol) {
        throw ValidationError("density matrix is not hermitian");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
    if (es.eigenvalues().minCoeff() < -kEigTol) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

Vec3 DensityMatrix::bloch() const {
    if (dim() != 2) {
        throw DimensionError("bloch vector requires dimension 2");
    }
    const CMatrix& m = op_.mat;
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

DensityMatrix DensityMatrix::from_bloch(const Vec3& r, BasisLabel basis) {
    CMatrix m(2, 2);
    m(0, 0) = Complex(0.5 * (1.0 + r.z()), 0.0);
    m(1, 1) = Complex(0.5 * (1.0 - r.z()), 0.0);
    m(0, 1) = Complex(0.5 * r.x(), -0.5 * r.y());
    m(1, 0) = std::conj(m(0, 1));
    return DensityMatrix({std::move(m), basis});
}

double DensityMatrix::excited_population() const {
    return op_.mat(0, 0).real();
}

double DensityMatrix::real_coherence() const {
    if (dim() != 2) {
        throw DimensionError("real coherence requires dimension 2");
    }
    return op_.mat(0, 1).real();
}

DensityMatrix DensityMatrix::dephased() const {
    CMatrix d = op_.mat.diagonal().asDiagonal();
    return DensityMatrix({std::move(d), op_.basis});
}

Operator identity(int dim, BasisLabel basis) {
    return {CMatrix::Identity(dim, dim), basis};
}

Operator pauli_x(BasisLabel basis) {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return {std::move(m), basis};
}

Operator pauli_y(BasisLabel basis) {
    CMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return {std::move(m), basis};
}

Operator pauli_z(BasisLabel basis) {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return {std::move(m), basis};
}

Operator sigma_plus(BasisLabel basis) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return {std::move(m), basis};
}

Operator sigma_minus(BasisLabel basis) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return {std::move(m), basis};
}

Operator hadamard(BasisLabel basis) {
    const double s = 1.0 / std::sqrt(2.0);
    CMatrix m(2, 2);
    m << s, s, s, -s;
    return {std::move(m), basis};
}

Operator hamiltonian(double omega, BasisLabel basis) {
    CMatrix m(2, 2);
    m << 0.5 * omega, 0, 0, -0.5 * omega;
    return {std::move(m), basis};
}

Operator proj_z(int level, BasisLabel basis) {
    CMatrix m = CMatrix::Zero(2, 2);
    m(level, level) = 1.0;
    return {std::move(m), basis};
}

Operator proj_axis(double phi, int sign, BasisLabel basis) {
    // (I + sign * sigma_n)/2 with n = cos(phi) e_x + sin(phi) e_z
    const double s = sign >= 0 ? 1.0 : -1.0;
    CMatrix m(2, 2);
    m(0, 0) = 0.5 * (1.0 + s * std::sin(phi));
    m(1, 1) = 0.5 * (1.0 - s * std::sin(phi));
    m(0, 1) = 0.5 * s * std::cos(phi);
    m(1, 0) = m(0, 1);
    return {std::move(m), basis};
}

double energy_level(double omega, int level) {
    return level == 0 ? 0.5 * omega : -0.5 * omega;
}

Operator tensor(const Operator& a, const Operator& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw DimensionError("tensor requires two dimension-2 operators");
    }
    if (a.basis != BasisLabel::A || b.basis != BasisLabel::B) {
        throw DimensionError("tensor requires factor labels A and B");
    }
    CMatrix m(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m.block<2, 2>(2 * i, 2 * j) = a.mat(i, j) * b.mat;
        }
    }
    return {std::move(m), BasisLabel::AB};
}

Operator partial_trace_B(const Operator& joint) {
    if (joint.dim() != 4 || joint.basis != BasisLabel::AB) {
        throw DimensionError("partial trace requires a joint AB operator");
    }
    CMatrix m(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m(i, j) = joint.mat(2 * i, 2 * j) + joint.mat(2 * i + 1, 2 * j + 1);
        }
    }
    return {std::move(m), BasisLabel::A};
}

DensityMatrix partial_trace_B(const DensityMatrix& rho) {
    return DensityMatrix(partial_trace_B(rho.op()));
}

DensityMatrix thermal_state(const ThermalParams& p, BasisLabel basis) {
    p.validate();
    // excited population 1/(1 + e^{beta omega}); beta = +inf gives the ground state
    const double pe = 1.0 / (1.0 + std::exp(p.beta * p.omega));
    CMatrix m = CMatrix::Zero(2, 2);
    m(0, 0) = pe;
    m(1, 1) = 1.0 - pe;
    return DensityMatrix({std::move(m), basis});
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace tsm
