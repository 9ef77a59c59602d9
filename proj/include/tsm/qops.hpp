#pragma once

#include <complex>

#include <Eigen/Dense>

#include "tsm/errors.hpp"

namespace tsm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using Vec3 = Eigen::Vector3d;

// Tensor factor an operator lives on. Joint operators are ordered
// |z+z+>, |z+z->, |z-z+>, |z-z-> with the excited state |z+> first,
// i.e. joint index = 2*a + b.
enum class BasisLabel { A, B, AB };

// Dense complex matrix over a labeled basis. Only dimensions 2 (single qubit)
// and 4 (joint A⊗B) occur in this artifact.
struct Operator {
    CMatrix mat;
    BasisLabel basis;

    Operator(CMatrix m, BasisLabel b);

    int dim() const { return static_cast<int>(mat.rows()); }
    Operator adjoint() const { return {mat.adjoint(), basis}; }
    Complex trace() const { return mat.trace(); }
};

// Energies are expressed in units of omega_B (omega_B = 1 internally),
// hbar = k_B = 1.
struct ThermalParams {
    double omega;  // energy gap, > 0
    double beta;   // inverse temperature, >= 0 (+inf allowed)

    void validate() const;
};

// Unit-trace positive-semidefinite operator. Validated on construction:
// trace within 1e-12 of 1, hermitian within 1e-12, eigenvalues >= -1e-10.
class DensityMatrix {
public:
    explicit DensityMatrix(Operator op);

    const Operator& op() const { return op_; }
    const CMatrix& mat() const { return op_.mat; }
    BasisLabel basis() const { return op_.basis; }
    int dim() const { return op_.dim(); }

    // Bloch view, dimension 2 only: rho = (I + r.sigma)/2.
    Vec3 bloch() const;
    static DensityMatrix from_bloch(const Vec3& r, BasisLabel basis = BasisLabel::A);

    // Population of the excited level |z+> (dimension 2).
    double excited_population() const;
    // Real part of the energy-basis coherence <z+|rho|z->.
    double real_coherence() const;

    // Diagonal part in the energy basis (the TMA-dephased state).
    DensityMatrix dephased() const;

private:
    Operator op_;
};

// Pauli and ladder operators, projectors, Hadamard, Hamiltonians.
Operator identity(int dim, BasisLabel basis);
Operator pauli_x(BasisLabel basis);
Operator pauli_y(BasisLabel basis);
Operator pauli_z(BasisLabel basis);
Operator sigma_plus(BasisLabel basis);   // |z+><z-|
Operator sigma_minus(BasisLabel basis);  // |z-><z+|
Operator hadamard(BasisLabel basis);
Operator hamiltonian(double omega, BasisLabel basis);  // (omega/2) sigma_z
// Energy projector onto level 0 (excited) or 1 (ground).
Operator proj_z(int level, BasisLabel basis);
// Eigenprojector of sigma_x cos(phi) + sigma_z sin(phi), sign = +1 or -1.
Operator proj_axis(double phi, int sign, BasisLabel basis);

double energy_level(double omega, int level);  // +omega/2 (excited) or -omega/2

Operator tensor(const Operator& a, const Operator& b);
Operator partial_trace_B(const Operator& joint);
DensityMatrix partial_trace_B(const DensityMatrix& rho);
DensityMatrix thermal_state(const ThermalParams& p, BasisLabel basis = BasisLabel::B);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace tsm
