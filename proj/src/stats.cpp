#include "tsm/stats.hpp"

#include <algorithm>
#include <cmath>

namespace tsm {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kDropTol = 1e-15;

}  // namespace

WorkDistribution tma_distribution(const DensityMatrix& rho_A0, const CycleSpec& spec) {
    spec.validate();
    if (rho_A0.dim() != 2) {
        throw DimensionError("tma_distribution expects a qubit state for A");
    }
    const Operator u = spec.unitary_op();
    const Eigen::Matrix4d s = u.mat.cwiseAbs2();

    // coherences play no role: the first energy measurement dephases rho_A0
    const double pop_A[2] = {rho_A0.excited_population(), 1.0 - rho_A0.excited_population()};
    const double p_beta = spec.thermal_B().excited_population();
    const double pop_B[2] = {p_beta, 1.0 - p_beta};

    std::vector<WorkAtom> raw;
    raw.reserve(16);
    for (int mA = 0; mA < 2; ++mA) {
        for (int mB = 0; mB < 2; ++mB) {
            const double p_start = pop_A[mA] * pop_B[mB];
            for (int nA = 0; nA < 2; ++nA) {
                for (int nB = 0; nB < 2; ++nB) {
                    const double p = p_start * s(2 * nA + nB, 2 * mA + mB);
                    if (p < kDropTol) {
                        continue;
                    }
                    const double dE_A = energy_level(spec.omega_A, nA) - energy_level(spec.omega_A, mA);
                    const double dE_B = energy_level(spec.omega_B, nB) - energy_level(spec.omega_B, mB);
                    raw.push_back({dE_A + dE_B, dE_A, p});
                }
            }
        }
    }

    std::sort(raw.begin(), raw.end(), [](const WorkAtom& x, const WorkAtom& y) {
        return x.w != y.w ? x.w < y.w : x.dE_A < y.dE_A;
    });
    WorkDistribution dist;
    for (const WorkAtom& a : raw) {
        if (!dist.atoms.empty() && std::abs(dist.atoms.back().w - a.w) <= kMergeTol &&
            std::abs(dist.atoms.back().dE_A - a.dE_A) <= kMergeTol) {
            dist.atoms.back().p += a.p;
        } else {
            dist.atoms.push_back(a);
        }
    }
    return dist;
}

Complex characteristic_fn(const WorkDistribution& dist, double lambda, double mu) {
    Complex chi(0.0, 0.0);
    for (const WorkAtom& a : dist.atoms) {
        chi += a.p * std::exp(Complex(0.0, lambda * a.w + mu * a.dE_A));
    }
    return chi;
}

double moments(const WorkDistribution& dist, int j, int k) {
    if (j < 0 || k < 0) {
        throw ValidationError("moment orders must be nonnegative");
    }
    double acc = 0.0;
    for (const WorkAtom& a : dist.atoms) {
        double term = a.p;
        for (int i = 0; i < j; ++i) term *= a.w;
        for (int i = 0; i < k; ++i) term *= a.dE_A;
        acc += term;
    }
    return acc;
}

EngineMetrics engine_metrics(const WorkDistribution& dist) {
    EngineMetrics m{};
    m.avg_w = moments(dist, 1, 0);
    m.avg_dE_A = moments(dist, 0, 1);
    m.avg_E_M = -m.avg_dE_A;
    m.avg_Q_c = m.avg_dE_A - m.avg_w;
    double var = 0.0;
    for (const WorkAtom& a : dist.atoms) {
        var += a.p * (a.w - m.avg_w) * (a.w - m.avg_w);
    }
    m.var_w = var;
    if (var > 0.0) {
        m.reliability = -m.avg_w / std::sqrt(var) + 0.0;  // +0.0 normalizes -0
    }
    return m;
}

double coherent_work(const DensityMatrix& rho_A0, const CycleSpec& spec) {
    spec.validate();
    const Operator u = spec.unitary_op();
    const Operator rho0 = tensor(rho_A0.op(), spec.thermal_B().op());
    const Operator h_tot{
        tensor(hamiltonian(spec.omega_A, BasisLabel::A), identity(2, BasisLabel::B)).mat +
            tensor(identity(2, BasisLabel::A), hamiltonian(spec.omega_B, BasisLabel::B)).mat,
        BasisLabel::AB};
    const CMatrix evolved = u.mat * rho0.mat * u.mat.adjoint();
    return (h_tot.mat * (evolved - rho0.mat)).trace().real();
}

}  // namespace tsm
