#pragma once

#include <optional>
#include <vector>

#include "tsm/engine.hpp"

namespace tsm {

struct WorkAtom {
    double w;     // work input by the unitary
    double dE_A;  // energy change of sub-system A
    double p;
};

// Finite joint distribution p(w, dE_A) from exhaustive enumeration of the
// two-projective-measurement outcomes. Atoms with identical (w, dE_A) keys
// (within 1e-12) are merged.
struct WorkDistribution {
    std::vector<WorkAtom> atoms;
};

struct EngineMetrics {
    double avg_w;
    double avg_dE_A;
    double avg_E_M;   // energy input by the measurement, = -avg_dE_A
    double avg_Q_c;   // heat exchanged with the cold bath, = avg_dE_A - avg_w
    double var_w;
    std::optional<double> reliability;  // -avg_w / sqrt(var_w); empty at var_w = 0

    double work_output() const { return -avg_w; }
};

// TMA statistics of one unitary stroke started from rho_A0 ⊗ thermal_B.
// Coherences of rho_A0 play no role (the enumeration uses the dephased state).
WorkDistribution tma_distribution(const DensityMatrix& rho_A0, const CycleSpec& spec);

// chi(lambda, mu) = sum_atoms p exp(i(lambda w + mu dE_A))
Complex characteristic_fn(const WorkDistribution& dist, double lambda, double mu);

// <w^j dE_A^k>
double moments(const WorkDistribution& dist, int j, int k);

EngineMetrics engine_metrics(const WorkDistribution& dist);

// Average total-energy change over the unitary stroke, Tr[(H_A+H_B)(U rho0 U^dag - rho0)]
// with rho0 = rho_A0 ⊗ rho_B0 keeping coherences.
double coherent_work(const DensityMatrix& rho_A0, const CycleSpec& spec);

}  // namespace tsm
