#pragma once

#include "tsm/engine.hpp"

namespace tsm {

// The three analytically solved cycle families.
enum class Scenario { GaussSwap, ProjSwap, ProjAugmented };

struct ScenarioParams {
    Scenario scenario;
    double theta = 0.0;
    double phi = 0.0;     // ProjSwap / ProjAugmented
    double beta_M = 0.0;  // GaussSwap
    double beta = 1.0;
    double omega_A = 2.0;
    double omega_B = 1.0;

    CycleSpec to_cycle_spec() const;
};

struct OraclePopulations {
    double p_um;  // unmonitored excited population
    double c_R;   // unmonitored real energy-basis coherence
    double p_m;   // monitored excited population
};

enum class WorkKind { UnmonitoredTMA, MonitoredTMA, Coherent };

double oracle_p_beta(double beta, double omega_B = 1.0);

// Closed-form invariant-state populations/coherence. Throws SingularPointError
// at vanishing denominators (e.g. ProjAugmented at theta = 0, phi = pi/4);
// callers should use the numeric fixed-point path there.
OraclePopulations oracle_populations(const ScenarioParams& p);

// Closed-form average work for the requested diagnostic convention. Coherent
// for the swap scenarios equals the TMA value (the partial swap does not
// couple populations and coherences).
double oracle_work(const ScenarioParams& p, WorkKind which);

// Maximal omega_B/omega_A ratio with positive average work output. Swap
// scenarios: 1 (any omega_A > omega_B operates). ProjAugmented: the
// zero-work root of the closed-form work expression; MonitoredTMA = cos^2(phi).
double oracle_positive_work_bound(const ScenarioParams& p, WorkKind which);

// Work variance of a partial-swap stroke started from diag(p_M, 1-p_M) ⊗ thermal.
double oracle_variance_swap(double p_M, double p_beta, double theta, double omega_gap);

}  // namespace tsm
