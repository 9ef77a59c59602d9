#include "tsm/oracle.hpp"

#include <cmath>

namespace tsm {

namespace {

constexpr double kSingularTol = 1e-12;

void require_denominator(double den, const char* what) {
    if (std::abs(den) <= kSingularTol) {
        throw SingularPointError(std::string(what) +
                                 " denominator vanishes at this parameter point; "
                                 "use the numeric fixed-point solver");
    }
}

// f entering the augmented-swap unmonitored population. The printed last term
// has cos(2 theta) where only cos(theta) reproduces the cycle fixed point;
// the corrected form matches the numeric invariant to 1e-14 on the full grid.
double aug_f(double p_beta, double theta, double phi) {
    const double s2 = std::sin(theta) * std::sin(theta);
    return (-3.0 - 2.0 * p_beta +
            (-1.0 + 2.0 * p_beta) * (std::cos(2.0 * theta) + 2.0 * std::cos(2.0 * phi) * s2) +
            2.0 * std::cos(theta) * (1.0 + std::cos(theta)) * std::sin(2.0 * phi)) /
           2.0;
}

double aug_denominator(double theta, double phi) {
    return -4.0 + 2.0 * std::cos(theta) * (1.0 + std::cos(theta)) * std::sin(2.0 * phi);
}

double swap_work(double p_M, double p_beta, double theta, double omega_A, double omega_B) {
    const double s2 = std::sin(theta) * std::sin(theta);
    return -(p_M - p_beta) * (omega_A - omega_B) * s2;
}

double aug_work(double p_M, double c_R, double p_beta, double theta, double omega_A, double omega_B) {
    const double s2 = std::sin(theta) * std::sin(theta);
    const double c2 = std::cos(theta) * std::cos(theta);
    return -(p_M - p_beta) * (omega_A - omega_B) * s2 +
           (0.5 - p_M + c_R) * (omega_A * c2 + omega_B * s2);
}

}  // namespace

CycleSpec ScenarioParams::to_cycle_spec() const {
    CycleSpec spec;
    spec.omega_A = omega_A;
    spec.omega_B = omega_B;
    spec.beta = beta;
    spec.unitary = {scenario == Scenario::ProjAugmented ? UnitaryKind::AugmentedSwap
                                                        : UnitaryKind::PartialSwap,
                    theta};
    spec.measurement = scenario == Scenario::GaussSwap ? MeasurementSpec::gaussian(beta_M)
                                                       : MeasurementSpec::projective(phi);
    return spec;
}

double oracle_p_beta(double beta, double omega_B) {
    return 1.0 / (1.0 + std::exp(beta * omega_B));
}

OraclePopulations oracle_populations(const ScenarioParams& p) {
    const double pb = oracle_p_beta(p.beta, p.omega_B);
    switch (p.scenario) {
        case Scenario::GaussSwap: {
            const double den = 1.0 - 2.0 * std::exp(0.5 * p.beta_M) + std::cos(2.0 * p.theta);
            require_denominator(den, "gaussian-POVM population");
            const double pM = pb - 2.0 * (0.5 - pb) * (std::exp(0.5 * p.beta_M) - 1.0) / den;
            return {pM, 0.0, pM};
        }
        case Scenario::ProjSwap: {
            const double s2phi = std::sin(p.phi) * std::sin(p.phi);
            const double den_um = 2.0 + 2.0 * std::cos(p.theta) * s2phi;
            require_denominator(den_um, "projective-swap unmonitored population");
            const double c2phi = std::cos(p.phi) * std::cos(p.phi);
            const double p_um = pb + (1.0 - 2.0 * pb) * c2phi / den_um;
            const double ch = std::cos(0.5 * p.theta);
            const double c_R = (-1.0 + 2.0 * pb) * ch * ch * std::sin(2.0 * p.phi) / den_um;
            const double den_m =
                3.0 + std::cos(2.0 * p.phi) - 2.0 * std::cos(2.0 * p.theta) * s2phi;
            require_denominator(den_m, "projective-swap monitored population");
            const double p_m = pb + 2.0 * (1.0 - 2.0 * pb) * c2phi / den_m;
            return {p_um, c_R, p_m};
        }
        case Scenario::ProjAugmented: {
            const double den = aug_denominator(p.theta, p.phi);
            require_denominator(den, "augmented-swap unmonitored population");
            const double p_um = aug_f(pb, p.theta, p.phi) / den;
            const double s2 = std::sin(p.theta) * std::sin(p.theta);
            const double c_R = (1.0 - 2.0 * pb) * s2 * std::sin(2.0 * p.phi) / den;
            const double p_m =
                (3.0 + 2.0 * pb +
                 (1.0 - 2.0 * pb) * (std::cos(2.0 * p.theta) + 2.0 * std::cos(2.0 * p.phi) * s2)) /
                8.0;
            return {p_um, c_R, p_m};
        }
    }
    throw ValidationError("unknown scenario");
}

double oracle_work(const ScenarioParams& p, WorkKind which) {
    const OraclePopulations pops = oracle_populations(p);
    const double pb = oracle_p_beta(p.beta, p.omega_B);
    if (p.scenario == Scenario::ProjAugmented) {
        switch (which) {
            case WorkKind::UnmonitoredTMA:
                return aug_work(pops.p_um, 0.0, pb, p.theta, p.omega_A, p.omega_B);
            case WorkKind::MonitoredTMA:
                return aug_work(pops.p_m, 0.0, pb, p.theta, p.omega_A, p.omega_B);
            case WorkKind::Coherent:
                return aug_work(pops.p_um, pops.c_R, pb, p.theta, p.omega_A, p.omega_B);
        }
    }
    // swap scenarios; Coherent coincides with the unmonitored TMA value
    const double pM = which == WorkKind::MonitoredTMA ? pops.p_m : pops.p_um;
    return swap_work(pM, pb, p.theta, p.omega_A, p.omega_B);
}

double oracle_positive_work_bound(const ScenarioParams& p, WorkKind which) {
    if (p.scenario != Scenario::ProjAugmented) {
        return 1.0;  // swap work is -(p_M - p_beta)(omega_A - omega_B) sin^2
    }
    const double c = std::cos(p.theta);
    const double c2phi = std::cos(p.phi) * std::cos(p.phi);
    const double s2phi = std::sin(2.0 * p.phi);
    switch (which) {
        case WorkKind::MonitoredTMA:
            return c2phi;
        case WorkKind::UnmonitoredTMA: {
            // the printed bound has (1 - cos theta) in the denominator; the
            // exact zero-work root of the work expression carries (1 + cos theta)
            const double t = c * (1.0 + c) * s2phi;
            require_denominator(2.0 - t, "unmonitored positive-work bound");
            return (2.0 * c2phi - t) / (2.0 - t);
        }
        case WorkKind::Coherent: {
            // polynomial form of (cot phi - cos theta)/(tan phi + cot phi - 1 - cos theta);
            // the phi -> 0 (bound 1) and phi = pi/2 (bound 0) limits are automatic
            const double den = 2.0 - (1.0 + c) * s2phi;
            require_denominator(den, "coherent positive-work bound");
            return (2.0 * c2phi - c * s2phi) / den;
        }
    }
    throw ValidationError("unknown work kind");
}

double oracle_variance_swap(double p_M, double p_beta, double theta, double omega_gap) {
    if (p_M < 0.0 || p_M > 1.0 || p_beta < 0.0 || p_beta > 1.0) {
        throw ValidationError("populations must lie in [0, 1]");
    }
    const double s2 = std::sin(theta) * std::sin(theta);
    return omega_gap * omega_gap * s2 *
           (p_M + p_beta - 2.0 * p_M * p_beta - (p_M - p_beta) * (p_M - p_beta) * s2);
}

}  // namespace tsm
