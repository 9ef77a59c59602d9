#include "tsm/mc.hpp"

#include <cmath>

namespace tsm {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
    // splitmix64 finalizer
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

struct MeanStderr {
    double mean;
    double stderr_;
};

// Sequential two-pass mean / sample stddev; called identically by the serial
// and parallel drivers so aggregation order never depends on thread count.
MeanStderr mean_stderr(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    if (xs.size() < 2) {
        return {mean, 0.0};
    }
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

// Precomputed cumulative sampling tables for the monitored trajectory kernel.
struct MonitoredTables {
    double p_beta;
    double eps_A[2];
    double eps_B[2];
    double s_cum[4][4];  // cumulative over joint outcome n, one row per joint start m
    double q_excited[2];  // P(post-channel measurement gives excited | n_A)

    explicit MonitoredTables(const CycleSpec& spec) {
        p_beta = spec.thermal_B().excited_population();
        for (int l = 0; l < 2; ++l) {
            eps_A[l] = energy_level(spec.omega_A, l);
            eps_B[l] = energy_level(spec.omega_B, l);
        }
        const Eigen::Matrix4d s = spec.unitary_op().mat.cwiseAbs2();
        for (int m = 0; m < 4; ++m) {
            double acc = 0.0;
            for (int n = 0; n < 4; ++n) {
                acc += s(n, m);
                s_cum[m][n] = acc;
            }
            s_cum[m][3] = 1.0;  // guard against round-off in the last bucket
        }
        const Channel meas = spec.measurement_channel();
        for (int n = 0; n < 2; ++n) {
            q_excited[n] = meas.apply(proj_z(n, BasisLabel::A)).mat(0, 0).real();
        }
    }
};

struct CycleRecord {
    double w;
    double dE_A;
};

// One monitored cycle: thermal draw for B, joint energy outcome after the
// unitary, and the shared post-channel measurement that opens the next cycle.
inline CycleRecord monitored_cycle(const MonitoredTables& tab, int& level, SubstreamRng& rng) {
    const int m_B = rng.uniform() < tab.p_beta ? 0 : 1;
    const int m = 2 * level + m_B;
    const double u = rng.uniform();
    int n = 0;
    while (n < 3 && tab.s_cum[m][n] <= u) ++n;
    const int n_A = n >> 1;
    const int n_B = n & 1;
    CycleRecord rec{tab.eps_A[n_A] + tab.eps_B[n_B] - tab.eps_A[level] - tab.eps_B[m_B],
                    tab.eps_A[n_A] - tab.eps_A[level]};
    level = rng.uniform() < tab.q_excited[n_A] ? 0 : 1;
    return rec;
}

void monitored_trajectory(const MonitoredTables& tab, const SimConfig& config, std::uint64_t traj,
                          double* w_row, double* terminal_dE, int* terminal_level) {
    // the cycle-0 substream draws the initial energy-measurement outcome of A
    SubstreamRng init(config.seed, traj, 0);
    int level = init.uniform() < config.initial_state.excited_population() ? 0 : 1;
    CycleRecord rec{0.0, 0.0};
    for (int k = 0; k < config.n_cycles; ++k) {
        SubstreamRng rng(config.seed, traj, static_cast<std::uint64_t>(k) + 1);
        rec = monitored_cycle(tab, level, rng);
        w_row[k] = rec.w;
    }
    *terminal_dE = rec.dE_A;
    *terminal_level = level;
}

SimResult aggregate_monitored(const SimConfig& config, const std::vector<double>& w,
                              const std::vector<double>& dE, const std::vector<int>& levels) {
    const int n = config.n_samples;
    const int cycles = config.n_cycles;
    SimResult res;
    res.per_cycle_mean_w.assign(cycles, 0.0);
    for (int t = 0; t < n; ++t) {
        for (int k = 0; k < cycles; ++k) {
            res.per_cycle_mean_w[k] += w[static_cast<std::size_t>(t) * cycles + k];
        }
    }
    for (double& x : res.per_cycle_mean_w) x /= n;

    std::vector<double> terminal(n);
    for (int t = 0; t < n; ++t) {
        terminal[t] = w[static_cast<std::size_t>(t) * cycles + cycles - 1];
    }
    const MeanStderr ms = mean_stderr(terminal);
    res.mean_w = ms.mean;
    res.stderr_w = ms.stderr_;
    res.mean_dE_A = mean_stderr(dE).mean;
    long excited = 0;
    for (int lv : levels) excited += lv == 0 ? 1 : 0;
    res.terminal_excited_fraction = static_cast<double>(excited) / n;
    return res;
}

SimResult run_monitored_impl(const SimConfig& config, bool parallel) {
    config.validate();
    const MonitoredTables tab(config.spec);
    const int n = config.n_samples;
    const int cycles = config.n_cycles;
    std::vector<double> w(static_cast<std::size_t>(n) * cycles);
    std::vector<double> dE(n);
    std::vector<int> levels(n);

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int t = 0; t < n; ++t) {
            monitored_trajectory(tab, config, static_cast<std::uint64_t>(t),
                                 &w[static_cast<std::size_t>(t) * cycles], &dE[t], &levels[t]);
        }
    } else {
        for (int t = 0; t < n; ++t) {
            monitored_trajectory(tab, config, static_cast<std::uint64_t>(t),
                                 &w[static_cast<std::size_t>(t) * cycles], &dE[t], &levels[t]);
        }
    }
    return aggregate_monitored(config, w, dE, levels);
}

SimResult run_unmonitored_impl(const SimConfig& config, bool parallel) {
    config.validate();
    DensityMatrix state = config.initial_state;
    for (int k = 0; k < config.n_cycles; ++k) {
        state = unmonitored_cycle_map(state, config.spec);
    }
    const WorkDistribution dist = tma_distribution(state, config.spec);

    std::vector<double> cum(dist.atoms.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.atoms.size(); ++i) {
        acc += dist.atoms[i].p;
        cum[i] = acc;
    }
    cum.back() = 1.0;

    const int n = config.n_samples;
    std::vector<double> w(n);
    std::vector<double> dE(n);
    auto draw = [&](int i) {
        SubstreamRng rng(config.seed, static_cast<std::uint64_t>(i), 0);
        const double u = rng.uniform();
        std::size_t j = 0;
        while (j + 1 < cum.size() && cum[j] <= u) ++j;
        w[i] = dist.atoms[j].w;
        dE[i] = dist.atoms[j].dE_A;
    };

    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n; ++i) draw(i);
    } else {
        for (int i = 0; i < n; ++i) draw(i);
    }

    SimResult res;
    const MeanStderr ms = mean_stderr(w);
    res.mean_w = ms.mean;
    res.stderr_w = ms.stderr_;
    res.mean_dE_A = mean_stderr(dE).mean;
    res.final_state = state;
    return res;
}

}  // namespace

SubstreamRng::SubstreamRng(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t cycle) {
    std::uint64_t h = mix64(seed + kGamma);
    h = mix64(h ^ (trajectory + kGamma));
    h = mix64(h ^ (cycle + kGamma));
    state_ = h;
}

double SubstreamRng::uniform() {
    state_ += kGamma;
    return static_cast<double>(mix64(state_) >> 11) * 0x1.0p-53;
}

void SimConfig::validate() const {
    spec.validate();
    if (n_cycles < 1 || n_samples < 1) {
        throw ValidationError("simulation needs n_cycles >= 1 and n_samples >= 1");
    }
    if (initial_state.dim() != 2) {
        throw DimensionError("initial state must be a qubit density matrix");
    }
}

SimResult run_unmonitored(const SimConfig& config) { return run_unmonitored_impl(config, true); }
SimResult run_unmonitored_serial(const SimConfig& config) { return run_unmonitored_impl(config, false); }
SimResult run_monitored(const SimConfig& config) { return run_monitored_impl(config, true); }
SimResult run_monitored_serial(const SimConfig& config) { return run_monitored_impl(config, false); }

}  // namespace tsm
