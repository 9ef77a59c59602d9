#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tsm/stats.hpp"

namespace tsm {

// Counter-based RNG substream keyed by (seed, trajectory, cycle). Streams are
// derived purely from the key, so ensemble results do not depend on how
// trajectories are scheduled across threads.
class SubstreamRng {
public:
    SubstreamRng(std::uint64_t seed, std::uint64_t trajectory, std::uint64_t cycle);
    double uniform();  // [0, 1)

private:
    std::uint64_t state_;
};

struct SimConfig {
    CycleSpec spec;
    int n_cycles = 20;
    int n_samples = 20000;
    std::uint64_t seed = 12345;
    DensityMatrix initial_state;

    void validate() const;
};

struct SimResult {
    double mean_w = 0.0;
    double stderr_w = 0.0;  // sample standard deviation / sqrt(n)
    double mean_dE_A = 0.0;
    std::vector<double> per_cycle_mean_w;          // monitored mode
    std::optional<DensityMatrix> final_state;      // unmonitored mode
    double terminal_excited_fraction = 0.0;        // monitored mode
};

// Unmonitored protocol: evolve initial_state through n_cycles deterministic
// cycle-map applications, then sample the diagnostic TMA distribution of the
// final state n_samples times.
SimResult run_unmonitored(const SimConfig& config);
SimResult run_unmonitored_serial(const SimConfig& config);

// Monitored protocol: n_samples independent trajectories of n_cycles cycles
// with energy measurements interleaved; one shared measurement per cycle
// boundary. Work statistics are reported for the terminal cycle.
SimResult run_monitored(const SimConfig& config);
SimResult run_monitored_serial(const SimConfig& config);

}  // namespace tsm
