#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsm/mc.hpp"
#include "tsm/oracle.hpp"

namespace tsm {

enum class Command { Point, Sweep, Figure };
enum class OutputFormat { Csv, Json };

struct McSettings {
    bool enabled = false;
    int n_cycles = 20;
    int n_samples = 20000;
    std::uint64_t seed = 12345;
};

// One grid axis for the sweep command.
struct SweepAxis {
    std::string name;  // theta | phi | beta-m | beta | omega-a
    double min = 0.0;
    double max = 1.0;
    int points = 64;
};

struct RunManifest {
    Command command = Command::Point;
    std::string figure_id;
    std::string output_path;  // empty -> stdout
    OutputFormat format = OutputFormat::Csv;
    CycleSpec base;
    std::optional<SweepAxis> axis;
    McSettings mc;
    bool verify = false;
};

// One emitted table row: parameters, invariant-state data, work statistics,
// optional Monte Carlo estimates. `flag` is "ok", "degenerate" (engine fixed
// point not unique), "singular" (oracle closed form undefined) or "no-oracle"
// (parameter combination outside the analytic families).
struct ResultRow {
    CycleSpec spec;
    double p_um = 0.0;
    double c_R = 0.0;
    double p_m = 0.0;
    double avg_w_um = 0.0;
    double avg_w_m = 0.0;
    double avg_w_coherent = 0.0;
    double var_w = 0.0;
    std::optional<double> reliability_um;
    std::optional<double> reliability_m;
    std::string flag = "ok";
    bool has_mc = false;
    double mc_mean_w = 0.0;    // unmonitored run
    double mc_stderr_w = 0.0;
    double mc_mean_w_m = 0.0;  // monitored run
    double mc_stderr_w_m = 0.0;
    std::uint64_t seed = 0;
};

ResultRow compute_row(const CycleSpec& spec, const McSettings& mc);

std::vector<std::string> known_figure_ids();

// Fully determined parameter grid for a figure id (beta = 1/omega_B,
// omega_A = 2 omega_B defaults per the figure conventions).
std::vector<CycleSpec> figure_grid(const std::string& figure_id, bool& mc_enabled);

std::vector<CycleSpec> manifest_grid(const RunManifest& manifest);

// Cross-check a row's analytic columns against the oracle closed forms.
// Returns an error description, or empty when consistent (or flagged non-ok).
std::string verify_row(const ResultRow& row, double tol = 1e-8);

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void emit_json(const std::vector<ResultRow>& rows, std::ostream& out);

// Compute all rows (grid points evaluated concurrently, emitted in grid
// order), optionally verify, and write to manifest.output_path or stdout.
// Returns a process exit status.
int run_manifest(const RunManifest& manifest, std::ostream& diagnostics);

}  // namespace tsm
