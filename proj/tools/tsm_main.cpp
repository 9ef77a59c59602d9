#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tsm/sweep.hpp"

namespace {

struct CommonOpts {
    std::string measurement = "gauss";
    std::string unitary = "swap";
    double theta = 1.5707963267948966;
    double phi = 0.7853981633974483;
    double beta_m = 2.0;
    double beta = 1.0;
    double omega_a = 2.0;
    std::string out;
    std::string format = "csv";
    std::uint64_t seed = 12345;
    int cycles = 20;
    int samples = 20000;
    bool verify = false;
    bool mc = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--measurement", o.measurement, "Measurement family")
        ->check(CLI::IsMember({"gauss", "proj"}))
        ->capture_default_str();
    cmd->add_option("--unitary", o.unitary, "Work-stroke unitary")
        ->check(CLI::IsMember({"swap", "augmented"}))
        ->capture_default_str();
    cmd->add_option("--theta", o.theta, "Unitary angle theta (rad)")->capture_default_str();
    cmd->add_option("--phi", o.phi, "Projective measurement direction phi (rad)")->capture_default_str();
    cmd->add_option("--beta-m", o.beta_m, "Gaussian measurement strength beta_M")->capture_default_str();
    cmd->add_option("--beta", o.beta, "Inverse bath temperature (units of 1/omega_B)")->capture_default_str();
    cmd->add_option("--omega-a", o.omega_a, "Qubit A gap (units of omega_B)")->capture_default_str();
    cmd->add_option("--out", o.out, "Output path (default: $TSM_OUTPUT_DIR/<name>.<fmt> or stdout)");
    cmd->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
    cmd->add_option("--cycles", o.cycles, "Monte Carlo cycles per trajectory")->capture_default_str();
    cmd->add_option("--samples", o.samples, "Monte Carlo samples / trajectories")->capture_default_str();
    cmd->add_flag("--verify", o.verify, "Cross-check emitted rows against the closed-form oracle");
    cmd->add_flag("--mc", o.mc, "Attach Monte Carlo columns (figures with markers enable this themselves)");
}

tsm::RunManifest to_manifest(const CommonOpts& o, tsm::Command command, const std::string& name) {
    tsm::RunManifest m;
    m.command = command;
    m.base.omega_A = o.omega_a;
    m.base.beta = o.beta;
    m.base.unitary = {o.unitary == "swap" ? tsm::UnitaryKind::PartialSwap
                                          : tsm::UnitaryKind::AugmentedSwap,
                      o.theta};
    m.base.measurement = o.measurement == "gauss" ? tsm::MeasurementSpec::gaussian(o.beta_m)
                                                  : tsm::MeasurementSpec::projective(o.phi);
    m.format = o.format == "csv" ? tsm::OutputFormat::Csv : tsm::OutputFormat::Json;
    m.mc = {o.mc, o.cycles, o.samples, o.seed};
    m.verify = o.verify;
    m.output_path = o.out;
    if (m.output_path.empty()) {
        if (const char* dir = std::getenv("TSM_OUTPUT_DIR"); dir && *dir) {
            m.output_path = (std::filesystem::path(dir) / (name + "." + o.format)).string();
        }
    }
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsm - two-stroke measurement heat engine simulator"};
    app.require_subcommand(1);
    app.set_config("--config")->description("INI config file; flags override file values");

    CommonOpts point_opts, sweep_opts, figure_opts;

    CLI::App* point = app.add_subcommand("point", "Evaluate a single engine configuration");
    add_common(point, point_opts);

    CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter axis");
    add_common(sweep, sweep_opts);
    tsm::SweepAxis axis{"theta", 0.0, 3.141592653589793, 64};
    sweep->add_option("--axis", axis.name, "Swept parameter")
        ->check(CLI::IsMember({"theta", "phi", "beta-m", "beta", "omega-a"}))
        ->capture_default_str();
    sweep->add_option("--min", axis.min, "Axis start")->capture_default_str();
    sweep->add_option("--max", axis.max, "Axis end")->capture_default_str();
    sweep->add_option("--points", axis.points, "Grid points")->capture_default_str();

    CLI::App* figure = app.add_subcommand("figure", "Emit the data grid behind a figure");
    std::string figure_id;
    figure->add_option("id", figure_id, "Figure id, e.g. fig2b")
        ->required()
        ->check(CLI::IsMember(tsm::known_figure_ids()));
    add_common(figure, figure_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (point->parsed()) {
            return tsm::run_manifest(to_manifest(point_opts, tsm::Command::Point, "point"), std::cerr);
        }
        if (sweep->parsed()) {
            tsm::RunManifest m = to_manifest(sweep_opts, tsm::Command::Sweep, "sweep_" + axis.name);
            m.axis = axis;
            return tsm::run_manifest(m, std::cerr);
        }
        tsm::RunManifest m = to_manifest(figure_opts, tsm::Command::Figure, figure_id);
        m.figure_id = figure_id;
        return tsm::run_manifest(m, std::cerr);
    } catch (const tsm::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
