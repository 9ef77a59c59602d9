#include "tsm/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace tsm {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int points) {
    std::vector<double> xs(points);
    if (points == 1) {
        xs[0] = lo;
        return xs;
    }
    for (int i = 0; i < points; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
    }
    return xs;
}

CycleSpec make_spec(MeasurementKind mk, UnitaryKind uk, double theta, double mparam,
                    double beta = 1.0, double omega_A = 2.0) {
    CycleSpec spec;
    spec.omega_A = omega_A;
    spec.beta = beta;
    spec.unitary = {uk, theta};
    spec.measurement = {mk, mparam};
    return spec;
}

std::optional<ScenarioParams> scenario_of(const CycleSpec& spec) {
    ScenarioParams p;
    p.theta = spec.unitary.theta;
    p.beta = spec.beta;
    p.omega_A = spec.omega_A;
    p.omega_B = spec.omega_B;
    const bool gauss = spec.measurement.kind == MeasurementKind::GaussianPOVM;
    const bool aug = spec.unitary.kind == UnitaryKind::AugmentedSwap;
    if (gauss && aug) {
        return std::nullopt;  // outside the analytic families
    }
    if (gauss) {
        p.scenario = Scenario::GaussSwap;
        p.beta_M = spec.measurement.param;
    } else {
        p.scenario = aug ? Scenario::ProjAugmented : Scenario::ProjSwap;
        p.phi = spec.measurement.param;
    }
    return p;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string fmt_opt(const std::optional<double>& x) {
    return x ? fmt(*x) : "nan";
}

const char* measurement_name(const CycleSpec& spec) {
    return spec.measurement.kind == MeasurementKind::GaussianPOVM ? "gauss" : "proj";
}

const char* unitary_name(const CycleSpec& spec) {
    return spec.unitary.kind == UnitaryKind::PartialSwap ? "swap" : "augmented";
}

struct FigureDef {
    bool mc;
    std::vector<CycleSpec> grid;
};

FigureDef build_figure(const std::string& id) {
    using MK = MeasurementKind;
    using UK = UnitaryKind;
    FigureDef def{false, {}};
    auto add = [&](MK mk, UK uk, double theta, double mparam) {
        def.grid.push_back(make_spec(mk, uk, theta, mparam));
    };

    if (id == "fig2a" || id == "fig7a") {
        const std::vector<double> thetas = id == "fig2a"
                                               ? std::vector<double>{kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}
                                               : std::vector<double>{kPi / 8, kPi / 4, kPi / 2};
        for (double th : thetas)
            for (double bM : linspace(0.0, 10.0, 65)) add(MK::GaussianPOVM, UK::PartialSwap, th, bM);
    } else if (id == "fig2b") {
        for (double bM : {0.5, 1.0, 2.0, 5.0})
            for (double th : linspace(0.0, kPi, 65)) add(MK::GaussianPOVM, UK::PartialSwap, th, bM);
    } else if (id == "fig2c") {
        def.mc = true;
        for (double bM : linspace(0.0, 10.0, 33)) add(MK::GaussianPOVM, UK::PartialSwap, kPi / 2, bM);
    } else if (id == "fig3a" || id == "fig3b") {
        for (double th : {kPi / 4, kPi / 2, 3 * kPi / 4})
            for (double ph : linspace(0.0, kPi / 2, 65)) add(MK::Projective, UK::PartialSwap, th, ph);
    } else if (id == "fig3c") {
        def.mc = true;
        for (double ph : linspace(0.0, kPi / 2, 33)) add(MK::Projective, UK::PartialSwap, kPi / 4, ph);
    } else if (id == "fig4a" || id == "fig4b") {
        for (double ph : {kPi / 8, kPi / 4, 3 * kPi / 8})
            for (double th : linspace(0.0, kPi, 65)) add(MK::Projective, UK::PartialSwap, th, ph);
    } else if (id == "fig4c") {
        def.mc = true;
        for (double th : linspace(0.0, kPi, 33)) add(MK::Projective, UK::PartialSwap, th, kPi / 4);
    } else if (id == "fig5a" || id == "fig5b" || id == "fig5c") {
        for (double ph : linspace(0.0, kPi / 2, 33))
            for (double th : linspace(0.0, kPi, 65)) add(MK::Projective, UK::AugmentedSwap, th, ph);
    } else if (id == "fig6") {
        def.mc = true;
        for (double th : linspace(0.0, kPi, 33)) add(MK::Projective, UK::AugmentedSwap, th, kPi / 8);
    } else if (id == "fig7b") {
        for (double ph : linspace(0.0, kPi / 2, 65)) add(MK::Projective, UK::PartialSwap, 3 * kPi / 4, ph);
    } else if (id == "fig7c") {
        for (double th : linspace(0.0, kPi, 65)) add(MK::Projective, UK::PartialSwap, th, kPi / 3);
    } else {
        throw ValidationError("unknown figure id: " + id);
    }
    return def;
}

}  // namespace

ResultRow compute_row(const CycleSpec& spec, const McSettings& mc) {
    spec.validate();
    ResultRow row;
    row.spec = spec;

    const InvariantStateResult um = unmonitored_invariant(spec);
    const InvariantStateResult mon = monitored_invariant(spec);
    row.p_um = um.state.excited_population();
    row.c_R = um.state.real_coherence();
    row.p_m = mon.state.excited_population();

    const EngineMetrics met_um = engine_metrics(tma_distribution(um.state, spec));
    const EngineMetrics met_m = engine_metrics(tma_distribution(mon.state, spec));
    row.avg_w_um = met_um.avg_w;
    row.avg_w_m = met_m.avg_w;
    row.avg_w_coherent = coherent_work(um.state, spec);
    row.var_w = met_um.var_w;
    row.reliability_um = met_um.reliability;
    row.reliability_m = met_m.reliability;

    if (!um.unique || !mon.unique) {
        row.flag = "degenerate";
    } else if (const auto sc = scenario_of(spec); !sc) {
        row.flag = "no-oracle";
    } else {
        try {
            oracle_populations(*sc);
            row.flag = "ok";
        } catch (const SingularPointError&) {
            row.flag = "singular";
        }
    }

    if (mc.enabled) {
        row.has_mc = true;
        row.seed = mc.seed;
        SimConfig config{spec, mc.n_cycles, mc.n_samples, mc.seed,
                         DensityMatrix::from_bloch(Vec3::Zero())};
        const SimResult rum = run_unmonitored(config);
        row.mc_mean_w = rum.mean_w;
        row.mc_stderr_w = rum.stderr_w;
        const SimResult rm = run_monitored(config);
        row.mc_mean_w_m = rm.mean_w;
        row.mc_stderr_w_m = rm.stderr_w;
    }
    return row;
}

std::vector<std::string> known_figure_ids() {
    return {"fig2a", "fig2b", "fig2c", "fig3a", "fig3b", "fig3c", "fig4a", "fig4b",
            "fig4c", "fig5a", "fig5b", "fig5c", "fig6", "fig7a", "fig7b", "fig7c"};
}

std::vector<CycleSpec> figure_grid(const std::string& figure_id, bool& mc_enabled) {
    FigureDef def = build_figure(figure_id);
    mc_enabled = def.mc;
    return std::move(def.grid);
}

std::vector<CycleSpec> manifest_grid(const RunManifest& manifest) {
    if (manifest.command == Command::Figure) {
        bool mc = false;
        return figure_grid(manifest.figure_id, mc);
    }
    if (manifest.command == Command::Point || !manifest.axis) {
        return {manifest.base};
    }
    std::vector<CycleSpec> grid;
    for (double x : linspace(manifest.axis->min, manifest.axis->max, manifest.axis->points)) {
        CycleSpec spec = manifest.base;
        if (manifest.axis->name == "theta") {
            spec.unitary.theta = x;
        } else if (manifest.axis->name == "phi") {
            spec.measurement = MeasurementSpec::projective(x);
        } else if (manifest.axis->name == "beta-m") {
            spec.measurement = MeasurementSpec::gaussian(x);
        } else if (manifest.axis->name == "beta") {
            spec.beta = x;
        } else if (manifest.axis->name == "omega-a") {
            spec.omega_A = x;
        } else {
            throw ValidationError("unknown sweep axis: " + manifest.axis->name);
        }
        grid.push_back(spec);
    }
    return grid;
}

std::string verify_row(const ResultRow& row, double tol) {
    if (row.flag != "ok") {
        return "";
    }
    const auto sc = scenario_of(row.spec);
    if (!sc) {
        return "";
    }
    const OraclePopulations pops = oracle_populations(*sc);
    struct Check {
        const char* name;
        double got;
        double want;
    };
    std::vector<Check> checks = {
        {"p_um", row.p_um, pops.p_um},
        {"c_R", row.c_R, pops.c_R},
        {"p_m", row.p_m, pops.p_m},
        {"avg_w_um", row.avg_w_um, oracle_work(*sc, WorkKind::UnmonitoredTMA)},
        {"avg_w_m", row.avg_w_m, oracle_work(*sc, WorkKind::MonitoredTMA)},
        {"avg_w_coherent", row.avg_w_coherent, oracle_work(*sc, WorkKind::Coherent)},
    };
    if (sc->scenario != Scenario::ProjAugmented) {
        checks.push_back({"var_w", row.var_w,
                          oracle_variance_swap(pops.p_um, oracle_p_beta(sc->beta, sc->omega_B),
                                               sc->theta, sc->omega_A - sc->omega_B)});
    }
    for (const Check& c : checks) {
        if (std::abs(c.got - c.want) > tol) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "%s mismatch: pipeline %.12e vs oracle %.12e", c.name,
                          c.got, c.want);
            return buf;
        }
    }
    return "";
}

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    const bool mc = !rows.empty() && rows.front().has_mc;
    out << "measurement,unitary,theta,phi,beta_m,beta,omega_a,omega_b,p_um,c_r,p_m,"
           "avg_w_um,avg_w_m,avg_w_coherent,var_w,reliability_um,reliability_m,flag";
    if (mc) {
        out << ",mc_mean_w,mc_stderr_w,mc_mean_w_m,mc_stderr_w_m,seed";
    }
    out << "\n";
    for (const ResultRow& r : rows) {
        const bool gauss = r.spec.measurement.kind == MeasurementKind::GaussianPOVM;
        out << measurement_name(r.spec) << ',' << unitary_name(r.spec) << ','
            << fmt(r.spec.unitary.theta) << ',' << fmt(gauss ? 0.0 : r.spec.measurement.param)
            << ',' << fmt(gauss ? r.spec.measurement.param : 0.0) << ',' << fmt(r.spec.beta) << ','
            << fmt(r.spec.omega_A) << ',' << fmt(r.spec.omega_B) << ',' << fmt(r.p_um) << ','
            << fmt(r.c_R) << ',' << fmt(r.p_m) << ',' << fmt(r.avg_w_um) << ',' << fmt(r.avg_w_m)
            << ',' << fmt(r.avg_w_coherent) << ',' << fmt(r.var_w) << ','
            << fmt_opt(r.reliability_um) << ',' << fmt_opt(r.reliability_m) << ',' << r.flag;
        if (mc) {
            out << ',' << fmt(r.mc_mean_w) << ',' << fmt(r.mc_stderr_w) << ','
                << fmt(r.mc_mean_w_m) << ',' << fmt(r.mc_stderr_w_m) << ',' << r.seed;
        }
        out << "\n";
    }
}

void emit_json(const std::vector<ResultRow>& rows, std::ostream& out) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResultRow& r : rows) {
        const bool gauss = r.spec.measurement.kind == MeasurementKind::GaussianPOVM;
        nlohmann::ordered_json obj;
        obj["measurement"] = measurement_name(r.spec);
        obj["unitary"] = unitary_name(r.spec);
        obj["theta"] = r.spec.unitary.theta;
        obj["phi"] = gauss ? 0.0 : r.spec.measurement.param;
        obj["beta_m"] = gauss ? r.spec.measurement.param : 0.0;
        obj["beta"] = r.spec.beta;
        obj["omega_a"] = r.spec.omega_A;
        obj["omega_b"] = r.spec.omega_B;
        obj["p_um"] = r.p_um;
        obj["c_r"] = r.c_R;
        obj["p_m"] = r.p_m;
        obj["avg_w_um"] = r.avg_w_um;
        obj["avg_w_m"] = r.avg_w_m;
        obj["avg_w_coherent"] = r.avg_w_coherent;
        obj["var_w"] = r.var_w;
        obj["reliability_um"] = r.reliability_um ? nlohmann::ordered_json(*r.reliability_um)
                                                 : nlohmann::ordered_json(nullptr);
        obj["reliability_m"] = r.reliability_m ? nlohmann::ordered_json(*r.reliability_m)
                                               : nlohmann::ordered_json(nullptr);
        obj["flag"] = r.flag;
        if (r.has_mc) {
            obj["mc_mean_w"] = r.mc_mean_w;
            obj["mc_stderr_w"] = r.mc_stderr_w;
            obj["mc_mean_w_m"] = r.mc_mean_w_m;
            obj["mc_stderr_w_m"] = r.mc_stderr_w_m;
            obj["seed"] = r.seed;
        }
        arr.push_back(std::move(obj));
    }
    out << arr.dump(2) << "\n";
}

int run_manifest(const RunManifest& manifest, std::ostream& diagnostics) {
    std::vector<CycleSpec> grid;
    McSettings mc = manifest.mc;
    try {
        if (manifest.command == Command::Figure) {
            bool fig_mc = false;
            grid = figure_grid(manifest.figure_id, fig_mc);
            mc.enabled = mc.enabled || fig_mc;
        } else {
            grid = manifest_grid(manifest);
        }
    } catch (const Error& e) {
        diagnostics << "error: " << e.what() << "\n";
        return 2;
    }

    std::vector<ResultRow> rows(grid.size());
    bool failed = false;
    std::string first_error;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.size()); ++i) {
        try {
            rows[i] = compute_row(grid[i], mc);
        } catch (const Error& e) {
#pragma omp critical
            {
                failed = true;
                if (first_error.empty()) first_error = e.what();
            }
        }
    }
    if (failed) {
        diagnostics << "error: " << first_error << "\n";
        return 2;
    }

    if (manifest.verify) {
        int mismatches = 0;
        for (const ResultRow& r : rows) {
            const std::string err = verify_row(r);
            if (!err.empty()) {
                if (++mismatches <= 5) {
                    diagnostics << "verify: " << err << " (theta=" << r.spec.unitary.theta
                                << ", param=" << r.spec.measurement.param << ")\n";
                }
            }
        }
        if (mismatches > 0) {
            diagnostics << "verify: " << mismatches << " row(s) disagree with the oracle\n";
            return 1;
        }
    }

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!manifest.output_path.empty()) {
        file.open(manifest.output_path);
        if (!file) {
            diagnostics << "error: cannot open output path " << manifest.output_path << "\n";
            return 2;
        }
        out = &file;
    }
    if (manifest.format == OutputFormat::Csv) {
        emit_csv(rows, *out);
    } else {
        emit_json(rows, *out);
    }
    return 0;
}

}  // namespace tsm
