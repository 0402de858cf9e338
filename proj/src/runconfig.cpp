#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orlicz/admit.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/conjugate.hpp"
#include "orlicz/eigen.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/verify.hpp"

namespace orlicz {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// non-finite doubles have no JSON number form; emit them as spelled strings
// so the payload stays lossless
ordered_json num_json(double v) {
    if (std::isfinite(v)) return v;
    return fmt12(v);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) line += ',';
        line += csv_field(fields[k]);
    }
    line += "\r\n";
    return line;
}

ordered_json config_json(const RunConfig& rc) {
    ordered_json j;
    j["subcommand"] = rc.subcommand;
    j["phi"] = rc.phi;
    j["psi"] = rc.psi.empty() ? rc.phi : rc.psi;
    j["weight"] = rc.weight;
    j["dim"] = rc.dim;
    j["omega"] = num_json(rc.omega);
    j["family"] = rc.family;
    j["slope_tol"] = rc.slope_tol;
    j["radius"] = rc.radius;
    j["levels"] = rc.levels;
    j["nodes"] = rc.nodes;
    j["residual_tol"] = rc.residual_tol;
    j["report_tol"] = rc.report_tol;
    j["probes"] = rc.probes;
    j["with_capacity"] = rc.with_capacity;
    j["capacity_outer"] = rc.capacity_outer;
    j["grid_lo"] = rc.grid_lo;
    j["grid_hi"] = rc.grid_hi;
    j["grid_count"] = rc.grid_count;
    j["emit"] = rc.emit;
    j["output"] = rc.output;
    return j;
}

void write_text(const RunConfig& rc, std::ostream& fallback, const std::string& text) {
    if (rc.output.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(rc.output, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + rc.output + "'");
    f << text;
}

void emit_json(const RunConfig& rc, std::ostream& fallback, const ordered_json& payload) {
    write_text(rc, fallback, payload.dump(2) + "\n");
}

struct Inputs {
    YoungFunction phi;
    YoungFunction psi;
};

Inputs parse_pair(const RunConfig& rc) {
    YoungFunction phi = parse_young_spec(rc.phi);
    YoungFunction psi = rc.psi.empty() ? phi : parse_young_spec(rc.psi);
    return {std::move(phi), std::move(psi)};
}

// --- subcommands -------------------------------------------------------------

int cmd_conjugate(const RunConfig& rc, std::ostream& out) {
    const YoungFunction phi = parse_young_spec(rc.phi);
    const ConjugateBundle bundle = make_conjugate_bundle(phi, rc.dim);
    const std::vector<double> ts = logspace(rc.grid_lo, rc.grid_hi, rc.grid_count);

    if (rc.emit == "csv") {
        std::string text = csv_join(
            {"t", "base", "base_conjugate", "dimensional_conjugate", "transfer",
             "transfer_complement"});
        for (double t : ts)
            text += csv_join({fmt12(t), fmt12(bundle.base(t)), fmt12(bundle.base_conjugate(t)),
                              fmt12(bundle.phi_n(t)), fmt12(bundle.b_phi(t)),
                              fmt12(bundle.b_phi_complement(t))});
        write_text(rc, out, text);
        return 0;
    }

    ordered_json j;
    j["config"] = config_json(rc);
    j["base"] = phi.spec_string();
    j["base_conjugate"] = bundle.base_conjugate.spec_string();
    j["transfer_convex"] = bundle.b_phi_convex;
    ordered_json samples = ordered_json::array();
    for (double t : ts) {
        ordered_json row;
        row["t"] = num_json(t);
        row["base"] = num_json(bundle.base(t));
        row["base_conjugate"] = num_json(bundle.base_conjugate(t));
        row["dimensional_conjugate"] = num_json(bundle.phi_n(t));
        row["transfer"] = num_json(bundle.b_phi(t));
        row["transfer_complement"] = num_json(bundle.b_phi_complement(t));
        samples.push_back(std::move(row));
    }
    j["samples"] = std::move(samples);
    emit_json(rc, out, j);
    return 0;
}

int cmd_norm(const RunConfig& rc, std::ostream& out) {
    const Inputs in = parse_pair(rc);
    const WeightProfile w = parse_weight_spec(rc.weight, rc.dim, rc.omega);

    std::vector<NormReport> reports;
    reports.push_back(norm_luxemburg(w, in.phi));
    reports.push_back(norm_phi_infty(w, in.phi, rc.dim));
    reports.push_back(norm_x_phi(w, in.phi, rc.dim));
    reports.push_back(norm_x_phi_psi(w, in.phi, in.psi, rc.dim));
    reports.push_back(norm_l1(w));
    try {
        const ConjugateBundle bundle = make_conjugate_bundle(in.phi, rc.dim);
        reports.push_back(norm_orlicz_bphi(w, bundle));
    } catch (const HypothesisError& err) {
        NormReport rep;
        rep.kind = NormKind::orlicz_bphi;
        rep.value = kNaN;
        rep.finite = false;
        rep.hypothesis_ok = false;
        rep.hypothesis_note = err.what();
        reports.push_back(std::move(rep));
    }

    bool hypothesis_failed = false;
    for (const NormReport& rep : reports) hypothesis_failed |= !rep.hypothesis_ok;

    if (rc.emit == "csv") {
        std::string text = csv_join({"kind", "value", "finite", "hypothesis_ok", "note"});
        for (const NormReport& rep : reports)
            text += csv_join({to_string(rep.kind), fmt12(rep.value), rep.finite ? "1" : "0",
                              rep.hypothesis_ok ? "1" : "0", rep.hypothesis_note});
        write_text(rc, out, text);
    } else {
        ordered_json j;
        j["config"] = config_json(rc);
        j["weight"] = w.spec_string();
        ordered_json rows = ordered_json::array();
        for (const NormReport& rep : reports) {
            ordered_json row;
            row["kind"] = to_string(rep.kind);
            row["value"] = num_json(rep.value);
            row["finite"] = rep.finite;
            row["sup_arg"] = num_json(rep.sup_arg);
            row["hypothesis_ok"] = rep.hypothesis_ok;
            row["note"] = rep.hypothesis_note;
            rows.push_back(std::move(row));
        }
        j["norms"] = std::move(rows);
        emit_json(rc, out, j);
    }
    return hypothesis_failed ? 2 : 0;
}

int cmd_check(const RunConfig& rc, std::ostream& out) {
    const Inputs in = parse_pair(rc);
    const WeightProfile w = parse_weight_spec(rc.weight, rc.dim, rc.omega);
    AdmitConfig acfg;
    acfg.with_capacity = rc.with_capacity;
    acfg.capacity_outer = rc.capacity_outer;
    const AdmissibilityReport report =
        admissibility_report(w, in.phi, in.psi, rc.dim, rc.omega, acfg);

    bool hypothesis_failed = false;
    for (const RouteReport& route : report.routes)
        hypothesis_failed |= route.verdict == RouteVerdict::hypothesis_failed;

    if (rc.emit == "csv") {
        std::string text = csv_join({"id", "verdict", "norm", "constant", "failed_hypotheses"});
        for (const RouteReport& route : report.routes) {
            std::string failed;
            for (const HypothesisStatus& h : route.hypotheses)
                if (!h.ok) failed += (failed.empty() ? "" : ";") + h.name;
            text += csv_join({route.id, to_string(route.verdict), fmt12(route.norm.value),
                              fmt12(route.constant), failed});
        }
        write_text(rc, out, text);
    } else {
        ordered_json j;
        j["config"] = config_json(rc);
        ordered_json routes = ordered_json::array();
        for (const RouteReport& route : report.routes) {
            ordered_json r;
            r["id"] = route.id;
            ordered_json hyp;
            for (const HypothesisStatus& h : route.hypotheses) {
                ordered_json one;
                one["ok"] = h.ok;
                one["detail"] = h.detail;
                hyp[h.name] = std::move(one);
            }
            r["hypotheses"] = std::move(hyp);
            r["norm"] = num_json(route.norm.value);
            r["norm_kind"] = to_string(route.norm.kind);
            r["verdict"] = to_string(route.verdict);
            r["constant"] = num_json(route.constant);
            routes.push_back(std::move(r));
        }
        j["routes"] = std::move(routes);
        if (report.muckenhoupt) {
            ordered_json m;
            m["value"] = num_json(report.muckenhoupt->value);
            m["divergent"] = report.muckenhoupt->divergent;
            m["eps_arg"] = num_json(report.muckenhoupt->eps_arg);
            m["t_arg"] = num_json(report.muckenhoupt->t_arg);
            j["muckenhoupt"] = std::move(m);
        } else {
            j["muckenhoupt"] = nullptr;
        }
        if (report.capacity) {
            ordered_json c;
            c["value"] = num_json(report.capacity->value);
            c["divergent"] = report.capacity->divergent;
            c["arg"] = num_json(report.capacity->arg);
            ordered_json radii = ordered_json::array(), ratios = ordered_json::array();
            for (double a : report.capacity->radii) radii.push_back(num_json(a));
            for (double v : report.capacity->ratios) ratios.push_back(num_json(v));
            c["radii"] = std::move(radii);
            c["ratios"] = std::move(ratios);
            j["capacity"] = std::move(c);
        } else {
            j["capacity"] = nullptr;
        }
        emit_json(rc, out, j);
    }
    return hypothesis_failed ? 2 : 0;
}

int cmd_verify(const RunConfig& rc, std::ostream& out) {
    const Inputs in = parse_pair(rc);
    const WeightProfile w = parse_weight_spec(rc.weight, rc.dim, rc.omega);
    const TestFamily family = family_from_string(rc.family);
    VerifyConfig vcfg;
    vcfg.slope_tol = rc.slope_tol;
    const HarnessResult res = run_family(w, in.phi, in.psi, rc.dim, family, vcfg);

    if (rc.emit == "csv") {
        std::string text = csv_join({"test_id", "param", "lhs", "rhs", "ratio"});
        for (const HarnessRow& row : res.rows)
            text += csv_join(
                {row.test_id, fmt12(row.param), fmt12(row.lhs), fmt12(row.rhs), fmt12(row.ratio)});
        write_text(rc, out, text);
        return 0;
    }

    ordered_json j;
    j["config"] = config_json(rc);
    j["family"] = res.family;
    ordered_json rows = ordered_json::array();
    for (const HarnessRow& row : res.rows) {
        ordered_json r;
        r["test_id"] = row.test_id;
        r["param"] = num_json(row.param);
        r["lhs"] = num_json(row.lhs);
        r["rhs"] = num_json(row.rhs);
        r["ratio"] = num_json(row.ratio);
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["empirical_constant"] = num_json(res.empirical_constant);
    j["argmax_id"] = res.argmax_id;
    j["log_slope"] = num_json(res.log_slope);
    j["note"] = res.note;
    emit_json(rc, out, j);
    return 0;
}

int cmd_eigen(const RunConfig& rc, std::ostream& out) {
    const Inputs in = parse_pair(rc);
    const WeightProfile w = parse_weight_spec(rc.weight, rc.dim, rc.omega);
    const std::vector<double> levels = parse_levels(rc.levels);
    EigenConfig ecfg;
    ecfg.nodes = rc.nodes;
    ecfg.residual_tol = rc.residual_tol;
    ecfg.report_tol = rc.report_tol;
    ecfg.restart_probes = rc.probes;

    std::vector<EigenResult> results;
    results.reserve(levels.size());
    for (double r : levels)
        results.push_back(minimize_lambda1(in.phi, in.psi, w, rc.dim, rc.radius, r, ecfg));

    if (rc.emit == "csv") {
        std::string text =
            csv_join({"level", "radial_lambda1", "lambda_tilde", "residual", "iterations"});
        for (const EigenResult& res : results)
            text += csv_join({fmt12(res.level), fmt12(res.lambda1), fmt12(res.lambda_tilde),
                              fmt12(res.residual), std::to_string(res.iterations)});
        write_text(rc, out, text);
        return 0;
    }

    ordered_json j;
    j["config"] = config_json(rc);
    ordered_json runs = ordered_json::array();
    for (const EigenResult& res : results) {
        ordered_json r;
        r["level"] = num_json(res.level);
        r["radial_lambda1"] = num_json(res.lambda1);
        r["lambda_tilde"] = num_json(res.lambda_tilde);
        r["residual"] = num_json(res.residual);
        r["iterations"] = res.iterations;
        r["probe_deviation"] = num_json(res.probe_deviation);
        const std::vector<double>& rho = res.profile.rho_nodes();
        const std::vector<double>& val = res.profile.values();
        // cap the emitted profile at roughly 512 samples, keeping both ends
        const std::size_t stride = std::max<std::size_t>(1, (rho.size() + 511) / 512);
        ordered_json prho = ordered_json::array(), pval = ordered_json::array();
        for (std::size_t k = 0; k < rho.size(); k += stride) {
            prho.push_back(num_json(rho[k]));
            pval.push_back(num_json(val[k]));
        }
        if ((rho.size() - 1) % stride != 0) {
            prho.push_back(num_json(rho.back()));
            pval.push_back(num_json(val.back()));
        }
        ordered_json prof;
        prof["rho"] = std::move(prho);
        prof["value"] = std::move(pval);
        r["profile"] = std::move(prof);
        runs.push_back(std::move(r));
    }
    j["runs"] = std::move(runs);
    emit_json(rc, out, j);
    return 0;
}

int cmd_examples(const RunConfig& rc, std::ostream& out) {
    const std::vector<ExampleRow> rows = run_examples();
    bool all_pass = true;
    for (const ExampleRow& row : rows) all_pass &= row.pass;

    if (rc.emit == "csv") {
        std::string text = csv_join({"id", "measured", "target", "tol", "pass", "detail"});
        for (const ExampleRow& row : rows)
            text += csv_join({row.id, fmt12(row.measured), fmt12(row.target), fmt12(row.tol),
                              row.pass ? "1" : "0", row.detail});
        write_text(rc, out, text);
    } else {
        ordered_json j;
        j["config"] = config_json(rc);
        ordered_json jrows = ordered_json::array();
        for (const ExampleRow& row : rows) {
            ordered_json r;
            r["id"] = row.id;
            r["detail"] = row.detail;
            r["measured"] = num_json(row.measured);
            r["target"] = num_json(row.target);
            r["tol"] = row.tol;
            r["pass"] = row.pass;
            jrows.push_back(std::move(r));
        }
        j["rows"] = std::move(jrows);
        j["all_pass"] = all_pass;
        emit_json(rc, out, j);
    }
    return all_pass ? 0 : 1;
}

}  // namespace

void validate_config(const RunConfig& rc) {
    auto require = [](bool ok, const char* why) {
        if (!ok) throw ParseError(std::string("config: ") + why);
    };
    require(rc.dim >= 2, "dim must be at least 2");
    require(rc.omega > 0.0, "omega must be positive");
    require(rc.slope_tol > 0.0, "slope_tol must be positive");
    require(std::isfinite(rc.radius) && rc.radius > 0.0, "radius must be finite positive");
    require(rc.nodes >= 8, "nodes must be at least 8");
    require(rc.residual_tol > 0.0, "residual_tol must be positive");
    require(rc.report_tol > 0.0, "report_tol must be positive");
    require(rc.probes >= 0, "probes must be nonnegative");
    require(std::isfinite(rc.capacity_outer) && rc.capacity_outer > 0.0,
            "capacity_outer must be finite positive");
    require(rc.grid_lo > 0.0, "grid_lo must be positive");
    require(std::isfinite(rc.grid_hi) && rc.grid_hi > rc.grid_lo,
            "grid_hi must exceed grid_lo");
    require(rc.grid_count >= 2, "grid_count must be at least 2");
    require(rc.emit == "json" || rc.emit == "csv", "emit must be json or csv");
    family_from_string(rc.family);
    parse_levels(rc.levels);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig rc;
    std::string omega_text = "inf";

    CLI::App app{
        "Numerical toolkit for Young-function calculus, rearrangements, weighted norms,\n"
        "admissibility checks, and the constrained gradient-modular minimizer.\n"
        "The ORLICZ_LAB_THREADS environment variable caps worker threads."};
    app.name("orlicz-lab");
    app.require_subcommand(1);
    app.set_config("--config", "", "configuration file with 'key = value' lines");

    app.add_option("--phi", rc.phi, "Young function spec, e.g. pow:p=2")->capture_default_str();
    app.add_option("--psi", rc.psi, "second Young function spec (default: reuse --phi)");
    app.add_option("--weight", rc.weight, "weight spec, e.g. hardy:a=2")->capture_default_str();
    app.add_option("--dim", rc.dim, "ambient dimension")->capture_default_str();
    app.add_option("--omega", omega_text, "domain measure, a number or 'inf'")
        ->capture_default_str();
    app.add_option("--family", rc.family, "verify family: cones|bumps|dilate|amplitude")
        ->capture_default_str();
    app.add_option("--slope-tol", rc.slope_tol, "bounded-ratio slope tolerance")
        ->capture_default_str();
    app.add_option("--R,--radius", rc.radius, "eigen: supporting ball radius")
        ->capture_default_str();
    app.add_option("--r,--levels", rc.levels, "eigen: constraint level or sweep lo:hi:n")
        ->capture_default_str();
    app.add_option("--nodes", rc.nodes, "eigen: grid cells")->capture_default_str();
    app.add_option("--residual-tol", rc.residual_tol, "eigen: stationarity target")
        ->capture_default_str();
    app.add_option("--report-tol", rc.report_tol, "eigen: acceptance residual")
        ->capture_default_str();
    app.add_option("--probes", rc.probes, "eigen: perturbed restarts")->capture_default_str();
    app.add_flag("--with-capacity", rc.with_capacity, "check: include the capacity criterion");
    app.add_option("--capacity-outer", rc.capacity_outer, "check: outer capacity radius")
        ->capture_default_str();
    app.add_option("--grid-lo", rc.grid_lo, "sample grid lower end")->capture_default_str();
    app.add_option("--grid-hi", rc.grid_hi, "sample grid upper end")->capture_default_str();
    app.add_option("--grid-count", rc.grid_count, "sample grid size")->capture_default_str();
    app.add_option("--emit", rc.emit, "output format: json|csv")->capture_default_str();
    app.add_option("--output", rc.output, "output file (default: stdout)");

    app.add_subcommand("conjugate", "tabulate the dimensional conjugate and transfer functions")
        ->fallthrough();
    app.add_subcommand("norm", "weighted norms of a weight profile")->fallthrough();
    app.add_subcommand("check", "per-route admissibility report")->fallthrough();
    app.add_subcommand("verify", "empirical constants over displacement families")->fallthrough();
    app.add_subcommand("eigen", "minimize the gradient modular on a constraint level")
        ->fallthrough();
    app.add_subcommand("examples", "built-in scaling-law regression table")->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }

    try {
        rc.subcommand = app.get_subcommands().front()->get_name();
        if (omega_text == "inf" || omega_text.empty()) {
            rc.omega = kInf;
        } else {
            char* endp = nullptr;
            rc.omega = std::strtod(omega_text.c_str(), &endp);
            if (endp != omega_text.c_str() + omega_text.size())
                throw ParseError("config: omega must be a number or 'inf'");
        }
        validate_config(rc);

        if (rc.subcommand == "conjugate") return cmd_conjugate(rc, out);
        if (rc.subcommand == "norm") return cmd_norm(rc, out);
        if (rc.subcommand == "check") return cmd_check(rc, out);
        if (rc.subcommand == "verify") return cmd_verify(rc, out);
        if (rc.subcommand == "eigen") return cmd_eigen(rc, out);
        return cmd_examples(rc, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const MinimizationError& e) {
        err << "error: " << e.what() << "\n";
        err << "best iterate: lambda_tilde " << fmt12(e.best_iterate().lambda_tilde)
            << ", residual " << fmt12(e.best_iterate().residual) << "\n";
        return 3;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const HypothesisError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace orlicz
