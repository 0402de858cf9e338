#pragma once

// Front end of the orlicz-lab tool: textual specs for Young functions and
// weight profiles, the layered run configuration (defaults, optional config
// file, command-line flags), machine-readable JSON/CSV emission, and the
// built-in regression table of scaling laws with closed-form targets.

#include <iosfwd>
#include <string>
#include <vector>

#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// --- textual specs ---------------------------------------------------------
//
// Young functions:
//   pow:p=<x>[,c=<x>]                     c t^p
//   sumpow:p=<x>,q=<x>                    t^p + t^q
//   maxpow:p=<x>,q=<x>[,cp=<x>][,cq=<x>]  max{cp t^p, cq t^q}
//   powlog:p=<x>                          t^p log(e + t)
//   table:<path>                          density samples, "t,phi" per line
//
// Weights (ambient dimension and domain measure come from dim / omega):
//   hardy:a=<x>        |x|^{-a} on the space or ball of measure omega
//   const:c=<x>,m=<x>  constant c on a domain of measure m
//   indicator:m=<x>    indicator of a ball of measure m inside measure omega
//   sample:<path>      unordered cells, "value,measure" per line
//   radial:<path>      piecewise-linear radial profile, "rho,g" per line
//
// Parse failures throw ParseError annotated with the spec text and the
// character position of the offending token.  Parsed objects serialize back
// to the canonical form through spec_string().

YoungFunction parse_young_spec(const std::string& text);
WeightProfile parse_weight_spec(const std::string& text, int dim, double omega = kInf);

// --- run configuration ------------------------------------------------------

struct RunConfig {
    std::string subcommand;
    std::string phi = "pow:p=2";
    std::string psi;  // empty: reuse phi
    std::string weight = "const:c=1,m=1";
    int dim = 3;
    double omega = kInf;  // "inf" on the command line

    // verify
    std::string family = "cones";
    double slope_tol = 0.02;

    // eigen
    double radius = 1.0;       // supporting ball radius
    std::string levels = "1";  // single constraint level r, or a sweep lo:hi:n
    int nodes = 1200;
    double residual_tol = 1e-9;
    double report_tol = 1e-6;
    int probes = 1;

    // check
    bool with_capacity = false;
    double capacity_outer = 1.0;

    // sampling grid of the conjugate tables
    double grid_lo = 1e-2;
    double grid_hi = 1e2;
    int grid_count = 25;

    std::string emit = "json";  // json | csv
    std::string output;         // file path; empty writes to stdout
    std::string config_file;    // optional "key = value" file applied before flags
};

// Field-range validation: positive tolerances and grids, known family and
// output format, well-formed level sweep.  Throws ParseError.
void validate_config(const RunConfig& rc);

// "0.5" -> {0.5};  "0.5:2:4" -> four geometrically spaced levels.
std::vector<double> parse_levels(const std::string& text);

// --- built-in regression table ----------------------------------------------

struct ExampleRow {
    std::string id;      // stable row identifier
    std::string detail;  // configuration summary
    double measured = kNaN;
    double target = kNaN;
    double tol = 0;  // pass when |measured - target| <= tol * max(1, |target|)
    bool pass = false;
};

// Scaling-law regressions with closed-form targets: fitted growth exponents,
// eta-curve slopes and ratio-constancy branches, the piecewise complement
// identity, domination and limit checks, and one full admissibility route.
std::vector<ExampleRow> run_examples();

// --- entry point -------------------------------------------------------------

// Command-line driver behind the orlicz-lab binary (subcommands conjugate,
// norm, check, verify, eigen, examples).  Returns the process exit code:
// 0 success, 1 regression-row failure, 2 failed hypothesis reported,
// 3 numeric nonconvergence, 4 parse or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace orlicz
