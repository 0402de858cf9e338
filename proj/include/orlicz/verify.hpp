#pragma once

// Empirical harness for the weighted integral inequality
//
//   Psi^{-1}( \int g(x) Psi(|u(x)|) dx )  <=  C * Phi^{-1}( \int Phi(|grad u(x)|) dx )
//
// evaluated on families of compactly supported, radial, piecewise-linear
// test profiles.  Each family member contributes one (lhs, rhs, ratio) row;
// the harness reports the per-row data, the empirical constant sup lhs/rhs,
// the fitted log-log slope of the ratio along the sweep parameter, and an
// optional comparison against a theoretical bound expression whose universal
// prefactor is treated as the free reported quantity.

#include <optional>
#include <string>
#include <vector>

#include "orlicz/numerics.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class TestFamily {
    cones,      // truncated cones: plateau to radius a, linear down to 0 at b
    bumps,      // smooth compactly supported exponential bumps, width sweep
    dilate,     // u(rho / lambda) of a fixed base profile, lambda sweep
    amplitude,  // t * u of a fixed base profile, t sweep
};

std::string to_string(TestFamily family);
TestFamily family_from_string(const std::string& text);  // throws ParseError

struct VerifyConfig {
    QuadOptions quad;         // weighted-side quadrature control
    double slope_tol = 0.02;  // |d log ratio / d log param| below this counts as bounded

    // family grids; cones form the (fraction x width) product grid
    std::vector<double> cone_fractions{0.0, 0.2, 0.4, 0.6, 0.8};  // a = fraction * b
    std::vector<double> cone_widths = logspace(1e-2, 1e2, 5);
    std::vector<double> bump_widths = logspace(1e-2, 1e2, 9);
    std::vector<double> dilation_factors = logspace(1e-2, 1e2, 9);
    std::vector<double> amplitude_factors = logspace(1e-2, 1e2, 9);
    int bump_nodes = 129;  // sample count for the smooth bump profile

    // base profile for the dilate / amplitude sweeps; default is the smooth
    // bump of width 1
    std::optional<RadialProfile> base;
};

struct HarnessRow {
    std::string test_id;
    double param = 0.0;  // sweep parameter: width b, dilation lambda, or amplitude t
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;  // lhs / rhs, with 0/0 -> 0 and divergent lhs -> +inf
};

// A theoretical bound expression to compare the empirical constant against.
// `value` is the expression evaluated for the configuration at hand (for
// example max{ ||g||, ||g||^{1/P_Psi} } for a weighted-norm route); the
// universal prefactor in front of it is unknown and reported as `factor`.
struct BoundSpec {
    std::string route;
    double value = 0.0;
};

struct BoundComparison {
    std::string route;
    double bound = 0.0;      // the theoretical expression value
    double factor = 0.0;     // empirical_constant / bound, the free reported factor
    bool satisfied = false;  // ratios stayed bounded across the sweep (finite
                             // empirical constant, sweep slope within tolerance)
};

struct HarnessResult {
    std::string family;
    std::vector<HarnessRow> rows;
    double empirical_constant = 0.0;  // max of the row ratios
    std::string argmax_id;            // test_id attaining the maximum
    double log_slope = kNaN;          // least-squares slope of log ratio vs log param
    std::optional<BoundComparison> bound;
    std::string note;  // records the radial-family caveat
};

// Weighted modular N omega_N \int_0^top g(rho) Psi(u(rho)) rho^{N-1} drho
// with top = min(support radius, weight domain radius); the weight vanishes
// beyond its domain.  Requires a radial weight realization in the profile's
// dimension.  A non-integrable weight head at rho = 0 yields +inf.
double weighted_modular(const WeightProfile& w, const YoungFunction& psi, const RadialProfile& u,
                        const QuadOptions& quad = {});

// Gradient modular N omega_N \int Phi(|u'(rho)|) rho^{N-1} drho.  The slope
// is piecewise constant, so every segment integrates in closed form.
double gradient_modular(const YoungFunction& phi, const RadialProfile& u);

// Left side: Psi^{-1} of the weighted modular.
double modular_lhs(const WeightProfile& w, const YoungFunction& psi, const RadialProfile& u,
                   const QuadOptions& quad = {});

// Right side: Phi^{-1} of the gradient modular.
double modular_rhs(const YoungFunction& phi, const RadialProfile& u);

// Truncated cone: u = 1 on [0, a], linear down to u(b) = 0; a = 0 gives the
// plain cone.
RadialProfile cone_profile(double a, double b, int dim);

// Smooth bump exp(1 - 1/(1 - (rho/width)^2)) sampled on `nodes` radii; the
// value is 1 at the origin and decays smoothly to 0 at `width`.
RadialProfile bump_profile(double width, int dim, int nodes = 129);

// u(rho / lambda): the same values on radii scaled by lambda.
RadialProfile dilate_profile(const RadialProfile& u, double lambda);

// t * u: the same radii with values scaled by t >= 0.
RadialProfile scale_profile(const RadialProfile& u, double t);

// Run one family against the weight and the (Phi, Psi) pair in dimension
// `dim`.  When `bound` is given the result carries the comparison record.
HarnessResult run_family(const WeightProfile& w, const YoungFunction& phi, const YoungFunction& psi,
                         int dim, TestFamily family, const VerifyConfig& cfg = {},
                         const std::optional<BoundSpec>& bound = std::nullopt);

}  // namespace orlicz
