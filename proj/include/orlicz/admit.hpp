#pragma once

// Admissibility machinery for weights: the two-parameter weighted-Hardy
// criteria, radial capacity of concentric balls with the capacity-based
// integral criterion, and the per-route admissibility report that pairs each
// inequality route's hypothesis checks with its norm.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct AdmitConfig {
    double eps_lo = 1e-6;        // scale-parameter window of the Hardy criteria
    double eps_hi = 1e6;
    int muck_per_decade = 8;     // coarse criterion grid density
    int muck_refine_per_decade = 32;
    int extension_rounds = 2;    // range doublings before declaring divergence
    bool with_muckenhoupt = true;
    bool with_capacity = false;
    double capacity_outer = 1.0;          // ball radius for the capacity criterion
    int capacity_grid = 19;               // inner radii tested (fractions of outer)
    int capacity_profile_nodes = 160;     // nodes of the reported minimizer profile
    NormConfig norm;
};

const AdmitConfig& default_admit_config();

struct MuckenhouptResult {
    double value = 0;       // criterion estimate (the certified bound seen)
    bool divergent = false; // sup kept growing under range extension
    double eps_arg = kNaN;  // scale parameter at the maximum
    double t_arg = kNaN;    // cutoff at the maximum
    GridSpec eps_grid;
    GridSpec t_grid;
};

// sup over (eps, t) of (integral of eps*w over (0,t)) * phi(integral of
// phi^{-1}(1/(eps v)) over (t, b))
MuckenhouptResult muckenhoupt_sup_same(const YoungFunction& f,
                                       const std::function<double(double)>& w,
                                       const std::function<double(double)>& v, double b,
                                       const AdmitConfig& cfg = default_admit_config());

// sup over (eps, r) of psi^{-1}(psi((1/eps) * weighted Luxemburg norm of 1/v
// on (r, b)) * integral of w over (0, r)) / phi^{-1}(1/eps)
MuckenhouptResult muckenhoupt_sup_general(const YoungFunction& phi, const YoungFunction& psi,
                                          const std::function<double(double)>& w,
                                          const std::function<double(double)>& v, double b,
                                          const AdmitConfig& cfg = default_admit_config());

struct CapacityResult {
    double inner = 0;     // radius of the inner ball held at level one
    double outer = 0;     // radius of the supporting ball
    double value = 0;     // minimal gradient modular
    double lagrange = 0;  // first-integral constant of the minimizer
    RadialProfile profile;
};

// Minimal modular of the gradient over radial profiles that are one on the
// inner ball and vanish at the outer radius, via the first integral
// rho^{N-1} phi(-u') = const.
CapacityResult capacity_ball(const YoungFunction& f, int dim, double inner, double outer,
                             const AdmitConfig& cfg = default_admit_config());

struct CapacityCriterion {
    double value = 0;      // largest mass-to-capacity ratio over the ball family
    bool divergent = false;
    double arg = kNaN;     // inner radius attaining the maximum
    std::vector<double> radii;
    std::vector<double> ratios;
};

// max over inner radii a of (integral of the weight over the ball of radius a)
// / psi(phi^{-1}(capacity of that ball))
CapacityCriterion capacity_criterion(const WeightProfile& w, const YoungFunction& phi,
                                     const YoungFunction& psi, int dim, double outer,
                                     const std::vector<double>& inner_radii,
                                     const AdmitConfig& cfg = default_admit_config());

enum class RouteVerdict { admissible, hypothesis_failed, norm_infinite };

const char* to_string(RouteVerdict v);

struct HypothesisStatus {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct RouteReport {
    std::string id;  // stable route identifiers T1.2, T1.3, T1.4, T1.5, T1.7
    std::vector<HypothesisStatus> hypotheses;
    NormReport norm;
    RouteVerdict verdict = RouteVerdict::hypothesis_failed;
    double constant = kNaN;  // route constant evaluated on the computed norm
};

struct AdmissibilityReport {
    std::vector<RouteReport> routes;
    std::optional<MuckenhouptResult> muckenhoupt;
    std::optional<CapacityCriterion> capacity;
};

// Evaluate every admissibility route for the weight: hypothesis checks,
// route norm, verdict, and the constant expression on the norm.  `omega`
// (when finite) must agree with the weight's own domain measure.
AdmissibilityReport admissibility_report(const WeightProfile& w, const YoungFunction& phi,
                                         const YoungFunction& psi, int dim, double omega = kNaN,
                                         const AdmitConfig& cfg = default_admit_config());

}  // namespace orlicz
