#pragma once

// Constrained minimization of the gradient functional
//
//   J(u) = \int Phi(|grad u|) dx   over   N_r = { u : G(u) = \int g Psi(|u|) dx = r }
//
// for radial profiles on a centered ball.  The minimum value lambda1(r) is an
// upper bound for the infimum over all admissible displacements (the search
// runs over radial profiles only); the Lagrange multiplier lambda_tilde is
// estimated through the discrete pairing <J'(u), u> / <G'(u), u>, and the
// stationarity defect of the discrete Euler-Lagrange system with that
// multiplier is reported as the residual.

#include <memory>
#include <string>
#include <vector>

#include "orlicz/numerics.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct EigenConfig {
    int nodes = 1200;             // uniform radial cells between 0 and the ball radius
    int max_iter = 200;
    double residual_tol = 1e-9;   // stop when the normalized stationarity defect drops below
    double decrease_tol = 1e-10;  // or when the relative decrease of J falls below
    double report_tol = 1e-6;     // residual above this at the iteration cap is an error
    int restart_probes = 1;       // extra runs from perturbed starts, compared not averaged
    double perturb_scale = 0.25;  // relative size of the start perturbation
    unsigned seed = 0x9e3779b9u;  // probe perturbations are deterministic
    QuadOptions quad;             // quadrature for the profile-level functionals
};

struct EigenResult {
    double level = kNaN;            // the constraint value r
    double lambda1 = kNaN;          // J at the minimizer (radial upper bound)
    double lambda_tilde = kNaN;     // multiplier estimate <J'(u),u> / <G'(u),u>
    double residual = kNaN;         // normalized discrete Euler-Lagrange defect
    int iterations = 0;
    double probe_deviation = kNaN;  // max relative lambda_tilde spread over restarts
    std::vector<double> j_history;  // J after every accepted step (nonincreasing)
    RadialProfile profile;          // nonnegative minimizing profile
};

// Iteration cap reached with the stationarity defect still above
// EigenConfig::report_tol; carries the best iterate found.
class MinimizationError : public std::runtime_error {
public:
    MinimizationError(const std::string& what, EigenResult best)
        : std::runtime_error(what), best_(std::make_shared<EigenResult>(std::move(best))) {}
    const EigenResult& best_iterate() const { return *best_; }

private:
    std::shared_ptr<const EigenResult> best_;
};

// J(u): the gradient modular (exact per segment, slopes are piecewise
// constant).
double j_phi(const YoungFunction& phi, const RadialProfile& u);

// G(u): the weighted modular of the displacement.
double g_psi(const WeightProfile& w, const YoungFunction& psi, const RadialProfile& u,
             const QuadOptions& quad = {});

// Scale u so the weighted modular hits the level r: returns t*u with
// G(t*u) = r.  Exact through homogeneity for pure-power Psi, otherwise a
// monotone bracketed solve.  G(u) = 0 is a degenerate-input error.
RadialProfile project_to_level(const WeightProfile& w, const YoungFunction& psi,
                               const RadialProfile& u, double r, const QuadOptions& quad = {});

// Minimize J over the discretized constraint set on the ball of the given
// radius: preconditioned projected descent from a projected cone start, with
// a backtracking line search and re-projection after every trial step.
EigenResult minimize_lambda1(const YoungFunction& phi, const YoungFunction& psi,
                             const WeightProfile& w, int dim, double radius, double r,
                             const EigenConfig& cfg = {});

}  // namespace orlicz
