#pragma once

// Dimensional conjugation of a Young function Phi in dimension N.  The
// weighted transform H(t) integrates the conjugate density against
// s^{-(1+N')} with N' = N/(N-1); its monotone inverse feeds the dimensional
// conjugate Phi_N, and the transfer function B = Phi_N o Phi^{-1} carries
// Phi-levels to Phi_N-levels.  Everything derived here is tabulated and
// immutable, so a constructed bundle is shareable across threads.

#include <utility>
#include <vector>

#include "orlicz/table.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct ConjugateBundle {
    YoungFunction base;             // Phi
    int dimension;                  // N >= 2
    YoungFunction base_conjugate;   // conjugate of Phi used inside the transform
    MonotoneCurve h_curve;          // H and, through inversion, H^{-1}
    std::vector<std::pair<double, double>> h_table;  // (t, H(t)) at the quadrature nodes
    YoungFunction phi_n;            // dimensional conjugate, tabulated
    YoungFunction b_phi;            // transfer function Phi_N o Phi^{-1}, tabulated
    YoungFunction b_phi_complement; // conjugate of the transfer function
    // the transfer function need not be convex (its density can dip where the
    // base density jumps); the table stores the monotone envelope and this
    // flag records whether a dip was seen
    bool b_phi_convex = true;

    double h(double t) const { return h_curve(t); }
    double h_inverse(double y) const { return h_curve.inverse(y); }
};

// Convergence of the transform integrand at zero: integral over (0,1) of
// conj(s) / s^{1+N'}.  Bundle construction requires a `holds` verdict.
IntegrabilityCheck check_transform_hypothesis(const YoungFunction& f, int dim,
                                              const YoungConfig& cfg = default_young_config());

// Pointwise H(t) by direct quadrature (head handled by a power fit).
// Throws HypothesisError when the integrand diverges at zero.
double h_phi(const YoungFunction& f, int dim, double t, const YoungConfig& cfg = default_young_config());

ConjugateBundle make_conjugate_bundle(const YoungFunction& f, int dim,
                                      const YoungConfig& cfg = default_young_config());

// Convenience wrappers over bundle construction.
YoungFunction sobolev_conjugate(const YoungFunction& f, int dim,
                                const YoungConfig& cfg = default_young_config());
std::pair<YoungFunction, YoungFunction> transfer_pair(const YoungFunction& f, int dim,
                                                      const YoungConfig& cfg = default_young_config());

}  // namespace orlicz
