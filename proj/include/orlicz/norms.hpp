#pragma once

// Norm constructions over rearranged weights: the Luxemburg norm, the
// weak-type supremum norm, the eta-weighted supremum norms generated by one
// or two Young functions, the plain L1 norm, and the Orlicz norm against the
// complement of the transfer function.  Hypothesis failures (growth index too
// large, diverging eta limits) never abort a computation; they are recorded
// in the report so downstream admissibility summaries can say exactly which
// precondition broke.

#include <functional>
#include <memory>
#include <string>

#include "orlicz/conjugate.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct NormConfig {
    double sup_lo = 1e-8;   // artificial window for suprema over (0, |domain|)
    double sup_hi = 1e8;
    int sup_per_decade = 32;
    int eta_per_decade = 16;          // node density of cached tail integrals
    double divergence_growth = 5e-3;  // growth across window extensions that marks +inf
    YoungConfig young;
};

const NormConfig& default_norm_config();

enum class NormKind { luxemburg, phi_infty, x_phi, x_phi_psi, l1, orlicz_bphi };

const char* to_string(NormKind k);

struct NormReport {
    double value = 0;
    NormKind kind = NormKind::luxemburg;
    GridSpec grid;
    bool finite = true;
    double sup_arg = kNaN;  // where the supremum was attained (when applicable)
    bool hypothesis_ok = true;
    std::string hypothesis_note;
};

// Supremum of fn over [lo, hi] on a refined geometric grid with golden polish
// around interior maxima.  Ends marked non-structural may be extended; a sup
// that keeps climbing through three extensions is reported as +inf.
struct SupScan {
    double value = 0;
    double arg = kNaN;
    bool finite = true;
    GridSpec grid;
};

SupScan scan_sup(const std::function<double(double)>& fn, double lo, double hi, int per_decade,
                 bool lo_structural, bool hi_structural, double divergence_growth = 5e-3);

// Recognize a pure power c t^p from its canonical spec string.  Criteria with
// nested Luxemburg solves use this for closed-form modulars.
bool power_form(const YoungFunction& f, double* p, double* coeff);

// --- Luxemburg norms -------------------------------------------------------

// Core solver: modular is nonincreasing in lambda; returns the infimum of
// {lambda : modular(lambda) <= 1} (0 for a vanishing modular, +inf when the
// modular stays above 1 for every lambda).
double luxemburg_from_modular(const std::function<double(double)>& modular, double seed = 1.0);

// constant profile of the given value on a set of the given measure
double luxemburg_scalar(const YoungFunction& f, double value, double measure);

// norm of zeta(s) = s^{1/N - 1} over the interval (r, omega) with respect to f
double luxemburg_zeta(const YoungFunction& f, int dim, double r, double omega);

// norm of a weight over its domain, computed through its rearrangement
double luxemburg_weight(const YoungFunction& f, const WeightProfile& w);

// --- eta curves ------------------------------------------------------------

// eta(r) = r phi(T(r)) where T(r) integrates 1/G over (r, omega) and
// G(s) = Phi(zeta) conj(1/Phi(zeta)) at zeta = s^{1/N-1}.  The tail integral
// is cached on a node grid; queries patch the local remainder by quadrature.
class EtaCurve {
public:
    EtaCurve(const YoungFunction& f, int dim, double omega,
             const NormConfig& cfg = default_norm_config());
    double g_value(double s) const;        // G(s)
    double tail_integral(double r) const;  // integral of 1/G over (r, omega)
    double eta(double r) const;
    bool divergent() const;  // tail integral infinite for every r
    double omega() const;
    int dimension() const;

    struct Impl;

private:
    std::shared_ptr<const Impl> impl_;
};

// eta(r) = r psi(norm of zeta over (r, omega) with respect to conj(phi)),
// with warm-started Luxemburg solves along increasing r.
class EtaPsiCurve {
public:
    EtaPsiCurve(const YoungFunction& phi, const YoungFunction& psi, int dim, double omega,
                const NormConfig& cfg = default_norm_config());
    double zeta_norm(double r) const;
    double eta(double r) const;
    bool divergent() const;
    double omega() const;
    int dimension() const;

    struct Impl;

private:
    std::shared_ptr<Impl> impl_;
};

// Behavior of an eta curve as r -> 0: `holds` when the limit is finite
// (decaying or bounded), `fails` when it climbs, `inconclusive` inside the
// slope margin when the values are not visibly bounded.
struct EtaLimitCheck {
    Verdict3 verdict = Verdict3::inconclusive;
    double fitted_slope = kNaN;
    double sample_value = kNaN;  // eta at the smallest probed r
};

EtaLimitCheck check_eta_limit(const std::function<double(double)>& eta, double margin = 5e-3);
EtaLimitCheck check_eta_limit(const EtaCurve& curve);
EtaLimitCheck check_eta_limit(const EtaPsiCurve& curve);

// --- pointwise convenience wrappers ---------------------------------------

double g_phi(const YoungFunction& f, int dim, double s,
             const YoungConfig& cfg = default_young_config());
double eta_phi(const YoungFunction& f, int dim, double omega, double r,
               const NormConfig& cfg = default_norm_config());
double eta_phi_psi(const YoungFunction& phi, const YoungFunction& psi, int dim, double omega,
                   double r, const NormConfig& cfg = default_norm_config());

// --- norm reports ----------------------------------------------------------

NormReport norm_luxemburg(const WeightProfile& w, const YoungFunction& f);
NormReport norm_phi_infty(const WeightProfile& w, const YoungFunction& f, int dim,
                          const NormConfig& cfg = default_norm_config());
NormReport norm_x_phi(const WeightProfile& w, const YoungFunction& f, int dim,
                      const NormConfig& cfg = default_norm_config());
NormReport norm_x_phi_psi(const WeightProfile& w, const YoungFunction& phi, const YoungFunction& psi,
                          int dim, const NormConfig& cfg = default_norm_config());
NormReport norm_l1(const WeightProfile& w);
NormReport norm_orlicz_bphi(const WeightProfile& w, const ConjugateBundle& bundle);

}  // namespace orlicz
