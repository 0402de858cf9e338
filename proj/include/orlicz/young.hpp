#pragma once

// Young functions Phi(t) = integral of a nondecreasing density phi over
// (0, t), with the operations the rest of the toolkit is built on: pointwise
// evaluation, the two generalised inverses, conjugation, the growth index
// sup t phi(t)/Phi(t), doubling and submultiplicativity certification, and
// endpoint integrability tests in a given dimension.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/numerics.hpp"
#include "orlicz/table.hpp"

namespace orlicz {

struct YoungConfig {
    double check_lo = 1e-6;       // certification grids live on [check_lo, check_hi]
    double check_hi = 1e6;
    int index_per_decade = 32;    // growth-index grid density
    int delta_per_decade = 25;    // doubling / submultiplicativity grid density
    double delta_c_max = 1e12;    // constants above this falsify the condition
    double table_lo = 1e-8;       // sampling window for derived tabulated functions
    double table_hi = 1e8;
    int table_per_decade = 64;
    double fit_margin = 5e-3;     // exponent distance below which a verdict is inconclusive
};

const YoungConfig& default_young_config();

struct GridSpec {
    double lo = 0;
    double hi = 0;
    int per_decade = 0;
    bool clamped_to_table = false;  // grid was cut down to the sampled range
};

struct DoublingCheck {
    bool consistent = false;
    double constant = kNaN;  // smallest admissible constant seen on the grid
    double witness = kNaN;   // grid point where the constant cap was exceeded
    GridSpec grid;
};

struct SubmultCheck {
    bool consistent = false;
    double constant = kNaN;
    double witness_s = kNaN;
    double witness_t = kNaN;
    GridSpec grid;
};

struct PIndexResult {
    double value = kNaN;  // +inf when the grid sup keeps growing with the range
    bool finite = false;
    GridSpec grid;
};

struct GrowthCertificate {
    PIndexResult index;
    DoublingCheck delta2;
    SubmultCheck delta_prime;
};

enum class Verdict3 { holds, fails, inconclusive };

const char* to_string(Verdict3 v);

struct IntegrabilityCheck {
    Verdict3 verdict = Verdict3::inconclusive;
    double integral = kNaN;            // finite part when the verdict is holds
    double integrand_exponent = kNaN;  // fitted power of the integrand at the endpoint
};

// asymptotic comparison Phi(k t) / Psi(t) -> 0 for every k
struct EssentialOrder {
    bool holds = false;
    double worst_slope = kNaN;  // largest fitted tail slope over the tested k
};

// convexity of Psi o Phi^{-1}, the sufficient condition for splitting sums
// through the composition with a uniform constant
struct DominationCheck {
    bool holds = false;
    double splitting_constant = kNaN;  // max of (h(a)+h(b))/h(a+b) on the sample
};

class YoungFunction {
public:
    static YoungFunction power(double p, double coeff = 1.0);
    static YoungFunction sum_power(double p, double q);
    static YoungFunction max_power(double p, double q, double cp = 1.0, double cq = 1.0);
    static YoungFunction power_log(double p);
    // density samples (t_k, phi_k); canonical form remembers `origin` so file
    // backed tables serialize to their path
    static YoungFunction tabulated(const std::vector<double>& t, const std::vector<double>& phi,
                                   const std::string& origin = "");
    static YoungFunction from_table(DensityTable table, const std::string& label);

    double operator()(double t) const;  // Phi(t); negative arguments are a domain error
    double density(double t) const;     // phi(t), right-continuous at jumps
    double inverse(double y, double hint = kNaN) const;
    double density_inverse(double y) const;  // generalised right-continuous inverse of phi

    // conjugate via the Legendre transform: closed form for pure powers,
    // otherwise a table of the inverse density with breakpoints carried over
    YoungFunction conjugate(const YoungConfig& cfg = default_young_config()) const;

    const std::string& spec_string() const;
    bool is_tabulated() const;
    std::optional<std::pair<double, double>> table_range() const;
    // abscissae where the density has a jump or kink
    std::vector<double> density_breakpoints() const;

    struct Impl;

private:
    explicit YoungFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

PIndexResult p_index(const YoungFunction& f, const YoungConfig& cfg = default_young_config());
DoublingCheck check_delta2(const YoungFunction& f, const YoungConfig& cfg = default_young_config());
SubmultCheck check_delta_prime(const YoungFunction& f, const YoungConfig& cfg = default_young_config());
GrowthCertificate certify_growth(const YoungFunction& f, const YoungConfig& cfg = default_young_config());

// convergence of integral over (0,1) of (s / Phi(s))^{1/(N-1)}
IntegrabilityCheck integrability_at_zero(const YoungFunction& f, int dim,
                                         const YoungConfig& cfg = default_young_config());
// convergence of integral over (1, inf) of the same integrand
IntegrabilityCheck integrability_at_infinity(const YoungFunction& f, int dim,
                                             const YoungConfig& cfg = default_young_config());

EssentialOrder essentially_smaller(const YoungFunction& f, const YoungFunction& g,
                                   const YoungConfig& cfg = default_young_config());
DominationCheck composition_dominates(const YoungFunction& f, const YoungFunction& g,
                                      const YoungConfig& cfg = default_young_config());

}  // namespace orlicz
