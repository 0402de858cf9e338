#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/admit.hpp"
#include "orlicz/cli.hpp"
#include "orlicz/conjugate.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/numerics.hpp"
#include "orlicz/young.hpp"

namespace orlicz {
namespace {

double fitted_slope(const std::vector<double>& xs, const std::function<double(double)>& fn) {
    std::vector<double> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(fn(x));
    return fit_loglog(xs, ys).slope;
}

// largest relative deviation of fn over the samples from its first value
double shape_spread(const std::vector<double>& xs, const std::function<double(double)>& fn) {
    const double base = fn(xs.front());
    double spread = 0.0;
    for (double x : xs) spread = std::max(spread, std::fabs(fn(x) / base - 1.0));
    return spread;
}

// largest deviation of fn from exactly one over the samples
double unit_deviation(const std::vector<double>& xs, const std::function<double(double)>& fn) {
    double dev = 0.0;
    for (double x : xs) dev = std::max(dev, std::fabs(fn(x) - 1.0));
    return dev;
}

}  // namespace

std::vector<ExampleRow> run_examples() {
    std::vector<ExampleRow> rows;
    auto add = [&rows](std::string id, std::string detail, double measured, double target,
                       double tol) {
        ExampleRow row{std::move(id), std::move(detail), measured, target, tol, false};
        row.pass = std::isfinite(measured) &&
                   std::fabs(measured - target) <= tol * std::max(1.0, std::fabs(target));
        rows.push_back(std::move(row));
    };
    auto add_verdict = [&add](std::string id, std::string detail, bool as_expected) {
        add(std::move(id), std::move(detail), as_expected ? 1.0 : 0.0, 1.0, 0.0);
    };

    // fitted exponent of the growth transform of a pure power: p(N-1)/(N(p-1))
    {
        const std::vector<double> ss = logspace(1e-3, 1e3, 25);
        add("growth-exponent-p2-n3",
            "pow:p=2, dim 3: fitted log-log exponent of the growth transform",
            fitted_slope(ss, [](double s) { return g_phi(YoungFunction::power(2.0), 3, s); }),
            4.0 / 3.0, 1e-3);
        add("growth-exponent-p3-n4",
            "pow:p=3, dim 4: fitted log-log exponent of the growth transform",
            fitted_slope(ss, [](double s) { return g_phi(YoungFunction::power(3.0), 4, s); }),
            9.0 / 8.0, 1e-3);
    }

    // eta curve of a pure power below the dimension on the whole space: slope p/N
    {
        const std::vector<double> rs = logspace(1e-5, 1e-1, 17);
        const EtaCurve c23(YoungFunction::power(2.0), 3, kInf);
        add("eta-slope-p2-n3", "pow:p=2, dim 3, whole space: fitted eta slope",
            fitted_slope(rs, [&](double r) { return c23.eta(r); }), 2.0 / 3.0, 1e-3);
        const EtaCurve c24(YoungFunction::power(2.0), 4, kInf);
        add("eta-slope-p2-n4", "pow:p=2, dim 4, whole space: fitted eta slope",
            fitted_slope(rs, [&](double r) { return c24.eta(r); }), 1.0 / 2.0, 1e-3);
    }

    // exponent equal to the dimension on a finite domain:
    // eta(r) proportional to r log(omega/r)^(N-1)
    {
        const double omega = 10.0;
        const EtaCurve curve(YoungFunction::power(3.0), 3, omega);
        add("eta-log-constancy-p3-n3",
            "pow:p=3, dim 3, domain measure 10: spread of eta / (r log(omega/r)^2)",
            shape_spread({1e-4, 1e-2, 1e-1},
                         [&](double r) {
                             const double l = std::log(omega / r);
                             return curve.eta(r) / (r * l * l);
                         }),
            0.0, 1e-2);
    }

    // generic finite-domain branch: eta(r) proportional to
    // r |r^beta - omega^beta|^(p-1) with beta = (p-N)/(N(p-1))
    {
        const double omega = 10.0;
        const EtaCurve below(YoungFunction::power(2.0), 3, omega);
        add("eta-shape-constancy-p2-n3",
            "pow:p=2, dim 3, domain measure 10: spread of eta / (r |r^b - omega^b|)",
            shape_spread({1e-4, 1e-2, 0.5},
                         [&](double r) {
                             const double beta = -1.0 / 3.0;
                             const double d = std::fabs(std::pow(r, beta) - std::pow(omega, beta));
                             return below.eta(r) / (r * d);
                         }),
            0.0, 1e-2);
        const EtaCurve above(YoungFunction::power(4.0), 3, omega);
        add("eta-shape-constancy-p4-n3",
            "pow:p=4, dim 3, domain measure 10: spread of eta / (r |r^b - omega^b|^3)",
            shape_spread({1e-4, 1e-2, 0.5},
                         [&](double r) {
                             const double beta = 1.0 / 9.0;
                             const double d = std::fabs(std::pow(r, beta) - std::pow(omega, beta));
                             return above.eta(r) / (r * d * d * d);
                         }),
            0.0, 1e-2);
    }

    // the borderline radial weight |x|^{-p}: the eta-weighted norm factors
    // into eta(1) times the weak-type constant (N/(N-p)) omega_N^{p/N}
    {
        const YoungFunction f = YoungFunction::power(2.0);
        const NormReport rep = norm_x_phi(WeightProfile::radial_power(2.0, 3), f, 3);
        const double expected =
            eta_phi(f, 3, kInf, 1.0) * 3.0 * std::pow(unit_ball_volume(3), 2.0 / 3.0);
        add("weak-norm-identity-a2-p2-n3",
            "hardy:a=2, pow:p=2, dim 3, whole space: eta-weighted norm over its closed form",
            rep.value / expected, 1.0, 1e-3);
    }

    // exponent above the dimension on a finite domain: the eta-weighted norm
    // of a constant is the integral norm times a fixed factor
    {
        const YoungFunction f = YoungFunction::power(4.0);
        auto ratio = [&](double c) {
            const WeightProfile w = WeightProfile::constant(c, 2.0);
            return norm_x_phi(w, f, 3).value / norm_l1(w).value;
        };
        add("integral-norm-equivalence-p4-n3",
            "pow:p=4, dim 3, domain measure 2: norm-to-integral ratio across constants",
            ratio(2.0) / ratio(5.0), 1.0, 1e-2);
    }

    // two-function eta on the whole space: slope (pq + N(p-q))/(Np)
    {
        const std::vector<double> rs = logspace(1e-5, 1e-1, 17);
        const EtaPsiCurve c234(YoungFunction::power(2.0), YoungFunction::power(3.0), 4, kInf);
        add("eta2-slope-p2-q3-n4", "pow:p=2 with pow:p=3, dim 4, whole space: fitted eta slope",
            fitted_slope(rs, [&](double r) { return c234.eta(r); }), 1.0 / 4.0, 1e-3);
        const EtaPsiCurve c245(YoungFunction::power(2.0), YoungFunction::power(4.0), 5, kInf);
        add("eta2-slope-p2-q4-n5", "pow:p=2 with pow:p=4, dim 5, whole space: fitted eta slope",
            fitted_slope(rs, [&](double r) { return c245.eta(r); }), -1.0 / 5.0, 1e-3);
    }

    // two-function eta with the base exponent at the dimension:
    // eta(r) proportional to r log(omega/r)^(q (N-1)/N)
    {
        const double omega = 20.0;
        const EtaPsiCurve curve(YoungFunction::power(2.0), YoungFunction::power(3.0), 2, omega);
        add("eta2-log-constancy-p2-q3-n2",
            "pow:p=2 with pow:p=3, dim 2, domain measure 20: spread of eta / (r log(omega/r)^1.5)",
            shape_spread({1e-4, 1e-2, 1.0},
                         [&](double r) {
                             return curve.eta(r) / (r * std::pow(std::log(omega / r), 1.5));
                         }),
            0.0, 1e-2);
    }

    // complement of max{t^2/2, t^3/3}: exactly t^2/2 below the branch point,
    // and (t^{3/2} - 1)/(3/2) + 1/2 up to a vanishing relative offset at
    // large argument
    {
        const YoungFunction fc = YoungFunction::max_power(2.0, 3.0, 0.5, 1.0 / 3.0).conjugate();
        add("complement-small-branch-p2-q3",
            "complement of max(t^2/2, t^3/3): deviation from t^2/2 on (0, 1)",
            unit_deviation(logspace(1e-3, 0.9, 13), [&](double t) { return fc(t) / (0.5 * t * t); }),
            0.0, 1e-3);
        add("complement-large-branch-p2-q3",
            "complement of max(t^2/2, t^3/3): deviation from (t^1.5 - 1)/1.5 + 1/2 at large t",
            unit_deviation({1e2, 1e3, 1e4},
                           [&](double t) {
                               return fc(t) / ((std::pow(t, 1.5) - 1.0) / 1.5 + 0.5);
                           }),
            0.0, 1e-3);
        add_verdict("complement-integrability-p2-q3",
                    "complement of max(t^2/2, t^3/3), dim 3: head integrability holds",
                    integrability_at_zero(fc, 3).verdict == Verdict3::holds);
    }

    // composing the larger two-branch function with the inverse of the power
    // stays convex, so sums split through the composition
    add_verdict("composition-domination-p2-q3",
                "pow:p=2 into maxpow:p=2,q=3: composed function convex",
                composition_dominates(YoungFunction::power(2.0),
                                      YoungFunction::max_power(2.0, 3.0))
                    .holds);

    // two-branch second function against pow:p=2 in dimension 3: the eta
    // limit at zero holds exactly up to the upper exponent Np/(N-p) = 6
    {
        const YoungFunction phi = YoungFunction::power(2.0);
        const EtaPsiCurve at_crit(phi, YoungFunction::max_power(2.0, 6.0), 3, kInf);
        add_verdict("eta2-limit-at-critical-p2-n3",
                    "pow:p=2 with maxpow:p=2,q=6, dim 3: eta limit at zero holds",
                    check_eta_limit(at_crit).verdict == Verdict3::holds);
        const EtaPsiCurve beyond(phi, YoungFunction::max_power(2.0, 6.5), 3, kInf);
        add_verdict("eta2-limit-beyond-critical-p2-n3",
                    "pow:p=2 with maxpow:p=2,q=6.5, dim 3: eta limit at zero fails",
                    check_eta_limit(beyond).verdict == Verdict3::fails);
    }

    // a constant weight on a finite domain in low dimension is admissible
    // through the route that only needs the integral norm
    {
        const AdmissibilityReport report =
            admissibility_report(WeightProfile::constant(1.0, 1.0, 2), YoungFunction::power(3.0),
                                 YoungFunction::power(4.0), 2, 1.0);
        bool admissible = false;
        for (const RouteReport& route : report.routes)
            if (route.id == "T1.5") admissible = route.verdict == RouteVerdict::admissible;
        add_verdict("route-admissible-p3-q4-n2",
                    "const:c=1,m=1, pow:p=3 with pow:p=4, dim 2: route T1.5 admissible",
                    admissible);
    }

    return rows;
}

}  // namespace orlicz
