#pragma once

// Shared numeric kernel: bracketed root finding on monotone functions,
// Gauss-Legendre panels with adaptive refinement, improper integrals decided
// by endpoint power fits, log-log slope fits and small grid helpers.

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace orlicz {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double lo, double hi)
        : std::runtime_error(what + " [last bracket " + std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          bracket_lo(lo), bracket_hi(hi) {}
    double bracket_lo;
    double bracket_hi;
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// a structural precondition on the input functions does not hold
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// volume of the unit ball in dimension N
double unit_ball_volume(int dim);

std::vector<double> logspace(double lo, double hi, std::size_t n);

// geometric grid covering [lo, hi] with the given density per decade
std::vector<double> geometric_grid(double lo, double hi, int points_per_decade);

struct BisectOptions {
    double rtol = 1e-10;
    double atol = 1e-14;
    int max_iter = 200;
};

// Solve f(x) = target for nondecreasing f on a given bracket using the
// Illinois variant of regula falsi with a bisection fallback.
template <class F>
double solve_increasing(F&& f, double target, double lo, double hi, const BisectOptions& opt = {}) {
    double flo = f(lo) - target;
    double fhi = f(hi) - target;
    if (flo > 0.0 && fhi > 0.0) throw NonConvergence("solve_increasing: bracket above target", lo, hi);
    if (flo < 0.0 && fhi < 0.0) throw NonConvergence("solve_increasing: bracket below target", lo, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    double a = lo, b = hi, fa = flo, fb = fhi;
    int side = 0;
    for (int it = 0; it < opt.max_iter; ++it) {
        double mid;
        if (std::isfinite(fa) && std::isfinite(fb) && fb != fa) {
            mid = a - fa * (b - a) / (fb - fa);
            if (!(mid > a && mid < b)) mid = 0.5 * (a + b);
        } else {
            mid = 0.5 * (a + b);
        }
        double fm = f(mid) - target;
        if (fm == 0.0 || b - a <= opt.atol + opt.rtol * std::fabs(mid)) return mid;
        if (fm < 0.0) {
            a = mid; fa = fm;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = mid; fb = fm;
            if (side == +1) fa *= 0.5;
            side = +1;
        }
    }
    return 0.5 * (a + b);
}

// Expand a seed geometrically until [lo, hi] brackets the target of a
// nondecreasing f.  Throws NonConvergence with the last bracket attempted.
template <class F>
std::pair<double, double> bracket_increasing(F&& f, double target, double seed_lo = 1e-8, double seed_hi = 1.0,
                                             int max_expand = 200) {
    double lo = seed_lo, hi = seed_hi;
    int n = 0;
    while (f(lo) > target) {
        lo *= 0.125;
        if (++n > max_expand || lo < 1e-300) throw NonConvergence("bracket_increasing: no lower bracket", lo, hi);
    }
    n = 0;
    while (f(hi) < target) {
        hi *= 8.0;
        if (++n > max_expand || hi > 1e300) throw NonConvergence("bracket_increasing: no upper bracket", lo, hi);
    }
    return {lo, hi};
}

template <class F>
double invert_increasing(F&& f, double target, double seed_lo = 1e-8, double seed_hi = 1.0,
                         const BisectOptions& opt = {}) {
    auto [lo, hi] = bracket_increasing(f, target, seed_lo, seed_hi);
    return solve_increasing(f, target, lo, hi, opt);
}

struct GoldenResult {
    double x = 0;
    double value = -kInf;
};

// Golden-section search for the maximum of f on [a, b].
template <class F>
GoldenResult golden_max(F&& f, double a, double b, int iters = 90) {
    const double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters && (b - a) > 1e-14 * (std::fabs(a) + std::fabs(b)); ++i) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    GoldenResult r;
    if (f1 >= f2) { r.x = x1; r.value = f1; } else { r.x = x2; r.value = f2; }
    return r;
}

namespace detail {
inline constexpr double kGl8x[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363};
inline constexpr double kGl8w[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
inline constexpr double kGl16x[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
                                     0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline constexpr double kGl16w[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
                                     0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};
}  // namespace detail

template <class F>
double gl8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 4; ++i)
        s += detail::kGl8w[i] * (f(c - h * detail::kGl8x[i]) + f(c + h * detail::kGl8x[i]));
    return s * h;
}

template <class F>
double gl16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += detail::kGl16w[i] * (f(c - h * detail::kGl16x[i]) + f(c + h * detail::kGl16x[i]));
    return s * h;
}

struct QuadOptions {
    double rtol = 1e-9;
    double atol = 1e-300;
    int max_depth = 40;
    // widen the divergence band for fitted endpoint exponents: integrands whose
    // local power falls within this distance of the critical -1 are declared
    // divergent.  Zero keeps the exact boundary; callers working with sampled
    // functions opt in so interpolation noise cannot tip an exactly critical
    // integrand onto the convergent side.
    double critical_margin = 0.0;
};

namespace detail {
template <class F>
double adapt_panel(F& f, double a, double b, double whole, const QuadOptions& opt, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gl16(f, a, m);
    const double right = gl16(f, m, b);
    const double sum = left + right;
    if (depth >= opt.max_depth) return sum;
    if (std::fabs(sum - whole) <= opt.atol + opt.rtol * std::fabs(sum)) return sum;
    return adapt_panel(f, a, m, left, opt, depth + 1) + adapt_panel(f, m, b, right, opt, depth + 1);
}
}  // namespace detail

// Adaptive Gauss-Legendre quadrature on a finite interval.
template <class F>
double integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    if (!(b > a)) return 0.0;
    return detail::adapt_panel(f, a, b, gl16(f, a, b), opt, 0);
}

struct ImproperResult {
    double value = 0.0;
    bool divergent = false;
    double exponent = 0.0;  // fitted local power of the integrand at the endpoint
};

// Fit the local power exponent of f near zero by sampling a short geometric
// ladder below `scale`.  Returns 0 when f vanishes there.
template <class F>
double fit_power_exponent_zero(F&& f, double scale) {
    const double t2 = scale, t1 = scale * 0.25, t0 = scale * 0.0625;
    const double f0 = f(t0), f1 = f(t1), f2 = f(t2);
    if (!(f0 > 0.0) || !(f1 > 0.0) || !(f2 > 0.0)) return 0.0;
    const double s1 = std::log(f1 / f0) / std::log(t1 / t0);
    const double s2 = std::log(f2 / f1) / std::log(t2 / t1);
    return 0.5 * (s1 + s2);
}

// Integral of f over (0, a] where f may blow up like a power at zero.  The
// local exponent decides convergence; the singular head is summed in
// geometric panels with an analytic closing term.
template <class F>
ImproperResult integrate_to_zero(F&& f, double a, const QuadOptions& opt = {}) {
    ImproperResult res;
    if (!(a > 0.0)) return res;
    const double probe = a * 1e-3;
    res.exponent = fit_power_exponent_zero(f, probe);
    if (res.exponent <= -1.0 + opt.critical_margin) {
        res.divergent = true;
        res.value = kInf;
        return res;
    }
    double total = integrate(f, probe, a, opt);
    // geometric descent below the probe point
    double hi = probe;
    for (int k = 0; k < 400; ++k) {
        const double lo = hi * 0.5;
        const double piece = integrate(f, lo, hi, opt);
        total += piece;
        hi = lo;
        if (std::fabs(piece) <= opt.atol + 0.25 * opt.rtol * std::fabs(total) && k > 4) break;
        if (hi < 1e-280) break;
    }
    // analytic closing term under the local power model f ~ c t^m
    const double m = fit_power_exponent_zero(f, hi);
    const double fh = f(hi);
    if (fh > 0.0 && m > -1.0 + opt.critical_margin) total += fh * hi / (m + 1.0);
    res.value = total;
    return res;
}

// Integral of f over [a, infinity) via the substitution s = 1/sigma.
template <class F>
ImproperResult integrate_to_inf(F&& f, double a, const QuadOptions& opt = {}) {
    if (!(a > 0.0)) throw DomainError("integrate_to_inf: lower endpoint must be positive");
    auto g = [&f](double sigma) { return f(1.0 / sigma) / (sigma * sigma); };
    ImproperResult res = integrate_to_zero(g, 1.0 / a, opt);
    // translate the sigma-side exponent back to the decay power of f
    res.exponent = -(res.exponent + 2.0);
    return res;
}

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// least-squares slope of log y against log x; entries with y <= 0 are skipped
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace orlicz
