#include "orlicz/young.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace orlicz {

namespace {

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double checked_pow(double t, double e) { return std::pow(t, e); }

}  // namespace

const YoungConfig& default_young_config() {
    static const YoungConfig cfg{};
    return cfg;
}

const char* to_string(Verdict3 v) {
    switch (v) {
        case Verdict3::holds: return "holds";
        case Verdict3::fails: return "fails";
        default: return "inconclusive";
    }
}

struct YoungFunction::Impl {
    enum class Kind { power, sum_power, max_power, power_log, table };
    Kind kind = Kind::power;
    double p = 2, q = 2, cp = 1, cq = 1;
    double t0 = 0;  // max_power branch point
    std::optional<DensityTable> tab;
    std::string spec;
};

using Kind = YoungFunction::Impl::Kind;

YoungFunction YoungFunction::power(double p, double coeff) {
    if (!(p > 1.0)) throw DomainError("power family: exponent must exceed 1");
    if (!(coeff > 0.0)) throw DomainError("power family: coefficient must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::power;
    impl->p = p;
    impl->cp = coeff;
    impl->spec = "pow:p=" + fmt_num(p) + (coeff == 1.0 ? "" : ",c=" + fmt_num(coeff));
    return YoungFunction(impl);
}

YoungFunction YoungFunction::sum_power(double p, double q) {
    if (!(p > 1.0) || !(q > 1.0)) throw DomainError("sum_power family: exponents must exceed 1");
    if (p > q) std::swap(p, q);
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::sum_power;
    impl->p = p;
    impl->q = q;
    impl->spec = "sumpow:p=" + fmt_num(p) + ",q=" + fmt_num(q);
    return YoungFunction(impl);
}

YoungFunction YoungFunction::max_power(double p, double q, double cp, double cq) {
    if (!(p > 1.0) || !(q > 1.0)) throw DomainError("max_power family: exponents must exceed 1");
    if (!(cp > 0.0) || !(cq > 0.0)) throw DomainError("max_power family: coefficients must be positive");
    if (p > q) {
        std::swap(p, q);
        std::swap(cp, cq);
    }
    if (std::fabs(p - q) < 1e-12) return power(p, std::max(cp, cq));
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::max_power;
    impl->p = p;
    impl->q = q;
    impl->cp = cp;
    impl->cq = cq;
    impl->t0 = std::pow(cp / cq, 1.0 / (q - p));
    impl->spec = "maxpow:p=" + fmt_num(p) + ",q=" + fmt_num(q) +
                 (cp == 1.0 ? "" : ",cp=" + fmt_num(cp)) + (cq == 1.0 ? "" : ",cq=" + fmt_num(cq));
    return YoungFunction(impl);
}

YoungFunction YoungFunction::power_log(double p) {
    if (!(p > 1.0)) throw DomainError("power_log family: exponent must exceed 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::power_log;
    impl->p = p;
    impl->spec = "powlog:p=" + fmt_num(p);
    return YoungFunction(impl);
}

YoungFunction YoungFunction::tabulated(const std::vector<double>& t, const std::vector<double>& phi,
                                       const std::string& origin) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::table;
    impl->tab = DensityTable::from_samples(t, phi);
    impl->spec = origin.empty() ? "table:<memory>" : "table:" + origin;
    return YoungFunction(impl);
}

YoungFunction YoungFunction::from_table(DensityTable table, const std::string& label) {
    auto impl = std::make_shared<Impl>();
    impl->kind = Kind::table;
    impl->tab = std::move(table);
    impl->spec = label;
    return YoungFunction(impl);
}

double YoungFunction::operator()(double t) const {
    if (t < 0.0) throw DomainError("Young function: negative argument");
    if (t == 0.0) return 0.0;
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::power: return im.cp * checked_pow(t, im.p);
        case Kind::sum_power: return checked_pow(t, im.p) + checked_pow(t, im.q);
        case Kind::max_power: return std::max(im.cp * checked_pow(t, im.p), im.cq * checked_pow(t, im.q));
        case Kind::power_log: return checked_pow(t, im.p) * std::log(M_E + t);
        case Kind::table: return im.tab->integral(t);
    }
    return kNaN;
}

double YoungFunction::density(double t) const {
    if (t < 0.0) throw DomainError("Young density: negative argument");
    if (t == 0.0) return 0.0;
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::power: return im.cp * im.p * checked_pow(t, im.p - 1);
        case Kind::sum_power: return im.p * checked_pow(t, im.p - 1) + im.q * checked_pow(t, im.q - 1);
        case Kind::max_power:
            return t < im.t0 ? im.cp * im.p * checked_pow(t, im.p - 1) : im.cq * im.q * checked_pow(t, im.q - 1);
        case Kind::power_log:
            return im.p * checked_pow(t, im.p - 1) * std::log(M_E + t) + checked_pow(t, im.p) / (M_E + t);
        case Kind::table: return im.tab->density(t);
    }
    return kNaN;
}

double YoungFunction::inverse(double y, double hint) const {
    if (y < 0.0) throw DomainError("Young inverse: negative argument");
    if (y == 0.0) return 0.0;
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::power: return checked_pow(y / im.cp, 1.0 / im.p);
        case Kind::max_power: {
            const double crossing = im.cp * checked_pow(im.t0, im.p);
            return y <= crossing ? checked_pow(y / im.cp, 1.0 / im.p) : checked_pow(y / im.cq, 1.0 / im.q);
        }
        case Kind::table: return im.tab->invert_integral(y, hint);
        default: break;
    }
    auto f = [this](double t) { return (*this)(t); };
    double lo, hi;
    double seed = std::isfinite(hint) && hint > 0 ? hint
                                                  : std::min(checked_pow(y, 1.0 / im.p), checked_pow(y, 1.0 / im.q));
    if (!(seed > 0) || !std::isfinite(seed)) seed = 1.0;
    lo = seed * 0.5;
    hi = seed * 2.0;
    if (f(lo) > y || f(hi) < y) {
        auto br = bracket_increasing(f, y, lo, hi);
        lo = br.first;
        hi = br.second;
    }
    return solve_increasing(f, y, lo, hi, BisectOptions{1e-12, 1e-300, 200});
}

double YoungFunction::density_inverse(double y) const {
    if (y < 0.0) throw DomainError("density inverse: negative argument");
    if (y == 0.0) return 0.0;
    const Impl& im = *impl_;
    switch (im.kind) {
        case Kind::power: return checked_pow(y / (im.cp * im.p), 1.0 / (im.p - 1));
        case Kind::max_power: {
            const double y_lo = im.cp * im.p * checked_pow(im.t0, im.p - 1);
            const double y_hi = im.cq * im.q * checked_pow(im.t0, im.q - 1);
            if (y < y_lo) return checked_pow(y / (im.cp * im.p), 1.0 / (im.p - 1));
            if (y < y_hi) return im.t0;  // inside the jump of the density
            return checked_pow(y / (im.cq * im.q), 1.0 / (im.q - 1));
        }
        case Kind::table: return im.tab->invert_density(y);
        default: break;
    }
    auto f = [this](double t) { return density(t); };
    double seed = std::min(checked_pow(y / im.p, 1.0 / (im.p - 1)), checked_pow(y, 1.0 / (im.p - 1)));
    if (im.kind == Kind::sum_power)
        seed = std::min(checked_pow(y / im.p, 1.0 / (im.p - 1)), checked_pow(y / im.q, 1.0 / (im.q - 1)));
    if (!(seed > 0) || !std::isfinite(seed)) seed = 1.0;
    double lo = seed * 0.5, hi = seed * 2.0;
    if (f(lo) > y || f(hi) < y) {
        auto br = bracket_increasing(f, y, lo, hi);
        lo = br.first;
        hi = br.second;
    }
    return solve_increasing(f, y, lo, hi, BisectOptions{1e-12, 1e-300, 200});
}

std::vector<double> YoungFunction::density_breakpoints() const {
    const Impl& im = *impl_;
    if (im.kind == Kind::max_power) return {im.t0};
    if (im.kind == Kind::table) return im.tab->breakpoint_abscissae();
    return {};
}

YoungFunction YoungFunction::conjugate(const YoungConfig& cfg) const {
    const Impl& im = *impl_;
    if (im.kind == Kind::power) {
        const double pc = im.p / (im.p - 1.0);
        const double coeff = std::pow(im.cp * im.p, -1.0 / (im.p - 1.0)) / pc;
        return power(pc, coeff);
    }
    // image breakpoints: the density values on either side of each kink/jump
    std::vector<double> breaks;
    for (double b : density_breakpoints()) {
        breaks.push_back(density(b * (1 - 1e-9)));
        breaks.push_back(density(b * (1 + 1e-9)));
    }
    auto inv = [self = *this](double y) { return self.density_inverse(y); };
    // sample over the image of the density as well as the plain window, so
    // conjugate evaluations at arguments produced by the base density stay
    // interior to the table instead of hitting the extrapolation edge
    double lo = cfg.table_lo, hi = cfg.table_hi;
    const double image_lo = density(cfg.table_lo);
    const double image_hi = density(cfg.table_hi);
    if (std::isfinite(image_lo) && image_lo > 0.0) lo = std::min(lo, image_lo);
    if (std::isfinite(image_hi) && image_hi > 0.0) hi = std::max(hi, image_hi);
    DensityTable tab = DensityTable::sample(inv, lo, hi, cfg.table_per_decade, breaks);
    return from_table(std::move(tab), "conjugate(" + im.spec + ")");
}

const std::string& YoungFunction::spec_string() const { return impl_->spec; }

bool YoungFunction::is_tabulated() const { return impl_->kind == Kind::table; }

std::optional<std::pair<double, double>> YoungFunction::table_range() const {
    if (impl_->kind != Kind::table) return std::nullopt;
    return std::make_pair(impl_->tab->t_min(), impl_->tab->t_max());
}

namespace {

struct RangeClamp {
    double lo, hi;
    bool clamped;
};

RangeClamp clamp_to_table(const YoungFunction& f, double lo, double hi) {
    RangeClamp out{lo, hi, false};
    if (auto r = f.table_range()) {
        const double nlo = std::max(lo, r->first);
        const double nhi = std::min(hi, r->second);
        out.clamped = (nlo != lo) || (nhi != hi);
        out.lo = nlo;
        out.hi = nhi;
    }
    return out;
}

struct GridSup {
    double sup = -kInf;
    double arg = kNaN;
    std::size_t idx = 0;
    std::size_t count = 0;
};

template <class F>
GridSup grid_max(F&& f, double lo, double hi, int per_decade) {
    GridSup out;
    const auto grid = geometric_grid(lo, hi, per_decade);
    out.count = grid.size();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double v = f(grid[i]);
        if (std::isfinite(v) && v > out.sup) {
            out.sup = v;
            out.arg = grid[i];
            out.idx = i;
        }
    }
    return out;
}

}  // namespace

PIndexResult p_index(const YoungFunction& f, const YoungConfig& cfg) {
    PIndexResult res;
    auto [lo, hi, clamped] = clamp_to_table(f, cfg.check_lo, cfg.check_hi);
    auto ratio = [&f](double t) {
        const double v = f(t);
        if (!(v > 0.0) || !std::isfinite(v)) return kNaN;
        const double d = f.density(t);
        if (!std::isfinite(d)) return kNaN;
        return t * d / v;
    };
    int per_dec = cfg.index_per_decade;
    GridSup best = grid_max(ratio, lo, hi, per_dec);
    for (int round = 0; round < 2; ++round) {
        GridSup finer = grid_max(ratio, lo, hi, per_dec * 2);
        const bool settled = std::fabs(finer.sup - best.sup) <= 1e-9 * std::fabs(finer.sup);
        best = finer;
        per_dec *= 2;
        if (settled) break;
    }
    // polish an interior argmax
    if (best.idx > 0 && best.idx + 1 < best.count) {
        const double step = std::pow(10.0, 1.0 / per_dec);
        auto g = golden_max(ratio, best.arg / step, best.arg * step);
        if (std::isfinite(g.value) && g.value > best.sup) {
            best.sup = g.value;
            best.arg = g.x;
        }
    }
    // extend the range while the sup clings to the top edge
    double cur_hi = hi;
    const bool can_extend = !clamped || !f.table_range();
    for (int ext = 0; ext < 2 && can_extend; ++ext) {
        if (!(best.arg >= cur_hi * 0.5)) break;
        const double new_hi = cur_hi * 100.0;
        GridSup upper = grid_max(ratio, cur_hi, new_hi, cfg.index_per_decade);
        if (std::isfinite(upper.sup) && upper.sup > best.sup) {
            best.sup = upper.sup;
            best.arg = upper.arg;
        }
        cur_hi = new_hi;
    }
    // divergence rule: a top-pinned argmax that still grows over the last
    // couple of decades marks an unbounded index
    bool divergent = false;
    if (best.arg >= cur_hi * 0.02) {
        GridSup inner = grid_max(ratio, lo, std::max(lo * 10.0, cur_hi * 0.01), cfg.index_per_decade);
        if (std::isfinite(inner.sup) && best.sup > inner.sup * (1.0 + 1e-3)) divergent = true;
    }
    res.grid = GridSpec{lo, cur_hi, cfg.index_per_decade, clamped};
    if (divergent) {
        res.value = kInf;
        res.finite = false;
    } else {
        res.value = best.sup;
        res.finite = true;
    }
    return res;
}

DoublingCheck check_delta2(const YoungFunction& f, const YoungConfig& cfg) {
    DoublingCheck res;
    auto [lo, hi, clamped] = clamp_to_table(f, cfg.check_lo, cfg.check_hi);
    res.grid = GridSpec{lo, hi, cfg.delta_per_decade, clamped};
    const auto grid = geometric_grid(lo, hi, cfg.delta_per_decade);
    double worst = 0.0;
    for (double t : grid) {
        const double a = f(t);
        const double b = f(2.0 * t);
        if (!(a > 0.0) || !std::isfinite(a)) continue;
        const double r = b / a;
        if (!std::isfinite(r) || r > cfg.delta_c_max) {
            res.consistent = false;
            res.witness = t;
            res.constant = kInf;
            return res;
        }
        worst = std::max(worst, r);
    }
    res.consistent = true;
    res.constant = worst;
    return res;
}

SubmultCheck check_delta_prime(const YoungFunction& f, const YoungConfig& cfg) {
    SubmultCheck res;
    auto [lo, hi, clamped] = clamp_to_table(f, cfg.check_lo, cfg.check_hi);
    res.grid = GridSpec{lo, hi, cfg.delta_per_decade, clamped};
    const auto grid = geometric_grid(lo, hi, cfg.delta_per_decade);
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = f(grid[i]);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(vals[i] > 0.0) || !std::isfinite(vals[i])) continue;
        for (std::size_t j = i; j < grid.size(); ++j) {
            if (!(vals[j] > 0.0) || !std::isfinite(vals[j])) continue;
            const double num = f(grid[i] * grid[j]);
            const double r = num / (vals[i] * vals[j]);
            if (!std::isfinite(r) || r > cfg.delta_c_max) {
                res.consistent = false;
                res.witness_s = grid[i];
                res.witness_t = grid[j];
                res.constant = kInf;
                return res;
            }
            worst = std::max(worst, r);
        }
    }
    res.consistent = true;
    res.constant = worst;
    return res;
}

GrowthCertificate certify_growth(const YoungFunction& f, const YoungConfig& cfg) {
    GrowthCertificate cert;
    cert.index = p_index(f, cfg);
    cert.delta2 = check_delta2(f, cfg);
    cert.delta_prime = check_delta_prime(f, cfg);
    return cert;
}

namespace {

IntegrabilityCheck classify_endpoint(const ImproperResult& r, bool at_infinity, double margin) {
    IntegrabilityCheck out;
    out.integrand_exponent = r.exponent;
    const double gap = at_infinity ? -(r.exponent + 1.0) : (r.exponent + 1.0);
    // gap > 0 means convergent on that side
    if (gap > margin) {
        out.verdict = Verdict3::holds;
        out.integral = r.value;
    } else if (gap < -margin) {
        out.verdict = Verdict3::fails;
        out.integral = kInf;
    } else {
        out.verdict = Verdict3::inconclusive;
        out.integral = kNaN;
    }
    return out;
}

}  // namespace

IntegrabilityCheck integrability_at_zero(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    if (dim < 2) throw DomainError("integrability_at_zero: dimension must be at least 2");
    const double ex = 1.0 / (dim - 1.0);
    auto integrand = [&f, ex](double s) {
        const double v = f(s);
        return v > 0.0 ? std::pow(s / v, ex) : 0.0;
    };
    ImproperResult r = integrate_to_zero(integrand, 1.0);
    return classify_endpoint(r, false, cfg.fit_margin);
}

IntegrabilityCheck integrability_at_infinity(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    if (dim < 2) throw DomainError("integrability_at_infinity: dimension must be at least 2");
    const double ex = 1.0 / (dim - 1.0);
    auto integrand = [&f, ex](double s) {
        const double v = f(s);
        return (v > 0.0 && std::isfinite(v)) ? std::pow(s / v, ex) : 0.0;
    };
    ImproperResult r = integrate_to_inf(integrand, 1.0);
    return classify_endpoint(r, true, cfg.fit_margin);
}

EssentialOrder essentially_smaller(const YoungFunction& f, const YoungFunction& g, const YoungConfig& cfg) {
    (void)cfg;
    EssentialOrder out;
    const double ks[] = {1.0, 2.0, 10.0};
    out.worst_slope = -kInf;
    bool all_decay = true;
    for (double k : ks) {
        std::vector<double> ts = logspace(1e2, 1e7, 26);
        std::vector<double> ratios(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const double denom = g(ts[i]);
            ratios[i] = denom > 0.0 ? f(k * ts[i]) / denom : kInf;
        }
        LineFit fit = fit_loglog(ts, ratios);
        out.worst_slope = std::max(out.worst_slope, fit.slope);
        if (!(fit.slope < -1e-3) || !(ratios.back() < ratios.front())) all_decay = false;
    }
    out.holds = all_decay;
    return out;
}

DominationCheck composition_dominates(const YoungFunction& f, const YoungFunction& g, const YoungConfig& cfg) {
    (void)cfg;
    DominationCheck out;
    auto h = [&](double x) { return g(f.inverse(x)); };
    const auto grid = geometric_grid(1e-6, 1e6, 8);
    bool convex = true;
    double prev_slope = -kInf;
    double prev_x = 0.0, prev_h = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid[i];
        const double hx = h(x);
        if (i > 0) {
            const double slope = (hx - prev_h) / (x - prev_x);
            if (slope < prev_slope * (1.0 - 1e-9) - 1e-300) convex = false;
            prev_slope = slope;
        }
        prev_x = x;
        prev_h = hx;
    }
    out.holds = convex;
    double worst = 0.0;
    const auto coarse = geometric_grid(1e-6, 1e6, 2);
    for (double a : coarse) {
        for (double b : coarse) {
            const double denom = h(a + b);
            if (denom > 0.0) worst = std::max(worst, (h(a) + h(b)) / denom);
        }
    }
    out.splitting_constant = worst;
    return out;
}

}  // namespace orlicz
