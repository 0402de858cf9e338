#include "orlicz/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orlicz {

namespace {

double conjugate_exponent_of_dim(int dim) {
    if (dim < 2) throw DomainError("dimensional conjugation requires dimension >= 2");
    return static_cast<double>(dim) / (dim - 1.0);
}

IntegrabilityCheck classify_zero_side(const ImproperResult& r, double margin) {
    IntegrabilityCheck out;
    out.integrand_exponent = r.exponent;
    const double gap = r.exponent + 1.0;
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

struct HCurveBuild {
    MonotoneCurve curve;
    std::vector<std::pair<double, double>> nodes;
    bool range_capped = false;  // extension hit the hard ceiling before covering the target
};

// Cumulative transform H(t) = integral over (0, t) of conj(s) s^{-(1+N')},
// assembled as a node curve with exact one-sided logarithmic slopes
// t h(t) / H(t).  The node range is grown until H covers [y_lo_need,
// y_hi_need] so the inverse never leaves interpolation territory.
HCurveBuild build_h_curve(const YoungFunction& conj, int dim, const YoungConfig& cfg) {
    const double np = conjugate_exponent_of_dim(dim);
    auto integrand = [&conj, np](double s) { return conj(s) / std::pow(s, 1.0 + np); };
    const double y_lo_need = std::pow(cfg.table_lo, np);
    const double y_hi_need = std::pow(cfg.table_hi, np);

    double lo = 1e-9;
    ImproperResult head = integrate_to_zero(integrand, lo);
    if (head.divergent || !(head.value > 0.0) || !std::isfinite(head.value))
        throw HypothesisError("transform integrand is not integrable at zero for " + conj.spec_string());
    int guard = 0;
    while (head.value > y_lo_need && lo > 1e-240 && ++guard < 150) {
        lo *= 1e-2;
        head = integrate_to_zero(integrand, lo);
    }
    const double head_slope = head.exponent + 1.0;

    const QuadOptions seg_opt{1e-11, 1e-320, 30};
    std::vector<double> ts{lo};
    std::vector<double> hs{head.value};
    // returns false when a segment integral stops being a finite positive
    // increment (overflow or total decay of the tail); nodes past that point
    // are discarded and the curve is treated as range-capped
    auto extend_to = [&](double hi) {
        std::vector<double> grid = geometric_grid(ts.back(), hi, 24);
        std::vector<double> breaks;
        for (double b : conj.density_breakpoints())
            if (b > ts.back() * (1 + 1e-12) && b < hi * (1 - 1e-12)) breaks.push_back(b);
        std::vector<double> merged;
        std::merge(grid.begin(), grid.end(), breaks.begin(), breaks.end(), std::back_inserter(merged));
        merged.erase(std::unique(merged.begin(), merged.end(),
                                 [](double a, double b) { return std::fabs(b - a) <= 1e-12 * b; }),
                     merged.end());
        for (std::size_t k = 1; k < merged.size(); ++k) {
            const double piece = integrate(integrand, merged[k - 1], merged[k], seg_opt);
            const double next = hs.back() + piece;
            if (!std::isfinite(piece) || !(next > hs.back())) return false;
            ts.push_back(merged[k]);
            hs.push_back(next);
        }
        return true;
    };
    bool capped = !extend_to(1e9);
    while (!capped && hs.back() < y_hi_need) {
        if (ts.back() >= 1e240 || ts.size() > 20000) {
            capped = true;
            break;
        }
        capped = !extend_to(ts.back() * 1e2);
    }

    const std::size_t n = ts.size();
    std::vector<double> dl(n), dr(n);
    for (std::size_t k = 0; k < n; ++k) {
        dl[k] = ts[k] * integrand(ts[k] * (1 - 1e-9)) / hs[k];
        dr[k] = ts[k] * integrand(ts[k] * (1 + 1e-9)) / hs[k];
    }
    dl[0] = dr[0] = head_slope;

    HCurveBuild out;
    out.curve = MonotoneCurve::from_nodes(ts, hs, dl, dr);
    out.nodes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.nodes.emplace_back(ts[k], hs[k]);
    out.range_capped = capped;
    return out;
}

}  // namespace

IntegrabilityCheck check_transform_hypothesis(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    const double np = conjugate_exponent_of_dim(dim);
    YoungFunction conj = f.conjugate(cfg);
    auto integrand = [&conj, np](double s) { return conj(s) / std::pow(s, 1.0 + np); };
    ImproperResult r = integrate_to_zero(integrand, 1.0);
    return classify_zero_side(r, cfg.fit_margin);
}

double h_phi(const YoungFunction& f, int dim, double t, const YoungConfig& cfg) {
    if (!(t >= 0.0)) throw DomainError("h_phi: argument must be nonnegative");
    if (t == 0.0) return 0.0;
    const double np = conjugate_exponent_of_dim(dim);
    YoungFunction conj = f.conjugate(cfg);
    auto integrand = [&conj, np](double s) { return conj(s) / std::pow(s, 1.0 + np); };
    ImproperResult r = integrate_to_zero(integrand, t);
    if (r.divergent) throw HypothesisError("transform integrand diverges at zero for " + f.spec_string());
    return r.value;
}

ConjugateBundle make_conjugate_bundle(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    const double np = conjugate_exponent_of_dim(dim);
    IntegrabilityCheck gate = check_transform_hypothesis(f, dim, cfg);
    if (gate.verdict != Verdict3::holds)
        throw HypothesisError("transform hypothesis " + std::string(to_string(gate.verdict)) + " for " +
                              f.spec_string() + " in dimension " + std::to_string(dim) +
                              " (integrand exponent " + std::to_string(gate.integrand_exponent) + ")");

    YoungFunction conj = f.conjugate(cfg);
    HCurveBuild hb = build_h_curve(conj, dim, cfg);
    const MonotoneCurve& H = hb.curve;

    // feasible abscissa window for the dimensional conjugate: s^{N'} must be
    // reachable by H before any range cap
    double s_hi = cfg.table_hi;
    if (hb.range_capped) s_hi = std::min(s_hi, std::pow(H.y_max() * (1 - 1e-9), 1.0 / np));
    const double s_lo = cfg.table_lo;

    auto phi_n_density = [&H, np](double s) {
        const double t = H.inverse(std::pow(s, np));
        return std::pow(s, np - 1.0) * std::pow(t, np);
    };
    std::vector<double> pn_breaks;
    for (double b : conj.density_breakpoints()) {
        if (b <= H.x_min() || b >= H.x_max()) continue;
        pn_breaks.push_back(std::pow(H(b), 1.0 / np));
    }
    DensityTable pn_tab = DensityTable::sample(phi_n_density, s_lo, s_hi, cfg.table_per_decade, pn_breaks);
    const std::string tag = f.spec_string() + ",N=" + std::to_string(dim);
    YoungFunction phi_n = YoungFunction::from_table(std::move(pn_tab), "sobolev(" + tag + ")");

    // transfer density at level x: phi_n(t)/phi(t) with t = Phi^{-1}(x)
    double last_t = kNaN;
    auto transfer_density = [&f, &phi_n, &last_t](double x) {
        const double t = f.inverse(x, last_t);
        last_t = t;
        return phi_n.density(t) / f.density(t);
    };
    bool convex = true;
    {
        double prev = 0.0;
        for (double x : geometric_grid(cfg.table_lo, cfg.table_hi, 16)) {
            const double d = transfer_density(x);
            if (d < prev * (1 - 1e-9)) {
                convex = false;
                break;
            }
            prev = d;
        }
        last_t = kNaN;
    }
    std::vector<double> b_breaks;
    for (double b : f.density_breakpoints()) b_breaks.push_back(f(b));
    for (double s : pn_breaks) b_breaks.push_back(f(s));
    DensityTable b_tab = DensityTable::sample(transfer_density, cfg.table_lo, cfg.table_hi,
                                              cfg.table_per_decade, b_breaks);
    YoungFunction b_phi = YoungFunction::from_table(std::move(b_tab), "transfer(" + tag + ")");
    YoungFunction b_comp = b_phi.conjugate(cfg);

    return ConjugateBundle{f, dim, conj, H, std::move(hb.nodes),
                           std::move(phi_n), std::move(b_phi), std::move(b_comp), convex};
}

YoungFunction sobolev_conjugate(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    return make_conjugate_bundle(f, dim, cfg).phi_n;
}

std::pair<YoungFunction, YoungFunction> transfer_pair(const YoungFunction& f, int dim, const YoungConfig& cfg) {
    ConjugateBundle b = make_conjugate_bundle(f, dim, cfg);
    return {b.b_phi, b.b_phi_complement};
}

}  // namespace orlicz
