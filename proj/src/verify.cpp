#include "orlicz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

namespace orlicz {
namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

std::string to_string(TestFamily family) {
    switch (family) {
        case TestFamily::cones: return "cones";
        case TestFamily::bumps: return "bumps";
        case TestFamily::dilate: return "dilate";
        case TestFamily::amplitude: return "amplitude";
    }
    return "?";
}

TestFamily family_from_string(const std::string& text) {
    if (text == "cones") return TestFamily::cones;
    if (text == "bumps") return TestFamily::bumps;
    if (text == "dilate") return TestFamily::dilate;
    if (text == "amplitude") return TestFamily::amplitude;
    throw ParseError("unknown test family '" + text + "' (expected cones|bumps|dilate|amplitude)");
}

double weighted_modular(const WeightProfile& w, const YoungFunction& psi, const RadialProfile& u,
                        const QuadOptions& quad) {
    if (!w.has_radial_realization())
        throw DomainError("weighted_modular: weight has no radial realization");
    const int dim = u.dimension();
    if (w.dimension() > 0 && w.dimension() != dim)
        throw DomainError("weighted_modular: weight dimension does not match the profile");
    const double top = std::min(u.support_radius(), w.domain_radius());
    if (!(top > 0.0) || !(u.sup_value() > 0.0)) return 0.0;

    const double coeff = dim * unit_ball_volume(dim);
    auto f = [&](double rho) {
        return coeff * w.radial_value(rho) * psi(u(rho)) * std::pow(rho, dim - 1);
    };

    // quadrature break points: profile kinks, capped by the weight domain
    std::vector<double> breaks;
    for (double r : u.rho_nodes())
        if (r > 0.0 && r < top) breaks.push_back(r);
    breaks.push_back(top);

    ImproperResult head = integrate_to_zero(f, breaks.front(), quad);
    if (head.divergent) return kInf;
    double total = head.value;
    for (std::size_t k = 1; k < breaks.size(); ++k)
        total += integrate(f, breaks[k - 1], breaks[k], quad);
    return std::isfinite(total) ? total : kInf;
}

double gradient_modular(const YoungFunction& phi, const RadialProfile& u) {
    const int dim = u.dimension();
    const double ball = unit_ball_volume(dim);
    const auto& rho = u.rho_nodes();
    const auto& vals = u.values();
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
        const double s = std::fabs((vals[k + 1] - vals[k]) / (rho[k + 1] - rho[k]));
        if (s > 0.0) total += phi(s) * ball * (std::pow(rho[k + 1], dim) - std::pow(rho[k], dim));
    }
    return total;
}

double modular_lhs(const WeightProfile& w, const YoungFunction& psi, const RadialProfile& u,
                   const QuadOptions& quad) {
    const double total = weighted_modular(w, psi, u, quad);
    if (!std::isfinite(total)) return kInf;
    return total > 0.0 ? psi.inverse(total) : 0.0;
}

double modular_rhs(const YoungFunction& phi, const RadialProfile& u) {
    const double total = gradient_modular(phi, u);
    return total > 0.0 ? phi.inverse(total) : 0.0;
}

RadialProfile cone_profile(double a, double b, int dim) {
    if (!(b > 0.0) || !(a >= 0.0) || !(a < b)) throw DomainError("cone_profile: need 0 <= a < b");
    if (a > 0.0) return RadialProfile::from_nodes({0.0, a, b}, {1.0, 1.0, 0.0}, dim);
    return RadialProfile::from_nodes({0.0, b}, {1.0, 0.0}, dim);
}

RadialProfile bump_profile(double width, int dim, int nodes) {
    if (!(width > 0.0)) throw DomainError("bump_profile: width must be positive");
    nodes = std::max(nodes, 3);
    std::vector<double> rho(static_cast<std::size_t>(nodes));
    std::vector<double> val(static_cast<std::size_t>(nodes));
    for (int k = 0; k < nodes; ++k) {
        const double s = static_cast<double>(k) / (nodes - 1);
        rho[static_cast<std::size_t>(k)] = width * s;
        val[static_cast<std::size_t>(k)] =
            k + 1 == nodes ? 0.0 : std::exp(1.0 - 1.0 / (1.0 - s * s));
    }
    rho.back() = width;
    return RadialProfile::from_nodes(std::move(rho), std::move(val), dim);
}

RadialProfile dilate_profile(const RadialProfile& u, double lambda) {
    if (!(lambda > 0.0)) throw DomainError("dilate_profile: factor must be positive");
    std::vector<double> rho = u.rho_nodes();
    for (double& r : rho) r *= lambda;
    return RadialProfile::from_nodes(std::move(rho), u.values(), u.dimension());
}

RadialProfile scale_profile(const RadialProfile& u, double t) {
    if (!(t >= 0.0)) throw DomainError("scale_profile: amplitude must be nonnegative");
    std::vector<double> val = u.values();
    for (double& v : val) v *= t;
    return RadialProfile::from_nodes(u.rho_nodes(), std::move(val), u.dimension());
}

HarnessResult run_family(const WeightProfile& w, const YoungFunction& phi, const YoungFunction& psi,
                         int dim, TestFamily family, const VerifyConfig& cfg,
                         const std::optional<BoundSpec>& bound) {
    if (dim < 2) throw DomainError("run_family: dimension must be at least 2");

    HarnessResult out;
    out.family = to_string(family);
    out.note =
        "test displacements are radial, decreasing, piecewise-linear profiles; a bounded "
        "empirical constant over this family is supporting evidence, not a certification "
        "over every admissible displacement";

    struct Member {
        std::string id;
        double param;
        RadialProfile profile;
    };
    std::vector<Member> members;
    switch (family) {
        case TestFamily::cones:
            for (double b : cfg.cone_widths)
                for (double frac : cfg.cone_fractions)
                    members.push_back({"cone:a=" + fmt6(frac * b) + ",b=" + fmt6(b), b,
                                       cone_profile(frac * b, b, dim)});
            break;
        case TestFamily::bumps:
            for (double b : cfg.bump_widths)
                members.push_back({"bump:b=" + fmt6(b), b, bump_profile(b, dim, cfg.bump_nodes)});
            break;
        case TestFamily::dilate: {
            const RadialProfile base = cfg.base ? *cfg.base : bump_profile(1.0, dim, cfg.bump_nodes);
            for (double lam : cfg.dilation_factors)
                members.push_back({"dilate:lambda=" + fmt6(lam), lam, dilate_profile(base, lam)});
            break;
        }
        case TestFamily::amplitude: {
            const RadialProfile base = cfg.base ? *cfg.base : bump_profile(1.0, dim, cfg.bump_nodes);
            for (double t : cfg.amplitude_factors)
                members.push_back({"amplitude:t=" + fmt6(t), t, scale_profile(base, t)});
            break;
        }
    }

    out.rows.reserve(members.size());
    std::vector<double> params, ratios;
    for (const Member& m : members) {
        HarnessRow row;
        row.test_id = m.id;
        row.param = m.param;
        row.lhs = modular_lhs(w, psi, m.profile, cfg.quad);
        row.rhs = modular_rhs(phi, m.profile);
        row.ratio = (row.lhs == 0.0 && row.rhs == 0.0) ? 0.0
                    : row.rhs == 0.0                   ? kInf
                                                       : row.lhs / row.rhs;
        if (out.rows.empty() || row.ratio > out.empirical_constant) {
            out.empirical_constant = row.ratio;
            out.argmax_id = row.test_id;
        }
        if (row.param > 0.0 && row.ratio > 0.0 && std::isfinite(row.ratio)) {
            params.push_back(row.param);
            ratios.push_back(row.ratio);
        }
        out.rows.push_back(std::move(row));
    }

    if (params.size() >= 2 &&
        *std::max_element(params.begin(), params.end()) >
            *std::min_element(params.begin(), params.end()))
        out.log_slope = fit_loglog(params, ratios).slope;

    if (bound) {
        BoundComparison cmp;
        cmp.route = bound->route;
        cmp.bound = bound->value;
        cmp.factor = bound->value > 0.0 ? out.empirical_constant / bound->value : kNaN;
        const bool slope_ok = !std::isfinite(out.log_slope) || std::fabs(out.log_slope) <= cfg.slope_tol;
        cmp.satisfied = std::isfinite(out.empirical_constant) && slope_ok && std::isfinite(cmp.factor);
        out.bound = cmp;
    }
    return out;
}

}  // namespace orlicz
