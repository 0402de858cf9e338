#include "orlicz/admit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "orlicz/conjugate.hpp"

namespace orlicz {

namespace {

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct Peak {
    double value = 0;
    double eps = kNaN;
    double t = kNaN;
    bool hit_inf = false;
    bool empty = true;  // nothing fed yet

    void feed(double v, double e, double x) {
        if (v == kInf || std::isnan(v)) {
            hit_inf = true;
            empty = false;
            value = kInf;
            eps = e;
            t = x;
            return;
        }
        if (empty || v > value) {
            empty = false;
            value = v;
            eps = e;
            t = x;
        }
    }
};

// Two-parameter criterion driver: coarse scan, one refinement pass around the
// maximiser, then range extensions while the maximiser stays pinned to an
// artificial boundary.  A sup that keeps growing through the allowed
// extensions is declared divergent; an edge-pinned plateau (growth below the
// threshold) is accepted as finite so exactly-constant criteria do not
// false-positive.
template <class Pass>
MuckenhouptResult run_criterion(Pass&& pass, double e_lo, double e_hi, double t_lo, double t_hi,
                                bool t_hi_structural, const AdmitConfig& cfg) {
    const int pd = cfg.muck_per_decade;
    Peak peak;
    pass(geometric_grid(e_lo, e_hi, pd), geometric_grid(t_lo, t_hi, pd), &peak);

    MuckenhouptResult out;
    auto finish = [&](bool divergent) {
        out.eps_grid = GridSpec{e_lo, e_hi, pd, false};
        out.t_grid = GridSpec{t_lo, t_hi, pd, false};
        out.divergent = divergent;
        out.eps_arg = peak.eps;
        out.t_arg = peak.t;
        out.value = divergent ? kInf : (peak.empty || peak.value < 0.0 ? 0.0 : peak.value);
        return out;
    };

    if (peak.hit_inf) return finish(true);
    if (peak.empty || !(peak.value > 0.0)) return finish(false);

    {  // refinement around the coarse maximiser
        const auto re = geometric_grid(std::max(e_lo, peak.eps / 10.0),
                                       std::min(e_hi, peak.eps * 10.0), cfg.muck_refine_per_decade);
        const auto rt = geometric_grid(std::max(t_lo, peak.t / 10.0), std::min(t_hi, peak.t * 10.0),
                                       cfg.muck_refine_per_decade);
        pass(re, rt, &peak);
        if (peak.hit_inf) return finish(true);
    }

    const double kGrowthFloor = 1e-3;
    double growth = 0.0;
    int rounds = 0;
    while (rounds < cfg.extension_rounds) {
        const double step = std::pow(10.0, 1.0 / pd) * 1.0001;
        const bool pin_elo = peak.eps <= e_lo * step;
        const bool pin_ehi = peak.eps >= e_hi / step;
        const bool pin_tlo = peak.t <= t_lo * step;
        const bool pin_thi = !t_hi_structural && peak.t >= t_hi / step;
        if (!(pin_elo || pin_ehi || pin_tlo || pin_thi)) break;
        const double prev = peak.value;
        if (pin_elo) e_lo *= 1e-2;
        if (pin_ehi) e_hi *= 1e2;
        if (pin_tlo) t_lo *= 1e-2;
        if (pin_thi) t_hi *= 1e2;
        pass(geometric_grid(e_lo, e_hi, pd), geometric_grid(t_lo, t_hi, pd), &peak);
        if (peak.hit_inf) return finish(true);
        ++rounds;
        growth = (peak.value - prev) / std::max(prev, 1e-300);
        if (growth <= kGrowthFloor) return finish(false);  // pinned plateau, not real growth
    }
    if (rounds >= cfg.extension_rounds && growth > kGrowthFloor) {
        const double step = std::pow(10.0, 1.0 / pd) * 1.0001;
        const bool pinned = peak.eps <= e_lo * step || peak.eps >= e_hi / step ||
                            peak.t <= t_lo * step ||
                            (!t_hi_structural && peak.t >= t_hi / step);
        if (pinned) return finish(true);
    }
    return finish(false);
}

// cumulative mass of w from zero along the grid; false when the head integral
// diverges
bool cumulative_mass(const std::function<double(double)>& w, const std::vector<double>& tg,
                     std::vector<double>* out) {
    out->assign(tg.size(), 0.0);
    const ImproperResult head = integrate_to_zero(w, tg.front());
    if (head.divergent) return false;
    (*out)[0] = head.value;
    for (std::size_t k = 1; k < tg.size(); ++k)
        (*out)[k] = (*out)[k - 1] + integrate(w, tg[k - 1], tg[k]);
    return true;
}

}  // namespace

const AdmitConfig& default_admit_config() {
    static const AdmitConfig cfg;
    return cfg;
}

const char* to_string(RouteVerdict v) {
    switch (v) {
        case RouteVerdict::admissible: return "admissible";
        case RouteVerdict::hypothesis_failed: return "hypothesis-failed";
        case RouteVerdict::norm_infinite: return "norm-infinite";
    }
    return "?";
}

MuckenhouptResult muckenhoupt_sup_same(const YoungFunction& f,
                                       const std::function<double(double)>& w,
                                       const std::function<double(double)>& v, double b,
                                       const AdmitConfig& cfg) {
    if (!(b > 0.0)) throw DomainError("criterion: domain measure must be positive");
    const double t_hi = std::isfinite(b) ? b : cfg.eps_hi;
    const double t_lo = t_hi * 1e-12;

    auto pass = [&](const std::vector<double>& eg, const std::vector<double>& tg, Peak* pk) {
        std::vector<double> W;
        if (!cumulative_mass(w, tg, &W)) {
            pk->feed(kInf, eg.front(), tg.front());
            return;
        }
        if (!(W.back() > 0.0)) return;  // vanishing weight contributes nothing
        for (double eps : eg) {
            auto ginv = [&](double s) { return f.density_inverse(1.0 / (eps * v(s))); };
            std::vector<double> T(tg.size(), 0.0);
            if (std::isfinite(b)) {
                if (tg.back() < b * (1.0 - 1e-12)) T.back() = integrate(ginv, tg.back(), b);
            } else {
                const ImproperResult tail = integrate_to_inf(ginv, tg.back());
                if (tail.divergent) {
                    pk->feed(kInf, eps, tg.back());
                    return;
                }
                T.back() = tail.value;
            }
            for (std::size_t k = tg.size() - 1; k-- > 0;)
                T[k] = T[k + 1] + integrate(ginv, tg[k], tg[k + 1]);
            for (std::size_t k = 0; k < tg.size(); ++k) {
                const double lhs = eps * W[k] * f.density(T[k]);
                pk->feed(lhs, eps, tg[k]);
                if (pk->hit_inf) return;
            }
        }
    };
    return run_criterion(pass, cfg.eps_lo, cfg.eps_hi, t_lo, t_hi, std::isfinite(b), cfg);
}

MuckenhouptResult muckenhoupt_sup_general(const YoungFunction& phi, const YoungFunction& psi,
                                          const std::function<double(double)>& w,
                                          const std::function<double(double)>& v, double b,
                                          const AdmitConfig& cfg) {
    if (!(b > 0.0)) throw DomainError("criterion: domain measure must be positive");
    const double t_hi = std::isfinite(b) ? b : cfg.eps_hi;
    const double t_lo = t_hi * 1e-12;
    const YoungFunction phi_conj = phi.conjugate(cfg.norm.young);
    double pt = 0, pc = 0;
    const bool pw = power_form(phi_conj, &pt, &pc);

    auto pass = [&](const std::vector<double>& eg, const std::vector<double>& tg, Peak* pk) {
        std::vector<double> W;
        if (!cumulative_mass(w, tg, &W)) {
            pk->feed(kInf, eg.front(), tg.front());
            return;
        }
        if (!(W.back() > 0.0)) return;

        // pure-power complement: the weighted norm of 1/v on (r, b) with
        // respect to eps*v is (pc * eps * J(r))^{1/pt} with J eps-independent
        std::vector<double> J;
        if (pw) {
            J.assign(tg.size(), 0.0);
            auto vint = [&](double s) { return std::pow(v(s), 1.0 - pt); };
            if (std::isfinite(b)) {
                if (tg.back() < b * (1.0 - 1e-12)) J.back() = integrate(vint, tg.back(), b);
            } else {
                const ImproperResult tail = integrate_to_inf(vint, tg.back());
                if (tail.divergent) {
                    pk->feed(kInf, eg.front(), tg.back());
                    return;
                }
                J.back() = tail.value;
            }
            for (std::size_t k = tg.size() - 1; k-- > 0;)
                J[k] = J[k + 1] + integrate(vint, tg[k], tg[k + 1]);
        }

        for (double eps : eg) {
            const double denom = phi.inverse(1.0 / eps);
            for (std::size_t k = 0; k < tg.size(); ++k) {
                if (!(W[k] > 0.0)) continue;
                double L;
                if (pw) {
                    L = std::pow(pc * eps * J[k], 1.0 / pt);
                } else {
                    const double r = tg[k];
                    auto modular = [&](double lam) {
                        auto integrand = [&](double s) {
                            const double vv = v(s);
                            return phi_conj(1.0 / (vv * lam)) * eps * vv;
                        };
                        double total = 0.0;
                        double top = b;
                        if (!std::isfinite(top)) {
                            top = std::max(1.0, 2.0 * r);
                            const ImproperResult tail = integrate_to_inf(integrand, top);
                            if (tail.divergent) return kInf;
                            total += tail.value;
                        }
                        if (top > r) total += integrate(integrand, r, top);
                        return total;
                    };
                    L = luxemburg_from_modular(modular, 1.0);
                }
                const double arg = psi(L / eps) * W[k];
                const double lhs = std::isfinite(arg) ? psi.inverse(arg) / denom : kInf;
                pk->feed(lhs, eps, tg[k]);
                if (pk->hit_inf) return;
            }
        }
    };
    return run_criterion(pass, cfg.eps_lo, cfg.eps_hi, t_lo, t_hi, std::isfinite(b), cfg);
}

CapacityResult capacity_ball(const YoungFunction& f, int dim, double inner, double outer,
                             const AdmitConfig& cfg) {
    if (dim < 2) throw DomainError("capacity: dimension must be at least 2");
    if (!(inner > 0.0) || !(outer > inner) || !std::isfinite(outer))
        throw DomainError("capacity: need 0 < inner < outer < infinity");
    const double m = static_cast<double>(dim - 1);
    auto slope_at = [&](double c, double rho) { return f.density_inverse(c / std::pow(rho, m)); };
    auto total_drop = [&](double c) {
        return integrate([&](double rho) { return slope_at(c, rho); }, inner, outer);
    };
    const double c =
        invert_increasing(total_drop, 1.0, 1e-10, 1.0, BisectOptions{1e-12, 1e-300, 240});

    const double value =
        dim * unit_ball_volume(dim) *
        integrate([&](double rho) { return f(slope_at(c, rho)) * std::pow(rho, m); }, inner, outer);

    // minimizer profile: level one inside the inner ball, then the
    // accumulated drop of the first-integral slope out to the outer radius
    const int n = std::max(cfg.capacity_profile_nodes, 8);
    std::vector<double> rho(static_cast<std::size_t>(n) + 2);
    std::vector<double> u(rho.size());
    rho[0] = 0.0;
    for (int k = 0; k <= n; ++k)
        rho[static_cast<std::size_t>(k) + 1] = inner + (outer - inner) * k / static_cast<double>(n);
    u.back() = 0.0;
    for (std::size_t k = rho.size() - 1; k-- > 1;)
        u[k] = u[k + 1] + integrate([&](double r) { return slope_at(c, r); }, rho[k], rho[k + 1]);
    u[0] = u[1];
    for (double& val : u) val = std::max(val, 0.0);
    return CapacityResult{inner, outer, value, c,
                          RadialProfile::from_nodes(std::move(rho), std::move(u), dim)};
}

CapacityCriterion capacity_criterion(const WeightProfile& w, const YoungFunction& phi,
                                     const YoungFunction& psi, int dim, double outer,
                                     const std::vector<double>& inner_radii,
                                     const AdmitConfig& cfg) {
    if (!w.has_radial_realization())
        throw DomainError("capacity criterion: weight must be radially realizable");
    if (w.dimension() > 0 && w.dimension() != dim)
        throw DomainError("capacity criterion: weight dimension mismatch");
    if (!(outer > 0.0) || !std::isfinite(outer))
        throw DomainError("capacity criterion: outer radius must be finite positive");
    const double surface = dim * unit_ball_volume(dim);
    CapacityCriterion out;
    for (double a : inner_radii) {
        if (!(a > 0.0) || !(a < outer))
            throw DomainError("capacity criterion: inner radius out of range");
        auto shell = [&](double rho) { return w.radial_value(rho) * std::pow(rho, dim - 1); };
        const ImproperResult mass = integrate_to_zero(shell, a);
        const double cap = capacity_ball(phi, dim, a, outer, cfg).value;
        double ratio;
        if (mass.divergent) {
            ratio = kInf;
            out.divergent = true;
        } else {
            ratio = surface * mass.value / psi(phi.inverse(cap));
        }
        out.radii.push_back(a);
        out.ratios.push_back(ratio);
        if (out.radii.size() == 1 || ratio > out.value) {
            out.value = ratio;
            out.arg = a;
        }
    }
    return out;
}

namespace {

HypothesisStatus hyp(std::string name, bool ok, std::string detail) {
    return HypothesisStatus{std::move(name), ok, std::move(detail)};
}

std::string submult_detail(const SubmultCheck& c) {
    if (c.consistent) return "constant " + fmt6(c.constant);
    return "violated near s=" + fmt6(c.witness_s) + ", t=" + fmt6(c.witness_t);
}

std::string doubling_detail(const DoublingCheck& c) {
    if (c.consistent) return "constant " + fmt6(c.constant);
    return "violated near t=" + fmt6(c.witness);
}

std::string integ_detail(const IntegrabilityCheck& c) {
    switch (c.verdict) {
        case Verdict3::holds: return "integral " + fmt6(c.integral);
        case Verdict3::fails: return "integrand exponent " + fmt6(c.integrand_exponent);
        case Verdict3::inconclusive: break;
    }
    return "inconclusive, integrand exponent " + fmt6(c.integrand_exponent);
}

RouteVerdict route_verdict(const std::vector<HypothesisStatus>& hyps, bool norm_available,
                           bool finite) {
    for (const HypothesisStatus& h : hyps)
        if (!h.ok) return RouteVerdict::hypothesis_failed;
    if (!norm_available || !finite) return RouteVerdict::norm_infinite;
    return RouteVerdict::admissible;
}

// max{v, v^{1/P}} evaluated with the growth index of the target function
double power_max_constant(double value, const PIndexResult& idx) {
    if (!std::isfinite(value)) return kInf;
    const double e = idx.finite && idx.value > 0.0 ? 1.0 / idx.value : 0.0;
    return std::max(value, std::pow(value, e));
}

}  // namespace

AdmissibilityReport admissibility_report(const WeightProfile& w, const YoungFunction& phi,
                                         const YoungFunction& psi, int dim, double omega,
                                         const AdmitConfig& cfg) {
    if (dim < 2) throw DomainError("admissibility: dimension must be at least 2");
    const double wo = w.omega_measure();
    if (!std::isnan(omega)) {
        const bool of = std::isfinite(omega);
        if (of != std::isfinite(wo) ||
            (of && std::fabs(omega - wo) > 1e-9 * std::max(1.0, std::fabs(wo))))
            throw DomainError("admissibility: stated domain measure disagrees with the weight");
    }
    const YoungConfig& ycfg = cfg.norm.young;
    const YoungFunction phi_conj = phi.conjugate(ycfg);

    const SubmultCheck phi_dp = check_delta_prime(phi, ycfg);
    const SubmultCheck phic_dp = check_delta_prime(phi_conj, ycfg);
    const DoublingCheck phic_d2 = check_delta2(phi_conj, ycfg);
    const SubmultCheck psi_dp = check_delta_prime(psi, ycfg);
    const IntegrabilityCheck transform = check_transform_hypothesis(phi, dim, ycfg);
    const PIndexResult idx_phi = p_index(phi, ycfg);
    const PIndexResult idx_psi = p_index(psi, ycfg);
    const IntegrabilityCheck tail_growth = integrability_at_infinity(phi, dim, ycfg);
    const DominationCheck split = composition_dominates(phi, psi, ycfg);

    AdmissibilityReport rep;

    {  // weights measured through the complement of the transfer function
        RouteReport r;
        r.id = "T1.2";
        r.norm.kind = NormKind::orlicz_bphi;
        r.norm.value = kNaN;
        r.norm.finite = false;
        r.hypotheses.push_back(hyp("phi-delta-prime", phi_dp.consistent, submult_detail(phi_dp)));
        r.hypotheses.push_back(
            hyp("phi-conjugate-delta-prime", phic_dp.consistent, submult_detail(phic_dp)));
        r.hypotheses.push_back(hyp("transform-integrand-at-zero",
                                   transform.verdict == Verdict3::holds, integ_detail(transform)));
        bool have_norm = false;
        if (transform.verdict == Verdict3::holds) {
            try {
                const ConjugateBundle bundle = make_conjugate_bundle(phi, dim, ycfg);
                r.hypotheses.push_back(hyp("transfer-function-convex", bundle.b_phi_convex,
                                           bundle.b_phi_convex
                                               ? "monotone transfer density"
                                               : "density dip bridged by the monotone envelope"));
                r.norm = norm_orlicz_bphi(w, bundle);
                have_norm = true;
            } catch (const std::runtime_error& err) {
                r.norm.hypothesis_ok = false;
                r.norm.hypothesis_note = std::string("norm not evaluated: ") + err.what();
            }
        } else {
            r.norm.hypothesis_ok = false;
            r.norm.hypothesis_note = "norm not evaluated: transform integrand diverges at zero";
        }
        r.verdict = route_verdict(r.hypotheses, have_norm, r.norm.finite);
        r.constant = have_norm ? (r.norm.finite ? r.norm.value : kInf) : kNaN;
        rep.routes.push_back(std::move(r));
    }

    {  // weights with bounded maximal-to-threshold ratio
        RouteReport r;
        r.id = "T1.3";
        r.hypotheses.push_back(
            hyp("phi-conjugate-delta-prime", phic_dp.consistent, submult_detail(phic_dp)));
        const bool below = idx_phi.finite && idx_phi.value < static_cast<double>(dim);
        r.hypotheses.push_back(hyp("growth-index-below-dimension", below,
                                   "index " + fmt6(idx_phi.value) + ", dimension " +
                                       std::to_string(dim)));
        r.norm = norm_phi_infty(w, phi, dim, cfg.norm);
        r.verdict = route_verdict(r.hypotheses, true, r.norm.finite);
        r.constant = r.norm.finite ? r.norm.value : kInf;
        rep.routes.push_back(std::move(r));
    }

    {  // weights with bounded maximal-times-eta product
        RouteReport r;
        r.id = "T1.4";
        r.hypotheses.push_back(hyp("phi-delta-prime", phi_dp.consistent, submult_detail(phi_dp)));
        r.hypotheses.push_back(
            hyp("phi-conjugate-delta-2", phic_d2.consistent, doubling_detail(phic_d2)));
        r.norm = norm_x_phi(w, phi, dim, cfg.norm);
        r.hypotheses.push_back(hyp("eta-limit-at-zero", r.norm.hypothesis_ok,
                                   r.norm.hypothesis_note.empty() ? "finite limit"
                                                                  : r.norm.hypothesis_note));
        r.verdict = route_verdict(r.hypotheses, true, r.norm.finite);
        r.constant = r.norm.finite ? r.norm.value : kInf;
        rep.routes.push_back(std::move(r));
    }

    {  // integrable weights on a finite-measure domain
        RouteReport r;
        r.id = "T1.5";
        r.hypotheses.push_back(hyp("finite-domain-measure", std::isfinite(wo), fmt6(wo)));
        r.hypotheses.push_back(
            hyp("phi-conjugate-delta-prime", phic_dp.consistent, submult_detail(phic_dp)));
        r.hypotheses.push_back(hyp("tail-growth-integrable",
                                   tail_growth.verdict == Verdict3::holds,
                                   integ_detail(tail_growth)));
        r.norm = norm_l1(w);
        r.verdict = route_verdict(r.hypotheses, true, r.norm.finite);
        r.constant = power_max_constant(r.norm.finite ? r.norm.value : kInf, idx_psi);
        rep.routes.push_back(std::move(r));
    }

    {  // weights with bounded maximal-times-pair-eta product
        RouteReport r;
        r.id = "T1.7";
        r.hypotheses.push_back(hyp("transform-integrand-at-zero",
                                   transform.verdict == Verdict3::holds, integ_detail(transform)));
        r.hypotheses.push_back(hyp("phi-delta-prime", phi_dp.consistent, submult_detail(phi_dp)));
        r.hypotheses.push_back(
            hyp("phi-conjugate-delta-prime", phic_dp.consistent, submult_detail(phic_dp)));
        r.hypotheses.push_back(hyp("psi-delta-prime", psi_dp.consistent, submult_detail(psi_dp)));
        r.hypotheses.push_back(hyp("composition-splits-sums", split.holds,
                                   "splitting constant " + fmt6(split.splitting_constant)));
        const EtaPsiCurve pair_curve(phi, psi, dim, wo, cfg.norm);
        if (pair_curve.divergent()) {
            r.hypotheses.push_back(hyp("pair-eta-limit-at-zero", false,
                                       "zeta norm infinite for every cutoff"));
        } else {
            const EtaLimitCheck lim = check_eta_limit(pair_curve);
            std::string detail = "fitted slope " + fmt6(lim.fitted_slope);
            if (lim.verdict == Verdict3::inconclusive) detail += " (inconclusive)";
            r.hypotheses.push_back(
                hyp("pair-eta-limit-at-zero", lim.verdict == Verdict3::holds, std::move(detail)));
        }
        r.norm = norm_x_phi_psi(w, phi, psi, dim, cfg.norm);
        r.verdict = route_verdict(r.hypotheses, true, r.norm.finite);
        r.constant = power_max_constant(r.norm.finite ? r.norm.value : kInf, idx_psi);
        rep.routes.push_back(std::move(r));
    }

    if (cfg.with_muckenhoupt) {
        const double exponent = 1.0 / static_cast<double>(dim) - 1.0;
        auto rearr = [w](double s) { return w.rearrangement(s); };
        auto vfun = [phi, exponent](double s) { return 1.0 / phi(std::pow(s, exponent)); };
        rep.muckenhoupt = muckenhoupt_sup_same(phi, rearr, vfun, wo, cfg);
    }

    if (cfg.with_capacity && w.has_radial_realization()) {
        double outer = cfg.capacity_outer;
        const double dr = w.domain_radius();
        if (std::isfinite(dr)) outer = std::min(outer, dr);
        std::vector<double> radii;
        const int n = std::max(cfg.capacity_grid, 1);
        for (int k = 1; k <= n; ++k)
            radii.push_back(outer * k / static_cast<double>(n + 1));
        try {
            rep.capacity = capacity_criterion(w, phi, psi, dim, outer, radii, cfg);
        } catch (const std::runtime_error&) {
            // incompatible weight geometry: leave the capacity slot empty
        }
    }

    return rep;
}

}  // namespace orlicz
