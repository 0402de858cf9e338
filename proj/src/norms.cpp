#include "orlicz/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>

namespace orlicz {

namespace {

std::string fmt6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Recognize a pure power c t^p from its canonical spec string so the ubiquitous
// power cases get closed-form modulars instead of nested quadrature.
bool parse_power_spec(const std::string& spec, double* p, double* c) {
    if (spec.rfind("pow:p=", 0) != 0) return false;
    const char* cur = spec.c_str() + 6;
    char* end = nullptr;
    const double pv = std::strtod(cur, &end);
    if (end == cur) return false;
    double cv = 1.0;
    if (*end == ',') {
        if (std::strncmp(end, ",c=", 3) != 0) return false;
        cur = end + 3;
        cv = std::strtod(cur, &end);
        if (end == cur) return false;
    }
    if (*end != '\0') return false;
    *p = pv;
    *c = cv;
    return true;
}

struct WindowScan {
    double value = -kInf;
    double arg = kNaN;
    bool hit_inf = false;
};

void scan_points(const std::function<double(double)>& fn, const std::vector<double>& pts, WindowScan* w) {
    for (double x : pts) {
        const double v = fn(x);
        if (std::isnan(v)) continue;
        if (v == kInf) {
            w->value = kInf;
            w->arg = x;
            w->hit_inf = true;
            return;
        }
        if (v > w->value) {
            w->value = v;
            w->arg = x;
        }
    }
}

}  // namespace

const NormConfig& default_norm_config() {
    static const NormConfig cfg;
    return cfg;
}

bool power_form(const YoungFunction& f, double* p, double* coeff) {
    return parse_power_spec(f.spec_string(), p, coeff);
}

const char* to_string(NormKind k) {
    switch (k) {
        case NormKind::luxemburg: return "luxemburg";
        case NormKind::phi_infty: return "phi_infty";
        case NormKind::x_phi: return "x_phi";
        case NormKind::x_phi_psi: return "x_phi_psi";
        case NormKind::l1: return "l1";
        case NormKind::orlicz_bphi: return "orlicz_bphi";
    }
    return "?";
}

SupScan scan_sup(const std::function<double(double)>& fn, double lo, double hi, int per_decade,
                 bool lo_structural, bool hi_structural, double divergence_growth) {
    if (!(lo > 0.0) || !(hi > lo)) throw DomainError("scan_sup: window must satisfy 0 < lo < hi");
    per_decade = std::max(per_decade, 2);

    int pd = per_decade;
    WindowScan best;
    scan_points(fn, geometric_grid(lo, hi, pd), &best);
    for (int round = 0; round < 2 && !best.hit_inf; ++round) {
        WindowScan finer;
        scan_points(fn, geometric_grid(lo, hi, pd * 2), &finer);
        const bool settled =
            !finer.hit_inf && std::fabs(finer.value - best.value) <= 1e-6 * (std::fabs(finer.value) + 1e-300);
        best = finer;
        pd *= 2;
        if (settled) break;
    }

    auto polish = [&fn, &pd](WindowScan* w, double wlo, double whi) {
        if (w->hit_inf || !(w->value > -kInf) || !std::isfinite(w->arg)) return;
        const double step = std::pow(10.0, 1.0 / pd);
        const double a = std::max(wlo, w->arg / step);
        const double b = std::min(whi, w->arg * step);
        if (!(b > a)) return;
        const GoldenResult g = golden_max(fn, a, b, 80);
        if (std::isnan(g.value)) return;
        if (g.value == kInf) {
            w->value = kInf;
            w->arg = g.x;
            w->hit_inf = true;
            return;
        }
        if (g.value > w->value) {
            w->value = g.value;
            w->arg = g.x;
        }
    };
    polish(&best, lo, hi);

    // Extend past artificial window ends while the maximiser sits there.  A sup
    // that keeps climbing through three extensions is declared infinite.
    double last_growth = 0.0;
    int rounds = 0;
    while (!best.hit_inf && rounds < 3 && std::isfinite(best.arg)) {
        const double step = std::pow(10.0, 1.0 / pd) * 1.0001;
        const bool at_lo = !lo_structural && best.arg <= lo * step && lo > 1e-250;
        const bool at_hi = !hi_structural && best.arg >= hi / step && hi < 1e250;
        if (!at_lo && !at_hi) break;
        const double prev = best.value;
        if (at_lo) {
            const double nlo = lo * 1e-2;
            WindowScan ext;
            scan_points(fn, geometric_grid(nlo, lo, pd), &ext);
            if (ext.hit_inf) { best = ext; break; }
            if (ext.value > best.value) { best.value = ext.value; best.arg = ext.arg; }
            lo = nlo;
        }
        if (at_hi) {
            const double nhi = hi * 1e2;
            WindowScan ext;
            scan_points(fn, geometric_grid(hi, nhi, pd), &ext);
            if (ext.hit_inf) { best = ext; break; }
            if (ext.value > best.value) { best.value = ext.value; best.arg = ext.arg; }
            hi = nhi;
        }
        polish(&best, lo, hi);
        last_growth = (best.value - prev) / std::max(std::fabs(prev), 1e-300);
        ++rounds;
        if (last_growth <= 0.2 * divergence_growth) break;  // plateaued at the edge
    }

    SupScan out;
    out.grid = GridSpec{lo, hi, pd, false};
    if (best.hit_inf) {
        out.value = kInf;
        out.arg = best.arg;
        out.finite = false;
        return out;
    }
    if (!(best.value > -kInf)) {
        out.value = 0.0;
        out.finite = true;
        return out;
    }
    if (rounds >= 3 && last_growth > divergence_growth && std::isfinite(best.arg)) {
        const double step = std::pow(10.0, 1.0 / pd) * 1.0001;
        const bool still_lo = !lo_structural && best.arg <= lo * step;
        const bool still_hi = !hi_structural && best.arg >= hi / step;
        if (still_lo || still_hi) {
            out.value = kInf;
            out.arg = best.arg;
            out.finite = false;
            return out;
        }
    }
    out.value = best.value;
    out.arg = best.arg;
    out.finite = true;
    return out;
}

// --- Luxemburg norms -------------------------------------------------------

double luxemburg_from_modular(const std::function<double(double)>& modular, double seed) {
    if (!(seed > 0.0) || !std::isfinite(seed)) seed = 1.0;
    auto above = [&modular](double lam) {
        const double m = modular(lam);
        if (std::isnan(m)) throw NonConvergence("luxemburg: modular evaluated to NaN", lam, lam);
        return m > 1.0;
    };
    double lo = seed, hi = seed;
    if (above(seed)) {
        do {
            hi *= 8.0;
            if (hi > 1e280) return kInf;  // modular exceeds 1 at every scale
        } while (above(hi));
        lo = hi / 8.0;
    } else {
        do {
            lo *= 0.125;
            if (lo < 1e-280) return 0.0;  // vanishing profile
        } while (!above(lo));
        hi = lo * 8.0;
    }
    for (int it = 0; it < 120 && hi - lo > 1e-12 * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        if (above(mid)) lo = mid;
        else hi = mid;
    }
    return hi;  // infimum of {lambda : modular(lambda) <= 1}
}

double luxemburg_scalar(const YoungFunction& f, double value, double measure) {
    if (value < 0.0 || measure < 0.0) throw DomainError("luxemburg_scalar: negative input");
    if (value == 0.0 || measure == 0.0) return 0.0;
    if (!std::isfinite(measure)) return kInf;
    return luxemburg_from_modular([&](double lam) { return measure * f(value / lam); },
                                  std::max(value, 1e-8));
}

double luxemburg_zeta(const YoungFunction& f, int dim, double r, double omega) {
    if (dim < 2) throw DomainError("luxemburg_zeta: dimension must be at least 2");
    if (!(r >= 0.0) || !(omega > r)) throw DomainError("luxemburg_zeta: need 0 <= r < omega");
    const double e = 1.0 / dim - 1.0;

    double p = 0, c = 0;
    if (parse_power_spec(f.spec_string(), &p, &c)) {
        // modular = c lam^{-p} * J with J the closed-form integral of s^{e p}
        const double a = e * p;
        double J;
        if (!std::isfinite(omega)) {
            if (a >= -1.0) return kInf;
            if (r == 0.0) return kInf;
            J = std::pow(r, a + 1.0) / (-a - 1.0);
        } else if (std::fabs(a + 1.0) < 1e-13) {
            if (r == 0.0) return kInf;
            J = std::log(omega / r);
        } else {
            const double rpart = r > 0.0 ? std::pow(r, a + 1.0) : 0.0;
            if (r == 0.0 && a < -1.0) return kInf;
            J = (std::pow(omega, a + 1.0) - rpart) / (a + 1.0);
        }
        if (!(J > 0.0)) return 0.0;
        return std::pow(c * J, 1.0 / p);
    }

    auto modular = [&](double lam) {
        auto integrand = [&](double s) { return f(std::pow(s, e) / lam); };
        double total = 0.0;
        double b = omega;
        if (!std::isfinite(b)) {
            const double cut = std::max(1.0, 2.0 * r);
            const ImproperResult tail = integrate_to_inf(integrand, cut);
            if (tail.divergent) return kInf;
            total += tail.value;
            b = cut;
        }
        if (b > r) {
            if (r == 0.0) {
                const ImproperResult head = integrate_to_zero(integrand, b);
                if (head.divergent) return kInf;
                total += head.value;
            } else {
                total += integrate(integrand, r, b);
            }
        }
        return total;
    };
    const double s0 = r > 0.0 ? r : std::min(1.0, 0.5 * omega);
    return luxemburg_from_modular(modular, std::max(std::pow(s0, e), 1e-8));
}

double luxemburg_weight(const YoungFunction& f, const WeightProfile& w) {
    const double omega = w.omega_measure();
    // the composed function is often tabulated, so guard the improper fits
    // against interpolation noise around the critical endpoint exponent
    QuadOptions opt;
    opt.critical_margin = 5e-3;
    auto modular = [&, opt](double lam) {
        auto integrand = [&](double t) { return f(w.rearrangement(t) / lam); };
        double total = 0.0;
        double b = omega;
        if (!std::isfinite(b)) {
            const ImproperResult tail = integrate_to_inf(integrand, 1.0, opt);
            if (tail.divergent) return kInf;
            total += tail.value;
            b = 1.0;
        }
        const ImproperResult head = integrate_to_zero(integrand, b, opt);
        if (head.divergent) return kInf;
        return total + head.value;
    };
    const double probe = w.rearrangement(std::isfinite(omega) ? 0.5 * omega : 1.0);
    return luxemburg_from_modular(modular, probe > 0.0 ? probe : 1.0);
}

// --- eta curves ------------------------------------------------------------

struct EtaCurve::Impl {
    YoungFunction f;
    YoungFunction conj;
    int dim = 0;
    double omega = kInf;
    std::vector<double> nodes;  // ascending
    std::vector<double> tail;   // tail[k] = integral of 1/G over (nodes[k], omega)
    bool divergent = false;
    double head_exponent = 0.0;  // local power of 1/G below the first node

    Impl(const YoungFunction& f_, int dim_, double omega_, const NormConfig& cfg)
        : f(f_), conj(f_.conjugate(cfg.young)), dim(dim_), omega(omega_) {
        if (dim < 2) throw DomainError("eta curve: dimension must be at least 2");
        if (!(omega > 0.0)) throw DomainError("eta curve: domain measure must be positive");
        const double hi = std::isfinite(omega) ? omega : 1e9;
        const double lo = std::min(1e-9, hi * 1e-6);
        nodes = geometric_grid(lo, hi, std::max(cfg.eta_per_decade, 4));
        tail.assign(nodes.size(), 0.0);
        auto invg = [this](double s) { return inv_g(s); };
        if (!std::isfinite(omega)) {
            const ImproperResult tl = integrate_to_inf(invg, nodes.back());
            if (tl.divergent) {
                divergent = true;
                return;
            }
            tail.back() = tl.value;
        }
        for (std::size_t k = nodes.size() - 1; k-- > 0;)
            tail[k] = tail[k + 1] + integrate(invg, nodes[k], nodes[k + 1]);
        head_exponent = fit_power_exponent_zero(invg, nodes.front());
    }

    double g(double s) const {
        const double z = std::pow(s, 1.0 / dim - 1.0);
        const double v = f(z);
        if (!std::isfinite(v)) return 0.0;  // limiting value as the argument blows up
        if (!(v > 0.0)) return kInf;
        return v * conj(1.0 / v);
    }

    double inv_g(double s) const {
        const double G = g(s);
        if (!(G > 0.0)) return kInf;
        return std::isfinite(G) ? 1.0 / G : 0.0;
    }

    double tail_at(double r) const {
        if (divergent) return kInf;
        if (!(r > 0.0)) throw DomainError("eta curve: argument must be positive");
        if (std::isfinite(omega) && r >= omega) return 0.0;
        auto invg = [this](double s) { return inv_g(s); };
        if (r >= nodes.back()) {
            if (std::isfinite(omega)) return integrate(invg, r, omega);
            const ImproperResult tl = integrate_to_inf(invg, r);
            return tl.divergent ? kInf : tl.value;
        }
        if (r <= nodes.front()) {
            // analytic continuation of the cached head under the power model
            const double lo = nodes.front();
            const double m = head_exponent;
            const double c0 = inv_g(lo) / std::pow(lo, m);
            double extra;
            if (std::fabs(m + 1.0) < 1e-13) extra = c0 * std::log(lo / r);
            else extra = c0 * (std::pow(lo, m + 1.0) - std::pow(r, m + 1.0)) / (m + 1.0);
            return tail.front() + std::max(extra, 0.0);
        }
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), r);
        const std::size_t j = static_cast<std::size_t>(it - nodes.begin());
        return tail[j] + integrate(invg, r, nodes[j]);
    }
};

EtaCurve::EtaCurve(const YoungFunction& f, int dim, double omega, const NormConfig& cfg)
    : impl_(std::make_shared<const Impl>(f, dim, omega, cfg)) {}

double EtaCurve::g_value(double s) const {
    if (!(s > 0.0)) throw DomainError("eta curve: argument must be positive");
    return impl_->g(s);
}

double EtaCurve::tail_integral(double r) const { return impl_->tail_at(r); }

double EtaCurve::eta(double r) const {
    const double T = impl_->tail_at(r);
    if (!std::isfinite(T)) return kInf;
    return r * impl_->f.density(T);
}

bool EtaCurve::divergent() const { return impl_->divergent; }
double EtaCurve::omega() const { return impl_->omega; }
int EtaCurve::dimension() const { return impl_->dim; }

struct EtaPsiCurve::Impl {
    YoungFunction phi;
    YoungFunction psi;
    YoungFunction phi_conj;
    int dim = 0;
    double omega = kInf;
    bool divergent = false;
    // warm-start seed for successive Luxemburg solves; a stale value only
    // costs bracket expansions, never correctness
    mutable double warm = 1.0;

    Impl(const YoungFunction& phi_, const YoungFunction& psi_, int dim_, double omega_,
         const NormConfig& cfg)
        : phi(phi_), psi(psi_), phi_conj(phi_.conjugate(cfg.young)), dim(dim_), omega(omega_) {
        if (dim < 2) throw DomainError("eta curve: dimension must be at least 2");
        if (!(omega > 0.0)) throw DomainError("eta curve: domain measure must be positive");
        const double probe = std::isfinite(omega) ? 0.5 * omega : 1.0;
        divergent = !std::isfinite(zeta_norm(probe));
    }

    double zeta_norm(double r) const {
        double p = 0, c = 0;
        if (parse_power_spec(phi_conj.spec_string(), &p, &c))
            return luxemburg_zeta(phi_conj, dim, r, omega);  // closed form inside
        const double e = 1.0 / dim - 1.0;
        auto modular = [&](double lam) {
            auto integrand = [&](double s) { return phi_conj(std::pow(s, e) / lam); };
            double total = 0.0;
            double b = omega;
            if (!std::isfinite(b)) {
                const double cut = std::max(1.0, 2.0 * r);
                const ImproperResult tail = integrate_to_inf(integrand, cut);
                if (tail.divergent) return kInf;
                total += tail.value;
                b = cut;
            }
            if (b > r) total += integrate(integrand, r, b);
            return total;
        };
        const double lam = luxemburg_from_modular(modular, warm);
        if (std::isfinite(lam) && lam > 0.0) warm = lam;
        return lam;
    }

    double eta(double r) const {
        if (!(r > 0.0)) throw DomainError("eta curve: argument must be positive");
        const double z = zeta_norm(r);
        if (!std::isfinite(z)) return kInf;
        return r * psi(z);
    }
};

EtaPsiCurve::EtaPsiCurve(const YoungFunction& phi, const YoungFunction& psi, int dim, double omega,
                         const NormConfig& cfg)
    : impl_(std::make_shared<Impl>(phi, psi, dim, omega, cfg)) {}

double EtaPsiCurve::zeta_norm(double r) const {
    if (!(r >= 0.0)) throw DomainError("eta curve: argument must be nonnegative");
    return impl_->zeta_norm(r);
}

double EtaPsiCurve::eta(double r) const { return impl_->eta(r); }
bool EtaPsiCurve::divergent() const { return impl_->divergent; }
double EtaPsiCurve::omega() const { return impl_->omega; }
int EtaPsiCurve::dimension() const { return impl_->dim; }

EtaLimitCheck check_eta_limit(const std::function<double(double)>& eta, double margin) {
    EtaLimitCheck out;
    const std::vector<double> rs = logspace(1e-8, 1e-5, 13);
    std::vector<double> vals;
    vals.reserve(rs.size());
    for (double r : rs) {
        const double v = eta(r);
        if (!std::isfinite(v)) {
            out.verdict = Verdict3::fails;
            out.sample_value = kInf;
            return out;
        }
        vals.push_back(v);
    }
    out.sample_value = vals.front();
    const LineFit fit = fit_loglog(rs, vals);
    out.fitted_slope = fit.slope;
    if (fit.slope > margin) {
        out.verdict = Verdict3::holds;  // decays to zero
    } else if (fit.slope < -margin) {
        out.verdict = Verdict3::fails;  // climbs as r -> 0
    } else {
        // near-flat: accept as a finite limit when the probed values agree
        const double a = vals.front(), b = vals.back();
        const bool flat = a > 0.0 && b > 0.0 && a / b < 2.0 && b / a < 2.0;
        out.verdict = flat ? Verdict3::holds : Verdict3::inconclusive;
    }
    return out;
}

EtaLimitCheck check_eta_limit(const EtaCurve& curve) {
    if (curve.divergent()) {
        EtaLimitCheck out;
        out.verdict = Verdict3::fails;
        out.sample_value = kInf;
        return out;
    }
    return check_eta_limit([&curve](double r) { return curve.eta(r); });
}

EtaLimitCheck check_eta_limit(const EtaPsiCurve& curve) {
    if (curve.divergent()) {
        EtaLimitCheck out;
        out.verdict = Verdict3::fails;
        out.sample_value = kInf;
        return out;
    }
    return check_eta_limit([&curve](double r) { return curve.eta(r); });
}

// --- pointwise convenience wrappers ---------------------------------------

double g_phi(const YoungFunction& f, int dim, double s, const YoungConfig& cfg) {
    if (dim < 2) throw DomainError("g_phi: dimension must be at least 2");
    if (!(s > 0.0)) throw DomainError("g_phi: argument must be positive");
    const YoungFunction conj = f.conjugate(cfg);
    const double v = f(std::pow(s, 1.0 / dim - 1.0));
    if (!std::isfinite(v)) return 0.0;
    if (!(v > 0.0)) return kInf;
    return v * conj(1.0 / v);
}

double eta_phi(const YoungFunction& f, int dim, double omega, double r, const NormConfig& cfg) {
    return EtaCurve(f, dim, omega, cfg).eta(r);
}

double eta_phi_psi(const YoungFunction& phi, const YoungFunction& psi, int dim, double omega,
                   double r, const NormConfig& cfg) {
    return EtaPsiCurve(phi, psi, dim, omega, cfg).eta(r);
}

// --- norm reports ----------------------------------------------------------

namespace {

// shared scaffold: sup over (0, |domain|) of maximal(r) * factor(r)
NormReport sup_norm_report(const WeightProfile& w, NormKind kind,
                           const std::function<double(double)>& factor, bool factor_divergent,
                           const NormConfig& cfg, bool hyp_ok, std::string note) {
    NormReport rep;
    rep.kind = kind;
    rep.hypothesis_ok = hyp_ok;
    rep.hypothesis_note = std::move(note);
    const double omega = w.omega_measure();
    const MaximalResult probe = w.maximal(std::isfinite(omega) ? 0.5 * omega : 1.0);
    if (probe.divergent) {
        rep.value = kInf;
        rep.finite = false;
        return rep;
    }
    if (factor_divergent) {
        rep.finite = !(probe.value > 0.0);
        rep.value = rep.finite ? 0.0 : kInf;
        return rep;
    }
    const double hi = std::isfinite(omega) ? omega * (1.0 - 1e-12) : cfg.sup_hi;
    const bool hi_structural = std::isfinite(omega) && omega <= cfg.sup_hi;
    const double lo = std::min(cfg.sup_lo, hi * 1e-4);
    auto fn = [&w, &factor](double r) {
        const MaximalResult m = w.maximal(r);
        if (m.divergent) return kInf;
        if (!(m.value > 0.0)) return 0.0;
        return m.value * factor(r);
    };
    const SupScan sc = scan_sup(fn, lo, hi, cfg.sup_per_decade, false, hi_structural,
                                cfg.divergence_growth);
    rep.value = sc.value;
    rep.finite = sc.finite;
    rep.sup_arg = sc.arg;
    rep.grid = sc.grid;
    return rep;
}

}  // namespace

NormReport norm_luxemburg(const WeightProfile& w, const YoungFunction& f) {
    NormReport rep;
    rep.kind = NormKind::luxemburg;
    rep.value = luxemburg_weight(f, w);
    rep.finite = std::isfinite(rep.value);
    rep.grid = GridSpec{0.0, w.omega_measure(), 0, false};
    return rep;
}

NormReport norm_phi_infty(const WeightProfile& w, const YoungFunction& f, int dim,
                          const NormConfig& cfg) {
    if (dim < 2) throw DomainError("norm_phi_infty: dimension must be at least 2");
    bool hyp_ok = true;
    std::string note;
    const PIndexResult idx = p_index(f, cfg.young);
    if (!(idx.finite && idx.value < dim)) {
        hyp_ok = false;
        note = "growth index " + (idx.finite ? fmt6(idx.value) : std::string("+inf")) +
               " is not below the dimension " + std::to_string(dim);
    }
    const double inv_dim = -1.0 / dim;
    auto factor = [&f, inv_dim](double s) {
        const double d = f(std::pow(s, inv_dim));
        if (!std::isfinite(d)) return 0.0;
        if (!(d > 0.0)) return kInf;
        return 1.0 / d;
    };
    return sup_norm_report(w, NormKind::phi_infty, factor, false, cfg, hyp_ok, std::move(note));
}

NormReport norm_x_phi(const WeightProfile& w, const YoungFunction& f, int dim,
                      const NormConfig& cfg) {
    const EtaCurve curve(f, dim, w.omega_measure(), cfg);
    bool hyp_ok = true;
    std::string note;
    if (curve.divergent()) {
        hyp_ok = false;
        note = "tail integral of 1/G diverges; eta is infinite everywhere";
    } else {
        const EtaLimitCheck lim = check_eta_limit(curve);
        if (lim.verdict != Verdict3::holds) {
            hyp_ok = false;
            note = std::string("eta limit at zero: ") + to_string(lim.verdict) +
                   " (fitted slope " + fmt6(lim.fitted_slope) + ")";
        }
    }
    auto factor = [&curve](double r) { return curve.eta(r); };
    return sup_norm_report(w, NormKind::x_phi, factor, curve.divergent(), cfg, hyp_ok,
                           std::move(note));
}

NormReport norm_x_phi_psi(const WeightProfile& w, const YoungFunction& phi, const YoungFunction& psi,
                          int dim, const NormConfig& cfg) {
    const EtaPsiCurve curve(phi, psi, dim, w.omega_measure(), cfg);
    bool hyp_ok = true;
    std::string note;
    const IntegrabilityCheck h1 = check_transform_hypothesis(phi, dim, cfg.young);
    if (h1.verdict != Verdict3::holds) {
        hyp_ok = false;
        note = std::string("transform hypothesis for the base function: ") + to_string(h1.verdict);
    }
    if (curve.divergent()) {
        hyp_ok = false;
        if (!note.empty()) note += "; ";
        note += "zeta norm diverges; eta is infinite everywhere";
    } else {
        const EtaLimitCheck lim = check_eta_limit(curve);
        if (lim.verdict != Verdict3::holds) {
            hyp_ok = false;
            if (!note.empty()) note += "; ";
            note += std::string("eta limit at zero: ") + to_string(lim.verdict) +
                    " (fitted slope " + fmt6(lim.fitted_slope) + ")";
        }
    }
    auto factor = [&curve](double r) { return curve.eta(r); };
    return sup_norm_report(w, NormKind::x_phi_psi, factor, curve.divergent(), cfg, hyp_ok,
                           std::move(note));
}

NormReport norm_l1(const WeightProfile& w) {
    NormReport rep;
    rep.kind = NormKind::l1;
    const double omega = w.omega_measure();
    rep.grid = GridSpec{0.0, omega, 0, false};
    auto integrand = [&w](double t) { return w.rearrangement(t); };
    double total = 0.0;
    double b = omega;
    if (!std::isfinite(b)) {
        const ImproperResult tail = integrate_to_inf(integrand, 1.0);
        if (tail.divergent) {
            rep.value = kInf;
            rep.finite = false;
            return rep;
        }
        total += tail.value;
        b = 1.0;
    }
    const ImproperResult head = integrate_to_zero(integrand, b);
    if (head.divergent) {
        rep.value = kInf;
        rep.finite = false;
        return rep;
    }
    rep.value = total + head.value;
    rep.finite = true;
    return rep;
}

NormReport norm_orlicz_bphi(const WeightProfile& w, const ConjugateBundle& bundle) {
    NormReport rep;
    rep.kind = NormKind::orlicz_bphi;
    rep.value = luxemburg_weight(bundle.b_phi_complement, w);
    rep.finite = std::isfinite(rep.value);
    rep.grid = GridSpec{0.0, w.omega_measure(), 0, false};
    return rep;
}

}  // namespace orlicz
