#include "orlicz/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace orlicz {

namespace {

enum class WForm { radial_power, constant_form, indicator_form, sampled_form, radial_table_form };

std::string fmt_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// measure of {u > s} for a piecewise-linear radial function on nodes rho
double level_measure(const std::vector<double>& rho, const std::vector<double>& u, int dim, double s) {
    const double wN = unit_ball_volume(dim);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
        const double a = rho[k], b = rho[k + 1];
        const double ua = u[k], ub = u[k + 1];
        const bool above_a = ua > s, above_b = ub > s;
        if (above_a && above_b) {
            total += wN * (std::pow(b, dim) - std::pow(a, dim));
        } else if (above_a || above_b) {
            const double x = a + (s - ua) * (b - a) / (ub - ua);
            if (above_a)
                total += wN * (std::pow(x, dim) - std::pow(a, dim));
            else
                total += wN * (std::pow(b, dim) - std::pow(x, dim));
        }
    }
    return total;
}

// a.e. derivative of the measure above: sum over level crossings
double level_measure_slope(const std::vector<double>& rho, const std::vector<double>& u, int dim, double s) {
    const double wN = unit_ball_volume(dim);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
        const double a = rho[k], b = rho[k + 1];
        const double ua = u[k], ub = u[k + 1];
        const bool above_a = ua > s, above_b = ub > s;
        if (above_a == above_b) continue;
        const double dx_ds = (b - a) / (ub - ua);
        const double x = a + (s - ua) * dx_ds;
        const double rim = dim * wN * std::pow(x, dim - 1);
        total += above_a ? rim * dx_ds : -rim * dx_ds;
    }
    return total;
}

double level_rearrangement(const std::vector<double>& rho, const std::vector<double>& u, int dim, double t,
                           double sup) {
    if (!(sup > 0.0)) return 0.0;
    if (level_measure(rho, u, dim, 0.0) < t) return 0.0;
    double lo = 0.0, hi = sup;
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * sup; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (level_measure(rho, u, dim, mid) < t)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

struct WeightProfile::Impl {
    WForm form = WForm::constant_form;
    int dim = 0;
    double omega = kInf;
    double a = 0;  // radial power exponent
    double c = 0;  // constant value
    double m = 0;  // constant / indicator measure
    std::vector<Cell> cells;      // sampled, sorted by descending value
    std::vector<double> cum;      // cumulative cell measure
    std::vector<double> vm_cum;   // cumulative value*measure
    std::vector<double> rho, g;   // radial table
    double gsup = 0;
    std::string spec;
};

WeightProfile WeightProfile::radial_power(double exponent, int dim, double omega) {
    if (!(exponent > 0.0)) throw DomainError("radial_power weight: exponent must be positive");
    if (dim < 2) throw DomainError("radial_power weight: dimension must be at least 2");
    if (!(omega > 0.0)) throw DomainError("radial_power weight: domain measure must be positive");
    auto impl = std::make_shared<Impl>();
    impl->form = WForm::radial_power;
    impl->a = exponent;
    impl->dim = dim;
    impl->omega = omega;
    impl->spec = "hardy:a=" + fmt_num(exponent);
    return WeightProfile(impl);
}

WeightProfile WeightProfile::constant(double c, double measure, int dim) {
    if (!(c >= 0.0)) throw DomainError("constant weight: value must be nonnegative");
    if (!(measure > 0.0) || !std::isfinite(measure)) throw DomainError("constant weight: measure must be finite positive");
    auto impl = std::make_shared<Impl>();
    impl->form = WForm::constant_form;
    impl->c = c;
    impl->m = measure;
    impl->omega = measure;
    impl->dim = dim;
    impl->spec = "const:c=" + fmt_num(c) + ",m=" + fmt_num(measure);
    return WeightProfile(impl);
}

WeightProfile WeightProfile::indicator(double m, double omega, int dim) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("indicator weight: measure must be finite positive");
    if (!(omega >= m)) throw DomainError("indicator weight: domain measure must cover the support");
    auto impl = std::make_shared<Impl>();
    impl->form = WForm::indicator_form;
    impl->m = m;
    impl->omega = omega;
    impl->dim = dim;
    impl->spec = "indicator:m=" + fmt_num(m);
    return WeightProfile(impl);
}

WeightProfile WeightProfile::sampled(std::vector<Cell> cells, double omega, const std::string& origin) {
    if (cells.empty()) throw DomainError("sampled weight: at least one cell required");
    for (const Cell& c : cells) {
        if (!(c.measure > 0.0) || !std::isfinite(c.measure)) throw DomainError("sampled weight: cell measures must be positive");
        if (!(c.value >= 0.0)) throw DomainError("sampled weight: cell values must be nonnegative");
    }
    std::sort(cells.begin(), cells.end(), [](const Cell& x, const Cell& y) { return x.value > y.value; });
    auto impl = std::make_shared<Impl>();
    impl->form = WForm::sampled_form;
    impl->cells = std::move(cells);
    impl->cum.resize(impl->cells.size());
    impl->vm_cum.resize(impl->cells.size());
    double cm = 0, vm = 0;
    for (std::size_t k = 0; k < impl->cells.size(); ++k) {
        cm += impl->cells[k].measure;
        vm += impl->cells[k].value * impl->cells[k].measure;
        impl->cum[k] = cm;
        impl->vm_cum[k] = vm;
    }
    impl->omega = std::isnan(omega) ? cm : omega;
    if (impl->omega < cm * (1 - 1e-12)) throw DomainError("sampled weight: cells exceed the domain measure");
    impl->spec = "sample:" + (origin.empty() ? std::string("<memory>") : origin);
    return WeightProfile(impl);
}

WeightProfile WeightProfile::radial_table(const std::vector<double>& rho, const std::vector<double>& g,
                                          int dim, const std::string& origin) {
    if (rho.size() < 2 || rho.size() != g.size()) throw DomainError("radial weight: need matching node arrays");
    if (rho.front() != 0.0) throw DomainError("radial weight: first node must sit at rho = 0");
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (k > 0 && !(rho[k] > rho[k - 1])) throw DomainError("radial weight: radii must increase strictly");
        if (!(g[k] >= 0.0) || !std::isfinite(g[k])) throw DomainError("radial weight: values must be finite nonnegative");
    }
    if (dim < 2) throw DomainError("radial weight: dimension must be at least 2");
    auto impl = std::make_shared<Impl>();
    impl->form = WForm::radial_table_form;
    impl->rho = rho;
    impl->g = g;
    impl->dim = dim;
    impl->gsup = *std::max_element(g.begin(), g.end());
    impl->omega = unit_ball_volume(dim) * std::pow(rho.back(), dim);
    impl->spec = "radial:" + (origin.empty() ? std::string("<memory>") : origin);
    return WeightProfile(impl);
}

double WeightProfile::rearrangement(double t) const {
    const Impl& im = *impl_;
    if (!(t > 0.0) || !(t < im.omega)) throw DomainError("rearrangement: argument outside (0, |domain|)");
    switch (im.form) {
        case WForm::radial_power:
            return std::pow(unit_ball_volume(im.dim) / t, im.a / im.dim);
        case WForm::constant_form:
            return im.c;
        case WForm::indicator_form:
            return t < im.m ? 1.0 : 0.0;
        case WForm::sampled_form: {
            auto it = std::upper_bound(im.cum.begin(), im.cum.end(), t);
            if (it == im.cum.end()) return 0.0;
            return im.cells[static_cast<std::size_t>(it - im.cum.begin())].value;
        }
        case WForm::radial_table_form:
            return level_rearrangement(im.rho, im.g, im.dim, t, im.gsup);
    }
    return kNaN;
}

MaximalResult WeightProfile::maximal(double t) const {
    const Impl& im = *impl_;
    if (!(t > 0.0) || !(t < im.omega)) throw DomainError("maximal: argument outside (0, |domain|)");
    switch (im.form) {
        case WForm::constant_form:
            return {im.c, false};
        case WForm::indicator_form:
            return {std::min(1.0, im.m / t), false};
        case WForm::sampled_form: {
            auto it = std::upper_bound(im.cum.begin(), im.cum.end(), t);
            double head;
            if (it == im.cum.end()) {
                head = im.vm_cum.back();
            } else {
                const std::size_t k = static_cast<std::size_t>(it - im.cum.begin());
                const double below_m = k == 0 ? 0.0 : im.cum[k - 1];
                const double below_vm = k == 0 ? 0.0 : im.vm_cum[k - 1];
                head = below_vm + im.cells[k].value * (t - below_m);
            }
            return {head / t, false};
        }
        default: {
            auto rearr = [this](double tau) { return rearrangement(tau); };
            ImproperResult r = integrate_to_zero(rearr, t);
            if (r.divergent) return {kInf, true};
            return {r.value / t, false};
        }
    }
}

double WeightProfile::omega_measure() const { return impl_->omega; }

int WeightProfile::dimension() const { return impl_->dim; }

bool WeightProfile::has_radial_realization() const {
    switch (impl_->form) {
        case WForm::radial_power:
        case WForm::radial_table_form:
            return true;
        case WForm::constant_form:
        case WForm::indicator_form:
            return impl_->dim >= 2;
        default:
            return false;
    }
}

double WeightProfile::radial_value(double rho) const {
    const Impl& im = *impl_;
    if (!has_radial_realization()) throw DomainError("weight has no radial realization");
    if (!(rho >= 0.0)) throw DomainError("radial_value: negative radius");
    const double wN = unit_ball_volume(im.dim);
    switch (im.form) {
        case WForm::radial_power: {
            if (rho == 0.0) return kInf;
            return rho < domain_radius() ? std::pow(rho, -im.a) : 0.0;
        }
        case WForm::constant_form:
            return rho < std::pow(im.m / wN, 1.0 / im.dim) ? im.c : 0.0;
        case WForm::indicator_form:
            return rho < std::pow(im.m / wN, 1.0 / im.dim) ? 1.0 : 0.0;
        case WForm::radial_table_form: {
            if (rho >= im.rho.back()) return 0.0;
            auto it = std::upper_bound(im.rho.begin(), im.rho.end(), rho);
            const std::size_t k = static_cast<std::size_t>(it - im.rho.begin());
            const std::size_t seg = k == 0 ? 0 : k - 1;
            const double s = (rho - im.rho[seg]) / (im.rho[seg + 1] - im.rho[seg]);
            return im.g[seg] + s * (im.g[seg + 1] - im.g[seg]);
        }
        default:
            return kNaN;
    }
}

double WeightProfile::domain_radius() const {
    const Impl& im = *impl_;
    if (!has_radial_realization()) throw DomainError("weight has no radial realization");
    if (!std::isfinite(im.omega)) return kInf;
    return std::pow(im.omega / unit_ball_volume(im.dim), 1.0 / im.dim);
}

const std::string& WeightProfile::spec_string() const { return impl_->spec; }

struct RadialProfile::Impl {
    std::vector<double> rho, u;
    int dim = 0;
    double sup = 0;
};

RadialProfile RadialProfile::from_nodes(std::vector<double> rho, std::vector<double> u, int dim) {
    if (rho.size() < 2 || rho.size() != u.size()) throw DomainError("radial profile: need matching node arrays");
    if (rho.front() != 0.0) throw DomainError("radial profile: first node must sit at rho = 0");
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (k > 0 && !(rho[k] > rho[k - 1])) throw DomainError("radial profile: radii must increase strictly");
        if (!(u[k] >= 0.0) || !std::isfinite(u[k])) throw DomainError("radial profile: values must be finite nonnegative");
    }
    if (u.back() != 0.0) throw DomainError("radial profile: must vanish at the outer radius");
    if (dim < 2) throw DomainError("radial profile: dimension must be at least 2");
    auto impl = std::make_shared<Impl>();
    impl->sup = *std::max_element(u.begin(), u.end());
    impl->rho = std::move(rho);
    impl->u = std::move(u);
    impl->dim = dim;
    return RadialProfile(impl);
}

RadialProfile RadialProfile::cone(int dim, double radius, double height) {
    if (!(radius > 0.0) || !(height >= 0.0)) throw DomainError("cone profile: bad radius or height");
    return from_nodes({0.0, radius}, {height, 0.0}, dim);
}

double RadialProfile::operator()(double rho) const {
    const Impl& im = *impl_;
    if (!(rho >= 0.0)) throw DomainError("radial profile: negative radius");
    if (rho >= im.rho.back()) return 0.0;
    auto it = std::upper_bound(im.rho.begin(), im.rho.end(), rho);
    const std::size_t k = static_cast<std::size_t>(it - im.rho.begin());
    const std::size_t seg = k == 0 ? 0 : k - 1;
    const double s = (rho - im.rho[seg]) / (im.rho[seg + 1] - im.rho[seg]);
    return im.u[seg] + s * (im.u[seg + 1] - im.u[seg]);
}

double RadialProfile::slope(double rho) const {
    const Impl& im = *impl_;
    if (!(rho >= 0.0)) throw DomainError("radial profile: negative radius");
    if (rho >= im.rho.back()) return 0.0;
    auto it = std::upper_bound(im.rho.begin(), im.rho.end(), rho);
    const std::size_t k = static_cast<std::size_t>(it - im.rho.begin());
    const std::size_t seg = k == 0 ? 0 : k - 1;
    return (im.u[seg + 1] - im.u[seg]) / (im.rho[seg + 1] - im.rho[seg]);
}

int RadialProfile::dimension() const { return impl_->dim; }
double RadialProfile::support_radius() const { return impl_->rho.back(); }
double RadialProfile::sup_value() const { return impl_->sup; }

double RadialProfile::distribution(double s) const {
    if (!(s >= 0.0)) throw DomainError("distribution: negative level");
    if (s >= impl_->sup) return 0.0;
    return level_measure(impl_->rho, impl_->u, impl_->dim, s);
}

double RadialProfile::distribution_derivative(double s) const {
    if (!(s >= 0.0)) throw DomainError("distribution_derivative: negative level");
    if (s >= impl_->sup) return 0.0;
    return level_measure_slope(impl_->rho, impl_->u, impl_->dim, s);
}

double RadialProfile::rearrangement(double t) const {
    if (!(t > 0.0)) throw DomainError("rearrangement: argument must be positive");
    return level_rearrangement(impl_->rho, impl_->u, impl_->dim, t, impl_->sup);
}

const std::vector<double>& RadialProfile::rho_nodes() const { return impl_->rho; }
const std::vector<double>& RadialProfile::values() const { return impl_->u; }

namespace {

// piecewise quadrature over (0, upper] with breakpoints and a power-fit head
template <class F>
double piecewise_integral(F&& f, double upper, std::vector<double> breaks) {
    breaks.push_back(upper);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [upper](double b) { return !(b > 0.0) || b > upper * (1 + 1e-12); }),
                 breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::fabs(b - a) <= 1e-12 * (b + 1e-300); }),
                 breaks.end());
    if (breaks.empty()) return 0.0;
    double total = integrate_to_zero(f, breaks.front()).value;
    for (std::size_t k = 1; k < breaks.size(); ++k) total += integrate(f, breaks[k - 1], breaks[k]);
    return total;
}

}  // namespace

BoundPair hardy_littlewood_bound(const WeightProfile& w, const YoungFunction& f, const RadialProfile& u) {
    const int N = u.dimension();
    if (!w.has_radial_realization()) throw DomainError("hardy_littlewood_bound: weight has no radial realization");
    if (w.dimension() != N) throw DomainError("hardy_littlewood_bound: weight and profile dimensions differ");
    const double r_u = u.support_radius();
    if (r_u > w.domain_radius() * (1 + 1e-12))
        throw DomainError("hardy_littlewood_bound: profile support exceeds the weight domain");
    const double wN = unit_ball_volume(N);

    auto lhs_f = [&](double rho) {
        return w.radial_value(rho) * f(u(rho)) * N * wN * std::pow(rho, N - 1);
    };
    std::vector<double> lhs_breaks(u.rho_nodes().begin() + 1, u.rho_nodes().end());
    BoundPair out;
    out.lhs = piecewise_integral(lhs_f, r_u, lhs_breaks);

    const double upper = std::min(w.omega_measure(), u.distribution(0.0));
    if (upper > 0.0) {
        auto rhs_f = [&](double t) { return w.rearrangement(t) * f(u.rearrangement(t)); };
        ImproperResult r = integrate_to_zero(rhs_f, upper);
        out.rhs = r.divergent ? kInf : r.value;
    }
    return out;
}

BoundPair polya_szego_pair(const YoungFunction& f, const RadialProfile& u) {
    const int N = u.dimension();
    const double wN = unit_ball_volume(N);
    const auto& rho = u.rho_nodes();
    const auto& vals = u.values();
    BoundPair out;
    for (std::size_t k = 0; k + 1 < rho.size(); ++k) {
        const double s = std::fabs((vals[k + 1] - vals[k]) / (rho[k + 1] - rho[k]));
        if (s > 0.0) out.rhs += f(s) * wN * (std::pow(rho[k + 1], N) - std::pow(rho[k], N));
    }
    const double sup = u.sup_value();
    if (!(sup > 0.0)) return out;

    const double upper = u.distribution(0.0);
    const double coeff = N * std::pow(wN, 1.0 / N);
    auto integrand = [&](double t) {
        const double s = u.rearrangement(t);
        double ds = -u.distribution_derivative(s);
        if (!(ds > 0.0)) {
            const double lo = -u.distribution_derivative(std::max(s * (1 - 1e-12), 0.0));
            const double hi = -u.distribution_derivative(std::min(s * (1 + 1e-12), sup * (1 - 1e-15)));
            ds = std::max(lo, hi);
            if (!(ds > 0.0)) return 0.0;
        }
        return f(coeff * std::pow(t, 1.0 - 1.0 / N) / ds);
    };
    std::vector<double> breaks;
    for (double v : vals)
        if (v > 0.0 && v < sup) breaks.push_back(u.distribution(v));
    out.lhs = piecewise_integral(integrand, upper, breaks);
    return out;
}

}  // namespace orlicz
