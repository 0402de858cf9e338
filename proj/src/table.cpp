#include "orlicz/table.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

namespace {

constexpr double kSideProbe = 1e-9;   // relative offset for one-sided probes
constexpr double kJumpTol = 1e-7;     // relative mismatch that counts as a jump

double hermite_eval(double x0, double x1, double y0, double d0, double y1, double d1, double x) {
    const double h = x1 - x0;
    const double s = (x - x0) / h;
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    return h00 * y0 + h * h10 * d0 + h01 * y1 + h * h11 * d1;
}

}  // namespace

DensityTable DensityTable::sample(const std::function<double(double)>& f, double t_lo, double t_hi,
                                  int points_per_decade, const std::vector<double>& breakpoints) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw DomainError("DensityTable::sample: bad range");
    std::vector<double> grid = geometric_grid(t_lo, t_hi, points_per_decade);
    std::vector<double> marks;
    for (double b : breakpoints)
        if (b > t_lo * (1 + 1e-12) && b < t_hi * (1 - 1e-12)) marks.push_back(b);
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end(),
                            [](double a, double b) { return std::fabs(b - a) <= 1e-9 * b; }),
                marks.end());
    std::vector<double> nodes;
    nodes.reserve(grid.size() + marks.size());
    std::merge(grid.begin(), grid.end(), marks.begin(), marks.end(), std::back_inserter(nodes));
    nodes.erase(std::unique(nodes.begin(), nodes.end(),
                            [](double a, double b) { return std::fabs(b - a) <= 1e-9 * b; }),
                nodes.end());

    DensityTable tab;
    const std::size_t n = nodes.size();
    tab.x_.resize(n);
    tab.yl_.resize(n);
    tab.yr_.resize(n);
    auto is_mark = [&marks](double t) {
        auto it = std::lower_bound(marks.begin(), marks.end(), t * (1 - 1e-8));
        return it != marks.end() && std::fabs(*it - t) <= 1e-8 * t;
    };
    double prev_r = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = nodes[k];
        tab.x_[k] = std::log(t);
        double vl, vr;
        if (is_mark(t)) {
            tab.marks_.push_back(k);
            vl = f(t * (1 - kSideProbe));
            vr = f(t * (1 + kSideProbe));
            if (std::fabs(vr - vl) <= kJumpTol * std::max(vl, vr)) vl = vr = 0.5 * (vl + vr);
        } else {
            vl = vr = f(t);
        }
        vl = std::max(vl, 1e-300);
        vr = std::max(vr, 1e-300);
        double ll = std::log(vl), lr = std::log(vr);
        // defend against sub-tolerance monotonicity noise in the evaluator
        ll = std::max(ll, prev_r);
        lr = std::max(lr, ll);
        tab.yl_[k] = ll;
        tab.yr_[k] = lr;
        prev_r = lr;
    }
    tab.finalize();
    return tab;
}

DensityTable DensityTable::from_samples(const std::vector<double>& t, const std::vector<double>& v) {
    if (t.size() != v.size() || t.size() < 4)
        throw DomainError("DensityTable::from_samples: need at least four samples");
    DensityTable tab;
    const std::size_t n = t.size();
    tab.x_.resize(n);
    tab.yl_.resize(n);
    tab.yr_.resize(n);
    double prev = -kInf;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(t[k] > 0.0) || (k > 0 && !(t[k] > t[k - 1] * (1 + 1e-12))))
            throw DomainError("DensityTable::from_samples: abscissae must be positive and strictly increasing");
        if (!(v[k] > 0.0)) throw DomainError("DensityTable::from_samples: values must be positive");
        tab.x_[k] = std::log(t[k]);
        double y = std::log(v[k]);
        y = std::max(y, prev);
        tab.yl_[k] = tab.yr_[k] = y;
        prev = y;
    }
    tab.finalize();
    return tab;
}

void DensityTable::finalize() {
    const std::size_t n = x_.size();
    tmin_ = std::exp(x_.front());
    tmax_ = std::exp(x_.back());
    dl_.assign(n, 0.0);
    dr_.assign(n, 0.0);

    // slope-estimation runs never straddle a marked node or a value jump
    std::vector<std::size_t> cuts;
    cuts.push_back(0);
    for (std::size_t k : marks_)
        if (k > 0 && k + 1 < n) cuts.push_back(k);
    for (std::size_t k = 1; k + 1 < n; ++k)
        if (yl_[k] != yr_[k]) cuts.push_back(k);
    cuts.push_back(n - 1);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    auto run_slopes = [this](std::size_t i0, std::size_t i1) {
        // the left run endpoint contributes its right value, the right
        // endpoint its left value; interior nodes are two-sided equal
        const std::size_t m = i1 - i0 + 1;
        auto val = [&](std::size_t k) { return (k == i1) ? yl_[k] : yr_[k]; };
        std::vector<double> d(m, 0.0);
        if (m == 1) return d;
        std::vector<double> h(m - 1), s(m - 1);
        for (std::size_t j = 0; j + 1 < m; ++j) {
            h[j] = x_[i0 + j + 1] - x_[i0 + j];
            s[j] = (val(i0 + j + 1) - val(i0 + j)) / h[j];
        }
        for (std::size_t j = 0; j < m; ++j) {
            double est;
            if (m == 2) {
                est = s[0];
            } else if (j == 0) {
                est = s[0] + (s[0] - s[1]) * h[0] / (h[0] + h[1]);
            } else if (j == m - 1) {
                est = s[m - 2] + (s[m - 2] - s[m - 3]) * h[m - 2] / (h[m - 2] + h[m - 3]);
            } else if (j >= 2 && j + 2 < m && std::fabs(h[j - 2] - h[j]) < 1e-9 && std::fabs(h[j - 1] - h[j]) < 1e-9 &&
                       std::fabs(h[j + 1] - h[j]) < 1e-9) {
                const double hh = h[j];
                est = (val(i0 + j - 2) - 8 * val(i0 + j - 1) + 8 * val(i0 + j + 1) - val(i0 + j + 2)) / (12 * hh);
            } else {
                est = (s[j - 1] * h[j] + s[j] * h[j - 1]) / (h[j - 1] + h[j]);
            }
            // monotonicity box
            double cap;
            if (j == 0) cap = 3 * s[0];
            else if (j == m - 1) cap = 3 * s[m - 2];
            else cap = 3 * std::min(s[j - 1], s[j]);
            d[j] = std::clamp(est, 0.0, std::max(cap, 0.0));
        }
        return d;
    };

    for (std::size_t r = 0; r + 1 < cuts.size(); ++r) {
        const std::size_t i0 = cuts[r], i1 = cuts[r + 1];
        auto d = run_slopes(i0, i1);
        for (std::size_t j = 1; j + 1 < d.size(); ++j) {
            dl_[i0 + j] = d[j];
            dr_[i0 + j] = d[j];
        }
        dr_[i0] = d.front();
        dl_[i1] = d.back();
        if (i0 == 0) dl_[0] = d.front();
        if (i1 == n - 1) dr_[n - 1] = d.back();
    }
    head_exp_ = dr_.front();
    tail_exp_ = dl_.back();

    cum_.resize(n);
    const double m0 = std::max(head_exp_, 0.0);
    cum_[0] = std::exp(yr_[0]) * tmin_ / (m0 + 1.0);
    for (std::size_t k = 0; k + 1 < n; ++k)
        cum_[k + 1] = cum_[k] + segment_integral(k, x_[k + 1]);
}

std::size_t DensityTable::locate(double x) const {
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    if (it == x_.begin()) return 0;
    std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
    return std::min(k, x_.size() - 2);
}

double DensityTable::hermite(std::size_t seg, double x) const {
    return hermite_eval(x_[seg], x_[seg + 1], yr_[seg], dr_[seg], yl_[seg + 1], dl_[seg + 1], x);
}

double DensityTable::segment_integral(std::size_t seg, double x_hi) const {
    const double x_lo = x_[seg];
    if (!(x_hi > x_lo)) return 0.0;
    return gl8([this, seg](double x) { return std::exp(hermite(seg, x) + x); }, x_lo, x_hi);
}

double DensityTable::density(double t) const {
    if (!(t > 0.0)) throw DomainError("DensityTable::density: argument must be positive");
    if (t < tmin_) return std::exp(yr_.front()) * std::pow(t / tmin_, head_exp_);
    if (t > tmax_) return std::exp(yl_.back()) * std::pow(t / tmax_, tail_exp_);
    const double x = std::log(t);
    const std::size_t k = locate(x);
    if (x <= x_[k]) return std::exp(yr_[k]);
    return std::exp(hermite(k, x));
}

double DensityTable::integral(double t) const {
    if (!(t > 0.0)) return 0.0;
    const double m0 = std::max(head_exp_, 0.0);
    if (t <= tmin_) return std::exp(yr_.front()) * std::pow(t / tmin_, m0) * t / (m0 + 1.0);
    if (t >= tmax_) {
        const double m = tail_exp_;
        const double phi_end = std::exp(yl_.back());
        return cum_.back() + phi_end * tmax_ * (std::pow(t / tmax_, m + 1.0) - 1.0) / (m + 1.0);
    }
    const double x = std::log(t);
    const std::size_t k = locate(x);
    return cum_[k] + segment_integral(k, x);
}

double DensityTable::invert_integral(double y, double hint) const {
    if (!(y > 0.0)) return 0.0;
    const double m0 = std::max(head_exp_, 0.0);
    if (y <= cum_.front()) return tmin_ * std::pow(y / cum_.front(), 1.0 / (m0 + 1.0));
    if (y >= cum_.back()) {
        const double m = tail_exp_;
        const double a = std::exp(yl_.back()) * tmax_ / (m + 1.0);
        return tmax_ * std::pow(1.0 + (y - cum_.back()) / a, 1.0 / (m + 1.0));
    }
    std::size_t k;
    bool have = false;
    if (std::isfinite(hint) && hint > tmin_ && hint < tmax_) {
        k = locate(std::log(hint));
        for (int probe = 0; probe < 3 && k > 0 && cum_[k] > y; ++probe) --k;
        for (int probe = 0; probe < 3 && k + 2 < cum_.size() && cum_[k + 1] < y; ++probe) ++k;
        have = cum_[k] <= y && y <= cum_[k + 1];
    }
    if (!have) {
        auto it = std::upper_bound(cum_.begin(), cum_.end(), y);
        k = static_cast<std::size_t>(it - cum_.begin()) - 1;
    }
    k = std::min(k, cum_.size() - 2);
    const double x = solve_increasing([this, k](double xx) { return cum_[k] + segment_integral(k, xx); }, y,
                                      x_[k], x_[k + 1], BisectOptions{1e-13, 1e-300, 120});
    return std::exp(x);
}

double DensityTable::invert_density(double y) const {
    if (!(y > 0.0)) return 0.0;
    const double first = std::exp(yr_.front());
    if (y < first) {
        if (head_exp_ <= 0.0) return 0.0;
        return tmin_ * std::pow(y / first, 1.0 / head_exp_);
    }
    const double ly = std::log(y);
    auto it = std::upper_bound(yr_.begin(), yr_.end(), ly);
    if (it == yr_.end()) {
        const double last = std::exp(yl_.back());
        if (tail_exp_ <= 0.0) return tmax_;
        return tmax_ * std::pow(y / last, 1.0 / tail_exp_);
    }
    const std::size_t k = static_cast<std::size_t>(it - yr_.begin());
    if (k == 0) return tmin_;
    if (ly >= yl_[k]) return std::exp(x_[k]);  // crossing happens at the node (jump or contact)
    const std::size_t seg = k - 1;
    const double x = solve_increasing([this, seg](double xx) { return hermite(seg, xx); }, ly, x_[seg], x_[seg + 1],
                                      BisectOptions{1e-13, 1e-300, 120});
    return std::exp(x);
}

std::vector<double> DensityTable::breakpoint_abscissae() const {
    std::vector<double> out;
    for (std::size_t k = 0; k < x_.size(); ++k)
        if (yl_[k] != yr_[k] || std::fabs(dl_[k] - dr_[k]) > 1e-9 * (1.0 + std::fabs(dl_[k])))
            out.push_back(std::exp(x_[k]));
    return out;
}

MonotoneCurve MonotoneCurve::from_nodes(const std::vector<double>& x, const std::vector<double>& y,
                                        const std::vector<double>& slope_left,
                                        const std::vector<double>& slope_right) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n || slope_left.size() != n || slope_right.size() != n)
        throw DomainError("MonotoneCurve: node arrays must share a length of at least 2");
    MonotoneCurve c;
    c.lx_.resize(n);
    c.ly_.resize(n);
    c.dl_ = slope_left;
    c.dr_ = slope_right;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) throw DomainError("MonotoneCurve: nodes must be positive");
        if (k > 0 && (!(x[k] > x[k - 1]) || !(y[k] > y[k - 1])))
            throw DomainError("MonotoneCurve: nodes must be strictly increasing");
        c.lx_[k] = std::log(x[k]);
        c.ly_[k] = std::log(y[k]);
    }
    // clamp interior slopes into the shape-preserving box of each segment
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double secant = (c.ly_[k + 1] - c.ly_[k]) / (c.lx_[k + 1] - c.lx_[k]);
        const double cap = 3.0 * secant;
        if (!std::isfinite(c.dr_[k])) c.dr_[k] = secant;
        if (!std::isfinite(c.dl_[k + 1])) c.dl_[k + 1] = secant;
        c.dr_[k] = std::min(std::max(c.dr_[k], 0.0), cap);
        c.dl_[k + 1] = std::min(std::max(c.dl_[k + 1], 0.0), cap);
    }
    c.xmin_ = x.front();
    c.xmax_ = x.back();
    c.ymin_ = y.front();
    c.ymax_ = y.back();
    return c;
}

std::pair<double, double> MonotoneCurve::node(std::size_t k) const {
    return {std::exp(lx_[k]), std::exp(ly_[k])};
}

double MonotoneCurve::operator()(double x) const {
    if (!(x > 0.0)) throw DomainError("MonotoneCurve: argument must be positive");
    const double lx = std::log(x);
    if (lx <= lx_.front()) return std::exp(ly_.front() + dl_.front() * (lx - lx_.front()));
    if (lx >= lx_.back()) return std::exp(ly_.back() + dr_.back() * (lx - lx_.back()));
    auto it = std::upper_bound(lx_.begin(), lx_.end(), lx);
    const std::size_t k = static_cast<std::size_t>(it - lx_.begin()) - 1;
    return std::exp(hermite_eval(lx_[k], lx_[k + 1], ly_[k], dr_[k], ly_[k + 1], dl_[k + 1], lx));
}

double MonotoneCurve::inverse(double y) const {
    if (!(y > 0.0)) throw DomainError("MonotoneCurve: inverse argument must be positive");
    const double ly = std::log(y);
    if (ly <= ly_.front()) {
        const double d = dl_.front();
        if (!(d > 0.0)) return xmin_;
        return std::exp(lx_.front() + (ly - ly_.front()) / d);
    }
    if (ly >= ly_.back()) {
        const double d = dr_.back();
        if (!(d > 0.0)) return xmax_;
        return std::exp(lx_.back() + (ly - ly_.back()) / d);
    }
    auto it = std::upper_bound(ly_.begin(), ly_.end(), ly);
    const std::size_t k = static_cast<std::size_t>(it - ly_.begin()) - 1;
    auto seg = [this, k](double lx) {
        return hermite_eval(lx_[k], lx_[k + 1], ly_[k], dr_[k], ly_[k + 1], dl_[k + 1], lx);
    };
    const double lx = solve_increasing(seg, ly, lx_[k], lx_[k + 1], BisectOptions{1e-14, 1e-15, 120});
    return std::exp(lx);
}

}  // namespace orlicz
