#pragma once

// Piecewise-cubic model of a positive nondecreasing density in log-log
// coordinates.  Nodes carry one-sided values and slopes, so power branches are
// reproduced exactly, plateaus stay flat, and jump discontinuities survive a
// round trip through the generalised inverse.  Backs every tabulated Young
// function: density evaluation, the cumulative integral from zero, and the
// inverses of both.

#include <cstddef>
#include <functional>
#include <vector>

#include "orlicz/numerics.hpp"

namespace orlicz {

// Log-log piecewise-cubic interpolant of a strictly increasing positive map
// with caller-supplied one-sided logarithmic slopes at the nodes.  Used for
// smooth monotone curves that are not densities (cumulative transforms,
// radial profiles); extrapolates as a power beyond either end.
class MonotoneCurve {
public:
    MonotoneCurve() = default;

    // x, y strictly increasing and positive; slope_left/slope_right give
    // d log y / d log x on either side of each node (clamped for shape
    // preservation where they exceed the monotone bound)
    static MonotoneCurve from_nodes(const std::vector<double>& x, const std::vector<double>& y,
                                    const std::vector<double>& slope_left,
                                    const std::vector<double>& slope_right);

    double operator()(double x) const;
    double inverse(double y) const;

    double x_min() const { return xmin_; }
    double x_max() const { return xmax_; }
    double y_min() const { return ymin_; }
    double y_max() const { return ymax_; }
    std::size_t size() const { return lx_.size(); }
    std::pair<double, double> node(std::size_t k) const;

private:
    std::vector<double> lx_, ly_, dl_, dr_;
    double xmin_ = 0, xmax_ = 0, ymin_ = 0, ymax_ = 0;
};

class DensityTable {
public:
    // Sample a pointwise evaluator on a geometric grid over [t_lo, t_hi] with
    // the given density, inserting extra nodes at the supplied breakpoint
    // abscissae.  One-sided values at breakpoints are probed with a small
    // relative offset, so jumps in f land in the table as genuine jumps.
    static DensityTable sample(const std::function<double(double)>& f, double t_lo, double t_hi,
                               int points_per_decade, const std::vector<double>& breakpoints = {});

    // Build from explicit (t, value) samples with strictly increasing t > 0
    // and positive nondecreasing values.
    static DensityTable from_samples(const std::vector<double>& t, const std::vector<double>& v);

    // interpolated density, right-continuous at stored jumps, power-law
    // extrapolation outside the sampled range
    double density(double t) const;

    // cumulative integral of the density from zero
    double integral(double t) const;

    // inverse of the cumulative integral; `hint` warm-starts the bracket
    double invert_integral(double y, double hint = kNaN) const;

    // right-continuous generalised inverse of the density: inf{t : density > y}
    double invert_density(double y) const;

    double t_min() const { return tmin_; }
    double t_max() const { return tmax_; }
    bool in_range(double t) const { return t >= tmin_ && t <= tmax_; }

    // abscissae where the stored density has a one-sided mismatch in value or
    // slope (kinks and jumps); used when tabulating a conjugate
    std::vector<double> breakpoint_abscissae() const;

private:
    DensityTable() = default;
    void finalize();
    std::size_t locate(double x) const;
    double hermite(std::size_t seg, double x) const;
    double segment_integral(std::size_t seg, double x_hi) const;

    std::vector<double> x_;    // log abscissae
    std::vector<double> yl_;   // log density, left limit
    std::vector<double> yr_;   // log density, right limit
    std::vector<double> dl_;   // log-log slope, left side
    std::vector<double> dr_;   // log-log slope, right side
    std::vector<double> cum_;  // integral of the density from 0 to node k
    std::vector<std::size_t> marks_;  // indices of inserted breakpoint nodes
    double tmin_ = 0, tmax_ = 0;
    double head_exp_ = 0;      // power of the density below the first node
    double tail_exp_ = 0;      // power of the density above the last node
};

}  // namespace orlicz
