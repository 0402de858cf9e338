#pragma once

// Decreasing rearrangement machinery.  A WeightProfile describes a
// nonnegative weight by one of several forms (radial power, constant,
// indicator, sampled cells, radial table) together with the measure of its
// domain; it exposes the one-dimensional decreasing rearrangement g*(t) and
// the maximal average g**(t) = (1/t) integral of g* over (0,t).  A
// RadialProfile is a compactly supported piecewise-linear radial function
// used as the test displacement in the integral inequalities.  Everything is
// immutable and thread-safe after construction.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/numerics.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

struct Cell {
    double value = 0;    // weight value on the cell
    double measure = 0;  // cell measure, > 0
};

struct MaximalResult {
    double value = kNaN;
    bool divergent = false;  // the rearrangement is not integrable near 0
};

class WeightProfile {
public:
    // |x|^{-exponent} on a centered ball (omega finite) or the whole space
    static WeightProfile radial_power(double exponent, int dim, double omega = kInf);
    // constant c on a domain of measure `measure`
    static WeightProfile constant(double c, double measure, int dim = 0);
    // indicator of a centered ball of measure m inside a domain of measure omega
    static WeightProfile indicator(double m, double omega = kInf, int dim = 0);
    // unordered measurable cells; omega defaults to the total cell measure
    static WeightProfile sampled(std::vector<Cell> cells, double omega = kNaN,
                                 const std::string& origin = "");
    // piecewise-linear radial weight g(rho) on the ball of radius rho.back()
    static WeightProfile radial_table(const std::vector<double>& rho, const std::vector<double>& g,
                                      int dim, const std::string& origin = "");

    // g*(t) for 0 < t < omega_measure()
    double rearrangement(double t) const;
    // g**(t); flags divergence when g* has a non-integrable head
    MaximalResult maximal(double t) const;

    double omega_measure() const;
    int dimension() const;  // 0 when the form carries no ambient dimension

    // true when the weight has a concrete radial realization g(rho)
    bool has_radial_realization() const;
    double radial_value(double rho) const;   // g(rho); requires a realization
    double domain_radius() const;            // ball radius (inf for full space)

    const std::string& spec_string() const;

    struct Impl;

private:
    explicit WeightProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

class RadialProfile {
public:
    // nodes rho strictly increasing from 0, values nonnegative with
    // u(rho.back()) = 0 (compact support); linear between nodes
    static RadialProfile from_nodes(std::vector<double> rho, std::vector<double> u, int dim);
    static RadialProfile cone(int dim, double radius = 1.0, double height = 1.0);

    double operator()(double rho) const;
    double slope(double rho) const;  // right-continuous piecewise-constant derivative
    int dimension() const;
    double support_radius() const;
    double sup_value() const;

    // distribution function mu(s) = |{u > s}| and its a.e. derivative
    double distribution(double s) const;
    double distribution_derivative(double s) const;
    // decreasing rearrangement u*(t); 0 beyond the support measure
    double rearrangement(double t) const;

    const std::vector<double>& rho_nodes() const;
    const std::vector<double>& values() const;

    struct Impl;

private:
    explicit RadialProfile(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

struct BoundPair {
    double lhs = 0;
    double rhs = 0;
};

// Both sides of the weighted rearrangement inequality
//   integral of g Phi(|u|) over the domain  <=  integral of g* Phi(u*) over (0, |domain|).
// The weight must carry a radial realization in the profile's dimension.
BoundPair hardy_littlewood_bound(const WeightProfile& w, const YoungFunction& f, const RadialProfile& u);

// (symmetrized, raw) Dirichlet-type pair: the raw side integrates
// Phi(|u'(rho)|) over the ball; the symmetrized side integrates
// Phi(N omega_N^{1/N} t^{1-1/N} (-du*/dt)) in the measure variable.
BoundPair polya_szego_pair(const YoungFunction& f, const RadialProfile& u);

}  // namespace orlicz
