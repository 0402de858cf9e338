#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "orlicz/admit.hpp"
#include "orlicz/rearrange.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

const double kPi = 3.14159265358979323846;
const double kBall3 = 4.0 * kPi / 3.0;     // volume of the unit ball, dimension 3
const double kBall4 = kPi * kPi / 2.0;     // volume of the unit ball, dimension 4

// closed forms for a truncated cone (plateau to a, linear to 0 at b) with
// g == 1, Phi = Psi = t^2, dimension 3, support inside the domain:
//   weighted modular   4 pi [ a^3/3 + I(a,b)/(b-a)^2 ],
//     I(a,b) = integral of (b-rho)^2 rho^2 over (a,b)
//            = b^2 (b^3-a^3)/3 - b (b^4-a^4)/2 + (b^5-a^5)/5
//   gradient modular   (4 pi / 3) (b^3-a^3)/(b-a)^2
double cone_i(double a, double b) {
    return b * b * (std::pow(b, 3) - std::pow(a, 3)) / 3.0 -
           b * (std::pow(b, 4) - std::pow(a, 4)) / 2.0 +
           (std::pow(b, 5) - std::pow(a, 5)) / 5.0;
}

double cone_lhs_closed(double a, double b) {
    const double modular =
        4.0 * kPi * (std::pow(a, 3) / 3.0 + cone_i(a, b) / ((b - a) * (b - a)));
    return std::sqrt(modular);
}

double cone_rhs_closed(double a, double b) {
    const double modular = kBall3 * (std::pow(b, 3) - std::pow(a, 3)) / ((b - a) * (b - a));
    return std::sqrt(modular);
}

RadialProfile zero_profile(int dim) {
    return RadialProfile::from_nodes({0.0, 1.0}, {0.0, 0.0}, dim);
}

}  // namespace

TEST_CASE("cone modulars match their closed forms on the unit ball") {
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile one = WeightProfile::constant(1.0, kBall3, 3);

    const RadialProfile plain = cone_profile(0.0, 1.0, 3);
    CHECK(modular_lhs(one, sq, plain) == doctest::Approx(std::sqrt(4.0 * kPi / 30.0)).epsilon(1e-9));
    CHECK(modular_rhs(sq, plain) == doctest::Approx(std::sqrt(4.0 * kPi / 3.0)).epsilon(1e-12));

    // the library cone factory builds the same displacement
    const RadialProfile factory = RadialProfile::cone(3);
    CHECK(modular_lhs(one, sq, factory) == doctest::Approx(modular_lhs(one, sq, plain)).epsilon(1e-12));
    CHECK(modular_rhs(sq, factory) == doctest::Approx(modular_rhs(sq, plain)).epsilon(1e-12));

    for (auto [a, b] : {std::pair<double, double>{0.4, 1.0}, {0.15, 0.7}, {0.8, 1.0}}) {
        const RadialProfile u = cone_profile(a, b, 3);
        CHECK(modular_lhs(one, sq, u) == doctest::Approx(cone_lhs_closed(a, b)).epsilon(1e-9));
        CHECK(modular_rhs(sq, u) == doctest::Approx(cone_rhs_closed(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("zero displacement and weight homogeneity") {
    const YoungFunction sq = YoungFunction::power(2.0);
    const YoungFunction cube = YoungFunction::power(3.0);
    const RadialProfile u = cone_profile(0.2, 1.0, 3);

    CHECK(modular_lhs(WeightProfile::constant(1.0, kBall3, 3), sq, zero_profile(3)) == 0.0);
    CHECK(modular_rhs(sq, zero_profile(3)) == 0.0);

    // scaling the weight by c scales the left side by c^{1/q} for Psi = t^q
    const double base2 = modular_lhs(WeightProfile::constant(1.0, kBall3, 3), sq, u);
    const double four2 = modular_lhs(WeightProfile::constant(4.0, kBall3, 3), sq, u);
    CHECK(four2 == doctest::Approx(2.0 * base2).epsilon(1e-12));

    const double base3 = modular_lhs(WeightProfile::constant(1.0, kBall3, 3), cube, u);
    const double scaled3 = modular_lhs(WeightProfile::constant(2.7, kBall3, 3), cube, u);
    CHECK(scaled3 == doctest::Approx(std::cbrt(2.7) * base3).epsilon(1e-12));
}

TEST_CASE("non-integrable weight head raises the infinite sentinel") {
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile steep = WeightProfile::radial_power(3.5, 3);
    const RadialProfile u = cone_profile(0.0, 1.0, 3);
    CHECK(std::isinf(modular_lhs(steep, sq, u)));

    VerifyConfig cfg;
    cfg.cone_widths = {1.0};
    cfg.cone_fractions = {0.0};
    const HarnessResult res = run_family(steep, sq, sq, 3, TestFamily::cones, cfg);
    REQUIRE(res.rows.size() == 1);
    CHECK(std::isinf(res.rows.front().ratio));
    CHECK(std::isinf(res.empirical_constant));
}

TEST_CASE("smooth bump values are stable under node doubling") {
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile one = WeightProfile::constant(1.0, kBall3, 3);
    double prev_rhs = kNaN, prev_lhs = kNaN;
    for (int nodes : {65, 129, 257}) {
        const RadialProfile u = bump_profile(1.0, 3, nodes);
        const double rhs = modular_rhs(sq, u);
        const double lhs = modular_lhs(one, sq, u);
        if (std::isfinite(prev_rhs)) {
            CHECK(std::fabs(rhs - prev_rhs) / prev_rhs < 1e-3);
            CHECK(std::fabs(lhs - prev_lhs) / prev_lhs < 1e-3);
        }
        prev_rhs = rhs;
        prev_lhs = lhs;
    }
}

TEST_CASE("dilation sweep is flat for the scale-invariant configuration") {
    // Phi = Psi = t^2 in dimension 4 with the inverse-square radial weight:
    // both sides scale identically, so the ratio is constant in lambda.
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile hardy = WeightProfile::radial_power(2.0, 4);
    const BoundSpec bound{"x-phi-psi", std::sqrt(kBall4)};

    const HarnessResult res = run_family(hardy, sq, sq, 4, TestFamily::dilate, {}, bound);
    REQUIRE(res.rows.size() == 9);
    double lo = kInf, hi = 0.0;
    for (const HarnessRow& row : res.rows) {
        CHECK(row.ratio > 0.0);
        CHECK(std::isfinite(row.ratio));
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    CHECK(hi / lo - 1.0 < 1e-7);
    CHECK(std::fabs(res.log_slope) < 1e-7);
    CHECK(res.family == "dilate");
    CHECK_FALSE(res.argmax_id.empty());

    REQUIRE(res.bound.has_value());
    CHECK(res.bound->satisfied);
    CHECK(res.bound->route == "x-phi-psi");
    CHECK(res.bound->factor ==
          doctest::Approx(res.empirical_constant / std::sqrt(kBall4)).epsilon(1e-12));

    // the amplitude sweep is invariant as well (homogeneous pair)
    const HarnessResult amp = run_family(hardy, sq, sq, 4, TestFamily::amplitude);
    double alo = kInf, ahi = 0.0;
    for (const HarnessRow& row : amp.rows) {
        alo = std::min(alo, row.ratio);
        ahi = std::max(ahi, row.ratio);
    }
    CHECK(ahi / alo - 1.0 < 1e-9);
    CHECK(std::fabs(amp.log_slope) < 1e-9);
}

TEST_CASE("dilation sweep exposes power-counting growth for a steep weight") {
    // Phi = Psi = t^p with weight exponent a > p: the ratio behaves like
    // lambda^{(p-a)/p}, here lambda^{-1/2}, so shrinking lambda grows it.
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile steep = WeightProfile::radial_power(3.0, 4);
    const BoundSpec bound{"x-phi-psi", 1.0};

    const HarnessResult res = run_family(steep, sq, sq, 4, TestFamily::dilate, {}, bound);
    CHECK(res.log_slope == doctest::Approx(-0.5).epsilon(1e-6));
    CHECK(std::fabs(res.log_slope - (-0.5)) < 0.05);
    const double first = res.rows.front().ratio;   // lambda = 0.01
    const double last = res.rows.back().ratio;     // lambda = 100
    CHECK(first / last == doctest::Approx(100.0).epsilon(1e-6));
    CHECK(res.argmax_id == res.rows.front().test_id);
    REQUIRE(res.bound.has_value());
    CHECK_FALSE(res.bound->satisfied);
}

TEST_CASE("mixed power pairs follow the predicted dilation exponent") {
    // ratio ~ lambda^{(N-a)/q - (N-p)/p}; the exponent vanishes exactly when
    // a = (N(p-q) + pq)/p
    const YoungFunction phi = YoungFunction::power(2.0);
    const YoungFunction psi = YoungFunction::power(3.0);

    const HarnessResult flat =
        run_family(WeightProfile::radial_power(1.5, 3), phi, psi, 3, TestFamily::dilate);
    CHECK(std::fabs(flat.log_slope) < 1e-6);

    const HarnessResult tilted =
        run_family(WeightProfile::radial_power(2.0, 3), phi, psi, 3, TestFamily::dilate);
    CHECK(tilted.log_slope == doctest::Approx(1.0 / 3.0 - 0.5).epsilon(1e-6));
}

TEST_CASE("amplitude sweep is exactly invariant for homogeneous pairs") {
    const YoungFunction phi = YoungFunction::power(3.0);
    const YoungFunction psi = YoungFunction::power(2.0);
    const WeightProfile one = WeightProfile::constant(1.0, kBall3, 3);
    const HarnessResult res = run_family(one, phi, psi, 3, TestFamily::amplitude);
    REQUIRE(res.rows.size() == 9);
    double lo = kInf, hi = 0.0;
    for (const HarnessRow& row : res.rows) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
    }
    CHECK(hi / lo - 1.0 < 1e-9);
    CHECK(std::fabs(res.log_slope) < 1e-9);
}

TEST_CASE("nested cones enlarge both sides monotonically") {
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile one = WeightProfile::constant(1.0, kBall3, 3);
    double prev_lhs = -1.0, prev_rhs = -1.0;
    for (double a : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const RadialProfile u = cone_profile(a, 1.0, 3);
        const double lhs = modular_lhs(one, sq, u);
        const double rhs = modular_rhs(sq, u);
        CHECK(lhs > prev_lhs);
        CHECK(rhs > prev_rhs);
        prev_lhs = lhs;
        prev_rhs = rhs;
    }
}

TEST_CASE("modulars agree with the rearrangement-side integrators") {
    const YoungFunction sq = YoungFunction::power(2.0);
    // the rearrangement-side integrators bisect the distribution function per
    // quadrature point, so keep the cross-check profile coarse; both routes
    // integrate the same piecewise-linear displacement either way
    const RadialProfile u = bump_profile(1.0, 4, 17);

    const WeightProfile hardy = WeightProfile::radial_power(2.0, 4);
    const BoundPair hl = hardy_littlewood_bound(hardy, sq, u);
    CHECK(sq(modular_lhs(hardy, sq, u)) == doctest::Approx(hl.lhs).epsilon(1e-9));

    const BoundPair ps = polya_szego_pair(sq, u);
    CHECK(sq(modular_rhs(sq, u)) == doctest::Approx(ps.rhs).epsilon(1e-12));
}

TEST_CASE("empirical constant dominates the capacity-criterion value") {
    // unit weight on the unit ball, Phi = Psi = t^2, dimension 3: the cone
    // family's empirical constant C must satisfy D <= max{C, C^{P_Psi}} for
    // the mass-to-capacity ratio D (known in closed form: max of
    // a^2 (1 - a)/3 at a = 2/3, value 4/81).
    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile one = WeightProfile::constant(1.0, kBall3, 3);

    std::vector<double> inner{0.2, 0.4, 0.5, 0.6, 2.0 / 3.0, 0.7, 0.8, 0.9};
    const CapacityCriterion crit = capacity_criterion(one, sq, sq, 3, 1.0, inner);
    CHECK_FALSE(crit.divergent);
    CHECK(crit.value == doctest::Approx(4.0 / 81.0).epsilon(1e-6));

    VerifyConfig cfg;
    cfg.cone_widths = {0.2, 0.4, 0.6, 0.8, 1.0};  // stay inside the unit ball
    const HarnessResult res = run_family(one, sq, sq, 3, TestFamily::cones, cfg);
    REQUIRE(res.rows.size() == 25);

    // independent maximum over the same grid from the closed forms
    double best = 0.0;
    for (double b : cfg.cone_widths)
        for (double frac : cfg.cone_fractions)
            best = std::max(best, cone_lhs_closed(frac * b, b) / cone_rhs_closed(frac * b, b));
    CHECK(res.empirical_constant == doctest::Approx(best).epsilon(1e-9));

    const double p_psi = p_index(sq).value;
    CHECK(p_psi == doctest::Approx(2.0).epsilon(1e-9));
    const double cap = std::max(res.empirical_constant, std::pow(res.empirical_constant, p_psi));
    CHECK(crit.value <= cap);
}

TEST_CASE("family plumbing: names, zero weight, and input validation") {
    for (TestFamily fam : {TestFamily::cones, TestFamily::bumps, TestFamily::dilate, TestFamily::amplitude})
        CHECK(family_from_string(to_string(fam)) == fam);
    CHECK_THROWS_AS(family_from_string("conez"), ParseError);

    const YoungFunction sq = YoungFunction::power(2.0);
    const WeightProfile zero = WeightProfile::constant(0.0, kBall3, 3);
    const HarnessResult res = run_family(zero, sq, sq, 3, TestFamily::cones);
    CHECK(res.rows.size() == 25);
    CHECK(res.empirical_constant == 0.0);
    for (const HarnessRow& row : res.rows) {
        CHECK(row.ratio == 0.0);
        CHECK(row.test_id.rfind("cone:a=", 0) == 0);
    }

    CHECK_THROWS_AS(run_family(zero, sq, sq, 1, TestFamily::cones), DomainError);
    CHECK_THROWS_AS(
        modular_lhs(WeightProfile::radial_power(2.0, 4), sq, cone_profile(0.0, 1.0, 3)),
        DomainError);
    CHECK_THROWS_AS(cone_profile(0.5, 0.5, 3), DomainError);
    CHECK_THROWS_AS(bump_profile(0.0, 3), DomainError);
    CHECK_THROWS_AS(dilate_profile(cone_profile(0.0, 1.0, 3), 0.0), DomainError);
    CHECK_THROWS_AS(scale_profile(cone_profile(0.0, 1.0, 3), -1.0), DomainError);
}
