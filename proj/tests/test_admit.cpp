#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "orlicz/admit.hpp"

using namespace orlicz;

namespace {

constexpr double kPi = 3.14159265358979323846;

// dim-ball volumes written out so the expectations stay independent of the
// library helper
const double kBall2 = kPi;
const double kBall3 = 4.0 * kPi / 3.0;
const double kBall4 = kPi * kPi / 2.0;

// decreasing rearrangement of the radial power weight |x|^{-a} in dimension N
std::function<double(double)> radial_power_rearrangement(double a, int N, double ball) {
    return [a, N, ball](double s) { return std::pow(ball / s, a / N); };
}

// 1 / Phi(zeta(s)) for the pure power Phi(t) = t^p
std::function<double(double)> power_zeta_weight(double p, int N) {
    const double e = p * (static_cast<double>(N) - 1.0) / static_cast<double>(N);
    return [e](double s) { return std::pow(s, e); };
}

// exact value of the borderline two-parameter criterion for Phi = t^p and the
// rearranged weight |x|^{-p}: the product is constant in both parameters
double borderline_constant(double p, int N, double ball) {
    const double nn = static_cast<double>(N);
    return std::pow(ball, p / nn) * (nn / (nn - p)) * std::pow(nn * (p - 1.0) / (nn - p), p - 1.0);
}

// independent capacity oracle: minimize the discrete shell energy
//   sum_j Phi((u_j - u_{j+1}) / h) rho_mid_j^{N-1} h
// over interior node values by damped Newton steps with a tridiagonal solve
double capacity_discrete_oracle(double p, int N, double a, double R, int n) {
    const double h = (R - a) / n;
    std::vector<double> u(n + 1), mid(n);
    for (int k = 0; k <= n; ++k) u[k] = 1.0 - static_cast<double>(k) / n;
    for (int j = 0; j < n; ++j) mid[j] = std::pow(a + (j + 0.5) * h, N - 1);
    auto dphi = [p](double t) { return p * std::pow(t, p - 1.0); };
    auto ddphi = [p](double t) { return p * (p - 1.0) * std::pow(t, p - 2.0); };

    std::vector<double> d(n), g(n - 1), dl(n - 1), dd(n - 1), du(n - 1);
    std::vector<double> cp(n - 1), dp(n - 1), step(n - 1), trial(u);
    for (int it = 0; it < 80; ++it) {
        for (int j = 0; j < n; ++j) d[j] = (u[j] - u[j + 1]) / h;
        double gmax = 0.0;
        for (int k = 1; k < n; ++k) {
            g[k - 1] = mid[k] * dphi(d[k]) - mid[k - 1] * dphi(d[k - 1]);
            gmax = std::max(gmax, std::fabs(g[k - 1]));
        }
        if (gmax < 1e-12) break;
        for (int k = 1; k < n; ++k) {
            dd[k - 1] = (mid[k] * ddphi(d[k]) + mid[k - 1] * ddphi(d[k - 1])) / h;
            du[k - 1] = -mid[k] * ddphi(d[k]) / h;
            dl[k - 1] = -mid[k - 1] * ddphi(d[k - 1]) / h;
        }
        cp[0] = du[0] / dd[0];
        dp[0] = g[0] / dd[0];
        for (int i = 1; i < n - 1; ++i) {
            const double m = dd[i] - dl[i] * cp[i - 1];
            cp[i] = du[i] / m;
            dp[i] = (g[i] - dl[i] * dp[i - 1]) / m;
        }
        step[n - 2] = dp[n - 2];
        for (int i = n - 3; i >= 0; --i) step[i] = dp[i] - cp[i] * step[i + 1];

        double lam = 1.0;
        for (; lam > 1e-6; lam *= 0.5) {
            trial = u;
            for (int k = 1; k < n; ++k) trial[k] = u[k] - lam * step[k - 1];
            bool monotone = true;
            for (int j = 0; j < n && monotone; ++j)
                if (!(trial[j] - trial[j + 1] > 0.0)) monotone = false;
            if (monotone) break;
        }
        u = trial;
    }
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += std::pow((u[j] - u[j + 1]) / h, p) * mid[j] * h;
    return N * (N == 3 ? kBall3 : kBall4) * total;
}

const RouteReport* find_route(const AdmissibilityReport& rep, const std::string& id) {
    for (const RouteReport& r : rep.routes)
        if (r.id == id) return &r;
    return nullptr;
}

const HypothesisStatus* find_hyp(const RouteReport& r, const std::string& name) {
    for (const HypothesisStatus& h : r.hypotheses)
        if (h.name == name) return &h;
    return nullptr;
}

}  // namespace

TEST_CASE("two-parameter criterion reproduces the exact borderline constants") {
    const AdmitConfig& cfg = default_admit_config();

    SUBCASE("quadratic growth in three dimensions") {
        const YoungFunction f = YoungFunction::power(2.0);
        const MuckenhouptResult res = muckenhoupt_sup_same(
            f, radial_power_rearrangement(2.0, 3, kBall3), power_zeta_weight(2.0, 3), kInf, cfg);
        CHECK_FALSE(res.divergent);
        CHECK(res.value == doctest::Approx(borderline_constant(2.0, 3, kBall3)).epsilon(1e-6));
        CHECK(res.value == doctest::Approx(9.0 * std::pow(kBall3, 2.0 / 3.0)).epsilon(1e-6));
        CHECK(res.eps_grid.per_decade == cfg.muck_per_decade);
    }

    SUBCASE("cubic growth in four dimensions") {
        const YoungFunction f = YoungFunction::power(3.0);
        const MuckenhouptResult res = muckenhoupt_sup_same(
            f, radial_power_rearrangement(3.0, 4, kBall4), power_zeta_weight(3.0, 4), kInf, cfg);
        CHECK_FALSE(res.divergent);
        CHECK(res.value == doctest::Approx(256.0 * std::pow(kBall4, 0.75)).epsilon(1e-6));
    }

    SUBCASE("the estimate scales linearly with the weight") {
        const YoungFunction f = YoungFunction::power(2.0);
        auto w = radial_power_rearrangement(2.0, 3, kBall3);
        auto w5 = [w](double s) { return 5.0 * w(s); };
        const MuckenhouptResult one =
            muckenhoupt_sup_same(f, w, power_zeta_weight(2.0, 3), kInf, cfg);
        const MuckenhouptResult five =
            muckenhoupt_sup_same(f, w5, power_zeta_weight(2.0, 3), kInf, cfg);
        CHECK(five.divergent == one.divergent);
        CHECK(five.value == doctest::Approx(5.0 * one.value).epsilon(1e-9));
    }
}

TEST_CASE("two-parameter criterion separates vanishing and unbounded cases") {
    const YoungFunction f = YoungFunction::power(2.0);

    SUBCASE("zero weight gives a zero estimate") {
        const MuckenhouptResult res = muckenhoupt_sup_same(
            f, [](double) { return 0.0; }, power_zeta_weight(2.0, 3), kInf);
        CHECK_FALSE(res.divergent);
        CHECK(res.value == 0.0);
        CHECK(std::isnan(res.eps_arg));
    }

    SUBCASE("weights steeper than the borderline power blow up") {
        const MuckenhouptResult res = muckenhoupt_sup_same(
            f, radial_power_rearrangement(2.5, 3, kBall3), power_zeta_weight(2.0, 3), kInf);
        CHECK(res.divergent);
        CHECK(res.value == kInf);
    }
}

TEST_CASE("general two-parameter criterion matches its closed forms") {
    const AdmitConfig& cfg = default_admit_config();
    const YoungFunction p2 = YoungFunction::power(2.0);

    SUBCASE("matching growth pair recovers a constant ratio") {
        const MuckenhouptResult res = muckenhoupt_sup_general(
            p2, p2, radial_power_rearrangement(2.0, 3, kBall3), power_zeta_weight(2.0, 3), kInf,
            cfg);
        CHECK_FALSE(res.divergent);
        CHECK(res.value == doctest::Approx(1.5 * std::pow(kBall3, 1.0 / 3.0)).epsilon(1e-6));
        // consistency with the single-function criterion through a fixed factor
        const MuckenhouptResult same = muckenhoupt_sup_same(
            p2, radial_power_rearrangement(2.0, 3, kBall3), power_zeta_weight(2.0, 3), kInf, cfg);
        CHECK(same.value == doctest::Approx(4.0 * res.value * res.value).epsilon(1e-5));
    }

    SUBCASE("weights on the matching weak-space scale stay bounded") {
        // q between p and the critical exponent; weight exponent N/alpha with
        // alpha = N p / (p q + N (p - q))
        const YoungFunction p3 = YoungFunction::power(3.0);
        const double alpha = 3.0 * 2.0 / (2.0 * 3.0 + 3.0 * (2.0 - 3.0));
        const double a = 3.0 / alpha;
        const MuckenhouptResult res = muckenhoupt_sup_general(
            p2, p3, radial_power_rearrangement(a, 3, kBall3), power_zeta_weight(2.0, 3), kInf,
            cfg);
        CHECK_FALSE(res.divergent);
        const double expect =
            std::sqrt(3.0) / 2.0 * std::cbrt(2.0 * std::sqrt(kBall3));
        CHECK(res.value == doctest::Approx(expect).epsilon(1e-6));
    }

    SUBCASE("zero weight gives zero") {
        const MuckenhouptResult res = muckenhoupt_sup_general(
            p2, p2, [](double) { return 0.0; }, power_zeta_weight(2.0, 3), kInf, cfg);
        CHECK_FALSE(res.divergent);
        CHECK(res.value == 0.0);
    }
}

TEST_CASE("general criterion through a tabulated function agrees with the closed-form route") {
    // density samples of 2t so the table carries no recognizable power spec
    std::vector<double> ts, ds;
    for (double t = 1e-6; t <= 1.0001e6; t *= std::pow(10.0, 1.0 / 16.0)) {
        ts.push_back(t);
        ds.push_back(2.0 * t);
    }
    const YoungFunction tab = YoungFunction::tabulated(ts, ds);
    const YoungFunction p2 = YoungFunction::power(2.0);

    AdmitConfig cfg;
    cfg.eps_lo = 0.3;
    cfg.eps_hi = 3.0;

    auto w = [](double s) { return 1.0 / ((1.0 + s) * (1.0 + s)); };
    auto v = [](double s) { return 1.0 + s; };
    const double b = 8.0;

    const MuckenhouptResult closed = muckenhoupt_sup_general(p2, p2, w, v, b, cfg);
    const MuckenhouptResult generic = muckenhoupt_sup_general(tab, p2, w, v, b, cfg);
    CHECK_FALSE(closed.divergent);
    CHECK_FALSE(generic.divergent);
    CHECK(generic.value == doctest::Approx(closed.value).epsilon(2e-3));

    // the ratio has the closed form sqrt(log(9/(1+r)) * r/(1+r)) / 2; compare
    // the grid estimate against a dense direct maximisation
    double best = 0.0;
    for (int k = 0; k <= 4000; ++k) {
        const double r = b * k / 4000.0 + 1e-9;
        best = std::max(best, std::log(9.0 / (1.0 + r)) * (r / (1.0 + r)));
    }
    CHECK(closed.value == doctest::Approx(0.5 * std::sqrt(best)).epsilon(5e-3));
}

TEST_CASE("radial capacity matches the classical closed forms") {
    const YoungFunction p2 = YoungFunction::power(2.0);
    const YoungFunction p3 = YoungFunction::power(3.0);
    const double R = 1.0;
    for (double a : {0.2, 0.5}) {
        const double cap23 = 4.0 * kPi / (1.0 / a - 1.0 / R);
        const double cap24 = 4.0 * kPi * kPi / (1.0 / (a * a) - 1.0 / (R * R));
        const double cap33 = 4.0 * kPi / (std::log(R / a) * std::log(R / a));
        const double beta = 1.0 / (2.0 * (1.0 / std::sqrt(a) - 1.0 / std::sqrt(R)));
        const double cap34 = 2.0 * kPi * kPi * beta * beta;
        CHECK(capacity_ball(p2, 3, a, R).value == doctest::Approx(cap23).epsilon(1e-6));
        CHECK(capacity_ball(p2, 4, a, R).value == doctest::Approx(cap24).epsilon(1e-6));
        CHECK(capacity_ball(p3, 3, a, R).value == doctest::Approx(cap33).epsilon(1e-6));
        CHECK(capacity_ball(p3, 4, a, R).value == doctest::Approx(cap34).epsilon(1e-6));
    }

    SUBCASE("first-integral constant and minimizer profile") {
        const CapacityResult res = capacity_ball(p2, 3, 0.2, 1.0);
        CHECK(res.lagrange == doctest::Approx(2.0 / (1.0 / 0.2 - 1.0)).epsilon(1e-8));
        CHECK(res.profile.dimension() == 3);
        CHECK(res.profile.support_radius() == doctest::Approx(1.0));
        CHECK(res.profile(0.0) == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(res.profile(0.2) == doctest::Approx(1.0).epsilon(1e-6));
        // harmonic minimizer (1/rho - 1)/(1/a - 1) sampled at a grid node
        CHECK(res.profile(0.5) == doctest::Approx((2.0 - 1.0) / 4.0).epsilon(1e-6));
        CHECK(res.profile(1.0) == 0.0);
        double prev = 2.0;
        for (double rho = 0.0; rho <= 1.0; rho += 0.05) {
            const double val = res.profile(rho);
            CHECK(val <= prev + 1e-12);
            prev = val;
        }
    }
}

TEST_CASE("radial capacity agrees with an independent discrete minimization") {
    const YoungFunction p2 = YoungFunction::power(2.0);
    const YoungFunction p3 = YoungFunction::power(3.0);
    for (int N : {3, 4}) {
        for (double a : {0.2, 0.5}) {
            const double fd2 = capacity_discrete_oracle(2.0, N, a, 1.0, 400);
            const double fd3 = capacity_discrete_oracle(3.0, N, a, 1.0, 400);
            CHECK(capacity_ball(p2, N, a, 1.0).value == doctest::Approx(fd2).epsilon(5e-3));
            CHECK(capacity_ball(p3, N, a, 1.0).value == doctest::Approx(fd3).epsilon(5e-3));
        }
    }
}

TEST_CASE("capacity grows with the inner ball and blows up as the shell thins") {
    const YoungFunction p3 = YoungFunction::power(3.0);
    const double c1 = capacity_ball(p3, 3, 0.2, 1.0).value;
    const double c2 = capacity_ball(p3, 3, 0.5, 1.0).value;
    const double c3 = capacity_ball(p3, 3, 0.8, 1.0).value;
    CHECK(c1 < c2);
    CHECK(c2 < c3);

    const YoungFunction p2 = YoungFunction::power(2.0);
    const double b1 = capacity_ball(p2, 3, 0.9, 1.0).value;
    const double b2 = capacity_ball(p2, 3, 0.99, 1.0).value;
    const double b3 = capacity_ball(p2, 3, 0.999, 1.0).value;
    CHECK(b1 < b2);
    CHECK(b2 < b3);
    CHECK(b3 > 1e3);

    CHECK_THROWS_AS(capacity_ball(p2, 3, 0.5, 0.5), DomainError);
    CHECK_THROWS_AS(capacity_ball(p2, 1, 0.2, 1.0), DomainError);
    CHECK_THROWS_AS(capacity_ball(p2, 3, 0.2, kInf), DomainError);
}

TEST_CASE("mass-to-capacity ratio criterion on the unit ball") {
    const YoungFunction p2 = YoungFunction::power(2.0);

    SUBCASE("uniform weight has ratio a^2 (1 - a) / 3") {
        const WeightProfile w = WeightProfile::constant(1.0, kBall3, 3);
        std::vector<double> radii;
        for (int k = 1; k <= 19; ++k) radii.push_back(0.05 * k);
        radii.push_back(2.0 / 3.0);
        const CapacityCriterion crit = capacity_criterion(w, p2, p2, 3, 1.0, radii);
        CHECK_FALSE(crit.divergent);
        REQUIRE(crit.ratios.size() == radii.size());
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double a = radii[i];
            CHECK(crit.ratios[i] == doctest::Approx(a * a * (1.0 - a) / 3.0).epsilon(1e-6));
        }
        CHECK(crit.value == doctest::Approx(4.0 / 81.0).epsilon(1e-6));
        CHECK(crit.arg == doctest::Approx(2.0 / 3.0));
    }

    SUBCASE("zero weight gives zero ratios") {
        const WeightProfile w = WeightProfile::constant(0.0, kBall3, 3);
        const CapacityCriterion crit = capacity_criterion(w, p2, p2, 3, 1.0, {0.25, 0.5, 0.75});
        CHECK_FALSE(crit.divergent);
        CHECK(crit.value == 0.0);
    }

    SUBCASE("non-integrable core is flagged divergent") {
        const WeightProfile w = WeightProfile::radial_power(3.0, 3, kBall3);
        const CapacityCriterion crit = capacity_criterion(w, p2, p2, 3, 1.0, {0.25, 0.5});
        CHECK(crit.divergent);
        CHECK(crit.value == kInf);
    }

    SUBCASE("geometry mismatches are rejected") {
        const WeightProfile four = WeightProfile::radial_power(2.0, 4, kInf);
        CHECK_THROWS_AS(capacity_criterion(four, p2, p2, 3, 1.0, {0.5}), DomainError);
        const WeightProfile cells =
            WeightProfile::sampled({{3.0, 0.5}, {1.0, 1.5}}, 4.0);
        CHECK_THROWS_AS(capacity_criterion(cells, p2, p2, 3, 1.0, {0.5}), DomainError);
    }
}

TEST_CASE("route report composes hypothesis checks with the matching norms") {
    // quadratic growth in four dimensions with the borderline radial weight on
    // the whole space
    const YoungFunction p2 = YoungFunction::power(2.0);
    const WeightProfile w = WeightProfile::radial_power(2.0, 4, kInf);
    const AdmissibilityReport rep = admissibility_report(w, p2, p2, 4);

    REQUIRE(rep.routes.size() == 5);
    CHECK(rep.routes[0].id == "T1.2");
    CHECK(rep.routes[1].id == "T1.3");
    CHECK(rep.routes[2].id == "T1.4");
    CHECK(rep.routes[3].id == "T1.5");
    CHECK(rep.routes[4].id == "T1.7");

    const RouteReport* bphi = find_route(rep, "T1.2");
    REQUIRE(bphi != nullptr);
    for (const HypothesisStatus& h : bphi->hypotheses) CHECK(h.ok);
    CHECK_FALSE(bphi->norm.finite);
    CHECK(bphi->verdict == RouteVerdict::norm_infinite);
    CHECK(std::string(to_string(bphi->verdict)) == "norm-infinite");

    const RouteReport* weak = find_route(rep, "T1.3");
    REQUIRE(weak != nullptr);
    CHECK(weak->verdict == RouteVerdict::admissible);
    CHECK(weak->norm.value == doctest::Approx(2.0 * std::sqrt(kBall4)).epsilon(1e-6));
    CHECK(weak->constant == doctest::Approx(weak->norm.value));

    const RouteReport* xphi = find_route(rep, "T1.4");
    REQUIRE(xphi != nullptr);
    CHECK(xphi->verdict == RouteVerdict::admissible);
    CHECK(xphi->norm.value == doctest::Approx(32.0 * std::sqrt(kBall4)).epsilon(1e-4));

    const RouteReport* l1 = find_route(rep, "T1.5");
    REQUIRE(l1 != nullptr);
    CHECK(l1->verdict == RouteVerdict::hypothesis_failed);
    const HypothesisStatus* fin = find_hyp(*l1, "finite-domain-measure");
    REQUIRE(fin != nullptr);
    CHECK_FALSE(fin->ok);

    const RouteReport* pair = find_route(rep, "T1.7");
    REQUIRE(pair != nullptr);
    CHECK(pair->verdict == RouteVerdict::admissible);
    CHECK(pair->norm.value == doctest::Approx(std::sqrt(kBall4)).epsilon(1e-4));
    CHECK(pair->constant == doctest::Approx(pair->norm.value));

    REQUIRE(rep.muckenhoupt.has_value());
    CHECK_FALSE(rep.muckenhoupt->divergent);
    CHECK(rep.muckenhoupt->value == doctest::Approx(4.0 * std::sqrt(kBall4)).epsilon(1e-5));
    CHECK_FALSE(rep.capacity.has_value());
}

TEST_CASE("route report on a bounded domain with separated growth functions") {
    const YoungFunction p3 = YoungFunction::power(3.0);
    const YoungFunction p4 = YoungFunction::power(4.0);
    const WeightProfile w = WeightProfile::constant(2.5, 1.0, 2);
    const AdmissibilityReport rep = admissibility_report(w, p3, p4, 2, 1.0);

    const RouteReport* l1 = find_route(rep, "T1.5");
    REQUIRE(l1 != nullptr);
    CHECK(l1->verdict == RouteVerdict::admissible);
    CHECK(l1->norm.value == doctest::Approx(2.5).epsilon(1e-9));
    CHECK(l1->constant == doctest::Approx(2.5).epsilon(1e-9));

    const RouteReport* weak = find_route(rep, "T1.3");
    REQUIRE(weak != nullptr);
    CHECK(weak->verdict == RouteVerdict::hypothesis_failed);
    const HypothesisStatus* below = find_hyp(*weak, "growth-index-below-dimension");
    REQUIRE(below != nullptr);
    CHECK_FALSE(below->ok);

    const RouteReport* xphi = find_route(rep, "T1.4");
    REQUIRE(xphi != nullptr);
    CHECK(xphi->verdict == RouteVerdict::admissible);
    CHECK(xphi->norm.value == doctest::Approx(160.0 / 9.0).epsilon(1e-5));

    const RouteReport* bphi = find_route(rep, "T1.2");
    REQUIRE(bphi != nullptr);
    CHECK(bphi->verdict == RouteVerdict::hypothesis_failed);
    const HypothesisStatus* tr = find_hyp(*bphi, "transform-integrand-at-zero");
    REQUIRE(tr != nullptr);
    CHECK_FALSE(tr->ok);
    CHECK(std::isnan(bphi->norm.value));
    CHECK(std::isnan(bphi->constant));

    const RouteReport* pair = find_route(rep, "T1.7");
    REQUIRE(pair != nullptr);
    CHECK(pair->verdict == RouteVerdict::hypothesis_failed);

    REQUIRE(rep.muckenhoupt.has_value());
    CHECK_FALSE(rep.muckenhoupt->divergent);
    CHECK(rep.muckenhoupt->value == doctest::Approx(640.0 / 729.0).epsilon(1e-2));
}

TEST_CASE("route norms scale linearly with the weight") {
    AdmitConfig cfg;
    cfg.with_muckenhoupt = false;
    const YoungFunction p3 = YoungFunction::power(3.0);
    const YoungFunction p4 = YoungFunction::power(4.0);
    const AdmissibilityReport one =
        admissibility_report(WeightProfile::constant(2.5, 1.0, 2), p3, p4, 2, 1.0, cfg);
    const AdmissibilityReport two =
        admissibility_report(WeightProfile::constant(5.0, 1.0, 2), p3, p4, 2, 1.0, cfg);
    for (const std::string id : {"T1.3", "T1.4", "T1.5", "T1.7"}) {
        const RouteReport* a = find_route(one, id);
        const RouteReport* b = find_route(two, id);
        REQUIRE(a != nullptr);
        REQUIRE(b != nullptr);
        CHECK(b->norm.value == doctest::Approx(2.0 * a->norm.value).epsilon(1e-9));
    }
    CHECK_FALSE(one.muckenhoupt.has_value());
}

TEST_CASE("critical growth on the plane is reported, not computed") {
    const YoungFunction p2 = YoungFunction::power(2.0);
    const WeightProfile w = WeightProfile::radial_power(2.0, 2, kInf);
    const AdmissibilityReport rep = admissibility_report(w, p2, p2, 2);

    for (const RouteReport& r : rep.routes) CHECK(r.verdict != RouteVerdict::admissible);

    const RouteReport* weak = find_route(rep, "T1.3");
    REQUIRE(weak != nullptr);
    CHECK(weak->verdict == RouteVerdict::hypothesis_failed);
    const HypothesisStatus* below = find_hyp(*weak, "growth-index-below-dimension");
    REQUIRE(below != nullptr);
    CHECK_FALSE(below->ok);

    const RouteReport* xphi = find_route(rep, "T1.4");
    REQUIRE(xphi != nullptr);
    const HypothesisStatus* lim = find_hyp(*xphi, "eta-limit-at-zero");
    REQUIRE(lim != nullptr);
    CHECK_FALSE(lim->ok);
    CHECK_FALSE(xphi->norm.finite);

    const RouteReport* bphi = find_route(rep, "T1.2");
    REQUIRE(bphi != nullptr);
    const HypothesisStatus* tr = find_hyp(*bphi, "transform-integrand-at-zero");
    REQUIRE(tr != nullptr);
    CHECK_FALSE(tr->ok);

    const RouteReport* pair = find_route(rep, "T1.7");
    REQUIRE(pair != nullptr);
    const HypothesisStatus* plim = find_hyp(*pair, "pair-eta-limit-at-zero");
    REQUIRE(plim != nullptr);
    CHECK_FALSE(plim->ok);

    REQUIRE(rep.muckenhoupt.has_value());
    CHECK(rep.muckenhoupt->divergent);
}

TEST_CASE("report rejects inconsistent domain measures") {
    const YoungFunction p2 = YoungFunction::power(2.0);
    CHECK_THROWS_AS(
        admissibility_report(WeightProfile::constant(1.0, 2.0, 2), p2, p2, 2, 3.0), DomainError);
    CHECK_THROWS_AS(
        admissibility_report(WeightProfile::radial_power(1.0, 3, kInf), p2, p2, 3, 5.0),
        DomainError);
    AdmitConfig cfg;
    cfg.with_muckenhoupt = false;
    const AdmissibilityReport rep =
        admissibility_report(WeightProfile::constant(1.0, 2.0, 2), p2, p2, 2, 2.0, cfg);
    CHECK(rep.routes.size() == 5);
}
