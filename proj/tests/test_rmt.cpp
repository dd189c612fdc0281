#include <doctest.h>

#include <cmath>
#include <vector>

#include "distreg/asymptotic.hpp"
#include "distreg/efficiency.hpp"
#include "distreg/equivalents.hpp"
#include "distreg/errors.hpp"
#include "distreg/fixed_point.hpp"
#include "distreg/rng.hpp"

using namespace distreg;

namespace {

// independent root finder for E[Te/(1+gamma Te)] = 1: plain bisection written
// against the eta transform, no shared code with solve_e's Newton polish
double bisect_oracle(double gamma, const ScaleDistribution& g) {
    double lo = 0.0, hi = 1.0;
    const auto moment = [&](double e) {
        // E[Te/(1+gamma Te)] = (1 - eta(gamma e))/gamma
        return (1.0 - g.eta(gamma * e)) / gamma;
    };
    while (moment(hi) < 1.0) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (moment(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ScaleDistribution random_discrete(Rng& rng) {
    const int atoms = 1 + static_cast<int>(rng.next_below(4));
    std::vector<std::pair<double, double>> list;
    double total = 0.0;
    for (int a = 0; a < atoms; ++a) {
        const double w = 0.1 + rng.next_unit();
        list.emplace_back(w, 0.05 + 4.0 * rng.next_unit());
        total += w;
    }
    for (auto& [w, s] : list) w /= total;
    // renormalize exactly
    double sum = 0.0;
    for (std::size_t a = 0; a + 1 < list.size(); ++a) sum += list[a].first;
    list.back().first = 1.0 - sum;
    return ScaleDistribution::discrete(std::move(list));
}

Dataset elliptical_dataset(int n, int p, int k, const ScaleDistribution& g,
                           std::uint64_t seed) {
    ProblemSpec spec;
    spec.n = n;
    spec.p = p;
    const PartitionPlan plan = make_partition(n, p, k, PartitionMode::Equal);
    return sample_dataset(spec, g, CovarianceSpec::uniform_diagonal(1.0, 2.0, 7), plan, seed);
}

std::vector<Eigen::MatrixXd> blocks_of(const Dataset& ds) {
    std::vector<Eigen::MatrixXd> blocks;
    for (int i = 0; i < ds.partition.k(); ++i) blocks.emplace_back(ds.x_block(i));
    return blocks;
}

}  // namespace

TEST_CASE("fixed point for unit scales is 1/(1-gamma)") {
    const FixedPointSolution s = solve_e(0.2, ScaleDistribution::point_mass(1.0));
    CHECK(s.e == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(s.f == doctest::Approx(0.25).epsilon(1e-13));
    CHECK(s.residual <= 1e-13);
}

TEST_CASE("fixed point is scale equivariant: e(gamma, sG) = e(gamma, G)/s") {
    Rng rng(1, "equivariance");
    for (int trial = 0; trial < 20; ++trial) {
        const double gamma = 0.05 + 0.85 * rng.next_unit();
        const double s = 0.2 + 3.0 * rng.next_unit();
        const double base = solve_e(gamma, ScaleDistribution::point_mass(1.0)).e;
        CHECK(solve_e(gamma, ScaleDistribution::point_mass(s)).e ==
              doctest::Approx(base / s).epsilon(1e-11));
    }
}

TEST_CASE("fixed point matches an independent bisection oracle") {
    const ScaleDistribution g = ScaleDistribution::two_point(0.5, 1.0, 0.5, 2.0);
    const double oracle = bisect_oracle(0.1, g);
    CHECK(solve_e(0.1, g).e == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("fixed point residuals stay below 1e-12 over random discrete laws") {
    Rng rng(2, "residuals");
    for (int trial = 0; trial < 200; ++trial) {
        const ScaleDistribution g = random_discrete(rng);
        const double gamma = 0.02 + 0.9 * rng.next_unit();
        const FixedPointSolution s = solve_e(gamma, g);
        CHECK(s.residual <= 1e-12);
        CHECK(s.e == doctest::Approx(bisect_oracle(gamma, g)).epsilon(1e-10));
    }
}

TEST_CASE("the two routes to the inverse eta transform agree") {
    Rng rng(3, "dual");
    std::vector<ScaleDistribution> laws = {
        ScaleDistribution::point_mass(1.0),
        ScaleDistribution::two_point(0.3, 0.5, 0.7, 3.0),
        ScaleDistribution::uniform(1e-6, 1.0),
        ScaleDistribution::discrete({{0.2, 0.3}, {0.5, 1.0}, {0.3, 2.5}}),
    };
    for (const auto& g : laws) {
        for (int i = 1; i <= 18; ++i) {
            const double gamma = 0.05 * i;
            const double via_fp = f_inverse_eta(gamma, g);
            const double via_eta = eta_inverse(g, 1.0 - gamma);
            CHECK(std::abs(via_fp - via_eta) <= 1e-9 * std::max(1.0, via_fp));
        }
    }
}

TEST_CASE("inverse eta closed forms") {
    CHECK(f_inverse_eta(0.2, ScaleDistribution::point_mass(1.0)) ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK(f_inverse_eta(1e-6, ScaleDistribution::point_mass(1.0)) < 2e-6);

    // two-point mixture against the explicit quadratic root
    const double gamma = 0.01, c = 0.05, alpha = 1000.0, tau = 0.37;
    const ScaleDistribution g = ScaleDistribution::two_point(1.0 - c, tau, c, alpha * tau);
    const double b = (gamma - c) * alpha + c + gamma - 1.0;
    const double x1 = (b + std::sqrt(b * b + 4.0 * gamma * (1.0 - gamma) * alpha)) /
                      (2.0 * (1.0 - gamma) * alpha * tau);
    CHECK(f_inverse_eta(gamma, g) == doctest::Approx(x1).epsilon(1e-8));
}

TEST_CASE("estimation limit: MP closed form, single machine, infeasible clamp") {
    const AsymptoticRegime mp20 = AsymptoticRegime::mp(0.01, 20);
    CHECK(are_limit(mp20) == doctest::Approx((100.0 - 20) / (100.0 - 1)).epsilon(1e-12));
    CHECK(are_limit(mp20) == doctest::Approx(mp::are(0.01, 20)).epsilon(1e-12));
    CHECK(are_limit(AsymptoticRegime::mp(0.3, 1)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(are_limit(AsymptoticRegime::mp(0.11, 10)) == 0.0);
    CHECK(ce_limit(mp20) == are_limit(mp20));
}

TEST_CASE("estimation limit matches simulation for an elliptical law") {
    const ScaleDistribution g = ScaleDistribution::uniform(1e-6, 1.0);
    const AsymptoticRegime regime = AsymptoticRegime::equal_split(0.01, 2, g);
    const double limit = are_limit(regime);
    const Dataset ds = elliptical_dataset(10000, 100, 2, g, 51);
    CHECK(re_finite(blocks_of(ds)) == doctest::Approx(limit).epsilon(0.05));
}

TEST_CASE("regression-function limit: MP forms") {
    CHECK(fe_limit(AsymptoticRegime::mp(0.01, 20)) ==
          doctest::Approx((1.0 - 0.2) / 0.99).epsilon(1e-12));
    CHECK(fe_limit(AsymptoticRegime::mp(0.25, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    // unequal aspect ratios
    AsymptoticRegime regime;
    regime.gamma = 0.02;
    regime.gammas = {0.03, 0.06};
    regime.g = ScaleDistribution::point_mass(1.0);
    regime.gs = {regime.g, regime.g};
    CHECK(fe_limit(regime) == doctest::Approx(48.0 / 49.0).epsilon(1e-12));
    CHECK(fe_limit(regime) == doctest::Approx(mp::fe(0.02, regime.gammas)).epsilon(1e-12));
}

TEST_CASE("in-sample limit: MP value, single machine, elliptical simulation") {
    CHECK(ie_limit(AsymptoticRegime::mp(0.01, 20)) ==
          doctest::Approx(0.9976067).epsilon(1e-6));
    CHECK(ie_limit(AsymptoticRegime::mp(0.01, 20)) ==
          doctest::Approx(mp::ie(0.01, 20)).epsilon(1e-12));
    CHECK(ie_limit(AsymptoticRegime::mp(0.4, 1)) == doctest::Approx(1.0).epsilon(1e-12));

    const ScaleDistribution g = ScaleDistribution::two_point(0.5, 0.5, 0.5, 2.0);
    const AsymptoticRegime regime = AsymptoticRegime::equal_split(0.01, 4, g);
    const Dataset ds = elliptical_dataset(10000, 100, 4, g, 53);
    CHECK(ie_finite(blocks_of(ds)) == doctest::Approx(ie_limit(regime)).epsilon(0.05));
}

TEST_CASE("out-of-sample limit: MP value and the scale of the test point") {
    const AsymptoticRegime mp20 = AsymptoticRegime::mp(0.01, 20);
    CHECK(oe_limit(mp20, 1.0) == doctest::Approx(0.9976306).epsilon(1e-6));
    CHECK(oe_limit(mp20, 1.0) == doctest::Approx(mp::oe(0.01, 20)).epsilon(1e-12));
    CHECK(oe_limit(mp20, 0.0) == 1.0);

    // heavy-scale mixture: a typical test point is barely affected, a
    // large-scale one is nearly as bad as estimation
    const ScaleDistribution g = ScaleDistribution::two_point(0.985, 1.0, 0.015, 1e4);
    const AsymptoticRegime regime = AsymptoticRegime::equal_split(0.01, 20, g);
    CHECK(oe_limit(regime, 1.0) > 0.95);
    CHECK(oe_limit(regime, 1e4) < 0.05);
    CHECK(oe_limit(regime, 1e7) == doctest::Approx(are_limit(regime)).epsilon(1e-2));
}

TEST_CASE("criticality formulas at gamma = 0.01 and the small-gamma laws") {
    const Criticality c = criticality(0.01);
    CHECK(c.k_estimation == doctest::Approx(50.5).epsilon(1e-14));
    CHECK(c.k_insample == doctest::Approx((0.0001 - 0.01 + 1.0) / 0.01).epsilon(1e-12));
    CHECK(c.k_outsample == doctest::Approx((0.0001 + 1.0) / (0.0001 + 0.01)).epsilon(1e-12));
    CHECK(c.edge_estimation == doctest::Approx(0.01 / 0.99).epsilon(1e-14));
    CHECK(c.edge_insample == doctest::Approx(0.99 / (2.0 - 0.03)).epsilon(1e-14));
    CHECK(c.edge_outsample == doctest::Approx(1.0 / (2.0 * 0.99)).epsilon(1e-14));

    // half of the machines budget for estimation, the full budget for prediction
    const Criticality tiny = criticality(1e-4);
    CHECK(tiny.k_estimation * 1e-4 == doctest::Approx(0.5).epsilon(0.01));
    CHECK(tiny.k_outsample * 1e-4 == doctest::Approx(1.0).epsilon(0.01));

    // the efficiency-1/2 crossing matches the closed-form machine counts
    CHECK(mp::are(0.01, c.k_estimation) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mp::ie(0.01, c.k_insample) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mp::oe(0.01, c.k_outsample) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("worst-case mixture: tau invariance and the large-alpha plateau") {
    for (const int k : {2, 3, 5}) {
        const double a = worst_case_are(k, 0.01, 0.05, 1e3, 1.0);
        const double b = worst_case_are(k, 0.01, 0.05, 1e3, 1e-3);
        CHECK(std::abs(a - b) <= 1e-10);
    }
    // c = M gamma with M = 5: the limit is (c - k gamma)/(c - gamma) below M
    for (const int k : {2, 3, 4})
        CHECK(worst_case_are(k, 0.01, 0.05, 1e8, 1.0) ==
              doctest::Approx((0.05 - k * 0.01) / 0.04).epsilon(1e-3));
    CHECK(worst_case_are(1, 0.01, 0.05, 1e8, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("worst-case mixture: two machines degrade like sqrt(tau)") {
    const double gamma = 0.01;
    std::vector<double> scaled;
    for (const double tau : {1e-2, 1e-4, 1e-6}) {
        const double alpha = 1.0 / (gamma * tau);
        scaled.push_back(worst_case_are(2, gamma, gamma, alpha, tau) / std::sqrt(tau));
    }
    for (const double v : scaled) {
        CHECK(v > 1.5);
        CHECK(v < 2.5);
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    CHECK(*hi / *lo < 1.15);
}

TEST_CASE("fixed-point route matches the worst-case closed form") {
    // cross-check the generic solver against the quadratic-root evaluation
    const double gamma = 0.01, c = 0.03, alpha = 100.0, tau = 1.0;
    const ScaleDistribution g = ScaleDistribution::two_point(1.0 - c, tau, c, alpha * tau);
    const double solver = 2.0 * f_inverse_eta(gamma, g) / f_inverse_eta(2.0 * gamma, g);
    CHECK(worst_case_are(2, gamma, c, alpha, tau) == doctest::Approx(solver).epsilon(1e-10));
}

TEST_CASE("efficiency scan: straight MP line, curves below it, shape flags") {
    std::vector<double> grid;
    for (int k = 1; k <= 9; ++k) grid.push_back(k);
    const AreScan mp_scan =
        are_monotonicity_scan(0.1, ScaleDistribution::point_mass(1.0), grid);
    for (const auto& [k, are] : mp_scan.points)
        CHECK(are == doctest::Approx((1.0 - 0.1 * k) / 0.9).epsilon(1e-9));
    CHECK(mp_scan.points.front().are == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mp_scan.strictly_decreasing);
    CHECK(mp_scan.midpoint_convex);

    std::vector<double> wide;
    for (int k = 1; k <= 99; ++k) wide.push_back(k);
    const AreScan elliptical =
        are_monotonicity_scan(0.01, ScaleDistribution::uniform(1e-6, 1.0), wide);
    for (const auto& [k, are] : elliptical.points)
        CHECK(are <= (1.0 - 0.01 * k) / 0.99 + 1e-9);
    CHECK(elliptical.strictly_decreasing);

    const AreScan two_point = are_monotonicity_scan(
        0.02, ScaleDistribution::two_point(0.5, 1.0, 0.5, 3.0), grid);
    CHECK(two_point.strictly_decreasing);
    CHECK(two_point.midpoint_convex);
}

TEST_CASE("regime validation enforces the aspect-ratio and mixture identities") {
    AsymptoticRegime regime;
    regime.gamma = 0.1;
    regime.gammas = {0.3, 0.3};  // 1/0.3 + 1/0.3 != 1/0.1
    regime.g = ScaleDistribution::point_mass(1.0);
    regime.gs = {regime.g, regime.g};
    CHECK_THROWS_AS(are_limit(regime), ConfigError);

    regime.gammas = {0.2, 0.2};
    CHECK_NOTHROW(are_limit(regime));

    regime.gs = {ScaleDistribution::point_mass(2.0), ScaleDistribution::point_mass(2.0)};
    CHECK_THROWS_AS(are_limit(regime), ConfigError);
}

TEST_CASE("inverse sample covariance tracks its deterministic equivalent") {
    const std::vector<TestMatrixFamily> families = {
        TestMatrixFamily::ScaledIdentity, TestMatrixFamily::CoordinateUnit,
        TestMatrixFamily::RandomRankOne, TestMatrixFamily::ProductRuleDiag};

    // identity scales
    const auto mp_rows =
        equivalence_check({300, 2400}, 0.1, CovarianceSpec::uniform_diagonal(1.0, 2.0, 3),
                          ScaleDistribution::point_mass(1.0), families, 20, 61);
    REQUIRE(mp_rows.size() == 8);
    for (std::size_t f = 0; f < families.size(); ++f) {
        const double at_small = mp_rows[f].median_abs;
        const double at_large = mp_rows[families.size() + f].median_abs;
        CAPTURE(std::string(family_name(families[f])));
        CHECK(at_large < at_small);
    }

    // elliptical scales go through the sample-level fixed point
    const auto ell_rows =
        equivalence_check({300, 2400}, 0.1, CovarianceSpec::uniform_diagonal(1.0, 2.0, 3),
                          ScaleDistribution::two_point(0.5, 0.5, 0.5, 2.0), families, 20, 67);
    for (std::size_t f = 0; f < families.size(); ++f)
        CHECK(ell_rows[families.size() + f].median_abs < ell_rows[f].median_abs);
}

TEST_CASE("the limit ordering holds on the whole aspect-ratio grid") {
    for (const double gamma : {0.001, 0.002, 0.005, 0.01, 0.02, 0.05}) {
        for (int k = 2; k * gamma < 1.0; ++k) {
            const double are = mp::are(gamma, k);
            const double ie = mp::ie(gamma, k);
            const double oe = mp::oe(gamma, k);
            REQUIRE(oe >= ie - 1e-12);
            REQUIRE(ie >= are - 1e-12);
        }
    }
}
