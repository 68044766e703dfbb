#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "lncat/estimation.hpp"
#include "lncat/rng.hpp"

using namespace lncat;

namespace {

// Independent recomputation straight from the definitions, accumulating in
// long double so it cannot share rounding behavior with the implementation.
LogSummary brute_force_summary(const std::vector<double>& logs) {
    long double sum = 0.0L;
    for (double y : logs) sum += y;
    const long double ybar = sum / static_cast<long double>(logs.size());
    long double ss = 0.0L;
    for (double y : logs) ss += (y - ybar) * (y - ybar);
    return LogSummary{static_cast<int>(logs.size()), static_cast<double>(ybar),
                      static_cast<double>(ss / static_cast<long double>(logs.size()))};
}

std::vector<double> random_positive_values(RngStream& rng, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = std::exp(rng.next_normal(0.5, 1.2));
    return v;
}

}  // namespace

TEST_CASE("make_group_sample attaches logs") {
    const double e2 = std::exp(2.0);
    const GroupSample s = make_group_sample(std::vector<double>{1.0, e2});
    CHECK(s.n == 2);
    CHECK(s.observations[0] == 1.0);
    CHECK(s.log_values[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.log_values[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("make_group_sample rejects bad input") {
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{2.0, -1.0}),
                    NonPositiveObservation);
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{2.0, 0.0}),
                    NonPositiveObservation);
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{5.0}), TooFewObservations);
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{}), TooFewObservations);
    const double inf = std::numeric_limits<double>::infinity();
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{1.0, inf}),
                    NonPositiveObservation);
    CHECK_THROWS_AS((void)make_group_sample(std::vector<double>{1.0, nan}),
                    NonPositiveObservation);
}

TEST_CASE("weighted eta mean uses 1/v weights") {
    // weights 1 and 4: (1*2 + 4*0.5) / 5 = 0.8
    CHECK(weighted_eta_mean({{2.0, 0.5}, {1.0, 0.25}}) == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("summarize matches hand arithmetic") {
    // logs {0, 2}
    const LogSummary a = summarize(make_group_sample(std::vector<double>{1.0, std::exp(2.0)}));
    CHECK(a.ybar == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(a.s2 == doctest::Approx(1.0).epsilon(1e-14));

    // constant group: zero variance, exactly
    const LogSummary b = summarize(make_group_sample(std::vector<double>{7.25, 7.25, 7.25}));
    CHECK(b.ybar == doctest::Approx(std::log(7.25)).epsilon(1e-15));
    CHECK(b.s2 == 0.0);

    // logs {0, 1, 2, 3}
    const LogSummary c = summarize(make_group_sample(
        std::vector<double>{1.0, std::exp(1.0), std::exp(2.0), std::exp(3.0)}));
    CHECK(c.ybar == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(c.s2 == doctest::Approx(1.25).epsilon(1e-14));
}

TEST_CASE("summarize agrees with a long-double recomputation") {
    RngStream rng(20240801);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 40);
        const GroupSample s = make_group_sample(random_positive_values(rng, n));
        const LogSummary got = summarize(s);
        const LogSummary want = brute_force_summary(s.log_values);
        CHECK(got.ybar == doctest::Approx(want.ybar).epsilon(1e-13));
        CHECK(got.s2 == doctest::Approx(want.s2).epsilon(1e-12));
    }
}

TEST_CASE("estimate_group plugs in the MLE formulas") {
    const GroupEstimate a = estimate_group(LogSummary{2, 1.0, 1.0});
    CHECK(a.eta_hat == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(a.v_hat == doctest::Approx(0.625).epsilon(1e-15));

    const GroupEstimate b = estimate_group(LogSummary{10, 0.0, 2.0});
    CHECK(b.eta_hat == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b.v_hat == doctest::Approx(0.38).epsilon(1e-15));
    CHECK(b.phi_hat() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));

    CHECK_THROWS_AS((void)estimate_group(LogSummary{5, 1.0, 0.0}), DegenerateSample);
}

TEST_CASE("v_hat strictly decreases in n for fixed s2") {
    const double s2 = 1.7;
    double prev = estimate_group(LogSummary{2, 0.0, s2}).v_hat;
    for (int n = 3; n <= 60; ++n) {
        const double cur = estimate_group(LogSummary{n, 0.0, s2}).v_hat;
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("theta statistic: worked examples") {
    CHECK(theta_statistic({{3.0, 3.0, 3.0}, {0.3, 1.0, 2.5}}) == 0.0);
    CHECK(theta_statistic({{1.0, 0.0}, {1.0, 1.0}}) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(theta_statistic({{1.0, 2.0, 3.0}, {1.0, 1.0, 1.0}}) ==
          doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("theta statistic validates its input") {
    CHECK_THROWS_AS((void)theta_statistic({{1.0}, {1.0}}), TooFewGroups);
    CHECK_THROWS_AS((void)theta_statistic({{1.0, 2.0}, {1.0}}), InvalidInput);
    CHECK_THROWS_AS((void)theta_statistic({{1.0, 2.0}, {1.0, 0.0}}), InvalidInput);
}

TEST_CASE("scale equivariance: c * observations shifts ybar by log c, keeps s2") {
    RngStream rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 20);
        const std::vector<double> base = random_positive_values(rng, n);
        const double c = std::exp(rng.next_normal(0.0, 1.0));
        std::vector<double> scaled = base;
        for (double& x : scaled) x *= c;
        const LogSummary s0 = summarize(make_group_sample(base));
        const LogSummary s1 = summarize(make_group_sample(scaled));
        CHECK(s1.ybar == doctest::Approx(s0.ybar + std::log(c)).epsilon(1e-12));
        CHECK(s1.s2 == doctest::Approx(s0.s2).epsilon(1e-10));
    }
}

TEST_CASE("theta is invariant under a common shift of the etas") {
    RngStream rng(78);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 5);
        ThetaInput input;
        for (int i = 0; i < k; ++i) {
            input.etas.push_back(rng.next_normal(0.0, 2.0));
            input.vs.push_back(0.05 + 3.0 * rng.next_double());
        }
        const double base = theta_statistic(input);
        const double shift = rng.next_normal(0.0, 3.0);
        ThetaInput shifted = input;
        for (double& e : shifted.etas) e += shift;
        CHECK(theta_statistic(shifted) ==
              doctest::Approx(base).epsilon(1e-9).scale(std::max(1.0, base)));
    }
}

TEST_CASE("theta is zero exactly when the etas coincide") {
    RngStream rng(79);
    for (int trial = 0; trial < 50; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 5);
        const double eta = rng.next_normal(0.0, 2.0);
        ThetaInput equal;
        ThetaInput jittered;
        for (int i = 0; i < k; ++i) {
            const double v = 0.05 + 3.0 * rng.next_double();
            equal.etas.push_back(eta);
            equal.vs.push_back(v);
            jittered.etas.push_back(eta + (i == 0 ? 1e-3 : 0.0));
            jittered.vs.push_back(v);
        }
        CHECK(theta_statistic(equal) <= 1e-12);
        CHECK(theta_statistic(jittered) > 0.0);
    }
}

TEST_CASE("definitional and expanded theta forms agree") {
    RngStream rng(80);
    for (int trial = 0; trial < 200; ++trial) {
        const int k = 2 + static_cast<int>(rng.next_u64() % 6);
        ThetaInput input;
        for (int i = 0; i < k; ++i) {
            input.etas.push_back(rng.next_normal(0.0, 2.0));
            input.vs.push_back(0.05 + 3.0 * rng.next_double());
        }
        // Expanded form: sum eta^2/v - (sum eta/v)^2 / sum 1/v.
        double sq = 0.0, lin = 0.0, w = 0.0;
        for (std::size_t i = 0; i < input.etas.size(); ++i) {
            sq += input.etas[i] * input.etas[i] / input.vs[i];
            lin += input.etas[i] / input.vs[i];
            w += 1.0 / input.vs[i];
        }
        const double expanded = sq - lin * lin / w;
        const double definitional = theta_statistic(input);
        CHECK(definitional ==
              doctest::Approx(expanded).epsilon(1e-10).scale(std::max(1.0, definitional)));
    }
}
