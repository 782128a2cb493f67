#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ivts/errors.hpp"
#include "ivts/theory.hpp"
#include "support.hpp"

using namespace ivts;
using ivts::testing::Gen;

namespace {

// sup over a grid of (a, b) of tau f - varrho f^2 with f = a z + b, n = 1.
double grid_oracle(double z, int tau, double c_A, double c_B, double varrho) {
    double best = 0.0;
    constexpr int steps = 400;
    for (int i = 0; i <= steps; ++i) {
        const double a = -c_A + 2 * c_A * i / steps;
        for (int j = 0; j <= steps; ++j) {
            const double b = -c_B + 2 * c_B * j / steps;
            const double f = a * z + b;
            best = std::max(best, tau * f - varrho * f * f);
        }
    }
    return best;
}

} // namespace

TEST_CASE("lipschitz and pointwise bounds") {
    CHECK(lipschitz_constant(LossKind::hinge) == 1.0);
    CHECK(lipschitz_constant(LossKind::squared_hinge) == 2.0);
    CHECK(lipschitz_constant(LossKind::exponential) == 1.0);
    const auto g = g_bounds(1, 1, 1, 1);
    CHECK(g.single == 4.0);
    CHECK(g.pair == 8.0);
    CHECK(g_bounds(2, 0.5, 2, 3).pair == doctest::Approx(32.0));
    CHECK_THROWS_AS(g_bounds(0, 1, 1, 1), InvalidArgument);
}

TEST_CASE("bound values") {
    CHECK(excess_risk_varrho(1, 1, 1, 1) == 0.125);
    RiskBoundInputs in{1, 1, 1, 1, 100, 10, 0.125};
    CHECK(offset_rademacher_bound(in) == doctest::Approx(16.44).epsilon(1e-12));
    CHECK(std::abs(excess_risk_bound(1, 1, 1, 1, 100, 10) - 65.76) < 1e-9);

    in.n = 0;
    CHECK_THROWS_AS(offset_rademacher_bound(in), InvalidArgument);
    in.n = 1;
    in.log_covering = -1;
    CHECK_THROWS_AS(offset_rademacher_bound(in), InvalidArgument);
}

TEST_CASE("property: bound monotonicity") {
    double prev = excess_risk_bound(1, 1, 1, 1, 1, 10);
    for (std::size_t n = 2; n < 5000; n = n * 3 / 2 + 1) {
        const double cur = excess_risk_bound(1, 1, 1, 1, n, 10);
        CHECK(cur < prev);
        prev = cur;
    }
    prev = excess_risk_bound(1, 1, 1, 1, 100, 0);
    for (double logN = 0.5; logN < 100; logN *= 1.7) {
        const double cur = excess_risk_bound(1, 1, 1, 1, 100, logN);
        CHECK(cur > prev);
        prev = cur;
    }
    // the complexity term vanishes and leaves 4 * 4lM * 2
    CHECK(excess_risk_bound(1, 1, 1, 1, 1u << 30, 10) == doctest::Approx(64.0).epsilon(1e-6));
}

TEST_CASE("heuristic covering") {
    CHECK(heuristic_log_covering(3, 4, 1, 1, 4) == doctest::Approx(15 * std::log(2.0)));
    CHECK_THROWS_AS(heuristic_log_covering(3, 4, 1, 1, 0), InvalidArgument);
}

TEST_CASE("offset rademacher: degenerate class is zero") {
    Gen g(41);
    std::vector<Vector> z(20, Vector(3));
    for (auto& v : z) {
        for (auto& x : v) x = g.uniform(-1, 1);
    }
    RademacherConfig cfg;
    cfg.c_A = 0;
    cfg.c_B = 0;
    cfg.mc_draws = 32;
    CHECK(empirical_offset_rademacher(z, cfg).value == 0.0);
}

TEST_CASE("offset rademacher: n = 1 scalar case") {
    const std::vector<Vector> z{{0.7}};
    RademacherConfig cfg;
    cfg.mc_draws = 256;
    const double oracle = 0.5 * (grid_oracle(0.7, 1, 1, 1, 1) + grid_oracle(0.7, -1, 1, 1, 1));
    CHECK(oracle == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(std::abs(empirical_offset_rademacher(z, cfg).value - oracle) < 0.05);

    // tight caps bind: f ranges over [-0.2, 0.2], so the sup is 0.2 - 0.04
    cfg.c_A = 0.1;
    cfg.c_B = 0.13;
    const double tight = 0.5 * (grid_oracle(0.7, 1, 0.1, 0.13, 1) + grid_oracle(0.7, -1, 0.1, 0.13, 1));
    CHECK(tight == doctest::Approx(0.16).epsilon(1e-3));
    CHECK(std::abs(empirical_offset_rademacher(z, cfg).value - tight) < 0.05);
}

TEST_CASE("offset rademacher: seeded and thread-independent") {
    Gen g(42);
    std::vector<Vector> z(30, Vector(4));
    for (auto& v : z) {
        for (auto& x : v) x = g.uniform(-0.5, 0.5);
    }
    RademacherConfig cfg;
    cfg.mc_draws = 40;
    cfg.seed = 9;
    const auto a = empirical_offset_rademacher(z, cfg);
    cfg.threads = 4;
    const auto b = empirical_offset_rademacher(z, cfg);
    CHECK(a.value == b.value);
    CHECK(a.value >= 0.0);
    CHECK(a.mc_draws == 40);

    const std::vector<Vector> ragged{{1, 2}, {1}};
    CHECK_THROWS_AS(empirical_offset_rademacher(ragged, cfg), DimensionMismatch);
    CHECK_THROWS_AS(empirical_offset_rademacher(std::vector<Vector>{}, cfg), EmptyInput);
}
