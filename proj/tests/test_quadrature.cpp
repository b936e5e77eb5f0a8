#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horncrit/classify.hpp"
#include "horncrit/quadrature.hpp"

using namespace horncrit;

TEST_CASE("adaptive quadrature on closed forms") {
    auto q1 = integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(q1.converged);
    CHECK(std::abs(q1.value - 1.0 / 3.0) < 1e-13);

    auto q2 = integrate([](double x) { return 1.0 / x; }, 1.0, 4.0);
    CHECK(std::abs(q2.value - std::log(4.0)) < 1e-12);

    // wide dyadic block, the shape improper_integral feeds it
    const double a = std::ldexp(1.0, 30), b = std::ldexp(1.0, 31);
    auto q3 = integrate([](double x) { return 1.0 / (x * x); }, a, b);
    CHECK(std::abs(q3.value - (1.0 / a - 1.0 / b)) < 1e-15);

    auto q4 = integrate([](double x) { return std::exp(-x); }, 0.0, 40.0);
    CHECK(std::abs(q4.value - 1.0) < 1e-10);
}

TEST_CASE("improper integral: 1/s diverges with flat blocks") {
    auto res = improper_integral([](double s) { return 1.0 / s; }, 1.0, 40);
    CHECK(res.verdict == TailVerdict::Divergent);
    for (const auto& b : res.blocks) CHECK(std::abs(b.integral - std::log(2.0)) < 1e-10);
}

TEST_CASE("improper integral: s^-2 converges to 1 within 1e-9") {
    auto res = improper_integral([](double s) { return 1.0 / (s * s); }, 1.0, 40);
    CHECK(res.verdict == TailVerdict::Convergent);
    CHECK(std::abs(res.value - 1.0) < 1e-9);
}

TEST_CASE("improper integral: 1/(s log^2 s) converges to 1/log 2") {
    // oracle: antiderivative -1/log s, total from 2 is 1/log 2
    const double oracle = 1.0 / std::log(2.0);
    auto res = improper_integral(
        [](double s) {
            const double ls = std::log(s);
            return 1.0 / (s * ls * ls);
        },
        2.0, 40);
    CHECK(res.verdict == TailVerdict::Convergent);
    CHECK(std::abs(res.value - oracle) / oracle < 0.02);
}

TEST_CASE("improper integral: the critical 1/(s log s) stays inconclusive") {
    auto res = improper_integral([](double s) { return 1.0 / (s * std::log(s)); }, 2.0, 40);
    CHECK(res.verdict == TailVerdict::Inconclusive);
    CHECK(res.exponent_hat == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("improper integral: slow polynomial divergence is caught") {
    auto res = improper_integral(
        [](double s) { return 1.0 / (s * std::sqrt(std::log(s))); }, 2.0, 40);
    CHECK(res.verdict == TailVerdict::Divergent);
}

TEST_CASE("improper integral: strongly growing integrand diverges") {
    auto res = improper_integral([](double s) { return s * std::sqrt(s); }, 1.0, 40);
    CHECK(res.verdict == TailVerdict::Divergent);
}

TEST_CASE("improper integral: identically zero tail converges to the partial sum") {
    auto res = improper_integral([](double s) { return s < 4.0 ? 1.0 : 0.0; }, 1.0, 40);
    CHECK(res.verdict == TailVerdict::Convergent);
    CHECK(std::abs(res.value - 3.0) < 1e-10);
}

TEST_CASE("judge_tail applies the same rules to external blocks") {
    std::vector<TailBlock> geometric;
    double v = 1.0;
    for (int k = 0; k < 30; ++k, v *= 0.5) geometric.push_back({k, 0, 0, v, 0});
    auto res = judge_tail(geometric);
    CHECK(res.verdict == TailVerdict::Convergent);
    CHECK(std::abs(res.value - 2.0) < 1e-9);

    std::vector<TailBlock> flat;
    for (int k = 0; k < 30; ++k) flat.push_back({k, 0, 0, 1.0, 0});
    CHECK(judge_tail(flat).verdict == TailVerdict::Divergent);
}
