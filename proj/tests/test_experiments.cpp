#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horncrit/experiments.hpp"
#include "horncrit/lyapunov.hpp"

using namespace horncrit;

TEST_CASE("cycle oracles: closed forms and the accrual-rate identity") {
    // m = 2, a = 1: up leg 3/8; down leg ln 2 - 3/8; local time ln 2
    CHECK(cycle_sigma_up_oracle(1.0, 2) == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(cycle_sigma_down_oracle(1.0, 2) ==
          doctest::Approx(std::log(2.0) - 0.375).epsilon(1e-15));
    CHECK(cycle_local_time_oracle(1.0, 2) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    // substituting the oracles into the accrual identity gives m/(2a) exactly
    for (int m : {1, 2, 3, 4}) {
        for (double a : {0.5, 1.0, 1.5}) {
            const double cycle =
                cycle_sigma_up_oracle(a, m) + cycle_sigma_down_oracle(a, m);
            CAPTURE(m);
            CAPTURE(a);
            CHECK(cycle_local_time_oracle(a, m) / cycle ==
                  doctest::Approx(m / (2.0 * a)).epsilon(1e-12));
        }
    }
}

TEST_CASE("local-time accrual rate approaches m/(2a)") {
    const auto table = local_time_rate(1.0, 2, 10.0, 800, 1e-3, 4242);
    REQUIRE(table.rows.size() == 1);
    const auto& row = table.rows[0];
    CHECK(row.oracle == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(row.estimate - row.oracle) <= 0.08 + 3.0 * row.std_error);
    CHECK(row.std_error > 0.0);
}

TEST_CASE("cycle identity estimates near their oracles") {
    const auto table = cycle_identity(1.0, 2, 1500, 1e-4, 777);
    REQUIRE(table.rows.size() == 4);
    const auto& up = table.rows[0];
    CHECK(up.label == "E_sigma_a");
    CHECK(up.oracle == doctest::Approx(0.375).epsilon(1e-15));
    CHECK(std::abs(up.estimate - up.oracle) <= 3.0 * up.std_error + 0.01);
    const auto& down = table.rows[1];
    CHECK(std::abs(down.estimate - down.oracle) <= 3.0 * down.std_error + 0.012);
    const auto& ratio = table.rows[3];
    CHECK(ratio.oracle == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(ratio.estimate - 1.0) <= 3.0 * ratio.std_error + 0.05);
}

TEST_CASE("two-sphere frequencies track the exact cylinder oracle") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    const auto table = two_sphere(dom, 1.0, 2.0, {5.0}, 2500, 1e-3, 999);
    REQUIRE(table.rows.size() == 1);
    const auto& row = table.rows[0];
    CHECK(row.oracle == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(std::abs(row.estimate - 0.75) <= 3.0 * row.std_error + 0.012);
}

TEST_CASE("two-sphere estimates are monotone in R up to noise") {
    const DomainSpec dom(1, 2, ProfileH::power(0.5));
    const auto table = two_sphere(dom, 1.0, 1.5, {3.0, 6.0, 12.0}, 2000, 1e-3, 1234);
    REQUIRE(table.rows.size() == 3);
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        CHECK(table.rows[i].estimate >=
              table.rows[i - 1].estimate - 2.0 * (table.rows[i].std_error +
                                                  table.rows[i - 1].std_error));
}

TEST_CASE("supermartingale check: degenerate grid reproduces u(start) exactly") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    const LyapunovFunction lyap = build_f(dom, LyapunovSign::Plus, 1.0, 1e4);
    const auto table = supermartingale_check(lyap, 50.0, 0.5, {0.0}, 50, 1e-3, 5);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].estimate == doctest::Approx(eval_u(lyap, 50.0, 0.5)).epsilon(1e-14));
    CHECK(table.rows[0].std_error == 0.0);
    CHECK(table.rows[0].oracle == table.rows[0].estimate);
}

TEST_CASE("martingale case: E[u] increments vanish within noise") {
    // constant profile, l = 3, minus sign: Gamma- = B/A exactly, u harmonic
    const DomainSpec dom(3, 1, ProfileH::constant(1.0));
    const LyapunovFunction lyap = build_f(dom, LyapunovSign::Minus, 1.0, 1e4);
    const auto table =
        supermartingale_check(lyap, 8.0, 0.5, {0.5, 1.0, 2.0}, 2000, 1e-3, 31);
    for (const auto& row : table.rows) {
        if (row.label != "increment") continue;
        CHECK(std::abs(row.estimate) <= 3.0 * row.std_error + 1e-4);
    }
}

TEST_CASE("supermartingale property for the recurrent horn") {
    const DomainSpec dom(1, 2, ProfileH::power(0.5));
    const LyapunovFunction lyap = build_f(dom, LyapunovSign::Plus);
    const double level = 4.0 * lyap.s0();
    const double r0 = 0.5 * dom.profile.H(level);
    const double rho0 = forward_map(dom, level, r0);
    const auto table =
        supermartingale_check(lyap, rho0, r0, {1.0, 2.0, 4.0}, 1500, 1e-3, 99);
    for (const auto& row : table.rows) {
        if (row.label != "increment") continue;
        CHECK(row.estimate <= 3.0 * row.std_error);
    }
}

TEST_CASE("doubling the path count shrinks stderr like 1/sqrt(2)") {
    int within = 0;
    const int cases = 100;
    for (int c = 0; c < cases; ++c) {
        const auto t1 = local_time_rate(1.0, 2, 5.0, 400, 5e-3, 9000 + c);
        const auto t2 = local_time_rate(1.0, 2, 5.0, 800, 5e-3, 9000 + c);
        const double ratio = t2.rows[0].std_error / t1.rows[0].std_error;
        if (std::abs(ratio - 1.0 / std::sqrt(2.0)) <= 0.2 * (1.0 / std::sqrt(2.0))) ++within;
    }
    CHECK(within >= 95);  // error model sane in nearly every draw
}

TEST_CASE("experiment tables serialize deterministically") {
    const auto t1 = local_time_rate(0.5, 1, 2.0, 100, 2e-3, 1);
    const auto t2 = local_time_rate(0.5, 1, 2.0, 100, 2e-3, 1);
    CHECK(t1.to_csv() == t2.to_csv());
    CHECK(t1.to_csv().find("label,param,estimate,stderr,oracle,n_paths,h,seed") == 0);
}
