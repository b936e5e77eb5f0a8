#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horncrit/profile.hpp"

using namespace horncrit;

TEST_CASE("built-in families evaluate their closed forms") {
    CHECK(ProfileH::power(0.5).H(1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(ProfileH::constant(1.0).dH(3.7) == 0.0);
    CHECK(ProfileH::log_power(1.0).H(0.0) ==
          doctest::Approx(0.6931471805599453).epsilon(1e-12));
    CHECK(ProfileH::power(-0.25).H(3.0) == doctest::Approx(std::pow(4.0, -0.25)).epsilon(1e-12));
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(ProfileH::constant(0.0), std::invalid_argument);
    CHECK_THROWS_AS(ProfileH::constant(-2.0), std::invalid_argument);
    auto h = [](double s) { return 1.0 + s; };
    CHECK_THROWS_AS(ProfileH::custom(h, nullptr, nullptr, nullptr), std::invalid_argument);
}

TEST_CASE("derived log/square coefficients match their definitions") {
    const ProfileH p = ProfileH::power(0.6);
    const double s = 7.3;
    CHECK(p.L1(s) == doctest::Approx(p.dH(s) / p.H(s)).epsilon(1e-14));
    CHECK(p.Q1(s) == doctest::Approx(2.0 * p.H(s) * p.dH(s)).epsilon(1e-14));
    CHECK(p.Q2(s) ==
          doctest::Approx(2.0 * p.H(s) * p.d2H(s) + 2.0 * p.dH(s) * p.dH(s)).epsilon(1e-14));
    // power profile: L = gamma log(1+s), so L'' and L''' are explicit
    CHECK(p.L2(s) == doctest::Approx(-0.6 / ((1 + s) * (1 + s))).epsilon(1e-12));
    CHECK(p.L3(s) == doctest::Approx(1.2 / std::pow(1 + s, 3.0)).epsilon(1e-12));
}

TEST_CASE("analytic derivatives track centered differences to 1e-6") {
    for (const ProfileH& p : {ProfileH::power(0.5), ProfileH::power(-0.7), ProfileH::power(1.5),
                              ProfileH::log_power(1.0), ProfileH::log_power(2.5),
                              ProfileH::constant(2.0)}) {
        CAPTURE(p.describe());
        CHECK(derivative_consistency(p, 1e6, 100) <= 1e-6);
    }
}

TEST_CASE("custom profiles use the supplied callables") {
    const ProfileH p = ProfileH::custom([](double s) { return std::exp(-s); },
                                        [](double s) { return -std::exp(-s); },
                                        [](double s) { return std::exp(-s); },
                                        [](double s) { return -std::exp(-s); });
    CHECK(p.L1(2.0) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(derivative_consistency(p, 10.0, 40) <= 1e-6);
}

TEST_CASE("assumption report: sub-linear power profile passes") {
    const AssumptionReport rep = check_assumption_h(ProfileH::power(0.5));
    CHECK(rep.overall == CheckVerdict::Pass);
    CHECK(rep.conditions.size() == 5);
    for (const auto& c : rep.conditions) CHECK(c.verdict == CheckVerdict::Pass);
}

TEST_CASE("assumption report: super-linear power profile fails") {
    const AssumptionReport rep = check_assumption_h(ProfileH::power(1.5));
    CHECK(rep.overall == CheckVerdict::Fail);
}

TEST_CASE("assumption report: linear growth fails the H' limit") {
    const AssumptionReport rep = check_assumption_h(ProfileH::power(1.0));
    CHECK(rep.overall == CheckVerdict::Fail);
    CHECK(rep.conditions[1].verdict == CheckVerdict::Fail);
}

TEST_CASE("assumption report: constant profile passes trivially") {
    const AssumptionReport rep = check_assumption_h(ProfileH::constant(2.0));
    CHECK(rep.overall == CheckVerdict::Pass);
}

TEST_CASE("assumption verdicts are stable under a 10x larger horizon") {
    for (const ProfileH& p : {ProfileH::power(0.5), ProfileH::power(1.5), ProfileH::power(1.0),
                              ProfileH::power(-0.4), ProfileH::log_power(1.0),
                              ProfileH::constant(1.0)}) {
        const CheckVerdict v1 = check_assumption_h(p, 1e7).overall;
        const CheckVerdict v2 = check_assumption_h(p, 1e8).overall;
        CAPTURE(p.describe());
        if (v1 != CheckVerdict::Inconclusive) CHECK(v1 == v2);
    }
}

TEST_CASE("preconditions on the checker") {
    CHECK_THROWS_AS(check_assumption_h(ProfileH::power(0.5), 100.0), std::invalid_argument);
    CHECK_THROWS_AS(check_assumption_h(ProfileH::power(0.5), 1e7, 0.0), std::invalid_argument);
}
