#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "horncrit/classify.hpp"
#include "horncrit/rng.hpp"

using namespace horncrit;

namespace {
DomainSpec dom_power(int l, int m, double gamma) { return {l, m, ProfileH::power(gamma)}; }
}  // namespace

TEST_CASE("domain validation") {
    CHECK_THROWS_AS(DomainSpec(1, 1, ProfileH::constant(1.0)), std::invalid_argument);
    CHECK_THROWS_AS(DomainSpec(0, 3, ProfileH::constant(1.0)), std::invalid_argument);
    CHECK_NOTHROW(DomainSpec(1, 2, ProfileH::constant(1.0)));
}

TEST_CASE("scale function closed forms") {
    // constant profile, l = 1: unit scale density
    CHECK(scale_function(DomainSpec(1, 2, ProfileH::constant(1.0)), 1.0, 4.0) ==
          doctest::Approx(3.0).epsilon(1e-10));
    // l = 1, m = 2, power gamma = 1: density (1+t)^-2, antiderivative -1/(1+t)
    CHECK(scale_function(dom_power(1, 2, 1.0), 1.0, 2.0) ==
          doctest::Approx(0.5 - 1.0 / 3.0).epsilon(1e-9));
    // l = 3 cylinder: S(infinity) = int_1^inf t^-2 = 1
    auto s_inf = scale_function_limit(DomainSpec(3, 1, ProfileH::constant(1.0)), 1.0);
    REQUIRE(s_inf.has_value());
    CHECK(*s_inf == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(scale_function(dom_power(1, 2, 0.5), 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("transience verdicts for the worked examples") {
    CHECK(classify_transience(dom_power(1, 2, 0.5)).verdict == Recurrence::Recurrent);
    CHECK(classify_transience({2, 1, ProfileH::log_power(1.5)}).verdict == Recurrence::Transient);
    CHECK(classify_transience(dom_power(2, 2, 0.25)).verdict == Recurrence::Transient);
}

TEST_CASE("positive recurrence verdicts") {
    using V = VolumeClassification::Verdict;
    // volume integrand (1+s)^(-1.2) converges (antiderivative oracle)
    CHECK(classify_positive_recurrence(dom_power(1, 2, -0.6)).verdict == V::PositiveRecurrent);
    CHECK(classify_positive_recurrence({1, 2, ProfileH::constant(1.0)}).verdict ==
          V::NotPositiveRecurrent);
    CHECK(classify_positive_recurrence(dom_power(2, 1, -0.5)).verdict ==
          V::NotPositiveRecurrent);
}

TEST_CASE("volume constant records omega_l omega_m / m") {
    const auto res = classify_positive_recurrence(dom_power(1, 2, -0.6));
    // l = 1: omega_1 = 2; m = 2: omega_2 = 2 pi; constant = 2 * 2pi / 2
    CHECK(res.volume_constant == doctest::Approx(2.0 * std::numbers::pi * 2.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("hitting probabilities") {
    const DomainSpec cylinder(1, 2, ProfileH::constant(1.0));
    CHECK(hitting_prob_1d(cylinder, 1.0, 1.0, 5.0) == 1.0);
    CHECK(hitting_prob_1d(cylinder, 1.0, 2.0, 5.0) == doctest::Approx(0.75).epsilon(1e-10));
    const double inf = std::numeric_limits<double>::infinity();
    // transient: S(inf) = 1/2 from 1, S(2) = 1/6
    CHECK(hitting_prob_1d(dom_power(1, 2, 1.0), 1.0, 2.0, inf) ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    // recurrent domain: exact 1 at R = infinity
    CHECK(hitting_prob_1d(dom_power(1, 2, 0.5), 1.0, 2.0, inf) == 1.0);
}

TEST_CASE("hitting probability is monotone and in [0,1]") {
    NormalStream rng(2024, 0);
    for (int c = 0; c < 100; ++c) {
        const int l = 1 + static_cast<int>(rng.next_uniform() * 3);
        const int m = std::max(1, 4 - l - static_cast<int>(rng.next_uniform() * 2));
        const double gamma = -0.8 + 1.4 * rng.next_uniform();
        const DomainSpec dom(l, m, ProfileH::power(gamma));
        const double rho0 = 0.5 + rng.next_uniform();
        const double rho1 = rho0 + 0.1 + 2.0 * rng.next_uniform();
        const double R1 = rho1 + 0.5 + 3.0 * rng.next_uniform();
        const double R2 = R1 + 1.0 + 5.0 * rng.next_uniform();
        const double p1 = hitting_prob_1d(dom, rho0, rho1, R1);
        const double p2 = hitting_prob_1d(dom, rho0, rho1, R2);
        const double p3 = hitting_prob_1d(dom, rho0, rho1 + 0.05, R1);
        CAPTURE(l);
        CAPTURE(m);
        CAPTURE(gamma);
        CHECK(p1 >= 0.0);
        CHECK(p1 <= 1.0);
        CHECK(p2 >= p1 - 1e-12);  // increasing in R
        CHECK(p3 <= p1 + 1e-12);  // decreasing in rho1
    }
}

TEST_CASE("verdict equals the shared detector's judgment of S(inf)") {
    for (int l : {1, 2, 3}) {
        for (int m : {1, 2, 3}) {
            if (l + m < 3) continue;
            for (double off : {-0.3, -0.15, 0.15, 0.3}) {
                const double gc = (2.0 - l) / m;
                const DomainSpec dom(l, m, ProfileH::power(gc + off));
                const Classification c = classify_transience(dom);
                const auto s_inf = scale_function_limit(dom, 10.0);
                CAPTURE(l);
                CAPTURE(m);
                CAPTURE(off);
                if (c.verdict == Recurrence::Transient) CHECK(s_inf.has_value());
                if (c.verdict == Recurrence::Recurrent) CHECK(!s_inf.has_value());
            }
        }
    }
}

TEST_CASE("positive recurrence implies not transient on the family grid") {
    for (int l : {1, 2, 3}) {
        for (int m : {1, 2, 3}) {
            if (l + m < 3) continue;
            for (double gamma = -0.9; gamma <= 0.91; gamma += 0.2) {
                const DomainSpec dom(l, m, ProfileH::power(gamma));
                const auto vol = classify_positive_recurrence(dom);
                if (vol.verdict == VolumeClassification::Verdict::PositiveRecurrent) {
                    CAPTURE(l);
                    CAPTURE(m);
                    CAPTURE(gamma);
                    CHECK(classify_transience(dom).verdict != Recurrence::Transient);
                }
            }
        }
    }
}

TEST_CASE("critical parameters classify to the recurrent side exactly") {
    for (int l : {1, 2, 3}) {
        for (int m : {1, 2, 3}) {
            if (l + m < 3) continue;
            const double gc = (2.0 - l) / m;
            CHECK(classify_transience(DomainSpec(l, m, ProfileH::power(gc))).verdict ==
                  Recurrence::Recurrent);
            CHECK(classify_transience(DomainSpec(l, m, ProfileH::power(gc + 1e-13))).verdict ==
                  Recurrence::Recurrent);
        }
    }
    // log profile at its critical exponent, d = 3 generalized slab
    CHECK(classify_transience({2, 1, ProfileH::log_power(1.0)}).verdict ==
          Recurrence::Recurrent);
}

TEST_CASE("custom near-critical profile propagates inconclusive with evidence") {
    // same tail as the critical log profile, but opaque to the closed forms
    const ProfileH p = ProfileH::custom(
        [](double s) { return std::log(2.0 + s); }, [](double s) { return 1.0 / (2.0 + s); },
        [](double s) { return -1.0 / ((2.0 + s) * (2.0 + s)); },
        [](double s) { return 2.0 / std::pow(2.0 + s, 3.0); });
    const Classification c = classify_transience({2, 1, p});
    CHECK(c.verdict == Recurrence::Inconclusive);
    CHECK(!c.evidence.blocks.empty());
    CHECK(!c.note.empty());
}

TEST_CASE("evidence trace carries blocks and ratios") {
    const Classification c = classify_transience(dom_power(1, 2, 0.65));
    CHECK(c.verdict == Recurrence::Transient);
    CHECK(c.evidence.blocks.size() > 10);
    CHECK(c.evidence.ratio_hat > 0.0);
    CHECK(c.evidence.ratio_hat < 0.98);
}
