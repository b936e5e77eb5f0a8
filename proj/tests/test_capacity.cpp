#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "horncrit/capacity.hpp"

using namespace horncrit;

TEST_CASE("hand-built three-node chain: midpoint 1/2, energy 1/2") {
    DirichletForm form;
    MeshedAnnulus& mesh = form.mesh;
    mesh.cols = 2;
    mesh.rows = 0;
    mesh.tag = {MeshedAnnulus::InnerDirichlet, MeshedAnnulus::Unknown,
                MeshedAnnulus::OuterDirichlet};
    mesh.unknown_index = {-1, 0, -1};
    mesh.n_unknowns = 1;
    form.edges = {{0, 1, 1.0}, {1, 2, 1.0}};
    const MinimizeResult sol = minimize(form);
    CHECK(sol.u[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sol.energy == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("restricting the form to radial vectors recovers the 1D stiffness") {
    // constant profile: pick any radial test vector g(i); the 2D energy of the
    // column-constant extension must equal the weighted 1D stiffness energy
    const DomainSpec dom(1, 2, ProfileH::constant(2.0));
    const double h = 0.25;
    DirichletForm form = assemble(dom, 6.0, h, 1.0);
    const MeshedAnnulus& mesh = form.mesh;
    auto g = [](int i) { return std::sin(0.7 * i) + 0.1 * i; };
    double energy_2d = 0.0;
    for (const auto& e : form.edges) {
        const int ia = e.a / (mesh.rows + 1), ib = e.b / (mesh.rows + 1);
        const double d = g(ia) - g(ib);
        energy_2d += e.c * d * d;  // vertical edges contribute nothing
    }
    // 1D stiffness: per-column cross-section weight int_0^{H+h/2} r dr,
    // gradient (dg/h)^2, cell h^2
    const double top = mesh.rows * h + 0.5 * h;
    const double cross_section = 0.5 * top * top;
    double energy_1d = 0.0;
    for (int i = 0; i < mesh.cols; ++i) {
        const double d = g(i + 1) - g(i);
        energy_1d += cross_section * h * d * d / (h * h);
    }
    CHECK(energy_2d == doctest::Approx(energy_1d).epsilon(1e-12));
}

TEST_CASE("column weight sums match the volume quadrature to 1%") {
    for (const DomainSpec& dom :
         {DomainSpec(1, 2, ProfileH::constant(1.0)), DomainSpec(1, 2, ProfileH::power(0.5)),
          DomainSpec(2, 1, ProfileH::power(0.25))}) {
        const double h = auto_mesh_h(dom, 8.0, 1.0) / 2.0;
        DirichletForm form = assemble(dom, 8.0, h, 1.0);
        CAPTURE(dom.profile.describe());
        CHECK(column_weight_consistency(form, dom) <= 0.01);
    }
}

TEST_CASE("assembly guards") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    CHECK_THROWS_AS(assemble(dom, 8.0, 0.5, 1.0), std::invalid_argument);   // < 8 throat cells
    CHECK_THROWS_AS(assemble(dom, 0.5, 0.05, 1.0), std::invalid_argument);  // rho_in >= n
}

TEST_CASE("solution obeys the maximum principle and the radial upper bound") {
    for (const DomainSpec& dom :
         {DomainSpec(1, 2, ProfileH::constant(1.0)), DomainSpec(1, 2, ProfileH::power(0.75)),
          DomainSpec(2, 1, ProfileH::power(0.25))}) {
        DirichletForm form = assemble(dom, 12.0, auto_mesh_h(dom, 12.0, 1.0), 1.0);
        const MinimizeResult sol = minimize(form);
        for (std::size_t id = 0; id < sol.u.size(); ++id) {
            if (form.mesh.tag[id] == MeshedAnnulus::Outside) continue;
            REQUIRE(sol.u[id] >= -1e-12);
            REQUIRE(sol.u[id] <= 1.0 + 1e-12);
        }
        CAPTURE(dom.profile.describe());
        CHECK(sol.energy <= 1.02 * radial_test_energy(form, dom));
    }
}

TEST_CASE("energy is stable under mesh refinement") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    const double e1 = minimize(assemble(dom, 8.0, 0.1, 1.0)).energy;
    const double e2 = minimize(assemble(dom, 8.0, 0.05, 1.0)).energy;
    CHECK(std::abs(e1 - e2) / e2 <= 0.02);
}

TEST_CASE("domain monotonicity on a nested horn pair") {
    const DomainSpec narrow(1, 2, ProfileH::power(0.4));
    const DomainSpec wide(1, 2, ProfileH::power(0.5));
    const double h = auto_mesh_h(narrow, 12.0, 1.0);
    const double e_narrow = minimize(assemble(narrow, 12.0, h, 1.0)).energy;
    const double e_wide = minimize(assemble(wide, 12.0, h, 1.0)).energy;
    CHECK(e_narrow <= e_wide + 1e-8);
}

TEST_CASE("capacity sequence: recurrent cylinder picks the scale-function fit") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    const CapacityResult res = capacity_sequence(dom, {4.0, 8.0, 16.0, 32.0});
    REQUIRE(res.points.size() == 4);
    for (std::size_t i = 1; i < res.points.size(); ++i)
        CHECK(res.points[i].ell <= res.points[i - 1].ell + 1e-8);
    CHECK(res.verdict == Recurrence::Recurrent);
    CHECK(res.best_model == "c/S(n)");
    CHECK(res.recurrent_fit_err * 1.5 <= res.transient_fit_err);
}

TEST_CASE("capacity sequence: transient horn plateaus") {
    const DomainSpec dom(1, 2, ProfileH::power(0.75));
    const CapacityResult res = capacity_sequence(dom, {4.0, 8.0, 16.0, 32.0});
    for (std::size_t i = 1; i < res.points.size(); ++i)
        CHECK(res.points[i].ell <= res.points[i - 1].ell + 1e-8);
    CHECK(res.verdict == Recurrence::Transient);
    CHECK(res.best_model == "plateau");
    CHECK(res.transient_c0 > 0.0);
}

TEST_CASE("capacity sequence input validation") {
    const DomainSpec dom(1, 2, ProfileH::constant(1.0));
    CHECK_THROWS_AS(capacity_sequence(dom, {8.0}), std::invalid_argument);
    CHECK_THROWS_AS(capacity_sequence(dom, {8.0, 4.0}), std::invalid_argument);
}
