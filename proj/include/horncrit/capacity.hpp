#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horncrit/classify.hpp"
#include "horncrit/domain.hpp"

namespace horncrit {

// Structured stair-step mesh of {rho^2 + r^2 >= rho_in^2, rho <= n,
// 0 <= r <= H(rho)} with cell weights rho^{l-1} r^{m-1}. The rotational
// constant omega_l omega_m is recorded, not multiplied in.
struct MeshedAnnulus {
    double h = 0.0;
    double n = 0.0;
    double rho_in = 1.0;
    int cols = 0, rows = 0;  // nodes run i = 0..cols, j = 0..rows

    enum Tag : std::uint8_t { Outside = 0, Unknown = 1, InnerDirichlet = 2, OuterDirichlet = 3 };
    std::vector<std::uint8_t> tag;
    std::vector<int> unknown_index;  // -1 unless Unknown
    int n_unknowns = 0;
    long long n_active = 0;
    double volume_constant = 0.0;

    int node(int i, int j) const { return i * (rows + 1) + j; }
};

// Energy sum(c_e (u_a - u_b)^2) over mesh edges; edge conductances come from
// cell-centered weight integrals, so axis cells keep positive weight.
struct DirichletForm {
    MeshedAnnulus mesh;
    struct Edge {
        int a = 0, b = 0;  // flat node ids
        double c = 0.0;
    };
    std::vector<Edge> edges;
};

double auto_mesh_h(const DomainSpec& dom, double n_max, double rho_in = 1.0);

DirichletForm assemble(const DomainSpec& dom, double n, double h_mesh, double rho_in = 1.0);

struct MinimizeResult {
    std::vector<double> u;  // full node vector, Dirichlet values filled in
    double energy = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients on the reduced normal equations.
MinimizeResult minimize(const DirichletForm& form, double tol = 1e-10);

// Discrete energy of the interpolated radial test profile
// u(rho) = (S(n) - S(rho)) / (S(n) - S(rho_in)), an admissible competitor.
double radial_test_energy(const DirichletForm& form, const DomainSpec& dom);

// Max relative deviation of per-column cell-weight sums from the
// rho^{l-1} H^m / m quadrature they discretize.
double column_weight_consistency(const DirichletForm& form, const DomainSpec& dom);

struct CapacityPoint {
    double n = 0.0;
    long long cells = 0;
    double ell = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

struct CapacityResult {
    std::vector<CapacityPoint> points;
    double recurrent_c = 0.0;        // ell ~ c / S(n)
    double recurrent_fit_err = 0.0;  // RMS relative residual
    double transient_c0 = 0.0, transient_c1 = 0.0, transient_kappa = 0.0;
    double transient_fit_err = 0.0;
    std::string best_model;  // "c/S(n)" or "plateau"
    Recurrence verdict = Recurrence::Inconclusive;
    std::string note;
};

CapacityResult capacity_sequence(const DomainSpec& dom, const std::vector<double>& n_list,
                                 double h_mesh = -1.0, double rho_in = 1.0);

}  // namespace horncrit
