#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "horncrit/domain.hpp"
#include "horncrit/lyapunov.hpp"

namespace horncrit {

struct ExperimentRow {
    std::string label;
    double param = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double oracle = std::numeric_limits<double>::quiet_NaN();  // NaN when no oracle applies
    long long n = 0;
    double h = 0.0;
    std::uint64_t seed = 0;
    std::string note;
};

struct ExperimentTable {
    std::string experiment;
    std::vector<ExperimentRow> rows;
    std::string to_csv() const;
};

// Closed-form oracles for the a-ball cycle quantities; oracle columns are
// filled from these, never from estimates.
double cycle_sigma_up_oracle(double a, int m);      // E duration a/2 -> a
double cycle_sigma_down_oracle(double a, int m);    // E duration a -> a/2 (reflecting at a)
double cycle_local_time_oracle(double a, int m);    // E local time at |z| = a over the down leg

// Mean boundary local-time rate of reflected Brownian motion in the m-ball
// of radius a, from the center, against the m/(2a) rate.
ExperimentTable local_time_rate(double a, int m, double t_end, int n_paths, double h,
                                std::uint64_t seed, int threads = 0);

// Cycle |z| = a/2 -> a -> a/2: leg durations, local time over the down leg,
// and the accrual-rate ratio against m/(2a).
ExperimentTable cycle_identity(double a, int m, int n_cycles, double h, std::uint64_t seed,
                               int threads = 0);

// Frequency of hitting {rho <= rho0} before {rho >= R} for each R, with the
// comparison-diffusion oracle and a trend flag (toward 1 vs plateau).
ExperimentTable two_sphere(const DomainSpec& dom, double rho0, double rho1,
                           const std::vector<double>& R_list, int n_paths, double h,
                           std::uint64_t seed, int threads = 0);

// E[u(B(t and tau_s0))] along simulated paths for each grid time, plus the
// paired increments whose signs the supermartingale property constrains.
ExperimentTable supermartingale_check(const LyapunovFunction& lyap, double start_rho,
                                      double start_r, const std::vector<double>& t_grid,
                                      int n_paths, double h, std::uint64_t seed,
                                      int threads = 0);

}  // namespace horncrit
