#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "horncrit/domain.hpp"
#include "horncrit/rng.hpp"

namespace horncrit {

enum class SimMode { Full, Reduced };
enum class ExitCause { HitInner, HitOuter, TimeBudget };

std::string to_string(SimMode m);
std::string to_string(ExitCause c);

// Euler state for normally reflected Brownian motion in D. Full mode carries
// y = (x, z); reduced mode carries the radial pair (rho, r) with Bessel
// drifts. Both accumulate boundary local time via projection displacements.
struct SimState {
    SimMode mode = SimMode::Reduced;
    std::vector<double> x, z;  // full mode
    double rho = 0.0, r = 0.0;  // reduced mode
    double t = 0.0;
    double local_time = 0.0;

    double radial() const;  // |x| or rho
    double z_norm() const;  // |z| or r
};

SimState make_full_state(int l, int m, double rho, double r);
SimState make_reduced_state(double rho, double r);

bool in_domain(const DomainSpec& dom, const SimState& s);

// One Euler-projection step. The step size may be internally halved (up to
// max_halvings) when the boundary projection fails to converge; the time
// actually advanced is added to s.t.
void step_full(const DomainSpec& dom, SimState& s, double h, NormalStream& rng,
               int max_halvings = 20);
void step_reduced(const DomainSpec& dom, SimState& s, double h, NormalStream& rng,
                  int max_halvings = 20);
void step(const DomainSpec& dom, SimState& s, double h, NormalStream& rng);

struct StopSpec {
    double inner = -1.0;  // stop when radial <= inner (ignored when < 0)
    double outer = -1.0;  // stop when radial >= outer (ignored when < 0)
    double t_max = std::numeric_limits<double>::infinity();
};

struct PathSummary {
    ExitCause cause = ExitCause::TimeBudget;
    double t = 0.0;
    double local_time = 0.0;
    long long steps = 0;
    double final_radial = 0.0;
    double final_z = 0.0;
};

PathSummary run_until(const DomainSpec& dom, SimState start, const StopSpec& stop, double h,
                      std::uint64_t seed, std::uint64_t path_id);

// Path-parallel batch; summaries are indexed by path id, so results are
// identical for any thread count.
std::vector<PathSummary> run_paths(const DomainSpec& dom, const SimState& start,
                                   const StopSpec& stop, double h, int n_paths,
                                   std::uint64_t seed, int threads = 0);

}  // namespace horncrit
