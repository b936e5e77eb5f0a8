#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "horncrit/domain.hpp"

namespace horncrit {

enum class TailVerdict { Divergent, Convergent, Inconclusive };

std::string to_string(TailVerdict v);

struct TailBlock {
    int k = 0;  // block covers [lo, hi] ~ [2^k, 2^{k+1}]
    double lo = 0.0, hi = 0.0;
    double integral = 0.0;
    double ratio = 0.0;  // I_k / I_{k-1}, 0 for the first block
};

struct ImproperResult {
    TailVerdict verdict = TailVerdict::Inconclusive;
    double value = 0.0;          // partial + tail when Convergent
    double error = 0.0;          // tail-model uncertainty + quadrature error
    double partial = 0.0;        // sum of computed blocks
    double tail = 0.0;           // extrapolated tail mass
    double ratio_hat = 0.0;      // fitted geometric block ratio
    double exponent_hat = 0.0;   // fitted block-index exponent p in I_k ~ k^-p
    std::vector<TailBlock> blocks;
    std::string note;
};

// Shared divergence detector: dyadic block integrals I_k on [2^k, 2^{k+1}],
// geometric ratio test with delta = 0.02 on the trailing window, and a
// polynomial-decay branch for blocks shrinking like k^-p. Near-critical
// decay (p in [0.8, 1.25]) reports Inconclusive rather than guessing.
ImproperResult improper_integral(const std::function<double(double)>& g, double s0,
                                 int k_max = 40);

// Same decision rules applied to an externally computed block sequence
// (ratios are filled in here). Every tail judgment in the project funnels
// through this one detector.
ImproperResult judge_tail(std::vector<TailBlock> blocks, double quad_err = 0.0);

enum class Recurrence { Recurrent, Transient, Inconclusive };

std::string to_string(Recurrence v);

struct Classification {
    Recurrence verdict = Recurrence::Inconclusive;
    ImproperResult evidence;
    bool analytic_override = false;  // closed-form criticality decided a built-in family
    std::string note;
    AssumptionReport assumption;
};

struct VolumeClassification {
    enum class Verdict { PositiveRecurrent, NotPositiveRecurrent, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    ImproperResult evidence;
    double volume_constant = 0.0;  // omega_l * omega_m / m multiplying the 1-D integral
    bool analytic_override = false;
    std::string note;
};

std::string to_string(VolumeClassification::Verdict v);

// Critical gamma for the built-in families: verdict is Recurrent iff
// gamma <= critical. Returns nullopt for families with no finite threshold
// (LogPower with l != 2, Constant) and for Custom profiles.
std::optional<double> critical_gamma(const DomainSpec& dom);

// Closed-form verdict for built-in families, when available.
std::optional<Recurrence> analytic_transience(const DomainSpec& dom);
std::optional<VolumeClassification::Verdict> analytic_positive_recurrence(const DomainSpec& dom);

// Theorem-level integral test on s^{1-l} H^{-m}(s).
Classification classify_transience(const DomainSpec& dom, double s0 = 10.0, int k_max = 40);

// Volume test on s^{l-1} H^m(s).
VolumeClassification classify_positive_recurrence(const DomainSpec& dom, double s0 = 10.0,
                                                  int k_max = 40);

// Scale function S(rho) = int_{rho0}^{rho} t^{1-l} H^{-m}(t) dt of the radial
// comparison diffusion.
double scale_function(const DomainSpec& dom, double rho0, double rho);

// S(inf), when the tail converges.
std::optional<double> scale_function_limit(const DomainSpec& dom, double rho0);

// Two-sided exit probability (S(R)-S(rho1)) / (S(R)-S(rho0)) for the
// comparison diffusion; R may be +inf (requires a transient domain, else 1).
double hitting_prob_1d(const DomainSpec& dom, double rho0, double rho1, double R);

}  // namespace horncrit
