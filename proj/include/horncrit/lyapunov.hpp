#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "horncrit/domain.hpp"
#include "horncrit/interp.hpp"

namespace horncrit {

// Coefficients of (1/2) Delta u = (1/2) A(r,s) f''(s) + (1/2) B(r,s) f'(s)
// for the level-set ansatz u(intC(r,s), r) = f(s), together with the
// intermediates they are assembled from. B comes from the derivative chain
// of the ansatz, not from any printed formula.
struct CoefficientEval {
    double A = 0, B = 0, C = 0, intC = 0;
    double ratio_BA = 0;
    double L1 = 0, L2 = 0, L3 = 0, Q1 = 0, Q2 = 0, Q3 = 0;
};

CoefficientEval eval_abc(const DomainSpec& dom, double r, double s);

// Level map rho = s + Q'(s)/4 - r^2 L'(s)/2 (equals intC).
double forward_map(const DomainSpec& dom, double s, double r);

// Transcription candidates kept around for cross-checking: the tabulated
// closed form of B and the seven-term expansion of B/A.
double b_printed_form(const DomainSpec& dom, double r, double s);
double ratio_ba_seven_term(const DomainSpec& dom, double r, double s);

// Smallest ladder point s0 such that C >= 0.5 and intC >= 0.5 s hold for all
// r <= H(s) across sampled s in [s0, s_max].
double admissible_s0(const DomainSpec& dom, double s_max = 1e7);

// Envelope pair Gamma+/Gamma- >= sup / <= inf of B/A over r <= H(s).
// Endpoint envelopes for the three r-monotone ratio terms plus empirical
// remainder constants C0 (|H'|^3/H bucket) and C1 ((H')^2/s bucket).
class GammaModel {
  public:
    GammaModel(DomainSpec dom, double s0, double s_max);

    double upper(double s) const;
    double lower(double s) const;

    double c0() const { return c0_; }
    double c1() const { return c1_; }
    double e_coefficient() const { return e_coef_; }
    double s0() const { return s0_; }
    double s_max() const { return s_max_; }
    const DomainSpec& dom() const { return dom_; }

  private:
    double envelope(double s, bool upper) const;
    DomainSpec dom_;
    double s0_, s_max_;
    double c0_ = 0, c1_ = 0;
    double e_coef_ = 0;  // exact coefficient (4-m)/4 on the E envelope
};

// Convenience matching the one-shot operation shape; builds a model per call.
struct GammaPair {
    double upper = 0, lower = 0;
};
GammaPair gamma_bounds(const DomainSpec& dom, double s, double s0 = -1.0, double s_max = -1.0);

enum class LyapunovSign { Plus, Minus };
enum class GrowthDiag { Diverging, Bounded };

std::string to_string(LyapunovSign s);
std::string to_string(GrowthDiag g);

// f^sign(s) = int_{s0}^{s} exp(-int_{s0}^{t} Gamma^sign) dt, tabulated on a
// geometric grid with doubling-based error control; monotone cubic in log s.
class LyapunovFunction {
  public:
    LyapunovFunction(DomainSpec dom, LyapunovSign sign, double s0, double s_max);

    double f(double s) const;
    double fprime(double s) const;          // exp(-inner(s))
    double inner_integral(double s) const;  // int_{s0}^{s} Gamma
    double gamma(double s) const;

    double s0() const { return gamma_.s0(); }
    double s_max() const { return gamma_.s_max(); }
    LyapunovSign sign() const { return sign_; }
    GrowthDiag growth() const { return growth_; }
    const GammaModel& model() const { return gamma_; }
    const DomainSpec& dom() const { return dom_; }
    std::size_t grid_size() const { return grid_log_s_.size(); }

  private:
    friend double eval_u(const LyapunovFunction&, double, double);
    friend double recover_level(const LyapunovFunction&, double, double, bool);
    DomainSpec dom_;
    LyapunovSign sign_;
    GammaModel gamma_;
    PchipCurve inner_, f_;
    std::vector<double> grid_log_s_;
    GrowthDiag growth_ = GrowthDiag::Bounded;
};

LyapunovFunction build_f(const DomainSpec& dom, LyapunovSign sign, double s0 = -1.0,
                         double s_max = -1.0);

// Recover the level s* with forward_map(s*, r) = rho by bisection; enforce
// r <= H(s*) unless probing slightly outside the image for finite differences.
double recover_level(const LyapunovFunction& lyap, double rho, double r, bool strict = true);
double eval_u(const LyapunovFunction& lyap, double rho, double r);

struct NeumannReport {
    double max_abs = 0;
    int samples = 0;
};
NeumannReport verify_neumann(const LyapunovFunction& lyap, int n_samples = 64);

struct SignReport {
    double worst_violation = 0;   // positive = wrong-signed (1/2)Delta u
    double cross_check_rel = 0;   // analytic vs finite-difference Laplacian
    int grid_points = 0;
    int spot_checks = 0;
};
SignReport verify_delta_u_sign(const LyapunovFunction& lyap, int n_s = 48, int n_r = 9,
                               std::uint64_t seed = 1234);

struct SandwichReport {
    double c_plus = 0, c_minus = 0;  // empirical deviation constants c(s0)
};
SandwichReport verify_sandwich(const DomainSpec& dom, double s0,
                               const std::vector<double>& t_grid);

struct IdentityReport {
    double chain_vs_tabulated_b = 0;   // printed B vs chain B, max relative
    double chain_vs_seven_term = 0;    // printed B/A expansion vs chain, max relative
    double fd_vs_chain = 0;            // FD Laplacian oracle vs chain
    double fd_vs_seven_term = 0;       // FD Laplacian oracle vs printed expansion
    int points = 0;
    bool seven_term_matches = false;   // chain_vs_seven_term <= 1e-8
    bool chain_wins_fd = false;
};
IdentityReport check_identity(const DomainSpec& dom, int n_points = 1000,
                              std::uint64_t seed = 99);

struct EndpointExtremumReport {
    double worst_excess = 0;  // interior beyond endpoint range, normalized
    int checks = 0;
};
EndpointExtremumReport check_endpoint_extrema(const DomainSpec& dom, double s0, double s_max,
                                              int n_s = 64, int n_r = 11);

struct AntiderivativeReport {
    double fixed_endpoint_resid = 0;   // extremal endpoint at r = 0: must be exact
    double moving_endpoint_resid = 0;  // extremal endpoint at r = H(t): logged
    double f_first_power_resid = 0;    // competing transcriptions of the F form
    double f_squared_resid = 0;
    bool first_power_wins = false;
};
AntiderivativeReport check_antiderivative(const DomainSpec& dom, double s0, double s_max);

}  // namespace horncrit
