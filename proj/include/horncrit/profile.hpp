#pragma once

#include <functional>
#include <string>
#include <vector>

namespace horncrit {

enum class CheckVerdict { Pass, Fail, Inconclusive };

std::string to_string(CheckVerdict v);

// Boundary profile H on [0, inf) with derivatives through third order.
// Built-in families carry exact closed forms:
//   power:    H(s) = (1+s)^gamma
//   logpower: H(s) = log^gamma(2+s)
//   constant: H(s) = a
// Custom profiles must supply all three derivatives. Immutable once built.
class ProfileH {
  public:
    enum class Family { Power, LogPower, Constant, Custom };

    static ProfileH power(double gamma);
    static ProfileH log_power(double gamma);
    static ProfileH constant(double a);
    static ProfileH custom(std::function<double(double)> h, std::function<double(double)> dh,
                           std::function<double(double)> d2h, std::function<double(double)> d3h);

    double H(double s) const;
    double dH(double s) const;
    double d2H(double s) const;
    double d3H(double s) const;

    // L = log H, Q = H^2 and their s-derivatives
    double L1(double s) const;  // H'/H
    double L2(double s) const;
    double L3(double s) const;
    double Q1(double s) const;  // 2 H H'
    double Q2(double s) const;
    double Q3(double s) const;

    Family family() const { return family_; }
    double param() const { return param_; }
    std::string describe() const;

  private:
    ProfileH() = default;
    Family family_ = Family::Constant;
    double param_ = 1.0;
    std::function<double(double)> h_, dh_, d2h_, d3h_;
};

struct ConditionReport {
    std::string name;
    CheckVerdict verdict = CheckVerdict::Inconclusive;
    std::vector<double> evidence;  // tail samples or block integrals
    std::string note;
};

// One record per regularity condition on H: the three limit conditions and
// the two tail integrals. Overall passes only when all five pass.
struct AssumptionReport {
    std::vector<ConditionReport> conditions;
    CheckVerdict overall = CheckVerdict::Inconclusive;
};

AssumptionReport check_assumption_h(const ProfileH& p, double s_max = 1e7, double tol = 1e-3);

// Max relative deviation between analytic derivatives and centered finite
// differences over n geometric sample points in [0, s_hi].
double derivative_consistency(const ProfileH& p, double s_hi = 1e6, int n = 100);

}  // namespace horncrit
