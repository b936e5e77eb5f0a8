#include "horncrit/profile.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "horncrit/classify.hpp"

namespace horncrit {

std::string to_string(CheckVerdict v) {
    switch (v) {
        case CheckVerdict::Pass: return "pass";
        case CheckVerdict::Fail: return "fail";
        default: return "inconclusive";
    }
}

ProfileH ProfileH::power(double gamma) {
    ProfileH p;
    p.family_ = Family::Power;
    p.param_ = gamma;
    return p;
}

ProfileH ProfileH::log_power(double gamma) {
    ProfileH p;
    p.family_ = Family::LogPower;
    p.param_ = gamma;
    return p;
}

ProfileH ProfileH::constant(double a) {
    if (!(a > 0.0)) throw std::invalid_argument("constant profile requires a > 0");
    ProfileH p;
    p.family_ = Family::Constant;
    p.param_ = a;
    return p;
}

ProfileH ProfileH::custom(std::function<double(double)> h, std::function<double(double)> dh,
                          std::function<double(double)> d2h, std::function<double(double)> d3h) {
    if (!h || !dh || !d2h || !d3h)
        throw std::invalid_argument("custom profile requires H and all three derivatives");
    ProfileH p;
    p.family_ = Family::Custom;
    p.h_ = std::move(h);
    p.dh_ = std::move(dh);
    p.d2h_ = std::move(d2h);
    p.d3h_ = std::move(d3h);
    return p;
}

double ProfileH::H(double s) const {
    switch (family_) {
        case Family::Power: return std::pow(1.0 + s, param_);
        case Family::LogPower: return std::pow(std::log(2.0 + s), param_);
        case Family::Constant: return param_;
        default: return h_(s);
    }
}

double ProfileH::dH(double s) const {
    switch (family_) {
        case Family::Power: return param_ * std::pow(1.0 + s, param_ - 1.0);
        case Family::LogPower: {
            const double w = std::log(2.0 + s);
            return param_ * std::pow(w, param_ - 1.0) / (2.0 + s);
        }
        case Family::Constant: return 0.0;
        default: return dh_(s);
    }
}

double ProfileH::d2H(double s) const {
    const double g = param_;
    switch (family_) {
        case Family::Power: return g * (g - 1.0) * std::pow(1.0 + s, g - 2.0);
        case Family::LogPower: {
            const double v = 2.0 + s;
            const double w = std::log(v);
            // H = w^g, w' = 1/v, w'' = -1/v^2
            return g * (g - 1.0) * std::pow(w, g - 2.0) / (v * v) -
                   g * std::pow(w, g - 1.0) / (v * v);
        }
        case Family::Constant: return 0.0;
        default: return d2h_(s);
    }
}

double ProfileH::d3H(double s) const {
    const double g = param_;
    switch (family_) {
        case Family::Power: return g * (g - 1.0) * (g - 2.0) * std::pow(1.0 + s, g - 3.0);
        case Family::LogPower: {
            const double v = 2.0 + s;
            const double w = std::log(v);
            const double w1 = 1.0 / v, w2 = -1.0 / (v * v), w3 = 2.0 / (v * v * v);
            return g * (g - 1.0) * (g - 2.0) * std::pow(w, g - 3.0) * w1 * w1 * w1 +
                   3.0 * g * (g - 1.0) * std::pow(w, g - 2.0) * w1 * w2 +
                   g * std::pow(w, g - 1.0) * w3;
        }
        case Family::Constant: return 0.0;
        default: return d3h_(s);
    }
}

double ProfileH::L1(double s) const { return dH(s) / H(s); }

double ProfileH::L2(double s) const {
    const double h = H(s), h1 = dH(s);
    return d2H(s) / h - (h1 / h) * (h1 / h);
}

double ProfileH::L3(double s) const {
    const double h = H(s), h1 = dH(s), h2 = d2H(s);
    const double r = h1 / h;
    return d3H(s) / h - 3.0 * h1 * h2 / (h * h) + 2.0 * r * r * r;
}

double ProfileH::Q1(double s) const { return 2.0 * H(s) * dH(s); }

double ProfileH::Q2(double s) const {
    const double h1 = dH(s);
    return 2.0 * H(s) * d2H(s) + 2.0 * h1 * h1;
}

double ProfileH::Q3(double s) const {
    return 2.0 * H(s) * d3H(s) + 6.0 * dH(s) * d2H(s);
}

std::string ProfileH::describe() const {
    std::ostringstream os;
    switch (family_) {
        case Family::Power: os << "power gamma=" << param_; break;
        case Family::LogPower: os << "logpower gamma=" << param_; break;
        case Family::Constant: os << "constant a=" << param_; break;
        default: os << "custom"; break;
    }
    return os.str();
}

namespace {

// Best centered finite difference over a ladder of steps; the step that
// balances truncation against roundoff wins. Fourth-order stencils keep the
// roundoff floor well under the 1e-6 gate even for third derivatives.
double fd_best(const std::function<double(double)>& f, double s, int order, double analytic) {
    double best = std::numeric_limits<double>::infinity();
    double best_val = 0.0;
    const double scale = std::max(1.0, std::abs(s));
    for (double rel = 1e-1; rel >= 1e-6; rel *= 0.5) {
        const double h = rel * scale;
        if (s - 3.0 * h < 0.0) continue;
        double val = 0.0;
        if (order == 1) {
            val = (f(s - 2 * h) - 8.0 * f(s - h) + 8.0 * f(s + h) - f(s + 2 * h)) / (12.0 * h);
        } else if (order == 2) {
            val = (-f(s - 2 * h) + 16.0 * f(s - h) - 30.0 * f(s) + 16.0 * f(s + h) -
                   f(s + 2 * h)) /
                  (12.0 * h * h);
        } else {
            val = (f(s - 3 * h) - 8.0 * f(s - 2 * h) + 13.0 * f(s - h) - 13.0 * f(s + h) +
                   8.0 * f(s + 2 * h) - f(s + 3 * h)) /
                  (8.0 * h * h * h);
        }
        const double dev = std::abs(val - analytic);
        if (dev < best) {
            best = dev;
            best_val = val;
        }
    }
    if (!std::isfinite(best)) return analytic;  // no usable step this close to s = 0
    return best_val;
}

CheckVerdict limit_condition(const std::function<double(double)>& g, double s_max, double tol,
                             std::vector<double>& samples) {
    samples.clear();
    for (double s = 1.0; s <= s_max * 1.0000001; s *= 2.0) samples.push_back(std::abs(g(s)));
    if (samples.size() < 5) return CheckVerdict::Inconclusive;
    const std::size_t n = samples.size();
    bool shrinking = true, below = true;
    for (std::size_t i = n - 4; i < n; ++i) {
        if (samples[i] > tol) below = false;
        if (i > n - 4 && samples[i] > samples[i - 1] * (1.0 + 1e-9) + 1e-300) shrinking = false;
    }
    if (shrinking && below) return CheckVerdict::Pass;
    // growing or flat tail well above tol: the limit is clearly not 0
    bool growing = true;
    for (std::size_t i = n - 4; i + 1 < n; ++i)
        if (samples[i + 1] < samples[i] * (1.0 - 1e-9)) growing = false;
    if (growing && samples[n - 1] > 10.0 * tol) return CheckVerdict::Fail;
    return CheckVerdict::Inconclusive;
}

CheckVerdict integral_condition(const std::function<double(double)>& g, double s_max,
                                std::vector<double>& blocks, std::string& note) {
    const int k_max = std::max(8, static_cast<int>(std::floor(std::log2(s_max))));
    ImproperResult res = improper_integral(g, 1.0, k_max);
    blocks.clear();
    for (const auto& b : res.blocks) blocks.push_back(b.integral);
    note = res.note;
    switch (res.verdict) {
        case TailVerdict::Convergent: return CheckVerdict::Pass;
        case TailVerdict::Divergent: return CheckVerdict::Fail;
        default: return CheckVerdict::Inconclusive;
    }
}

}  // namespace

AssumptionReport check_assumption_h(const ProfileH& p, double s_max, double tol) {
    if (s_max < 1e4) throw std::invalid_argument("check_assumption_h: s_max must be >= 1e4");
    if (!(tol > 0.0)) throw std::invalid_argument("check_assumption_h: tol must be > 0");
    AssumptionReport rep;
    rep.conditions.resize(5);

    auto& c0 = rep.conditions[0];
    c0.name = "lim H*H'' = 0";
    c0.verdict = limit_condition([&](double s) { return p.H(s) * p.d2H(s); }, s_max, tol, c0.evidence);

    auto& c1 = rep.conditions[1];
    c1.name = "lim H' = 0";
    c1.verdict = limit_condition([&](double s) { return p.dH(s); }, s_max, tol, c1.evidence);

    auto& c2 = rep.conditions[2];
    c2.name = "H*H' = o(s)";
    c2.verdict = limit_condition([&](double s) { return p.H(s) * p.dH(s) / s; }, s_max, tol, c2.evidence);

    auto& c3 = rep.conditions[3];
    c3.name = "int |H'|^3 / H < inf";
    c3.verdict = integral_condition(
        [&](double s) {
            const double d = std::abs(p.dH(s));
            return d * d * d / p.H(s);
        },
        s_max, c3.evidence, c3.note);

    auto& c4 = rep.conditions[4];
    c4.name = "int (H')^2 / s < inf";
    c4.verdict = integral_condition(
        [&](double s) {
            const double d = p.dH(s);
            return d * d / s;
        },
        s_max, c4.evidence, c4.note);

    bool all_pass = true, any_fail = false;
    for (const auto& c : rep.conditions) {
        if (c.verdict != CheckVerdict::Pass) all_pass = false;
        if (c.verdict == CheckVerdict::Fail) any_fail = true;
    }
    rep.overall = all_pass ? CheckVerdict::Pass
                           : (any_fail ? CheckVerdict::Fail : CheckVerdict::Inconclusive);
    return rep;
}

double derivative_consistency(const ProfileH& p, double s_hi, int n) {
    double worst = 0.0;
    auto h = [&](double s) { return p.H(s); };
    for (int i = 0; i < n; ++i) {
        const double s = std::exp(std::log(1e-2) +
                                  (std::log(s_hi) - std::log(1e-2)) * (i + 0.5) / n);
        const double floor_scale = 1e-12 * std::max(1.0, p.H(s));
        for (int order = 1; order <= 3; ++order) {
            const double analytic = order == 1 ? p.dH(s) : (order == 2 ? p.d2H(s) : p.d3H(s));
            const double fd = fd_best(h, s, order, analytic);
            const double denom = std::max({std::abs(analytic), std::abs(fd), floor_scale});
            worst = std::max(worst, std::abs(analytic - fd) / denom);
        }
    }
    return worst;
}

}  // namespace horncrit
