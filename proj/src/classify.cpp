#include "horncrit/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "horncrit/quadrature.hpp"

namespace horncrit {

std::string to_string(TailVerdict v) {
    switch (v) {
        case TailVerdict::Divergent: return "divergent";
        case TailVerdict::Convergent: return "convergent";
        default: return "inconclusive";
    }
}

std::string to_string(Recurrence v) {
    switch (v) {
        case Recurrence::Recurrent: return "recurrent";
        case Recurrence::Transient: return "transient";
        default: return "inconclusive";
    }
}

std::string to_string(VolumeClassification::Verdict v) {
    switch (v) {
        case VolumeClassification::Verdict::PositiveRecurrent: return "positive-recurrent";
        case VolumeClassification::Verdict::NotPositiveRecurrent: return "not-positive-recurrent";
        default: return "inconclusive";
    }
}

namespace {

constexpr double kRatioDelta = 0.02;   // divergence threshold on block ratios
constexpr int kWindow = 6;             // trailing blocks used for the fits

struct WindowFit {
    double r_min = 0, r_max = 0, r_gm = 0, r_first = 0, r_last = 0;
    double exponent = 0;      // p in I_k ~ k^-p (log-log fit)
    bool oscillating = false;
};

WindowFit fit_window(const std::vector<TailBlock>& blocks) {
    WindowFit w;
    const int n = static_cast<int>(blocks.size());
    const int lo = std::max(1, n - kWindow);
    w.r_min = std::numeric_limits<double>::infinity();
    w.r_max = 0.0;
    double log_sum = 0.0;
    int count = 0;
    int sign_changes = 0;
    double prev_diff = 0.0;
    for (int i = lo; i < n; ++i) {
        const double r = blocks[i].ratio;
        w.r_min = std::min(w.r_min, r);
        w.r_max = std::max(w.r_max, r);
        log_sum += std::log(r);
        if (count == 0) w.r_first = r;
        w.r_last = r;
        if (count > 0) {
            const double diff = r - blocks[i - 1].ratio;
            if (diff * prev_diff < 0.0) ++sign_changes;
            prev_diff = diff;
        }
        ++count;
    }
    w.r_gm = std::exp(log_sum / count);
    const double spread = w.r_max - w.r_min;
    w.oscillating = sign_changes >= 2 && spread > 0.1 * (1.0 - w.r_gm) + 1e-9;

    // log I vs log k least squares over the same window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int nf = 0;
    for (int i = lo - 1; i < n; ++i) {
        if (blocks[i].integral <= 0.0) continue;
        const double x = std::log(static_cast<double>(blocks[i].k));
        const double y = std::log(blocks[i].integral);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++nf;
    }
    if (nf >= 3) {
        const double denom = nf * sxx - sx * sx;
        if (std::abs(denom) > 0.0) w.exponent = -(nf * sxy - sx * sy) / denom;
    }
    return w;
}

}  // namespace

ImproperResult improper_integral(const std::function<double(double)>& g, double s0, int k_max) {
    if (!(s0 > 0.0)) throw std::invalid_argument("improper_integral: s0 must be > 0");
    if (k_max < 6) throw std::invalid_argument("improper_integral: k_max must be >= 6");

    int k0 = static_cast<int>(std::floor(std::log2(s0)));
    if (std::ldexp(1.0, k0 + 1) <= s0) ++k0;

    std::vector<TailBlock> blocks;
    double quad_err = 0.0;
    for (int k = k0; k < k_max; ++k) {
        const double lo = std::max(s0, std::ldexp(1.0, k));
        const double hi = std::ldexp(1.0, k + 1);
        QuadResult q = integrate(g, lo, hi, 1e-12, 1e-10);
        if (!std::isfinite(q.value)) {
            ImproperResult res;
            res.blocks = std::move(blocks);
            res.verdict = TailVerdict::Divergent;
            res.note = "block integral overflowed; integrand diverges";
            return res;
        }
        quad_err += q.abs_error;
        blocks.push_back({k, lo, hi, q.value, 0.0});
        if (blocks.size() >= 4 && q.value > 1e100 &&
            q.value >= blocks[blocks.size() - 2].integral) {
            ImproperResult res;
            res.blocks = std::move(blocks);
            res.verdict = TailVerdict::Divergent;
            res.note = "blocks exceed 1e100 without decaying";
            return res;
        }
    }
    return judge_tail(std::move(blocks), quad_err);
}

ImproperResult judge_tail(std::vector<TailBlock> blocks, double quad_err) {
    ImproperResult res;
    res.blocks = std::move(blocks);
    for (std::size_t i = 0; i < res.blocks.size(); ++i) {
        res.blocks[i].ratio =
            (i > 0 && res.blocks[i - 1].integral > 0.0)
                ? res.blocks[i].integral / res.blocks[i - 1].integral
                : 0.0;
        res.partial += res.blocks[i].integral;
    }

    const int n = static_cast<int>(res.blocks.size());
    if (n >= 3 && res.blocks[n - 1].integral <= 1e-300 && res.blocks[n - 2].integral <= 1e-300 &&
        res.blocks[n - 3].integral <= 1e-300) {
        res.verdict = TailVerdict::Convergent;
        res.value = res.partial;
        res.error = quad_err;
        res.note = "trailing blocks vanish";
        return res;
    }
    if (n < 4) {
        res.note = "too few blocks to judge the tail";
        return res;
    }
    for (int i = std::max(1, n - kWindow); i < n; ++i) {
        if (res.blocks[i].integral <= 0.0 || res.blocks[i].ratio <= 0.0) {
            res.note = "non-positive trailing block; tail shape unresolved";
            return res;
        }
    }

    const WindowFit w = fit_window(res.blocks);
    res.ratio_hat = w.r_gm;
    res.exponent_hat = w.exponent;

    if (w.r_min >= 1.0 - kRatioDelta) {
        res.verdict = TailVerdict::Divergent;
        res.note = "block ratios do not decay";
        return res;
    }
    if (w.r_max >= 1.0 - kRatioDelta) {
        res.note = "ratio window straddles the decay threshold";
        return res;
    }
    if (w.oscillating) {
        res.note = "oscillating block ratios";
        return res;
    }

    const double drift = w.r_last - w.r_first;
    const double last = res.blocks[n - 1].integral;
    if (std::abs(drift) <= 0.08 * (1.0 - w.r_gm)) {
        // stable geometric decay
        const double rho = w.r_last;
        res.tail = last * rho / (1.0 - rho);
        const double t_lo = last * w.r_min / (1.0 - w.r_min);
        const double t_hi = last * w.r_max / (1.0 - w.r_max);
        res.value = res.partial + res.tail;
        res.error = std::max(t_hi - res.tail, res.tail - t_lo) + quad_err;
        res.verdict = TailVerdict::Convergent;
        res.note = "geometric tail";
        return res;
    }

    // ratios creep toward 1: polynomial block decay I_k ~ k^-p
    const double p = w.exponent;
    const double k_last = static_cast<double>(res.blocks[n - 1].k);
    if (p >= 1.25) {
        auto poly_tail = [&](double pp) {
            return last * std::pow(k_last, pp) * std::pow(k_last + 0.5, 1.0 - pp) / (pp - 1.0);
        };
        res.tail = poly_tail(p);
        res.value = res.partial + res.tail;
        res.error = std::max(std::abs(poly_tail(std::max(1.05, p - 0.15)) - res.tail),
                             std::abs(poly_tail(p + 0.15) - res.tail)) +
                    quad_err;
        res.verdict = TailVerdict::Convergent;
        res.note = "polynomial block decay, p = " + std::to_string(p);
        return res;
    }
    if (p <= 0.8) {
        res.verdict = TailVerdict::Divergent;
        res.note = "slow polynomial block decay (p <= 0.8); blocks sum divergently";
        return res;
    }
    res.note = "near-critical block decay (p in [0.8, 1.25])";
    return res;
}

std::optional<double> critical_gamma(const DomainSpec& dom) {
    switch (dom.profile.family()) {
        case ProfileH::Family::Power:
            return (2.0 - dom.l) / static_cast<double>(dom.m);
        case ProfileH::Family::LogPower:
            if (dom.l == 2) return 1.0 / static_cast<double>(dom.m);
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

std::optional<Recurrence> analytic_transience(const DomainSpec& dom) {
    const double g = dom.profile.param();
    switch (dom.profile.family()) {
        case ProfileH::Family::Power: {
            const double gc = (2.0 - dom.l) / static_cast<double>(dom.m);
            if (g <= gc + 1e-12) return Recurrence::Recurrent;
            return Recurrence::Transient;
        }
        case ProfileH::Family::LogPower: {
            if (dom.l == 1) return Recurrence::Recurrent;   // log powers never close the tail
            if (dom.l >= 3) return Recurrence::Transient;   // s^{1-l} already integrable
            const double gc = 1.0 / static_cast<double>(dom.m);
            if (g <= gc + 1e-12) return Recurrence::Recurrent;
            return Recurrence::Transient;
        }
        case ProfileH::Family::Constant:
            return dom.l <= 2 ? Recurrence::Recurrent : Recurrence::Transient;
        default:
            return std::nullopt;
    }
}

std::optional<VolumeClassification::Verdict> analytic_positive_recurrence(const DomainSpec& dom) {
    using V = VolumeClassification::Verdict;
    const double g = dom.profile.param();
    switch (dom.profile.family()) {
        case ProfileH::Family::Power: {
            const double gc = -static_cast<double>(dom.l) / dom.m;
            if (g < gc - 1e-12) return V::PositiveRecurrent;
            return V::NotPositiveRecurrent;
        }
        case ProfileH::Family::LogPower:
        case ProfileH::Family::Constant:
            return V::NotPositiveRecurrent;
        default:
            return std::nullopt;
    }
}

Classification classify_transience(const DomainSpec& dom, double s0, int k_max) {
    Classification out;
    out.assumption = check_assumption_h(dom.profile);
    const auto& p = dom.profile;
    const int l = dom.l, m = dom.m;
    out.evidence = improper_integral(
        [&p, l, m](double s) { return std::pow(s, 1.0 - l) * std::pow(p.H(s), -m); }, s0, k_max);
    switch (out.evidence.verdict) {
        case TailVerdict::Divergent: out.verdict = Recurrence::Recurrent; break;
        case TailVerdict::Convergent: out.verdict = Recurrence::Transient; break;
        default: out.verdict = Recurrence::Inconclusive; break;
    }
    if (auto exact = analytic_transience(dom)) {
        if (out.verdict == Recurrence::Inconclusive) {
            out.verdict = *exact;
            out.analytic_override = true;
            out.note = "numeric detector inconclusive; closed-form criticality decides";
        } else if (out.verdict != *exact) {
            out.verdict = *exact;
            out.analytic_override = true;
            out.note = "closed-form criticality overrides the numeric tail fit";
        }
    }
    if (out.verdict == Recurrence::Inconclusive && out.note.empty())
        out.note = out.evidence.note;
    return out;
}

VolumeClassification classify_positive_recurrence(const DomainSpec& dom, double s0, int k_max) {
    using V = VolumeClassification::Verdict;
    VolumeClassification out;
    const auto& p = dom.profile;
    const int l = dom.l, m = dom.m;
    const double omega_l = 2.0 * std::pow(std::numbers::pi, 0.5 * l) / std::tgamma(0.5 * l);
    const double omega_m = 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
    out.volume_constant = omega_l * omega_m / m;
    out.evidence = improper_integral(
        [&p, l, m](double s) { return std::pow(s, l - 1.0) * std::pow(p.H(s), m); }, s0, k_max);
    switch (out.evidence.verdict) {
        case TailVerdict::Convergent: out.verdict = V::PositiveRecurrent; break;
        case TailVerdict::Divergent: out.verdict = V::NotPositiveRecurrent; break;
        default: out.verdict = V::Inconclusive; break;
    }
    if (auto exact = analytic_positive_recurrence(dom)) {
        if (out.verdict == V::Inconclusive) {
            out.verdict = *exact;
            out.analytic_override = true;
            out.note = "numeric detector inconclusive; closed-form volume tail decides";
        } else if (out.verdict != *exact) {
            out.verdict = *exact;
            out.analytic_override = true;
            out.note = "closed-form volume tail overrides the numeric fit";
        }
    }
    if (out.verdict == V::Inconclusive && out.note.empty()) out.note = out.evidence.note;
    return out;
}

double scale_function(const DomainSpec& dom, double rho0, double rho) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("scale_function: rho0 must be > 0");
    if (rho < rho0) throw std::invalid_argument("scale_function: rho must be >= rho0");
    const auto& p = dom.profile;
    const int l = dom.l, m = dom.m;
    QuadResult q = integrate(
        [&p, l, m](double t) { return std::pow(t, 1.0 - l) * std::pow(p.H(t), -m); }, rho0, rho,
        1e-10, 1e-12, 20000);
    return q.value;
}

std::optional<double> scale_function_limit(const DomainSpec& dom, double rho0) {
    const auto& p = dom.profile;
    const int l = dom.l, m = dom.m;
    ImproperResult res = improper_integral(
        [&p, l, m](double t) { return std::pow(t, 1.0 - l) * std::pow(p.H(t), -m); }, rho0, 50);
    if (res.verdict != TailVerdict::Convergent) return std::nullopt;
    return res.value;
}

double hitting_prob_1d(const DomainSpec& dom, double rho0, double rho1, double R) {
    if (!(rho0 > 0.0)) throw std::invalid_argument("hitting_prob_1d: rho0 must be > 0");
    if (rho1 < rho0) throw std::invalid_argument("hitting_prob_1d: need rho0 <= rho1");
    if (rho1 <= rho0) return 1.0;
    if (std::isinf(R)) {
        auto s_inf = scale_function_limit(dom, rho0);
        if (!s_inf) return 1.0;  // recurrent: every shell is hit with probability one
        const double s1 = scale_function(dom, rho0, rho1);
        return (*s_inf - s1) / *s_inf;
    }
    if (!(R > rho1)) {
        if (rho1 >= R) return 0.0;
        throw std::invalid_argument("hitting_prob_1d: need rho1 < R");
    }
    const double sR = scale_function(dom, rho0, R);
    const double s1 = scale_function(dom, rho0, rho1);
    return (sR - s1) / sR;
}

}  // namespace horncrit
