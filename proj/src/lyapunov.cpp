#include "horncrit/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "horncrit/classify.hpp"
#include "horncrit/rng.hpp"

namespace horncrit {

std::string to_string(LyapunovSign s) { return s == LyapunovSign::Plus ? "plus" : "minus"; }
std::string to_string(GrowthDiag g) { return g == GrowthDiag::Diverging ? "diverging" : "bounded"; }

namespace {

// Everything in this module reduces to a handful of combinations of the
// profile's log/square derivatives at (r, s).
struct Locals {
    double L1, L2, L3, Q1, Q2, Q3, H, dH;
    double N;     // 1 + r^2 L1^2
    double C;     // 1 + Q2/4 - r^2 L2 / 2
    double intC;  // s + Q1/4 - r^2 L1 / 2
    double Cs;    // dC/ds = Q3/4 - r^2 L3 / 2
    double x;     // r^2 L1^2
};

Locals locals_at(const DomainSpec& dom, double r, double s) {
    const ProfileH& p = dom.profile;
    Locals v{};
    v.H = p.H(s);
    v.dH = p.dH(s);
    v.L1 = p.L1(s);
    v.L2 = p.L2(s);
    v.L3 = p.L3(s);
    v.Q1 = p.Q1(s);
    v.Q2 = p.Q2(s);
    v.Q3 = p.Q3(s);
    const double r2 = r * r;
    v.x = r2 * v.L1 * v.L1;
    v.N = 1.0 + v.x;
    v.C = 1.0 + 0.25 * v.Q2 - 0.5 * r2 * v.L2;
    v.intC = s + 0.25 * v.Q1 - 0.5 * r2 * v.L1;
    v.Cs = 0.25 * v.Q3 - 0.5 * r2 * v.L3;
    return v;
}

double e_term(const Locals& v, double r) { return 2.0 * r * r * v.L1 * v.L2 / v.N; }
double f_term(const Locals& v) { return -v.Cs / v.C; }
double g_term(const Locals& v) { return v.C / v.intC; }

}  // namespace

double forward_map(const DomainSpec& dom, double s, double r) {
    const ProfileH& p = dom.profile;
    return s + 0.25 * p.Q1(s) - 0.5 * r * r * p.L1(s);
}

CoefficientEval eval_abc(const DomainSpec& dom, double r, double s) {
    if (r < 0.0) throw std::invalid_argument("eval_abc: r must be >= 0");
    const double h = dom.profile.H(s);
    if (r > h * (1.0 + 1e-12))
        throw std::invalid_argument("eval_abc: point outside the domain, r > H(s)");
    Locals v = locals_at(dom, r, s);
    if (v.C < 0.1 || v.intC < 0.1 * s) {
        std::ostringstream os;
        os << "eval_abc: s = " << s << " below the admissibility threshold s0 = "
           << admissible_s0(dom) << " (C or intC too small)";
        throw std::domain_error(os.str());
    }
    CoefficientEval out;
    out.L1 = v.L1;
    out.L2 = v.L2;
    out.L3 = v.L3;
    out.Q1 = v.Q1;
    out.Q2 = v.Q2;
    out.Q3 = v.Q3;
    out.C = v.C;
    out.intC = v.intC;
    out.A = v.N / (v.C * v.C);
    // chain assembly: solve the ansatz derivatives for u_rho, u_rhorho, u_r,
    // u_rr and collect the radial Laplacian
    const int l = dom.l, m = dom.m;
    out.B = m * v.L1 / v.C + (l - 1) / (v.C * v.intC) +
            2.0 * r * r * v.L1 * v.L2 / (v.C * v.C) - v.N * v.Cs / (v.C * v.C * v.C);
    out.ratio_BA = out.B / out.A;
    return out;
}

double b_printed_form(const DomainSpec& dom, double r, double s) {
    Locals v = locals_at(dom, r, s);
    const int l = dom.l, m = dom.m;
    return m * v.L1 / v.C + (l - 1) / (v.C * v.intC) +
           2.0 * r * r * v.L1 * v.L2 / (v.C * v.C) - v.N * v.Cs / (v.C * v.C * v.C);
}

double ratio_ba_seven_term(const DomainSpec& dom, double r, double s) {
    Locals v = locals_at(dom, r, s);
    const int l = dom.l, m = dom.m;
    return m * v.L1 + (l - 1) * v.C / v.intC + 0.25 * m * v.L1 * v.Q2 -
           m * v.L1 * v.x * (1.0 + 0.25 * v.Q2) / v.N + 0.5 * (5.0 - m) * e_term(v, r) +
           f_term(v) - 0.5 * (l - 1) * v.x * v.C / v.intC;
}

double admissible_s0(const DomainSpec& dom, double s_max) {
    const ProfileH& p = dom.profile;
    auto ok_at = [&](double s) {
        const double h = p.H(s);
        for (int j = 0; j <= 10; ++j) {
            const double r = h * j / 10.0;
            Locals v = locals_at(dom, r, s);
            if (!(v.C >= 0.5) || !(v.intC >= 0.5 * s)) return false;
        }
        return true;
    };
    auto ok_from = [&](double s0) {
        const int n = 96;
        const double lo = std::log(s0), hi = std::log(s_max);
        for (int i = 0; i <= n; ++i)
            if (!ok_at(std::exp(lo + (hi - lo) * i / n))) return false;
        return true;
    };
    static const double ladder[] = {1, 2, 5, 10, 20, 50, 100, 200, 500, 1000, 2000, 5000, 10000};
    for (double cand : ladder)
        if (cand < s_max / 100.0 && ok_from(cand)) return cand;
    throw std::domain_error("admissible_s0: no admissible s0 found below s_max/100; the "
                            "level-set construction does not apply to this profile");
}

GammaModel::GammaModel(DomainSpec dom, double s0, double s_max)
    : dom_(std::move(dom)), s0_(s0), s_max_(s_max) {
    if (!(s0 > 0.0) || !(s_max > s0)) throw std::invalid_argument("GammaModel: bad s range");
    e_coef_ = 0.25 * (4.0 - dom_.m);
    // Remainder of the exact B/A decomposition split into the |H'|^3/H and
    // (H')^2/s buckets; constants are empirical suprema with 5% headroom.
    const ProfileH& p = dom_.profile;
    const int n_s = 256;
    const double lo = std::log(s0_), hi = std::log(s_max_);
    double worst0 = 0.0, worst1 = 0.0;
    for (int i = 0; i <= n_s; ++i) {
        const double s = std::exp(lo + (hi - lo) * i / n_s);
        const double h = p.H(s), dh = p.dH(s);
        if (dh == 0.0) continue;
        const double bucket0 = std::abs(dh) * std::abs(dh) * std::abs(dh) / h;
        const double bucket1 = dh * dh / s;
        for (int j = 0; j <= 10; ++j) {
            const double r = h * j / 10.0;
            Locals v = locals_at(dom_, r, s);
            const double rem0 = std::abs(dom_.m * v.L1 * (1.0 + 0.25 * v.Q2) * v.x / v.N);
            const double rem1 = std::abs((dom_.l - 1) * g_term(v) * v.x / v.N);
            if (bucket0 > 0.0) worst0 = std::max(worst0, rem0 / bucket0);
            if (bucket1 > 0.0) worst1 = std::max(worst1, rem1 / bucket1);
        }
    }
    c0_ = 1.05 * worst0;
    c1_ = 1.05 * worst1;
}

double GammaModel::envelope(double s, bool want_upper) const {
    const ProfileH& p = dom_.profile;
    const double h = p.H(s), dh = p.dH(s);
    Locals v0 = locals_at(dom_, 0.0, s);
    Locals vH = locals_at(dom_, h, s);
    if (v0.C < 0.1 || vH.C < 0.1 || v0.intC < 0.1 || vH.intC < 0.1)
        throw std::domain_error("gamma_bounds: envelope denominator below 0.1; s0 too small");

    const double e0 = e_term(v0, 0.0), eH = e_term(vH, h);
    const double f0 = f_term(v0), fH = f_term(vH);
    const double g0 = g_term(v0), gH = g_term(vH);
    const double e_hi = std::max(e0, eH), e_lo = std::min(e0, eH);
    const double f_hi = std::max(f0, fH), f_lo = std::min(f0, fH);
    const double g_hi = std::max(g0, gH), g_lo = std::min(g0, gH);

    const double base = dom_.m * v0.L1 + 0.25 * dom_.m * v0.L1 * v0.Q2;
    const double rem = c0_ * std::abs(dh) * std::abs(dh) * std::abs(dh) / h + c1_ * dh * dh / s;
    const int l = dom_.l;
    if (want_upper) {
        const double e_pick = e_coef_ >= 0.0 ? e_hi : e_lo;
        return base + rem + e_coef_ * e_pick + f_hi + (l - 1) * g_hi;
    }
    const double e_pick = e_coef_ >= 0.0 ? e_lo : e_hi;
    return base - rem + e_coef_ * e_pick + f_lo + (l - 1) * g_lo;
}

double GammaModel::upper(double s) const { return envelope(s, true); }
double GammaModel::lower(double s) const { return envelope(s, false); }

GammaPair gamma_bounds(const DomainSpec& dom, double s, double s0, double s_max) {
    if (s_max <= 0.0) s_max = std::max(1e4 * std::max(s0, 1.0), 10.0 * s);
    if (s0 <= 0.0) s0 = admissible_s0(dom, s_max);
    if (s < s0) throw std::invalid_argument("gamma_bounds: s below s0");
    GammaModel model(dom, s0, s_max);
    return {model.upper(s), model.lower(s)};
}

LyapunovFunction::LyapunovFunction(DomainSpec dom, LyapunovSign sign, double s0, double s_max)
    : dom_(std::move(dom)), sign_(sign), gamma_(dom_, s0, s_max) {
    auto gamma_of = [&](double s) {
        return sign_ == LyapunovSign::Plus ? gamma_.upper(s) : gamma_.lower(s);
    };
    const double lo = std::log(s0), hi = std::log(s_max);

    // Trapezoid in log s for both the inner integral and f, doubling the grid
    // until f(s_max) settles to 1e-6 relative.
    std::vector<double> tau, inner, fval;
    double prev_f_end = -1.0;
    for (int n = 8192; n <= (1 << 21); n *= 2) {
        tau.assign(n + 1, 0.0);
        inner.assign(n + 1, 0.0);
        fval.assign(n + 1, 0.0);
        const double dt = (hi - lo) / n;
        double prev_s = std::exp(lo);
        double prev_g = gamma_of(prev_s) * prev_s;
        double prev_e = 1.0 * prev_s;  // exp(-0) * s
        tau[0] = lo;
        for (int i = 1; i <= n; ++i) {
            const double t = lo + dt * i;
            const double s = std::exp(t);
            const double g = gamma_of(s) * s;
            tau[i] = t;
            inner[i] = inner[i - 1] + 0.5 * (prev_g + g) * dt;
            const double e = std::exp(-inner[i]) * s;
            fval[i] = fval[i - 1] + 0.5 * (prev_e + e) * dt;
            prev_s = s;
            prev_g = g;
            prev_e = e;
        }
        const double f_end = fval[n];
        if (prev_f_end > 0.0 &&
            std::abs(f_end - prev_f_end) <= 1e-6 * std::max(f_end, 1e-300))
            break;
        prev_f_end = f_end;
    }
    inner_ = PchipCurve(tau, inner);
    f_ = PchipCurve(tau, fval);
    grid_log_s_ = std::move(tau);

    // Growth diagnosis: dyadic increments of f through the shared detector,
    // falling back to the plain s_max vs s_max/4 comparison.
    std::vector<TailBlock> blocks;
    int k = 0;
    for (double a = s0; 2.0 * a <= s_max * 1.0000001; a *= 2.0, ++k) {
        const double b = std::min(2.0 * a, s_max);
        blocks.push_back({k, a, b, f_(std::log(b)) - f_(std::log(a)), 0.0});
    }
    ImproperResult judged = judge_tail(std::move(blocks));
    if (judged.verdict == TailVerdict::Divergent)
        growth_ = GrowthDiag::Diverging;
    else if (judged.verdict == TailVerdict::Convergent)
        growth_ = GrowthDiag::Bounded;
    else
        growth_ = f_(std::log(s_max)) >= 1.10 * f_(std::log(s_max / 4.0))
                      ? GrowthDiag::Diverging
                      : GrowthDiag::Bounded;
}

double LyapunovFunction::inner_integral(double s) const { return inner_(std::log(s)); }
double LyapunovFunction::f(double s) const { return f_(std::log(s)); }
double LyapunovFunction::fprime(double s) const { return std::exp(-inner_(std::log(s))); }
double LyapunovFunction::gamma(double s) const {
    return sign_ == LyapunovSign::Plus ? gamma_.upper(s) : gamma_.lower(s);
}

LyapunovFunction build_f(const DomainSpec& dom, LyapunovSign sign, double s0, double s_max) {
    if (s0 <= 0.0) s0 = admissible_s0(dom);
    if (s_max <= 0.0) s_max = 1e4 * s0;
    if (s_max < 100.0 * s0)
        throw std::invalid_argument("build_f: s_max must be at least 100 * s0");
    const double threshold = admissible_s0(dom, s_max);
    if (s0 < threshold) {
        std::ostringstream os;
        os << "build_f: s0 = " << s0 << " below the admissibility threshold " << threshold;
        throw std::invalid_argument(os.str());
    }
    return LyapunovFunction(dom, sign, s0, s_max);
}

double recover_level(const LyapunovFunction& lyap, double rho, double r, bool strict) {
    if (r < 0.0) throw std::invalid_argument("recover_level: r must be >= 0");
    const DomainSpec& dom = lyap.dom();
    double lo = lyap.s0(), hi = lyap.s_max();
    const double phi_lo = forward_map(dom, lo, r);
    const double phi_hi = forward_map(dom, hi, r);
    if (rho < phi_lo * (1.0 - 1e-12) || rho > phi_hi * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "recover_level: rho = " << rho << " outside the image [" << phi_lo << ", "
           << phi_hi << "] for r = " << r;
        throw std::invalid_argument(os.str());
    }
    // map is strictly increasing in s (C > 0 on the admissible range)
    for (int it = 0; it < 200 && (hi - lo) > 4.0 * std::numeric_limits<double>::epsilon() * hi;
         ++it) {
        const double mid = 0.5 * (lo + hi);
        (forward_map(dom, mid, r) < rho ? lo : hi) = mid;
    }
    const double s_star = 0.5 * (lo + hi);
    if (strict && r > dom.profile.H(s_star) * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "recover_level: (rho, r) = (" << rho << ", " << r
           << ") not in the image of the level map (r > H(s*))";
        throw std::invalid_argument(os.str());
    }
    return s_star;
}

double eval_u(const LyapunovFunction& lyap, double rho, double r) {
    return lyap.f(recover_level(lyap, rho, r, true));
}

NeumannReport verify_neumann(const LyapunovFunction& lyap, int n_samples) {
    NeumannReport rep;
    rep.samples = n_samples;
    const DomainSpec& dom = lyap.dom();
    const double lo = std::log(2.0 * lyap.s0());
    const double hi = std::log(lyap.s_max() / 2.0);
    for (int i = 0; i < n_samples; ++i) {
        const double s = std::exp(lo + (hi - lo) * (i + 0.5) / n_samples);
        const double rb = dom.profile.H(s);
        const double rho = forward_map(dom, s, rb);
        const double dh = dom.profile.dH(s);

        auto u_at = [&](double rr, double pp) { return lyap.f(recover_level(lyap, pp, rr, false)); };
        const double drho = 1e-5 * s;
        const double u_rho = (u_at(rb, rho + drho) - u_at(rb, rho - drho)) / (2.0 * drho);
        const double dr = 1e-3 * rb;
        // one-sided into the interior at the boundary in r
        const double u_r =
            (3.0 * u_at(rb, rho) - 4.0 * u_at(rb - dr, rho) + u_at(rb - 2.0 * dr, rho)) /
            (2.0 * dr);
        const double normal = (dh * u_rho - u_r) / std::sqrt(1.0 + dh * dh);
        rep.max_abs = std::max(rep.max_abs, std::abs(normal));
    }
    return rep;
}

namespace {

// (2.3)-style radial Laplacian of u by centered differences around (rho, r).
double half_laplace_fd(const LyapunovFunction& lyap, double rho, double r, double s_scale,
                       double h_scale) {
    const DomainSpec& dom = lyap.dom();
    auto u = [&](double pp, double rr) { return lyap.f(recover_level(lyap, pp, rr, false)); };
    const double dp = 1e-3 * s_scale;
    const double dr = std::min(2e-3 * h_scale, 0.3 * r);
    const double u0 = u(rho, r);
    const double up = u(rho + dp, r), um = u(rho - dp, r);
    const double vr = u(rho, r + dr), vl = u(rho, r - dr);
    const double u_rho = (up - um) / (2.0 * dp);
    const double u_rhorho = (up - 2.0 * u0 + um) / (dp * dp);
    const double u_r = (vr - vl) / (2.0 * dr);
    const double u_rr = (vr - 2.0 * u0 + vl) / (dr * dr);
    return 0.5 * u_rhorho + (dom.l - 1) / (2.0 * rho) * u_rho + 0.5 * u_rr +
           (dom.m - 1) / (2.0 * r) * u_r;
}

}  // namespace

SignReport verify_delta_u_sign(const LyapunovFunction& lyap, int n_s, int n_r,
                               std::uint64_t seed) {
    SignReport rep;
    const DomainSpec& dom = lyap.dom();
    const double lo = std::log(1.5 * lyap.s0());
    const double hi = std::log(lyap.s_max() / 4.0);
    const bool plus = lyap.sign() == LyapunovSign::Plus;

    std::vector<std::pair<double, double>> grid;
    for (int i = 0; i < n_s; ++i) {
        const double s = std::exp(lo + (hi - lo) * (i + 0.5) / n_s);
        const double h = dom.profile.H(s);
        for (int j = 0; j < n_r; ++j) grid.emplace_back(s, h * j / (n_r - 1.0));
    }
    rep.grid_points = static_cast<int>(grid.size());

    for (auto [s, r] : grid) {
        const CoefficientEval ce = eval_abc(dom, r, s);
        const double fp = lyap.fprime(s);
        const double gam = lyap.gamma(s);
        const double half_delta = 0.5 * fp * (ce.B - ce.A * gam);  // A f'' + B f' with f'' = -Gamma f'
        const double violation = plus ? half_delta : -half_delta;
        rep.worst_violation = std::max(rep.worst_violation, violation);
    }

    // independent spot check against the finite-difference Laplacian
    NormalStream rng(seed, 0);
    rep.spot_checks = 20;
    for (int c = 0; c < rep.spot_checks; ++c) {
        const double u1 = rng.next_uniform(), u2 = rng.next_uniform();
        const double s = std::exp(lo + (hi - lo) * (0.1 + 0.8 * u1));
        const double h = dom.profile.H(s);
        const double r = h * (0.2 + 0.6 * u2);
        const CoefficientEval ce = eval_abc(dom, r, s);
        const double fp = lyap.fprime(s);
        const double gam = lyap.gamma(s);
        const double analytic = 0.5 * fp * (ce.B - ce.A * gam);
        const double rho = forward_map(dom, s, r);
        const double fd = half_laplace_fd(lyap, rho, r, s, h);
        const double scale =
            std::max(std::abs(analytic),
                     ce.A * fp * (std::abs(gam) + std::abs(ce.ratio_BA) + 1.0 / s));
        rep.cross_check_rel = std::max(rep.cross_check_rel, std::abs(fd - analytic) / scale);
    }
    return rep;
}

SandwichReport verify_sandwich(const DomainSpec& dom, double s0, const std::vector<double>& t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("verify_sandwich: empty t grid");
    double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    const double s_max = std::max(2.0 * t_max, 100.0 * s0);
    SandwichReport rep;
    for (LyapunovSign sign : {LyapunovSign::Plus, LyapunovSign::Minus}) {
        LyapunovFunction lyap(dom, sign, s0, s_max);
        double worst = 0.0;
        const double h0 = dom.profile.H(s0);
        for (double t : t_grid) {
            if (t < s0 || t > s_max) throw std::invalid_argument("verify_sandwich: t outside range");
            const double reference = std::pow(t / s0, 1.0 - dom.l) *
                                     std::pow(dom.profile.H(t) / h0, -static_cast<double>(dom.m));
            const double actual = std::exp(-lyap.inner_integral(t));
            worst = std::max(worst, std::abs(actual / reference - 1.0));
        }
        (sign == LyapunovSign::Plus ? rep.c_plus : rep.c_minus) = worst;
    }
    return rep;
}

IdentityReport check_identity(const DomainSpec& dom, int n_points, std::uint64_t seed) {
    IdentityReport rep;
    rep.points = n_points;
    const double s0 = admissible_s0(dom);
    const double s_hi = 1e4 * s0;
    NormalStream rng(seed, 0);
    const double lo = std::log(s0), hi = std::log(s_hi);
    for (int i = 0; i < n_points; ++i) {
        const double s = std::exp(lo + (hi - lo) * rng.next_uniform());
        const double r = dom.profile.H(s) * rng.next_uniform();
        const CoefficientEval ce = eval_abc(dom, r, s);
        const double b_tab = b_printed_form(dom, r, s);
        const double seven = ratio_ba_seven_term(dom, r, s);
        const double denom_b = std::max({std::abs(ce.B), std::abs(b_tab), 1e-300});
        rep.chain_vs_tabulated_b =
            std::max(rep.chain_vs_tabulated_b, std::abs(ce.B - b_tab) / denom_b);
        const double denom_r = std::max({std::abs(ce.ratio_BA), std::abs(seven), 1e-300});
        rep.chain_vs_seven_term =
            std::max(rep.chain_vs_seven_term, std::abs(ce.ratio_BA - seven) / denom_r);
    }
    rep.seven_term_matches = rep.chain_vs_seven_term <= 1e-8;

    // Sixth-order finite differences of u built from f(s) = s decide which
    // form reproduces the true radial Laplacian: (1/2)Delta u = B/2 there.
    static const double c1[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60};
    static const double c2[7] = {1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18, 3.0 / 2, -3.0 / 20,
                                 1.0 / 90};
    auto level_of = [&](double rho, double r) {
        double a = 1e-6, b = 1e9;
        for (int it = 0; it < 300 && (b - a) > 1e-15 * b; ++it) {
            const double mid = 0.5 * (a + b);
            (forward_map(dom, mid, r) < rho ? a : b) = mid;
        }
        return 0.5 * (a + b);
    };
    const int fd_points = 12;
    for (int i = 0; i < fd_points; ++i) {
        const double s = s0 * std::pow(40.0, (i + 0.5) / fd_points);
        const double h = dom.profile.H(s);
        const double r = h * (0.35 + 0.3 * (i % 3) / 2.0);
        const double rho = forward_map(dom, s, r);
        const double dp = 2e-3 * s, dr = std::min(2e-2 * h, 0.25 * r);
        double u_rho = 0, u_rhorho = 0, u_r = 0, u_rr = 0;
        for (int j = 0; j < 7; ++j) {
            const double up = level_of(rho + (j - 3) * dp, r);
            const double ur = level_of(rho, r + (j - 3) * dr);
            u_rho += c1[j] * up;
            u_rhorho += c2[j] * up;
            u_r += c1[j] * ur;
            u_rr += c2[j] * ur;
        }
        u_rho /= dp;
        u_rhorho /= dp * dp;
        u_r /= dr;
        u_rr /= dr * dr;
        const double fd = 0.5 * u_rhorho + (dom.l - 1) / (2.0 * rho) * u_rho + 0.5 * u_rr +
                          (dom.m - 1) / (2.0 * r) * u_r;
        const CoefficientEval ce = eval_abc(dom, r, s);
        const double chain_half = 0.5 * ce.B;
        const double seven_half = 0.5 * ratio_ba_seven_term(dom, r, s) * ce.A;
        const double scale = std::max({std::abs(fd), std::abs(chain_half), 1e-300});
        rep.fd_vs_chain = std::max(rep.fd_vs_chain, std::abs(fd - chain_half) / scale);
        rep.fd_vs_seven_term =
            std::max(rep.fd_vs_seven_term, std::abs(fd - seven_half) / scale);
    }
    rep.chain_wins_fd = rep.fd_vs_chain <= rep.fd_vs_seven_term + 1e-12;
    return rep;
}

EndpointExtremumReport check_endpoint_extrema(const DomainSpec& dom, double s0, double s_max,
                                              int n_s, int n_r) {
    EndpointExtremumReport rep;
    const double lo = std::log(s0), hi = std::log(s_max);
    for (int i = 0; i < n_s; ++i) {
        const double s = std::exp(lo + (hi - lo) * (i + 0.5) / n_s);
        const double h = dom.profile.H(s);
        Locals v0 = locals_at(dom, 0.0, s);
        Locals vH = locals_at(dom, h, s);
        const double ends[3][2] = {{e_term(v0, 0.0), e_term(vH, h)},
                                   {f_term(v0), f_term(vH)},
                                   {g_term(v0), g_term(vH)}};
        for (int j = 1; j + 1 < n_r; ++j) {
            const double r = h * j / (n_r - 1.0);
            Locals v = locals_at(dom, r, s);
            const double vals[3] = {e_term(v, r), f_term(v), g_term(v)};
            for (int t = 0; t < 3; ++t) {
                const double mx = std::max(ends[t][0], ends[t][1]);
                const double mn = std::min(ends[t][0], ends[t][1]);
                const double scale = std::max({1.0, std::abs(mx), std::abs(mn)});
                const double excess = std::max(vals[t] - mx, mn - vals[t]) / scale;
                rep.worst_excess = std::max(rep.worst_excess, excess);
                ++rep.checks;
            }
        }
    }
    return rep;
}

AntiderivativeReport check_antiderivative(const DomainSpec& dom, double s0, double s_max) {
    AntiderivativeReport rep;
    const ProfileH& p = dom.profile;

    // closed forms, with the extremal endpoint frozen per sample
    auto form_e = [&](double t, bool at_h) {
        const double r = at_h ? p.H(t) : 0.0;
        return std::log(1.0 + r * r * p.L1(t) * p.L1(t));
    };
    auto form_f1 = [&](double t, bool at_h) {
        const double r = at_h ? p.H(t) : 0.0;
        return -std::log(1.0 + 0.25 * p.Q2(t) - 0.5 * r * r * p.L2(t));
    };
    auto form_f2 = [&](double t, bool at_h) {  // squared transcription
        const double r = at_h ? p.H(t) : 0.0;
        return -std::log(1.0 + 0.25 * p.Q2(t) - 0.5 * r * r * p.L2(t) * p.L2(t));
    };
    auto form_g = [&](double t, bool at_h) {
        const double r = at_h ? p.H(t) : 0.0;
        return std::log(t + 0.25 * p.Q1(t) - 0.5 * r * r * p.L1(t));
    };
    auto ddt = [&](auto&& form, double t, bool at_h) {
        const double d = 3e-3 * t;
        return (-form(t + 2 * d, at_h) + 8.0 * form(t + d, at_h) - 8.0 * form(t - d, at_h) +
                form(t - 2 * d, at_h)) /
               (12.0 * d);
    };

    const double lo = std::log(1.5 * s0), hi = std::log(0.9 * s_max);
    const int n = 24;
    for (int i = 0; i < n; ++i) {
        const double t = std::exp(lo + (hi - lo) * (i + 0.5) / n);
        const double h = p.H(t);
        Locals v0 = locals_at(dom, 0.0, t);
        Locals vH = locals_at(dom, h, t);
        struct Item {
            double v0, vH;
            int which;  // 0 = E, 1 = F, 2 = G
        } items[3] = {{e_term(v0, 0.0), e_term(vH, h), 0},
                      {f_term(v0), f_term(vH), 1},
                      {g_term(v0), g_term(vH), 2}};
        for (const auto& it : items) {
            for (bool want_sup : {true, false}) {
                const bool at_h = want_sup ? (it.vH >= it.v0) : (it.vH < it.v0);
                const double target = at_h ? it.vH : it.v0;
                double deriv;
                if (it.which == 0)
                    deriv = ddt(form_e, t, at_h);
                else if (it.which == 1)
                    deriv = ddt(form_f1, t, at_h);
                else
                    deriv = ddt(form_g, t, at_h);
                const double resid = std::abs(deriv - target) / std::max(1.0, std::abs(target));
                if (at_h)
                    rep.moving_endpoint_resid = std::max(rep.moving_endpoint_resid, resid);
                else
                    rep.fixed_endpoint_resid = std::max(rep.fixed_endpoint_resid, resid);
                if (it.which == 1 && at_h) {
                    rep.f_first_power_resid = std::max(rep.f_first_power_resid, resid);
                    const double resid2 = std::abs(ddt(form_f2, t, true) - target) /
                                          std::max(1.0, std::abs(target));
                    rep.f_squared_resid = std::max(rep.f_squared_resid, resid2);
                }
            }
        }
    }
    rep.first_power_wins = rep.f_first_power_resid <= rep.f_squared_resid + 1e-15;
    return rep;
}

}  // namespace horncrit
