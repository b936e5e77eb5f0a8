#include "horncrit/simulate.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace horncrit {

std::string to_string(SimMode m) { return m == SimMode::Full ? "full" : "reduced"; }

std::string to_string(ExitCause c) {
    switch (c) {
        case ExitCause::HitInner: return "hit_inner";
        case ExitCause::HitOuter: return "hit_outer";
        default: return "time_budget";
    }
}

namespace {

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

}  // namespace

double SimState::radial() const { return mode == SimMode::Full ? norm(x) : rho; }
double SimState::z_norm() const { return mode == SimMode::Full ? norm(z) : r; }

SimState make_full_state(int l, int m, double rho, double r) {
    SimState s;
    s.mode = SimMode::Full;
    s.x.assign(l, 0.0);
    s.z.assign(m, 0.0);
    s.x[0] = rho;
    s.z[0] = r;
    return s;
}

SimState make_reduced_state(double rho, double r) {
    SimState s;
    s.mode = SimMode::Reduced;
    s.rho = rho;
    s.r = r;
    return s;
}

bool in_domain(const DomainSpec& dom, const SimState& s) {
    if (s.mode == SimMode::Full) return norm(s.z) <= dom.profile.H(norm(s.x)) * (1.0 + 1e-12);
    return s.rho >= 0.0 && s.r >= 0.0 && s.r <= dom.profile.H(s.rho) * (1.0 + 1e-12);
}

namespace {

// Newton projection onto |z| = H(|x|) along the boundary normal. Returns
// false when the iteration fails to converge (extreme curvature).
bool project_full(const DomainSpec& dom, std::vector<double>& x, std::vector<double>& z) {
    const ProfileH& p = dom.profile;
    for (int it = 0; it < 50; ++it) {
        const double rho = norm(x), rz = norm(z);
        const double g = rz - p.H(rho);
        if (g <= 1e-12) return true;
        const double dh = rho > 0.0 ? p.dH(rho) : 0.0;
        const double scale = g / (1.0 + dh * dh);
        // y <- y - scale * grad g, grad g = (-H' x/|x|, z/|z|)
        if (rho > 0.0) {
            const double cx = scale * dh / rho;
            for (double& c : x) c += cx * c;
        }
        if (rz > 0.0) {
            const double cz = scale / rz;
            for (double& c : z) c -= cz * c;
        }
    }
    const double rho = norm(x), rz = norm(z);
    const double g = rz - p.H(rho);
    if (g <= 1e-9) {  // close enough to clamp exactly onto the boundary
        if (g > 0.0 && rz > 0.0) {
            const double f = p.H(rho) / rz;
            for (double& c : z) c *= f;
        }
        return true;
    }
    return false;
}

bool project_reduced(const DomainSpec& dom, double& rho, double& r) {
    const ProfileH& p = dom.profile;
    for (int it = 0; it < 50; ++it) {
        const double g = r - p.H(rho);
        if (g <= 1e-12) {
            rho = std::abs(rho);
            return true;
        }
        const double dh = p.dH(std::abs(rho));
        const double scale = g / (1.0 + dh * dh);
        rho += scale * dh;
        r -= scale;
    }
    rho = std::abs(rho);
    const double g = r - p.H(rho);
    if (g <= 1e-9) {
        if (g > 0.0) r = p.H(rho);
        return true;
    }
    return false;
}

}  // namespace

void step_full(const DomainSpec& dom, SimState& s, double h, NormalStream& rng, int max_halvings) {
    const int l = dom.l, m = dom.m;
    std::vector<double> xi(l + m);
    for (double& c : xi) c = rng.next();

    double h_eff = h;
    for (int attempt = 0; attempt <= max_halvings; ++attempt, h_eff *= 0.5) {
        const double sq = std::sqrt(h_eff);
        std::vector<double> xn(s.x), zn(s.z);
        for (int i = 0; i < l; ++i) xn[i] += sq * xi[i];
        for (int i = 0; i < m; ++i) zn[i] += sq * xi[l + i];
        const double g = norm(zn) - dom.profile.H(norm(xn));
        if (g <= 0.0) {
            s.x = std::move(xn);
            s.z = std::move(zn);
            s.t += h_eff;
            return;
        }
        std::vector<double> px(xn), pz(zn);
        if (project_full(dom, px, pz)) {
            double disp = 0.0;
            for (int i = 0; i < l; ++i) disp += (px[i] - xn[i]) * (px[i] - xn[i]);
            for (int i = 0; i < m; ++i) disp += (pz[i] - zn[i]) * (pz[i] - zn[i]);
            s.x = std::move(px);
            s.z = std::move(pz);
            s.local_time += std::sqrt(disp);
            s.t += h_eff;
            return;
        }
    }
    throw std::runtime_error("step_full: boundary projection failed after max halvings");
}

void step_reduced(const DomainSpec& dom, SimState& s, double h, NormalStream& rng,
                  int max_halvings) {
    const int l = dom.l, m = dom.m;
    const double xi1 = rng.next();
    const double xi2 = rng.next();

    double h_eff = h;
    for (int attempt = 0; attempt <= max_halvings; ++attempt, h_eff *= 0.5) {
        const double sq = std::sqrt(h_eff);
        const double cap = 1e-2 * sq;  // Bessel drift guard near the axes
        double rho = s.rho + (l - 1) * h_eff / (2.0 * std::max(s.rho, cap)) + sq * xi1;
        double r = s.r + (m - 1) * h_eff / (2.0 * std::max(s.r, cap)) + sq * xi2;
        rho = std::abs(rho);
        r = std::abs(r);
        const double rho_n = rho, r_n = r;
        if (r <= dom.profile.H(rho)) {
            s.rho = rho;
            s.r = r;
            s.t += h_eff;
            return;
        }
        if (project_reduced(dom, rho, r)) {
            const double drho = rho - rho_n, dr = r - r_n;
            s.rho = rho;
            s.r = r;
            s.local_time += std::sqrt(drho * drho + dr * dr);
            s.t += h_eff;
            return;
        }
    }
    throw std::runtime_error("step_reduced: boundary projection failed after max halvings");
}

void step(const DomainSpec& dom, SimState& s, double h, NormalStream& rng) {
    if (s.mode == SimMode::Full)
        step_full(dom, s, h, rng);
    else
        step_reduced(dom, s, h, rng);
}

PathSummary run_until(const DomainSpec& dom, SimState start, const StopSpec& stop, double h,
                      std::uint64_t seed, std::uint64_t path_id) {
    if (!in_domain(dom, start)) throw std::invalid_argument("run_until: start not in domain");
    if (stop.inner >= 0.0 && stop.outer >= 0.0 && !(stop.inner < stop.outer))
        throw std::invalid_argument("run_until: need inner < outer");
    NormalStream rng(seed, path_id);
    PathSummary out;
    SimState s = std::move(start);
    auto finish = [&](ExitCause cause) {
        out.cause = cause;
        out.t = s.t;
        out.local_time = s.local_time;
        out.final_radial = s.radial();
        out.final_z = s.z_norm();
        return out;
    };
    if (stop.inner >= 0.0 && s.radial() <= stop.inner) return finish(ExitCause::HitInner);
    if (stop.outer >= 0.0 && s.radial() >= stop.outer) return finish(ExitCause::HitOuter);
    while (s.t < stop.t_max) {
        step(dom, s, h, rng);
        ++out.steps;
        const double rad = s.radial();
        if (stop.inner >= 0.0 && rad <= stop.inner) return finish(ExitCause::HitInner);
        if (stop.outer >= 0.0 && rad >= stop.outer) return finish(ExitCause::HitOuter);
    }
    return finish(ExitCause::TimeBudget);
}

std::vector<PathSummary> run_paths(const DomainSpec& dom, const SimState& start,
                                   const StopSpec& stop, double h, int n_paths,
                                   std::uint64_t seed, int threads) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n_paths));
    std::vector<PathSummary> out(n_paths);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int id = next.fetch_add(1);
            if (id >= n_paths) return;
            out[id] = run_until(dom, start, stop, h, seed, static_cast<std::uint64_t>(id));
        }
    };
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace horncrit
