#include "horncrit/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

#include "horncrit/classify.hpp"
#include "horncrit/csv.hpp"
#include "horncrit/rng.hpp"
#include "horncrit/simulate.hpp"

namespace horncrit {

std::string ExperimentTable::to_csv() const {
    CsvWriter csv({"label", "param", "estimate", "stderr", "oracle", "n_paths", "h", "seed",
                   "note"});
    for (const auto& r : rows) {
        csv.cell(r.label)
            .cell(r.param)
            .cell(r.estimate)
            .cell(r.std_error)
            .cell(r.oracle)
            .cell(static_cast<long long>(r.n))
            .cell(r.h)
            .cell(static_cast<unsigned long long>(r.seed));
        csv.cell(r.note);
        csv.end_row();
    }
    return csv.str();
}

namespace {

void parallel_paths(int n_paths, int threads, const std::function<void(int)>& body) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min(threads, n_paths));
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            const int id = next.fetch_add(1);
            if (id >= n_paths) return;
            body(id);
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
}

struct MeanErr {
    double mean = 0.0, std_error = 0.0;
};

MeanErr mean_err(const std::vector<double>& v) {
    MeanErr out;
    const double n = static_cast<double>(v.size());
    for (double x : v) out.mean += x;
    out.mean /= n;
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.std_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    return out;
}

// Reflected Brownian motion in the m-ball of radius a, in isolation:
// Gaussian step then radial projection, local time = projection overshoot.
struct BallWalk {
    double a;
    std::vector<double> z;
    double t = 0.0, local_time = 0.0;

    void step(double h, NormalStream& rng) {
        const double sq = std::sqrt(h);
        double n2 = 0.0;
        for (double& c : z) {
            c += sq * rng.next();
            n2 += c * c;
        }
        const double rz = std::sqrt(n2);
        if (rz > a) {
            const double f = a / rz;
            for (double& c : z) c *= f;
            local_time += rz - a;
        }
        t += h;
    }

    double radius() const {
        double n2 = 0.0;
        for (double c : z) n2 += c * c;
        return std::sqrt(n2);
    }
};

}  // namespace

double cycle_sigma_up_oracle(double a, int m) { return 3.0 * a * a / (4.0 * m); }

double cycle_sigma_down_oracle(double a, int m) {
    if (m == 2) return a * a * (std::log(2.0) - 0.375);
    // (r^{m-1} u')' = -2 r^{m-1}, u'(a) = 0, u(a/2) = 0, evaluated at a
    return -3.0 * a * a / (4.0 * m) +
           (2.0 * a * a / (m * (2.0 - m))) * (1.0 - std::pow(2.0, m - 2.0));
}

double cycle_local_time_oracle(double a, int m) {
    if (m == 2) return a * std::log(2.0);
    return a * (std::pow(2.0, m - 2.0) - 1.0) / (m - 2.0);
}

ExperimentTable local_time_rate(double a, int m, double t_end, int n_paths, double h,
                                std::uint64_t seed, int threads) {
    if (!(a > 0.0) || m < 1) throw std::invalid_argument("local_time_rate: need a > 0, m >= 1");
    ExperimentTable table;
    table.experiment = "localtime";
    std::vector<double> rate(n_paths);
    parallel_paths(n_paths, threads, [&](int id) {
        NormalStream rng(seed, static_cast<std::uint64_t>(id));
        BallWalk w{a, std::vector<double>(m, 0.0)};
        while (w.t < t_end) w.step(h, rng);
        rate[id] = w.local_time / w.t;
    });
    const MeanErr me = mean_err(rate);
    ExperimentRow row;
    row.label = "local_time_rate m=" + std::to_string(m) + " a=" + CsvWriter::format_double(a);
    row.param = a;
    row.estimate = me.mean;
    row.std_error = me.std_error;
    row.oracle = m / (2.0 * a);
    row.n = n_paths;
    row.h = h;
    row.seed = seed;
    table.rows.push_back(row);
    return table;
}

ExperimentTable cycle_identity(double a, int m, int n_cycles, double h, std::uint64_t seed,
                               int threads) {
    if (!(a > 0.0) || m < 1) throw std::invalid_argument("cycle_identity: need a > 0, m >= 1");
    ExperimentTable table;
    table.experiment = "cycle";
    std::vector<double> up(n_cycles), down(n_cycles), ltime(n_cycles);
    parallel_paths(n_cycles, threads, [&](int id) {
        NormalStream rng(seed, static_cast<std::uint64_t>(id));
        BallWalk w{a, std::vector<double>(m, 0.0)};
        w.z[0] = 0.5 * a;
        // up leg: no reflection happens before |z| reaches a
        while (w.radius() < a) w.step(h, rng);
        up[id] = w.t;
        // restart the clock on the boundary
        const double rz = w.radius();
        for (double& c : w.z) c *= a / rz;
        const double t0 = w.t, l0 = w.local_time;
        while (w.radius() > 0.5 * a) w.step(h, rng);
        down[id] = w.t - t0;
        ltime[id] = w.local_time - l0;
    });
    const MeanErr me_up = mean_err(up), me_down = mean_err(down), me_l = mean_err(ltime);

    auto push = [&](const std::string& label, const MeanErr& me, double oracle) {
        ExperimentRow row;
        row.label = label;
        row.param = a;
        row.estimate = me.mean;
        row.std_error = me.std_error;
        row.oracle = oracle;
        row.n = n_cycles;
        row.h = h;
        row.seed = seed;
        table.rows.push_back(row);
    };
    push("E_sigma_a", me_up, cycle_sigma_up_oracle(a, m));
    push("E_sigma_a_half", me_down, cycle_sigma_down_oracle(a, m));
    push("E_L_cycle", me_l, cycle_local_time_oracle(a, m));

    // ratio of local time accrued per cycle to cycle duration, delta-method error
    std::vector<double> total(n_cycles);
    for (int i = 0; i < n_cycles; ++i) total[i] = up[i] + down[i];
    const MeanErr me_t = mean_err(total);
    const double ratio = me_l.mean / me_t.mean;
    double cov = 0.0;
    for (int i = 0; i < n_cycles; ++i) cov += (ltime[i] - me_l.mean) * (total[i] - me_t.mean);
    cov /= (n_cycles - 1.0);
    const double var_l = me_l.std_error * me_l.std_error * n_cycles;
    const double var_t = me_t.std_error * me_t.std_error * n_cycles;
    const double var_ratio = (var_l / (me_t.mean * me_t.mean) +
                              var_t * ratio * ratio / (me_t.mean * me_t.mean) -
                              2.0 * ratio * cov / (me_t.mean * me_t.mean)) /
                             n_cycles;
    ExperimentRow row;
    row.label = "cycle_ratio";
    row.param = a;
    row.estimate = ratio;
    row.std_error = std::sqrt(std::max(var_ratio, 0.0));
    row.oracle = m / (2.0 * a);
    row.n = n_cycles;
    row.h = h;
    row.seed = seed;
    table.rows.push_back(row);
    return table;
}

ExperimentTable two_sphere(const DomainSpec& dom, double rho0, double rho1,
                           const std::vector<double>& R_list, int n_paths, double h,
                           std::uint64_t seed, int threads) {
    if (!(rho0 < rho1)) throw std::invalid_argument("two_sphere: need rho0 < rho1");
    for (double R : R_list)
        if (!(rho1 < R)) throw std::invalid_argument("two_sphere: need rho1 < min(R_list)");
    ExperimentTable table;
    table.experiment = "twosphere";
    const double r_start = 0.5 * dom.profile.H(rho1);
    std::vector<double> estimates;
    for (double R : R_list) {
        StopSpec stop;
        stop.inner = rho0;
        stop.outer = R;
        stop.t_max = 1e6;
        auto paths =
            run_paths(dom, make_reduced_state(rho1, r_start), stop, h, n_paths, seed, threads);
        int hits = 0, budget = 0;
        for (const auto& ps : paths) {
            if (ps.cause == ExitCause::HitInner) ++hits;
            if (ps.cause == ExitCause::TimeBudget) ++budget;
        }
        const double p_hat = static_cast<double>(hits) / n_paths;
        ExperimentRow row;
        row.label = "p_hit_inner";
        row.param = R;
        row.estimate = p_hat;
        row.std_error = std::sqrt(std::max(p_hat * (1.0 - p_hat), 1e-12) / n_paths);
        row.oracle = hitting_prob_1d(dom, rho0, rho1, R);
        row.n = n_paths;
        row.h = h;
        row.seed = seed;
        if (budget > 0) row.note = std::to_string(budget) + " paths hit the time budget";
        estimates.push_back(p_hat);
        table.rows.push_back(row);
    }
    if (estimates.size() >= 2) {
        auto& last = table.rows.back();
        const double dlast = estimates[estimates.size() - 1] - estimates[estimates.size() - 2];
        const double noise = 2.0 * last.std_error;
        std::string trend = dlast > noise ? (estimates.back() >= 0.9 ? "rising toward 1" : "rising")
                                          : "plateau";
        last.note = last.note.empty() ? trend : last.note + "; " + trend;
    }
    return table;
}

ExperimentTable supermartingale_check(const LyapunovFunction& lyap, double start_rho,
                                      double start_r, const std::vector<double>& t_grid,
                                      int n_paths, double h, std::uint64_t seed, int threads) {
    if (t_grid.empty()) throw std::invalid_argument("supermartingale_check: empty t grid");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (!(t_grid[i] > t_grid[i - 1]))
            throw std::invalid_argument("supermartingale_check: t grid must increase");
    const DomainSpec& dom = lyap.dom();
    const double s0 = lyap.s0();
    const double u_start = eval_u(lyap, start_rho, start_r);

    ExperimentTable table;
    table.experiment = "supermartingale";
    const int n_t = static_cast<int>(t_grid.size());
    std::vector<std::vector<double>> u_at(n_t, std::vector<double>(n_paths, 0.0));

    parallel_paths(n_paths, threads, [&](int id) {
        NormalStream rng(seed, static_cast<std::uint64_t>(id));
        SimState s = make_reduced_state(start_rho, start_r);
        bool absorbed = false;
        int next_capture = 0;
        while (next_capture < n_t) {
            if (t_grid[next_capture] <= 0.0) {
                u_at[next_capture][id] = u_start;
                ++next_capture;
                continue;
            }
            if (!absorbed) {
                step_reduced(dom, s, h, rng);
                // absorbed once the level drops to s0: rho below the level-s0 paraboloid
                if (s.rho <= forward_map(dom, s0, s.r)) absorbed = true;
            } else {
                s.t += h;  // frozen state, clock still runs
            }
            while (next_capture < n_t && s.t >= t_grid[next_capture]) {
                double u_val = 0.0;  // f(s0) at and below the absorbing level
                if (!absorbed) {
                    const double cap = forward_map(dom, lyap.s_max(), s.r);
                    u_val = lyap.f(recover_level(lyap, std::min(s.rho, cap), s.r, false));
                }
                u_at[next_capture][id] = u_val;
                ++next_capture;
            }
        }
    });

    std::vector<MeanErr> stats(n_t);
    for (int i = 0; i < n_t; ++i) stats[i] = mean_err(u_at[i]);
    for (int i = 0; i < n_t; ++i) {
        ExperimentRow row;
        row.label = "E_u";
        row.param = t_grid[i];
        row.estimate = stats[i].mean;
        row.std_error = stats[i].std_error;
        if (t_grid[i] <= 0.0) row.oracle = u_start;
        row.n = n_paths;
        row.h = h;
        row.seed = seed;
        table.rows.push_back(row);
    }
    for (int i = 0; i + 1 < n_t; ++i) {
        std::vector<double> diff(n_paths);
        for (int p = 0; p < n_paths; ++p) diff[p] = u_at[i + 1][p] - u_at[i][p];
        const MeanErr me = mean_err(diff);
        ExperimentRow row;
        row.label = "increment";
        row.param = t_grid[i + 1];
        row.estimate = me.mean;
        row.std_error = me.std_error;
        row.n = n_paths;
        row.h = h;
        row.seed = seed;
        row.note = lyap.sign() == LyapunovSign::Plus ? "expect <= 0 within noise"
                                                     : "expect >= 0 within noise";
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace horncrit
