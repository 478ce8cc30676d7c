#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "qzrp/zrp.hpp"

namespace qzrp {

// Stream derivation for independent trajectories: one splitmix64 step mixes
// the master seed with the stream index, then seeds a mt19937_64.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct Event {
    double time;
    int site;
    int species;
};

struct Trajectory {
    std::uint64_t seed = 0;
    ZrpConfig initial;
    std::vector<Event> events;
    double terminal_time = 0;
    // Accumulators indexed by (site, species).
    std::map<std::pair<int, int>, double> occupation_time;  // integral of particle count
    std::map<std::pair<int, int>, long> jump_counts;        // jumps out of the site
};

struct NumericParams {
    std::vector<double> x;
    double t;
};

inline NumericParams to_numeric(const ZrpParams& p) {
    NumericParams np;
    for (const auto& v : p.x) np.x.push_back(static_cast<double>(v));
    np.t = static_cast<double>(p.t);
    return np;
}

namespace detail {

struct NumericMove {
    int site;
    int species;
    double rate;
};

inline std::vector<NumericMove> numeric_moves(const ZrpConfig& w, const NumericParams& p) {
    std::vector<NumericMove> moves;
    for (int j = 1; j <= w.n(); ++j) {
        int prev = -1;
        for (int r : w.sites[j - 1]) {
            if (r == prev) continue;
            prev = r;
            int c = w.count_at(j, r), d = w.stronger_at(j, r);
            double geo = 0, tp = 1;
            for (int i = 0; i < c; ++i) {
                geo += tp;
                tp *= p.t;
            }
            double rate = std::pow(p.t, d) * geo / p.x[j - 1];
            if (rate > 0) moves.push_back(NumericMove{j, r, rate});
        }
    }
    return moves;
}

}  // namespace detail

// Gillespie direct method.  Stops at the horizon or after max_events events,
// whichever comes first (max_events <= 0 means no event cap).  Reproducible
// per seed; exponential clocks sampled by inverse CDF.
inline Trajectory simulate(const Partition& lambda, int n, const ZrpParams& params,
                           std::uint64_t seed, double horizon, long max_events = -1,
                           const ZrpConfig* start = nullptr, bool record_events = true) {
    if (static_cast<int>(params.x.size()) != n) throw ContractViolation("params arity mismatch");
    if (horizon <= 0) throw ContractViolation("horizon must be positive");
    NumericParams np = to_numeric(params);

    ZrpConfig w;
    if (start) {
        w = *start;
    } else {
        // Deterministic default start: everything at site 1.
        w.sites.assign(n, {});
        for (int p : lambda.parts) w.sites[0].push_back(p);
    }

    Trajectory traj;
    traj.seed = seed;
    traj.initial = w;
    std::mt19937_64 rng(split_seed(seed, 0));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    double time = 0;
    long events = 0;
    while (true) {
        auto moves = detail::numeric_moves(w, np);
        double total = 0;
        for (const auto& mv : moves) total += mv.rate;
        if (total <= 0) {
            if (!lambda.empty()) throw ContractViolation("all rates vanished (internal)");
            traj.terminal_time = horizon;
            return traj;
        }
        double u = unif(rng);
        double dt = -std::log1p(-u) / total;
        double next_time = time + dt;
        double upto = std::min(next_time, horizon);
        for (int j = 1; j <= n; ++j)
            for (int r : w.sites[j - 1]) traj.occupation_time[{j, r}] += upto - time;
        if (next_time >= horizon) break;
        time = next_time;
        double pick = unif(rng) * total;
        const detail::NumericMove* chosen = &moves.back();
        for (const auto& mv : moves) {
            pick -= mv.rate;
            if (pick <= 0) {
                chosen = &mv;
                break;
            }
        }
        if (record_events) traj.events.push_back(Event{time, chosen->site, chosen->species});
        ++traj.jump_counts[{chosen->site, chosen->species}];
        w = w.moved(chosen->site, chosen->species);
        ++events;
        if (max_events > 0 && events >= max_events) break;
    }
    traj.terminal_time = std::min(horizon, time);
    if (traj.terminal_time <= 0) traj.terminal_time = horizon;
    return traj;
}

// Batch-mean estimate of a stationary time average: the horizon splits into
// batches, each yielding one mean; the standard error is the sample standard
// deviation of batch means over sqrt(batches).  This accounts for the
// autocorrelation of the process at the batch scale.
struct Estimate {
    double mean = 0;
    double se = 0;
};

inline Estimate batch_estimate(const std::vector<double>& batch_means) {
    Estimate est;
    std::size_t b = batch_means.size();
    if (b == 0) return est;
    for (double v : batch_means) est.mean += v;
    est.mean /= static_cast<double>(b);
    double var = 0;
    for (double v : batch_means) var += (v - est.mean) * (v - est.mean);
    if (b > 1) var /= static_cast<double>(b - 1);
    est.se = std::sqrt(var / static_cast<double>(b));
    return est;
}

struct SimulationReport {
    double horizon = 0;
    long total_events = 0;
    // Keyed by (site, species): time-average particle count.
    std::map<std::pair<int, int>, Estimate> density;
    // Keyed by species: jumps across the site n -> 1 bond per unit time.
    std::map<int, Estimate> current;
};

// Runs one long trajectory and reports batch-mean densities and currents.
inline SimulationReport simulate_report(const Partition& lambda, int n, const ZrpParams& params,
                                        std::uint64_t seed, double horizon, int batches = 25) {
    if (batches < 2) throw ContractViolation("need at least 2 batches");
    NumericParams np = to_numeric(params);
    ZrpConfig w;
    w.sites.assign(n, {});
    for (int p : lambda.parts) w.sites[0].push_back(p);

    std::mt19937_64 rng(split_seed(seed, 0));
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    std::vector<int> species_values;
    for (const auto& [v, m] : lambda.value_multiplicities()) species_values.push_back(v);

    double batch_len = horizon / batches;
    // batch x (site, species) -> occupation; batch x species -> bond jumps
    std::vector<std::map<std::pair<int, int>, double>> occ(batches);
    std::vector<std::map<int, long>> bond(batches);
    long total_events = 0;

    double time = 0;
    while (time < horizon) {
        auto moves = detail::numeric_moves(w, np);
        double total = 0;
        for (const auto& mv : moves) total += mv.rate;
        if (total <= 0) break;
        double dt = -std::log1p(-unif(rng)) / total;
        double next_time = std::min(time + dt, horizon);
        // Spread occupation across the batches the waiting interval covers.
        double seg_start = time;
        while (seg_start < next_time) {
            int b = std::min(static_cast<int>(seg_start / batch_len), batches - 1);
            double seg_end = std::min(next_time, (b + 1) * batch_len);
            for (int j = 1; j <= n; ++j)
                for (int r : w.sites[j - 1]) occ[b][{j, r}] += seg_end - seg_start;
            seg_start = seg_end;
        }
        if (time + dt > horizon) break;
        time += dt;
        double pick = unif(rng) * total;
        const detail::NumericMove* chosen = &moves.back();
        for (const auto& mv : moves) {
            pick -= mv.rate;
            if (pick <= 0) {
                chosen = &mv;
                break;
            }
        }
        ++total_events;
        int b = std::min(static_cast<int>(time / batch_len), batches - 1);
        if (chosen->site == n) ++bond[b][chosen->species];
        w = w.moved(chosen->site, chosen->species);
    }

    SimulationReport rep;
    rep.horizon = horizon;
    rep.total_events = total_events;
    for (int j = 1; j <= n; ++j)
        for (int v : species_values) {
            std::vector<double> means;
            for (int b = 0; b < batches; ++b) {
                auto it = occ[b].find({j, v});
                means.push_back(it == occ[b].end() ? 0.0 : it->second / batch_len);
            }
            rep.density[{j, v}] = batch_estimate(means);
        }
    for (int v : species_values) {
        std::vector<double> means;
        for (int b = 0; b < batches; ++b) {
            auto it = bond[b].find(v);
            means.push_back(it == bond[b].end() ? 0.0 : it->second / batch_len);
        }
        rep.current[v] = batch_estimate(means);
    }
    return rep;
}

}  // namespace qzrp
