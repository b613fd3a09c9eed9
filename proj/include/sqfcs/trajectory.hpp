// trajectory.hpp — Continuous-time jump simulation of the two-state master
// equation with left-reservoir counting. This is the stochastic oracle that
// pins down the physical normalization of the CGF: empirical long-time
// cumulant rates of q match the canonical (eigenvalue) j_n.
//
// Per-trajectory RNG streams are derived deterministically from
// (master_seed, trajectory index), so ensembles are reproducible and safe to
// evaluate concurrently.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "sqfcs/cgf.hpp"
#include "sqfcs/model.hpp"
#include "sqfcs/parallel.hpp"

namespace sqfcs {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream seed for trajectory `index` under `master_seed`.
inline std::uint64_t trajectory_seed(std::uint64_t master_seed,
                                     std::uint64_t index) {
    std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    splitmix64(s);
    return splitmix64(s);
}

/// Outcome of one trajectory. q counts absorptions from the left minus
/// emissions to the left; when a window length was given, window_counts
/// holds the per-window increments of q and sums to net_count.
struct TrajectoryStats {
    double total_time = 0.0;
    long long net_count = 0;
    long long absorb_left = 0, emit_left = 0;
    long long absorb_right = 0, emit_right = 0;
    double time_occupied = 0.0;
    bool started_occupied = false;
    std::vector<long long> window_counts;
};

inline TrajectoryStats simulate(const RateSet& r, double t_max,
                                std::uint64_t seed, double window = 0.0) {
    if (!(t_max > 0.0))
        throw std::invalid_argument("simulate: t_max must be > 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    TrajectoryStats out;
    out.total_time = t_max;
    std::size_t n_windows = 0;
    if (window > 0.0) {
        n_windows = static_cast<std::size_t>(std::ceil(t_max / window - 1e-9));
        out.window_counts.assign(n_windows, 0);
    }

    const double up_rate = r.beta_l + r.beta_r;
    const double down_rate = r.alpha_l + r.alpha_r;
    bool occupied = unif(rng) < steady_state(r).occupied;
    out.started_occupied = occupied;

    double t = 0.0;
    for (;;) {
        const double rate = occupied ? down_rate : up_rate;
        if (!(rate > 0.0)) {
            if (occupied) out.time_occupied += t_max - t;
            break;
        }
        const double dt = -std::log1p(-unif(rng)) / rate;
        if (t + dt >= t_max) {
            if (occupied) out.time_occupied += t_max - t;
            break;
        }
        t += dt;
        if (occupied) out.time_occupied += dt;

        int dq = 0;
        if (occupied) {
            if (unif(rng) * down_rate < r.alpha_l) {
                ++out.emit_left;
                dq = -1;
            } else {
                ++out.emit_right;
            }
            occupied = false;
        } else {
            if (unif(rng) * up_rate < r.beta_l) {
                ++out.absorb_left;
                dq = +1;
            } else {
                ++out.absorb_right;
            }
            occupied = true;
        }
        if (dq != 0) {
            out.net_count += dq;
            if (n_windows > 0) {
                auto w = static_cast<std::size_t>(t / window);
                out.window_counts[std::min(w, n_windows - 1)] += dq;
            }
        }
    }
    return out;
}

inline TrajectoryStats simulate(const ModelParams& p, double t_max,
                                std::uint64_t seed, double window = 0.0) {
    return simulate(make_rates(p), t_max, seed, window);
}

/// Long-time cumulant-rate estimates from an ensemble of trajectories.
/// Estimates use unbiased k-statistics of {q_i} divided by the horizon;
/// standard errors come from delete-one jackknife over trajectories.
struct EmpiricalCumulants {
    std::array<double, 4> rate{};
    std::array<double, 4> std_error{};
    int n_traj = 0;
    double horizon = 0.0;
};

namespace detail {

/// Unbiased k-statistics k1..k4 from power sums of (q_i - shift); k1 is
/// reported with the shift added back. Orders whose unbiasing denominator
/// vanishes (k3 needs n >= 3, k4 needs n >= 4) come back as NaN.
inline std::array<double, 4> k_statistics(double n, double s1, double s2,
                                          double s3, double s4, double shift) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double m = s1 / n;
    const double m2 = s2 / n - m * m;
    const double m3 = s3 / n - 3.0 * m * s2 / n + 2.0 * m * m * m;
    const double m4 = s4 / n - 4.0 * m * s3 / n + 6.0 * m * m * s2 / n -
                      3.0 * m * m * m * m;
    std::array<double, 4> k{};
    k[0] = shift + m;
    k[1] = n >= 2.0 ? n / (n - 1.0) * m2 : nan;
    k[2] = n >= 3.0 ? n * n / ((n - 1.0) * (n - 2.0)) * m3 : nan;
    k[3] = n >= 4.0 ? n * n *
                          ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 * m2) /
                          ((n - 1.0) * (n - 2.0) * (n - 3.0))
                    : nan;
    return k;
}

}  // namespace detail

inline EmpiricalCumulants ensemble_cumulants(const ModelParams& p,
                                             int n_traj, double t_max,
                                             std::uint64_t master_seed) {
    if (n_traj < 2)
        throw std::invalid_argument(
            "ensemble_cumulants: need at least 2 trajectories");
    const RateSet rates = make_rates(p);

    std::vector<double> q(static_cast<std::size_t>(n_traj));
    parallel_for_index(q.size(), [&](std::size_t i) {
        q[i] = static_cast<double>(
            simulate(rates, t_max, trajectory_seed(master_seed, i)).net_count);
    });

    // Center on the ensemble mean before taking power sums.
    double mean = 0.0;
    for (double v : q) mean += v;
    mean /= static_cast<double>(n_traj);
    double s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (double v : q) {
        const double d = v - mean;
        s1 += d;
        s2 += d * d;
        s3 += d * d * d;
        s4 += d * d * d * d;
    }

    const double n = static_cast<double>(n_traj);
    const auto full = detail::k_statistics(n, s1, s2, s3, s4, mean);

    EmpiricalCumulants out;
    out.n_traj = n_traj;
    out.horizon = t_max;
    for (int i = 0; i < 4; ++i) out.rate[i] = full[i] / t_max;

    // Delete-one jackknife on the shifted power sums.
    std::array<double, 4> acc{}, acc2{};
    for (double v : q) {
        const double d = v - mean;
        const auto k = detail::k_statistics(n - 1.0, s1 - d, s2 - d * d,
                                            s3 - d * d * d, s4 - d * d * d * d,
                                            mean);
        for (int i = 0; i < 4; ++i) {
            acc[i] += k[i];
            acc2[i] += k[i] * k[i];
        }
    }
    for (int i = 0; i < 4; ++i) {
        if (!std::isfinite(acc[i])) {
            out.std_error[i] = std::numeric_limits<double>::quiet_NaN();
            continue;
        }
        const double jmean = acc[i] / n;
        const double var = std::max(0.0, acc2[i] / n - jmean * jmean);
        out.std_error[i] = std::sqrt((n - 1.0) * var) / t_max;
    }
    return out;
}

/// One bin of the fluctuation-theorem histogram.
struct FtHistogramRow {
    long long q = 0;
    long long count = 0;
    double ln_ratio = std::numeric_limits<double>::quiet_NaN();  // ln P(q)/P(-q)
    double model = 0.0;                                          // q * A
};

/// Empirical check of P(q)/P(-q) = e^{qA} over fixed-length windows.
struct FtHistogram {
    std::vector<FtHistogramRow> rows;  // ascending in q
    double slope = std::numeric_limits<double>::quiet_NaN();
    double slope_std_error = std::numeric_limits<double>::quiet_NaN();
    double model_affinity = 0.0;
    bool sufficient = false;
    int usable_pairs = 0;          // q > 0 with both +-q counts >= min_count
    int bins_with_min_count = 0;
    long long total_windows = 0;
    long long min_count = 0;
};

inline FtHistogram ft_histogram(const ModelParams& p, double window,
                                long long n_windows,
                                std::uint64_t master_seed,
                                long long min_count = 100) {
    if (!(window > 0.0) || n_windows < 1)
        throw std::invalid_argument("ft_histogram: bad window parameters");
    const RateSet rates = make_rates(p);

    // Windows are consecutive sub-intervals of long batch trajectories, so
    // each batch's window counts sum to its net count.
    const long long per_batch = std::min<long long>(n_windows, 10000);
    const long long n_batches = (n_windows + per_batch - 1) / per_batch;
    std::vector<std::vector<long long>> batches(
        static_cast<std::size_t>(n_batches));
    parallel_for_index(batches.size(), [&](std::size_t b) {
        const long long lo = static_cast<long long>(b) * per_batch;
        const long long count = std::min(per_batch, n_windows - lo);
        batches[b] = simulate(rates, window * static_cast<double>(count),
                              trajectory_seed(master_seed, b), window)
                         .window_counts;
    });

    std::map<long long, long long> hist;
    long long total = 0;
    for (const auto& batch : batches)
        for (long long qv : batch) {
            ++hist[qv];
            ++total;
        }

    FtHistogram out;
    out.total_windows = total;
    out.min_count = min_count;
    out.model_affinity = affinity(p).value;

    for (const auto& [qv, c] : hist) {
        FtHistogramRow row;
        row.q = qv;
        row.count = c;
        row.model = static_cast<double>(qv) * out.model_affinity;
        const auto mirror = hist.find(-qv);
        if (mirror != hist.end() && c >= min_count &&
            mirror->second >= min_count)
            row.ln_ratio = std::log(static_cast<double>(c)) -
                           std::log(static_cast<double>(mirror->second));
        out.rows.push_back(row);
        if (c >= min_count) ++out.bins_with_min_count;
    }

    // Least-squares slope through the origin of ln P(q)/P(-q) vs q over the
    // usable positive bins.
    double sqq = 0.0, sqy = 0.0;
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : out.rows) {
        if (row.q <= 0 || std::isnan(row.ln_ratio)) continue;
        const auto qd = static_cast<double>(row.q);
        pts.emplace_back(qd, row.ln_ratio);
        sqq += qd * qd;
        sqy += qd * row.ln_ratio;
    }
    out.usable_pairs = static_cast<int>(pts.size());
    out.sufficient = out.bins_with_min_count >= 5 && out.usable_pairs >= 2;
    if (out.usable_pairs >= 1 && sqq > 0.0) out.slope = sqy / sqq;
    if (out.usable_pairs >= 2) {
        double rss = 0.0;
        for (const auto& [qd, y] : pts) {
            const double res = y - out.slope * qd;
            rss += res * res;
        }
        out.slope_std_error = std::sqrt(
            rss / (static_cast<double>(out.usable_pairs - 1) * sqq));
    }
    return out;
}

}  // namespace sqfcs
