#pragma once

// Monte Carlo estimators for the quantities the solver computes exactly:
// discounted visit counts to a node set, and mean return times of the
// teleporting random walk.  Both estimators are deterministic for a fixed
// seed: trials are split across a fixed number of strata with independently
// derived seeds, so results do not depend on scheduling or worker count.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

// Small, fast, well-mixed 64-bit generator (SplitMix64).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) via 128-bit multiply-shift.
  std::uint64_t next_below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

  // Stateless finalizer, used to derive independent stream seeds.
  static std::uint64_t mix(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t state_;
};

struct SimConfig {
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  // Trajectories longer than this are cut off and reported in
  // truncated_mass.  The walk dies with probability 1-c per step, so with
  // the default damping the probability of ever hitting this bound is
  // astronomically small.
  int max_steps = 1000;
  // Worker threads.  Trials are pre-partitioned into fixed strata with
  // seeds derived from (seed, stratum), and stratum results are merged in
  // stratum order, so the estimate is bit-for-bit identical for any value.
  int threads = 1;
};

struct SimResult {
  double estimate = 0.0;
  double stderr_ = 0.0;        // standard error of the mean
  double truncated_mass = 0.0; // fraction of trials cut off at max_steps
  std::uint64_t trials = 0;
};

namespace detail {

inline constexpr int kStrata = 64;

inline std::uint64_t stratum_seed(std::uint64_t seed, int stratum) {
  return SplitMix64::mix(seed + 0x9E3779B97F4A7C15ULL *
                                    static_cast<std::uint64_t>(stratum + 1));
}

inline void check_sim_config(const SimConfig& cfg) {
  if (cfg.trials == 0) throw ValidationError("trials must be positive");
  if (cfg.max_steps < 1) throw ValidationError("max_steps must be positive");
  if (cfg.threads < 1) throw ValidationError("threads must be positive");
}

// Accumulates a running mean/variance over all trials.
struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t n = 0;
  std::uint64_t truncated = 0;

  void add(double x, bool was_truncated) {
    sum += x;
    sum_sq += x * x;
    ++n;
    if (was_truncated) ++truncated;
  }

  SimResult finish() const {
    SimResult r;
    r.trials = n;
    r.estimate = sum / static_cast<double>(n);
    if (n > 1) {
      const double mean = r.estimate;
      double var = (sum_sq - static_cast<double>(n) * mean * mean) /
                   static_cast<double>(n - 1);
      if (var < 0.0) var = 0.0; // guard against rounding
      r.stderr_ = std::sqrt(var / static_cast<double>(n));
    }
    r.truncated_mass =
        static_cast<double>(truncated) / static_cast<double>(n);
    return r;
  }
};

// Splits cfg.trials across the fixed strata and runs `trial(rng)` for each.
// Each stratum has its own derived seed and its own accumulator, and the
// per-stratum results are merged in stratum order, so the estimate is
// bit-for-bit reproducible for a given seed regardless of thread count.
template <typename Trial>
SimResult run_stratified(const SimConfig& cfg, Trial&& trial) {
  check_sim_config(cfg);
  const std::uint64_t base = cfg.trials / kStrata;
  const std::uint64_t rem = cfg.trials % kStrata;
  std::vector<Accumulator> parts(kStrata);
  const auto run_stratum = [&](int s) {
    const std::uint64_t count =
        base + (static_cast<std::uint64_t>(s) < rem ? 1 : 0);
    SplitMix64 rng(stratum_seed(cfg.seed, s));
    Accumulator& acc = parts[static_cast<std::size_t>(s)];
    for (std::uint64_t t = 0; t < count; ++t) {
      bool truncated = false;
      const double x = trial(rng, truncated);
      acc.add(x, truncated);
    }
  };
  const int workers = std::min(cfg.threads, kStrata);
  if (workers <= 1) {
    for (int s = 0; s < kStrata; ++s) run_stratum(s);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int s = w; s < kStrata; s += workers) run_stratum(s);
      });
    }
    for (auto& t : pool) t.join();
  }
  Accumulator total;
  for (const Accumulator& a : parts) {
    total.sum += a.sum;
    total.sum_sq += a.sum_sq;
    total.n += a.n;
    total.truncated += a.truncated;
  }
  return total.finish();
}

} // namespace detail

// Estimates the expected number of visits the damped walk started at
// `start` pays to the set I before dying.  The walk counts its current
// position (including the start), survives each step with probability c,
// and then moves to a uniformly random child; nodes without children
// absorb the walk.  This is the Monte Carlo counterpart of visit_vector.
inline SimResult simulate_visits(const WebGraph& g, const NodeSet& I,
                                 const RankingContext& ctx, int start,
                                 const SimConfig& cfg) {
  ctx.validate(g.n());
  if (start < 1 || start > g.n())
    throw ValidationError("start node out of range");
  std::vector<char> in_set(static_cast<std::size_t>(g.n()) + 1, 0);
  for (int i : I) {
    if (i < 1 || i > g.n()) throw ValidationError("node set out of range");
    in_set[static_cast<std::size_t>(i)] = 1;
  }
  const double c = ctx.c;
  return detail::run_stratified(cfg, [&](SplitMix64& rng, bool& truncated) {
    int x = start;
    double count = in_set[static_cast<std::size_t>(x)] ? 1.0 : 0.0;
    for (int step = 0;; ++step) {
      if (rng.next_unit() >= c) break; // the walk dies here
      const auto& ch = g.children(x);
      if (ch.empty()) break; // absorbed: no further moves
      if (step >= cfg.max_steps) {
        truncated = true;
        break;
      }
      x = ch[static_cast<std::size_t>(rng.next_below(ch.size()))];
      count += in_set[static_cast<std::size_t>(x)] ? 1.0 : 0.0;
    }
    return count;
  });
}

// Estimates the mean return time of the teleporting walk to `node`: with
// probability c the walk follows a uniformly random outlink, otherwise (or
// from a node without outlinks) it jumps to a node drawn from the
// personalization distribution.  For that chain the mean return time to a
// node equals the reciprocal of its ranking weight.
inline SimResult simulate_return_time(const WebGraph& g,
                                      const RankingContext& ctx, int node,
                                      const SimConfig& cfg) {
  ctx.validate(g.n());
  if (node < 1 || node > g.n())
    throw ValidationError("node out of range");
  const double c = ctx.c;
  // Cumulative personalization weights for inverse-CDF sampling.
  std::vector<double> cum(static_cast<std::size_t>(g.n()));
  double acc = 0.0;
  for (int k = 0; k < g.n(); ++k) {
    acc += ctx.z[static_cast<std::size_t>(k)];
    cum[static_cast<std::size_t>(k)] = acc;
  }
  cum.back() = 1.0; // close the interval against rounding
  const auto zap = [&](double u) {
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const auto idx = static_cast<int>(it - cum.begin());
    return std::min(idx, g.n() - 1) + 1;
  };
  return detail::run_stratified(cfg, [&](SplitMix64& rng, bool& truncated) {
    int x = node;
    double steps = 0.0;
    for (;;) {
      const double u = rng.next_unit();
      const auto& ch = g.children(x);
      if (u < c && !ch.empty()) {
        x = ch[static_cast<std::size_t>(rng.next_below(ch.size()))];
      } else {
        x = zap(rng.next_unit());
      }
      steps += 1.0;
      if (x == node) break;
      if (steps >= static_cast<double>(cfg.max_steps)) {
        truncated = true;
        break;
      }
    }
    return steps;
  });
}

} // namespace linkopt
