#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/pagerank.hpp"
#include "linkopt/structure.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

// One candidate assignment of the links controlled by the site owner: the
// edges inside I and the edges leaving I. Everything else (edges into I and
// among the outside) is fixed by the instance.
struct Configuration {
  std::vector<Edge> internal;      // within I, ascending
  std::vector<Edge> external_out;  // I to outside, ascending
  double value = 0.0;              // set value once evaluated
};

// Which halves of the configuration to enumerate. Fixing one half keeps the
// corresponding edges of the instance graph as they are, which is how the
// one-sided experiments (outlinks only / internal only) are expressed.
struct EnumerationOptions {
  bool fix_internal = false;
  bool fix_external = false;
  int cap_bits = 25;  // refuse more than 2^cap_bits raw candidates
};

struct BruteForceResult {
  std::vector<Configuration> optima;  // all argmax ties, enumeration order
  double value = 0.0;
  std::uint64_t count_enumerated = 0;  // admissible configurations evaluated
  double top2_gap = 0.0;  // best value minus best non-optimal value (0 if none)
  // For target runs only: per optimum, whether the edges of the target
  // subset and its exits form the website shape with respect to the subset.
  std::vector<bool> target_sub_shape;
};

// The instance graph with the controlled edges replaced by a configuration.
inline WebGraph configuration_graph(const WebGraph& g_fixed, const NodeSet& I,
                                    const Configuration& cfg) {
  std::vector<Edge> edges;
  for (const auto& e : g_fixed.edges()) {
    if (!set_contains(I, e.first)) edges.push_back(e);
  }
  edges.insert(edges.end(), cfg.internal.begin(), cfg.internal.end());
  edges.insert(edges.end(), cfg.external_out.begin(), cfg.external_out.end());
  return WebGraph::from_edges(g_fixed.n(), edges);
}

namespace detail {

struct EnumerationPlan {
  std::vector<Edge> internal_candidates;  // ascending (i, j)
  std::vector<Edge> external_candidates;  // ascending (i, j)
  std::vector<Edge> fixed_internal;
  std::vector<Edge> fixed_external;
  NodeSet outside;
  int k = 0;  // |I|
};

inline EnumerationPlan make_plan(const WebGraph& g_fixed, const NodeSet& I,
                                 const StructureConstraints& constraints,
                                 const EnumerationOptions& opts) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  EnumerationPlan plan;
  plan.outside = complement_of(g_fixed.n(), I);
  if (plan.outside.empty()) {
    throw AccessibilityUndefinedError(
        "admissibility is undefined: the complement of the node set is empty");
  }
  plan.k = static_cast<int>(I.size());
  if (plan.k > 64) throw CapExceededError("node set too large to enumerate");

  const LinkPartition part = partition_links(g_fixed, I);
  if (opts.fix_internal) {
    plan.fixed_internal = part.internal;
  } else {
    for (int i : I) {
      for (int j : I) {
        if (i == j && !constraints.allow_self_links) continue;
        plan.internal_candidates.emplace_back(i, j);
      }
    }
  }
  if (opts.fix_external) {
    plan.fixed_external = part.out;
  } else {
    for (int i : I) {
      for (int j : plan.outside) plan.external_candidates.emplace_back(i, j);
    }
  }
  const std::size_t bits =
      plan.internal_candidates.size() + plan.external_candidates.size();
  if (bits > static_cast<std::size_t>(opts.cap_bits)) {
    throw CapExceededError("enumeration needs " + std::to_string(bits) +
                           " free bits, cap is " + std::to_string(opts.cap_bits));
  }
  return plan;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Yields every configuration that satisfies the constraints and keeps a path
// from each node of I to the outside. Order is deterministic: internal edge
// subsets as ascending bitmasks over the ascending candidate list, then
// external subsets the same way. The visitor receives the configuration and
// its assembled graph; returning false stops early. Returns the number of
// configurations visited.
// ---------------------------------------------------------------------------
inline std::uint64_t enumerate_admissible(
    const WebGraph& g_fixed, const NodeSet& I,
    const StructureConstraints& constraints, const EnumerationOptions& opts,
    const std::function<bool(const Configuration&, const WebGraph&)>& visit) {
  const detail::EnumerationPlan plan =
      detail::make_plan(g_fixed, I, constraints, opts);
  const int k = plan.k;
  const int n_out = static_cast<int>(plan.outside.size());
  const int min_exits = std::max(1, constraints.min_external_outlinks);

  // Compact index of a node of I.
  const auto index_of = [&](int node) {
    return static_cast<int>(std::lower_bound(I.begin(), I.end(), node) -
                            I.begin());
  };

  // Fixed halves contribute constant adjacency / exit masks.
  std::uint64_t fixed_leak = 0;
  for (const auto& e : plan.fixed_external) {
    fixed_leak |= std::uint64_t{1} << index_of(e.first);
  }
  std::vector<std::uint64_t> fixed_adj(static_cast<std::size_t>(k), 0);
  for (const auto& e : plan.fixed_internal) {
    fixed_adj[static_cast<std::size_t>(index_of(e.first))] |=
        std::uint64_t{1} << index_of(e.second);
  }

  const std::uint64_t internal_masks =
      std::uint64_t{1} << plan.internal_candidates.size();
  const std::uint64_t external_masks =
      std::uint64_t{1} << plan.external_candidates.size();

  std::uint64_t visited = 0;
  std::vector<std::uint64_t> reach(static_cast<std::size_t>(k));
  Configuration cfg;
  for (std::uint64_t imask = 0; imask < internal_masks; ++imask) {
    // Adjacency over I for this internal choice.
    std::vector<std::uint64_t> adj = fixed_adj;
    for (std::size_t b = 0; b < plan.internal_candidates.size(); ++b) {
      if (imask >> b & 1) {
        const auto& e = plan.internal_candidates[b];
        adj[static_cast<std::size_t>(index_of(e.first))] |=
            std::uint64_t{1} << index_of(e.second);
      }
    }
    // Transitive closure including the node itself.
    for (int a = 0; a < k; ++a) {
      reach[static_cast<std::size_t>(a)] =
          adj[static_cast<std::size_t>(a)] | (std::uint64_t{1} << a);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (int a = 0; a < k; ++a) {
        std::uint64_t r = reach[static_cast<std::size_t>(a)];
        std::uint64_t next = r;
        for (int b = 0; b < k; ++b) {
          if (r >> b & 1) next |= reach[static_cast<std::size_t>(b)];
        }
        if (next != r) {
          reach[static_cast<std::size_t>(a)] = next;
          changed = true;
        }
      }
    }

    cfg.internal = plan.fixed_internal;
    for (std::size_t b = 0; b < plan.internal_candidates.size(); ++b) {
      if (imask >> b & 1) cfg.internal.push_back(plan.internal_candidates[b]);
    }

    for (std::uint64_t emask = 0; emask < external_masks; ++emask) {
      // Exit count and per-node leak mask.
      int exits = static_cast<int>(plan.fixed_external.size());
      std::uint64_t leak = fixed_leak;
      if (!plan.external_candidates.empty()) {
        exits += __builtin_popcountll(emask);
        // Candidates are grouped by source: node index b / n_out.
        std::uint64_t rest = emask;
        while (rest) {
          const int b = __builtin_ctzll(rest);
          rest &= rest - 1;
          leak |= std::uint64_t{1} << (b / n_out);
        }
      }
      if (exits < min_exits) continue;
      bool ok = true;
      for (int a = 0; a < k; ++a) {
        if ((reach[static_cast<std::size_t>(a)] & leak) == 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;

      cfg.external_out = plan.fixed_external;
      for (std::size_t b = 0; b < plan.external_candidates.size(); ++b) {
        if (emask >> b & 1) cfg.external_out.push_back(plan.external_candidates[b]);
      }
      cfg.value = 0.0;
      ++visited;
      if (!visit(cfg, configuration_graph(g_fixed, I, cfg))) return visited;
    }
  }
  return visited;
}

// Convenience collector for small spaces.
inline std::vector<Configuration> enumerate_admissible(
    const WebGraph& g_fixed, const NodeSet& I,
    const StructureConstraints& constraints = {},
    const EnumerationOptions& opts = {}) {
  std::vector<Configuration> all;
  enumerate_admissible(g_fixed, I, constraints, opts,
                       [&](const Configuration& cfg, const WebGraph&) {
                         all.push_back(cfg);
                         return true;
                       });
  return all;
}

namespace detail {

// Shared maximizer: evaluates `objective` on every admissible configuration
// and keeps every argmax within the absolute tie tolerance, in enumeration
// order, together with the gap to the best non-optimal value.
inline BruteForceResult maximize(
    const WebGraph& g_fixed, const NodeSet& I,
    const StructureConstraints& constraints, const EnumerationOptions& opts,
    const std::function<double(const WebGraph&)>& objective) {
  BruteForceResult result;
  bool have_runner_up = false;
  double runner_up = 0.0;
  const auto demote = [&](double value) {
    if (!have_runner_up || value > runner_up) {
      have_runner_up = true;
      runner_up = value;
    }
  };
  result.count_enumerated = enumerate_admissible(
      g_fixed, I, constraints, opts,
      [&](const Configuration& cfg, const WebGraph& g) {
        const double value = objective(g);
        if (result.optima.empty() || value > result.value) {
          // New exact leader; ties are measured against it, so entries that
          // drop out of the band become runner-up material.
          result.value = value;
          const double cutoff = value - tol::kArgmaxAbs;
          std::vector<Configuration> kept;
          for (auto& o : result.optima) {
            if (o.value >= cutoff) kept.push_back(std::move(o));
            else demote(o.value);
          }
          result.optima.swap(kept);
          result.optima.push_back(cfg);
          result.optima.back().value = value;
        } else if (value >= result.value - tol::kArgmaxAbs) {
          result.optima.push_back(cfg);
          result.optima.back().value = value;
        } else {
          demote(value);
        }
        return true;
      });
  if (result.count_enumerated == 0) {
    throw PreconditionError(
        "no admissible configuration exists under these constraints");
  }
  result.top2_gap = have_runner_up ? result.value - runner_up : 0.0;
  return result;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ground-truth optimizer: maximize the set value over every admissible
// configuration. Returns all maximizers within 1e-12 of the best value (one
// common solver path defines the comparison), with the top-2 gap recorded.
// ---------------------------------------------------------------------------
inline BruteForceResult brute_force_optimum(
    const WebGraph& g_fixed, const NodeSet& I, const RankingContext& ctx,
    const StructureConstraints& constraints = {},
    const EnumerationOptions& opts = {}) {
  ctx.validate(g_fixed.n());
  return detail::maximize(g_fixed, I, constraints, opts,
                          [&](const WebGraph& g) {
                            return set_pagerank(g, I, ctx);
                          });
}

// ---------------------------------------------------------------------------
// Same search, but the objective is the value of a subset S of I while
// admissibility still concerns all of I. Each optimum additionally reports
// whether the S-edges and S-exits form the website shape with respect to S
// (a pattern that holds in the worked instances but is not a theorem, so it
// is reported, not asserted).
// ---------------------------------------------------------------------------
inline BruteForceResult brute_force_target(
    const WebGraph& g_fixed, const NodeSet& I, const NodeSet& S,
    const RankingContext& ctx, const StructureConstraints& constraints = {},
    const EnumerationOptions& opts = {}) {
  ctx.validate(g_fixed.n());
  if (S.empty()) throw PreconditionError("target subset must be nonempty");
  for (int s : S) {
    if (!set_contains(I, s)) {
      throw PreconditionError("target node " + std::to_string(s) +
                              " lies outside the node set");
    }
  }
  BruteForceResult result = detail::maximize(
      g_fixed, I, constraints, opts, [&](const WebGraph& g) {
        LinearSolver solver(g, ctx.c);
        const std::vector<double> vs =
            solver.solve(indicator_vector(g.n(), S));
        double dot = 0.0;
        for (std::size_t t = 0; t < vs.size(); ++t) dot += ctx.z[t] * vs[t];
        return (1.0 - ctx.c) * dot;
      });
  StructureConstraints shape = constraints;
  shape.min_external_outlinks = 1;
  shape.target_set.reset();
  for (const Configuration& cfg : result.optima) {
    const WebGraph g = configuration_graph(g_fixed, I, cfg);
    result.target_sub_shape.push_back(
        verify_website_opt_shape(g, S, ctx, shape).satisfied);
  }
  return result;
}

// ---------------------------------------------------------------------------
// Empirical probe of the open question: at an optimum under a uniform
// personalization with at least one edge entering I, does the node of I with
// the largest v always have an external parent? Reports one row per optimum
// and counts candidates against the claim; asserts nothing.
// ---------------------------------------------------------------------------
struct ProbeRow {
  Configuration config;
  int head = 0;                         // argmax of v over I (smallest id on ties)
  bool head_has_external_parent = false;
  bool some_parent_in_top_set = false;  // any external parent of head in V
};

struct ProbeReport {
  std::vector<ProbeRow> rows;
  std::uint64_t counterexample_candidates = 0;
  double value = 0.0;
  std::uint64_t count_enumerated = 0;
};

inline ProbeReport conjecture_probe(const WebGraph& g_fixed, const NodeSet& I,
                                    const RankingContext& ctx,
                                    const StructureConstraints& constraints = {},
                                    const EnumerationOptions& opts = {}) {
  ctx.validate(g_fixed.n());
  if (!ctx.is_uniform(g_fixed.n())) {
    throw PreconditionError("the probe requires a uniform personalization");
  }
  if (partition_links(g_fixed, I).in.empty()) {
    throw PreconditionError("the probe requires at least one edge entering "
                            "the node set");
  }
  const BruteForceResult best = brute_force_optimum(g_fixed, I, ctx,
                                                    constraints, opts);
  ProbeReport report;
  report.value = best.value;
  report.count_enumerated = best.count_enumerated;
  for (const Configuration& cfg : best.optima) {
    const WebGraph g = configuration_graph(g_fixed, I, cfg);
    const VisitVector vv = visit_vector(g, I, ctx);
    ProbeRow row;
    row.config = cfg;
    row.head = I.front();
    for (int i : I) {
      if (vv.v[static_cast<std::size_t>(i - 1)] >
          vv.v[static_cast<std::size_t>(row.head - 1)]) {
        row.head = i;
      }
    }
    const NodeSet top = detail::top_set_from(g, I, vv.v, nullptr);
    for (int p = 1; p <= g.n(); ++p) {
      if (set_contains(I, p)) continue;
      if (g.has_edge(p, row.head)) {
        row.head_has_external_parent = true;
        if (set_contains(top, p)) row.some_parent_in_top_set = true;
      }
    }
    if (!row.head_has_external_parent) ++report.counterexample_candidates;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace linkopt
