#pragma once

// Shared test fixtures and independent oracles.
//
// The graphs here are frozen by the regression values in the test files;
// the oracles (reachability closure, explicit ranking residuals, recompute
// paths) are deliberately implemented with different algorithms than the
// library so that agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "linkopt/linkopt.hpp"

namespace fixtures {

using linkopt::Edge;
using linkopt::NodeSet;
using linkopt::RankingContext;
using linkopt::SplitMix64;
using linkopt::WebGraph;

// ---------------------------------------------------------------- graphs

// Two-node cycle.
inline WebGraph c2() { return WebGraph::from_edges(2, {{1, 2}, {2, 1}}); }

// Three-node cycle 1 -> 2 -> 3 -> 1.
inline WebGraph c3() {
  return WebGraph::from_edges(3, {{1, 2}, {2, 3}, {3, 1}});
}

// Chain 1 -> 2 -> 3 with a self-loop on 3.
inline WebGraph chain3() {
  return WebGraph::from_edges(3, {{1, 2}, {2, 3}, {3, 3}});
}

// 11-node graph: 1 self-links; {2,3,4} clique back to 1; 5 feeds the
// clique; 6..11 long feeder cycle via 1 and 11.
inline WebGraph fig2() {
  return WebGraph::from_edges(
      11, {{1, 1}, {2, 1}, {2, 3}, {2, 4},  {3, 1},  {3, 2},  {3, 4},
           {4, 1}, {4, 2}, {4, 3}, {5, 2},  {5, 3},  {5, 4},  {5, 6},
           {6, 1}, {6, 11}, {7, 6}, {8, 7}, {9, 8},  {10, 9}, {11, 10}});
}

// Variant of fig2 with node 1's outlinks replaced by `own`; the rest of
// the graph (the "surrounding") is kept.
inline WebGraph fig2_with_node1(const std::vector<int>& own) {
  return fig2().with_children(1, own);
}

// Surrounding of fig2 only (node 1 dangling) — the fixed part for
// structure searches over the singleton {1}.
inline WebGraph fig2_surrounding() {
  std::vector<Edge> es;
  for (const Edge& e : fig2().edges())
    if (e.first != 1) es.push_back(e);
  return WebGraph::from_edges(11, es);
}

// 7-node graph around the set {1,2,3}.
inline WebGraph ex8() {
  return WebGraph::from_edges(7, {{1, 2}, {1, 3}, {2, 3}, {3, 4},
                                  {4, 5}, {4, 6}, {4, 7}, {5, 4},
                                  {6, 1}, {6, 7}, {7, 5}, {7, 7}});
}

// Two candidate structures for {1,2,3} with the surrounding edge (4,2).
inline WebGraph ex12a() {
  return WebGraph::from_edges(4, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3},
                                  {3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 2}});
}
inline WebGraph ex12b() {
  return WebGraph::from_edges(4, {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2},
                                  {3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 2}});
}
inline WebGraph ex12_surrounding() {
  return WebGraph::from_edges(4, {{4, 2}});
}

// Two-node website at its optimum inside a three-node world.
inline WebGraph ex15() {
  return WebGraph::from_edges(3, {{1, 1}, {1, 2}, {2, 1},
                                  {2, 2}, {2, 3}, {3, 1}});
}

// Five-node cycle.
inline WebGraph ex16() {
  return WebGraph::from_edges(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 1}});
}

// Fixed internal structure for {1..5} with final classes {3,4} and {5},
// plus a small surrounding.
inline WebGraph ex5() {
  return WebGraph::from_edges(8, {{1, 2}, {2, 3}, {2, 5}, {3, 4},
                                  {4, 3}, {6, 1}, {7, 1}, {8, 6}});
}

// Chain website {1..5} with every backlink and one exit, inside a 7-node
// cycle world.
inline WebGraph fig1() {
  std::vector<Edge> es;
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      if (j <= i || j == i + 1) es.emplace_back(i, j);
  es.emplace_back(5, 6);
  es.emplace_back(6, 7);
  es.emplace_back(7, 1);
  return WebGraph::from_edges(7, es);
}

// {1,2} closed among themselves; 3 points in but cannot be reached.
inline WebGraph no_access() {
  return WebGraph::from_edges(3, {{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}});
}

// Surroundings used by the exit-placement regression: externals form a
// path back into {1,2}.
inline WebGraph rule3(int exit_target) {
  return WebGraph::from_edges(5, {{3, 1}, {4, 3}, {5, 4}, {1, 1}, {1, 2},
                                  {2, 1}, {2, 2}, {2, exit_target}});
}

// ------------------------------------------------------------- oracles

// Reflexive-transitive reachability by Floyd-Warshall; reach[i][j] is true
// iff j is reachable from i (including i itself).  Independent of the
// library's BFS.
inline std::vector<std::vector<bool>> closure(const WebGraph& g) {
  const std::size_t n = static_cast<std::size_t>(g.n());
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
  for (int i = 1; i <= g.n(); ++i)
    for (int j : g.children(i))
      reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] =
          true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (reach[k][j]) reach[i][j] = true;
    }
  return reach;
}

// has_access oracle built on the closure: node i can reach some member of
// J by a path of length >= 0.
inline bool reaches_set(const std::vector<std::vector<bool>>& reach, int i,
                        const NodeSet& J) {
  for (int j : J)
    if (reach[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)])
      return true;
  return false;
}

// --------------------------------------------------- random instances

struct RandomGraphOptions {
  int min_n = 2;
  int max_n = 30;
  int max_out_degree = 4;
  bool allow_self = true;
};

// Random graph where every node has between 1 and max_out_degree distinct
// children — no dangling nodes, so ranking vectors always exist.
inline WebGraph random_graph(SplitMix64& rng, const RandomGraphOptions& opt) {
  const int n =
      opt.min_n + static_cast<int>(rng.next_below(
                      static_cast<std::uint64_t>(opt.max_n - opt.min_n + 1)));
  std::vector<Edge> es;
  for (int i = 1; i <= n; ++i) {
    const int want =
        1 + static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(opt.max_out_degree)));
    NodeSet children;
    int guard = 0;
    while (static_cast<int>(children.size()) < std::min(want, n) &&
           guard++ < 64) {
      int j = 1 + static_cast<int>(
                      rng.next_below(static_cast<std::uint64_t>(n)));
      if (!opt.allow_self && j == i) continue;
      if (!linkopt::set_contains(children, j)) {
        children.push_back(j);
        std::sort(children.begin(), children.end());
      }
    }
    if (children.empty()) children.push_back(i == 1 ? n : 1);
    for (int j : children) es.emplace_back(i, j);
  }
  return WebGraph::from_edges(n, es);
}

// Random nonempty proper subset of {1..n} with at most max_size members.
inline NodeSet random_proper_subset(SplitMix64& rng, int n, int max_size) {
  const int size =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
              std::min(max_size, n - 1))));
  NodeSet all;
  for (int i = 1; i <= n; ++i) all.push_back(i);
  for (int k = 0; k < size; ++k) {
    const auto pick = k + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(all.size()) -
                              static_cast<std::uint64_t>(k)));
    std::swap(all[static_cast<std::size_t>(k)],
              all[static_cast<std::size_t>(pick)]);
  }
  all.resize(static_cast<std::size_t>(size));
  return linkopt::normalized(all);
}

// Random positive stochastic personalization vector, bounded away from
// zero so its entries stay meaningful.
inline RankingContext random_context(SplitMix64& rng, int n, double c) {
  RankingContext ctx;
  ctx.c = c;
  ctx.z.resize(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& w : ctx.z) {
    w = 0.05 + rng.next_unit();
    sum += w;
  }
  for (double& w : ctx.z) w /= sum;
  // Compensate rounding so the validator's exact-sum check passes.
  double total = 0.0;
  for (double w : ctx.z) total += w;
  ctx.z.back() += 1.0 - total;
  return ctx;
}

// Random instance for the optimization properties: a small world split
// into the website I = {1..i} and its surrounding, whose own links (rows
// of the complement) are random but never dangling.
struct SmallInstance {
  WebGraph surrounding; // rows of I empty; complement rows filled
  NodeSet I;
  RankingContext ctx;
};

inline SmallInstance random_small_instance(SplitMix64& rng, int set_size,
                                           int outside_size, double c,
                                           bool uniform_z) {
  const int n = set_size + outside_size;
  std::vector<Edge> es;
  for (int e = set_size + 1; e <= n; ++e) {
    // Each external node links to 1..3 distinct nodes anywhere.
    const int want = 1 + static_cast<int>(rng.next_below(3));
    NodeSet children;
    int guard = 0;
    while (static_cast<int>(children.size()) < std::min(want, n) &&
           guard++ < 32) {
      const int j =
          1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
      if (!linkopt::set_contains(children, j)) {
        children.push_back(j);
        std::sort(children.begin(), children.end());
      }
    }
    for (int j : children) es.emplace_back(e, j);
  }
  SmallInstance inst{WebGraph::from_edges(n, es), {}, RankingContext{}};
  for (int i = 1; i <= set_size; ++i) inst.I.push_back(i);
  inst.ctx = uniform_z ? RankingContext::uniform(n, c)
                       : random_context(rng, n, c);
  return inst;
}

} // namespace fixtures
