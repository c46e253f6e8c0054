#pragma once

#include <mutex>
#include <unordered_map>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/pagerank.hpp"
#include "linkopt/solver.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

// A single-node outlink rewrite: node keeps the rest of the graph and
// replaces its whole child set. Expressing edits this way makes the row
// correction a rank-one update; convenience builders below derive the
// replacement set for "add one link" / "remove one link".
struct OutlinkMutation {
  int node = 0;
  NodeSet new_children;  // nonempty

  void validate(const WebGraph& g) const {
    if (node < 1 || node > g.n()) {
      throw ValidationError("mutation node " + std::to_string(node) +
                            " out of range");
    }
    if (new_children.empty()) {
      throw PreconditionError("a node must keep at least one outlink");
    }
    for (int j : new_children) {
      if (j < 1 || j > g.n()) {
        throw ValidationError("replacement child " + std::to_string(j) +
                              " out of range");
      }
    }
  }
};

inline OutlinkMutation mutation_from_add(const WebGraph& g, int i, int j) {
  if (g.has_edge(i, j)) {
    throw PreconditionError("edge (" + std::to_string(i) + "," +
                            std::to_string(j) + ") already present");
  }
  NodeSet ch = g.children(i);
  ch.push_back(j);
  return {i, normalized(ch)};
}

inline OutlinkMutation mutation_from_remove(const WebGraph& g, int i, int j) {
  if (!g.has_edge(i, j)) {
    throw PreconditionError("edge (" + std::to_string(i) + "," +
                            std::to_string(j) + ") not present");
  }
  if (g.out_degree(i) < 2) {
    throw PreconditionError("removing (" + std::to_string(i) + "," +
                            std::to_string(j) + ") would leave node " +
                            std::to_string(i) + " without outlinks");
  }
  NodeSet ch;
  for (int k : g.children(i)) {
    if (k != j) ch.push_back(k);
  }
  return {i, ch};
}

// The correction to the mutated node's row of P: new uniform row minus old
// uniform row. Entries sum to zero and lie in [-1, 1].
struct DeltaVector {
  std::vector<double> delta;
};

inline DeltaVector delta_vector(const WebGraph& g, const OutlinkMutation& m) {
  m.validate(g);
  const auto& old_children = g.children(m.node);
  if (old_children.empty()) {
    throw PreconditionError("node " + std::to_string(m.node) +
                            " has no outlinks to rewrite");
  }
  std::vector<double> delta(static_cast<std::size_t>(g.n()), 0.0);
  const double win = 1.0 / static_cast<double>(m.new_children.size());
  for (int j : m.new_children) delta[static_cast<std::size_t>(j - 1)] += win;
  const double wout = 1.0 / static_cast<double>(old_children.size());
  for (int j : old_children) delta[static_cast<std::size_t>(j - 1)] -= wout;
  return {delta};
}

// Everything one evaluation reports: the closed-form updated value, the
// quantities it is built from, and the sign decision with its margin.
struct MutationEffect {
  double old_value = 0.0;
  double new_value = 0.0;
  double delta_dot_v = 0.0;   // the sign-deciding inner product
  double denominator = 0.0;   // 1 - c * delta^T (I - cP)^{-1} e_node, >= 1 - c
  ChangeSign sign = ChangeSign::unchanged;
  double margin = 0.0;        // |delta_dot_v| against the unchanged-band width
  double threshold = 0.0;     // the band: max(1e-12, 1e-9 * |v|_inf)
};

// Evaluates many single-node mutations against one (graph, I, context)
// without re-solving: the factorization, v, pi, and the per-node columns of
// (I - cP)^{-1} are computed once and cached. Scanning the candidate edits of
// one node therefore costs O(1) linear solves in total. Instances are safe
// for concurrent evaluate() calls; the column cache is mutex-guarded.
class MutationEvaluator {
 public:
  MutationEvaluator(WebGraph g, NodeSet I, RankingContext ctx,
                    SolveRoute route = SolveRoute::automatic)
      : g_(std::move(g)),
        I_(std::move(I)),
        ctx_(std::move(ctx)),
        solver_(g_, ctx_.c, route) {
    ctx_.validate(g_.n());
    if (I_.empty()) throw PreconditionError("node set must be nonempty");
    pi_ = pagerank(g_, ctx_, route).pi;
    v_ = solver_.solve(indicator_vector(g_.n(), I_));
    double dot = 0.0;
    double vmax = 0.0;
    for (std::size_t k = 0; k < v_.size(); ++k) {
      dot += ctx_.z[k] * v_[k];
      vmax = std::max(vmax, std::abs(v_[k]));
    }
    value_ = (1.0 - ctx_.c) * dot;
    threshold_ = std::max(tol::kEqAbs, tol::kEqRel * vmax);
  }

  const WebGraph& graph() const { return g_; }
  const NodeSet& node_set() const { return I_; }
  const RankingContext& context() const { return ctx_; }
  const std::vector<double>& visit_values() const { return v_; }
  const std::vector<double>& pagerank_values() const { return pi_; }
  double original_value() const { return value_; }

  MutationEffect evaluate(const OutlinkMutation& m) const {
    const DeltaVector dv = delta_vector(g_, m);
    double ddv = 0.0;
    for (std::size_t k = 0; k < v_.size(); ++k) ddv += dv.delta[k] * v_[k];
    const std::vector<double>& u = column(m.node);
    double ddu = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) ddu += dv.delta[k] * u[k];

    MutationEffect eff;
    eff.old_value = value_;
    eff.delta_dot_v = ddv;
    eff.denominator = 1.0 - ctx_.c * ddu;
    eff.threshold = threshold_;
    eff.margin = std::abs(ddv);
    const double pi_node = pi_[static_cast<std::size_t>(m.node - 1)];
    eff.new_value = value_ + ctx_.c * pi_node * ddv / eff.denominator;
    if (std::abs(ddv) <= threshold_) {
      // Boundary calls resolve conservatively: a sign is only claimed when
      // the inner product clears the equality band.
      eff.sign = ChangeSign::unchanged;
      eff.new_value = value_;
    } else {
      eff.sign = ddv > 0.0 ? ChangeSign::increase : ChangeSign::decrease;
    }
    return eff;
  }

 private:
  const std::vector<double>& column(int node) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = columns_.find(node);
    if (it == columns_.end()) {
      it = columns_.emplace(node, solver_.solve(indicator_vector(g_.n(), {node})))
               .first;
    }
    return it->second;
  }

  WebGraph g_;
  NodeSet I_;
  RankingContext ctx_;
  LinearSolver solver_;
  std::vector<double> pi_;
  std::vector<double> v_;
  double value_ = 0.0;
  double threshold_ = 0.0;
  mutable std::mutex cache_mutex_;
  mutable std::unordered_map<int, std::vector<double>> columns_;
};

// Closed-form set value after applying the mutation, without rebuilding the
// graph: old + c * pi_node * (delta^T v) / (1 - c * delta^T (I-cP)^{-1} e_node).
inline double updated_set_pagerank(const WebGraph& g, const NodeSet& I,
                                   const RankingContext& ctx,
                                   const OutlinkMutation& m,
                                   SolveRoute route = SolveRoute::automatic) {
  MutationEvaluator eval(g, I, ctx, route);
  const MutationEffect eff = eval.evaluate(m);
  // Report the raw closed form, not the band-clamped value.
  return eff.old_value +
         ctx.c * eval.pagerank_values()[static_cast<std::size_t>(m.node - 1)] *
             eff.delta_dot_v / eff.denominator;
}

inline ChangeSign change_sign(const WebGraph& g, const NodeSet& I,
                              const RankingContext& ctx, const OutlinkMutation& m,
                              SolveRoute route = SolveRoute::automatic) {
  return MutationEvaluator(g, I, ctx, route).evaluate(m).sign;
}

// ---------------------------------------------------------------------------
// Add-link rule. For i in I with current children no worse than the new
// target (v_i <= v_j), adding (i, j) raises the set value unless i cannot
// reach the complement at all, in which case nothing changes. Calls where
// v_i > v_j fall outside the rule's hypothesis and return `inapplicable`.
// ---------------------------------------------------------------------------
inline LinkRuleResult add_link_effect(const WebGraph& g, const NodeSet& I,
                                      const RankingContext& ctx, int i, int j) {
  if (!set_contains(I, i)) {
    throw PreconditionError("source node " + std::to_string(i) +
                            " is not in the node set");
  }
  if (g.has_edge(i, j)) {
    throw PreconditionError("edge (" + std::to_string(i) + "," +
                            std::to_string(j) + ") already present");
  }
  if (g.out_degree(i) == 0) {
    throw PreconditionError("node " + std::to_string(i) +
                            " has no outlinks to rewrite");
  }
  const VisitVector vv = visit_vector(g, I, ctx);
  const double vi = vv.v[static_cast<std::size_t>(i - 1)];
  const double vj = vv.v[static_cast<std::size_t>(j - 1)];
  if (definitely_greater(vi, vj)) return LinkRuleResult::inapplicable;
  const NodeSet outside = complement_of(g.n(), I);
  return has_access(g, i, outside) ? LinkRuleResult::increase
                                   : LinkRuleResult::unchanged;
}

// ---------------------------------------------------------------------------
// Remove-link rule. Dropping (i, j) where j has the smallest v among i's
// children raises the set value, except when all children tie (then nothing
// changes). If j is not an argmin child the rule does not apply -- merely
// v_j < v_i is not enough to conclude anything.
// ---------------------------------------------------------------------------
inline LinkRuleResult remove_link_effect(const WebGraph& g, const NodeSet& I,
                                         const RankingContext& ctx, int i, int j) {
  if (!g.has_edge(i, j)) {
    throw PreconditionError("edge (" + std::to_string(i) + "," +
                            std::to_string(j) + ") not present");
  }
  if (g.out_degree(i) < 2) {
    throw PreconditionError("removing the last outlink of node " +
                            std::to_string(i) + " is not allowed");
  }
  const VisitVector vv = visit_vector(g, I, ctx);
  double vmin = vv.v[static_cast<std::size_t>(g.children(i).front() - 1)];
  double vmax = vmin;
  for (int k : g.children(i)) {
    const double vk = vv.v[static_cast<std::size_t>(k - 1)];
    vmin = std::min(vmin, vk);
    vmax = std::max(vmax, vk);
  }
  if (!nearly_equal(vv.v[static_cast<std::size_t>(j - 1)], vmin)) {
    return LinkRuleResult::inapplicable;
  }
  return nearly_equal(vmax, vmin) ? LinkRuleResult::unchanged
                                  : LinkRuleResult::increase;
}

// ---------------------------------------------------------------------------
// For a node with no path to the complement, deleting any single outlink
// leaves the set value untouched. Verifies that claim edit by edit and
// returns whether every deletion indeed lands in the unchanged band.
// ---------------------------------------------------------------------------
inline bool removal_no_access_noop(const WebGraph& g, const NodeSet& I,
                                   const RankingContext& ctx, int i) {
  const NodeSet outside = complement_of(g.n(), I);
  if (has_access(g, i, outside)) {
    throw PreconditionError("node " + std::to_string(i) +
                            " can reach the complement; the no-op claim does "
                            "not apply");
  }
  if (g.out_degree(i) < 2) return true;  // no deletion keeps the node linked
  MutationEvaluator eval(g, I, ctx);
  for (int j : g.children(i)) {
    if (eval.evaluate(mutation_from_remove(g, i, j)).sign !=
        ChangeSign::unchanged) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Greedy descent: from a start node in I that can reach the complement,
// repeatedly step to the child with the smallest v (smallest id on ties).
// The returned node list starts at i0, stays in I until the last step, ends
// outside I, and has strictly decreasing v.
// ---------------------------------------------------------------------------
inline std::vector<int> decreasing_path(const WebGraph& g, const NodeSet& I,
                                        const RankingContext& ctx, int i0) {
  if (!set_contains(I, i0)) {
    throw PreconditionError("start node " + std::to_string(i0) +
                            " is not in the node set");
  }
  const NodeSet outside = complement_of(g.n(), I);
  if (!has_access(g, i0, outside)) {
    throw AccessibilityError("start node " + std::to_string(i0) +
                             " cannot reach the complement");
  }
  const VisitVector vv = visit_vector(g, I, ctx);
  std::vector<int> path{i0};
  int cur = i0;
  for (int guard = 0; guard <= g.n(); ++guard) {
    if (!set_contains(I, cur)) return path;
    const auto& ch = g.children(cur);
    if (ch.empty()) break;  // cannot happen for an accessible start
    int best = ch.front();
    for (int k : ch) {
      if (vv.v[static_cast<std::size_t>(k - 1)] <
          vv.v[static_cast<std::size_t>(best - 1)]) {
        best = k;
      }
    }
    path.push_back(best);
    cur = best;
  }
  throw Error("descent failed to leave the node set; accessibility violated?");
}

}  // namespace linkopt
