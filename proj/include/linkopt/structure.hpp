#pragma once

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/mutation.hpp"
#include "linkopt/pagerank.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

// Constraints a candidate link configuration must respect.
struct StructureConstraints {
  bool allow_self_links = true;
  // Minimum number of edges leaving the node set. 1 keeps accessibility;
  // larger values model sites forced to link out several times.
  int min_external_outlinks = 1;
  // When set, optimization targets the value of this subset of I instead of
  // all of I.
  std::optional<NodeSet> target_set;
};

// One broken rule: a stable identifier, the offending edges or nodes, and a
// numeric margin where the rule is quantitative.
struct Violation {
  std::string rule;
  std::vector<Edge> witness_edges;
  NodeSet witness_nodes;
  double margin = 0.0;
};

// Machine-checkable outcome of a structural check. `satisfied` holds exactly
// when `violations` is empty; `ordering` is the witness arrangement of the
// node set (by decreasing v). The separation fields report whether the
// smallest v inside the set still beats the largest v outside it -- true at
// every optimum, and useful diagnostics everywhere else.
struct StructureCertificate {
  bool satisfied = false;
  NodeSet ordering;
  std::vector<Violation> violations;
  NodeSet leaking_nodes;
  VisitVector v_snapshot;
  bool separation_holds = false;
  double separation_margin = 0.0;
  // Website-shape extras: the single exit's target and whether it lies in
  // the external top set (recorded, never required).
  std::optional<int> exit_target;
  bool exit_target_in_top_set = false;
};

namespace detail {

// External nodes tying the external maximum of v (the top set), plus the
// degenerate everything-ties case when nothing links into I.
inline NodeSet top_set_from(const WebGraph& g, const NodeSet& I,
                            const std::vector<double>& v, bool* all_zero) {
  const NodeSet outside = complement_of(g.n(), I);
  bool any_in = false;
  for (int j : outside) {
    for (int t : g.children(j)) {
      if (set_contains(I, t)) {
        any_in = true;
        break;
      }
    }
    if (any_in) break;
  }
  if (!any_in) {
    if (all_zero) *all_zero = true;
    return outside;
  }
  if (all_zero) *all_zero = false;
  double vmax = 0.0;
  for (int j : outside) vmax = std::max(vmax, v[static_cast<std::size_t>(j - 1)]);
  NodeSet top;
  for (int j : outside) {
    if (nearly_equal(v[static_cast<std::size_t>(j - 1)], vmax)) top.push_back(j);
  }
  return top;
}

inline void require_accessibility(const WebGraph& g, const NodeSet& I) {
  const NodeSet bad = accessibility_violations(g, I);
  if (!bad.empty()) {
    std::ostringstream msg;
    msg << "nodes without a path out of the set:";
    for (int i : bad) msg << ' ' << i;
    throw AccessibilityError(msg.str());
  }
}

inline void fill_separation(const WebGraph& g, const NodeSet& I,
                            const std::vector<double>& v,
                            StructureCertificate* cert) {
  const NodeSet outside = complement_of(g.n(), I);
  double min_in = v[static_cast<std::size_t>(I.front() - 1)];
  for (int i : I) min_in = std::min(min_in, v[static_cast<std::size_t>(i - 1)]);
  double max_out = 0.0;
  for (int j : outside) {
    max_out = std::max(max_out, v[static_cast<std::size_t>(j - 1)]);
  }
  cert->separation_margin = min_in - max_out;
  cert->separation_holds = definitely_greater(min_in, max_out);
}

// I sorted by decreasing v, smallest id first among ties.
inline NodeSet order_by_v(const NodeSet& I, const std::vector<double>& v) {
  NodeSet ord = I;
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    return v[static_cast<std::size_t>(a - 1)] > v[static_cast<std::size_t>(b - 1)];
  });
  return ord;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Outlink certificate: with the internal links taken as given, an optimal
// set of outgoing links must (a) start inside final classes of the internal
// subgraph, (b) start at the v-minimizers of their class, (c) point into
// the external top set, and (d) use exactly one exit per final class that
// has internal edges. Separation of v across the boundary is recorded as
// information.
// ---------------------------------------------------------------------------
inline StructureCertificate verify_outlink_structure(const WebGraph& g,
                                                     const NodeSet& I,
                                                     const RankingContext& ctx) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  detail::require_accessibility(g, I);
  ctx.validate(g.n());

  StructureCertificate cert;
  const VisitVector vv = visit_vector(g, I, ctx);
  const std::vector<double>& v = vv.v;
  cert.v_snapshot = vv;
  cert.ordering = detail::order_by_v(I, v);
  detail::fill_separation(g, I, v, &cert);

  const LinkPartition part = partition_links(g, I);
  for (const auto& e : part.out) cert.leaking_nodes.push_back(e.first);
  cert.leaking_nodes = normalized(cert.leaking_nodes);

  const std::vector<FinalClass> classes = final_classes(g, I);
  std::vector<int> class_of(static_cast<std::size_t>(g.n()) + 1, -1);
  for (std::size_t s = 0; s < classes.size(); ++s) {
    for (int i : classes[s].nodes) class_of[static_cast<std::size_t>(i)] =
        static_cast<int>(s);
  }
  const NodeSet top = detail::top_set_from(g, I, v, nullptr);

  std::vector<std::vector<Edge>> class_exits(classes.size());
  for (const auto& e : part.out) {
    const int s = class_of[static_cast<std::size_t>(e.first)];
    if (s < 0) {
      cert.violations.push_back({"exit-outside-final-class", {e}, {e.first}, 0.0});
      continue;
    }
    class_exits[static_cast<std::size_t>(s)].push_back(e);
    double vmin = v[static_cast<std::size_t>(classes[static_cast<std::size_t>(s)]
                                                 .nodes.front() -
                                             1)];
    for (int k : classes[static_cast<std::size_t>(s)].nodes) {
      vmin = std::min(vmin, v[static_cast<std::size_t>(k - 1)]);
    }
    const double vi = v[static_cast<std::size_t>(e.first - 1)];
    if (!nearly_equal(vi, vmin)) {
      cert.violations.push_back(
          {"leaker-not-class-argmin", {e}, {e.first}, vi - vmin});
    }
    if (!set_contains(top, e.second)) {
      double vtop = 0.0;
      for (int j : top) vtop = std::max(vtop, v[static_cast<std::size_t>(j - 1)]);
      cert.violations.push_back(
          {"exit-target-not-in-top-set",
           {e},
           {e.second},
           vtop - v[static_cast<std::size_t>(e.second - 1)]});
    }
  }
  for (std::size_t s = 0; s < classes.size(); ++s) {
    if (classes[s].has_internal_edges && class_exits[s].size() != 1) {
      cert.violations.push_back(
          {"multi-exit-final-class", class_exits[s], classes[s].nodes,
           static_cast<double>(class_exits[s].size()) - 1.0});
    }
  }
  cert.satisfied = cert.violations.empty();
  return cert;
}

namespace detail {

// Sandwich test used by the internal certificate: with nodes arranged as
// `ordering` (first `head_count` entries non-leaking), every backward or
// self link and the forward chain through the non-leaking prefix must be
// present, and nothing may exist beyond that except forward links among the
// leaking tail.
inline std::vector<Violation> sandwich_violations(const WebGraph& g,
                                                  const NodeSet& ordering,
                                                  int head_count) {
  const int k = static_cast<int>(ordering.size());
  std::vector<Violation> out;
  for (int a = 1; a <= k; ++a) {
    const int src = ordering[static_cast<std::size_t>(a - 1)];
    for (int b = 1; b <= k; ++b) {
      const int dst = ordering[static_cast<std::size_t>(b - 1)];
      const bool present = g.has_edge(src, dst);
      const bool required = b <= a || (b == a + 1 && a <= head_count);
      const bool allowed = required || (a > head_count && b > head_count && a < b);
      if (required && !present) {
        out.push_back({"required-link-missing", {{src, dst}}, {}, 0.0});
      } else if (present && !allowed) {
        out.push_back({"link-above-upper-envelope", {{src, dst}}, {}, 0.0});
      }
    }
  }
  return out;
}

// Emits every arrangement obtained by permuting nodes inside each tie group
// while keeping the groups in order; stops after `cap` arrangements.
inline void for_each_tail_order(const std::vector<NodeSet>& groups,
                                std::size_t cap,
                                const std::function<bool(const NodeSet&)>& fn) {
  NodeSet current;
  std::size_t emitted = 0;
  std::vector<NodeSet> perms = groups;
  std::function<bool(std::size_t)> rec = [&](std::size_t gi) -> bool {
    if (gi == perms.size()) {
      ++emitted;
      return fn(current);
    }
    NodeSet p = perms[gi];
    std::sort(p.begin(), p.end());
    do {
      if (emitted >= cap) return false;
      current.insert(current.end(), p.begin(), p.end());
      const bool stop = rec(gi + 1);
      current.resize(current.size() - p.size());
      if (stop) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  };
  rec(0);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Internal certificate: with the external links taken as given (at least one
// edge must leave the set), an optimal internal configuration arranges the
// set so that non-leaking nodes come first with strictly decreasing v,
// leaking nodes last, and the internal edges contain all backward/self links
// plus the forward chain through the non-leaking prefix, with at most the
// forward links among leaking nodes on top. Ties among leaking nodes make
// the arrangement ambiguous, so tied tails are re-permuted until one fits.
// ---------------------------------------------------------------------------
inline StructureCertificate verify_internal_structure(const WebGraph& g,
                                                      const NodeSet& I,
                                                      const RankingContext& ctx) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  detail::require_accessibility(g, I);
  ctx.validate(g.n());

  StructureCertificate cert;
  const VisitVector vv = visit_vector(g, I, ctx);
  const std::vector<double>& v = vv.v;
  cert.v_snapshot = vv;
  detail::fill_separation(g, I, v, &cert);

  const LinkPartition part = partition_links(g, I);
  if (part.out.empty()) {
    throw PreconditionError(
        "no edges leave the node set; the internal check needs the external "
        "outlinks as given");
  }
  for (const auto& e : part.out) cert.leaking_nodes.push_back(e.first);
  cert.leaking_nodes = normalized(cert.leaking_nodes);

  NodeSet head, tail;
  for (int i : I) {
    (set_contains(cert.leaking_nodes, i) ? tail : head).push_back(i);
  }
  head = detail::order_by_v(head, v);
  tail = detail::order_by_v(tail, v);
  const int head_count = static_cast<int>(head.size());

  // Order constraints that no tail permutation can repair.
  for (std::size_t k = 0; k + 1 < head.size(); ++k) {
    const double va = v[static_cast<std::size_t>(head[k] - 1)];
    const double vb = v[static_cast<std::size_t>(head[k + 1] - 1)];
    if (!definitely_greater(va, vb)) {
      cert.violations.push_back({"head-order-not-strict",
                                 {},
                                 {head[k], head[k + 1]},
                                 va - vb});
    }
  }
  if (!head.empty() && !tail.empty()) {
    const double vh = v[static_cast<std::size_t>(head.back() - 1)];
    const double vt = v[static_cast<std::size_t>(tail.front() - 1)];
    if (!definitely_greater(vh, vt)) {
      cert.violations.push_back(
          {"leakers-not-last", {}, {head.back(), tail.front()}, vh - vt});
    }
  }

  NodeSet canonical = head;
  canonical.insert(canonical.end(), tail.begin(), tail.end());
  cert.ordering = canonical;

  if (cert.violations.empty()) {
    // Group the tail into tie classes and look for an arrangement that
    // passes the sandwich test.
    std::vector<NodeSet> groups;
    for (int node : tail) {
      if (!groups.empty() &&
          nearly_equal(v[static_cast<std::size_t>(groups.back().front() - 1)],
                       v[static_cast<std::size_t>(node - 1)])) {
        groups.back().push_back(node);
      } else {
        groups.push_back({node});
      }
    }
    bool found = false;
    detail::for_each_tail_order(groups, 40320, [&](const NodeSet& tail_order) {
      NodeSet ord = head;
      ord.insert(ord.end(), tail_order.begin(), tail_order.end());
      if (detail::sandwich_violations(g, ord, head_count).empty()) {
        cert.ordering = ord;
        found = true;
        return true;  // stop
      }
      return false;
    });
    if (!found) {
      auto vs = detail::sandwich_violations(g, canonical, head_count);
      cert.violations.insert(cert.violations.end(), vs.begin(), vs.end());
    }
  } else {
    auto vs = detail::sandwich_violations(g, canonical, head_count);
    cert.violations.insert(cert.violations.end(), vs.begin(), vs.end());
  }
  cert.satisfied = cert.violations.empty();
  return cert;
}

namespace detail {

// Exact-shape test shared by the website certificate and its variants:
// strictly decreasing v along the arrangement, internal links exactly the
// chain-with-backlinks pattern (self links iff allowed), and the required
// number of exits, all from the last node. Exit targets are checked against
// the top set only when `exits_must_hit_top` (the several-exits variant).
inline void check_exact_shape(const WebGraph& g, const NodeSet& I,
                              const std::vector<double>& v, bool allow_self,
                              int exit_count, bool exits_must_hit_top,
                              const NodeSet& top, StructureCertificate* cert) {
  const NodeSet ord = order_by_v(I, v);
  cert->ordering = ord;
  const int k = static_cast<int>(ord.size());
  for (int a = 0; a + 1 < k; ++a) {
    const double va = v[static_cast<std::size_t>(ord[static_cast<std::size_t>(a)] - 1)];
    const double vb =
        v[static_cast<std::size_t>(ord[static_cast<std::size_t>(a + 1)] - 1)];
    if (!definitely_greater(va, vb)) {
      cert->violations.push_back({"internal-order-not-strict",
                                  {},
                                  {ord[static_cast<std::size_t>(a)],
                                   ord[static_cast<std::size_t>(a + 1)]},
                                  va - vb});
    }
  }
  for (int a = 1; a <= k; ++a) {
    const int src = ord[static_cast<std::size_t>(a - 1)];
    for (int b = 1; b <= k; ++b) {
      const int dst = ord[static_cast<std::size_t>(b - 1)];
      const bool wanted = (allow_self ? b <= a : b < a) || b == a + 1;
      const bool present = g.has_edge(src, dst);
      if (wanted && !present) {
        cert->violations.push_back({"required-link-missing", {{src, dst}}, {}, 0.0});
      } else if (present && !wanted) {
        cert->violations.push_back({"extra-link-present", {{src, dst}}, {}, 0.0});
      }
    }
  }
  const LinkPartition part = partition_links(g, I);
  for (const auto& e : part.out) cert->leaking_nodes.push_back(e.first);
  cert->leaking_nodes = normalized(cert->leaking_nodes);
  const int last = ord.back();
  if (static_cast<int>(part.out.size()) != exit_count) {
    cert->violations.push_back(
        {"exit-count-mismatch", part.out, {},
         static_cast<double>(part.out.size()) - exit_count});
  }
  for (const auto& e : part.out) {
    if (e.first != last) {
      cert->violations.push_back({"exit-not-from-last", {e}, {e.first}, 0.0});
    }
    if (exits_must_hit_top && !set_contains(top, e.second)) {
      cert->violations.push_back({"exit-target-not-in-top-set", {e}, {e.second}, 0.0});
    }
  }
  if (part.out.size() == 1) {
    cert->exit_target = part.out.front().second;
    cert->exit_target_in_top_set = set_contains(top, part.out.front().second);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Website certificate: the whole-configuration necessary shape. With default
// constraints: some arrangement of I has strictly decreasing v, the internal
// links are exactly every backward/self link plus the forward chain, and one
// single edge leaves the set, from the last node. The exit target and its
// top-set membership are recorded, not required. Variants: without self
// links the internal pattern drops the diagonal (for a singleton it is
// empty, and any exit bundle of at least the required size inside the top
// set is the optimal form); with r exits required, the internal pattern is
// unchanged (self links stay whenever allowed — forcing extra exits does not
// make them harmful) and the r exits all leave from the last node and land
// in the top set. The top-set requirement is meaningful only when the top
// set has at least r members; smaller top sets make the bundle unsatisfiable
// and the certificate reports the stray targets.
// ---------------------------------------------------------------------------
inline StructureCertificate verify_website_opt_shape(
    const WebGraph& g, const NodeSet& I, const RankingContext& ctx,
    const StructureConstraints& constraints) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  detail::require_accessibility(g, I);
  ctx.validate(g.n());

  StructureCertificate cert;
  const VisitVector vv = visit_vector(g, I, ctx);
  const std::vector<double>& v = vv.v;
  cert.v_snapshot = vv;
  detail::fill_separation(g, I, v, &cert);
  const NodeSet top = detail::top_set_from(g, I, v, nullptr);

  const int r = std::max(1, constraints.min_external_outlinks);
  if (!constraints.allow_self_links && I.size() == 1) {
    // Singleton without a self link: no internal edges, and any set of at
    // least r exits inside the top set is exactly the optimal form (the exit
    // mean is the top value however many top nodes are linked, so every such
    // bundle ties).
    cert.ordering = I;
    const LinkPartition part = partition_links(g, I);
    if (!part.internal.empty()) {
      cert.violations.push_back({"extra-link-present", part.internal, {}, 0.0});
    }
    if (static_cast<int>(part.out.size()) < r) {
      cert.violations.push_back(
          {"exit-count-mismatch", part.out, {},
           static_cast<double>(part.out.size()) - r});
    }
    for (const auto& e : part.out) {
      cert.leaking_nodes.push_back(e.first);
      if (!set_contains(top, e.second)) {
        cert.violations.push_back({"exit-target-not-in-top-set", {e}, {e.second}, 0.0});
      }
    }
    cert.leaking_nodes = normalized(cert.leaking_nodes);
    if (part.out.size() == 1) {
      cert.exit_target = part.out.front().second;
      cert.exit_target_in_top_set = set_contains(top, part.out.front().second);
    }
  } else {
    const bool self_links = constraints.allow_self_links;
    const bool check_top = r > 1;
    detail::check_exact_shape(g, I, v, self_links, r, check_top, top, &cert);
  }
  cert.satisfied = cert.violations.empty();
  return cert;
}

inline StructureCertificate verify_website_opt_shape(const WebGraph& g,
                                                     const NodeSet& I,
                                                     const RankingContext& ctx) {
  return verify_website_opt_shape(g, I, ctx, StructureConstraints{});
}

struct BuiltStructure {
  WebGraph graph;
  double value;
};

// ---------------------------------------------------------------------------
// Constructor: with the incoming and outside links fixed, search every
// arrangement of I and every choice of exit targets, instantiate the
// candidate shape, and keep the configuration with the largest set value.
// The shape alone does not determine the arrangement or the targets (they
// depend on v, which depends on the choice), hence the search. Ties resolve
// to the lexicographically smallest edge set.
// ---------------------------------------------------------------------------
inline BuiltStructure build_optimal_structure(
    const WebGraph& g_fixed, const NodeSet& I, const RankingContext& ctx,
    const StructureConstraints& constraints = {}, int max_perm = 8) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  ctx.validate(g_fixed.n());
  const NodeSet outside = complement_of(g_fixed.n(), I);
  if (outside.empty()) {
    throw PreconditionError("the complement of the node set is empty");
  }
  if (static_cast<int>(I.size()) > max_perm) {
    throw CapExceededError("arrangement search over " +
                           std::to_string(I.size()) +
                           " nodes exceeds the bound " +
                           std::to_string(max_perm) +
                           "; raise the bound explicitly to proceed");
  }
  const int r = std::max(1, constraints.min_external_outlinks);
  if (static_cast<int>(outside.size()) < r) {
    throw PreconditionError("fewer external nodes than required exits");
  }

  // Edges of the fixed surrounding: everything not starting in I.
  std::vector<Edge> base;
  for (const auto& e : g_fixed.edges()) {
    if (!set_contains(I, e.first)) base.push_back(e);
  }

  // Candidate internal patterns: the chain with backlinks, with and without
  // self links. Self links win whenever they are allowed, but the search
  // tries every allowed pattern rather than assume.
  std::vector<bool> self_options;
  if (constraints.allow_self_links) self_options.push_back(true);
  self_options.push_back(false);

  // All r-subsets of the outside, in lexicographic order.
  std::vector<NodeSet> target_choices;
  {
    NodeSet pick;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
      if (static_cast<int>(pick.size()) == r) {
        target_choices.push_back(pick);
        return;
      }
      for (std::size_t t = from; t < outside.size(); ++t) {
        pick.push_back(outside[t]);
        rec(t + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }

  double perm_count = 1.0;
  for (int f = 2; f <= static_cast<int>(I.size()); ++f) perm_count *= f;
  if (perm_count * static_cast<double>(target_choices.size()) *
          static_cast<double>(self_options.size()) >
      2e6) {
    throw CapExceededError("candidate search space too large");
  }

  bool have_best = false;
  double best_value = 0.0;       // exact running maximum
  double best_edges_value = 0.0; // value of the kept edge set
  std::vector<Edge> best_edges;
  NodeSet perm = I;  // already sorted ascending
  do {
    for (const bool with_self : self_options) {
      std::vector<Edge> internal;
      const int k = static_cast<int>(perm.size());
      for (int a = 1; a <= k; ++a) {
        for (int b = 1; b <= k; ++b) {
          if ((with_self ? b <= a : b < a) || b == a + 1) {
            internal.emplace_back(perm[static_cast<std::size_t>(a - 1)],
                                  perm[static_cast<std::size_t>(b - 1)]);
          }
        }
      }
      const int last = perm[static_cast<std::size_t>(k - 1)];
      for (const NodeSet& targets : target_choices) {
        std::vector<Edge> edges = base;
        edges.insert(edges.end(), internal.begin(), internal.end());
        for (int t : targets) edges.emplace_back(last, t);
        const WebGraph cand = WebGraph::from_edges(g_fixed.n(), edges);
        const double value = set_pagerank(cand, I, ctx);
        std::vector<Edge> cand_edges = cand.edges();
        if (!have_best || value > best_value) {
          // New exact leader.  The previously kept edge set survives only
          // if it is still within the tie band of the new maximum and
          // lexicographically smaller.
          const bool old_in_band =
              have_best && best_edges_value >= value - tol::kArgmaxAbs;
          best_value = value;
          if (!old_in_band || cand_edges < best_edges) {
            best_edges = std::move(cand_edges);
            best_edges_value = value;
          }
          have_best = true;
        } else if (value >= best_value - tol::kArgmaxAbs &&
                   cand_edges < best_edges) {
          best_edges = std::move(cand_edges);
          best_edges_value = value;
        }
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return {WebGraph::from_edges(g_fixed.n(), best_edges), best_value};
}

// ---------------------------------------------------------------------------
// Do the edges leaving the set point at parents of the set? An optimal
// configuration must send its exit to a node that links back in, whenever
// any external node does. With nothing linking in, the question is moot and
// nullopt is returned.
// ---------------------------------------------------------------------------
inline std::optional<bool> linking_to_parents_check(const WebGraph& g,
                                                    const NodeSet& I,
                                                    const RankingContext& ctx) {
  ctx.validate(g.n());
  const LinkPartition part = partition_links(g, I);
  if (part.in.empty()) return std::nullopt;
  NodeSet parents;
  for (const auto& e : part.in) parents.push_back(e.first);
  parents = normalized(parents);
  for (const auto& e : part.out) {
    if (!set_contains(parents, e.second)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Effect of giving I one extra inbound link (j, i) from outside. When every
// v inside the set beats every v outside and j is not yet a parent of the
// set, the addition is guaranteed to help; in general the computed sign is
// returned, and it can be a decrease.
// ---------------------------------------------------------------------------
inline ChangeSign external_inlink_effect(const WebGraph& g, const NodeSet& I,
                                         const RankingContext& ctx, int j, int i) {
  if (!set_contains(I, i)) {
    throw PreconditionError("target node " + std::to_string(i) +
                            " is not in the node set");
  }
  if (set_contains(I, j)) {
    throw PreconditionError("source node " + std::to_string(j) +
                            " must lie outside the node set");
  }
  if (g.has_edge(j, i)) {
    throw PreconditionError("edge (" + std::to_string(j) + "," +
                            std::to_string(i) + ") already present");
  }
  if (g.out_degree(j) == 0) {
    // No stochastic row to correct; compare the two solved values directly.
    const double before = set_pagerank(g, I, ctx);
    const double after = set_pagerank(g.with_edge_added(j, i), I, ctx);
    if (nearly_equal(before, after)) return ChangeSign::unchanged;
    return after > before ? ChangeSign::increase : ChangeSign::decrease;
  }
  return MutationEvaluator(g, I, ctx).evaluate(mutation_from_add(g, j, i)).sign;
}

}  // namespace linkopt
