#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/solver.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

struct PageRankVector {
  std::vector<double> pi;
};

// v solves (I - cP) v = e_I; entry i is the expected number of visits to I
// that a surfer starting at i makes before stopping (stop probability 1 - c
// per step).
struct VisitVector {
  std::vector<double> v;
  NodeSet I;
};

// The external nodes with the largest v, i.e. the nodes outside I that feed
// the most visits back into it. When no edge enters I, every external node
// trivially ties at v = 0; all_zero reports that degenerate case.
struct VTopSet {
  NodeSet nodes;
  bool all_zero = false;
};

// ---------------------------------------------------------------------------
// PageRank vector: the stationary distribution of cP + (1-c) 1 z^T, obtained
// by solving (I - cP)^T pi = (1-c) z. Requires a stochastic link matrix, so
// dangling nodes are rejected here (patch them first if desired).
// ---------------------------------------------------------------------------
inline PageRankVector pagerank(const WebGraph& g, const RankingContext& ctx,
                               SolveRoute route = SolveRoute::automatic) {
  ctx.validate(g.n());
  if (const NodeSet bad = dangling_nodes(g); !bad.empty()) {
    std::ostringstream msg;
    msg << "graph has dangling nodes:";
    for (int i : bad) msg << ' ' << i;
    throw ValidationError(msg.str());
  }
  LinearSolver solver(g, ctx.c, route);
  std::vector<double> rhs(ctx.z);
  for (double& r : rhs) r *= 1.0 - ctx.c;
  return {solver.solve_transposed(rhs)};
}

// 1-norm of pi^T G - pi^T, the defect of pi as a stationary vector.
inline double pagerank_residual(const WebGraph& g, const RankingContext& ctx,
                                const std::vector<double>& pi) {
  double mass = 0.0;
  for (double p : pi) mass += p;
  const std::vector<double> pt = multiply_P_transposed(g, pi);
  double res = 0.0;
  for (int j = 1; j <= g.n(); ++j) {
    const double gj = ctx.c * pt[static_cast<std::size_t>(j - 1)] +
                      (1.0 - ctx.c) * ctx.z[static_cast<std::size_t>(j - 1)] * mass;
    res += std::abs(gj - pi[static_cast<std::size_t>(j - 1)]);
  }
  return res;
}

// ---------------------------------------------------------------------------
// Visit vector and the set value (1-c) z^T v, which equals the sum of the
// PageRank scores over I.
// ---------------------------------------------------------------------------
inline VisitVector visit_vector(const LinearSolver& solver, const NodeSet& I) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  return {solver.solve(indicator_vector(solver.graph().n(), I)), I};
}

inline VisitVector visit_vector(const WebGraph& g, const NodeSet& I,
                                const RankingContext& ctx,
                                SolveRoute route = SolveRoute::automatic) {
  return visit_vector(LinearSolver(g, ctx.c, route), I);
}

inline double set_pagerank(const LinearSolver& solver, const NodeSet& I,
                           const RankingContext& ctx) {
  ctx.validate(solver.graph().n());
  const VisitVector vv = visit_vector(solver, I);
  double dot = 0.0;
  for (std::size_t k = 0; k < vv.v.size(); ++k) dot += ctx.z[k] * vv.v[k];
  return (1.0 - ctx.c) * dot;
}

inline double set_pagerank(const WebGraph& g, const NodeSet& I,
                           const RankingContext& ctx,
                           SolveRoute route = SolveRoute::automatic) {
  return set_pagerank(LinearSolver(g, ctx.c, route), I, ctx);
}

// ---------------------------------------------------------------------------
// v_top_set: all external nodes whose v ties the external maximum (within
// the equality tolerance). Requires a nonempty complement.
// ---------------------------------------------------------------------------
inline VTopSet v_top_set(const WebGraph& g, const NodeSet& I,
                         const RankingContext& ctx,
                         SolveRoute route = SolveRoute::automatic) {
  const NodeSet outside = complement_of(g.n(), I);
  if (outside.empty()) {
    throw PreconditionError(
        "the complement of the node set is empty; no external nodes to rank");
  }
  const LinkPartition part = partition_links(g, I);
  if (part.in.empty()) {
    // Nothing flows back into I, so v vanishes on the whole complement and
    // every external node ties.
    return {outside, /*all_zero=*/true};
  }
  const VisitVector vv = visit_vector(g, I, ctx, route);
  double vmax = 0.0;
  for (int j : outside) {
    vmax = std::max(vmax, vv.v[static_cast<std::size_t>(j - 1)]);
  }
  NodeSet top;
  for (int j : outside) {
    if (nearly_equal(vv.v[static_cast<std::size_t>(j - 1)], vmax)) top.push_back(j);
  }
  return {top, /*all_zero=*/false};
}

// ---------------------------------------------------------------------------
// Residual of the external-block identity: on the complement of I, v solves
// (I - c P_block) v_out = c P_cross v_in, where P_block is P restricted to
// external rows and columns and P_cross the external-to-I part. Returns the
// max-norm difference between v on the complement and the block solve.
// Returns 0 when the complement is empty.
// ---------------------------------------------------------------------------
inline double visit_block_identity_residual(const WebGraph& g, const NodeSet& I,
                                            const RankingContext& ctx,
                                            SolveRoute route = SolveRoute::automatic) {
  const NodeSet outside = complement_of(g.n(), I);
  if (outside.empty()) return 0.0;
  const VisitVector vv = visit_vector(g, I, ctx, route);
  const int m = static_cast<int>(outside.size());
  // Compact index of an external node, or -1.
  std::vector<int> pos(static_cast<std::size_t>(g.n()) + 1, -1);
  for (int k = 0; k < m; ++k) pos[static_cast<std::size_t>(outside[static_cast<std::size_t>(k)])] = k;

  // rhs_k = c * sum over children of outside[k] inside I of v_child / degree.
  std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
  for (int k = 0; k < m; ++k) {
    const int j = outside[static_cast<std::size_t>(k)];
    const auto& ch = g.children(j);
    if (ch.empty()) continue;
    double sum = 0.0;
    for (int t : ch) {
      if (set_contains(I, t)) sum += vv.v[static_cast<std::size_t>(t - 1)];
    }
    rhs[static_cast<std::size_t>(k)] = ctx.c * sum / static_cast<double>(ch.size());
  }

  std::vector<double> w;
  const bool dense = route == SolveRoute::dense ||
                     (route == SolveRoute::automatic && m <= tol::kDenseCutoff);
  if (dense) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (int k = 0; k < m; ++k) {
      const int j = outside[static_cast<std::size_t>(k)];
      const auto& ch = g.children(j);
      if (ch.empty()) continue;
      const double wgt = ctx.c / static_cast<double>(ch.size());
      for (int t : ch) {
        const int tpos = pos[static_cast<std::size_t>(t)];
        if (tpos >= 0) a(k, tpos) -= wgt;
      }
    }
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), m);
    const Eigen::VectorXd x = Eigen::PartialPivLU<Eigen::MatrixXd>(a).solve(b);
    w.assign(x.data(), x.data() + x.size());
  } else {
    // Fixed-point sweep on the external block; the update step equals the
    // current residual, as in the full-system solver.
    w = rhs;
    std::vector<double> next(static_cast<std::size_t>(m));
    for (int iter = 0;; ++iter) {
      if (iter >= tol::kSolverMaxIters) {
        throw ConvergenceError("block solve did not reach its residual target");
      }
      double step = 0.0, scale = 1.0;
      for (int k = 0; k < m; ++k) {
        const int j = outside[static_cast<std::size_t>(k)];
        const auto& ch = g.children(j);
        double sum = 0.0;
        if (!ch.empty()) {
          for (int t : ch) {
            const int tpos = pos[static_cast<std::size_t>(t)];
            if (tpos >= 0) sum += w[static_cast<std::size_t>(tpos)];
          }
          sum *= ctx.c / static_cast<double>(ch.size());
        }
        next[static_cast<std::size_t>(k)] = rhs[static_cast<std::size_t>(k)] + sum;
        step += std::abs(next[static_cast<std::size_t>(k)] - w[static_cast<std::size_t>(k)]);
        scale += std::abs(w[static_cast<std::size_t>(k)]);
      }
      if (step <= tol::kSolver * scale) break;
      w.swap(next);
    }
  }

  double res = 0.0;
  for (int k = 0; k < m; ++k) {
    const int j = outside[static_cast<std::size_t>(k)];
    res = std::max(res, std::abs(vv.v[static_cast<std::size_t>(j - 1)] -
                                 w[static_cast<std::size_t>(k)]));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Personalization file: one real per line; '#' comment lines and blank lines
// are skipped. Must contain exactly n values.
// ---------------------------------------------------------------------------
inline std::vector<double> parse_personalization(std::string_view text, int n) {
  std::vector<double> z;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    if (s.empty() || s.front() == '#') continue;
    std::istringstream ls{std::string(s)};
    double val = 0.0;
    if (!(ls >> val) || !(ls >> std::ws).eof()) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected one real value, got \"" + std::string(s) + "\"");
    }
    z.push_back(val);
  }
  if (static_cast<int>(z.size()) != n) {
    throw ParseError("personalization file holds " + std::to_string(z.size()) +
                     " values, expected " + std::to_string(n));
  }
  return z;
}

}  // namespace linkopt
