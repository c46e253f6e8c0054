#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

// Which linear-algebra route to use for the (I - cP) systems. `automatic`
// picks the dense factorization up to tol::kDenseCutoff nodes and the
// fixed-point iteration above that. The two explicit routes exist so tests
// can cross-check them against each other.
enum class SolveRoute { automatic, dense, iterative };

// y = P x where P is the row-stochastic link matrix (row i spreads uniformly
// over the children of i; a dangling row is zero). Streams over adjacency;
// P is never materialized.
inline std::vector<double> multiply_P(const WebGraph& g,
                                      const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(g.n()), 0.0);
  for (int i = 1; i <= g.n(); ++i) {
    const auto& ch = g.children(i);
    if (ch.empty()) continue;
    double sum = 0.0;
    for (int j : ch) sum += x[static_cast<std::size_t>(j - 1)];
    y[static_cast<std::size_t>(i - 1)] = sum / static_cast<double>(ch.size());
  }
  return y;
}

// y = P^T x, streaming over adjacency.
inline std::vector<double> multiply_P_transposed(const WebGraph& g,
                                                 const std::vector<double>& x) {
  std::vector<double> y(static_cast<std::size_t>(g.n()), 0.0);
  for (int i = 1; i <= g.n(); ++i) {
    const auto& ch = g.children(i);
    if (ch.empty()) continue;
    const double w = x[static_cast<std::size_t>(i - 1)] / static_cast<double>(ch.size());
    for (int j : ch) y[static_cast<std::size_t>(j - 1)] += w;
  }
  return y;
}

namespace detail {

inline double norm1(const std::vector<double>& x) {
  double s = 0.0;
  for (double xi : x) s += std::abs(xi);
  return s;
}

// Fixed-point iteration for (I - cP) x = b (or the transposed system):
// x <- b + c P x, a contraction for c < 1. The update step b + cPx - x is
// exactly the residual of the current iterate, so the iterate returned is
// guaranteed a 1-norm residual of at most tol::kSolver * max(1, |x|_1).
inline std::vector<double> iterate_system(const WebGraph& g, double c,
                                          const std::vector<double>& b,
                                          bool transposed) {
  std::vector<double> x = b;
  for (int iter = 0; iter < tol::kSolverMaxIters; ++iter) {
    std::vector<double> next = transposed ? multiply_P_transposed(g, x)
                                          : multiply_P(g, x);
    double residual = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      next[k] = b[k] + c * next[k];
      residual += std::abs(next[k] - x[k]);
    }
    if (residual <= tol::kSolver * std::max(1.0, norm1(x))) return x;
    x.swap(next);
  }
  throw ConvergenceError("fixed-point solver did not reach its residual target");
}

}  // namespace detail

// Prefactored solver for the systems (I - cP) x = b and (I - cP)^T y = b on
// one graph. On the dense route both factorizations are built eagerly in the
// constructor, so solves on a shared instance are read-only and safe to call
// concurrently.
class LinearSolver {
 public:
  LinearSolver(WebGraph g, double c, SolveRoute route = SolveRoute::automatic)
      : g_(std::move(g)), c_(c) {
    if (!(c > 0.0 && c < 1.0)) {
      throw ValidationError("damping factor must satisfy 0 < c < 1");
    }
    dense_ = route == SolveRoute::dense ||
             (route == SolveRoute::automatic && g_.n() <= tol::kDenseCutoff);
    if (route == SolveRoute::dense && g_.n() > tol::kDenseCutoff) {
      throw ValidationError(
          "dense route refused above " + std::to_string(tol::kDenseCutoff) +
          " nodes; use the iterative route");
    }
    if (dense_) {
      const int n = g_.n();
      Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
      for (int i = 1; i <= n; ++i) {
        const auto& ch = g_.children(i);
        if (ch.empty()) continue;
        const double w = c_ / static_cast<double>(ch.size());
        for (int j : ch) a(i - 1, j - 1) -= w;
      }
      lu_.emplace(a);
      lu_t_.emplace(a.transpose());
    }
  }

  const WebGraph& graph() const { return g_; }
  double c() const { return c_; }
  bool dense() const { return dense_; }

  // x with (I - cP) x = rhs.
  std::vector<double> solve(const std::vector<double>& rhs) const {
    check_size(rhs);
    if (!dense_) return detail::iterate_system(g_, c_, rhs, /*transposed=*/false);
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(),
                                              static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd x = lu_->solve(b);
    return {x.data(), x.data() + x.size()};
  }

  // y with (I - cP)^T y = rhs.
  std::vector<double> solve_transposed(const std::vector<double>& rhs) const {
    check_size(rhs);
    if (!dense_) return detail::iterate_system(g_, c_, rhs, /*transposed=*/true);
    const Eigen::Map<const Eigen::VectorXd> b(rhs.data(),
                                              static_cast<Eigen::Index>(rhs.size()));
    const Eigen::VectorXd x = lu_t_->solve(b);
    return {x.data(), x.data() + x.size()};
  }

 private:
  void check_size(const std::vector<double>& rhs) const {
    if (static_cast<int>(rhs.size()) != g_.n()) {
      throw ValidationError("right-hand side length does not match node count");
    }
  }

  WebGraph g_;
  double c_;
  bool dense_ = false;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_;
  std::optional<Eigen::PartialPivLU<Eigen::MatrixXd>> lu_t_;
};

// Indicator vector of I as a dense rhs.
inline std::vector<double> indicator_vector(int n, const NodeSet& I) {
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  for (int i : I) {
    if (i < 1 || i > n) {
      throw ValidationError("node id " + std::to_string(i) + " out of range");
    }
    e[static_cast<std::size_t>(i - 1)] = 1.0;
  }
  return e;
}

}  // namespace linkopt
