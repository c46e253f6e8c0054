#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace linkopt {

// Node ids are 1-based everywhere in the public API, in graph files, and in
// reports. Vectors indexed by node (v, pi, z) are plain std::vector<double>
// of length n where slot k holds the value of node k+1; the shift happens
// only at element access.
using Edge = std::pair<int, int>;
using NodeSet = std::vector<int>;  // sorted, duplicate-free by convention

// ---------------------------------------------------------------------------
// Numeric conventions shared by the whole library.
// ---------------------------------------------------------------------------
namespace tol {
// Linear-system residual target (1-norm) and iteration cap for the
// fixed-point solver route.
inline constexpr double kSolver = 1e-12;
inline constexpr int kSolverMaxIters = 100000;
// Equality of two v (or pi) entries: relative with an absolute floor. Every
// argmax/argmin set and every "strictly greater" claim in a certificate uses
// this tolerance.
inline constexpr double kEqRel = 1e-9;
inline constexpr double kEqAbs = 1e-12;
// Exhaustive-search argmax sets are defined by an absolute gap on a common
// solver path.
inline constexpr double kArgmaxAbs = 1e-12;
// Above this size the dense LU route is not used and matrices are never
// materialized; products stream over the adjacency.
inline constexpr int kDenseCutoff = 2048;
}  // namespace tol

// True when a and b agree within relative kEqRel with absolute floor kEqAbs.
inline bool nearly_equal(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(tol::kEqAbs, tol::kEqRel * scale);
}

// Strict comparison under the same tolerance: a exceeds b by more than the
// equality band.
inline bool definitely_greater(double a, double b) {
  return a > b && !nearly_equal(a, b);
}

// ---------------------------------------------------------------------------
// Errors. Exit-code mapping in the CLI: input problems -> 1,
// infeasible/cap/assumption problems -> 2.
// ---------------------------------------------------------------------------
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed graph or vector file.
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input that violates a documented requirement
// (out-of-range id, dangling node where forbidden, bad personalization).
struct ValidationError : Error {
  using Error::Error;
};

// The accessibility requirement (every node of I reaches its complement)
// does not hold.
struct AccessibilityError : Error {
  using Error::Error;
};

// Accessibility is not even well defined (the complement of I is empty).
struct AccessibilityUndefinedError : Error {
  using Error::Error;
};

// An enumeration or permutation search would exceed its configured bound.
struct CapExceededError : Error {
  using Error::Error;
};

// An operation's stated precondition does not hold for these inputs.
struct PreconditionError : Error {
  using Error::Error;
};

// The iterative solver failed to reach its residual target.
struct ConvergenceError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Small set helpers.
// ---------------------------------------------------------------------------
inline NodeSet normalized(std::vector<int> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

inline bool set_contains(const NodeSet& s, int id) {
  return std::binary_search(s.begin(), s.end(), id);
}

// Nodes 1..n not in I (I must be normalized).
inline NodeSet complement_of(int n, const NodeSet& I) {
  NodeSet out;
  out.reserve(static_cast<std::size_t>(n) - I.size());
  for (int i = 1; i <= n; ++i) {
    if (!set_contains(I, i)) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Ranking context: damping factor and personalization vector.
// ---------------------------------------------------------------------------
struct RankingContext {
  double c = 0.85;
  std::vector<double> z;  // positive, sums to 1

  static RankingContext uniform(int n, double c = 0.85) {
    RankingContext ctx;
    ctx.c = c;
    ctx.z.assign(static_cast<std::size_t>(n), 1.0 / n);
    return ctx;
  }

  // Throws ValidationError unless 0 < c < 1, z has length n, every z_i > 0,
  // and sum(z) = 1 within 1e-12.
  void validate(int n) const {
    if (!(c > 0.0 && c < 1.0)) {
      throw ValidationError("damping factor must satisfy 0 < c < 1, got " +
                            std::to_string(c));
    }
    if (static_cast<int>(z.size()) != n) {
      throw ValidationError("personalization vector has length " +
                            std::to_string(z.size()) + ", expected " +
                            std::to_string(n));
    }
    double sum = 0.0;
    for (double zi : z) {
      if (!(zi > 0.0)) {
        throw ValidationError("personalization entries must be positive");
      }
      sum += zi;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw ValidationError("personalization vector must sum to 1, got " +
                            std::to_string(sum));
    }
  }

  bool is_uniform(int n) const {
    if (static_cast<int>(z.size()) != n) return false;
    for (double zi : z) {
      if (std::abs(zi - 1.0 / n) > 1e-12) return false;
    }
    return true;
  }
};

// Outcome of evaluating one link mutation against the current value.
enum class ChangeSign { increase, decrease, unchanged };

// Outcome of the add/remove link rules, which can also decline to answer
// when their hypotheses do not hold.
enum class LinkRuleResult { increase, unchanged, inapplicable };

inline const char* to_string(ChangeSign s) {
  switch (s) {
    case ChangeSign::increase: return "increase";
    case ChangeSign::decrease: return "decrease";
    case ChangeSign::unchanged: return "unchanged";
  }
  return "?";
}

inline const char* to_string(LinkRuleResult r) {
  switch (r) {
    case LinkRuleResult::increase: return "increase";
    case LinkRuleResult::unchanged: return "unchanged";
    case LinkRuleResult::inapplicable: return "inapplicable";
  }
  return "?";
}

}  // namespace linkopt
