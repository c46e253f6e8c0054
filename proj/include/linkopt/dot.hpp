#pragma once

// Graphviz export.  The optimized node set is rendered as a cluster; when
// visit values are supplied its members are laid out in decreasing order of
// value, so the chain structure of optimal configurations is visible at a
// glance.

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "linkopt/graph.hpp"
#include "linkopt/types.hpp"

namespace linkopt {

namespace detail {

inline std::string format_fixed3(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", x);
  return buf;
}

} // namespace detail

// Renders the graph as DOT.  Nodes in I are grouped in a cluster; an empty
// I yields no cluster.  When `v` is non-null it must hold one value per
// node (1-based node i at v[i-1]); labels then carry the value with three
// decimals and the cluster members are chained with invisible edges in
// decreasing-value order.
inline std::string export_dot(const WebGraph& g, const NodeSet& I,
                              const std::vector<double>* v = nullptr) {
  if (v != nullptr && static_cast<int>(v->size()) != g.n())
    throw ValidationError("value vector length must equal node count");
  const NodeSet set = normalized(I);
  for (int i : set)
    if (i < 1 || i > g.n()) throw ValidationError("node set out of range");

  std::string out;
  out += "digraph webgraph {\n";
  out += "  rankdir=LR;\n";
  out += "  node [shape=circle];\n";

  const auto label = [&](int i) {
    std::string s = "  n" + std::to_string(i) + " [label=\"" +
                    std::to_string(i);
    if (v != nullptr) {
      s += "\\nv=" +
           detail::format_fixed3((*v)[static_cast<std::size_t>(i - 1)]);
    }
    s += "\"];\n";
    return s;
  };

  if (!set.empty()) {
    NodeSet ordered = set;
    if (v != nullptr) {
      std::stable_sort(ordered.begin(), ordered.end(), [&](int a, int b) {
        return (*v)[static_cast<std::size_t>(a - 1)] >
               (*v)[static_cast<std::size_t>(b - 1)];
      });
    }
    out += "  subgraph cluster_set {\n";
    out += "    label=\"optimized set\";\n";
    out += "    style=rounded;\n";
    for (int i : ordered) out += "  " + label(i);
    if (v != nullptr) {
      // Invisible chain to pin the decreasing-value order in the layout.
      for (std::size_t k = 0; k + 1 < ordered.size(); ++k) {
        out += "    n" + std::to_string(ordered[k]) + " -> n" +
               std::to_string(ordered[k + 1]) + " [style=invis];\n";
      }
    }
    out += "  }\n";
  }
  for (int i = 1; i <= g.n(); ++i)
    if (!set_contains(set, i)) out += label(i);

  for (const auto& [a, b] : g.edges()) {
    out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  }
  out += "}\n";
  return out;
}

inline std::string export_dot(const WebGraph& g, const NodeSet& I,
                              const std::vector<double>& v) {
  return export_dot(g, I, &v);
}

} // namespace linkopt
