#pragma once

#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "linkopt/types.hpp"

namespace linkopt {

// A directed graph over nodes 1..n with no parallel edges. Immutable after
// construction; "mutation" means building a new graph, so instances are safe
// to share across threads.
class WebGraph {
 public:
  WebGraph() = default;

  // Builds from 1-based edges. Duplicate edges collapse silently; ids outside
  // 1..n raise ValidationError. Dangling nodes (out-degree 0) are legal here;
  // operations that need a stochastic matrix validate separately.
  static WebGraph from_edges(int n, const std::vector<Edge>& edges) {
    if (n <= 0) throw ValidationError("node count must be positive");
    WebGraph g;
    g.n_ = n;
    g.children_.assign(static_cast<std::size_t>(n), {});
    for (const auto& [i, j] : edges) {
      if (i < 1 || i > n || j < 1 || j > n) {
        throw ValidationError("edge (" + std::to_string(i) + "," +
                              std::to_string(j) + ") out of range 1.." +
                              std::to_string(n));
      }
      g.children_[static_cast<std::size_t>(i - 1)].push_back(j);
    }
    for (auto& ch : g.children_) ch = normalized(ch);
    return g;
  }

  int n() const { return n_; }

  const std::vector<int>& children(int i) const {
    return children_[static_cast<std::size_t>(i - 1)];
  }

  int out_degree(int i) const { return static_cast<int>(children(i).size()); }

  bool has_edge(int i, int j) const { return set_contains(children(i), j); }

  // All edges in ascending (i, j) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int i = 1; i <= n_; ++i) {
      for (int j : children(i)) out.emplace_back(i, j);
    }
    return out;
  }

  std::size_t edge_count() const {
    std::size_t m = 0;
    for (const auto& ch : children_) m += ch.size();
    return m;
  }

  // Reverse adjacency: parents(j) = every i with an edge (i, j).
  std::vector<std::vector<int>> parents() const {
    std::vector<std::vector<int>> par(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i) {
      for (int j : children(i)) par[static_cast<std::size_t>(j - 1)].push_back(i);
    }
    return par;
  }

  // --- derived graphs -----------------------------------------------------

  // Same graph with node i's child set replaced.
  WebGraph with_children(int i, const NodeSet& new_children) const {
    check_node(i);
    WebGraph g = *this;
    NodeSet ch = normalized(new_children);
    for (int j : ch) {
      if (j < 1 || j > n_) {
        throw ValidationError("replacement child " + std::to_string(j) +
                              " out of range");
      }
    }
    g.children_[static_cast<std::size_t>(i - 1)] = std::move(ch);
    return g;
  }

  WebGraph with_edge_added(int i, int j) const {
    check_node(i);
    check_node(j);
    if (has_edge(i, j)) {
      throw PreconditionError("edge (" + std::to_string(i) + "," +
                              std::to_string(j) + ") already present");
    }
    NodeSet ch = children(i);
    ch.push_back(j);
    return with_children(i, ch);
  }

  WebGraph with_edge_removed(int i, int j) const {
    check_node(i);
    check_node(j);
    if (!has_edge(i, j)) {
      throw PreconditionError("edge (" + std::to_string(i) + "," +
                              std::to_string(j) + ") not present");
    }
    NodeSet ch;
    for (int k : children(i)) {
      if (k != j) ch.push_back(k);
    }
    return with_children(i, ch);
  }

  // Every dangling node receives links to all nodes (the uniform patch used
  // by the CLI's --patch-dangling).
  WebGraph with_dangling_patched() const {
    WebGraph g = *this;
    NodeSet all;
    all.reserve(static_cast<std::size_t>(n_));
    for (int j = 1; j <= n_; ++j) all.push_back(j);
    for (int i = 1; i <= n_; ++i) {
      if (out_degree(i) == 0) g.children_[static_cast<std::size_t>(i - 1)] = all;
    }
    return g;
  }

 private:
  void check_node(int i) const {
    if (i < 1 || i > n_) {
      throw ValidationError("node id " + std::to_string(i) +
                            " out of range 1.." + std::to_string(n_));
    }
  }

  int n_ = 0;
  std::vector<std::vector<int>> children_;
};

// ---------------------------------------------------------------------------
// Graph file format: UTF-8 text; first non-comment line is n; every further
// non-comment line is "i j"; '#' starts a comment line; trailing newline
// optional.
// ---------------------------------------------------------------------------
inline WebGraph parse_graph(std::string_view text) {
  int n = -1;
  std::vector<Edge> edges;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++lineno;
    // Trim whitespace and skip comments / blank lines.
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front())))
      line.remove_prefix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;

    std::istringstream ls{std::string(line)};
    if (n < 0) {
      if (!(ls >> n) || n <= 0 || !(ls >> std::ws).eof()) {
        throw ParseError("line " + std::to_string(lineno) +
                         ": expected the node count, got \"" +
                         std::string(line) + "\"");
      }
      continue;
    }
    int i = 0, j = 0;
    if (!(ls >> i >> j) || !(ls >> std::ws).eof()) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected \"i j\", got \"" + std::string(line) + "\"");
    }
    if (i < 1 || i > n || j < 1 || j > n) {
      throw ParseError("line " + std::to_string(lineno) + ": edge (" +
                       std::to_string(i) + "," + std::to_string(j) +
                       ") out of range 1.." + std::to_string(n));
    }
    edges.emplace_back(i, j);
  }
  if (n < 0) throw ParseError("missing node count line");
  return WebGraph::from_edges(n, edges);
}

inline WebGraph parse_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

// Round-trip inverse of parse_graph.
inline std::string format_graph(const WebGraph& g) {
  std::ostringstream out;
  out << g.n() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
  return out.str();
}

// "1,2,3" -> {1,2,3}; used for CLI node-set flags.
inline NodeSet parse_node_set(std::string_view text) {
  NodeSet out;
  std::string token;
  std::istringstream in{std::string(text)};
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad node id \"" + token + "\" in set \"" +
                       std::string(text) + "\"");
    }
    while (used < token.size() &&
           std::isspace(static_cast<unsigned char>(token[used])))
      ++used;
    if (used != token.size()) {
      throw ParseError("bad node id \"" + token + "\" in set \"" +
                       std::string(text) + "\"");
    }
    out.push_back(id);
  }
  if (out.empty()) throw ParseError("empty node set \"" + std::string(text) + "\"");
  return normalized(out);
}

// ---------------------------------------------------------------------------
// Link partition with respect to a node set I: internal edges, edges leaving
// I, edges entering I, and edges among the remaining nodes. The four buckets
// are disjoint and cover the edge set.
// ---------------------------------------------------------------------------
struct LinkPartition {
  std::vector<Edge> internal;      // I  -> I
  std::vector<Edge> out;           // I  -> complement
  std::vector<Edge> in;            // complement -> I
  std::vector<Edge> external;      // complement -> complement
};

inline LinkPartition partition_links(const WebGraph& g, const NodeSet& I) {
  LinkPartition p;
  for (const auto& e : g.edges()) {
    const bool src_in = set_contains(I, e.first);
    const bool dst_in = set_contains(I, e.second);
    if (src_in && dst_in) p.internal.push_back(e);
    else if (src_in) p.out.push_back(e);
    else if (dst_in) p.in.push_back(e);
    else p.external.push_back(e);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Reachability. A path of length zero counts: i in J means access.
// ---------------------------------------------------------------------------
inline bool has_access(const WebGraph& g, int i, const NodeSet& J) {
  if (i < 1 || i > g.n()) {
    throw ValidationError("node id " + std::to_string(i) + " out of range");
  }
  if (set_contains(J, i)) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.n()) + 1, 0);
  std::deque<int> queue{i};
  seen[static_cast<std::size_t>(i)] = 1;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int next : g.children(cur)) {
      if (set_contains(J, next)) return true;
      if (!seen[static_cast<std::size_t>(next)]) {
        seen[static_cast<std::size_t>(next)] = 1;
        queue.push_back(next);
      }
    }
  }
  return false;
}

// Nodes of I with no directed path to the complement of I.
inline NodeSet accessibility_violations(const WebGraph& g, const NodeSet& I) {
  const NodeSet outside = complement_of(g.n(), I);
  if (outside.empty()) {
    throw AccessibilityUndefinedError(
        "accessibility is undefined: the complement of the node set is empty");
  }
  // One backward sweep instead of |I| forward searches: every node with an
  // edge into the complement seeds the reachable-from set.
  std::vector<char> reaches(static_cast<std::size_t>(g.n()) + 1, 0);
  const auto par = g.parents();
  std::deque<int> queue;
  for (int i = 1; i <= g.n(); ++i) {
    if (set_contains(I, i)) {
      for (int j : g.children(i)) {
        if (!set_contains(I, j)) {
          reaches[static_cast<std::size_t>(i)] = 1;
          queue.push_back(i);
          break;
        }
      }
    }
  }
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int p : par[static_cast<std::size_t>(cur - 1)]) {
      if (set_contains(I, p) && !reaches[static_cast<std::size_t>(p)]) {
        reaches[static_cast<std::size_t>(p)] = 1;
        queue.push_back(p);
      }
    }
  }
  NodeSet bad;
  for (int i : I) {
    if (!reaches[static_cast<std::size_t>(i)]) bad.push_back(i);
  }
  return bad;
}

// True when every node of I can reach the complement of I. Throws
// AccessibilityUndefinedError when the complement is empty: the requirement
// is about reaching the outside, which does not exist in that case.
inline bool check_accessibility(const WebGraph& g, const NodeSet& I) {
  return accessibility_violations(g, I).empty();
}

// Nodes with no outgoing links.
inline NodeSet dangling_nodes(const WebGraph& g) {
  NodeSet out;
  for (int i = 1; i <= g.n(); ++i) {
    if (g.out_degree(i) == 0) out.push_back(i);
  }
  return out;
}

inline bool check_no_dangling(const WebGraph& g) {
  return dangling_nodes(g).empty();
}

// ---------------------------------------------------------------------------
// Strongly connected components (Tarjan, iterative). Components are returned
// as sorted node lists, ordered by their smallest member, so output is
// deterministic and independent of traversal details.
// ---------------------------------------------------------------------------
inline std::vector<NodeSet> strongly_connected_components(const WebGraph& g) {
  const int n = g.n();
  std::vector<int> index(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> low(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> stack;
  std::vector<NodeSet> comps;
  int next_index = 1;

  struct Frame {
    int node;
    std::size_t child_pos;
  };
  for (int start = 1; start <= n; ++start) {
    if (index[static_cast<std::size_t>(start)] != 0) continue;
    std::vector<Frame> call{{start, 0}};
    index[static_cast<std::size_t>(start)] = low[static_cast<std::size_t>(start)] =
        next_index++;
    stack.push_back(start);
    on_stack[static_cast<std::size_t>(start)] = 1;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& ch = g.children(f.node);
      if (f.child_pos < ch.size()) {
        const int next = ch[f.child_pos++];
        if (index[static_cast<std::size_t>(next)] == 0) {
          index[static_cast<std::size_t>(next)] =
              low[static_cast<std::size_t>(next)] = next_index++;
          stack.push_back(next);
          on_stack[static_cast<std::size_t>(next)] = 1;
          call.push_back({next, 0});
        } else if (on_stack[static_cast<std::size_t>(next)]) {
          low[static_cast<std::size_t>(f.node)] =
              std::min(low[static_cast<std::size_t>(f.node)],
                       index[static_cast<std::size_t>(next)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.node)] ==
            index[static_cast<std::size_t>(f.node)]) {
          NodeSet comp;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            comp.push_back(w);
          } while (w != f.node);
          comps.push_back(normalized(comp));
        }
        const int done = f.node;
        call.pop_back();
        if (!call.empty()) {
          low[static_cast<std::size_t>(call.back().node)] =
              std::min(low[static_cast<std::size_t>(call.back().node)],
                       low[static_cast<std::size_t>(done)]);
        }
      }
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const NodeSet& a, const NodeSet& b) { return a.front() < b.front(); });
  return comps;
}

// ---------------------------------------------------------------------------
// Final classes of the subgraph induced by I: strongly connected components
// of (I, internal edges) that no internal edge leaves. A singleton with no
// internal children qualifies (its internal edge set is empty); a singleton
// with a self-link also qualifies and has a nonempty internal edge set. The
// distinction matters for the exit-count rule of the outlink certificate.
// ---------------------------------------------------------------------------
struct FinalClass {
  NodeSet nodes;
  bool has_internal_edges = false;  // any internal edge within the class
};

inline std::vector<FinalClass> final_classes(const WebGraph& g, const NodeSet& I) {
  // Build the induced subgraph on I with compact labels.
  const int k = static_cast<int>(I.size());
  std::vector<Edge> sub_edges;
  for (int idx = 0; idx < k; ++idx) {
    const int i = I[static_cast<std::size_t>(idx)];
    for (int j : g.children(i)) {
      if (set_contains(I, j)) {
        const int jdx = static_cast<int>(
            std::lower_bound(I.begin(), I.end(), j) - I.begin());
        sub_edges.emplace_back(idx + 1, jdx + 1);
      }
    }
  }
  if (k == 0) return {};
  const WebGraph sub = WebGraph::from_edges(k, sub_edges);
  std::vector<FinalClass> out;
  for (const NodeSet& comp : strongly_connected_components(sub)) {
    bool leaves = false;
    bool internal = false;
    for (int a : comp) {
      for (int b : sub.children(a)) {
        if (set_contains(comp, b)) internal = true;
        else leaves = true;
      }
    }
    if (leaves) continue;
    FinalClass fc;
    fc.has_internal_edges = internal;
    for (int a : comp) fc.nodes.push_back(I[static_cast<std::size_t>(a - 1)]);
    fc.nodes = normalized(fc.nodes);
    out.push_back(std::move(fc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The absorbing rewrite of I: every edge leaving I is dropped, the internal
// edges become one self-link per node of I, and all edges of the outside
// world (into I and among the complement) are kept. Idempotent.
// ---------------------------------------------------------------------------
inline WebGraph basic_absorbing(const WebGraph& g, const NodeSet& I) {
  if (I.empty()) throw PreconditionError("node set must be nonempty");
  std::vector<Edge> edges;
  for (const auto& [i, j] : g.edges()) {
    if (set_contains(I, i)) continue;  // drop internal and leaving edges
    edges.emplace_back(i, j);          // keep entering and outside edges
  }
  for (int i : I) edges.emplace_back(i, i);
  return WebGraph::from_edges(g.n(), edges);
}

}  // namespace linkopt
