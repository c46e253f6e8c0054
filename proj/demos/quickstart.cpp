// Quickstart tour of the library: load a graph, rank it, inspect a set,
// evaluate a link change in closed form, and search for the best structure.
//
// Build via CMake (target demo_quickstart), then run:
//   ./demo_quickstart demos/fig2.txt

#include <cstdio>
#include <string>

#include "linkopt/linkopt.hpp"

int main(int argc, char** argv) {
  using namespace linkopt;

  const std::string path = argc > 1 ? argv[1] : "demos/fig2.txt";
  const WebGraph g = parse_graph_file(path);
  const RankingContext ctx = RankingContext::uniform(g.n());
  std::printf("loaded %s: %d nodes, %zu edges\n", path.c_str(), g.n(),
              g.edge_count());

  // Global ranking.
  const PageRankVector pr = pagerank(g, ctx);
  int best = 1;
  for (int i = 2; i <= g.n(); ++i)
    if (pr.pi[i - 1] > pr.pi[best - 1]) best = i;
  std::printf("highest-ranked node: %d (score %.4f)\n", best,
              pr.pi[best - 1]);

  // Study the website consisting of node 1.
  const NodeSet I = {1};
  const VisitVector v = visit_vector(g, I, ctx);
  std::printf("set value of {1}: %.4f\n", set_pagerank(g, I, ctx));
  const VTopSet top = v_top_set(g, I, ctx);
  std::printf("most valuable external nodes:");
  for (int t : top.nodes) std::printf(" %d", t);
  std::printf("\n");

  // What happens if node 1 adds a link to the first top node?
  const int target = top.nodes.front();
  if (!g.has_edge(1, target)) {
    MutationEvaluator eval(g, I, ctx);
    const MutationEffect eff = eval.evaluate(mutation_from_add(g, 1, target));
    std::printf("adding (1,%d): %.4f -> %.4f (%s)\n", target, eff.old_value,
                eff.new_value, to_string(eff.sign));
  }

  // Best achievable structure for {1} with everything else fixed.
  const BuiltStructure built = build_optimal_structure(g, I, ctx);
  std::printf("best structure for {1} reaches %.4f\n", built.value);
  const VisitVector vb = visit_vector(built.graph, I, ctx);
  std::printf("its drawing:\n%s", export_dot(built.graph, I, vb.v).c_str());
  return 0;
}
