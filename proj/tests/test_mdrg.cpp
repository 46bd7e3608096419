#include <algorithm>
#include <numeric>
#include <set>

#include "doctest.h"
#include "reebskel/mdrg.hpp"
#include "reebskel/oracle.hpp"
#include "support.hpp"

using namespace reebskel;
using namespace reebskel::testing;

namespace {

// A JCN given directly by tuples and edges; fragments are one per node.
JointContourNet graph(std::vector<std::vector<int>> tuples, std::vector<std::pair<int, int>> edges) {
  std::vector<JcnNode> nodes;
  std::vector<NodeId> owner;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    nodes.push_back({tuples[i], {static_cast<FragmentId>(i)}, 1.0, 0.0});
    owner.push_back(static_cast<NodeId>(i));
  }
  std::vector<JcnEdge> list;
  for (auto [a, b] : edges) list.push_back({std::min(a, b), std::max(a, b), 1.0});
  std::sort(list.begin(), list.end(), [](const JcnEdge& x, const JcnEdge& y) {
    return std::make_pair(x.a, x.b) < std::make_pair(y.a, y.b);
  });
  return JointContourNet(static_cast<int>(tuples.front().size()), std::move(nodes), std::move(list),
                         std::move(owner));
}

std::vector<NodeId> all_nodes(const JointContourNet& j) {
  std::vector<NodeId> v(j.node_count());
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace

TEST_CASE("a monotone path has critical ends only") {
  const auto j = graph({{0}, {1}, {2}, {3}}, {{0, 1}, {1, 2}, {2, 3}});
  const auto g = create_reeb_graph(j, all_nodes(j), 0);
  CHECK(g.node_count() == 4);
  CHECK(g.edges.size() == 3);
  CHECK(classify_critical(g) == std::vector<char>{1, 0, 0, 1});
}

TEST_CASE("equal-value neighbors collapse into one Reeb graph node") {
  const auto j = graph({{0}, {1}, {1}, {2}}, {{0, 1}, {1, 2}, {2, 3}});
  const auto g = create_reeb_graph(j, all_nodes(j), 0);
  REQUIRE(g.node_count() == 3);
  CHECK(g.members[1] == std::vector<NodeId>{1, 2});
  CHECK(g.value == std::vector<int>{0, 1, 2});
}

TEST_CASE("branching and isolated nodes are critical") {
  // 0 below two separate nodes valued 1 (a split), plus an isolated node.
  const auto j = graph({{0}, {1}, {1}, {2}, {7}}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  const auto g = create_reeb_graph(j, all_nodes(j), 0);
  REQUIRE(g.node_count() == 5);
  const auto c = classify_critical(g);
  CHECK(c == std::vector<char>{1, 0, 0, 1, 1});

  const auto single = graph({{4}}, {});
  CHECK(classify_critical(create_reeb_graph(single, all_nodes(single), 0)) == std::vector<char>{1});
}

TEST_CASE("a sub-JCN restricts the Reeb graph") {
  const auto j = graph({{0, 0}, {0, 1}, {1, 1}, {1, 0}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const std::vector<NodeId> sub{0, 1};
  const auto g = create_reeb_graph(j, sub, 1);
  CHECK(g.node_count() == 2);
  CHECK(g.edges.size() == 1);
}

TEST_CASE("two-triangle example: two-level MDRG") {
  const auto b = build(two_triangles(), QuantizationSpec::uniform(2, 1.0));
  const auto m = build_mdrg(b.jcn);
  REQUIRE(m.levels() == 2);
  const auto& root = m.graphs[0];
  CHECK(root.depth == 0);
  CHECK(root.graph.node_count() == 6);
  CHECK(root.graph.edges.size() == 5);
  std::vector<int> critical_values;
  for (int n = 0; n < root.graph.node_count(); ++n)
    if (root.critical[n]) critical_values.push_back(root.graph.value[n]);
  CHECK(critical_values == std::vector<int>{0, 5});

  int graphs = 0, nodes = 0;
  std::size_t edges = 0;
  for (const auto& g : m.graphs) {
    if (g.depth != 1) continue;
    ++graphs;
    nodes += g.graph.node_count();
    edges += g.graph.edges.size();
    CHECK(m.graphs[g.parent_graph].child[g.parent_node] == static_cast<int>(&g - m.graphs.data()));
  }
  CHECK(graphs == 6);
  CHECK(nodes == 12);
  CHECK(edges == 6);
}

TEST_CASE("deepest-level groups partition the JCN nodes") {
  const auto b = build(synthetic({"paraboloid", "height"}, {7, 7, 7}, kCube), QuantizationSpec::uniform(2, 1.0));
  for (const std::vector<int>& order : {std::vector<int>{0, 1}, std::vector<int>{1, 0}}) {
    const auto m = build_mdrg(b.jcn, order);
    std::vector<int> seen(b.jcn.node_count(), 0);
    for (const auto& g : m.graphs)
      if (g.depth == 1)
        for (const auto& members : g.graph.members)
          for (NodeId n : members) ++seen[n];
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
}

TEST_CASE("union-find work is linear in the net size") {
  const auto b = build(synthetic({"sphere", "height"}, {9, 9, 9}, kCube), QuantizationSpec::uniform(2, 1.0));
  const auto m = build_mdrg(b.jcn);
  // Each level performs at most one unite per JCN edge and one find per node
  // per pass, each costing a bounded number of counted calls.
  const auto size = b.jcn.node_count() + b.jcn.edge_count();
  CHECK(m.union_find_operations <= 8 * m.levels() * size);
}

TEST_CASE("level-one groups equal the level-set flood fill") {
  const auto b = build(synthetic({"paraboloid", "height"}, {9, 9, 9}, kCube), QuantizationSpec::uniform(2, 1.0));
  const auto m = build_mdrg(b.jcn);
  std::map<int, int> groups;
  for (int v : m.graphs[0].graph.value) ++groups[v];
  CHECK(groups == count_level_components(b.fragments, b.adjacency, 0));
}

TEST_CASE("a constant appended field leaves the level-one classification") {
  const auto b = build(synthetic({"paraboloid", "constant:0.25"}, {9, 9, 9}, {{0, 0, -5}, {5, 5, 5}}),
                       QuantizationSpec::uniform(2, 1.0));
  const auto m = build_mdrg(b.jcn);
  const auto& root = m.graphs[0];
  for (int n = 0; n < root.graph.node_count(); ++n) {
    const auto& child = m.graphs[root.child[n]];
    REQUIRE(child.graph.node_count() == 1);
    CHECK(child.critical[0] == root.critical[n]);
  }
}

TEST_CASE("field orders must be permutations") {
  const auto b = build(two_triangles(), QuantizationSpec::uniform(2, 1.0));
  CHECK_THROWS_AS(build_mdrg(b.jcn, std::vector<int>{0, 0}), ConfigError);
  CHECK_THROWS_AS(build_mdrg(b.jcn, std::vector<int>{0}), ConfigError);
  CHECK_THROWS_AS(build_mdrg(b.jcn, std::vector<int>{1, 2}), ConfigError);
  CHECK_NOTHROW(build_mdrg(b.jcn, std::vector<int>{1, 0}));
}
