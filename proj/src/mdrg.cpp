#include "reebskel/mdrg.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace reebskel {

QReebGraph create_reeb_graph(const JointContourNet& jcn, std::span<const NodeId> subgraph, int field) {
  QReebGraph g;
  g.field = field;
  const auto n = static_cast<std::int64_t>(subgraph.size());
  if (n == 0) return g;

  std::vector<NodeId> sorted(subgraph.begin(), subgraph.end());
  std::sort(sorted.begin(), sorted.end());
  auto local = [&](NodeId id) -> std::int64_t {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
    return it != sorted.end() && *it == id ? it - sorted.begin() : -1;
  };

  UnionFind uf(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (NodeId nb : jcn.neighbors(sorted[i])) {
      if (nb <= sorted[i]) continue;
      const auto j = local(nb);
      if (j >= 0 && jcn.value(sorted[i], field) == jcn.value(nb, field)) uf.unite(i, j);
    }

  // Groups ordered by (value, smallest member). Members are visited in
  // ascending order, so the first member seen is the smallest.
  std::vector<std::int64_t> first(n, -1);
  std::vector<std::int64_t> reps;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto root = uf.find(i);
    if (first[root] < 0) {
      first[root] = i;
      reps.push_back(root);
    }
  }
  std::sort(reps.begin(), reps.end(), [&](std::int64_t a, std::int64_t b) {
    const int va = jcn.value(sorted[first[a]], field), vb = jcn.value(sorted[first[b]], field);
    return va != vb ? va < vb : first[a] < first[b];
  });
  std::vector<int> group_of_root(n, -1);
  for (std::size_t k = 0; k < reps.size(); ++k) group_of_root[reps[k]] = static_cast<int>(k);

  g.value.resize(reps.size());
  g.members.resize(reps.size());
  std::vector<int> group(n);
  for (std::int64_t i = 0; i < n; ++i) {
    group[i] = group_of_root[uf.find(i)];
    g.members[group[i]].push_back(sorted[i]);
    g.value[group[i]] = jcn.value(sorted[i], field);
  }

  for (std::int64_t i = 0; i < n; ++i)
    for (NodeId nb : jcn.neighbors(sorted[i])) {
      if (nb <= sorted[i]) continue;
      const auto j = local(nb);
      if (j < 0 || group[i] == group[j]) continue;
      if (jcn.value(sorted[i], field) == jcn.value(nb, field)) continue;
      g.edges.emplace_back(std::min(group[i], group[j]), std::max(group[i], group[j]));
    }
  std::sort(g.edges.begin(), g.edges.end());
  g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
  g.union_find_operations = uf.operations();
  return g;
}

std::vector<char> classify_critical(const QReebGraph& g) {
  std::vector<int> down(g.node_count(), 0), up(g.node_count(), 0);
  for (const auto& [a, b] : g.edges) {
    if (g.value[a] < g.value[b]) {
      ++up[a];
      ++down[b];
    } else {
      ++down[a];
      ++up[b];
    }
  }
  std::vector<char> critical(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) critical[i] = down[i] != 1 || up[i] != 1;
  return critical;
}

Mdrg build_mdrg(const JointContourNet& jcn, std::span<const int> field_order) {
  Mdrg m;
  if (field_order.empty()) {
    m.field_order.resize(jcn.field_count());
    std::iota(m.field_order.begin(), m.field_order.end(), 0);
  } else {
    m.field_order.assign(field_order.begin(), field_order.end());
    auto check = m.field_order;
    std::sort(check.begin(), check.end());
    bool ok = static_cast<int>(check.size()) == jcn.field_count();
    for (std::size_t i = 0; ok && i < check.size(); ++i) ok = check[i] == static_cast<int>(i);
    if (!ok) throw ConfigError("field order must be a permutation of the field indices");
  }
  if (jcn.node_count() == 0) return m;

  std::vector<NodeId> all(jcn.node_count());
  std::iota(all.begin(), all.end(), 0);

  struct Work {
    int depth;
    int parent_graph;
    int parent_node;
    std::vector<NodeId> nodes;
  };
  std::deque<Work> queue;
  queue.push_back({0, -1, -1, std::move(all)});
  while (!queue.empty()) {
    Work w = std::move(queue.front());
    queue.pop_front();
    const int index = static_cast<int>(m.graphs.size());
    MdrgGraph mg;
    mg.depth = w.depth;
    mg.parent_graph = w.parent_graph;
    mg.parent_node = w.parent_node;
    mg.graph = create_reeb_graph(jcn, w.nodes, m.field_order[w.depth]);
    m.union_find_operations += mg.graph.union_find_operations;
    if (w.depth > 0 && mg.graph.node_count() == 1) {
      mg.critical = {m.graphs[w.parent_graph].critical[w.parent_node]};
    } else {
      mg.critical = classify_critical(mg.graph);
    }
    mg.child.assign(mg.graph.node_count(), -1);
    if (w.parent_graph >= 0) m.graphs[w.parent_graph].child[w.parent_node] = index;
    if (w.depth + 1 < m.levels())
      for (int n = 0; n < mg.graph.node_count(); ++n)
        queue.push_back({w.depth + 1, index, n, mg.graph.members[n]});
    m.graphs.push_back(std::move(mg));
  }
  return m;
}

std::vector<NodeId> deepest_critical_nodes(const Mdrg& mdrg) {
  std::vector<NodeId> out;
  for (const auto& g : mdrg.graphs) {
    if (g.depth + 1 != mdrg.levels()) continue;
    for (int n = 0; n < g.graph.node_count(); ++n)
      if (g.critical[n]) out.insert(out.end(), g.graph.members[n].begin(), g.graph.members[n].end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace reebskel
