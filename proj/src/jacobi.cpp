#include "reebskel/jacobi.hpp"

#include <algorithm>
#include <numeric>

namespace reebskel {

std::vector<NodeId> JacobiStructure::nodes() const {
  std::vector<NodeId> out;
  for (std::size_t i = 0; i < singular.size(); ++i)
    if (singular[i]) out.push_back(static_cast<NodeId>(i));
  return out;
}

std::int64_t JacobiStructure::size() const {
  return std::count(singular.begin(), singular.end(), char{1});
}

JacobiStructure extract_jacobi(const Mdrg& mdrg, NodeId node_count) {
  JacobiStructure j;
  j.singular.assign(node_count, 0);
  for (NodeId n : deepest_critical_nodes(mdrg)) j.singular[n] = 1;
  return j;
}

JacobiStructure extract_jacobi_all_orders(const JointContourNet& jcn) {
  std::vector<int> order(jcn.field_count());
  std::iota(order.begin(), order.end(), 0);
  JacobiStructure all;
  all.singular.assign(jcn.node_count(), 0);
  do {
    const auto j = extract_jacobi(build_mdrg(jcn, order), jcn.node_count());
    for (NodeId n = 0; n < jcn.node_count(); ++n) all.singular[n] |= j.singular[n];
  } while (std::next_permutation(order.begin(), order.end()));
  return all;
}

namespace {

// Components of the nodes accepted by `same`, grown breadth first from each
// unvisited node in ascending order.
template <typename Accept>
std::vector<std::vector<NodeId>> components(const JointContourNet& jcn, const std::vector<NodeId>& seeds,
                                            Accept same) {
  std::vector<char> seen(jcn.node_count(), 0);
  std::vector<std::vector<NodeId>> out;
  for (NodeId s : seeds) {
    if (seen[s]) continue;
    std::vector<NodeId> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (NodeId nb : jcn.neighbors(comp[head]))
        if (!seen[nb] && same(s, nb)) {
          seen[nb] = 1;
          comp.push_back(nb);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

ComponentPartition partition_components(const JointContourNet& jcn, const JacobiStructure& jacobi) {
  ComponentPartition p;
  const NodeId n = jcn.node_count();
  p.component_of_node.assign(n, {});
  std::vector<NodeId> regular_nodes, singular_nodes;
  for (NodeId i = 0; i < n; ++i) (jacobi.singular[i] ? singular_nodes : regular_nodes).push_back(i);

  p.regular = components(jcn, regular_nodes, [&](NodeId, NodeId b) { return !jacobi.singular[b]; });
  for (std::size_t c = 0; c < p.regular.size(); ++c)
    for (NodeId m : p.regular[c]) p.component_of_node[m] = {ComponentKind::Regular, static_cast<int>(c)};

  std::vector<std::vector<int>> label(n);
  for (NodeId s : singular_nodes) {
    for (NodeId nb : jcn.neighbors(s))
      if (!jacobi.singular[nb]) label[s].push_back(p.component_of_node[nb].index);
    std::sort(label[s].begin(), label[s].end());
    label[s].erase(std::unique(label[s].begin(), label[s].end()), label[s].end());
  }
  p.singular = components(jcn, singular_nodes, [&](NodeId a, NodeId b) {
    return jacobi.singular[b] && label[a] == label[b];
  });
  for (std::size_t c = 0; c < p.singular.size(); ++c) {
    for (NodeId m : p.singular[c]) p.component_of_node[m] = {ComponentKind::Singular, static_cast<int>(c)};
    p.singular_adjacent_regular.push_back(label[p.singular[c].front()]);
  }
  return p;
}

}  // namespace reebskel
