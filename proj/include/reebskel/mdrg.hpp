#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reebskel/jcn.hpp"

namespace reebskel {

/// Quantized Reeb graph of one field over a set of JCN nodes. Each node is a
/// group of JCN nodes with one value of the field, connected through
/// equal-value JCN edges. Nodes are ordered by (value, smallest member).
struct QReebGraph {
  int field = 0;
  std::vector<int> value;
  std::vector<std::vector<NodeId>> members;  // ascending JCN node ids
  std::vector<std::pair<int, int>> edges;    // first < second, sorted
  /// Union-find calls made while building the graph.
  std::int64_t union_find_operations = 0;

  int node_count() const { return static_cast<int>(value.size()); }
};

/// Groups `subgraph` (JCN node ids) by equal values of `field`; edges come
/// from JCN edges joining groups with differing values.
QReebGraph create_reeb_graph(const JointContourNet& jcn, std::span<const NodeId> subgraph, int field);

/// Critical iff the number of neighbors with a smaller value or the number
/// with a larger value differs from one.
std::vector<char> classify_critical(const QReebGraph& g);

/// One graph of the MDRG tree. The root (depth 0) spans the whole JCN with
/// field_order[0]; the child of node n at depth k spans n's members with
/// field_order[k + 1].
struct MdrgGraph {
  int depth = 0;
  int parent_graph = -1;
  int parent_node = -1;
  QReebGraph graph;
  std::vector<int> child;      // graph index per node, -1 at the deepest level
  std::vector<char> critical;  // see build_mdrg
};

struct Mdrg {
  std::vector<int> field_order;
  std::vector<MdrgGraph> graphs;  // breadth first; graphs[0] is the root
  std::int64_t union_find_operations = 0;

  int levels() const { return static_cast<int>(field_order.size()); }
};

/// Builds the tree level by level with a work queue. An empty field order
/// means input order.
///
/// A single-node graph below the root carries no information about its field
/// and takes the classification of its parent node; every other node is
/// classified by classify_critical.
Mdrg build_mdrg(const JointContourNet& jcn, std::span<const int> field_order = {});

/// JCN nodes inside critical nodes of deepest-level graphs, ascending.
std::vector<NodeId> deepest_critical_nodes(const Mdrg& mdrg);

}  // namespace reebskel
