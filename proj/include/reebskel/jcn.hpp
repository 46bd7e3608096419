#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reebskel/fragments.hpp"
#include "reebskel/types.hpp"

namespace reebskel {

/// Disjoint sets with union by size and path halving. Counts the find and
/// unite calls made on it.
class UnionFind {
 public:
  explicit UnionFind(std::int64_t n = 0);

  std::int64_t find(std::int64_t x);
  /// Returns true if x and y were in different sets.
  bool unite(std::int64_t x, std::int64_t y);
  std::int64_t size() const { return static_cast<std::int64_t>(parent_.size()); }
  std::int64_t operations() const { return ops_; }

 private:
  std::vector<std::int64_t> parent_;
  std::vector<std::int64_t> size_;
  std::int64_t ops_ = 0;
};

struct JcnNode {
  std::vector<int> tuple;
  std::vector<FragmentId> fragments;  // ascending
  double volume = 0.0;
  /// Area shared with fragments of other nodes.
  double boundary_area = 0.0;
};

struct JcnEdge {
  NodeId a = 0;  // a < b
  NodeId b = 0;
  double area = 0.0;
};

/// Nodes are joint contour slabs ordered by (tuple, smallest fragment id);
/// edges are sorted by (a, b).
class JointContourNet {
 public:
  JointContourNet() = default;
  JointContourNet(int field_count, std::vector<JcnNode> nodes, std::vector<JcnEdge> edges,
                  std::vector<NodeId> node_of_fragment);

  int field_count() const { return field_count_; }
  NodeId node_count() const { return static_cast<NodeId>(nodes_.size()); }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(edges_.size()); }
  const JcnNode& node(NodeId n) const { return nodes_[n]; }
  const std::vector<JcnNode>& nodes() const { return nodes_; }
  const std::vector<JcnEdge>& edges() const { return edges_; }
  int value(NodeId n, int field) const { return nodes_[n].tuple[field]; }

  /// Neighbors in ascending order, and the matching edge indices.
  std::span<const NodeId> neighbors(NodeId n) const {
    return {adj_.data() + adj_begin_[n], static_cast<std::size_t>(adj_begin_[n + 1] - adj_begin_[n])};
  }
  std::span<const std::int64_t> incident_edges(NodeId n) const {
    return {adj_edge_.data() + adj_begin_[n],
            static_cast<std::size_t>(adj_begin_[n + 1] - adj_begin_[n])};
  }
  NodeId node_of_fragment(FragmentId f) const { return node_of_fragment_[f]; }

  /// Number of connected components of the graph.
  int component_count() const;

 private:
  int field_count_ = 0;
  std::vector<JcnNode> nodes_;
  std::vector<JcnEdge> edges_;
  std::vector<NodeId> node_of_fragment_;
  std::vector<std::int64_t> adj_begin_{0};
  std::vector<NodeId> adj_;
  std::vector<std::int64_t> adj_edge_;
};

/// Collapses same-tuple adjacent fragments into slabs; differing-tuple pairs
/// become edges, with their interface areas summed.
JointContourNet build_jcn(const FragmentSet& fragments, std::span<const FragmentAdjacency> adjacency);

}  // namespace reebskel
