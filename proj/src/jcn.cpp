#include "reebskel/jcn.hpp"

#include <algorithm>
#include <numeric>

namespace reebskel {

UnionFind::UnionFind(std::int64_t n) : parent_(n), size_(n, 1) {
  std::iota(parent_.begin(), parent_.end(), std::int64_t{0});
}

std::int64_t UnionFind::find(std::int64_t x) {
  ++ops_;
  while (parent_[x] != x) {
    parent_[x] = parent_[parent_[x]];
    x = parent_[x];
  }
  return x;
}

bool UnionFind::unite(std::int64_t x, std::int64_t y) {
  x = find(x);
  y = find(y);
  ++ops_;
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  return true;
}

JointContourNet::JointContourNet(int field_count, std::vector<JcnNode> nodes,
                                 std::vector<JcnEdge> edges, std::vector<NodeId> node_of_fragment)
    : field_count_(field_count),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      node_of_fragment_(std::move(node_of_fragment)) {
  const auto n = nodes_.size();
  std::vector<std::int64_t> degree(n, 0);
  for (const auto& e : edges_) {
    ++degree[e.a];
    ++degree[e.b];
  }
  adj_begin_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adj_begin_[i + 1] = adj_begin_[i] + degree[i];
  adj_.resize(adj_begin_[n]);
  adj_edge_.resize(adj_begin_[n]);
  std::vector<std::int64_t> fill(adj_begin_.begin(), adj_begin_.end() - 1);
  // Edges are sorted by (a, b), so every neighbor list comes out ascending
  // once the "b side" entries (smaller ids) precede the "a side" ones.
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adj_[fill[edges_[e].b]] = edges_[e].a;
    adj_edge_[fill[edges_[e].b]++] = static_cast<std::int64_t>(e);
  }
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    adj_[fill[edges_[e].a]] = edges_[e].b;
    adj_edge_[fill[edges_[e].a]++] = static_cast<std::int64_t>(e);
  }
}

int JointContourNet::component_count() const {
  UnionFind uf(node_count());
  int count = node_count();
  for (const auto& e : edges_) count -= uf.unite(e.a, e.b);
  return count;
}

JointContourNet build_jcn(const FragmentSet& fragments, std::span<const FragmentAdjacency> adjacency) {
  const auto nf = fragments.size();
  UnionFind uf(nf);
  for (const auto& p : adjacency)
    if (std::ranges::equal(fragments.tuple(p.a), fragments.tuple(p.b))) uf.unite(p.a, p.b);

  // Slabs in order of (tuple, smallest fragment id).
  std::vector<std::int64_t> roots;
  std::vector<std::int64_t> root_of(nf);
  for (std::int64_t f = 0; f < nf; ++f) {
    root_of[f] = uf.find(f);
    if (root_of[f] == f) roots.push_back(f);
  }
  // The root is not necessarily the smallest member; find the smallest.
  std::vector<std::int64_t> smallest(nf, -1);
  for (std::int64_t f = 0; f < nf; ++f)
    if (smallest[root_of[f]] < 0) smallest[root_of[f]] = f;
  for (auto& root : roots) root = smallest[root];
  std::sort(roots.begin(), roots.end(), [&](std::int64_t a, std::int64_t b) {
    const auto ta = fragments.tuple(a), tb = fragments.tuple(b);
    if (!std::ranges::equal(ta, tb)) return std::ranges::lexicographical_compare(ta, tb);
    return a < b;
  });

  std::vector<NodeId> node_of_root(nf, -1);
  for (std::size_t i = 0; i < roots.size(); ++i) node_of_root[root_of[roots[i]]] = static_cast<NodeId>(i);
  std::vector<NodeId> node_of(nf);
  std::vector<JcnNode> nodes(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const auto t = fragments.tuple(roots[i]);
    nodes[i].tuple.assign(t.begin(), t.end());
  }
  for (std::int64_t f = 0; f < nf; ++f) {
    node_of[f] = node_of_root[root_of[f]];
    auto& node = nodes[node_of[f]];
    node.fragments.push_back(f);
    node.volume += fragments.volume[f];
  }

  std::vector<JcnEdge> raw;
  for (const auto& p : adjacency) {
    const NodeId a = node_of[p.a], b = node_of[p.b];
    if (a == b) continue;
    raw.push_back({std::min(a, b), std::max(a, b), p.area});
  }
  std::sort(raw.begin(), raw.end(), [](const JcnEdge& x, const JcnEdge& y) {
    return x.a != y.a ? x.a < y.a : x.b < y.b;
  });
  std::vector<JcnEdge> edges;
  for (const auto& e : raw) {
    if (!edges.empty() && edges.back().a == e.a && edges.back().b == e.b) edges.back().area += e.area;
    else edges.push_back(e);
  }
  for (const auto& e : edges) {
    nodes[e.a].boundary_area += e.area;
    nodes[e.b].boundary_area += e.area;
  }
  return JointContourNet(fragments.field_count, std::move(nodes), std::move(edges), std::move(node_of));
}

}  // namespace reebskel
