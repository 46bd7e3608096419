#pragma once

#include <map>
#include <string>
#include <vector>

#include "reebskel/fragments.hpp"
#include "reebskel/grid.hpp"
#include "reebskel/jcn.hpp"

namespace reebskel::testing {

struct Built {
  FragmentSet fragments;
  std::vector<FragmentAdjacency> adjacency;
  std::vector<Simplex> mesh;
  JointContourNet jcn;
};

inline Built build(const MultiFieldGrid& g, const QuantizationSpec& q, int workers = 1) {
  Built b;
  b.mesh = simplices(g);
  b.fragments = slice_grid(g, q, {workers, false});
  b.adjacency = fragment_adjacency(b.fragments, b.mesh);
  b.jcn = build_jcn(b.fragments, b.adjacency);
  return b;
}

inline MultiFieldGrid synthetic(std::vector<std::string> names, std::array<std::int64_t, 3> dims, Box box) {
  std::vector<FieldSpec> specs;
  for (const auto& n : names) specs.push_back(parse_field_spec(n));
  return generate_field(specs, dims, box);
}

inline const Box kCube{{-5, -5, -5}, {5, 5, 5}};
inline const Box kSquare{{-5, -5, 0}, {5, 5, 0}};

// Vertices (0,0),(1,0),(0,1),(1,1) carrying (5,0),(0,0),(5,0),(3,2).
inline MultiFieldGrid two_triangles() {
  return MultiFieldGrid({2, 2, 1}, {0, 0, 0}, {1, 1, 1}, {"f1", "f2"}, {{5, 0, 5, 3}, {0, 0, 0, 2}});
}

inline NodeId node_with_tuple(const JointContourNet& jcn, const std::vector<int>& t) {
  for (NodeId n = 0; n < jcn.node_count(); ++n)
    if (jcn.node(n).tuple == t) return n;
  return -1;
}

inline std::map<std::vector<int>, int> nodes_per_tuple(const JointContourNet& jcn) {
  std::map<std::vector<int>, int> out;
  for (const auto& n : jcn.nodes()) ++out[n.tuple];
  return out;
}

}  // namespace reebskel::testing
