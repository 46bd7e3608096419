#pragma once

#include <vector>

#include "reebskel/jcn.hpp"
#include "reebskel/mdrg.hpp"

namespace reebskel {

/// JCN nodes marked singular.
struct JacobiStructure {
  std::vector<char> singular;  // per JCN node

  std::vector<NodeId> nodes() const;
  std::int64_t size() const;
};

/// Marks the members of critical deepest-level MDRG nodes.
JacobiStructure extract_jacobi(const Mdrg& mdrg, NodeId node_count);

/// Union of extract_jacobi over every field order.
JacobiStructure extract_jacobi_all_orders(const JointContourNet& jcn);

enum class ComponentKind { Regular, Singular };

struct ComponentRef {
  ComponentKind kind = ComponentKind::Regular;
  int index = -1;
};

/// Regular components are the connected pieces of the JCN without its
/// singular nodes. Singular nodes are labelled by the set of regular
/// components they touch and grouped into connected pieces of equal label.
/// Both lists are ordered by smallest member.
struct ComponentPartition {
  std::vector<std::vector<NodeId>> regular;
  std::vector<std::vector<NodeId>> singular;
  std::vector<std::vector<int>> singular_adjacent_regular;  // ascending
  std::vector<ComponentRef> component_of_node;
};

ComponentPartition partition_components(const JointContourNet& jcn, const JacobiStructure& jacobi);

}  // namespace reebskel
