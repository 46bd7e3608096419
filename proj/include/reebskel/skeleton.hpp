#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "reebskel/jacobi.hpp"
#include "reebskel/jcn.hpp"

namespace reebskel {

enum class MeasureKind { Range, Volume, SurfaceArea };

/// "range", "volume" or "surface_area"; throws ConfigError otherwise.
MeasureKind parse_measure_kind(std::string_view text);
std::string_view measure_kind_name(MeasureKind kind);

struct MeasureTable {
  std::int64_t range = 0;     // distinct tuples
  double volume = 0.0;        // summed fragment measure
  double surface_area = 0.0;  // facets shared with fragments outside the component

  double get(MeasureKind kind) const;
};

struct SkeletonNode {
  ComponentKind kind = ComponentKind::Regular;
  std::vector<NodeId> members;  // ascending JCN node ids
  MeasureTable measures;
  bool alive = true;
};

struct PruneStep {
  int step = 0;
  int node = -1;
  double measure = 0.0;
  std::vector<int> absorbed;  // exclusive singular neighbors deleted with the node
  int attachment = -1;
  int merged_into = -1;       // regular node absorbing the attachment, or -1
};

/// Dual graph of the component partition: one node per regular component
/// (ids 0..m-1) followed by one per singular component. Pruning marks nodes
/// dead instead of renumbering.
class ReebSkeleton {
 public:
  std::vector<SkeletonNode> nodes;
  std::vector<std::vector<int>> adjacency;  // ascending, alive nodes only
  std::vector<PruneStep> journal;

  int node_count() const;  // alive
  int regular_count() const;
  int singular_count() const;
  std::vector<std::pair<int, int>> edges() const;  // alive, first < second
  /// Connected components over alive nodes.
  int component_count() const;
};

/// Measures are computed from `jcn`; see compute_measures.
ReebSkeleton build_skeleton(const ComponentPartition& partition, const JointContourNet& jcn);

/// Fills every alive node's measure table.
void compute_measures(ReebSkeleton& skeleton, const JointContourNet& jcn);
MeasureTable measure_members(std::span<const NodeId> members, const JointContourNet& jcn);

/// Regular node r is detachable when exactly one singular neighbor of r (the
/// attachment) has a regular neighbor other than r, and removing r with its
/// remaining (exclusive) singular neighbors does not split the skeleton.
bool is_detachable(const ReebSkeleton& skeleton, int node, int* attachment = nullptr);
std::vector<int> find_detachable(const ReebSkeleton& skeleton);

/// Deletes a detachable regular node and its exclusive singular neighbors.
/// The attachment is merged into its remaining regular neighbor if it has
/// exactly one; otherwise it stays singular. Returns false, changing nothing,
/// if the node is not detachable.
bool prune_lip(ReebSkeleton& skeleton, int node, const JointContourNet& jcn, MeasureKind kind);

/// Repeatedly prunes the detachable regular node of smallest (measure, id)
/// among those below min + t (max - min), taken over the initial regular
/// nodes; t = 1 admits every node. Returns the number of prune steps.
/// Throws ConfigError if t is outside [0, 1].
int simplify(ReebSkeleton& skeleton, const JointContourNet& jcn, MeasureKind kind, double t);

}  // namespace reebskel
