#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "reebskel/fragments.hpp"
#include "reebskel/grid.hpp"
#include "reebskel/jacobi.hpp"
#include "reebskel/jcn.hpp"
#include "reebskel/mdrg.hpp"
#include "reebskel/skeleton.hpp"

namespace reebskel {

struct ExportToggles {
  bool jcn = false;       // jcn.dot, jcn.graphml
  bool mdrg = false;      // mdrg.json, level1.dot
  bool skeleton = false;  // skeleton.dot, skeleton.graphml, components.json (+ simplified_*)
  bool journal = false;   // journal.json
  bool stats = false;     // stats.json (counts only, no timings)
};

struct PipelineConfig {
  std::string input;  // field file; empty means generate `fields`
  std::vector<std::string> fields{"circle", "line"};
  std::array<std::int64_t, 3> dims{29, 29, 1};
  Box bounds{{-5, -5, 0}, {5, 5, 0}};
  /// One entry applies to every field.
  std::vector<double> widths{1.0};
  std::vector<double> bases;  // empty means 0
  std::vector<int> field_order;
  /// Union the Jacobi Structure over every field order.
  bool all_orders = false;
  MeasureKind measure = MeasureKind::Range;
  double threshold = 0.0;
  std::filesystem::path output_dir;  // empty: write nothing
  ExportToggles exports;
  int workers = 0;  // <= 0: hardware concurrency

  /// Throws ConfigError naming the offending field. Checks that need the
  /// grid (field count) happen in run_pipeline.
  void validate() const;
  QuantizationSpec quantization(int field_count) const;
};

enum class Stage { Jcn, Mdrg, Skeleton, Simplify };

struct StageTime {
  std::string name;
  double seconds = 0.0;
};

struct PipelineStats {
  std::array<std::int64_t, 3> dims{};
  int field_count = 0;
  std::int64_t simplices = 0;
  std::int64_t fragments = 0;
  std::int64_t fragment_pairs = 0;
  NodeId jcn_nodes = 0;
  std::int64_t jcn_edges = 0;
  int jcn_components = 0;
  std::int64_t mdrg_graphs = 0;
  std::int64_t jacobi_nodes = 0;
  int regular_components = 0;
  int singular_components = 0;
  int skeleton_nodes = 0;
  std::int64_t skeleton_edges = 0;
  int prune_steps = 0;
  int simplified_regular = 0;
  int simplified_nodes = 0;
  std::vector<StageTime> timings;
};

struct PipelineResult {
  std::optional<MultiFieldGrid> grid;
  FragmentSet fragments;
  std::vector<FragmentAdjacency> adjacency;
  JointContourNet jcn;
  Mdrg mdrg;
  JacobiStructure jacobi;
  ComponentPartition partition;
  ReebSkeleton skeleton;    // before simplification
  ReebSkeleton simplified;  // after simplification
  PipelineStats stats;
};

/// Loads or generates the grid.
MultiFieldGrid load_grid(const PipelineConfig& config);

/// Runs the stages up to and including `last` and writes the requested
/// exports for those stages. Throws ConfigError or InputError.
PipelineResult run_pipeline(const PipelineConfig& config, Stage last = Stage::Simplify);

/// Aligned statistics table, timings included.
void print_stats(std::ostream& os, const PipelineStats& stats);

}  // namespace reebskel
