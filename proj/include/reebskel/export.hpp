#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "reebskel/jcn.hpp"
#include "reebskel/mdrg.hpp"
#include "reebskel/skeleton.hpp"

namespace reebskel {

// Plain-text exports. Output depends only on the arguments, so identical
// inputs give byte-identical files. Tuples print as comma-separated integers
// and reals with nine significant digits.

std::string format_tuple(std::span<const int> tuple);
std::string format_real(double v);

void write_jcn_dot(std::ostream& os, const JointContourNet& jcn);
void write_jcn_graphml(std::ostream& os, const JointContourNet& jcn);

/// `critical` may be empty.
void write_reeb_graph_dot(std::ostream& os, const QReebGraph& g, std::span<const char> critical = {});

/// Alive nodes only. Regular nodes are blue, singular nodes red.
void write_skeleton_dot(std::ostream& os, const ReebSkeleton& s);
void write_skeleton_graphml(std::ostream& os, const ReebSkeleton& s);

void write_mdrg_json(std::ostream& os, const Mdrg& mdrg);

/// One entry per alive skeleton node: kind, size, measures, tuple bounding
/// box and adjacent node ids.
void write_components_json(std::ostream& os, const ReebSkeleton& s, const JointContourNet& jcn);

void write_journal_json(std::ostream& os, const ReebSkeleton& s, MeasureKind kind);

}  // namespace reebskel
