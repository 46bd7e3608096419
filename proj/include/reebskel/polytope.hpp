#pragma once

#include <array>
#include <span>
#include <vector>

#include "reebskel/types.hpp"

namespace reebskel {

/// Per-vertex attribute channels, linearly interpolated along clipped edges.
using Channels = std::array<double, kMaxFields>;

enum class KeepSide { Below, Above };

/// Convex polytope stored as a simple vertex graph (every vertex has exactly
/// three neighbors), in the style of r3d. Coincident vertices are allowed, so
/// clipping through existing vertices needs no special cases.
///
/// Faces are not stored explicitly. Every directed edge carries the label of
/// the face it bounds; walking `next = nbrs[(slot_of_prev + 1) % 3]` traces a
/// face loop counter-clockwise as seen from outside.
///
/// Two-dimensional polygons are represented as unit-height prisms, so one
/// clipping routine serves both cases.
class ConvexPolytope {
 public:
  struct Vertex {
    Vec3 pos;
    Channels values{};
    std::array<int, 3> nbrs{};
    std::array<int, 3> labels{};
  };

  struct Face {
    int label = -1;
    double area = 0.0;
    Vec3 centroid;
    std::vector<Vec3> loop;
  };

  /// Label given to the two caps of a prism.
  static constexpr int kCapLabel = -2;

  ConvexPolytope() = default;

  /// Face opposite vertex k is labelled k. Orientation of `pts` is arbitrary.
  static ConvexPolytope tetrahedron(const std::array<Vec3, 4>& pts,
                                    const std::array<Channels, 4>& values, int channels);
  /// Triangle (z ignored) extruded to z in [0, 1]; side face opposite corner k is labelled k.
  static ConvexPolytope prism(const std::array<Vec3, 3>& pts, const std::array<Channels, 3>& values,
                              int channels);
  /// Axis-aligned box; faces labelled 0..5 as -x,+x,-y,+y,-z,+z.
  static ConvexPolytope box(Vec3 lo, Vec3 hi);

  bool empty() const { return verts_.empty(); }
  int vertex_count() const { return static_cast<int>(verts_.size()); }
  int channel_count() const { return channels_; }
  const std::vector<Vertex>& vertices() const { return verts_; }

  /// Keeps the part where channel `channel` is below (or above) `level`.
  /// The new face is labelled `label`. Clipping to nothing but a touching
  /// face, edge or vertex yields an empty polytope.
  void clip(int channel, double level, KeepSide keep, int label);

  /// Channel values within `tol` of `level` are set to `level` exactly.
  void snap(int channel, double level, double tol);

  /// Channel values are replaced by the channel-0 affine function n.x + d.
  void set_linear_channel(int channel, Vec3 n, double d);

  /// Signed volume (positive for a well-formed polytope).
  double volume() const;
  /// Area of a prism's cross-section: volume / height.
  double prism_area() const { return volume(); }

  std::vector<Face> faces() const;

  /// Distinct vertex positions, in storage order.
  std::vector<Vec3> distinct_positions() const;

  double channel_min(int channel) const;
  double channel_max(int channel) const;

 private:
  struct LoopFace {
    std::vector<int> loop;
    int label;
  };
  static ConvexPolytope from_faces(std::span<const Vec3> pts, std::span<const Channels> values,
                                   int channels, std::span<const LoopFace> faces);

  std::vector<Vertex> verts_;
  int channels_ = 0;
};

/// Measure of the convex hull of a point set: area (dimension 2, z ignored)
/// or volume (dimension 3). Degenerate sets give 0.
double convex_hull_measure(std::span<const Vec3> points, int dimension);

/// Per-facet measures of the convex hull: edge lengths (2D) or facet areas (3D).
std::vector<double> convex_hull_facet_measures(std::span<const Vec3> points, int dimension);

}  // namespace reebskel
