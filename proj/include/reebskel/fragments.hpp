#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "reebskel/grid.hpp"
#include "reebskel/polytope.hpp"
#include "reebskel/types.hpp"

namespace reebskel {

/// Per-field slab width and base offset. Slab k of field i is the interval
/// [b_i + (k - 1/2) w_i, b_i + (k + 1/2) w_i].
struct QuantizationSpec {
  std::vector<double> widths;
  std::vector<double> bases;

  static QuantizationSpec uniform(int fields, double width, double base = 0.0);

  int field_count() const { return static_cast<int>(widths.size()); }
  /// Throws ConfigError unless there are `fields` positive finite widths.
  void validate(int fields) const;

  double base(int field) const { return bases.empty() ? 0.0 : bases[field]; }
  /// Level separating slab k from slab k + 1.
  double cut_level(int field, int k) const { return base(field) + (k + 0.5) * widths[field]; }
  int quantize(int field, double v) const;
};

/// round((v - b) / w), halves rounded away from zero.
int quantize_value(double v, double w, double b);

/// Moves a value lying within a hair (1e-12 w, or a few ulps for large
/// magnitudes) of a slab boundary into the interior of the slab that
/// quantize_value assigns it to. Applied to every vertex before slicing.
double perturb_off_cuts(double v, double w, double b);

using QuantTuple = std::vector<int>;

enum class FacetKind : std::uint8_t { SimplexFace, Cut };

/// One bounding facet of a fragment.
struct FacetRecord {
  FacetKind kind = FacetKind::SimplexFace;
  /// Cut facets: +1 when the facet lies on the upper level of the fragment's
  /// slab, -1 on the lower level. Zero for simplex faces.
  std::int8_t side = 0;
  /// Simplex faces: local index of the opposite vertex. Cuts: field index.
  std::int16_t index = 0;
  /// Cut facets: position of the fragment across the cut within its
  /// simplex's fragment list, or -1 if none was found.
  std::int32_t partner = -1;
  double measure = 0.0;
};

struct Fragment {
  std::int64_t simplex = -1;
  std::vector<Vec3> polytope;
  QuantTuple tuple;
  double volume = 0.0;  // area in 2D
  std::vector<FacetRecord> facets;
};

/// Fragments with measure below this fraction of their simplex are dropped.
inline constexpr double kDegenerateMeasure = 1e-18;

/// Slices one simplex into joint contour fragments: the simplex is clipped
/// by every crossed level of field 0, the pieces by every level of field 1,
/// and so on. Fragments come out ordered by tuple.
///
/// The fragment across a cut facet normally carries the tuple shifted by one
/// in the cut's field. When level planes of several fields coincide inside
/// the simplex the shift is in several fields at once; such partners are
/// found by matching the facet centroid instead.
std::vector<Fragment> slice_simplex(const Simplex& s, std::span<const Channels> vertex_values,
                                    const QuantizationSpec& q, std::int64_t simplex_id = 0,
                                    bool keep_polytope = true);

/// All fragments of a grid, stored flat. Fragments of simplex s occupy
/// [simplex_begin[s], simplex_begin[s + 1]).
struct FragmentSet {
  int dimension = 3;
  int field_count = 0;
  std::vector<std::int64_t> simplex;
  std::vector<int> tuples;  // field_count entries per fragment
  std::vector<double> volume;
  std::vector<std::int64_t> facet_begin{0};
  std::vector<FacetRecord> facets;
  std::vector<std::int64_t> simplex_begin{0};
  // Optional geometry.
  std::vector<std::int64_t> vertex_begin{0};
  std::vector<Vec3> vertices;

  std::int64_t size() const { return static_cast<std::int64_t>(volume.size()); }
  std::int64_t simplex_count() const { return static_cast<std::int64_t>(simplex_begin.size()) - 1; }
  std::span<const int> tuple(std::int64_t i) const {
    return {tuples.data() + i * field_count, static_cast<std::size_t>(field_count)};
  }
  std::span<const FacetRecord> facets_of(std::int64_t i) const {
    return {facets.data() + facet_begin[i], static_cast<std::size_t>(facet_begin[i + 1] - facet_begin[i])};
  }
  bool has_geometry() const { return vertex_begin.size() == volume.size() + 1; }
  std::span<const Vec3> polytope(std::int64_t i) const;

  double total_volume() const;
  Fragment fragment(std::int64_t i) const;
};

struct SliceOptions {
  int workers = 1;              // <= 0: hardware concurrency
  bool keep_polytopes = false;  // store fragment vertex lists
};

FragmentSet slice_grid(const MultiFieldGrid& grid, const QuantizationSpec& q,
                       const SliceOptions& options = {});

/// Two fragments sharing a (d-1)-facet of positive measure.
struct FragmentAdjacency {
  std::int64_t a = 0;  // a < b
  std::int64_t b = 0;
  double area = 0.0;
};

/// Unmatched counts skip facets below 1e-9 of the simplex's facet scale.
struct AdjacencyStats {
  std::int64_t in_simplex_pairs = 0;
  std::int64_t cross_simplex_pairs = 0;
  std::int64_t unmatched_cut_facets = 0;
  std::int64_t unmatched_face_facets = 0;  // interior faces only
};

/// Pairs inside a simplex come from the cut facet partners. Pairs across
/// a shared simplex face are the fragments with equal tuples touching that
/// face from both sides. Sorted by (a, b).
std::vector<FragmentAdjacency> fragment_adjacency(const FragmentSet& fragments,
                                                  std::span<const Simplex> simplices,
                                                  AdjacencyStats* stats = nullptr);

}  // namespace reebskel
