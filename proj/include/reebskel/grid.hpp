#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reebskel/types.hpp"

namespace reebskel {

/// Regular lattice of r scalar samples; sample arrays are x-fastest.
/// A grid with nz == 1 is two-dimensional.
class MultiFieldGrid {
 public:
  MultiFieldGrid(std::array<std::int64_t, 3> dims, Vec3 origin, Vec3 spacing,
                 std::vector<std::string> names, std::vector<std::vector<double>> samples);

  const std::array<std::int64_t, 3>& dims() const { return dims_; }
  Vec3 origin() const { return origin_; }
  Vec3 spacing() const { return spacing_; }
  int field_count() const { return static_cast<int>(samples_.size()); }
  int dimension() const { return dims_[2] == 1 ? 2 : 3; }
  std::int64_t sample_count() const { return dims_[0] * dims_[1] * dims_[2]; }

  std::int64_t index(std::int64_t i, std::int64_t j, std::int64_t k) const {
    return i + dims_[0] * (j + dims_[1] * k);
  }
  Vec3 point(std::int64_t index) const;

  double value(int field, std::int64_t index) const { return samples_[field][index]; }
  std::span<const double> field(int f) const { return samples_[f]; }
  const std::string& field_name(int f) const { return names_[f]; }
  const std::vector<std::string>& field_names() const { return names_; }

  /// Length, area or volume of the box spanned by the lattice.
  double domain_measure() const;

 private:
  std::array<std::int64_t, 3> dims_;
  Vec3 origin_;
  Vec3 spacing_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> samples_;
};

enum class FieldKind {
  Circle,           // x^2 + y^2
  Line,             // y
  Sphere,           // x^2 + y^2 + z^2
  Paraboloid,       // x^2 + y^2 - z
  Height,           // z
  CubicPairFirst,   // y^3 - x y + z^2
  CubicPairSecond,  // x
  Quartic,          // x^4 + y^4 + z^4 - 5 (x^2 + y^2 + z^2) + 10
  Constant,         // fixed value
};

struct FieldSpec {
  FieldKind kind = FieldKind::Height;
  double constant = 0.0;  // used by FieldKind::Constant only

  double evaluate(Vec3 p) const;
  std::string name() const;
};

/// Parses "sphere", "cubic_pair_first", "constant:0.25", ... Throws ConfigError.
FieldSpec parse_field_spec(std::string_view text);

struct Box {
  Vec3 lo;
  Vec3 hi;
};

/// Samples each spec at the lattice points of `bounds`.
/// Throws ConfigError for a zero-extent axis with more than one sample.
MultiFieldGrid generate_field(std::span<const FieldSpec> specs, std::array<std::int64_t, 3> dims,
                              const Box& bounds);

/// A triangle (dimension 2) or tetrahedron (dimension 3) of the grid mesh.
struct Simplex {
  int dimension = 3;
  std::array<std::int64_t, 4> vertex_ids{};
  std::array<Vec3, 4> points{};

  int vertex_count() const { return dimension + 1; }
  /// Area or volume (always non-negative).
  double measure() const;
};

/// Kuhn decomposition: 6 tetrahedra per hexahedral cell, 2 triangles per quad
/// split along the (min-x,min-y)-(max-x,max-y) diagonal. Ordered by cell
/// (x-fastest), then by local simplex index.
std::vector<Simplex> simplices(const MultiFieldGrid& grid);

/// Versioned text field file; see README for the layout.
MultiFieldGrid read_field_file(const std::filesystem::path& path);
void write_field_file(const std::filesystem::path& path, const MultiFieldGrid& grid);

}  // namespace reebskel
