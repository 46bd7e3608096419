#include "reebskel/grid.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace reebskel {

MultiFieldGrid::MultiFieldGrid(std::array<std::int64_t, 3> dims, Vec3 origin, Vec3 spacing,
                               std::vector<std::string> names,
                               std::vector<std::vector<double>> samples)
    : dims_(dims),
      origin_(origin),
      spacing_(spacing),
      names_(std::move(names)),
      samples_(std::move(samples)) {
  for (int a = 0; a < 3; ++a) {
    if (dims_[a] < 1) throw InputError("dims[" + std::to_string(a) + "] must be >= 1");
    if (!(spacing_[a] > 0.0) || !std::isfinite(spacing_[a]))
      throw InputError("spacing[" + std::to_string(a) + "] must be a positive finite real");
  }
  if (samples_.empty()) throw InputError("a grid needs at least one field");
  if (samples_.size() > static_cast<std::size_t>(kMaxFields))
    throw InputError("at most " + std::to_string(kMaxFields) + " fields are supported");
  names_.resize(samples_.size());
  const std::int64_t n = sample_count();
  for (std::size_t f = 0; f < samples_.size(); ++f) {
    if (names_[f].empty()) names_[f] = "f" + std::to_string(f + 1);
    if (static_cast<std::int64_t>(samples_[f].size()) != n)
      throw InputError("field '" + names_[f] + "' has " + std::to_string(samples_[f].size()) +
                       " samples, expected " + std::to_string(n));
    for (double v : samples_[f])
      if (!std::isfinite(v)) throw InputError("field '" + names_[f] + "' has a non-finite sample");
  }
}

Vec3 MultiFieldGrid::point(std::int64_t index) const {
  const std::int64_t i = index % dims_[0];
  const std::int64_t j = (index / dims_[0]) % dims_[1];
  const std::int64_t k = index / (dims_[0] * dims_[1]);
  return {origin_.x + static_cast<double>(i) * spacing_.x,
          origin_.y + static_cast<double>(j) * spacing_.y,
          origin_.z + static_cast<double>(k) * spacing_.z};
}

double MultiFieldGrid::domain_measure() const {
  double m = 1.0;
  for (int a = 0; a < dimension(); ++a) m *= static_cast<double>(dims_[a] - 1) * spacing_[a];
  return m;
}

double FieldSpec::evaluate(Vec3 p) const {
  const double x = p.x, y = p.y, z = p.z;
  switch (kind) {
    case FieldKind::Circle: return x * x + y * y;
    case FieldKind::Line: return y;
    case FieldKind::Sphere: return x * x + y * y + z * z;
    case FieldKind::Paraboloid: return x * x + y * y - z;
    case FieldKind::Height: return z;
    case FieldKind::CubicPairFirst: return y * y * y - x * y + z * z;
    case FieldKind::CubicPairSecond: return x;
    case FieldKind::Quartic: {
      const double x2 = x * x, y2 = y * y, z2 = z * z;
      return x2 * x2 + y2 * y2 + z2 * z2 - 5.0 * (x2 + y2 + z2) + 10.0;
    }
    case FieldKind::Constant: return constant;
  }
  return 0.0;
}

namespace {

struct KindName {
  FieldKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 9> kKindNames{{
    {FieldKind::Circle, "circle"},
    {FieldKind::Line, "line"},
    {FieldKind::Sphere, "sphere"},
    {FieldKind::Paraboloid, "paraboloid"},
    {FieldKind::Height, "height"},
    {FieldKind::CubicPairFirst, "cubic_pair_first"},
    {FieldKind::CubicPairSecond, "cubic_pair_second"},
    {FieldKind::Quartic, "quartic"},
    {FieldKind::Constant, "constant"},
}};

}  // namespace

std::string FieldSpec::name() const {
  for (const auto& kn : kKindNames) {
    if (kn.kind != kind) continue;
    if (kind == FieldKind::Constant) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "constant:%.17g", constant);
      return buf;
    }
    return std::string(kn.name);
  }
  return "unknown";
}

FieldSpec parse_field_spec(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  std::string_view head = lower;
  std::string_view arg;
  if (auto colon = head.find(':'); colon != std::string_view::npos) {
    arg = head.substr(colon + 1);
    head = head.substr(0, colon);
  }
  for (const auto& kn : kKindNames) {
    if (kn.name != head) continue;
    FieldSpec spec{kn.kind, 0.0};
    if (kn.kind == FieldKind::Constant && !arg.empty()) {
      try {
        std::size_t used = 0;
        spec.constant = std::stod(std::string(arg), &used);
        if (used != arg.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ConfigError("field spec '" + std::string(text) + "': bad constant value");
      }
    } else if (!arg.empty()) {
      throw ConfigError("field spec '" + std::string(text) + "' takes no argument");
    }
    return spec;
  }
  throw ConfigError("unknown field kind '" + std::string(text) + "'");
}

MultiFieldGrid generate_field(std::span<const FieldSpec> specs, std::array<std::int64_t, 3> dims,
                              const Box& bounds) {
  if (specs.empty()) throw ConfigError("at least one field spec is required");
  Vec3 spacing{1.0, 1.0, 1.0};
  for (int a = 0; a < 3; ++a) {
    if (dims[a] < 1) throw ConfigError("dims[" + std::to_string(a) + "] must be >= 1");
    if (a < 2 && dims[a] < 2) throw ConfigError("dims[" + std::to_string(a) + "] must be >= 2");
    const double extent = bounds.hi[a] - bounds.lo[a];
    if (dims[a] > 1) {
      if (!(extent > 0.0) || !std::isfinite(extent))
        throw ConfigError("invalid bounds: axis " + std::to_string(a) +
                          " has zero or negative extent with " + std::to_string(dims[a]) +
                          " samples");
      spacing[a] = extent / static_cast<double>(dims[a] - 1);
    }
  }
  const std::int64_t n = dims[0] * dims[1] * dims[2];
  std::vector<std::vector<double>> samples(specs.size(), std::vector<double>(n));
  std::vector<std::string> names;
  for (const auto& s : specs) names.push_back(s.name());

  for (std::int64_t k = 0; k < dims[2]; ++k)
    for (std::int64_t j = 0; j < dims[1]; ++j)
      for (std::int64_t i = 0; i < dims[0]; ++i) {
        // Same formula as MultiFieldGrid::point so samples sit exactly on mesh vertices.
        auto coord = [&](int a, std::int64_t idx) {
          return bounds.lo[a] + static_cast<double>(idx) * spacing[a];
        };
        const Vec3 p{coord(0, i), coord(1, j), coord(2, k)};
        const std::int64_t idx = i + dims[0] * (j + dims[1] * k);
        for (std::size_t f = 0; f < specs.size(); ++f) samples[f][idx] = specs[f].evaluate(p);
      }
  return MultiFieldGrid(dims, bounds.lo, spacing, std::move(names), std::move(samples));
}

double Simplex::measure() const {
  if (dimension == 2) {
    const Vec3 a = points[1] - points[0], b = points[2] - points[0];
    return 0.5 * std::abs(a.x * b.y - a.y * b.x);
  }
  const Vec3 a = points[1] - points[0], b = points[2] - points[0], c = points[3] - points[0];
  return std::abs(dot(a, cross(b, c))) / 6.0;
}

std::vector<Simplex> simplices(const MultiFieldGrid& grid) {
  const auto& d = grid.dims();
  std::vector<Simplex> out;
  if (d[0] < 2 || d[1] < 2) return out;

  if (grid.dimension() == 2) {
    out.reserve(static_cast<std::size_t>(2 * (d[0] - 1) * (d[1] - 1)));
    for (std::int64_t j = 0; j + 1 < d[1]; ++j)
      for (std::int64_t i = 0; i + 1 < d[0]; ++i) {
        const std::int64_t v00 = grid.index(i, j, 0), v10 = grid.index(i + 1, j, 0);
        const std::int64_t v01 = grid.index(i, j + 1, 0), v11 = grid.index(i + 1, j + 1, 0);
        for (auto ids : {std::array<std::int64_t, 3>{v00, v10, v11},
                         std::array<std::int64_t, 3>{v00, v01, v11}}) {
          Simplex s;
          s.dimension = 2;
          for (int v = 0; v < 3; ++v) {
            s.vertex_ids[v] = ids[v];
            s.points[v] = grid.point(ids[v]);
          }
          out.push_back(s);
        }
      }
    return out;
  }

  static constexpr std::array<std::array<int, 3>, 6> kPermutations{{
      {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  out.reserve(static_cast<std::size_t>(6 * (d[0] - 1) * (d[1] - 1) * (d[2] - 1)));
  for (std::int64_t k = 0; k + 1 < d[2]; ++k)
    for (std::int64_t j = 0; j + 1 < d[1]; ++j)
      for (std::int64_t i = 0; i + 1 < d[0]; ++i)
        for (const auto& perm : kPermutations) {
          // Monotone lattice path from the cell's min corner to its max corner.
          std::array<std::int64_t, 3> c{i, j, k};
          Simplex s;
          s.dimension = 3;
          for (int v = 0; v < 4; ++v) {
            if (v > 0) ++c[perm[v - 1]];
            s.vertex_ids[v] = grid.index(c[0], c[1], c[2]);
            s.points[v] = grid.point(s.vertex_ids[v]);
          }
          out.push_back(s);
        }
  return out;
}

}  // namespace reebskel
