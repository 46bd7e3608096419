#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "reebskel/fragments.hpp"

using namespace reebskel;

namespace {

// Barycentric interpolation of the vertex values at p.
Channels interpolate(const Simplex& s, std::span<const Channels> values, Vec3 p, int r) {
  std::array<double, 4> lambda{};
  if (s.dimension == 2) {
    const Vec3 a = s.points[0], b = s.points[1], c = s.points[2];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    lambda[1] = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
    lambda[2] = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
    lambda[0] = 1.0 - lambda[1] - lambda[2];
  } else {
    const Vec3 e1 = s.points[1] - s.points[0], e2 = s.points[2] - s.points[0],
               e3 = s.points[3] - s.points[0], q = p - s.points[0];
    const double det = dot(e1, cross(e2, e3));
    lambda[1] = dot(q, cross(e2, e3)) / det;
    lambda[2] = dot(e1, cross(q, e3)) / det;
    lambda[3] = dot(e1, cross(e2, q)) / det;
    lambda[0] = 1.0 - lambda[1] - lambda[2] - lambda[3];
  }
  Channels out{};
  for (int v = 0; v <= s.dimension; ++v)
    for (int f = 0; f < r; ++f) out[f] += lambda[v] * values[v][f];
  return out;
}

Vec3 centroid(std::span<const Vec3> pts) {
  Vec3 c{};
  for (const auto& p : pts) c = c + p;
  return (1.0 / static_cast<double>(pts.size())) * c;
}

Simplex unit_tet() {
  Simplex s;
  s.dimension = 3;
  s.points = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
  s.vertex_ids = {0, 1, 2, 3};
  return s;
}

// The two-triangle bivariate example: vertices (0,0),(1,0),(0,1),(1,1) with
// values (5,0),(0,0),(5,0),(3,2).
MultiFieldGrid two_triangles() {
  return MultiFieldGrid({2, 2, 1}, {0, 0, 0}, {1, 1, 1}, {"f1", "f2"},
                        {{5, 0, 5, 3}, {0, 0, 0, 2}});
}

}  // namespace

TEST_CASE("quantize_value rounds half away from zero") {
  CHECK(quantize_value(0.0, 1.0, 0.0) == 0);
  CHECK(quantize_value(0.49, 1.0, 0.0) == 0);
  CHECK(quantize_value(2.5, 1.0, 0.0) == 3);
  CHECK(quantize_value(-2.5, 1.0, 0.0) == -3);
  CHECK(quantize_value(-2.49, 1.0, 0.0) == -2);
  CHECK(quantize_value(7.0, 2.0, 1.0) == 3);
  CHECK(quantize_value(0.74, 0.5, 0.0) == 1);

  const auto q = QuantizationSpec::uniform(2, 0.5, 0.25);
  CHECK(q.cut_level(1, 0) == 0.5);
  CHECK(q.quantize(1, 0.49) == 0);
  CHECK(q.quantize(1, 0.51) == 1);
}

TEST_CASE("quantization spec validation") {
  QuantizationSpec q{{1.0, 0.0}, {}};
  CHECK_THROWS_AS(q.validate(2), ConfigError);
  q.widths = {1.0, -2.0};
  CHECK_THROWS_AS(q.validate(2), ConfigError);
  q.widths = {1.0, 2.0};
  CHECK_NOTHROW(q.validate(2));
  CHECK_THROWS_AS(q.validate(3), ConfigError);
  q.bases = {0.0};
  CHECK_THROWS_AS(q.validate(2), ConfigError);
}

TEST_CASE("perturbation keeps values inside their own slab") {
  const double w = 0.5, b = 0.1;
  for (double v : {0.35, 0.35 + 1e-14, 0.35 - 1e-14, -0.15, 100.35, 0.2}) {
    const double p = perturb_off_cuts(v, w, b);
    CHECK(quantize_value(p, w, b) == quantize_value(v, w, b));
    // The margin grows to a few ulps once 1e-12 w is below double resolution.
    const double margin = std::max(1e-12 * w, 64.0 * std::abs(v) * 2.3e-16);
    CHECK(std::abs(p - v) <= 2.0 * margin);
    const double t = (p - b) / w;
    CHECK(std::abs(t - std::floor(t) - 0.5) > 1e-13);
  }
  CHECK(perturb_off_cuts(0.2, w, b) == 0.2);
}

TEST_CASE("a simplex inside one slab is one fragment") {
  const auto s = unit_tet();
  const std::array<Channels, 4> v{Channels{0.1, 2.0}, Channels{0.2, 2.1}, Channels{-0.3, 1.9},
                                  Channels{0.0, 2.2}};
  const auto frags = slice_simplex(s, v, QuantizationSpec::uniform(2, 1.0));
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].volume == doctest::Approx(1.0 / 6.0));
  CHECK(frags[0].tuple == QuantTuple{0, 2});
  CHECK(frags[0].facets.size() == 4);
  for (const auto& f : frags[0].facets) CHECK(f.kind == FacetKind::SimplexFace);
}

TEST_CASE("a simplex crossing one cut is two fragments") {
  const auto s = unit_tet();
  const std::array<Channels, 4> v{Channels{0.0}, Channels{1.0}, Channels{0.0}, Channels{0.0}};
  const auto frags = slice_simplex(s, v, QuantizationSpec::uniform(1, 1.0));
  REQUIRE(frags.size() == 2);
  CHECK(frags[0].tuple == QuantTuple{0});
  CHECK(frags[1].tuple == QuantTuple{1});
  CHECK(frags[0].volume + frags[1].volume == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  CHECK(frags[1].volume == doctest::Approx(0.125 / 6.0));
  int cuts = 0;
  for (const auto& f : frags[0].facets)
    if (f.kind == FacetKind::Cut) {
      ++cuts;
      CHECK(f.side == 1);
      CHECK(f.partner == 1);
      CHECK(f.measure == doctest::Approx(0.125));
    }
  CHECK(cuts == 1);
}

TEST_CASE("vertices exactly on a cut do not create slivers") {
  const auto s = unit_tet();
  // Vertex 1 sits on the level 0.5, the others below: one fragment only.
  std::array<Channels, 4> v{Channels{0.0}, Channels{0.5}, Channels{0.0}, Channels{0.0}};
  CHECK(slice_simplex(s, v, QuantizationSpec::uniform(1, 1.0)).size() == 1);
  // The whole face opposite vertex 0 on the level: the face belongs to slab 1,
  // which survives as a strip of relative thickness 1e-12 along that face.
  v = {Channels{0.0}, Channels{0.5}, Channels{0.5}, Channels{0.5}};
  const auto strip = slice_simplex(s, v, QuantizationSpec::uniform(1, 1.0));
  REQUIRE(strip.size() == 2);
  CHECK(strip[1].tuple == QuantTuple{1});
  CHECK(strip[1].volume < 1e-11);
  CHECK(strip[1].volume > 1e-14);
  // ... and from above the face value joins the simplex's own slab.
  v = {Channels{1.0}, Channels{0.5}, Channels{0.5}, Channels{0.5}};
  const auto frags = slice_simplex(s, v, QuantizationSpec::uniform(1, 1.0));
  REQUIRE(frags.size() == 1);
  CHECK(frags[0].tuple == QuantTuple{1});
}

TEST_CASE("random simplices: conservation, tuple consistency, cut count, adjacency tags") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 300; ++trial) {
    Simplex s;
    s.dimension = trial % 3 == 0 ? 2 : 3;
    for (int v = 0; v <= s.dimension; ++v) s.points[v] = {u(rng), u(rng), s.dimension == 3 ? u(rng) : 0.0};
    if (s.measure() < 1e-3) continue;
    const int r = 1 + trial % 3;
    std::array<Channels, 4> vals{};
    for (int v = 0; v <= s.dimension; ++v)
      for (int f = 0; f < r; ++f) vals[v][f] = u(rng);
    QuantizationSpec q;
    for (int f = 0; f < r; ++f) {
      q.widths.push_back(0.3 + 0.2 * f);
      q.bases.push_back(0.05 * f);
    }
    const std::span<const Channels> vs(vals.data(), s.dimension + 1);
    const auto frags = slice_simplex(s, vs, q);

    double sum = 0.0;
    std::size_t bound = 1;
    for (int f = 0; f < r; ++f) {
      double lo = vals[0][f], hi = vals[0][f];
      for (int v = 1; v <= s.dimension; ++v) lo = std::min(lo, vals[v][f]), hi = std::max(hi, vals[v][f]);
      bound *= static_cast<std::size_t>(q.quantize(f, hi) - q.quantize(f, lo) + 1);
    }
    REQUIRE(frags.size() <= bound);
    std::set<QuantTuple> tuples;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      const auto& fr = frags[i];
      sum += fr.volume;
      REQUIRE(fr.volume > 0.0);
      tuples.insert(fr.tuple);
      // Independent route for the measure.
      REQUIRE(std::abs(convex_hull_measure(fr.polytope, s.dimension) - fr.volume) <=
              1e-7 * fr.volume + 1e-9 * s.measure());
      const auto at = interpolate(s, vs, centroid(fr.polytope), r);
      for (int f = 0; f < r; ++f) CHECK(q.quantize(f, at[f]) == fr.tuple[f]);
      for (const auto& facet : fr.facets) {
        if (facet.kind != FacetKind::Cut) continue;
        REQUIRE(facet.partner >= 0);
        const auto& other = frags[facet.partner];
        // Generic values: the partner differs by one in exactly one field.
        int diff = 0;
        for (int f = 0; f < r; ++f) diff += std::abs(other.tuple[f] - fr.tuple[f]);
        CHECK(diff == 1);
        CHECK(other.tuple[facet.index] - fr.tuple[facet.index] == facet.side);
      }
    }
    CHECK(tuples.size() == frags.size());
    CHECK(std::is_sorted(frags.begin(), frags.end(),
                         [](const Fragment& a, const Fragment& b) { return a.tuple < b.tuple; }));
    REQUIRE(sum == doctest::Approx(s.measure()).epsilon(1e-10));
  }
}

TEST_CASE("grid slicing conserves the domain measure and is deterministic") {
  const std::vector<FieldSpec> specs{{FieldKind::Sphere}, {FieldKind::Height}};
  const auto g = generate_field(specs, {6, 5, 7}, {{-1, -1, -1}, {1, 1, 1}});
  const auto q = QuantizationSpec::uniform(2, 0.25);
  const auto a = slice_grid(g, q);
  const auto b = slice_grid(g, q, {.workers = 3, .keep_polytopes = false});
  CHECK(a.total_volume() == doctest::Approx(g.domain_measure()).epsilon(1e-10));
  CHECK(a.simplex_count() == static_cast<std::int64_t>(simplices(g).size()));
  REQUIRE(a.size() == b.size());
  CHECK(a.tuples == b.tuples);
  CHECK(a.volume == b.volume);
  CHECK(a.simplex_begin == b.simplex_begin);
  CHECK(a.facet_begin == b.facet_begin);

  const auto c = slice_grid(g, q, {.workers = 2, .keep_polytopes = true});
  REQUIRE(c.has_geometry());
  CHECK(c.volume == a.volume);
  CHECK(c.fragment(5).polytope.size() >= 4);
}

TEST_CASE("adjacency of trivial fragment sets") {
  const auto flat = MultiFieldGrid({3, 3, 1}, {}, {1, 1, 1}, {"c"}, {std::vector<double>(9, 0.0)});
  const auto frags = slice_grid(flat, QuantizationSpec::uniform(1, 1.0));
  CHECK(frags.size() == 8);
  // Same-tuple pairs across the 8 interior triangle edges.
  CHECK(fragment_adjacency(frags, simplices(flat)).size() == 8);

  const auto one = MultiFieldGrid({2, 2, 1}, {}, {1, 1, 1}, {"c"}, {{0, 0, 0, 0}});
  const auto single = slice_grid(one, QuantizationSpec::uniform(1, 10.0));
  CHECK(single.size() == 2);
  const auto pairs = fragment_adjacency(single, simplices(one));
  CHECK(pairs.size() == 1);
}

TEST_CASE("one simplex with one cut gives one adjacency pair") {
  const auto g = generate_field(std::vector<FieldSpec>{{FieldKind::CubicPairSecond}}, {2, 2, 2},
                                {{0, 0, 0}, {1, 1, 1}});
  auto all = simplices(g);
  all.resize(1);
  FragmentSet set;
  set.field_count = 1;
  std::array<Channels, 4> v;
  for (int i = 0; i < 4; ++i) v[i][0] = g.value(0, all[0].vertex_ids[i]);
  for (const auto& f : slice_simplex(all[0], v, QuantizationSpec::uniform(1, 1.0))) {
    set.simplex.push_back(0);
    set.tuples.push_back(f.tuple[0]);
    set.volume.push_back(f.volume);
    set.facets.insert(set.facets.end(), f.facets.begin(), f.facets.end());
    set.facet_begin.push_back(static_cast<std::int64_t>(set.facets.size()));
  }
  set.simplex_begin.push_back(set.size());
  REQUIRE(set.size() == 2);
  const auto pairs = fragment_adjacency(set, all);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].a == 0);
  CHECK(pairs[0].b == 1);
}

TEST_CASE("two-triangle example: fragments and their adjacency") {
  // Expected values from an independent dense-raster flood fill of the same
  // PL field (round half away from zero).
  const auto g = two_triangles();
  const auto q = QuantizationSpec::uniform(2, 1.0);
  const auto frags = slice_grid(g, q);
  REQUIRE(frags.simplex_count() == 2);
  CHECK(frags.simplex_begin[1] - frags.simplex_begin[0] == 12);
  CHECK(frags.simplex_begin[2] - frags.simplex_begin[1] == 3);
  CHECK(frags.total_volume() == doctest::Approx(1.0));

  std::set<std::vector<int>> second;
  for (auto i = frags.simplex_begin[1]; i < frags.simplex_begin[2]; ++i) {
    const auto t = frags.tuple(i);
    second.insert({t.begin(), t.end()});
  }
  CHECK(second == std::set<std::vector<int>>{{3, 2}, {4, 1}, {5, 0}});

  AdjacencyStats stats;
  const auto pairs = fragment_adjacency(frags, simplices(g), &stats);
  CHECK(pairs.size() == 20);
  CHECK(stats.unmatched_cut_facets == 0);
  CHECK(stats.unmatched_face_facets == 0);
  // The second triangle's coincident level planes join (4,1) to (3,2).
  bool diagonal = false;
  for (const auto& p : pairs) {
    const auto ta = frags.tuple(p.a), tb = frags.tuple(p.b);
    if (std::abs(ta[0] - tb[0]) == 1 && std::abs(ta[1] - tb[1]) == 1) diagonal = true;
  }
  CHECK(diagonal);
}
