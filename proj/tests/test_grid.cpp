#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "doctest.h"
#include "reebskel/grid.hpp"

using namespace reebskel;

namespace {

MultiFieldGrid small_grid(std::array<std::int64_t, 3> dims, std::vector<FieldSpec> specs,
                          Box box = {{-1, -1, -1}, {1, 1, 1}}) {
  return generate_field(specs, dims, box);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("reebskel_test_grid_" + name);
}

}  // namespace

TEST_CASE("synthetic field formulas") {
  const Vec3 origin{0, 0, 0};
  CHECK(FieldSpec{FieldKind::Sphere}.evaluate(origin) == 0.0);
  CHECK(FieldSpec{FieldKind::Paraboloid}.evaluate({0, 0, 5}) == -5.0);
  CHECK(FieldSpec{FieldKind::Quartic}.evaluate(origin) == 10.0);
  CHECK(FieldSpec{FieldKind::Circle}.evaluate({3, 4, 7}) == 25.0);
  CHECK(FieldSpec{FieldKind::Line}.evaluate({3, 4, 7}) == 4.0);
  CHECK(FieldSpec{FieldKind::Height}.evaluate({3, 4, 7}) == 7.0);
  CHECK(FieldSpec{FieldKind::CubicPairFirst}.evaluate({2, 1, 3}) == 1.0 - 2.0 + 9.0);
  CHECK(FieldSpec{FieldKind::CubicPairSecond}.evaluate({2, 1, 3}) == 2.0);
  CHECK(FieldSpec{FieldKind::Constant, 0.25}.evaluate({2, 1, 3}) == 0.25);
}

TEST_CASE("field spec parsing") {
  CHECK(parse_field_spec("sphere").kind == FieldKind::Sphere);
  CHECK(parse_field_spec("Cubic_Pair_First").kind == FieldKind::CubicPairFirst);
  const auto c = parse_field_spec("constant:1.5");
  CHECK(c.kind == FieldKind::Constant);
  CHECK(c.constant == 1.5);
  CHECK(parse_field_spec(c.name()).constant == 1.5);
  CHECK_THROWS_AS(parse_field_spec("torus"), ConfigError);
  CHECK_THROWS_AS(parse_field_spec("constant:abc"), ConfigError);
  CHECK_THROWS_AS(parse_field_spec("sphere:2"), ConfigError);
}

TEST_CASE("generated samples equal the formula at lattice points") {
  const auto g = small_grid({5, 4, 3}, {{FieldKind::Sphere}, {FieldKind::Paraboloid}},
                            {{-5, -5, -5}, {5, 5, 5}});
  CHECK(g.dimension() == 3);
  CHECK(g.sample_count() == 60);
  for (std::int64_t idx = 0; idx < g.sample_count(); ++idx) {
    const Vec3 p = g.point(idx);
    CHECK(g.value(0, idx) == FieldSpec{FieldKind::Sphere}.evaluate(p));
    CHECK(g.value(1, idx) == FieldSpec{FieldKind::Paraboloid}.evaluate(p));
  }
  CHECK(g.point(0) == Vec3{-5, -5, -5});
  CHECK(g.point(g.index(4, 3, 2)).x == doctest::Approx(5.0));
  CHECK(g.field_name(0) == "sphere");
}

TEST_CASE("generate_field rejects bad bounds and dims") {
  const std::vector<FieldSpec> s{{FieldKind::Height}};
  CHECK_THROWS_AS(generate_field(s, {3, 3, 3}, {{0, 0, 0}, {1, 1, 0}}), ConfigError);
  CHECK_THROWS_AS(generate_field(s, {3, 3, 3}, {{0, 0, 1}, {1, 1, 0}}), ConfigError);
  CHECK_THROWS_AS(generate_field(s, {1, 3, 3}, {{0, 0, 0}, {1, 1, 1}}), ConfigError);
  CHECK_THROWS_AS(generate_field({}, {3, 3, 3}, {{0, 0, 0}, {1, 1, 1}}), ConfigError);
  // A flat z axis is fine for a single layer of samples.
  const auto g = generate_field(s, {3, 3, 1}, {{0, 0, 0}, {1, 1, 0}});
  CHECK(g.dimension() == 2);
}

TEST_CASE("grid construction validates its input") {
  CHECK_THROWS_AS(MultiFieldGrid({2, 2, 1}, {}, {1, 1, 1}, {"a"}, {{0, 0, 0}}), InputError);
  CHECK_THROWS_AS(MultiFieldGrid({2, 2, 1}, {}, {1, 0, 1}, {"a"}, {{0, 0, 0, 0}}), InputError);
  CHECK_THROWS_AS(MultiFieldGrid({2, 2, 1}, {}, {1, 1, 1}, {"a"}, {{0, 0, 0, NAN}}), InputError);
  CHECK_THROWS_AS(MultiFieldGrid({2, 2, 1}, {}, {1, 1, 1}, {}, {}), InputError);
  const MultiFieldGrid g({2, 2, 1}, {}, {1, 1, 1}, {}, {{0, 1, 2, 3}, {0, 0, 0, 0}});
  CHECK(g.field_name(1) == "f2");
}

TEST_CASE("simplex counts of the cell decompositions") {
  CHECK(simplices(small_grid({2, 2, 2}, {{FieldKind::Height}})).size() == 6);
  CHECK(simplices(small_grid({3, 3, 1}, {{FieldKind::Height}}, {{0, 0, 0}, {1, 1, 0}})).size() == 8);
  CHECK(simplices(small_grid({4, 3, 5}, {{FieldKind::Height}})).size() == 6 * 3 * 2 * 4);
}

TEST_CASE("simplices tile the domain") {
  for (auto dims : {std::array<std::int64_t, 3>{2, 2, 2}, {5, 3, 4}, {7, 6, 1}, {2, 9, 1}}) {
    const Box box{{-1.5, 0, 2}, {3, 1, dims[2] > 1 ? 2.5 : 2.0}};
    const auto g = small_grid(dims, {{FieldKind::Height}}, box);
    double sum = 0.0;
    for (const auto& s : simplices(g)) {
      CHECK(s.measure() > 0.0);
      sum += s.measure();
    }
    CHECK(sum == doctest::Approx(g.domain_measure()).epsilon(1e-12));
  }
}

TEST_CASE("interior faces are shared by exactly two simplices") {
  for (auto dims : {std::array<std::int64_t, 3>{4, 3, 3}, {5, 4, 1}}) {
    const auto g = small_grid(dims, {{FieldKind::Height}}, {{0, 0, 0}, {1, 1, dims[2] > 1 ? 1.0 : 0.0}});
    const auto all = simplices(g);
    std::map<std::array<std::int64_t, 3>, int> count;
    for (const auto& s : all) {
      const int d = s.dimension;
      for (int k = 0; k <= d; ++k) {
        std::array<std::int64_t, 3> key{-1, -1, -1};
        int n = 0;
        for (int v = 0; v <= d; ++v)
          if (v != k) key[n++] = s.vertex_ids[v];
        std::sort(key.begin(), key.begin() + n);
        ++count[key];
      }
    }
    // Euler-style check: boundary faces appear once, interior faces twice.
    std::int64_t boundary = 0;
    for (const auto& [key, c] : count) {
      CHECK(c <= 2);
      boundary += c == 1;
    }
    const auto nx = dims[0] - 1, ny = dims[1] - 1, nz = dims[2] - 1;
    const std::int64_t expected =
        dims[2] > 1 ? 4 * (nx * ny + ny * nz + nx * nz) : 2 * (nx + ny);
    CHECK(boundary == expected);
  }
}

TEST_CASE("field file round trip") {
  const auto g = small_grid({4, 3, 2}, {{FieldKind::Quartic}, {FieldKind::CubicPairFirst}},
                            {{-1.3, 0.1, 2}, {2.7, 1.9, 3}});
  const auto path = temp_path("roundtrip.field");
  write_field_file(path, g);
  const auto h = read_field_file(path);
  CHECK(h.dims() == g.dims());
  CHECK(h.origin() == g.origin());
  CHECK(h.spacing() == g.spacing());
  CHECK(h.field_names() == g.field_names());
  for (int f = 0; f < 2; ++f)
    for (std::int64_t i = 0; i < g.sample_count(); ++i) CHECK(h.value(f, i) == g.value(f, i));
  std::filesystem::remove(path);
}

TEST_CASE("malformed field files name the problem") {
  auto write = [](const std::string& name, const std::string& text) {
    const auto p = temp_path(name);
    std::ofstream(p) << text;
    return p;
  };
  auto message = [](const std::filesystem::path& p) {
    try {
      read_field_file(p);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  const std::string header = "REEBSKEL-FIELD 1\ndims 2 2 1\norigin 0 0 0\nspacing 1 1 1\nfields 1\nname a\n";

  CHECK(message(temp_path("does_not_exist")).find("cannot open") != std::string::npos);
  CHECK(message(write("magic", "NOPE 1\n")).find("magic") != std::string::npos);
  CHECK(message(write("dims", "REEBSKEL-FIELD 1\ndims 2 x 1\n")).find("'dims'") != std::string::npos);
  CHECK(message(write("short", header + "1 2 3\n")).find("field 'a'") != std::string::npos);
  CHECK(message(write("trailing", header + "1 2 3 4 5\n")).find("trailing") != std::string::npos);
  CHECK(message(write("nan", header + "1 2 nan 4\n")).find("'a'") != std::string::npos);
  CHECK(message(write("ok", header + "1 2 3 4\n")).empty());
  for (auto n : {"magic", "dims", "short", "trailing", "nan", "ok"}) std::filesystem::remove(temp_path(n));
}
