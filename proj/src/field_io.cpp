// Text field format, version 1:
//
//   REEBSKEL-FIELD 1
//   dims <nx> <ny> <nz>
//   origin <ox> <oy> <oz>
//   spacing <sx> <sy> <sz>
//   fields <r>
//   name <field-1 name>
//   ...
//   name <field-r name>
//   <nx*ny*nz reals for field 1, x-fastest, whitespace separated>
//   ...
//   <nx*ny*nz reals for field r>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "reebskel/grid.hpp"

namespace reebskel {

namespace {

constexpr const char* kMagic = "REEBSKEL-FIELD";
constexpr int kVersion = 1;

std::string where(const std::filesystem::path& path) { return "'" + path.string() + "': "; }

template <typename T>
void expect_keyword(std::istream& in, const std::filesystem::path& path, const char* keyword,
                    T* values, int count) {
  std::string word;
  if (!(in >> word) || word != keyword)
    throw InputError(where(path) + "malformed header: expected '" + keyword + "'");
  for (int i = 0; i < count; ++i)
    if (!(in >> values[i]))
      throw InputError(where(path) + "malformed header: bad value for '" + keyword + "'");
}

}  // namespace

MultiFieldGrid read_field_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(where(path) + "cannot open field file");

  std::string magic;
  int version = 0;
  if (!(in >> magic) || magic != kMagic)
    throw InputError(where(path) + "malformed header: missing magic '" + kMagic + "'");
  if (!(in >> version) || version != kVersion)
    throw InputError(where(path) + "unsupported field file version");

  std::array<std::int64_t, 3> dims{};
  double origin[3], spacing[3];
  int r = 0;
  expect_keyword(in, path, "dims", dims.data(), 3);
  expect_keyword(in, path, "origin", origin, 3);
  expect_keyword(in, path, "spacing", spacing, 3);
  expect_keyword(in, path, "fields", &r, 1);
  if (r < 1 || r > kMaxFields) throw InputError(where(path) + "malformed header: bad 'fields'");
  for (int a = 0; a < 3; ++a)
    if (dims[a] < 1) throw InputError(where(path) + "malformed header: bad 'dims'");

  std::vector<std::string> names(r);
  for (int f = 0; f < r; ++f) {
    std::string word;
    if (!(in >> word) || word != "name" || !(in >> names[f]))
      throw InputError(where(path) + "malformed header: expected 'name' for field " +
                       std::to_string(f + 1));
  }

  const std::int64_t n = dims[0] * dims[1] * dims[2];
  std::vector<std::vector<double>> samples(r, std::vector<double>(n));
  for (int f = 0; f < r; ++f)
    for (std::int64_t i = 0; i < n; ++i)
      if (!(in >> samples[f][i]))
        throw InputError(where(path) + "field '" + names[f] + "': expected " + std::to_string(n) +
                         " samples, read " + std::to_string(i));
  std::string extra;
  if (in >> extra) throw InputError(where(path) + "trailing data after last field block");

  try {
    return MultiFieldGrid(dims, {origin[0], origin[1], origin[2]},
                          {spacing[0], spacing[1], spacing[2]}, std::move(names),
                          std::move(samples));
  } catch (const InputError& e) {
    throw InputError(where(path) + e.what());
  }
}

void write_field_file(const std::filesystem::path& path, const MultiFieldGrid& grid) {
  std::ofstream out(path);
  if (!out) throw InputError(where(path) + "cannot open for writing");
  char buf[64];
  auto real = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  const auto& d = grid.dims();
  const Vec3 o = grid.origin(), s = grid.spacing();
  out << kMagic << ' ' << kVersion << '\n';
  out << "dims " << d[0] << ' ' << d[1] << ' ' << d[2] << '\n';
  out << "origin " << real(o.x) << ' ' << real(o.y) << ' ' << real(o.z) << '\n';
  out << "spacing " << real(s.x) << ' ' << real(s.y) << ' ' << real(s.z) << '\n';
  out << "fields " << grid.field_count() << '\n';
  for (int f = 0; f < grid.field_count(); ++f) out << "name " << grid.field_name(f) << '\n';
  for (int f = 0; f < grid.field_count(); ++f) {
    const auto values = grid.field(f);
    for (std::size_t i = 0; i < values.size(); ++i)
      out << real(values[i]) << ((i + 1) % static_cast<std::size_t>(d[0]) == 0 ? '\n' : ' ');
  }
  if (!out) throw InputError(where(path) + "write failed");
}

}  // namespace reebskel
