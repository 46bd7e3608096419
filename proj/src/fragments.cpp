#include "reebskel/fragments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace reebskel {

QuantizationSpec QuantizationSpec::uniform(int fields, double width, double base) {
  QuantizationSpec q;
  q.widths.assign(fields, width);
  q.bases.assign(fields, base);
  return q;
}

void QuantizationSpec::validate(int fields) const {
  if (static_cast<int>(widths.size()) != fields)
    throw ConfigError("expected " + std::to_string(fields) + " slab widths, got " +
                      std::to_string(widths.size()));
  if (!bases.empty() && static_cast<int>(bases.size()) != fields)
    throw ConfigError("expected " + std::to_string(fields) + " slab bases, got " +
                      std::to_string(bases.size()));
  for (std::size_t i = 0; i < widths.size(); ++i)
    if (!(widths[i] > 0.0) || !std::isfinite(widths[i]))
      throw ConfigError("slab width " + std::to_string(i + 1) + " must be a positive finite real");
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (!std::isfinite(bases[i]))
      throw ConfigError("slab base " + std::to_string(i + 1) + " must be finite");
}

int QuantizationSpec::quantize(int field, double v) const {
  return quantize_value(v, widths[field], base(field));
}

int quantize_value(double v, double w, double b) {
  return static_cast<int>(std::round((v - b) / w));
}

double perturb_off_cuts(double v, double w, double b) {
  const int k = quantize_value(v, w, b);
  const double lo = b + (k - 0.5) * w;
  const double hi = b + (k + 0.5) * w;
  const double mag = std::max(std::abs(lo), std::abs(hi));
  const double delta = std::max(1e-12 * w, 64.0 * mag * std::numeric_limits<double>::epsilon());
  if (v - lo < delta) return lo + delta;
  if (hi - v < delta) return hi - delta;
  return v;
}

namespace {

// Labels of cut faces; simplex faces keep their local index 0..d.
constexpr int kCutLabelBase = 16;
// Below the perturbation margin, so original vertex values never snap.
constexpr double kSnapTolerance = 1e-13;
int cut_label(int field, int side) { return kCutLabelBase + 2 * field + (side > 0 ? 1 : 0); }

struct Piece {
  ConvexPolytope poly;
  QuantTuple tuple;
};

}  // namespace

std::vector<Fragment> slice_simplex(const Simplex& s, std::span<const Channels> vertex_values,
                                    const QuantizationSpec& q, std::int64_t simplex_id,
                                    bool keep_polytope) {
  const int r = q.field_count();
  const int nv = s.vertex_count();
  std::array<Channels, 4> vals{};
  for (int v = 0; v < nv; ++v)
    for (int f = 0; f < r; ++f) vals[v][f] = perturb_off_cuts(vertex_values[v][f], q.widths[f], q.base(f));

  std::vector<Piece> pieces(1);
  if (s.dimension == 3) {
    pieces[0].poly = ConvexPolytope::tetrahedron(s.points, vals, r);
  } else {
    pieces[0].poly = ConvexPolytope::prism({s.points[0], s.points[1], s.points[2]},
                                           {vals[0], vals[1], vals[2]}, r);
  }

  for (int f = 0; f < r; ++f) {
    std::vector<Piece> next;
    for (auto& piece : pieces) {
      const int kmin = q.quantize(f, piece.poly.channel_min(f));
      const int kmax = q.quantize(f, piece.poly.channel_max(f));
      ConvexPolytope rest = std::move(piece.poly);
      for (int k = kmin; k < kmax && !rest.empty(); ++k) {
        const double c = q.cut_level(f, k);
        // Vertices made by earlier cuts can sit on this level up to rounding
        // when level planes coincide; snapping keeps that from leaving slivers.
        rest.snap(f, c, kSnapTolerance * q.widths[f]);
        ConvexPolytope lower = rest;
        lower.clip(f, c, KeepSide::Below, cut_label(f, +1));
        rest.clip(f, c, KeepSide::Above, cut_label(f, -1));
        if (!lower.empty()) {
          next.push_back({std::move(lower), piece.tuple});
          next.back().tuple.push_back(k);
        }
      }
      if (!rest.empty()) {
        next.push_back({std::move(rest), piece.tuple});
        next.back().tuple.push_back(kmax);
      }
    }
    pieces = std::move(next);
  }

  const double whole = s.measure();
  const int d = s.dimension;
  const double scale = std::pow(whole, 1.0 / d);
  const double facet_floor = 1e-16 * std::pow(scale, d - 1);

  std::vector<Fragment> out;
  std::vector<std::vector<Vec3>> centroids;  // per fragment, parallel to facets
  out.reserve(pieces.size());
  for (auto& piece : pieces) {
    const double vol = piece.poly.volume();
    if (!(vol > kDegenerateMeasure * whole)) continue;
    Fragment frag;
    frag.simplex = simplex_id;
    frag.tuple = std::move(piece.tuple);
    frag.volume = vol;
    std::vector<std::pair<FacetRecord, Vec3>> recs;
    for (const auto& face : piece.poly.faces()) {
      if (face.label == ConvexPolytope::kCapLabel || !(face.area > facet_floor)) continue;
      FacetRecord rec;
      if (face.label >= kCutLabelBase) {
        rec.kind = FacetKind::Cut;
        rec.index = static_cast<std::int16_t>((face.label - kCutLabelBase) / 2);
        rec.side = (face.label - kCutLabelBase) % 2 ? 1 : -1;
      } else {
        rec.kind = FacetKind::SimplexFace;
        rec.index = static_cast<std::int16_t>(face.label);
      }
      rec.measure = face.area;
      recs.emplace_back(rec, face.centroid);
    }
    std::sort(recs.begin(), recs.end(), [](const auto& x, const auto& y) {
      const FacetRecord &a = x.first, &b = y.first;
      if (a.kind != b.kind) return a.kind < b.kind;
      if (a.index != b.index) return a.index < b.index;
      return a.side < b.side;
    });
    centroids.emplace_back();
    for (const auto& [rec, c] : recs) {
      frag.facets.push_back(rec);
      centroids.back().push_back(c);
    }
    if (keep_polytope) {
      for (const auto& p : piece.poly.distinct_positions()) {
        if (d == 2 && p.z != 0.0) continue;  // top cap of the prism
        frag.polytope.push_back(d == 2 ? Vec3{p.x, p.y, s.points[0].z} : p);
      }
    }
    out.push_back(std::move(frag));
  }

  // Partners across cut facets.
  const int n = static_cast<int>(out.size());
  auto opposite_facet = [&](int j, const FacetRecord& f) {
    for (std::size_t b = 0; b < out[j].facets.size(); ++b) {
      const auto& g = out[j].facets[b];
      if (g.kind == FacetKind::Cut && g.index == f.index && g.side == -f.side)
        return static_cast<int>(b);
    }
    return -1;
  };
  QuantTuple target(r);
  for (int i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < out[i].facets.size(); ++a) {
      auto& f = out[i].facets[a];
      if (f.kind != FacetKind::Cut) continue;
      target = out[i].tuple;
      target[f.index] += f.side;
      for (int j = 0; j < n && f.partner < 0; ++j)
        if (out[j].tuple == target && opposite_facet(j, f) >= 0) f.partner = j;
      if (f.partner >= 0) continue;
      // Coincident level planes: the partner differs in further fields.
      for (int j = 0; j < n && f.partner < 0; ++j) {
        if (j == i || out[j].tuple[f.index] != target[f.index]) continue;
        const int b = opposite_facet(j, f);
        if (b < 0) continue;
        if (norm(centroids[j][b] - centroids[i][a]) <= 1e-9 * scale &&
            std::abs(out[j].facets[b].measure - f.measure) <= 1e-9 * f.measure)
          f.partner = j;
      }
    }
  }
  return out;
}

std::span<const Vec3> FragmentSet::polytope(std::int64_t i) const {
  if (!has_geometry()) return {};
  return {vertices.data() + vertex_begin[i],
          static_cast<std::size_t>(vertex_begin[i + 1] - vertex_begin[i])};
}

double FragmentSet::total_volume() const {
  double sum = 0.0;
  for (double v : volume) sum += v;
  return sum;
}

Fragment FragmentSet::fragment(std::int64_t i) const {
  Fragment f;
  f.simplex = simplex[i];
  const auto p = polytope(i);
  f.polytope.assign(p.begin(), p.end());
  const auto t = tuple(i);
  f.tuple.assign(t.begin(), t.end());
  f.volume = volume[i];
  const auto fc = facets_of(i);
  f.facets.assign(fc.begin(), fc.end());
  return f;
}

namespace {

void append(FragmentSet& set, const Fragment& f, bool geometry) {
  set.simplex.push_back(f.simplex);
  set.tuples.insert(set.tuples.end(), f.tuple.begin(), f.tuple.end());
  set.volume.push_back(f.volume);
  set.facets.insert(set.facets.end(), f.facets.begin(), f.facets.end());
  set.facet_begin.push_back(static_cast<std::int64_t>(set.facets.size()));
  if (geometry) {
    set.vertices.insert(set.vertices.end(), f.polytope.begin(), f.polytope.end());
    set.vertex_begin.push_back(static_cast<std::int64_t>(set.vertices.size()));
  }
}

void slice_range(const MultiFieldGrid& grid, const QuantizationSpec& q,
                 std::span<const Simplex> all, std::int64_t first, std::int64_t last,
                 bool geometry, FragmentSet& out) {
  const int r = grid.field_count();
  std::array<Channels, 4> vals{};
  for (std::int64_t s = first; s < last; ++s) {
    const Simplex& sx = all[s];
    for (int v = 0; v < sx.vertex_count(); ++v)
      for (int f = 0; f < r; ++f) vals[v][f] = grid.value(f, sx.vertex_ids[v]);
    for (const auto& frag : slice_simplex(sx, {vals.data(), static_cast<std::size_t>(sx.vertex_count())}, q, s, geometry))
      append(out, frag, geometry);
    out.simplex_begin.push_back(out.size());
  }
}

}  // namespace

FragmentSet slice_grid(const MultiFieldGrid& grid, const QuantizationSpec& q,
                       const SliceOptions& options) {
  q.validate(grid.field_count());
  const auto all = simplices(grid);
  const auto n = static_cast<std::int64_t>(all.size());

  int workers = options.workers > 0 ? options.workers
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::clamp<std::int64_t>(workers, 1, std::max<std::int64_t>(1, n)));

  std::vector<FragmentSet> parts(workers);
  for (auto& p : parts) {
    p.field_count = grid.field_count();
    p.dimension = grid.dimension();
  }
  auto bound = [&](int w) { return n * w / workers; };
  if (workers == 1) {
    slice_range(grid, q, all, 0, n, options.keep_polytopes, parts[0]);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w)
      threads.emplace_back([&, w] {
        slice_range(grid, q, all, bound(w), bound(w + 1), options.keep_polytopes, parts[w]);
      });
    for (auto& t : threads) t.join();
  }

  // Concatenate in simplex order; offsets shift by the preceding parts.
  FragmentSet out = std::move(parts[0]);
  for (int w = 1; w < workers; ++w) {
    const auto& p = parts[w];
    const auto frag_off = out.size();
    const auto facet_off = static_cast<std::int64_t>(out.facets.size());
    const auto vert_off = static_cast<std::int64_t>(out.vertices.size());
    out.simplex.insert(out.simplex.end(), p.simplex.begin(), p.simplex.end());
    out.tuples.insert(out.tuples.end(), p.tuples.begin(), p.tuples.end());
    out.volume.insert(out.volume.end(), p.volume.begin(), p.volume.end());
    out.facets.insert(out.facets.end(), p.facets.begin(), p.facets.end());
    for (std::size_t i = 1; i < p.facet_begin.size(); ++i) out.facet_begin.push_back(p.facet_begin[i] + facet_off);
    for (std::size_t i = 1; i < p.simplex_begin.size(); ++i) out.simplex_begin.push_back(p.simplex_begin[i] + frag_off);
    if (options.keep_polytopes) {
      out.vertices.insert(out.vertices.end(), p.vertices.begin(), p.vertices.end());
      for (std::size_t i = 1; i < p.vertex_begin.size(); ++i) out.vertex_begin.push_back(p.vertex_begin[i] + vert_off);
    }
  }
  return out;
}

namespace {

struct FaceKey {
  std::array<std::int64_t, 3> ids;
  std::int64_t simplex;
  int local;
};

// Index of the fragment of simplex s carrying `tuple`, or -1.
std::int64_t find_tuple(const FragmentSet& set, std::int64_t s, std::span<const int> tuple) {
  const auto lo = set.simplex_begin[s], hi = set.simplex_begin[s + 1];
  // Fragments of a simplex are sorted by tuple.
  std::int64_t a = lo, b = hi;
  while (a < b) {
    const auto mid = (a + b) / 2;
    const auto t = set.tuple(mid);
    if (std::lexicographical_compare(t.begin(), t.end(), tuple.begin(), tuple.end())) a = mid + 1;
    else b = mid;
  }
  if (a < hi && std::ranges::equal(set.tuple(a), tuple)) return a;
  return -1;
}

const FacetRecord* face_facet(const FragmentSet& set, std::int64_t i, int local) {
  for (const auto& f : set.facets_of(i))
    if (f.kind == FacetKind::SimplexFace && f.index == local) return &f;
  return nullptr;
}

}  // namespace

std::vector<FragmentAdjacency> fragment_adjacency(const FragmentSet& fragments,
                                                  std::span<const Simplex> simplices,
                                                  AdjacencyStats* stats) {
  AdjacencyStats st;
  std::vector<FragmentAdjacency> pairs;

  const int d = fragments.dimension;
  // Facets this small are slivers left by the perturbation off cut levels;
  // missing partners for them are expected and not counted.
  auto significant = [&](const FacetRecord& f, std::int64_t s) {
    return f.measure > 1e-9 * std::pow(simplices[s].measure(), (d - 1.0) / d);
  };

  // Inside each simplex, through cut facet partners.
  for (std::int64_t i = 0; i < fragments.size(); ++i) {
    const auto base = fragments.simplex_begin[fragments.simplex[i]];
    for (const auto& f : fragments.facets_of(i)) {
      if (f.kind != FacetKind::Cut) continue;
      if (f.partner < 0) {
        st.unmatched_cut_facets += significant(f, fragments.simplex[i]);
        continue;
      }
      const auto j = base + f.partner;
      if (i < j) {
        pairs.push_back({i, j, f.measure});
        ++st.in_simplex_pairs;
      }
    }
  }

  // Across shared simplex faces.
  std::vector<FaceKey> keys;
  keys.reserve(simplices.size() * (d + 1));
  for (std::size_t s = 0; s < simplices.size(); ++s) {
    for (int k = 0; k <= d; ++k) {
      FaceKey key{{-1, -1, -1}, static_cast<std::int64_t>(s), k};
      int n = 0;
      for (int v = 0; v <= d; ++v)
        if (v != k) key.ids[n++] = simplices[s].vertex_ids[v];
      std::sort(key.ids.begin(), key.ids.begin() + n);
      keys.push_back(key);
    }
  }
  std::sort(keys.begin(), keys.end(), [](const FaceKey& a, const FaceKey& b) {
    if (a.ids != b.ids) return a.ids < b.ids;
    return a.simplex < b.simplex;
  });
  for (std::size_t i = 0; i + 1 < keys.size(); ++i) {
    if (keys[i].ids != keys[i + 1].ids) continue;
    const auto& ka = keys[i];
    const auto& kb = keys[i + 1];
    ++i;
    for (auto fa = fragments.simplex_begin[ka.simplex]; fa < fragments.simplex_begin[ka.simplex + 1]; ++fa) {
      const auto* facet = face_facet(fragments, fa, ka.local);
      if (!facet) continue;
      const auto fb = find_tuple(fragments, kb.simplex, fragments.tuple(fa));
      if (fb < 0 || !face_facet(fragments, fb, kb.local)) {
        st.unmatched_face_facets += significant(*facet, ka.simplex);
        continue;
      }
      pairs.push_back({std::min(fa, fb), std::max(fa, fb), facet->measure});
      ++st.cross_simplex_pairs;
    }
  }

  std::sort(pairs.begin(), pairs.end(), [](const FragmentAdjacency& a, const FragmentAdjacency& b) {
    return a.a != b.a ? a.a < b.a : a.b < b.b;
  });
  if (stats) *stats = st;
  return pairs;
}

}  // namespace reebskel
