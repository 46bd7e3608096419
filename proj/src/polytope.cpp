#include "reebskel/polytope.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iterator>
#include <numeric>
#include <stdexcept>

namespace reebskel {

namespace {

int slot_of(const ConvexPolytope::Vertex& v, int target) {
  for (int s = 0; s < 3; ++s)
    if (v.nbrs[s] == target) return s;
  throw std::logic_error("polytope: broken vertex graph");
}

double det3(Vec3 a, Vec3 b, Vec3 c) { return dot(a, cross(b, c)); }

}  // namespace

ConvexPolytope ConvexPolytope::from_faces(std::span<const Vec3> pts,
                                          std::span<const Channels> values, int channels,
                                          std::span<const LoopFace> faces) {
  const int n = static_cast<int>(pts.size());
  // succ[v] maps an incoming neighbor to the outgoing neighbor on the same face.
  std::vector<std::vector<std::array<int, 3>>> succ(n);  // {from, to, label}
  for (const auto& f : faces) {
    const int m = static_cast<int>(f.loop.size());
    for (int t = 0; t < m; ++t) {
      const int a = f.loop[(t + m - 1) % m], v = f.loop[t], b = f.loop[(t + 1) % m];
      succ[v].push_back({a, b, f.label});
    }
  }
  ConvexPolytope p;
  p.channels_ = channels;
  p.verts_.resize(n);
  for (int v = 0; v < n; ++v) {
    if (succ[v].size() != 3) throw std::logic_error("polytope: vertex degree must be 3");
    auto& vert = p.verts_[v];
    vert.pos = pts[v];
    vert.values = values[v];
    int cur = succ[v][0][1];
    for (int s = 0; s < 3; ++s) {
      vert.nbrs[s] = cur;
      const auto it = std::find_if(succ[v].begin(), succ[v].end(),
                                   [&](const auto& e) { return e[0] == cur; });
      if (it == succ[v].end()) throw std::logic_error("polytope: inconsistent face loops");
      cur = (*it)[1];
    }
    for (int s = 0; s < 3; ++s) {
      const auto it = std::find_if(succ[v].begin(), succ[v].end(),
                                   [&](const auto& e) { return e[1] == vert.nbrs[s]; });
      vert.labels[s] = (*it)[2];
    }
  }
  return p;
}

ConvexPolytope ConvexPolytope::tetrahedron(const std::array<Vec3, 4>& pts,
                                           const std::array<Channels, 4>& values, int channels) {
  // Outward counter-clockwise loops for a positively oriented tetrahedron;
  // face k is opposite vertex k.
  std::array<LoopFace, 4> faces{{{{1, 2, 3}, 0}, {{0, 3, 2}, 1}, {{0, 1, 3}, 2}, {{0, 2, 1}, 3}}};
  if (det3(pts[1] - pts[0], pts[2] - pts[0], pts[3] - pts[0]) < 0.0)
    for (auto& f : faces) std::reverse(f.loop.begin(), f.loop.end());
  return from_faces(pts, values, channels, faces);
}

ConvexPolytope ConvexPolytope::prism(const std::array<Vec3, 3>& tri,
                                     const std::array<Channels, 3>& values, int channels) {
  std::array<Vec3, 6> pts;
  std::array<Channels, 6> vals;
  for (int v = 0; v < 3; ++v) {
    pts[v] = {tri[v].x, tri[v].y, 0.0};
    pts[v + 3] = {tri[v].x, tri[v].y, 1.0};
    vals[v] = vals[v + 3] = values[v];
  }
  std::array<LoopFace, 5> faces{{{{0, 2, 1}, kCapLabel},
                                 {{3, 4, 5}, kCapLabel},
                                 {{0, 1, 4, 3}, 2},
                                 {{1, 2, 5, 4}, 0},
                                 {{2, 0, 3, 5}, 1}}};
  const Vec3 a = tri[1] - tri[0], b = tri[2] - tri[0];
  if (a.x * b.y - a.y * b.x < 0.0)
    for (auto& f : faces) std::reverse(f.loop.begin(), f.loop.end());
  return from_faces(pts, vals, channels, faces);
}

ConvexPolytope ConvexPolytope::box(Vec3 lo, Vec3 hi) {
  std::array<Vec3, 8> pts;
  for (int c = 0; c < 8; ++c)
    pts[c] = {(c & 1) ? hi.x : lo.x, (c & 2) ? hi.y : lo.y, (c & 4) ? hi.z : lo.z};
  std::array<Channels, 8> vals{};
  const std::array<LoopFace, 6> faces{{{{0, 4, 6, 2}, 0},
                                       {{1, 3, 7, 5}, 1},
                                       {{0, 1, 5, 4}, 2},
                                       {{2, 6, 7, 3}, 3},
                                       {{0, 2, 3, 1}, 4},
                                       {{4, 5, 7, 6}, 5}}};
  return from_faces(pts, vals, 0, faces);
}

void ConvexPolytope::set_linear_channel(int channel, Vec3 n, double d) {
  channels_ = std::max(channels_, channel + 1);
  for (auto& v : verts_) v.values[channel] = dot(n, v.pos) + d;
}

void ConvexPolytope::snap(int channel, double level, double tol) {
  for (auto& v : verts_)
    if (std::abs(v.values[channel] - level) <= tol) v.values[channel] = level;
}

void ConvexPolytope::clip(int channel, double level, KeepSide keep, int label) {
  const int onv = vertex_count();
  if (onv == 0) return;

  std::vector<double> sdist(onv);
  bool any_kept = false, any_clipped = false;
  for (int v = 0; v < onv; ++v) {
    const double x = verts_[v].values[channel];
    sdist[v] = keep == KeepSide::Below ? level - x : x - level;
    any_kept |= sdist[v] > 0.0;
    any_clipped |= sdist[v] < 0.0;
  }
  if (!any_kept) {
    verts_.clear();
    return;
  }
  if (!any_clipped) return;

  std::vector<char> clipped(onv);
  for (int v = 0; v < onv; ++v) clipped[v] = sdist[v] < 0.0;

  // Insert a vertex on every edge joining a kept and a clipped vertex.
  for (int vcur = 0; vcur < onv; ++vcur) {
    if (clipped[vcur]) continue;
    for (int np = 0; np < 3; ++np) {
      const int vnext = verts_[vcur].nbrs[np];
      if (!clipped[vnext]) continue;
      const double wa = -sdist[vnext], wb = sdist[vcur];
      const double inv = 1.0 / (wa + wb);
      Vertex w;
      const Vertex& a = verts_[vcur];
      const Vertex& b = verts_[vnext];
      w.pos = inv * (wa * a.pos + wb * b.pos);
      for (int c = 0; c < channels_; ++c) w.values[c] = inv * (wa * a.values[c] + wb * b.values[c]);
      w.values[channel] = level;
      w.nbrs = {vcur, -1, -1};
      w.labels = {b.labels[slot_of(b, vcur)], -1, -1};
      verts_[vcur].nbrs[np] = static_cast<int>(verts_.size());
      verts_.push_back(w);
    }
  }

  // Link the new vertices around the cut face.
  const int nv = vertex_count();
  for (int vstart = onv; vstart < nv; ++vstart) {
    int vcur = vstart;
    int vnext = verts_[vcur].nbrs[0];
    int guard = 0;
    do {
      const int np = slot_of(verts_[vnext], vcur);
      vcur = vnext;
      vnext = verts_[vcur].nbrs[(np + 1) % 3];
      if (++guard > 4 * nv) throw std::logic_error("polytope: face walk did not terminate");
    } while (vcur < onv);
    verts_[vstart].nbrs[2] = vcur;
    verts_[vstart].labels[2] = label;
    verts_[vcur].nbrs[1] = vstart;
    verts_[vcur].labels[1] = verts_[vstart].labels[0];
  }

  // Compact, dropping clipped vertices.
  std::vector<int> remap(nv, -1);
  int kept = 0;
  for (int v = 0; v < nv; ++v) {
    if (v < onv && clipped[v]) continue;
    remap[v] = kept;
    if (kept != v) verts_[kept] = verts_[v];
    ++kept;
  }
  verts_.resize(kept);
  for (auto& v : verts_)
    for (auto& nb : v.nbrs) nb = remap[nb];
}

double ConvexPolytope::volume() const {
  const int n = vertex_count();
  if (n == 0) return 0.0;
  const Vec3 ref = verts_[0].pos;
  std::vector<std::array<char, 3>> seen(n, {0, 0, 0});
  double six_v = 0.0;
  for (int vstart = 0; vstart < n; ++vstart)
    for (int pstart = 0; pstart < 3; ++pstart) {
      if (seen[vstart][pstart]) continue;
      int vcur = vstart, p = pstart;
      Vec3 first{}, prev{};
      int count = 0;
      do {
        seen[vcur][p] = 1;
        const Vec3 pos = verts_[vcur].pos - ref;
        if (count == 0) first = pos;
        else if (count >= 2) six_v += det3(first, prev, pos);
        prev = pos;
        ++count;
        const int vnext = verts_[vcur].nbrs[p];
        p = (slot_of(verts_[vnext], vcur) + 1) % 3;
        vcur = vnext;
      } while (vcur != vstart || p != pstart);
    }
  return six_v / 6.0;
}

std::vector<ConvexPolytope::Face> ConvexPolytope::faces() const {
  const int n = vertex_count();
  std::vector<Face> out;
  if (n == 0) return out;
  std::vector<std::array<char, 3>> seen(n, {0, 0, 0});
  for (int vstart = 0; vstart < n; ++vstart)
    for (int pstart = 0; pstart < 3; ++pstart) {
      if (seen[vstart][pstart]) continue;
      Face f;
      f.label = verts_[vstart].labels[pstart];
      int vcur = vstart, p = pstart;
      do {
        seen[vcur][p] = 1;
        f.loop.push_back(verts_[vcur].pos);
        const int vnext = verts_[vcur].nbrs[p];
        p = (slot_of(verts_[vnext], vcur) + 1) % 3;
        vcur = vnext;
      } while (vcur != vstart || p != pstart);

      Vec3 area_vec{}, weighted{};
      const Vec3 a = f.loop[0];
      for (std::size_t i = 1; i + 1 < f.loop.size(); ++i) {
        const Vec3 t = cross(f.loop[i] - a, f.loop[i + 1] - a);
        area_vec = area_vec + t;
        weighted = weighted + norm(t) * (1.0 / 3.0) * (a + f.loop[i] + f.loop[i + 1]);
      }
      f.area = 0.5 * norm(area_vec);
      double total = 0.0;
      for (std::size_t i = 1; i + 1 < f.loop.size(); ++i)
        total += norm(cross(f.loop[i] - a, f.loop[i + 1] - a));
      if (total > 0.0) {
        f.centroid = (1.0 / total) * weighted;
      } else {
        Vec3 sum{};
        for (const auto& q : f.loop) sum = sum + q;
        f.centroid = (1.0 / static_cast<double>(f.loop.size())) * sum;
      }
      out.push_back(std::move(f));
    }
  return out;
}

std::vector<Vec3> ConvexPolytope::distinct_positions() const {
  std::vector<Vec3> out;
  for (const auto& v : verts_)
    if (std::find(out.begin(), out.end(), v.pos) == out.end()) out.push_back(v.pos);
  return out;
}

double ConvexPolytope::channel_min(int channel) const {
  double m = verts_.empty() ? 0.0 : verts_[0].values[channel];
  for (const auto& v : verts_) m = std::min(m, v.values[channel]);
  return m;
}

double ConvexPolytope::channel_max(int channel) const {
  double m = verts_.empty() ? 0.0 : verts_[0].values[channel];
  for (const auto& v : verts_) m = std::max(m, v.values[channel]);
  return m;
}

// --- convex hull measures of plain point sets -------------------------------

namespace {

std::vector<Vec3> dedupe(std::span<const Vec3> points, int dimension) {
  std::vector<Vec3> out;
  for (Vec3 p : points) {
    if (dimension == 2) p.z = 0.0;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<Vec3> hull_2d(std::vector<Vec3> pts) {
  std::sort(pts.begin(), pts.end(),
            [](Vec3 a, Vec3 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  if (pts.size() < 3) return pts;
  auto turn = [](Vec3 o, Vec3 a, Vec3 b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
  };
  std::vector<Vec3> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

struct HullFacet {
  Vec3 normal;  // unit, outward
  double offset;
  double area;
};

std::vector<HullFacet> hull_3d_facets(const std::vector<Vec3>& pts) {
  struct Candidate {
    HullFacet facet;
    std::vector<std::size_t> support;  // sorted point indices on the plane
  };
  std::vector<Candidate> found;
  const std::size_t n = pts.size();
  if (n < 4) return {};
  double scale = 0.0;
  for (const auto& p : pts)
    for (const auto& q : pts) scale = std::max(scale, norm(p - q));
  const double tol = 1e-12 * scale;

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const Vec3 e1 = pts[j] - pts[i], e2 = pts[k] - pts[i];
        Vec3 nrm = cross(e1, e2);
        const double len = norm(nrm);
        // Nearly collinear triples define their plane poorly; every facet
        // worth counting also has a well-conditioned triple.
        if (len <= 1e-6 * norm(e1) * norm(e2) || len <= 1e-24 * scale * scale) continue;
        nrm = (1.0 / len) * nrm;
        double off = dot(nrm, pts[i]);
        bool above = false, below = false;
        for (const auto& p : pts) {
          const double s = dot(nrm, p) - off;
          above |= s > tol;
          below |= s < -tol;
        }
        if (above && below) continue;
        if (above) {
          nrm = -1.0 * nrm;
          off = -off;
        }
        std::vector<std::size_t> support;
        for (std::size_t m = 0; m < n; ++m)
          if (std::abs(dot(nrm, pts[m]) - off) <= tol) support.push_back(m);
        const bool dup = std::any_of(found.begin(), found.end(), [&](const Candidate& c) {
          return c.support == support;
        });
        if (dup) continue;

        // Order the facet's points by angle and triangulate.
        std::vector<Vec3> on;
        for (auto m : support) on.push_back(pts[m]);
        Vec3 c{};
        for (const auto& p : on) c = c + p;
        c = (1.0 / static_cast<double>(on.size())) * c;
        const Vec3 u0 = on[0] - c;
        const Vec3 u = (1.0 / norm(u0)) * u0;
        const Vec3 v = cross(nrm, u);
        std::sort(on.begin(), on.end(), [&](Vec3 a, Vec3 b) {
          return std::atan2(dot(a - c, v), dot(a - c, u)) < std::atan2(dot(b - c, v), dot(b - c, u));
        });
        double area = 0.0;
        for (std::size_t t = 1; t + 1 < on.size(); ++t)
          area += 0.5 * norm(cross(on[t] - on[0], on[t + 1] - on[0]));
        found.push_back({{nrm, off, area}, std::move(support)});
      }

  // A plane through part of a facet (within tolerance) is not a facet of its own.
  std::vector<HullFacet> facets;
  for (std::size_t a = 0; a < found.size(); ++a) {
    bool covered = false;
    for (std::size_t b = 0; b < found.size() && !covered; ++b) {
      if (a == b || found[b].support.size() < found[a].support.size()) continue;
      std::vector<std::size_t> common;
      std::set_intersection(found[a].support.begin(), found[a].support.end(),
                            found[b].support.begin(), found[b].support.end(),
                            std::back_inserter(common));
      covered = common.size() >= 3 &&
                (found[b].support.size() > found[a].support.size() || b < a);
    }
    if (!covered) facets.push_back(found[a].facet);
  }
  return facets;
}

}  // namespace

double convex_hull_measure(std::span<const Vec3> points, int dimension) {
  auto pts = dedupe(points, dimension);
  if (dimension == 2) {
    const auto h = hull_2d(std::move(pts));
    double twice = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      const Vec3 a = h[i], b = h[(i + 1) % h.size()];
      twice += a.x * b.y - a.y * b.x;
    }
    return h.size() < 3 ? 0.0 : 0.5 * std::abs(twice);
  }
  const auto facets = hull_3d_facets(pts);
  if (facets.empty()) return 0.0;
  Vec3 c{};
  for (const auto& p : pts) c = c + p;
  c = (1.0 / static_cast<double>(pts.size())) * c;
  double vol = 0.0;
  for (const auto& f : facets) vol += f.area * (f.offset - dot(f.normal, c)) / 3.0;
  return vol;
}

std::vector<double> convex_hull_facet_measures(std::span<const Vec3> points, int dimension) {
  auto pts = dedupe(points, dimension);
  std::vector<double> out;
  if (dimension == 2) {
    const auto h = hull_2d(std::move(pts));
    if (h.size() < 3) return out;
    for (std::size_t i = 0; i < h.size(); ++i) out.push_back(norm(h[(i + 1) % h.size()] - h[i]));
    return out;
  }
  for (const auto& f : hull_3d_facets(pts)) out.push_back(f.area);
  return out;
}

}  // namespace reebskel
