#include "reebskel/skeleton.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace reebskel {

MeasureKind parse_measure_kind(std::string_view text) {
  if (text == "range") return MeasureKind::Range;
  if (text == "volume") return MeasureKind::Volume;
  if (text == "surface_area") return MeasureKind::SurfaceArea;
  throw ConfigError("unknown measure kind '" + std::string(text) +
                    "' (expected range, volume or surface_area)");
}

std::string_view measure_kind_name(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Range: return "range";
    case MeasureKind::Volume: return "volume";
    case MeasureKind::SurfaceArea: return "surface_area";
  }
  return "range";
}

double MeasureTable::get(MeasureKind kind) const {
  switch (kind) {
    case MeasureKind::Range: return static_cast<double>(range);
    case MeasureKind::Volume: return volume;
    case MeasureKind::SurfaceArea: return surface_area;
  }
  return 0.0;
}

int ReebSkeleton::node_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const SkeletonNode& n) { return n.alive; }));
}

int ReebSkeleton::regular_count() const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const SkeletonNode& n) {
    return n.alive && n.kind == ComponentKind::Regular;
  }));
}

int ReebSkeleton::singular_count() const { return node_count() - regular_count(); }

std::vector<std::pair<int, int>> ReebSkeleton::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t a = 0; a < adjacency.size(); ++a)
    for (int b : adjacency[a])
      if (static_cast<int>(a) < b) out.emplace_back(static_cast<int>(a), b);
  return out;
}

namespace {

int components_without(const ReebSkeleton& s, const std::vector<char>& removed) {
  std::vector<char> seen(s.nodes.size(), 0);
  int count = 0;
  std::vector<int> stack;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    if (!s.nodes[i].alive || removed[i] || seen[i]) continue;
    ++count;
    seen[i] = 1;
    stack.assign(1, static_cast<int>(i));
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int nb : s.adjacency[v])
        if (!seen[nb] && !removed[nb]) {
          seen[nb] = 1;
          stack.push_back(nb);
        }
    }
  }
  return count;
}

void link(ReebSkeleton& s, int a, int b) {
  if (a == b) return;
  auto add = [](std::vector<int>& v, int x) {
    const auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) v.insert(it, x);
  };
  add(s.adjacency[a], b);
  add(s.adjacency[b], a);
}

void unlink_all(ReebSkeleton& s, int a) {
  for (int b : s.adjacency[a]) {
    auto& v = s.adjacency[b];
    v.erase(std::remove(v.begin(), v.end(), a), v.end());
  }
  s.adjacency[a].clear();
}

}  // namespace

int ReebSkeleton::component_count() const {
  return components_without(*this, std::vector<char>(nodes.size(), 0));
}

MeasureTable measure_members(std::span<const NodeId> members, const JointContourNet& jcn) {
  MeasureTable m;
  std::set<std::vector<int>> tuples;
  std::vector<NodeId> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (NodeId n : sorted) {
    const auto& node = jcn.node(n);
    tuples.insert(node.tuple);
    m.volume += node.volume;
    const auto nbrs = jcn.neighbors(n);
    const auto eids = jcn.incident_edges(n);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (!std::binary_search(sorted.begin(), sorted.end(), nbrs[k]))
        m.surface_area += jcn.edges()[eids[k]].area;
  }
  m.range = static_cast<std::int64_t>(tuples.size());
  return m;
}

void compute_measures(ReebSkeleton& skeleton, const JointContourNet& jcn) {
  for (auto& node : skeleton.nodes)
    if (node.alive) node.measures = measure_members(node.members, jcn);
}

ReebSkeleton build_skeleton(const ComponentPartition& partition, const JointContourNet& jcn) {
  ReebSkeleton s;
  const int m = static_cast<int>(partition.regular.size());
  for (const auto& members : partition.regular) s.nodes.push_back({ComponentKind::Regular, members, {}, true});
  for (const auto& members : partition.singular) s.nodes.push_back({ComponentKind::Singular, members, {}, true});
  s.adjacency.assign(s.nodes.size(), {});
  auto id = [&](ComponentRef c) { return c.kind == ComponentKind::Regular ? c.index : m + c.index; };
  for (const auto& e : jcn.edges()) {
    const auto ca = partition.component_of_node[e.a], cb = partition.component_of_node[e.b];
    // Regular-regular JCN edges lie inside one regular component by construction.
    if (ca.kind == ComponentKind::Regular && cb.kind == ComponentKind::Regular) continue;
    link(s, id(ca), id(cb));
  }
  compute_measures(s, jcn);
  return s;
}

bool is_detachable(const ReebSkeleton& s, int r, int* attachment) {
  if (r < 0 || r >= static_cast<int>(s.nodes.size())) return false;
  if (!s.nodes[r].alive || s.nodes[r].kind != ComponentKind::Regular) return false;
  int attach = -1;
  std::vector<char> removed(s.nodes.size(), 0);
  removed[r] = 1;
  for (int nb : s.adjacency[r]) {
    if (s.nodes[nb].kind != ComponentKind::Singular) return false;
    bool exclusive = true;
    for (int x : s.adjacency[nb])
      if (x != r && s.nodes[x].kind == ComponentKind::Regular) exclusive = false;
    if (exclusive) {
      removed[nb] = 1;
      continue;
    }
    if (attach >= 0) return false;
    attach = nb;
  }
  if (attach < 0) return false;
  if (components_without(s, removed) > s.component_count()) return false;
  if (attachment) *attachment = attach;
  return true;
}

std::vector<int> find_detachable(const ReebSkeleton& s) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(s.nodes.size()); ++i)
    if (is_detachable(s, i)) out.push_back(i);
  return out;
}

bool prune_lip(ReebSkeleton& s, int r, const JointContourNet& jcn, MeasureKind kind) {
  int attach = -1;
  if (!is_detachable(s, r, &attach)) return false;
  PruneStep step;
  step.step = static_cast<int>(s.journal.size());
  step.node = r;
  step.measure = s.nodes[r].measures.get(kind);
  step.attachment = attach;
  for (int nb : std::vector<int>(s.adjacency[r]))
    if (nb != attach) {
      step.absorbed.push_back(nb);
      unlink_all(s, nb);
      s.nodes[nb].alive = false;
    }
  unlink_all(s, r);
  s.nodes[r].alive = false;

  std::vector<int> regular_left;
  for (int nb : s.adjacency[attach])
    if (s.nodes[nb].kind == ComponentKind::Regular) regular_left.push_back(nb);
  if (regular_left.size() == 1) {
    const int into = regular_left[0];
    auto& target = s.nodes[into];
    auto& source = s.nodes[attach];
    std::vector<NodeId> merged;
    std::merge(target.members.begin(), target.members.end(), source.members.begin(),
               source.members.end(), std::back_inserter(merged));
    target.members = std::move(merged);
    for (int nb : std::vector<int>(s.adjacency[attach])) link(s, into, nb);
    unlink_all(s, attach);
    source.alive = false;
    target.measures = measure_members(target.members, jcn);
    step.merged_into = into;
  }
  s.journal.push_back(std::move(step));
  return true;
}

int simplify(ReebSkeleton& s, const JointContourNet& jcn, MeasureKind kind, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ConfigError("threshold must lie in [0, 1]");
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& n : s.nodes)
    if (n.alive && n.kind == ComponentKind::Regular) {
      lo = std::min(lo, n.measures.get(kind));
      hi = std::max(hi, n.measures.get(kind));
    }
  if (!(lo <= hi)) return 0;
  const double cutoff = lo + t * (hi - lo);
  auto eligible = [&](int i) { return t >= 1.0 || s.nodes[i].measures.get(kind) < cutoff; };

  int steps = 0;
  for (;;) {
    // Pop the smallest (measure, id) among eligible detachable nodes; measures
    // are read now, so merges since the last step are taken into account.
    int best = -1;
    for (int i : find_detachable(s)) {
      if (!eligible(i)) continue;
      if (best < 0 || s.nodes[i].measures.get(kind) < s.nodes[best].measures.get(kind)) best = i;
    }
    if (best < 0) break;
    prune_lip(s, best, jcn, kind);
    ++steps;
  }
  return steps;
}

}  // namespace reebskel
