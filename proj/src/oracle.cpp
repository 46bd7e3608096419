#include "reebskel/oracle.hpp"

#include <deque>

namespace reebskel {

namespace {

// Adjacency lists restricted to pairs the predicate accepts.
template <typename Same>
std::vector<std::vector<std::int64_t>> neighbor_lists(const FragmentSet& fragments,
                                                      std::span<const FragmentAdjacency> adjacency,
                                                      Same same) {
  std::vector<std::vector<std::int64_t>> nbrs(fragments.size());
  for (const auto& p : adjacency)
    if (same(p.a, p.b)) {
      nbrs[p.a].push_back(p.b);
      nbrs[p.b].push_back(p.a);
    }
  return nbrs;
}

// Calls found(seed) once per connected component.
template <typename Found>
void flood(const std::vector<std::vector<std::int64_t>>& nbrs, Found found) {
  std::vector<char> seen(nbrs.size(), 0);
  std::deque<std::int64_t> queue;
  for (std::size_t s = 0; s < nbrs.size(); ++s) {
    if (seen[s]) continue;
    found(static_cast<std::int64_t>(s));
    seen[s] = 1;
    queue.push_back(static_cast<std::int64_t>(s));
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto w : nbrs[v])
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
  }
}

}  // namespace

PixelComponentCount count_fiber_components(const FragmentSet& fragments,
                                           std::span<const FragmentAdjacency> adjacency) {
  const auto nbrs = neighbor_lists(fragments, adjacency, [&](std::int64_t a, std::int64_t b) {
    const auto ta = fragments.tuple(a), tb = fragments.tuple(b);
    for (std::size_t i = 0; i < ta.size(); ++i)
      if (ta[i] != tb[i]) return false;
    return true;
  });
  PixelComponentCount counts;
  flood(nbrs, [&](std::int64_t seed) {
    const auto t = fragments.tuple(seed);
    ++counts[std::vector<int>(t.begin(), t.end())];
  });
  return counts;
}

std::map<int, int> count_level_components(const FragmentSet& fragments,
                                          std::span<const FragmentAdjacency> adjacency, int field) {
  const auto nbrs = neighbor_lists(fragments, adjacency, [&](std::int64_t a, std::int64_t b) {
    return fragments.tuple(a)[field] == fragments.tuple(b)[field];
  });
  std::map<int, int> counts;
  flood(nbrs, [&](std::int64_t seed) { ++counts[fragments.tuple(seed)[field]]; });
  return counts;
}

}  // namespace reebskel
