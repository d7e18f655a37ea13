#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "mmn/geometry.hpp"

namespace mmn {

/// Grid induced by the per-axis coordinate values of a terminal set.
/// Vertices are index tuples into per-axis coordinate tables; geometric
/// points are materialized on demand so an n^d grid stays cheap.
class GridGraph {
 public:
  using Index = std::vector<std::size_t>;

  GridGraph(std::vector<std::vector<Coord>> axis_coords, bool oriented)
      : axes_(std::move(axis_coords)), oriented_(oriented) {
    strides_.assign(axes_.size(), 1);
    for (std::size_t i = 1; i < axes_.size(); ++i)
      strides_[i] = strides_[i - 1] * axes_[i - 1].size();
    vertex_count_ = strides_.empty() ? 0 : 1;
    for (const auto& a : axes_) vertex_count_ *= a.size();
  }

  std::size_t dim() const { return axes_.size(); }
  bool oriented() const { return oriented_; }
  const std::vector<std::vector<Coord>>& axes() const { return axes_; }
  std::size_t vertex_count() const { return vertex_count_; }

  std::size_t edge_count() const {
    std::size_t total = 0;
    for (std::size_t a = 0; a < dim(); ++a) {
      if (axes_[a].size() < 2) continue;
      total += vertex_count_ / axes_[a].size() * (axes_[a].size() - 1);
    }
    return total;
  }

  std::size_t vertex_id(const Index& idx) const {
    std::size_t id = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) id += idx[i] * strides_[i];
    return id;
  }

  Index index_of(std::size_t id) const {
    Index idx(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      idx[i] = id / strides_[i] % axes_[i].size();
    }
    return idx;
  }

  Point point_of(std::size_t id) const {
    Point p;
    p.c.resize(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      p[i] = axes_[i][id / strides_[i] % axes_[i].size()];
    return p;
  }

  /// Id of the grid vertex at p, or npos when p is not a grid vertex.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_vertex(const Point& p) const {
    if (p.dim() != dim()) return npos;
    std::size_t id = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      auto it = std::lower_bound(axes_[i].begin(), axes_[i].end(), p[i]);
      if (it == axes_[i].end() || *it != p[i]) return npos;
      id += static_cast<std::size_t>(it - axes_[i].begin()) * strides_[i];
    }
    return id;
  }

  /// Visit every edge as (vertex id, neighbor id, axis, length). Unoriented
  /// grids report each edge once, from the lower index; oriented grids emit
  /// the arc from the dominated endpoint.
  template <typename F>
  void for_each_edge(F&& f) const {
    for (std::size_t id = 0; id < vertex_count_; ++id) {
      for (std::size_t a = 0; a < dim(); ++a) {
        std::size_t pos = id / strides_[a] % axes_[a].size();
        if (pos + 1 >= axes_[a].size()) continue;
        f(id, id + strides_[a], a,
          static_cast<Weight>(axes_[a][pos + 1] - axes_[a][pos]));
      }
    }
  }

  /// Edge set as segments (used by solvers that search over edge subsets).
  std::vector<Segment> edge_segments() const {
    std::vector<Segment> segs;
    segs.reserve(edge_count());
    for_each_edge([&](std::size_t u, std::size_t v, std::size_t a, Weight) {
      segs.emplace_back(point_of(u), point_of(v), a);
    });
    return segs;
  }

 private:
  std::vector<std::vector<Coord>> axes_;
  std::vector<std::size_t> strides_;
  std::size_t vertex_count_ = 0;
  bool oriented_ = false;
};

/// Build the (unoriented) Hanan grid of a nonempty terminal set.
inline GridGraph build_hanan(std::span<const Point> terminals) {
  if (terminals.empty()) throw DegenerateInput("no terminals");
  const std::size_t d = terminals.front().dim();
  std::vector<std::vector<Coord>> axes(d);
  for (const Point& t : terminals) {
    require_same_dim(t, terminals.front());
    for (std::size_t i = 0; i < d; ++i) axes[i].push_back(t[i]);
  }
  for (auto& a : axes) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return GridGraph(std::move(axes), false);
}

/// Orient every edge from its dominated endpoint to its dominating endpoint.
/// The result is a DAG whose directed paths are exactly the M-paths of the
/// grid.
inline GridGraph orient_hanan(const GridGraph& g) {
  return GridGraph(g.axes(), true);
}

}  // namespace mmn
