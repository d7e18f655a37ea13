#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmn/geometry.hpp"

namespace mmn {

/// Intersection point of two axis-parallel segments with distinct axes, if
/// any. Collinear segments of a canonical network never meet, so this is the
/// only case an arrangement needs.
inline std::optional<Point> cross_point(const Segment& s, const Segment& t) {
  if (s.axis == t.axis) return std::nullopt;
  Point p = s.lo;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (i == s.axis) {
      if (t.lo[i] < s.lo[i] || t.lo[i] > s.hi[i]) return std::nullopt;
      p[i] = t.lo[i];
    } else if (i == t.axis) {
      if (s.lo[i] < t.lo[i] || s.lo[i] > t.hi[i]) return std::nullopt;
      p[i] = s.lo[i];
    } else if (s.lo[i] != t.lo[i]) {
      return std::nullopt;
    }
  }
  return p;
}

/// The network split at every segment endpoint, crossing, touch point and
/// requested extra point. Links are the sub-segments between consecutive
/// nodes; their union equals the network's union.
class Arrangement {
 public:
  struct Link {
    std::size_t a, b;  // node ids, a precedes b on the axis
    std::size_t axis;
  };

  explicit Arrangement(const Network& n, std::span<const Point> extra = {}) {
    const auto& segs = n.segments();
    std::vector<std::vector<Point>> on_seg(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
      on_seg[i].push_back(segs[i].lo);
      on_seg[i].push_back(segs[i].hi);
      for (std::size_t j = 0; j < segs.size(); ++j) {
        if (i == j) continue;
        if (auto p = cross_point(segs[i], segs[j])) on_seg[i].push_back(*p);
      }
      for (const Point& e : extra)
        if (segs[i].contains(e)) on_seg[i].push_back(e);
    }

    for (auto& pts : on_seg)
      for (const Point& p : pts) intern(p);

    for (std::size_t i = 0; i < segs.size(); ++i) {
      auto& pts = on_seg[i];
      const std::size_t ax = segs[i].axis;
      std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
        return a[ax] < b[ax];
      });
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        Link l{id_of_.at(pts[k]), id_of_.at(pts[k + 1]), ax};
        adj_[l.a].push_back(links_.size());
        adj_[l.b].push_back(links_.size());
        links_.push_back(l);
      }
    }
  }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t link_count() const { return links_.size(); }
  const std::vector<Point>& nodes() const { return nodes_; }
  const std::vector<Link>& links() const { return links_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find_node(const Point& p) const {
    auto it = id_of_.find(p);
    return it == id_of_.end() ? npos : it->second;
  }

  /// True iff the arrangement contains a monotone p-q path. Both points must
  /// be nodes (pass them as extras at construction); otherwise false.
  bool has_mpath(const Point& p, const Point& q) const {
    return mpath_search(p, q, nullptr);
  }

  /// One witness M-path as the node sequence from p to q, if any.
  std::optional<std::vector<Point>> find_mpath(const Point& p,
                                               const Point& q) const {
    std::vector<Point> path;
    if (!mpath_search(p, q, &path)) return std::nullopt;
    return path;
  }

 private:
  std::size_t intern(const Point& p) {
    auto [it, inserted] = id_of_.try_emplace(p, nodes_.size());
    if (inserted) {
      nodes_.push_back(p);
      adj_.emplace_back();
    }
    return it->second;
  }

  bool mpath_search(const Point& p, const Point& q,
                    std::vector<Point>* witness) const {
    const std::size_t src = find_node(p), dst = find_node(q);
    if (src == npos || dst == npos) return false;
    if (src == dst) {
      if (witness) witness->push_back(p);
      return true;
    }
    // Every step of an M-path stays in the p-q bounding box and moves
    // toward q, so plain reachability over direction-filtered links is
    // exact.
    std::vector<std::size_t> parent(nodes_.size(), npos);
    std::vector<char> seen(nodes_.size(), 0);
    std::vector<std::size_t> stack{src};
    seen[src] = 1;
    auto in_box = [&](const Point& v) {
      for (std::size_t i = 0; i < v.dim(); ++i) {
        if (v[i] < std::min(p[i], q[i]) || v[i] > std::max(p[i], q[i]))
          return false;
      }
      return true;
    };
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t li : adj_[u]) {
        const Link& l = links_[li];
        std::size_t v = l.a == u ? l.b : l.a;
        if (seen[v]) continue;
        const Point& pu = nodes_[u];
        const Point& pv = nodes_[v];
        if (!in_box(pv)) continue;
        Coord du = std::abs(pu[l.axis] - q[l.axis]);
        Coord dv = std::abs(pv[l.axis] - q[l.axis]);
        if (dv >= du) continue;
        seen[v] = 1;
        parent[v] = u;
        if (v == dst) {
          if (witness) {
            std::vector<Point> rev;
            for (std::size_t w = dst; w != npos; w = parent[w])
              rev.push_back(nodes_[w]);
            witness->assign(rev.rbegin(), rev.rend());
          }
          return true;
        }
        stack.push_back(v);
      }
    }
    return false;
  }

  std::vector<Point> nodes_;
  std::map<Point, std::size_t> id_of_;
  std::vector<std::vector<std::size_t>> adj_;  // node -> incident link ids
  std::vector<Link> links_;
};

inline Arrangement build_arrangement(const Network& n,
                                     std::span<const Point> extra = {}) {
  return Arrangement(n, extra);
}

/// One-shot M-connectivity query. Builds a throwaway arrangement; use an
/// Arrangement directly when checking many pairs on one network.
inline bool has_mpath(const Network& n, const Point& p, const Point& q) {
  const Point extra[] = {p, q};
  return Arrangement(n, extra).has_mpath(p, q);
}

enum class FailureKind {
  endpoint_off_network,
  no_monotone_path,
};

struct PairFailure {
  Point p, q;
  FailureKind kind;
};

/// Feasibility report for a pair set over one network.
struct Report {
  std::size_t checked = 0;
  std::vector<PairFailure> failures;

  bool feasible() const { return failures.empty(); }
};

/// Check that n M-connects every unordered terminal pair, or exactly the
/// supplied pairs.
inline Report verify_mmn(
    const Network& n, std::span<const Point> terminals,
    const std::vector<std::pair<Point, Point>>* pairs = nullptr) {
  std::vector<std::pair<Point, Point>> all;
  if (!pairs) {
    for (std::size_t i = 0; i < terminals.size(); ++i)
      for (std::size_t j = i + 1; j < terminals.size(); ++j)
        if (terminals[i] != terminals[j])
          all.emplace_back(terminals[i], terminals[j]);
    pairs = &all;
  }

  std::vector<Point> extra(terminals.begin(), terminals.end());
  for (const auto& [p, q] : *pairs) {
    extra.push_back(p);
    extra.push_back(q);
  }
  Arrangement arr(n, extra);

  Report report;
  for (const auto& [p, q] : *pairs) {
    ++report.checked;
    if (arr.find_node(p) == Arrangement::npos ||
        arr.find_node(q) == Arrangement::npos) {
      report.failures.push_back({p, q, FailureKind::endpoint_off_network});
    } else if (!arr.has_mpath(p, q)) {
      report.failures.push_back({p, q, FailureKind::no_monotone_path});
    }
  }
  return report;
}

}  // namespace mmn
