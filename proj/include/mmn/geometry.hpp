#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mmn/errors.hpp"

namespace mmn {

// All coordinates are exact integers. Every construction in this library
// stays on the grid induced by its input coordinates, so int64 covers the
// full pipeline without rounding.
using Coord = std::int64_t;
using Weight = std::int64_t;

/// A point in d-dimensional space, d >= 2. Ordered lexicographically.
struct Point {
  std::vector<Coord> c;

  Point() = default;
  Point(std::initializer_list<Coord> init) : c(init) {}
  explicit Point(std::vector<Coord> coords) : c(std::move(coords)) {}

  std::size_t dim() const { return c.size(); }
  Coord operator[](std::size_t i) const { return c[i]; }
  Coord& operator[](std::size_t i) { return c[i]; }

  auto operator<=>(const Point&) const = default;
};

inline void require_same_dim(const Point& p, const Point& q) {
  if (p.dim() != q.dim())
    throw DimensionMismatch("points have dimensions " +
                            std::to_string(p.dim()) + " and " +
                            std::to_string(q.dim()));
}

/// L1 distance between two points of equal dimension.
inline Weight manhattan_distance(const Point& p, const Point& q) {
  require_same_dim(p, q);
  Weight d = 0;
  for (std::size_t i = 0; i < p.dim(); ++i)
    d += p[i] >= q[i] ? p[i] - q[i] : q[i] - p[i];
  return d;
}

/// True iff t <= t2 componentwise and t != t2.
inline bool dominates(const Point& t, const Point& t2) {
  require_same_dim(t, t2);
  bool strict = false;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (t[i] > t2[i]) return false;
    if (t[i] < t2[i]) strict = true;
  }
  return strict;
}

/// Orientation class of a point pair: sign of the coordinate difference in
/// every axis except the fixed one, viewed from the endpoint with the
/// smaller fixed-axis coordinate. There are 2^(d-1) classes.
struct DirectionClass {
  // positive[i] is the sign for the i-th non-fixed axis (ascending order).
  std::vector<bool> positive;

  auto operator<=>(const DirectionClass&) const = default;

  static DirectionClass all_positive(std::size_t d) {
    DirectionClass dc;
    dc.positive.assign(d - 1, true);
    return dc;
  }

  /// Enumerate all 2^(d-1) classes for dimension d, all-positive first.
  static std::vector<DirectionClass> enumerate(std::size_t d) {
    std::vector<DirectionClass> all;
    const std::size_t m = d - 1;
    for (std::size_t bits = 0; bits < (std::size_t{1} << m); ++bits) {
      DirectionClass dc;
      dc.positive.resize(m);
      for (std::size_t i = 0; i < m; ++i) dc.positive[i] = !(bits >> i & 1);
      all.push_back(std::move(dc));
    }
    return all;
  }

  std::string name() const {
    // 2D-over-fixed-axis classes get compass names, longer vectors a +/- string.
    if (positive.size() == 2) {
      if (positive[0] && positive[1]) return "NE";
      if (positive[0]) return "SE";
      if (positive[1]) return "NW";
      return "SW";
    }
    std::string s;
    for (bool b : positive) s += b ? '+' : '-';
    return s;
  }
};

/// Classify a pair whose fixed-axis coordinates differ. Ties in the other
/// axes count as '+'.
inline DirectionClass classify_pair(const Point& t, const Point& t2,
                                    std::size_t fixed_axis) {
  require_same_dim(t, t2);
  if (t[fixed_axis] == t2[fixed_axis])
    throw DegenerateInput("pair shares the fixed-axis coordinate");
  const Point& lo = t[fixed_axis] < t2[fixed_axis] ? t : t2;
  const Point& hi = t[fixed_axis] < t2[fixed_axis] ? t2 : t;
  DirectionClass dc;
  for (std::size_t i = 0; i < t.dim(); ++i) {
    if (i == fixed_axis) continue;
    dc.positive.push_back(hi[i] >= lo[i]);
  }
  return dc;
}

/// Negate the coordinates of every axis whose class sign is '-', leaving the
/// fixed axis alone. Applying twice is the identity, and the map is an L1
/// isometry, so pipelines only ever need the all-positive code path.
inline Point reflect(const Point& p, const DirectionClass& dc,
                     std::size_t fixed_axis) {
  Point r = p;
  std::size_t j = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i == fixed_axis) continue;
    if (!dc.positive[j]) r[i] = -r[i];
    ++j;
  }
  return r;
}

/// Closed axis-parallel segment of positive length.
struct Segment {
  Point lo, hi;        // lo[axis] < hi[axis], all other coordinates equal
  std::size_t axis = 0;

  Segment() = default;

  Segment(Point a, Point b, std::size_t ax) : axis(ax) {
    require_same_dim(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (i != ax && a[i] != b[i])
        throw DegenerateInput("segment endpoints differ off-axis");
    }
    if (a[ax] == b[ax]) throw DegenerateInput("zero-length segment");
    if (a[ax] < b[ax]) {
      lo = std::move(a);
      hi = std::move(b);
    } else {
      lo = std::move(b);
      hi = std::move(a);
    }
  }

  /// Construct from two points differing in exactly one axis.
  Segment(Point a, Point b) : Segment(a, b, deduce_axis(a, b)) {}

  Weight length() const { return hi[axis] - lo[axis]; }
  std::size_t dim() const { return lo.dim(); }

  /// True iff p lies on the (closed) segment.
  bool contains(const Point& p) const {
    if (p.dim() != lo.dim()) return false;
    for (std::size_t i = 0; i < p.dim(); ++i) {
      if (i == axis) {
        if (p[i] < lo[i] || p[i] > hi[i]) return false;
      } else if (p[i] != lo[i]) {
        return false;
      }
    }
    return true;
  }

  auto operator<=>(const Segment&) const = default;

 private:
  static std::size_t deduce_axis(const Point& a, const Point& b) {
    require_same_dim(a, b);
    std::size_t ax = a.dim();
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a[i] != b[i]) {
        if (ax != a.dim())
          throw DegenerateInput("segment endpoints differ in several axes");
        ax = i;
      }
    }
    if (ax == a.dim()) throw DegenerateInput("zero-length segment");
    return ax;
  }
};

/// A canonical set of axis-parallel segments: no two segments overlap or
/// touch end-to-end on a common line, so the cached weight equals the
/// 1-dimensional measure of the union.
class Network {
 public:
  Network() = default;

  const std::vector<Segment>& segments() const { return segs_; }
  Weight weight() const { return weight_; }
  bool empty() const { return segs_.empty(); }

  /// True iff p lies on some segment (endpoints included).
  bool contains(const Point& p) const {
    for (const Segment& s : segs_)
      if (s.contains(p)) return true;
    return false;
  }

  friend Network canonicalize(std::vector<Segment> segs);

 private:
  std::vector<Segment> segs_;  // sorted, canonical
  Weight weight_ = 0;
};

/// Merge collinear overlapping/abutting segments; the result's weight is the
/// measure of the union of the inputs.
inline Network canonicalize(std::vector<Segment> segs) {
  // Group by carrier line: axis + all off-axis coordinates.
  using LineKey = std::pair<std::size_t, std::vector<Coord>>;
  std::map<LineKey, std::vector<std::pair<Coord, Coord>>> lines;
  for (const Segment& s : segs) {
    std::vector<Coord> fixed;
    fixed.reserve(s.dim() - 1);
    for (std::size_t i = 0; i < s.dim(); ++i)
      if (i != s.axis) fixed.push_back(s.lo[i]);
    lines[{s.axis, std::move(fixed)}].emplace_back(s.lo[s.axis],
                                                   s.hi[s.axis]);
  }

  Network n;
  for (auto& [key, intervals] : lines) {
    std::sort(intervals.begin(), intervals.end());
    std::size_t i = 0;
    while (i < intervals.size()) {
      Coord lo = intervals[i].first, hi = intervals[i].second;
      std::size_t j = i + 1;
      while (j < intervals.size() && intervals[j].first <= hi) {
        hi = std::max(hi, intervals[j].second);
        ++j;
      }
      Point a, b;
      a.c.reserve(key.second.size() + 1);
      std::size_t k = 0;
      for (std::size_t ax = 0; ax < key.second.size() + 1; ++ax)
        a.c.push_back(ax == key.first ? lo : key.second[k++]);
      b = a;
      b[key.first] = hi;
      n.segs_.emplace_back(std::move(a), std::move(b), key.first);
      n.weight_ += hi - lo;
      i = j;
    }
  }
  std::sort(n.segs_.begin(), n.segs_.end());
  return n;
}

inline Network merge(const Network& a, const Network& b) {
  std::vector<Segment> all = a.segments();
  all.insert(all.end(), b.segments().begin(), b.segments().end());
  return canonicalize(std::move(all));
}

inline Network reflect(const Network& n, const DirectionClass& dc,
                       std::size_t fixed_axis) {
  std::vector<Segment> segs;
  segs.reserve(n.segments().size());
  for (const Segment& s : n.segments())
    segs.emplace_back(reflect(s.lo, dc, fixed_axis),
                      reflect(s.hi, dc, fixed_axis), s.axis);
  return canonicalize(std::move(segs));
}

/// Monotone two-leg path between arbitrary points, bending axis by axis.
/// Always an M-path; the building block of the naive feasible network.
inline std::vector<Segment> l_path(const Point& p, const Point& q) {
  require_same_dim(p, q);
  std::vector<Segment> segs;
  Point cur = p;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (cur[i] == q[i]) continue;
    Point next = cur;
    next[i] = q[i];
    segs.emplace_back(cur, next, i);
    cur = std::move(next);
  }
  return segs;
}

/// Union of one L-path per given pair; feasible for exactly those pairs.
inline Network l_path_union(
    std::span<const std::pair<Point, Point>> pairs) {
  std::vector<Segment> segs;
  for (const auto& [p, q] : pairs) {
    auto path = l_path(p, q);
    segs.insert(segs.end(), path.begin(), path.end());
  }
  return canonicalize(std::move(segs));
}

/// 2D rectangle given by SW and NE corners (possibly degenerate).
struct Rectangle {
  Point sw, ne;

  Rectangle() = default;
  Rectangle(Point a, Point c) : sw(std::move(a)), ne(std::move(c)) {
    require_same_dim(sw, ne);
    if (sw.dim() != 2) throw DimensionMismatch("rectangle wants 2D corners");
    if (sw[0] > ne[0] || sw[1] > ne[1])
      throw DegenerateInput("rectangle corners out of order");
  }

  bool contains(const Point& p) const {
    return p[0] >= sw[0] && p[0] <= ne[0] && p[1] >= sw[1] && p[1] <= ne[1];
  }

  bool intersects(const Rectangle& o) const {
    return sw[0] <= o.ne[0] && o.sw[0] <= ne[0] && sw[1] <= o.ne[1] &&
           o.sw[1] <= ne[1];
  }

  auto operator<=>(const Rectangle&) const = default;
};

}  // namespace mmn
