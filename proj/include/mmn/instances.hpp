#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mmn/geometry.hpp"

namespace mmn {

/// Deterministic bounded draw. Distribution classes differ across standard
/// libraries, so generators avoid them to keep seeds portable.
inline std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

/// n distinct values from [0, range), in random assignment order.
inline std::vector<Coord> distinct_values(std::mt19937_64& rng, std::size_t n,
                                          std::uint64_t range) {
  std::vector<Coord> out;
  if (range < 4 * n + 4) {
    std::vector<Coord> all(range);
    std::iota(all.begin(), all.end(), Coord{0});
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t j = i + draw(rng, range - i);
      std::swap(all[i], all[j]);
      out.push_back(all[i]);
    }
  } else {
    std::set<Coord> used;
    while (out.size() < n) {
      Coord v = static_cast<Coord>(draw(rng, range));
      if (used.insert(v).second) out.push_back(v);
    }
  }
  return out;
}

struct TheoremOneArtifacts {
  std::vector<Point> low_chain;        // first terminal family
  std::vector<Point> high_chain;       // second family, all cross pairs relevant
  std::vector<std::pair<Point, Point>> cross_pairs;
  std::vector<Segment> raw_segments;   // companion network before canonicalization
  Network companion;

  /// The y-aligned segment that is the only way the given cross pair can be
  /// M-connected in the companion network.
  Segment private_y_segment(const Point& low, const Point& high) const {
    Point a{high[0], low[1], low[2]};
    Point b{high[0], high[1], low[2]};
    return Segment(a, b, 1);
  }

  /// Companion network with one cross pair's private segment removed.
  Network companion_without(const Point& low, const Point& high) const {
    Segment cut = private_y_segment(low, high);
    std::vector<Segment> segs;
    for (const Segment& s : raw_segments)
      if (s != cut) segs.push_back(s);
    return canonicalize(std::move(segs));
  }
};

struct GeneratedInstance {
  std::vector<Point> terminals;
  std::string family;
  std::uint64_t seed = 0;
  std::optional<TheoremOneArtifacts> artifacts;
};

/// n random d-dimensional terminals with pairwise-distinct coordinates on
/// every axis, deterministic per seed.
inline GeneratedInstance gen_random(std::size_t n, std::size_t d,
                                    std::uint64_t seed,
                                    std::uint64_t coordinate_range) {
  if (n == 0) throw DegenerateInput("need at least one terminal");
  if (d < 2) throw DegenerateInput("dimension must be at least 2");
  if (coordinate_range < n)
    throw DegenerateInput("coordinate range smaller than terminal count");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Coord>> per_axis(d);
  for (auto& axis : per_axis) axis = distinct_values(rng, n, coordinate_range);
  GeneratedInstance inst;
  inst.family = "random";
  inst.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    for (std::size_t a = 0; a < d; ++a) p.c.push_back(per_axis[a][i]);
    inst.terminals.push_back(std::move(p));
  }
  return inst;
}

/// n 3D terminals on exactly k distinct z-planes, every plane nonempty,
/// x and y in general position.
inline GeneratedInstance gen_kplanes(std::size_t n, std::size_t k,
                                     std::uint64_t seed) {
  if (k < 2) throw DegenerateInput("k-plane instance needs k >= 2");
  if (n < k) throw DegenerateInput("need at least one terminal per plane");
  std::mt19937_64 rng(seed);
  const std::uint64_t range = 8 * n + 8;
  auto xs = distinct_values(rng, n, range);
  auto ys = distinct_values(rng, n, range);
  auto zs = distinct_values(rng, k, range);
  std::sort(zs.begin(), zs.end());
  std::vector<std::size_t> plane_of(n);
  for (std::size_t i = 0; i < k; ++i) plane_of[i] = i;
  for (std::size_t i = k; i < n; ++i) plane_of[i] = draw(rng, k);
  GeneratedInstance inst;
  inst.family = "kplanes";
  inst.seed = seed;
  for (std::size_t i = 0; i < n; ++i)
    inst.terminals.push_back(Point{xs[i], ys[i], zs[plane_of[i]]});
  return inst;
}

/// The two-chain 3D family whose generating sets need all n^2/4 cross pairs,
/// together with the witness network that M-connects everything yet loses
/// exactly one pair per removed cross segment.
inline GeneratedInstance gen_generating_set_instance(std::size_t n) {
  if (n < 4 || n % 2 != 0)
    throw DegenerateInput("family needs an even terminal count >= 4");
  const Coord half = static_cast<Coord>(n / 2);
  TheoremOneArtifacts art;
  for (Coord i = 0; i < half; ++i) {
    art.low_chain.push_back(Point{i, half - i, half - i});
    art.high_chain.push_back(
        Point{half + i, static_cast<Coord>(n) - i, static_cast<Coord>(n) - i});
  }

  // One x-y-z staircase per cross pair.
  for (const Point& t : art.low_chain) {
    for (const Point& t2 : art.high_chain) {
      art.cross_pairs.emplace_back(t, t2);
      Point a{t2[0], t[1], t[2]};
      Point b{t2[0], t2[1], t[2]};
      if (t[0] != t2[0]) art.raw_segments.emplace_back(t, a, 0);
      art.raw_segments.emplace_back(a, b, 1);
      if (t[2] != t2[2]) art.raw_segments.emplace_back(b, t2, 2);
    }
  }
  // Consecutive-terminal connectors within each chain (z, then y, then x).
  auto connect_chain = [&](const std::vector<Point>& chain) {
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const Point& a = chain[i];
      const Point& b = chain[i + 1];
      Point m1{a[0], a[1], b[2]};
      Point m2{a[0], b[1], b[2]};
      art.raw_segments.emplace_back(a, m1, 2);
      art.raw_segments.emplace_back(m1, m2, 1);
      art.raw_segments.emplace_back(m2, b, 0);
    }
  };
  connect_chain(art.low_chain);
  connect_chain(art.high_chain);
  art.companion = canonicalize(art.raw_segments);

  GeneratedInstance inst;
  inst.family = "theorem1";
  inst.terminals = art.low_chain;
  inst.terminals.insert(inst.terminals.end(), art.high_chain.begin(),
                        art.high_chain.end());
  inst.artifacts = std::move(art);
  return inst;
}

/// Map from perturbed coordinates back to the originals, per axis. Axes that
/// were already duplicate-free are left untouched.
struct Perturbation {
  std::vector<bool> axis_scaled;
  std::vector<std::map<Coord, Coord>> back;

  bool identity() const {
    return std::none_of(axis_scaled.begin(), axis_scaled.end(),
                        [](bool b) { return b; });
  }

  Point restore(const Point& p) const {
    Point r = p;
    for (std::size_t a = 0; a < p.dim(); ++a) {
      if (!axis_scaled[a]) continue;
      auto it = back[a].find(p[a]);
      if (it == back[a].end())
        throw InternalError("coordinate not on the perturbed grid");
      r[a] = it->second;
    }
    return r;
  }

  /// Project a network on the perturbed grid back onto the original
  /// coordinates. Segments that collapse to a point vanish.
  Network restore(const Network& n) const {
    std::vector<Segment> segs;
    for (const Segment& s : n.segments()) {
      Point lo = restore(s.lo);
      Point hi = restore(s.hi);
      if (lo[s.axis] == hi[s.axis]) continue;
      segs.emplace_back(std::move(lo), std::move(hi), s.axis);
    }
    return canonicalize(std::move(segs));
  }
};

/// Break per-axis coordinate ties deterministically, keeping the relative
/// order of distinct values. Already-distinct axes come through unchanged,
/// so perturbing twice equals perturbing once.
inline std::pair<std::vector<Point>, Perturbation> perturb_general_position(
    std::span<const Point> terminals) {
  const std::size_t d = terminals.empty() ? 0 : terminals.front().dim();
  const Coord scale = static_cast<Coord>(terminals.size()) + 1;
  std::vector<Point> out(terminals.begin(), terminals.end());
  Perturbation pert;
  pert.axis_scaled.assign(d, false);
  pert.back.resize(d);

  // Tie-break key: full point, then input position for exact duplicates.
  std::vector<std::size_t> order(terminals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (terminals[a] != terminals[b]) return terminals[a] < terminals[b];
    return a < b;
  });

  for (std::size_t a = 0; a < d; ++a) {
    std::map<Coord, std::size_t> seen;
    bool ties = false;
    for (const Point& t : terminals) {
      if (++seen[t[a]] > 1) ties = true;
    }
    if (!ties) continue;
    pert.axis_scaled[a] = true;
    std::map<Coord, Coord> next_rank;
    for (std::size_t idx : order) {
      Coord v = terminals[idx][a];
      Coord rank = next_rank[v]++;
      Coord pv = v * scale + rank;
      out[idx][a] = pv;
      pert.back[a][pv] = v;
    }
  }
  return {std::move(out), std::move(pert)};
}

}  // namespace mmn
