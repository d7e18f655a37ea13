#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "mmn/geometry.hpp"
#include "mmn/hanan.hpp"

namespace mmn {

/// max(farthest pair distance, longest bounding-box side); never exceeds the
/// weight of any M-network for the terminals.
inline Weight lower_bound(std::span<const Point> terminals) {
  if (terminals.size() < 2) return 0;
  Weight best = 0;
  for (std::size_t i = 0; i < terminals.size(); ++i)
    for (std::size_t j = i + 1; j < terminals.size(); ++j)
      best = std::max(best, manhattan_distance(terminals[i], terminals[j]));
  const std::size_t d = terminals.front().dim();
  for (std::size_t a = 0; a < d; ++a) {
    Coord lo = terminals.front()[a], hi = lo;
    for (const Point& t : terminals) {
      lo = std::min(lo, t[a]);
      hi = std::max(hi, t[a]);
    }
    best = std::max(best, hi - lo);
  }
  return best;
}

namespace detail {

// Branch and bound over inclusion of Hanan-grid edges. A pair is connected
// once a zero-cost monotone path of decided-in edges exists; the admissible
// bound adds, to the decided-in weight, the completion distances of a
// bounding-box-disjoint subset of still-unconnected pairs (disjoint closed
// boxes cannot share grid edges, so their completions are additive).
class ExactSearch {
 public:
  ExactSearch(std::span<const Point> terminals, std::uint64_t node_budget)
      : budget_(node_budget), grid_(build_hanan(terminals)) {
    const std::size_t d = grid_.dim();
    grid_.for_each_edge([&](std::size_t u, std::size_t v, std::size_t axis,
                            Weight len) {
      edges_.push_back({u, v, axis, len});
    });
    vertex_adj_.resize(grid_.vertex_count());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      vertex_adj_[edges_[e].u].push_back(e);
      vertex_adj_[edges_[e].v].push_back(e);
    }

    std::vector<Point> uniq(terminals.begin(), terminals.end());
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t i = 0; i < uniq.size(); ++i) {
      for (std::size_t j = i + 1; j < uniq.size(); ++j) {
        Pair pr;
        pr.s = grid_.find_vertex(uniq[i]);
        pr.t = grid_.find_vertex(uniq[j]);
        pr.lo.c.resize(d);
        pr.hi.c.resize(d);
        for (std::size_t a = 0; a < d; ++a) {
          pr.lo[a] = std::min(uniq[i][a], uniq[j][a]);
          pr.hi[a] = std::max(uniq[i][a], uniq[j][a]);
        }
        pairs_.push_back(std::move(pr));
      }
    }

    state_.assign(edges_.size(), State::undecided);
    pairs_of_edge_.resize(edges_.size());
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      bool useful = false;
      for (std::size_t p = 0; p < pairs_.size(); ++p) {
        if (edge_in_box(e, pairs_[p])) {
          pairs_of_edge_[e].push_back(p);
          useful = true;
        }
      }
      if (!useful) state_[e] = State::out;
    }

    box_conflict_.assign(pairs_.size(),
                         std::vector<char>(pairs_.size(), 0));
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      for (std::size_t q = p + 1; q < pairs_.size(); ++q)
        box_conflict_[p][q] = box_conflict_[q][p] =
            boxes_intersect(pairs_[p], pairs_[q]);

    // Any feasible network gives an upper bound and a fallback result.
    std::vector<std::pair<Point, Point>> all_pairs;
    for (std::size_t i = 0; i < uniq.size(); ++i)
      for (std::size_t j = i + 1; j < uniq.size(); ++j)
        all_pairs.emplace_back(uniq[i], uniq[j]);
    best_net_ = l_path_union(all_pairs);
    best_ = best_net_.weight();
  }

  Network run() {
    if (pairs_.empty()) return Network{};
    cdist_.resize(pairs_.size());
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      cdist_[p] = completion_distance(p, nullptr);
    search(0);
    return best_net_;
  }

  std::uint64_t nodes_explored() const { return nodes_; }

 private:
  enum class State : unsigned char { undecided, in, out };

  struct Edge {
    std::size_t u, v, axis;
    Weight len;
  };

  struct Pair {
    std::size_t s, t;  // grid vertex ids
    Point lo, hi;      // bounding box
  };

  bool edge_in_box(std::size_t e, const Pair& pr) const {
    Point pu = grid_.point_of(edges_[e].u);
    Point pv = grid_.point_of(edges_[e].v);
    for (std::size_t a = 0; a < pu.dim(); ++a) {
      if (pu[a] < pr.lo[a] || pu[a] > pr.hi[a]) return false;
      if (pv[a] < pr.lo[a] || pv[a] > pr.hi[a]) return false;
    }
    return true;
  }

  static bool boxes_intersect(const Pair& a, const Pair& b) {
    for (std::size_t i = 0; i < a.lo.dim(); ++i)
      if (a.hi[i] < b.lo[i] || b.hi[i] < a.lo[i]) return false;
    return true;
  }

  // Cheapest monotone s-t completion: in-edges free, out-edges forbidden,
  // undecided edges at their length. Zero means connected as decided.
  Weight completion_distance(std::size_t pair_id,
                             std::vector<std::size_t>* path_edges) const {
    const Pair& pr = pairs_[pair_id];
    const std::size_t n = grid_.vertex_count();
    constexpr Weight inf = std::numeric_limits<Weight>::max();
    dist_.assign(n, inf);
    if (path_edges) via_.assign(n, npos);
    using Item = std::pair<Weight, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist_[pr.s] = 0;
    pq.push({0, pr.s});
    const Point target = grid_.point_of(pr.t);
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != dist_[u]) continue;
      if (u == pr.t) break;
      const Point pu = grid_.point_of(u);
      for (std::size_t e : vertex_adj_[u]) {
        if (state_[e] == State::out) continue;
        const Edge& ed = edges_[e];
        std::size_t v = ed.u == u ? ed.v : ed.u;
        const Point pv = grid_.point_of(v);
        // Move strictly toward the target, inside the pair box.
        bool ok = true;
        for (std::size_t a = 0; a < pv.dim(); ++a)
          if (pv[a] < pr.lo[a] || pv[a] > pr.hi[a]) ok = false;
        if (!ok) continue;
        if (std::abs(pv[ed.axis] - target[ed.axis]) >=
            std::abs(pu[ed.axis] - target[ed.axis]))
          continue;
        Weight w = state_[e] == State::in ? 0 : ed.len;
        if (du + w < dist_[v]) {
          dist_[v] = du + w;
          if (path_edges) via_[v] = e;
          pq.push({du + w, v});
        }
      }
    }
    if (dist_[pr.t] == inf)
      throw InternalError("terminal pair unreachable inside its own box");
    if (path_edges) {
      path_edges->clear();
      std::size_t v = pr.t;
      const Point start = grid_.point_of(pr.s);
      Point cur = target;
      while (cur != start) {
        std::size_t e = via_[v];
        path_edges->push_back(e);
        v = edges_[e].u == v ? edges_[e].v : edges_[e].u;
        cur = grid_.point_of(v);
      }
    }
    return dist_[pr.t];
  }

  // Max-weight set of pairwise box-disjoint unconnected pairs; exact unless
  // the subsearch cap trips, in which case the best packing found so far is
  // still an admissible bound.
  Weight packing_bound() const {
    std::vector<std::size_t> open;
    for (std::size_t p = 0; p < pairs_.size(); ++p)
      if (cdist_[p] > 0) open.push_back(p);
    std::sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
      if (cdist_[a] != cdist_[b]) return cdist_[a] > cdist_[b];
      return a < b;
    });
    std::vector<Weight> suffix(open.size() + 1, 0);
    for (std::size_t i = open.size(); i-- > 0;)
      suffix[i] = suffix[i + 1] + cdist_[open[i]];

    Weight best = 0;
    int steps = 0;
    std::vector<std::size_t> chosen;
    auto rec = [&](auto&& self, std::size_t i, Weight acc) -> void {
      if (steps++ > 20000) return;
      if (acc > best) best = acc;
      if (i >= open.size() || acc + suffix[i] <= best) return;
      std::size_t cand = open[i];
      bool free = true;
      for (std::size_t c : chosen)
        if (box_conflict_[cand][c]) free = false;
      if (free) {
        chosen.push_back(cand);
        self(self, i + 1, acc + cdist_[cand]);
        chosen.pop_back();
      }
      self(self, i + 1, acc);
    };
    rec(rec, 0, 0);
    return best;
  }

  void search(Weight in_weight) {
    if (++nodes_ > budget_) throw OracleInconclusive(nodes_);

    bool done = true;
    Weight worst = 0;
    std::size_t worst_pair = 0;
    for (std::size_t p = 0; p < pairs_.size(); ++p) {
      if (cdist_[p] > 0) {
        done = false;
        if (cdist_[p] > worst) {
          worst = cdist_[p];
          worst_pair = p;
        }
      }
    }
    if (done) {
      if (in_weight < best_) {
        best_ = in_weight;
        std::vector<Segment> segs;
        for (std::size_t e = 0; e < edges_.size(); ++e)
          if (state_[e] == State::in)
            segs.emplace_back(grid_.point_of(edges_[e].u),
                              grid_.point_of(edges_[e].v), edges_[e].axis);
        best_net_ = canonicalize(std::move(segs));
      }
      return;
    }
    if (in_weight + packing_bound() >= best_) return;

    std::vector<std::size_t> path;
    completion_distance(worst_pair, &path);
    std::size_t branch_edge = npos;
    for (std::size_t e : path) {
      if (state_[e] != State::undecided) continue;
      if (branch_edge == npos || edges_[e].len > edges_[branch_edge].len ||
          (edges_[e].len == edges_[branch_edge].len && e < branch_edge))
        branch_edge = e;
    }
    if (branch_edge == npos)
      throw InternalError("positive completion distance without undecided edge");

    auto flip = [&](State st) {
      std::vector<std::pair<std::size_t, Weight>> saved;
      state_[branch_edge] = st;
      for (std::size_t p : pairs_of_edge_[branch_edge]) {
        saved.emplace_back(p, cdist_[p]);
        if (cdist_[p] > 0 || st == State::out)
          cdist_[p] = completion_distance(p, nullptr);
      }
      return saved;
    };
    auto unflip = [&](const std::vector<std::pair<std::size_t, Weight>>& saved) {
      state_[branch_edge] = State::undecided;
      for (auto& [p, w] : saved) cdist_[p] = w;
    };

    {
      auto saved = flip(State::in);
      search(in_weight + edges_[branch_edge].len);
      unflip(saved);
    }
    {
      auto saved = flip(State::out);
      search(in_weight);
      unflip(saved);
    }
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  GridGraph grid_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> vertex_adj_;
  std::vector<Pair> pairs_;
  std::vector<std::vector<std::size_t>> pairs_of_edge_;
  std::vector<std::vector<char>> box_conflict_;
  std::vector<State> state_;
  std::vector<Weight> cdist_;
  Weight best_ = 0;
  Network best_net_;
  mutable std::vector<Weight> dist_;
  mutable std::vector<std::size_t> via_;
};

}  // namespace detail

/// Minimum-weight M-network for a small terminal set, found by exact search
/// over Hanan-grid edge subsets. Throws OracleInconclusive when the node
/// budget runs out; never returns a silently suboptimal network.
inline Network exact_mmn(std::span<const Point> terminals,
                         std::uint64_t node_budget = 2'000'000) {
  if (terminals.empty()) throw DegenerateInput("no terminals");
  detail::ExactSearch search(terminals, node_budget);
  return search.run();
}

}  // namespace mmn
