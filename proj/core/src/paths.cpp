#include "sfg/paths.hpp"

#include <algorithm>
#include <limits>

#include "sfg/errors.hpp"
#include "sfg/torus.hpp"

namespace sfg {

namespace {

void check_vertex(const DirectedGeometricGraph& g, std::int32_t v, const char* who) {
  if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) {
    throw parameter_error(std::string(who) + ": unknown vertex id");
  }
}

template <typename Visit>
void for_each_undirected_neighbor(const DirectedGeometricGraph& g, std::int32_t v, Visit&& f) {
  for (std::int32_t w : g.out_neighbors(static_cast<std::size_t>(v))) f(w);
  for (std::int32_t w : g.in_neighbors(static_cast<std::size_t>(v))) f(w);
}

// Single-source BFS; fills dist (must be sized, preset to -1). Returns the
// eccentricity within the component of source.
std::int64_t bfs_all(const DirectedGeometricGraph& g, std::int32_t source,
                     std::vector<std::int32_t>& dist, std::vector<std::int32_t>& queue) {
  queue.clear();
  queue.push_back(source);
  dist[static_cast<std::size_t>(source)] = 0;
  std::int64_t ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::int32_t v = queue[head];
    const std::int32_t dv = dist[static_cast<std::size_t>(v)];
    for_each_undirected_neighbor(g, v, [&](std::int32_t w) {
      auto& dw = dist[static_cast<std::size_t>(w)];
      if (dw < 0) {
        dw = dv + 1;
        if (dw > ecc) ecc = dw;
        queue.push_back(w);
      }
    });
  }
  return ecc;
}

}  // namespace

PairDistances::PairDistances(const DirectedGeometricGraph& g)
    : g_(&g),
      dist_a_(g.vertex_count(), -1),
      dist_b_(g.vertex_count(), -1),
      seen_a_(g.vertex_count(), 0),
      seen_b_(g.vertex_count(), 0) {}

std::int64_t PairDistances::hops(std::int32_t a, std::int32_t b) {
  check_vertex(*g_, a, "PairDistances::hops");
  check_vertex(*g_, b, "PairDistances::hops");
  if (a == b) return 0;
  ++epoch_;

  auto settled_a = [&](std::int32_t v) { return seen_a_[static_cast<std::size_t>(v)] == epoch_; };
  auto settled_b = [&](std::int32_t v) { return seen_b_[static_cast<std::size_t>(v)] == epoch_; };
  auto settle = [&](std::vector<std::uint32_t>& seen, std::vector<std::int32_t>& dist,
                    std::int32_t v, std::int32_t d) {
    seen[static_cast<std::size_t>(v)] = epoch_;
    dist[static_cast<std::size_t>(v)] = d;
  };

  frontier_a_ = {a};
  frontier_b_ = {b};
  settle(seen_a_, dist_a_, a, 0);
  settle(seen_b_, dist_b_, b, 0);
  std::int32_t radius_a = 0, radius_b = 0;
  std::int64_t best = -1;

  // Expand the smaller frontier a full level at a time. A doubly-settled
  // vertex w witnesses a path of dist_a(w) + dist_b(w) hops; once
  // radius_a + radius_b >= best no shorter witness can appear.
  while (!frontier_a_.empty() && !frontier_b_.empty()) {
    if (best >= 0 && best <= static_cast<std::int64_t>(radius_a) + radius_b) break;
    const bool expand_a = frontier_a_.size() <= frontier_b_.size();
    auto& frontier = expand_a ? frontier_a_ : frontier_b_;
    auto& my_seen = expand_a ? seen_a_ : seen_b_;
    auto& my_dist = expand_a ? dist_a_ : dist_b_;
    const std::int32_t level = (expand_a ? radius_a : radius_b) + 1;
    next_.clear();
    for (std::int32_t v : frontier) {
      for_each_undirected_neighbor(*g_, v, [&](std::int32_t w) {
        if (my_seen[static_cast<std::size_t>(w)] == epoch_) return;
        settle(my_seen, my_dist, w, level);
        next_.push_back(w);
        const bool other = expand_a ? settled_b(w) : settled_a(w);
        if (other) {
          const std::int64_t candidate =
              static_cast<std::int64_t>(dist_a_[static_cast<std::size_t>(w)]) +
              dist_b_[static_cast<std::size_t>(w)];
          if (best < 0 || candidate < best) best = candidate;
        }
      });
    }
    frontier.swap(next_);
    (expand_a ? radius_a : radius_b) = level;
  }
  return best;
}

DistanceResult chemical_distance(const DirectedGeometricGraph& g, std::int32_t a,
                                 std::int32_t b, bool want_path) {
  check_vertex(g, a, "chemical_distance");
  check_vertex(g, b, "chemical_distance");
  DistanceResult result;
  result.source = a;
  result.target = b;
  if (a == b) {
    result.reachable = true;
    result.hops = 0;
    if (want_path) result.path = {a};
    return result;
  }
  if (!want_path) {
    PairDistances oracle(g);
    const std::int64_t hops = oracle.hops(a, b);
    result.reachable = hops >= 0;
    result.hops = hops;
    return result;
  }
  // Plain BFS with parents for path reconstruction.
  std::vector<std::int32_t> parent(g.vertex_count(), -2);
  std::vector<std::int32_t> queue{a};
  parent[static_cast<std::size_t>(a)] = -1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::int32_t v = queue[head];
    if (v == b) break;
    bool done = false;
    for_each_undirected_neighbor(g, v, [&](std::int32_t w) {
      if (done || parent[static_cast<std::size_t>(w)] != -2) return;
      parent[static_cast<std::size_t>(w)] = v;
      if (w == b) done = true;
      queue.push_back(w);
    });
    if (done) break;
  }
  if (parent[static_cast<std::size_t>(b)] == -2) return result;
  result.reachable = true;
  std::vector<std::int32_t> reversed;
  for (std::int32_t v = b; v != -1; v = parent[static_cast<std::size_t>(v)]) {
    reversed.push_back(v);
  }
  std::reverse(reversed.begin(), reversed.end());
  result.hops = static_cast<std::int64_t>(reversed.size()) - 1;
  result.path = std::move(reversed);
  return result;
}

std::int32_t nearest_point(const SampleInstance& instance, const double* location) {
  if (instance.size() == 0) throw parameter_error("nearest_point: empty instance");
  std::int32_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const double dist =
        toroidal_distance(instance.d, instance.n, location, instance.location(i));
    if (dist < best_dist) {
      best_dist = dist;
      best = static_cast<std::int32_t>(i);
    }
  }
  return best;
}

std::int32_t nearest_point(const SampleInstance& instance, const TorusPoint& location) {
  if (location.dim() != instance.d || location.side() != instance.n) {
    throw parameter_error("nearest_point: query lives on a different torus");
  }
  return nearest_point(instance, location.data());
}

namespace {

// Number of distinct undirected neighbors; counts a vertex with degree
// n-1 as adjacent to everything.
std::size_t undirected_degree(const DirectedGeometricGraph& g, std::size_t v) {
  const auto out = g.out_neighbors(v);
  const auto in = g.in_neighbors(v);
  std::size_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < out.size() || j < in.size()) {
    if (j >= in.size() || (i < out.size() && out[i] < in[j])) {
      ++i;
    } else if (i >= out.size() || in[j] < out[i]) {
      ++j;
    } else {
      ++i;
      ++j;
    }
    ++count;
  }
  return count;
}

}  // namespace

DiameterResult diameter(const DirectedGeometricGraph& g) {
  DiameterResult result;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    result.connected = true;
    result.value = 0;
    return result;
  }
  if (n > kDiameterExactLimit) {
    throw parameter_error("diameter: instance too large for the exact mode");
  }
  // Hub shortcut: with a vertex adjacent to all others the diameter is 1
  // (complete) or 2; saves the all-pairs sweep on dense instances.
  bool hub = false;
  for (std::size_t v = 0; v < n && !hub; ++v) {
    if (undirected_degree(g, v) == n - 1) hub = true;
  }
  if (hub) {
    result.connected = true;
    if (n == 1) {
      result.value = 0;
      return result;
    }
    bool complete = true;
    for (std::size_t v = 0; v < n && complete; ++v) {
      complete = undirected_degree(g, v) == n - 1;
    }
    result.value = complete ? 1 : 2;
    return result;
  }
  std::vector<std::int32_t> dist(n);
  std::vector<std::int32_t> queue;
  queue.reserve(n);
  std::int64_t best = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(dist.begin(), dist.end(), -1);
    const std::int64_t ecc = bfs_all(g, static_cast<std::int32_t>(v), dist, queue);
    if (v == 0 && queue.size() != n) {
      return result;  // disconnected
    }
    if (ecc > best) best = ecc;
  }
  result.connected = true;
  result.value = best;
  return result;
}

DiameterResult diameter_lower_bound(const DirectedGeometricGraph& g, int roots, Rng& rng) {
  DiameterResult result;
  result.exact = false;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    result.connected = true;
    result.value = 0;
    return result;
  }
  std::vector<std::int32_t> dist(n);
  std::vector<std::int32_t> queue;
  queue.reserve(n);
  std::int64_t best = 0;
  bool connected = true;
  for (int k = 0; k < roots; ++k) {
    const auto root = static_cast<std::int32_t>(rng.next_below(n));
    std::fill(dist.begin(), dist.end(), -1);
    const std::int64_t ecc = bfs_all(g, root, dist, queue);
    if (queue.size() != n) connected = false;
    if (ecc > best) best = ecc;
  }
  result.connected = connected;
  result.value = best;
  return result;
}

DistanceResult crossing_distance(const SampleInstance& instance,
                                 const DirectedGeometricGraph& g) {
  if (instance.size() == 0) throw parameter_error("crossing_distance: empty instance");
  std::vector<double> left(static_cast<std::size_t>(instance.d), 0.0);
  std::vector<double> right(static_cast<std::size_t>(instance.d), 0.0);
  left[0] = -instance.n / 4.0;
  right[0] = instance.n / 4.0;
  const std::int32_t a = nearest_point(instance, left.data());
  const std::int32_t b = nearest_point(instance, right.data());
  return chemical_distance(g, a, b);
}

double isolated_fraction(const DirectedGeometricGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return 0.0;
  std::size_t isolated = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (g.out_degree(v) == 0 && g.in_degree(v) == 0) ++isolated;
  }
  return static_cast<double>(isolated) / static_cast<double>(n);
}

}  // namespace sfg
