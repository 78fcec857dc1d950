#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sfg/graph.hpp"
#include "sfg/rng.hpp"

namespace sfg {

struct DistanceResult {
  std::int32_t source = -1;
  std::int32_t target = -1;
  bool reachable = false;
  std::int64_t hops = -1;                // valid when reachable
  std::vector<std::int32_t> path;        // populated on request only
};

// Minimal hop count between two vertices, traversing directed edges in both
// directions. Bidirectional BFS unless a path is requested.
DistanceResult chemical_distance(const DirectedGeometricGraph& g, std::int32_t a,
                                 std::int32_t b, bool want_path = false);

// Reusable workspace for many point-to-point hop queries on one graph;
// buffers are epoch-stamped so repeated queries avoid O(N) resets.
class PairDistances {
 public:
  explicit PairDistances(const DirectedGeometricGraph& g);

  // Hop count between a and b, or -1 if unreachable.
  std::int64_t hops(std::int32_t a, std::int32_t b);

 private:
  const DirectedGeometricGraph* g_;
  std::vector<std::int32_t> dist_a_, dist_b_;
  std::vector<std::uint32_t> seen_a_, seen_b_;
  std::uint32_t epoch_ = 0;
  std::vector<std::int32_t> frontier_a_, frontier_b_, next_;
};

// Id of the instance point closest to the query location; ties broken by
// lowest id. Throws on an empty instance.
std::int32_t nearest_point(const SampleInstance& instance, const double* location);
std::int32_t nearest_point(const SampleInstance& instance, const TorusPoint& location);

struct DiameterResult {
  bool connected = false;
  std::int64_t value = -1;  // hop diameter when connected
  bool exact = true;        // false for the sampled lower-bound mode
};

inline constexpr std::size_t kDiameterExactLimit = 20'000;

// Exact hop diameter of the undirected view via all-pairs BFS (with a
// degree-based shortcut when a vertex is adjacent to everything). Refuses
// instances above kDiameterExactLimit vertices.
DiameterResult diameter(const DirectedGeometricGraph& g);

// Lower bound from BFS at `roots` random roots; value is max eccentricity
// seen, exact=false labels it a bound.
DiameterResult diameter_lower_bound(const DirectedGeometricGraph& g, int roots, Rng& rng);

// Chemical distance between the points closest to -n e1 / 4 and +n e1 / 4.
DistanceResult crossing_distance(const SampleInstance& instance,
                                 const DirectedGeometricGraph& g);

// Fraction of vertices with neither incoming nor outgoing edges.
double isolated_fraction(const DirectedGeometricGraph& g);

}  // namespace sfg
