#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sfg/sampling.hpp"

namespace sfg {

enum class GraphVariant { full, thinned };

// Directed geometric graph over the points of a SampleInstance, stored as
// CSR adjacency in both directions. Immutable once built; safe to share
// read-only across threads. The instance must outlive the graph.
class DirectedGeometricGraph {
 public:
  GraphVariant variant() const { return variant_; }
  const SampleInstance& instance() const { return *instance_; }
  std::size_t vertex_count() const { return out_start_.empty() ? 0 : out_start_.size() - 1; }
  std::size_t edge_count() const { return out_targets_.size(); }

  std::span<const std::int32_t> out_neighbors(std::size_t v) const {
    return {out_targets_.data() + out_start_[v], out_start_[v + 1] - out_start_[v]};
  }
  std::span<const std::int32_t> in_neighbors(std::size_t v) const {
    return {in_targets_.data() + in_start_[v], in_start_[v + 1] - in_start_[v]};
  }
  std::size_t out_degree(std::size_t v) const { return out_start_[v + 1] - out_start_[v]; }
  std::size_t in_degree(std::size_t v) const { return in_start_[v + 1] - in_start_[v]; }

  bool has_edge(std::int32_t src, std::int32_t dst) const;

  // Picks the k-th directed edge in CSR order; used for uniform edge draws.
  std::pair<std::int32_t, std::int32_t> edge_at(std::size_t k) const;

  friend DirectedGeometricGraph make_graph(const SampleInstance& instance,
                                           GraphVariant variant,
                                           std::vector<std::vector<std::int32_t>> adjacency);

 private:
  const SampleInstance* instance_ = nullptr;
  GraphVariant variant_ = GraphVariant::full;
  std::vector<std::size_t> out_start_{0};
  std::vector<std::int32_t> out_targets_;
  std::vector<std::size_t> in_start_{0};
  std::vector<std::int32_t> in_targets_;
};

// Grid-accelerated constructions.
DirectedGeometricGraph build_full_graph(const SampleInstance& instance);
DirectedGeometricGraph build_thinned_graph(const SampleInstance& instance);

// One in-ball candidate of a thinning source.
struct ThinCandidate {
  const double* location;
  double radius;
  std::int32_t id;
};

// Surviving targets of the thinning rule for a source with ball B_r(xi):
// candidate y=(eta,t) keeps its edge iff t < r (ties broken by lower id =
// larger) and no candidate z=(zeta,w) with w in (t, r) has eta in B_w(zeta).
// Candidates must all lie in B_r(xi) and may include marks >= the source's,
// which are ignored. Returns surviving ids sorted ascending.
std::vector<std::int32_t> thinned_targets(int d, double n, double source_radius,
                                          std::int32_t source_id,
                                          std::vector<ThinCandidate> candidates);

// Exhaustive O(N^2) oracles; same contracts, no grid.
DirectedGeometricGraph build_full_graph_exhaustive(const SampleInstance& instance);
DirectedGeometricGraph build_thinned_graph_exhaustive(const SampleInstance& instance);

bool edge_sets_equal(const DirectedGeometricGraph& a, const DirectedGeometricGraph& b);

// Component label per vertex in the undirected view (directed edges
// traversable both ways); labels are dense and ordered by first occurrence.
std::vector<std::int32_t> weakly_connected_components(const DirectedGeometricGraph& g);

double out_edge_power_sum(const DirectedGeometricGraph& g, std::int32_t vertex, double alpha);
double in_edge_power_sum(const DirectedGeometricGraph& g, std::int32_t vertex, double alpha);

// Edge-list file: "# variant=<full|thinned>" plus the instance header, then
// one "src_id dst_id" line per directed edge.
void write_edge_list(std::ostream& out, const DirectedGeometricGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGeometricGraph& g);

}  // namespace sfg
