#pragma once

#include <cstdint>
#include <vector>

#include "sfg/graph.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"

namespace sfg {

// Result of the hierarchical dyadic cover construction. Level k inspects the
// children of the cubes retained at level k-1 (the root at level 0); a cube
// Q_I is discarded (Z(I) = 0) when some instance point sits in Q_I with
// radius strictly inside (sqrt(d) 2^{-k+1} n, sqrt(d) 2^{-k+2} n), and that
// point joins the backbone.
struct BackboneResult {
  bool terminated = false;  // all cubes discarded before the depth cap
  int depth = 0;            // first level whose retained set is empty
  std::vector<std::int64_t> evaluated_per_level;  // candidate cubes per level
  std::vector<std::int64_t> retained_per_level;   // #A^(1)_k
  std::vector<std::int64_t> discarded_per_level;  // #A^(0)_k
  std::vector<std::int32_t> backbone;             // chosen point ids, one per discarded cube

  std::int64_t diameter_bound() const {
    return 2 + static_cast<std::int64_t>(backbone.size());
  }
};

// Depth cap floor(log2(2 sqrt(d) n / x_m)); the last level whose radius
// window still lies inside the exact power tail.
int backbone_depth_cap(int d, double n, double x_m);

// Runs the cover construction; depth_cap < 0 selects backbone_depth_cap.
// Non-termination is reported through terminated = false, never thrown.
BackboneResult build_backbone(const SampleInstance& instance, int depth_cap = -1);

// Checks the two structural claims of a terminated construction: every
// instance point is G-adjacent to some backbone point (backbone points
// count as their own witnesses), and the backbone is G-connected.
// Throws parameter_error for a non-terminated result.
bool verify_backbone(const SampleInstance& instance, const DirectedGeometricGraph& g,
                     const BackboneResult& result);

// Total progeny of the Galton-Watson process with offspring distribution
// Binomial(2^d, 2^{-d-1}), root included. Stops at `cap` individuals and
// sets *capped when the cap was hit.
long long gw_total_progeny(int d, Rng& rng, long long cap = 1'000'000,
                           bool* capped = nullptr);

// Empirical check of the two coupling ingredients: the per-level retention
// probability bound P(Z = 1) <= 2^{-d-1}, and a one-sided comparison of the
// total retained-cube counts against simulated GW progeny.
struct DominationReport {
  double beta_threshold = 0.0;     // d^{d/2} 2^{2d+1} (d+1) log 2
  bool beta_warning = false;       // beta below the threshold
  std::vector<double> retention_p_hat;
  std::vector<double> retention_stderr;
  std::vector<std::int64_t> retention_evaluated;
  bool retention_bound_ok = true;  // p_hat <= 2^{-d-1} + 3 se at every level
  double domination_p_value = 1.0; // one-sided KS, H1: retained counts exceed GW
  bool domination_ok = true;
  int instances = 0;
  int terminated = 0;
};

DominationReport domination_check(int d, double n, double lambda, const RadiusLaw& law,
                                  int instances, std::uint64_t seed, int depth_cap = -1);

// Ordered point ids of a toroidal descending chain: strictly decreasing
// radii, each point inside its predecessor's ball.
struct DescendingChain {
  std::vector<std::int32_t> ids;

  std::size_t length() const { return ids.size(); }
};

bool is_descending_chain(const SampleInstance& instance, const DescendingChain& chain);

// Longest chain via dynamic programming over points in decreasing mark
// order, grid-accelerated candidate gathering.
DescendingChain longest_descending_chain(const SampleInstance& instance);

// Hop inflation of thinning: max G' chemical distance over sampled
// G-adjacent pairs, with the instance's longest descending chain as the
// upper-bound witness.
struct HopInflationReport {
  std::int64_t sampled_pairs = 0;
  std::int64_t max_thinned_distance = 0;
  double ratio_to_log_n = 0.0;
  std::int64_t chain_length = 0;
  bool bound_ok = true;  // max distance <= chain length on this instance
};

HopInflationReport hop_inflation_experiment(const SampleInstance& instance,
                                            const DirectedGeometricGraph& full,
                                            const DirectedGeometricGraph& thinned,
                                            std::size_t sample_size, Rng& rng);

}  // namespace sfg
