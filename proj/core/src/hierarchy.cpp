#include "sfg/hierarchy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "sfg/errors.hpp"
#include "sfg/paths.hpp"
#include "sfg/spatial_grid.hpp"
#include "sfg/stats_util.hpp"
#include "sfg/torus.hpp"

namespace sfg {

namespace {

// Open radius window of level k.
void level_window(int d, double n, int k, double* lo, double* hi) {
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  *lo = sqrt_d * std::ldexp(n, -k + 1);
  *hi = sqrt_d * std::ldexp(n, -k + 2);
}

// Level whose window contains r, or -1. Windows are disjoint open intervals,
// so at most one level matches; boundary radii match none.
int level_of_radius(int d, double n, double r, int cap) {
  if (!(r > 0.0)) return -1;
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  const int guess = static_cast<int>(std::floor(std::log2(2.0 * sqrt_d * n / r)));
  for (int k = guess - 1; k <= guess + 1; ++k) {
    if (k < 0 || k > cap) continue;
    double lo, hi;
    level_window(d, n, k, &lo, &hi);
    if (r > lo && r < hi) return k;
  }
  return -1;
}

std::string encode_path(const DyadicCubeIndex& index) {
  std::string key;
  key.reserve(index.digits.size());
  for (std::uint32_t digit : index.digits) key.push_back(static_cast<char>(digit));
  return key;
}

constexpr std::size_t kMaxCandidateCubes = std::size_t{1} << 22;

}  // namespace

int backbone_depth_cap(int d, double n, double x_m) {
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  return static_cast<int>(std::floor(std::log(2.0 * sqrt_d * n / x_m) / std::log(2.0)));
}

BackboneResult build_backbone(const SampleInstance& instance, int depth_cap) {
  BackboneResult result;
  const int d = instance.d;
  const double n = instance.n;
  const int cap = depth_cap >= 0 ? depth_cap
                                 : std::max(0, backbone_depth_cap(d, n, instance.law.x_m()));
  if (instance.size() == 0) {
    result.evaluated_per_level = {1};
    result.retained_per_level = {1};
    result.discarded_per_level = {0};
    return result;  // nothing can ever discard a cube
  }

  // Points bucketed by the unique level whose radius window admits them.
  std::vector<std::vector<std::int32_t>> level_points(static_cast<std::size_t>(cap) + 1);
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const int k = level_of_radius(d, n, instance.radius(i), cap);
    if (k >= 0) level_points[static_cast<std::size_t>(k)].push_back(static_cast<std::int32_t>(i));
  }

  std::vector<std::string> candidates{std::string()};  // root path
  for (int k = 0;; ++k) {
    result.evaluated_per_level.push_back(static_cast<std::int64_t>(candidates.size()));

    // Occupancy of every candidate cube (any radius): an empty cube can
    // never be discarded at any depth, so the construction cannot finish.
    std::unordered_set<std::string> occupied;
    occupied.reserve(instance.size() * 2);
    for (std::size_t i = 0; i < instance.size(); ++i) {
      occupied.insert(encode_path(dyadic_cube_of_point(instance.location(i), d, n, k)));
    }

    // Lowest-id qualifying point per cube at this level.
    std::unordered_map<std::string, std::int32_t> qualifier;
    for (std::int32_t id : level_points[static_cast<std::size_t>(k)]) {
      const std::string key = encode_path(
          dyadic_cube_of_point(instance.location(static_cast<std::size_t>(id)), d, n, k));
      auto [it, inserted] = qualifier.emplace(key, id);
      if (!inserted && id < it->second) it->second = id;
    }

    std::vector<std::string> next;
    std::int64_t retained = 0, discarded = 0;
    bool dead_cube = false;
    for (const std::string& path : candidates) {
      const auto hit = qualifier.find(path);
      if (hit != qualifier.end()) {
        ++discarded;
        result.backbone.push_back(hit->second);
        continue;
      }
      ++retained;
      if (!occupied.count(path)) dead_cube = true;
      if (k < cap) {
        for (std::uint32_t digit = 0; digit < (1u << d); ++digit) {
          next.push_back(path + static_cast<char>(digit));
        }
      }
    }
    result.retained_per_level.push_back(retained);
    result.discarded_per_level.push_back(discarded);

    if (retained == 0) {
      result.terminated = true;
      result.depth = k;
      return result;
    }
    if (dead_cube || k == cap || next.size() > kMaxCandidateCubes) {
      result.depth = k;
      return result;  // cannot terminate / depth cap reached
    }
    candidates = std::move(next);
  }
}

bool verify_backbone(const SampleInstance& instance, const DirectedGeometricGraph& g,
                     const BackboneResult& result) {
  if (!result.terminated) {
    throw parameter_error("verify_backbone: result did not terminate");
  }
  if (g.vertex_count() != instance.size()) {
    throw parameter_error("verify_backbone: graph does not match instance");
  }
  if (instance.size() == 0) return true;
  if (result.backbone.empty()) return false;

  std::vector<char> in_backbone(instance.size(), 0);
  for (std::int32_t id : result.backbone) {
    if (id < 0 || static_cast<std::size_t>(id) >= instance.size()) return false;
    in_backbone[static_cast<std::size_t>(id)] = 1;
  }

  // (a) every point adjacent to some backbone point.
  for (std::size_t v = 0; v < instance.size(); ++v) {
    if (in_backbone[v]) continue;
    bool adjacent = false;
    for (std::int32_t w : g.out_neighbors(v)) {
      if (in_backbone[static_cast<std::size_t>(w)]) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) {
      for (std::int32_t w : g.in_neighbors(v)) {
        if (in_backbone[static_cast<std::size_t>(w)]) {
          adjacent = true;
          break;
        }
      }
    }
    if (!adjacent) return false;
  }

  // (b) the backbone is connected in G.
  std::vector<char> visited(instance.size(), 0);
  std::vector<std::int32_t> stack{result.backbone.front()};
  visited[static_cast<std::size_t>(result.backbone.front())] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::int32_t v = stack.back();
    stack.pop_back();
    auto relax = [&](std::int32_t w) {
      if (in_backbone[static_cast<std::size_t>(w)] && !visited[static_cast<std::size_t>(w)]) {
        visited[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    };
    for (std::int32_t w : g.out_neighbors(static_cast<std::size_t>(v))) relax(w);
    for (std::int32_t w : g.in_neighbors(static_cast<std::size_t>(v))) relax(w);
  }
  std::size_t backbone_size = 0;
  for (char flag : in_backbone) backbone_size += static_cast<std::size_t>(flag);
  return reached == backbone_size;
}

namespace {

long long gw_generations(int d, int max_generation, Rng& rng) {
  const int trials = 1 << d;
  const double p = std::ldexp(1.0, -(d + 1));
  long long total = 1, alive = 1;
  for (int gen = 0; gen < max_generation && alive > 0; ++gen) {
    long long births = 0;
    for (long long i = 0; i < alive; ++i) {
      for (int t = 0; t < trials; ++t) births += rng.bernoulli(p) ? 1 : 0;
    }
    total += births;
    alive = births;
  }
  return total;
}

}  // namespace

long long gw_total_progeny(int d, Rng& rng, long long cap, bool* capped) {
  if (d < 1 || d > 20) throw parameter_error("gw_total_progeny: d out of range");
  if (cap <= 0) throw parameter_error("gw_total_progeny: cap must be positive");
  const int trials = 1 << d;
  const double p = std::ldexp(1.0, -(d + 1));
  long long total = 1, alive = 1;
  if (capped) *capped = false;
  while (alive > 0) {
    long long births = 0;
    for (long long i = 0; i < alive; ++i) {
      for (int t = 0; t < trials; ++t) births += rng.bernoulli(p) ? 1 : 0;
    }
    total += births;
    alive = births;
    if (total > cap) {
      if (capped) *capped = true;
      return total;
    }
  }
  return total;
}

DominationReport domination_check(int d, double n, double lambda, const RadiusLaw& law,
                                  int instances, std::uint64_t seed, int depth_cap) {
  if (instances < 10) throw parameter_error("domination_check: need at least 10 instances");
  DominationReport report;
  report.beta_threshold = std::pow(static_cast<double>(d), 0.5 * d) *
                          std::ldexp(1.0, 2 * d + 1) * (d + 1) * std::log(2.0);
  report.beta_warning = !(law.beta() > report.beta_threshold);
  report.instances = instances;

  const int cap =
      depth_cap >= 0 ? depth_cap : std::max(0, backbone_depth_cap(d, n, law.x_m()));
  std::vector<std::int64_t> evaluated, retained;
  std::vector<double> retained_totals;
  retained_totals.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) {
    const SampleInstance instance =
        sample_instance(d, n, lambda, law, derive_stream(seed, static_cast<std::uint64_t>(i)));
    const BackboneResult result = build_backbone(instance, cap);
    if (result.terminated) ++report.terminated;
    if (result.evaluated_per_level.size() > evaluated.size()) {
      evaluated.resize(result.evaluated_per_level.size(), 0);
      retained.resize(result.evaluated_per_level.size(), 0);
    }
    std::int64_t total_retained = 0;
    for (std::size_t k = 0; k < result.evaluated_per_level.size(); ++k) {
      evaluated[k] += result.evaluated_per_level[k];
      retained[k] += result.retained_per_level[k];
      total_retained += result.retained_per_level[k];
    }
    retained_totals.push_back(static_cast<double>(total_retained));
  }

  const double bound = std::ldexp(1.0, -(d + 1));
  for (std::size_t k = 0; k < evaluated.size(); ++k) {
    const double m = static_cast<double>(evaluated[k]);
    const double p_hat = m > 0.0 ? static_cast<double>(retained[k]) / m : 0.0;
    const double se = m > 0.0 ? std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / m) : 0.0;
    report.retention_p_hat.push_back(p_hat);
    report.retention_stderr.push_back(se);
    report.retention_evaluated.push_back(evaluated[k]);
    if (p_hat > bound + 3.0 * se) report.retention_bound_ok = false;
  }

  // One-sided comparison of total retained counts against GW progeny
  // truncated at the same depth.
  std::vector<double> gw_totals;
  gw_totals.reserve(static_cast<std::size_t>(instances));
  Rng gw_rng(derive_stream(seed, 0x67770000ULL));
  for (int i = 0; i < instances; ++i) {
    gw_totals.push_back(static_cast<double>(gw_generations(d, cap, gw_rng)));
  }
  std::sort(retained_totals.begin(), retained_totals.end());
  std::sort(gw_totals.begin(), gw_totals.end());
  report.domination_p_value = ks_one_sided_p(retained_totals, gw_totals);
  report.domination_ok = report.domination_p_value >= 1e-3;
  return report;
}

bool is_descending_chain(const SampleInstance& instance, const DescendingChain& chain) {
  for (std::size_t i = 0; i < chain.ids.size(); ++i) {
    const auto id = static_cast<std::size_t>(chain.ids[i]);
    if (id >= instance.size()) return false;
    if (i == 0) continue;
    const auto prev = static_cast<std::size_t>(chain.ids[i - 1]);
    if (!(instance.radius(id) < instance.radius(prev))) return false;
    if (instance.distance(prev, id) > instance.radius(prev)) return false;
  }
  return true;
}

DescendingChain longest_descending_chain(const SampleInstance& instance) {
  DescendingChain chain;
  const std::size_t n = instance.size();
  if (n == 0) return chain;
  const SpatialGrid grid(instance);

  // Ascending radius order; DP value = longest chain starting at the point.
  std::vector<std::int32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return instance.mark_less(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  });

  std::vector<std::int32_t> length(n, 0), successor(n, -1);
  for (std::int32_t id : order) {
    const auto i = static_cast<std::size_t>(id);
    const double r = instance.radius(i);
    std::int32_t best_len = 0, best_succ = -1;
    grid.for_each_candidate(instance.location(i), r, [&](std::int32_t j) {
      const auto jj = static_cast<std::size_t>(j);
      if (jj == i) return;
      if (!(instance.radius(jj) < r)) return;  // strict decrease
      if (instance.distance(i, jj) > r) return;
      const std::int32_t candidate = length[jj];
      if (candidate > best_len || (candidate == best_len && best_succ >= 0 && j < best_succ)) {
        best_len = candidate;
        best_succ = j;
      }
    });
    length[i] = best_len + 1;
    successor[i] = best_succ;
  }

  std::int32_t start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (length[i] > length[static_cast<std::size_t>(start)]) {
      start = static_cast<std::int32_t>(i);
    }
  }
  for (std::int32_t v = start; v >= 0; v = successor[static_cast<std::size_t>(v)]) {
    chain.ids.push_back(v);
  }
  return chain;
}

HopInflationReport hop_inflation_experiment(const SampleInstance& instance,
                                            const DirectedGeometricGraph& full,
                                            const DirectedGeometricGraph& thinned,
                                            std::size_t sample_size, Rng& rng) {
  if (full.variant() != GraphVariant::full || thinned.variant() != GraphVariant::thinned) {
    throw parameter_error("hop_inflation_experiment: pass (full, thinned) graphs");
  }
  if (full.vertex_count() != thinned.vertex_count()) {
    throw parameter_error("hop_inflation_experiment: graphs from different instances");
  }
  HopInflationReport report;
  report.chain_length =
      static_cast<std::int64_t>(longest_descending_chain(instance).length());
  if (full.edge_count() == 0) return report;

  PairDistances oracle(thinned);
  for (std::size_t k = 0; k < sample_size; ++k) {
    const auto [src, dst] = full.edge_at(rng.next_below(full.edge_count()));
    const std::int64_t hops = oracle.hops(src, dst);
    if (hops < 0) {
      throw error("hop_inflation_experiment: thinning disconnected an adjacent pair");
    }
    ++report.sampled_pairs;
    if (hops > report.max_thinned_distance) report.max_thinned_distance = hops;
  }
  report.ratio_to_log_n =
      static_cast<double>(report.max_thinned_distance) / std::log(instance.n);
  report.bound_ok = report.max_thinned_distance <= report.chain_length;
  return report;
}

}  // namespace sfg
