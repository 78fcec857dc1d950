#include "sfg/graph.hpp"

#include <algorithm>
#include <fstream>

#include "sfg/errors.hpp"
#include "sfg/spatial_grid.hpp"
#include "sfg/text_io.hpp"
#include "sfg/torus.hpp"

namespace sfg {

bool DirectedGeometricGraph::has_edge(std::int32_t src, std::int32_t dst) const {
  const auto nbrs = out_neighbors(static_cast<std::size_t>(src));
  return std::binary_search(nbrs.begin(), nbrs.end(), dst);
}

std::pair<std::int32_t, std::int32_t> DirectedGeometricGraph::edge_at(std::size_t k) const {
  if (k >= edge_count()) throw parameter_error("edge_at: index out of range");
  const auto it = std::upper_bound(out_start_.begin(), out_start_.end(), k);
  const std::size_t src = static_cast<std::size_t>(it - out_start_.begin()) - 1;
  return {static_cast<std::int32_t>(src), out_targets_[k]};
}

DirectedGeometricGraph make_graph(const SampleInstance& instance, GraphVariant variant,
                                  std::vector<std::vector<std::int32_t>> adjacency) {
  DirectedGeometricGraph g;
  g.instance_ = &instance;
  g.variant_ = variant;
  const std::size_t n = adjacency.size();

  g.out_start_.assign(n + 1, 0);
  std::vector<std::size_t> in_degree(n, 0);
  std::size_t edges = 0;
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(adjacency[v].begin(), adjacency[v].end());
    edges += adjacency[v].size();
    for (std::int32_t t : adjacency[v]) ++in_degree[static_cast<std::size_t>(t)];
  }
  g.out_targets_.resize(edges);
  g.in_start_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.out_start_[v + 1] = g.out_start_[v] + adjacency[v].size();
    g.in_start_[v + 1] = g.in_start_[v] + in_degree[v];
  }
  g.in_targets_.resize(edges);
  std::vector<std::size_t> cursor(g.in_start_.begin(), g.in_start_.end() - 1);
  for (std::size_t v = 0; v < n; ++v) {
    std::copy(adjacency[v].begin(), adjacency[v].end(),
              g.out_targets_.begin() + static_cast<std::ptrdiff_t>(g.out_start_[v]));
    for (std::int32_t t : adjacency[v]) {
      g.in_targets_[cursor[static_cast<std::size_t>(t)]++] = static_cast<std::int32_t>(v);
    }
  }
  // in-lists come out sorted because sources are visited in increasing order
  return g;
}

namespace {

std::vector<std::int32_t> ball_members_grid(const SampleInstance& instance,
                                            const SpatialGrid& grid, std::size_t source) {
  std::vector<std::int32_t> members;
  const double r = instance.radius(source);
  const double* center = instance.location(source);
  if (r >= max_toroidal_distance(instance.d, instance.n)) {
    members.reserve(instance.size() - 1);
    for (std::size_t j = 0; j < instance.size(); ++j) {
      if (j != source) members.push_back(static_cast<std::int32_t>(j));
    }
    return members;
  }
  grid.for_each_candidate(center, r, [&](std::int32_t j) {
    if (static_cast<std::size_t>(j) == source) return;
    if (toroidal_distance(instance.d, instance.n, center, instance.location(j)) <= r) {
      members.push_back(j);
    }
  });
  return members;
}

std::vector<std::int32_t> ball_members_exhaustive(const SampleInstance& instance,
                                                  std::size_t source) {
  std::vector<std::int32_t> members;
  const double r = instance.radius(source);
  const double* center = instance.location(source);
  for (std::size_t j = 0; j < instance.size(); ++j) {
    if (j == source) continue;
    if (toroidal_distance(instance.d, instance.n, center, instance.location(j)) <= r) {
      members.push_back(static_cast<std::int32_t>(j));
    }
  }
  return members;
}

}  // namespace

std::vector<std::int32_t> thinned_targets(int d, double n, double source_radius,
                                          std::int32_t source_id,
                                          std::vector<ThinCandidate> candidates) {
  // Larger mark first; radius ties resolved by lower id = larger.
  auto mark_greater = [](const ThinCandidate& a, const ThinCandidate& b) {
    return a.radius > b.radius || (a.radius == b.radius && a.id < b.id);
  };
  std::sort(candidates.begin(), candidates.end(), mark_greater);

  const ThinCandidate source_mark{nullptr, source_radius, source_id};
  std::vector<std::int32_t> survivors;
  for (std::size_t yi = 0; yi < candidates.size(); ++yi) {
    const ThinCandidate& y = candidates[yi];
    if (!mark_greater(source_mark, y)) continue;  // needs t < r
    bool intercepted = false;
    for (std::size_t zi = 0; zi < yi; ++zi) {
      const ThinCandidate& z = candidates[zi];
      if (!mark_greater(source_mark, z)) continue;  // needs w < r
      if (toroidal_distance(d, n, z.location, y.location) <= z.radius) {
        intercepted = true;
        break;
      }
    }
    if (!intercepted) survivors.push_back(y.id);
  }
  std::sort(survivors.begin(), survivors.end());
  return survivors;
}

namespace {

template <typename BallMembers>
DirectedGeometricGraph build_full(const SampleInstance& instance, BallMembers&& members_of) {
  std::vector<std::vector<std::int32_t>> adjacency(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    adjacency[i] = members_of(i);
  }
  return make_graph(instance, GraphVariant::full, std::move(adjacency));
}

template <typename BallMembers>
DirectedGeometricGraph build_thinned(const SampleInstance& instance, BallMembers&& members_of) {
  std::vector<std::vector<std::int32_t>> adjacency(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    const auto members = members_of(i);
    std::vector<ThinCandidate> candidates;
    candidates.reserve(members.size());
    for (std::int32_t j : members) {
      candidates.push_back(ThinCandidate{instance.location(static_cast<std::size_t>(j)),
                                         instance.radius(static_cast<std::size_t>(j)), j});
    }
    adjacency[i] = thinned_targets(instance.d, instance.n, instance.radius(i),
                                   static_cast<std::int32_t>(i), std::move(candidates));
  }
  return make_graph(instance, GraphVariant::thinned, std::move(adjacency));
}

}  // namespace

DirectedGeometricGraph build_full_graph(const SampleInstance& instance) {
  const SpatialGrid grid(instance);
  return build_full(instance,
                    [&](std::size_t i) { return ball_members_grid(instance, grid, i); });
}

DirectedGeometricGraph build_full_graph_exhaustive(const SampleInstance& instance) {
  return build_full(instance,
                    [&](std::size_t i) { return ball_members_exhaustive(instance, i); });
}

DirectedGeometricGraph build_thinned_graph(const SampleInstance& instance) {
  const SpatialGrid grid(instance);
  return build_thinned(instance,
                       [&](std::size_t i) { return ball_members_grid(instance, grid, i); });
}

DirectedGeometricGraph build_thinned_graph_exhaustive(const SampleInstance& instance) {
  return build_thinned(instance,
                       [&](std::size_t i) { return ball_members_exhaustive(instance, i); });
}

bool edge_sets_equal(const DirectedGeometricGraph& a, const DirectedGeometricGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  for (std::size_t v = 0; v < a.vertex_count(); ++v) {
    const auto na = a.out_neighbors(v);
    const auto nb = b.out_neighbors(v);
    if (!std::equal(na.begin(), na.end(), nb.begin(), nb.end())) return false;
  }
  return true;
}

std::vector<std::int32_t> weakly_connected_components(const DirectedGeometricGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::int32_t> component(n, -1);
  std::vector<std::int32_t> stack;
  std::int32_t next_label = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] >= 0) continue;
    component[root] = next_label;
    stack.push_back(static_cast<std::int32_t>(root));
    while (!stack.empty()) {
      const std::int32_t v = stack.back();
      stack.pop_back();
      auto relax = [&](std::int32_t w) {
        if (component[static_cast<std::size_t>(w)] < 0) {
          component[static_cast<std::size_t>(w)] = next_label;
          stack.push_back(w);
        }
      };
      for (std::int32_t w : g.out_neighbors(static_cast<std::size_t>(v))) relax(w);
      for (std::int32_t w : g.in_neighbors(static_cast<std::size_t>(v))) relax(w);
    }
    ++next_label;
  }
  return component;
}

namespace {

double edge_power_sum(const DirectedGeometricGraph& g, std::int32_t vertex, double alpha,
                      std::span<const std::int32_t> neighbors) {
  const SampleInstance& instance = g.instance();
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= g.vertex_count()) {
    throw parameter_error("edge_power_sum: unknown vertex id");
  }
  if (alpha == 0.0) return static_cast<double>(neighbors.size());
  double sum = 0.0;
  const double* p = instance.location(static_cast<std::size_t>(vertex));
  for (std::int32_t w : neighbors) {
    const double dist =
        toroidal_distance(instance.d, instance.n, p, instance.location(static_cast<std::size_t>(w)));
    sum += std::pow(dist, alpha);
  }
  return sum;
}

}  // namespace

double out_edge_power_sum(const DirectedGeometricGraph& g, std::int32_t vertex, double alpha) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= g.vertex_count()) {
    throw parameter_error("out_edge_power_sum: unknown vertex id");
  }
  return edge_power_sum(g, vertex, alpha, g.out_neighbors(static_cast<std::size_t>(vertex)));
}

double in_edge_power_sum(const DirectedGeometricGraph& g, std::int32_t vertex, double alpha) {
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= g.vertex_count()) {
    throw parameter_error("in_edge_power_sum: unknown vertex id");
  }
  return edge_power_sum(g, vertex, alpha, g.in_neighbors(static_cast<std::size_t>(vertex)));
}

void write_edge_list(std::ostream& out, const DirectedGeometricGraph& g) {
  out << "# variant=" << (g.variant() == GraphVariant::full ? "full" : "thinned") << "\n";
  out << point_set_header(g.instance()) << "\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    for (std::int32_t w : g.out_neighbors(v)) {
      out << v << ' ' << w << "\n";
    }
  }
}

void write_edge_list_file(const std::string& path, const DirectedGeometricGraph& g) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open " + path + " for writing");
  write_edge_list(out, g);
}

}  // namespace sfg
