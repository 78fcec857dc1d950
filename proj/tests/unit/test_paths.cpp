#include <doctest.h>

#include <cmath>
#include <vector>

#include "sfg/errors.hpp"
#include "sfg/graph.hpp"
#include "sfg/paths.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"
#include "test_oracles.hpp"

using namespace sfg;

namespace {

SampleInstance make_instance(double n, const std::vector<std::vector<double>>& points,
                             const std::vector<double>& radii) {
  SampleInstance instance;
  instance.d = static_cast<int>(points.front().size());
  instance.n = n;
  instance.law = RadiusLaw::pareto(2.0, 1.0);
  for (const auto& p : points) {
    for (double x : p) instance.coords.push_back(canonical_coordinate(x, n));
  }
  instance.radii = radii;
  return instance;
}

SampleInstance three_point_instance() {
  return make_instance(20.0, {{0.0, 0.0}, {3.0, 0.0}, {3.5, 0.0}}, {5.0, 1.0, 0.5});
}

// hub with r covering everything, satellites too small to reach each other
SampleInstance star_instance(int satellites) {
  std::vector<std::vector<double>> points{{0.0, 0.0}};
  std::vector<double> radii{30.0};
  for (int i = 0; i < satellites; ++i) {
    const double angle = 2.0 * M_PI * i / satellites;
    points.push_back({8.0 * std::cos(angle), 8.0 * std::sin(angle)});
    radii.push_back(0.01);
  }
  return make_instance(20.0, points, radii);
}

}  // namespace

TEST_CASE("chemical distances on the three-point instance") {
  const SampleInstance instance = three_point_instance();
  const DirectedGeometricGraph full = build_full_graph(instance);
  const DirectedGeometricGraph thin = build_thinned_graph(instance);

  CHECK(chemical_distance(full, 1, 1).hops == 0);
  CHECK(chemical_distance(full, 1, 0).hops == 1);  // directed edges go both ways
  const DistanceResult via = chemical_distance(thin, 2, 0, true);
  CHECK(via.reachable);
  CHECK(via.hops == 2);
  CHECK(via.path == std::vector<std::int32_t>{2, 1, 0});
  CHECK_THROWS_AS(chemical_distance(full, 0, 17), parameter_error);
}

TEST_CASE("unreachable pairs are flagged, never guessed") {
  const SampleInstance instance =
      make_instance(40.0, {{-15.0, 0.0}, {-14.0, 0.0}, {15.0, 0.0}}, {2.0, 2.0, 1.0});
  const DirectedGeometricGraph g = build_full_graph(instance);
  const DistanceResult result = chemical_distance(g, 0, 2);
  CHECK_FALSE(result.reachable);
  CHECK(result.hops == -1);
  CHECK(chemical_distance(g, 0, 1).hops == 1);
}

TEST_CASE("bidirectional search agrees with path BFS") {
  Rng rng(71);
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const SampleInstance instance = sample_instance(2, 20.0, 1.0, law, rng.next_u64());
    if (instance.size() < 2) continue;
    const DirectedGeometricGraph g = build_full_graph(instance);
    PairDistances oracle(g);
    for (int q = 0; q < 50; ++q) {
      const auto a = static_cast<std::int32_t>(rng.next_below(instance.size()));
      const auto b = static_cast<std::int32_t>(rng.next_below(instance.size()));
      const DistanceResult with_path = chemical_distance(g, a, b, true);
      const std::int64_t fast = oracle.hops(a, b);
      CHECK(fast == (with_path.reachable ? with_path.hops : -1));
      if (with_path.reachable) {
        // a returned path must be a real path of the stated length
        for (std::size_t i = 1; i < with_path.path.size(); ++i) {
          const auto u = with_path.path[i - 1];
          const auto v = with_path.path[i];
          CHECK((g.has_edge(u, v) || g.has_edge(v, u)));
        }
      }
    }
  }
}

TEST_CASE("chemical distance is a metric on components") {
  Rng rng(72);
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  const SampleInstance instance = sample_instance(2, 20.0, 1.0, law, 4242);
  const DirectedGeometricGraph g = build_full_graph(instance);
  PairDistances oracle(g);
  const auto components = weakly_connected_components(g);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = static_cast<std::int32_t>(rng.next_below(instance.size()));
    const auto b = static_cast<std::int32_t>(rng.next_below(instance.size()));
    const auto c = static_cast<std::int32_t>(rng.next_below(instance.size()));
    if (components[a] != components[b] || components[b] != components[c]) continue;
    const auto ab = oracle.hops(a, b);
    const auto ba = oracle.hops(b, a);
    const auto ac = oracle.hops(a, c);
    const auto cb = oracle.hops(c, b);
    CHECK(ab == ba);
    CHECK(ab <= ac + cb);
    CHECK((ab == 0) == (a == b));
  }
}

TEST_CASE("thinned distances dominate full distances") {
  Rng rng(73);
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  const SampleInstance instance = sample_instance(2, 24.0, 1.0, law, 515);
  const DirectedGeometricGraph full = build_full_graph(instance);
  const DirectedGeometricGraph thin = build_thinned_graph(instance);
  PairDistances full_oracle(full), thin_oracle(thin);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = static_cast<std::int32_t>(rng.next_below(instance.size()));
    const auto b = static_cast<std::int32_t>(rng.next_below(instance.size()));
    const auto in_full = full_oracle.hops(a, b);
    const auto in_thin = thin_oracle.hops(a, b);
    if (in_full < 0) {
      CHECK(in_thin < 0);
    } else {
      CHECK(in_thin >= in_full);
    }
  }
}

TEST_CASE("nearest point") {
  const SampleInstance instance = three_point_instance();
  const double at_x3[2] = {3.5, 0.0};
  CHECK(nearest_point(instance, at_x3) == 2);
  const double between[2] = {3.3, 0.0};
  CHECK(nearest_point(instance, between) == 2);  // 0.2 to x3 vs 0.3 to x2

  const SampleInstance tie = make_instance(20.0, {{-1.0, 0.0}, {1.0, 0.0}}, {1.0, 1.0});
  const double middle[2] = {0.0, 0.0};
  CHECK(nearest_point(tie, middle) == 0);  // equidistant: lowest id

  SampleInstance empty;
  empty.d = 2;
  empty.n = 20.0;
  CHECK_THROWS_AS(nearest_point(empty, middle), parameter_error);
}

TEST_CASE("diameter") {
  SUBCASE("single vertex") {
    const SampleInstance instance = make_instance(20.0, {{0.0, 0.0}}, {1.0});
    const DiameterResult result = diameter(build_full_graph(instance));
    CHECK(result.connected);
    CHECK(result.value == 0);
  }
  SUBCASE("three-point full graph") {
    const DiameterResult result = diameter(build_full_graph(three_point_instance()));
    CHECK(result.connected);
    CHECK(result.value == 1);
  }
  SUBCASE("star graph has diameter 2") {
    const DiameterResult result = diameter(build_full_graph(star_instance(6)));
    CHECK(result.connected);
    CHECK(result.value == 2);
  }
  SUBCASE("disconnected is flagged") {
    const SampleInstance instance =
        make_instance(40.0, {{-15.0, 0.0}, {15.0, 0.0}}, {1.0, 1.0});
    const DiameterResult result = diameter(build_full_graph(instance));
    CHECK_FALSE(result.connected);
  }
  SUBCASE("matches the all-pairs oracle on random instances") {
    Rng rng(74);
    const RadiusLaw law = RadiusLaw::pareto(2.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
      const SampleInstance instance = sample_instance(2, 12.0, 1.0, law, rng.next_u64());
      const DirectedGeometricGraph g = build_full_graph(instance);
      const std::int64_t brute = sfg_test::brute_diameter(g);
      const DiameterResult fast = diameter(g);
      if (brute < 0) {
        CHECK_FALSE(fast.connected);
      } else {
        CHECK(fast.connected);
        CHECK(fast.value == brute);
      }
    }
  }
  SUBCASE("sampled mode lower-bounds the exact value") {
    Rng rng(75);
    const RadiusLaw law = RadiusLaw::pareto(2.0, 2.0);
    const SampleInstance instance = sample_instance(2, 16.0, 1.0, law, 8080);
    const DirectedGeometricGraph g = build_full_graph(instance);
    const DiameterResult exact = diameter(g);
    const DiameterResult bound = diameter_lower_bound(g, 5, rng);
    CHECK_FALSE(bound.exact);
    if (exact.connected) CHECK(bound.value <= exact.value);
  }
}

TEST_CASE("crossing distance") {
  SUBCASE("single giant ball gives a short crossing") {
    const SampleInstance instance = star_instance(8);
    const DirectedGeometricGraph g = build_full_graph(instance);
    const DistanceResult result = crossing_distance(instance, g);
    CHECK(result.reachable);
    CHECK(result.hops <= 2);
  }
  SUBCASE("both endpoints on the same point give zero") {
    const SampleInstance instance = make_instance(20.0, {{0.0, 0.0}}, {1.0});
    const DirectedGeometricGraph g = build_full_graph(instance);
    const DistanceResult result = crossing_distance(instance, g);
    CHECK(result.hops == 0);
  }
}

TEST_CASE("isolated fraction") {
  const SampleInstance lonely =
      make_instance(40.0, {{-15.0, 0.0}, {0.0, 0.0}, {15.0, 0.0}}, {0.1, 0.1, 0.1});
  CHECK(isolated_fraction(build_full_graph(lonely)) == doctest::Approx(1.0));
  CHECK(isolated_fraction(build_full_graph(star_instance(5))) == doctest::Approx(0.0));
}
