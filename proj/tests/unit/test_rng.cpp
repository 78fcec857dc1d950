#include <doctest.h>

#include <cmath>
#include <vector>

#include "sfg/rng.hpp"
#include "sfg/stats_util.hpp"

using namespace sfg;

TEST_CASE("rng determinism and stream independence") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CHECK(derive_stream(42, 0) != derive_stream(42, 1));
  CHECK(derive_stream(42, 0) != derive_stream(43, 0));
  // order-insensitive: stream k does not depend on having drawn streams < k
  CHECK(derive_stream(7, 5) == derive_stream(7, 5));
}

TEST_CASE("uniform doubles stay in range") {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.next_open_closed();
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
  for (int i = 0; i < 10000; ++i) {
    CHECK(rng.next_below(7) < 7);
  }
}

TEST_CASE("poisson sampler matches mean and variance") {
  Rng rng(2);
  CHECK(rng.poisson(0.0) == 0);

  for (double mean : {0.5, 3.5, 20.0, 5000.0}) {
    OnlineStats stats;
    const int draws = mean > 100 ? 20000 : 200000;
    for (int i = 0; i < draws; ++i) stats.add(static_cast<double>(rng.poisson(mean)));
    CHECK(std::fabs(stats.mean - mean) <= 3.0 * std::sqrt(mean / draws) + 1e-9);
    CHECK(stats.variance() / mean == doctest::Approx(1.0).epsilon(0.06));
  }
}

TEST_CASE("poisson goodness of fit across the sampler switch") {
  // inversion below mean 10, PTRD above; both must match the true pmf
  for (double mean : {4.0, 25.0}) {
    Rng rng(99);
    std::vector<long long> samples(100000);
    for (auto& s : samples) s = rng.poisson(mean);
    CHECK(poisson_gof_p(samples, mean) >= 1e-3);
  }
}

TEST_CASE("normal draws have the right first moments") {
  Rng rng(5);
  OnlineStats stats;
  for (int i = 0; i < 200000; ++i) stats.add(rng.normal());
  CHECK(std::fabs(stats.mean) < 3.0 / std::sqrt(200000.0));
  CHECK(stats.variance() == doctest::Approx(1.0).epsilon(0.03));
}
