#pragma once

#include <cstdint>

namespace sfg {

// Stateless 64-bit mixing function (the splitmix64 finalizer). Bijective on
// uint64, so distinct inputs never collide.
std::uint64_t mix64(std::uint64_t x);

// Derives an independent stream seed from a base seed and a stream index.
// Order-insensitive: stream k can be constructed without touching streams
// 0..k-1, which keeps parallel and serial replication runs identical.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index);

// Counter-based generator (splitmix64). The state is a plain counter with a
// fixed odd increment and the output is mix64 of the counter, so jumping,
// splitting and replaying are trivial. All sampling in the toolkit goes
// through this engine to keep results byte-reproducible across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();

  // Uniform on [0, 1), 53-bit resolution.
  double next_double();

  // Uniform on (0, 1]; safe to feed into inverse power CDFs.
  double next_open_closed();

  double uniform(double a, double b);

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound);

  bool bernoulli(double p);

  // Standard normal (Box-Muller, one value per call).
  double normal();

  // Poisson(mean). Inversion below mean 10, Hormann's PTRD transformed
  // rejection above; exact for all representable means.
  long long poisson(double mean);

 private:
  std::uint64_t state_;
};

}  // namespace sfg
