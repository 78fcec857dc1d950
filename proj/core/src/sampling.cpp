#include "sfg/sampling.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfg/errors.hpp"
#include "sfg/text_io.hpp"

namespace sfg {

std::string format_double(double value) {
  if (value == static_cast<double>(static_cast<long long>(value)) &&
      std::fabs(value) < 1e15) {
    return std::to_string(static_cast<long long>(value));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  // Prefer the shortest representation that still round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[32];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, value);
    double back = 0.0;
    std::sscanf(probe, "%lf", &back);
    if (back == value) return probe;
  }
  return buf;
}

std::string format_int(long long value) { return std::to_string(value); }

MarkedPoint SampleInstance::marked_point(std::size_t i) const {
  std::vector<double> c(location(i), location(i) + d);
  return MarkedPoint{static_cast<std::int32_t>(i), TorusPoint(std::move(c), n), radii[i]};
}

double sample_radius(const RadiusLaw& law, Rng& rng) { return law.sample(rng); }

SampleInstance sample_instance(int d, double n, double lambda, const RadiusLaw& law,
                               std::uint64_t seed, std::size_t max_points) {
  if (d < 2) throw parameter_error("sample_instance: d must be >= 2");
  if (!(n > 0.0)) throw parameter_error("sample_instance: n must be positive");
  if (!(lambda > 0.0)) throw parameter_error("sample_instance: lambda must be positive");
  const double mean = lambda * std::pow(n, d);
  if (!(mean <= static_cast<double>(max_points))) {
    throw capacity_error("sample_instance: expected point count " +
                         format_double(mean) + " exceeds max_points");
  }
  SampleInstance instance;
  instance.d = d;
  instance.n = n;
  instance.lambda = lambda;
  instance.law = law;
  instance.seed = seed;

  Rng rng(seed);
  const long long count = rng.poisson(mean);
  if (count > static_cast<long long>(max_points)) {
    throw capacity_error("sample_instance: realized point count exceeds max_points");
  }
  instance.coords.resize(static_cast<std::size_t>(count) * static_cast<std::size_t>(d));
  instance.radii.resize(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) {
    double* p = instance.coords.data() + static_cast<std::size_t>(i) * d;
    for (int k = 0; k < d; ++k) p[k] = rng.uniform(-0.5 * n, 0.5 * n);
    instance.radii[static_cast<std::size_t>(i)] = law.sample(rng);
  }
  return instance;
}

double out_sum_given_radius(double alpha, int d, double r, Rng& rng) {
  if (alpha < 0.0) throw parameter_error("out_sum_given_radius: alpha must be >= 0");
  if (r < 0.0) throw parameter_error("out_sum_given_radius: negative radius");
  if (r == 0.0) return 0.0;
  const double mean = unit_ball_volume(d) * std::pow(r, d);
  if (!(mean < 1e9)) {
    throw capacity_error("out_sum_given_radius: neighbor count out of budget");
  }
  const long long count = rng.poisson(mean);
  if (alpha == 0.0) return static_cast<double>(count);
  double sum = 0.0;
  const double exponent = alpha / static_cast<double>(d);
  for (long long i = 0; i < count; ++i) {
    // |U| for U uniform in the unit ball has CDF t^d.
    sum += std::pow(rng.next_double(), exponent);
  }
  return std::pow(r, alpha) * sum;
}

double sample_typical_out_sum(double alpha, int d, const RadiusLaw& law, Rng& rng) {
  const double r = law.sample(rng);
  return out_sum_given_radius(alpha, d, r, rng);
}

namespace {

struct RadialPiece {
  double mass;       // relative weight of the piece
  double x_m;        // component scale
  double s;          // component tail index (piece 2 only)
  bool inner;        // true: density u^{d-1} on (0, x_m]
};

// Decomposition of the density proportional to u^{d-1} P(R > u) into
// analytically invertible pieces; per mixture component, u^{d-1} below x_m
// and beta u^{d-1-s} above.
std::vector<RadialPiece> radial_pieces(int d, const RadiusLaw& law) {
  std::vector<RadialPiece> pieces;
  auto add_component = [&](double weight, double s, double x_m) {
    if (!(s > d)) {
      throw infinite_mean_error(
          "sample_typical_in_sum: P(D_in = infinity) = 1 for s <= d");
    }
    const double xd = std::pow(x_m, d);
    pieces.push_back({weight * xd / d, x_m, s, true});
    pieces.push_back({weight * xd / (s - d), x_m, s, false});
  };
  if (law.kind() == RadiusLawKind::pareto) {
    add_component(1.0, law.s(), law.x_m());
  } else {
    add_component(law.mixture_weight(), law.s(), law.x_m());
    add_component(1.0 - law.mixture_weight(), law.s2(), std::pow(law.beta2(), 1.0 / law.s2()));
  }
  return pieces;
}

}  // namespace

double in_sum_poisson_mean(int d, const RadiusLaw& law) {
  if (!((law.kind() == RadiusLawKind::pareto ? law.s()
                                             : std::min(law.s(), law.s2())) > d)) {
    throw infinite_mean_error("in_sum_poisson_mean: diverges for s <= d");
  }
  return unit_ball_volume(d) * law.moment(static_cast<double>(d));
}

double sample_in_distance(int d, const RadiusLaw& law, Rng& rng) {
  const auto pieces = radial_pieces(d, law);
  double total = 0.0;
  for (const auto& piece : pieces) total += piece.mass;
  double pick = rng.next_double() * total;
  const RadialPiece* chosen = &pieces.back();
  for (const auto& piece : pieces) {
    if (pick < piece.mass) {
      chosen = &piece;
      break;
    }
    pick -= piece.mass;
  }
  if (chosen->inner) {
    return chosen->x_m * std::pow(rng.next_double(), 1.0 / d);
  }
  return chosen->x_m *
         std::pow(rng.next_open_closed(), -1.0 / (chosen->s - static_cast<double>(d)));
}

double sample_typical_in_sum(double alpha, int d, const RadiusLaw& law, Rng& rng) {
  if (alpha < 0.0) throw parameter_error("sample_typical_in_sum: alpha must be >= 0");
  const double mean = in_sum_poisson_mean(d, law);
  const long long count = rng.poisson(mean);
  if (alpha == 0.0) return static_cast<double>(count);
  double sum = 0.0;
  for (long long i = 0; i < count; ++i) {
    sum += std::pow(sample_in_distance(d, law, rng), alpha);
  }
  return sum;
}

std::string point_set_header(const SampleInstance& instance) {
  std::ostringstream out;
  out << "# d=" << instance.d << " n=" << format_double(instance.n)
      << " lambda=" << format_double(instance.lambda)
      << " s=" << format_double(instance.law.s())
      << " beta=" << format_double(instance.law.beta())
      << " seed=" << instance.seed;
  return out.str();
}

void write_point_set(std::ostream& out, const SampleInstance& instance) {
  out << point_set_header(instance) << "\n";
  for (std::size_t i = 0; i < instance.size(); ++i) {
    out << i;
    const double* p = instance.location(i);
    for (int k = 0; k < instance.d; ++k) out << ' ' << format_double(p[k]);
    out << ' ' << format_double(instance.radii[i]) << "\n";
  }
}

void write_point_set_file(const std::string& path, const SampleInstance& instance) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open " + path + " for writing");
  write_point_set(out, instance);
}

SampleInstance read_point_set(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.empty() || header[0] != '#') {
    throw config_error("point-set file: missing header line");
  }
  int d = 0;
  double n = 0.0, lambda = 0.0, s = 0.0, beta = 0.0;
  unsigned long long seed = 0;
  if (std::sscanf(header.c_str(), "# d=%d n=%lf lambda=%lf s=%lf beta=%lf seed=%llu",
                  &d, &n, &lambda, &s, &beta, &seed) != 6) {
    throw config_error("point-set file: malformed header: " + header);
  }
  SampleInstance instance;
  instance.d = d;
  instance.n = n;
  instance.lambda = lambda;
  instance.law = RadiusLaw::pareto(s, beta);
  instance.seed = seed;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    long long id = 0;
    if (!(row >> id)) throw config_error("point-set file: bad row: " + line);
    if (id != static_cast<long long>(instance.size())) {
      throw config_error("point-set file: ids must be sequential from 0");
    }
    for (int k = 0; k < d; ++k) {
      double x = 0.0;
      if (!(row >> x)) throw config_error("point-set file: bad row: " + line);
      instance.coords.push_back(canonical_coordinate(x, n));
    }
    double r = 0.0;
    if (!(row >> r)) throw config_error("point-set file: bad row: " + line);
    if (r < 0.0) throw config_error("point-set file: negative radius");
    instance.radii.push_back(r);
  }
  return instance;
}

SampleInstance read_point_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open " + path);
  return read_point_set(in);
}

}  // namespace sfg
