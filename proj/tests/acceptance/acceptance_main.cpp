// Acceptance suite: one numbered check per shipped guarantee, each printing a
// single PASS/FAIL line with the measured quantities. Run everything with no
// arguments or a single check with --criterion N.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sfg/campbell.hpp"
#include "sfg/degree_experiments.hpp"
#include "sfg/experiment.hpp"
#include "sfg/graph.hpp"
#include "sfg/hierarchy.hpp"
#include "sfg/paths.hpp"
#include "sfg/rng.hpp"
#include "sfg/sampling.hpp"
#include "sfg/stats_util.hpp"
#include "sfg/torus.hpp"
#include "sfg/typical_samplers.hpp"
#include "test_oracles.hpp"

using namespace sfg;

namespace {

int g_failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool within_rel(double value, double target, double tolerance) {
  return std::fabs(value - target) <= tolerance * std::fabs(target);
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------
// 1. grid-built G and G' match the exhaustive O(N^2) constructions
//    edge-for-edge on 100 random instances (d=2, n <= 20, s=2, beta=1).
void criterion_1() {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  int matched = 0;
  const int total = 100;
  for (int i = 0; i < total; ++i) {
    const double n = 6.0 + static_cast<double>(i % 15);
    const SampleInstance instance =
        sample_instance(2, n, 1.0, law, derive_stream(101, i));
    const bool full_ok = edge_sets_equal(build_full_graph(instance),
                                         build_full_graph_exhaustive(instance));
    const bool thin_ok = edge_sets_equal(build_thinned_graph(instance),
                                         build_thinned_graph_exhaustive(instance));
    if (full_ok && thin_ok) ++matched;
  }
  report(1, matched == total,
         fmt("oracle equivalence of grid vs exhaustive constructions: %d/%d instances "
             "edge-identical (full and thinned)",
             matched, total));
}

// ---------------------------------------------------------------------------
// 2. thinning preserves connected components exactly on 50 instances, n=32.
void criterion_2() {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  int matched = 0;
  const int total = 50;
  for (int i = 0; i < total; ++i) {
    const SampleInstance instance =
        sample_instance(2, 32.0, 1.0, law, derive_stream(202, i));
    const auto full = weakly_connected_components(build_full_graph(instance));
    const auto thin = weakly_connected_components(build_thinned_graph(instance));
    if (full == thin) ++matched;
  }
  report(2, matched == total,
         fmt("component preservation under thinning: %d/%d instances identical "
             "partitions",
             matched, total));
}

// ---------------------------------------------------------------------------
// 3. typical in-degree is Poisson(kappa_d E R^d) = Poisson(2 pi) at
//    d=2, s=4, x_m=1: mean within 3 s.e. and chi-square GOF at 1e-3.
void criterion_3() {
  const PoissonDegreeCheck check =
      in_degree_poisson_experiment(2, 4.0, 1.0, 100000, 303, 0);
  const bool mean_ok =
      std::fabs(check.empirical_mean - check.expected_mean) <= 3.0 * check.mean_stderr;
  const bool gof_ok = check.gof_p_value >= 1e-3;
  report(3, mean_ok && gof_ok,
         fmt("typical in-degree Poisson(2pi): mean %.4f vs %.4f (3 s.e. = %.4f), "
             "chi-square p = %.4g (needs >= 1e-3)",
             check.empirical_mean, check.expected_mean, 3.0 * check.mean_stderr,
             check.gof_p_value));
}

// ---------------------------------------------------------------------------
// 4. out-sum tail law at d=2 for alpha in {0,1}, s in {3,5}, N=1e5 draws:
//    fitted index within 15% of s/(alpha+d), constant within 30% (loose).
void criterion_4() {
  bool all_ok = true;
  std::string detail = "out-sum tail exponents/constants:";
  int stream = 0;
  for (double s : {3.0, 5.0}) {
    for (double alpha : {0.0, 1.0}) {
      const TailCheck check = out_sum_tail_experiment(2, s, 1.0, alpha, 100000,
                                                      derive_stream(404, stream++), 0);
      const bool index_ok = within_rel(check.estimate.index_hat, check.predicted_index, 0.15);
      const bool const_ok = within_rel(check.constant_hat, check.predicted_constant, 0.30);
      all_ok = all_ok && index_ok && const_ok;
      detail += fmt(" [s=%.0f a=%.0f idx %.3f/%.3f%s const %.2f/%.2f%s]", s, alpha,
                    check.estimate.index_hat, check.predicted_index, index_ok ? "" : "!",
                    check.constant_hat, check.predicted_constant, const_ok ? "" : "!");
    }
  }
  detail += " (index +-15%, constant +-30% loose)";
  report(4, all_ok, detail);
}

// ---------------------------------------------------------------------------
// 5. in-sum tail law at d=2, s=4, alpha=2, N=1e5: index within 15% of
//    (s-d)/alpha = 1, constant within 30% of d kappa_d beta/(s-d) = pi.
void criterion_5() {
  const TailCheck check = in_sum_tail_experiment(2, 4.0, 1.0, 2.0, 100000, 505, 0);
  const bool index_ok = within_rel(check.estimate.index_hat, 1.0, 0.15);
  const bool const_ok = within_rel(check.constant_hat, check.predicted_constant, 0.30);
  report(5, index_ok && const_ok,
         fmt("in-sum tail: index %.4f vs 1.0 (+-15%%), constant %.4f vs "
             "d*kappa_d*beta/(s-d) = %.4f (+-30%% loose)",
             check.estimate.index_hat, check.constant_hat, check.predicted_constant));
}

// ---------------------------------------------------------------------------
// 6. the three expectation regimes of the in-sum mean.
void criterion_6() {
  bool all_ok = true;
  std::string detail;

  // (i) moment regime: d=2, alpha=1, s=5; MC (median of means) within 5% of
  // the limit 5 pi / 3 and of the finite-n oracle at n in {32, 128}.
  {
    const double limit = 5.0 * M_PI / 3.0;
    const RegimeReport rep =
        regime_experiment(2, 1.0, 5.0, 1.0, 1.0, {32.0, 128.0}, 10000, 606, 0);
    for (const auto& point : rep.points) {
      const bool ok = within_rel(point.mc_mom, limit, 0.05) &&
                      within_rel(point.mc_mom, point.oracle, 0.05);
      all_ok = all_ok && ok;
      detail += fmt("(i) n=%.0f mom %.4f vs limit %.4f, oracle %.4f%s ", point.n,
                    point.mc_mom, limit, point.oracle, ok ? "" : "!");
    }
  }

  // (ii) log regime: oracle / log n increases toward 2 pi beta over n=2^5..2^12
  // with final relative deviation < 10%.
  {
    const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
    double previous = -1.0;
    bool increasing = true;
    double final_value = 0.0;
    for (int e = 5; e <= 12; ++e) {
      const double n = std::ldexp(1.0, e);
      final_value = campbell_mean_oracle(2, n, 0.0, law) / std::log(n);
      if (final_value <= previous) increasing = false;
      previous = final_value;
    }
    const bool ok = increasing && within_rel(final_value, 2.0 * M_PI, 0.10);
    all_ok = all_ok && ok;
    detail += fmt("(ii) oracle/log n increasing=%d final %.4f vs 2pi %.4f%s ",
                  increasing ? 1 : 0, final_value, 2.0 * M_PI, ok ? "" : "!");
  }

  // (iii) polynomial regime at d=2, alpha=2, s=2: oracle * n^{s-a-d} within 5%
  // of the unit-cube quadrature target at n = 2^12.
  {
    const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
    const double n = 4096.0;
    const double target = polynomial_regime_target(2, 2.0, 2.0, 1.0);
    const double value = campbell_mean_oracle(2, n, 2.0, law) * std::pow(n, -2.0);
    const bool ok = within_rel(value, target, 0.05);
    all_ok = all_ok && ok;
    detail += fmt("(iii) normalized oracle %.6f vs target %.6f%s", value, target,
                  ok ? "" : "!");
  }
  report(6, all_ok, "in-sum mean regimes: " + detail);
}

// ---------------------------------------------------------------------------
// 7. hierarchical cover at d=2, s=2, beta=150, n=64, 100 seeds: >= 95 runs
//    terminate; every terminated run passes verify_backbone and the exact
//    BFS diameter respects 2 + #B; pooled retention <= 1/8 + 3 s.e. per level.
void criterion_7() {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 150.0);
  const int total = 100;
  int terminated = 0, verified = 0, diameter_ok = 0;
  std::vector<std::int64_t> evaluated, retained;
  for (int i = 0; i < total; ++i) {
    const SampleInstance instance =
        sample_instance(2, 64.0, 1.0, law, derive_stream(707, i));
    const BackboneResult result = build_backbone(instance);
    if (result.evaluated_per_level.size() > evaluated.size()) {
      evaluated.resize(result.evaluated_per_level.size(), 0);
      retained.resize(result.evaluated_per_level.size(), 0);
    }
    for (std::size_t k = 0; k < result.evaluated_per_level.size(); ++k) {
      evaluated[k] += result.evaluated_per_level[k];
      retained[k] += result.retained_per_level[k];
    }
    if (!result.terminated) continue;
    ++terminated;
    const DirectedGeometricGraph g = build_full_graph(instance);
    if (verify_backbone(instance, g, result)) ++verified;
    const DiameterResult diam = diameter(g);
    if (diam.connected && diam.value <= result.diameter_bound()) ++diameter_ok;
  }
  bool retention_ok = true;
  double worst = 0.0;
  for (std::size_t k = 0; k < evaluated.size(); ++k) {
    if (evaluated[k] == 0) continue;
    const double m = static_cast<double>(evaluated[k]);
    const double p_hat = static_cast<double>(retained[k]) / m;
    const double se = std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / m);
    worst = std::max(worst, p_hat);
    if (p_hat > 0.125 + 3.0 * se) retention_ok = false;
  }
  const bool ok = terminated >= 95 && verified == terminated &&
                  diameter_ok == terminated && retention_ok;
  report(7, ok,
         fmt("hierarchical cover: %d/100 terminated (needs >= 95), verify %d/%d, exact "
             "diameter <= 2+#B on %d/%d, per-level retention max %.4f <= 1/8 + 3 s.e.",
             terminated, verified, terminated, diameter_ok, terminated, worst));
}

// ---------------------------------------------------------------------------
// 8. Galton-Watson comparison process: mean total progeny 2, offspring mean 1/2.
void criterion_8() {
  Rng rng(808);
  OnlineStats progeny;
  for (int i = 0; i < 1000000; ++i) {
    progeny.add(static_cast<double>(gw_total_progeny(2, rng)));
  }
  OnlineStats offspring;
  for (int i = 0; i < 1000000; ++i) {
    int births = 0;
    for (int t = 0; t < 4; ++t) births += rng.bernoulli(0.125) ? 1 : 0;
    offspring.add(births);
  }
  const bool progeny_ok = std::fabs(progeny.mean - 2.0) <= 3.0 * progeny.stderr_mean();
  const bool offspring_ok =
      std::fabs(offspring.mean - 0.5) <= 3.0 * offspring.stderr_mean();
  report(8, progeny_ok && offspring_ok,
         fmt("Galton-Watson: total progeny mean %.4f vs 2 (3 s.e. = %.4f), offspring "
             "mean %.4f vs 0.5 (3 s.e. = %.4f)",
             progeny.mean, 3.0 * progeny.stderr_mean(), offspring.mean,
             3.0 * offspring.stderr_mean()));
}

// shared ensemble for criteria 9 and 10
const std::vector<double> kChainGrid{16.0, 32.0, 64.0, 128.0, 256.0, 512.0};
constexpr int kChainSeeds = 50;

// ---------------------------------------------------------------------------
// 9. longest descending chains grow at most like log n, and the DP matches
//    brute force on every small instance.
void criterion_9() {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  std::vector<double> ratio;
  bool brute_ok = true;
  int brute_checked = 0;
  for (std::size_t ni = 0; ni < kChainGrid.size(); ++ni) {
    const double n = kChainGrid[ni];
    std::int64_t max_len = 0;
    for (int seed = 0; seed < kChainSeeds; ++seed) {
      const SampleInstance instance =
          sample_instance(2, n, 1.0, law, derive_stream(909 + ni, seed));
      const DescendingChain chain = longest_descending_chain(instance);
      max_len = std::max<std::int64_t>(max_len, static_cast<std::int64_t>(chain.length()));
      if (instance.size() <= 200) {
        ++brute_checked;
        if (chain.length() != sfg_test::brute_longest_chain(instance)) brute_ok = false;
      }
    }
    ratio.push_back(static_cast<double>(max_len) / std::log(n));
  }
  // dedicated small instances to exercise the brute-force comparison
  for (int seed = 0; seed < 20; ++seed) {
    const double n = 8.0 + 2.0 * (seed % 3);
    const SampleInstance instance =
        sample_instance(2, n, 1.0, law, derive_stream(919, seed));
    if (instance.size() > 200) continue;
    ++brute_checked;
    if (longest_descending_chain(instance).length() !=
        sfg_test::brute_longest_chain(instance)) {
      brute_ok = false;
    }
  }
  const bool trend_ok = ratio.back() <= 1.5 * ratio.front();
  report(9, trend_ok && brute_ok && brute_checked > 0,
         fmt("descending chains: max/log n %.2f at n=16 -> %.2f at n=512 (needs final <= "
             "1.5x initial), DP == brute force on %d small instances: %s",
             ratio.front(), ratio.back(), brute_checked, brute_ok ? "yes" : "NO"));
}

// ---------------------------------------------------------------------------
// 10. thinning inflates hops by at most the descending-chain length (exact
//     per instance), and the max detour / log n shows no upward trend.
void criterion_10() {
  const RadiusLaw law = RadiusLaw::pareto(2.0, 1.0);
  std::vector<double> ratio;
  bool bound_ok = true;
  for (std::size_t ni = 0; ni < kChainGrid.size(); ++ni) {
    const double n = kChainGrid[ni];
    double level_ratio = 0.0;
    for (int seed = 0; seed < kChainSeeds; ++seed) {
      const SampleInstance instance =
          sample_instance(2, n, 1.0, law, derive_stream(909 + ni, seed));
      const DirectedGeometricGraph full = build_full_graph(instance);
      const DirectedGeometricGraph thin = build_thinned_graph(instance);
      Rng rng(derive_stream(1010 + ni, seed));
      const HopInflationReport rep = hop_inflation_experiment(instance, full, thin, 200, rng);
      if (!rep.bound_ok) bound_ok = false;
      level_ratio = std::max(level_ratio, rep.ratio_to_log_n);
    }
    ratio.push_back(level_ratio);
  }
  const bool trend_ok = ratio.back() <= 1.5 * ratio.front();
  report(10, bound_ok && trend_ok,
         fmt("hop inflation: max thinned detour <= chain length on every instance: %s; "
             "detour/log n %.2f at n=16 -> %.2f at n=512 (needs final <= 1.5x initial)",
             bound_ok ? "yes" : "NO", ratio.front(), ratio.back()));
}

// ---------------------------------------------------------------------------
// 11. crossing distances at s=4 (light-tailed regime) grow near-linearly:
//     fitted exponent >= 0.8 over n in {64,...,512}, 50 seeds each.
void criterion_11() {
  const RadiusLaw law = RadiusLaw::pareto(4.0, 50.0);
  std::vector<double> log_n, log_mean;
  std::string detail = "crossing hops:";
  for (std::size_t ni = 0; ni < 4; ++ni) {
    const double n = 64.0 * std::ldexp(1.0, static_cast<int>(ni));
    OnlineStats hops;
    for (int seed = 0; seed < 50; ++seed) {
      const SampleInstance instance =
          sample_instance(2, n, 1.0, law, derive_stream(1111 + ni, seed));
      const DirectedGeometricGraph g = build_full_graph(instance);
      const DistanceResult result = crossing_distance(instance, g);
      if (result.reachable) hops.add(static_cast<double>(result.hops));
    }
    detail += fmt(" n=%.0f mean %.2f;", n, hops.mean);
    log_n.push_back(std::log(n));
    log_mean.push_back(std::log(hops.mean));
  }
  const LinearFit fit = linear_fit(log_n, log_mean);
  const bool ok = fit.slope >= 0.8;
  report(11, ok,
         detail + fmt(" fitted growth exponent %.3f (trend check, needs >= 0.8)", fit.slope));
  if (!ok) {
    std::printf(
        "    note: at s = 2d the largest of the ~n^2 radii scales like beta^{1/s} sqrt(n), "
        "and at beta = 50 those balls still span a sizeable fraction of the n/2 crossing "
        "for n <= 512, depressing the finite-size exponent (beta = 5 measures ~0.9 on the "
        "same sizes). The asymptotic near-linear regime needs larger tori at this beta.\n");
  }
}

// ---------------------------------------------------------------------------
// 12. thinning flattens the typical out-degree (final/initial <= 1.3) while
//     the full out-degree grows like 2 pi beta log n (slope within 20%).
void criterion_12() {
  const ThinnedReport rep = thinned_out_degree_experiment(
      2, 2.0, 1.0, 0.0, {32.0, 64.0, 128.0, 256.0, 512.0, 1024.0}, 20000, 4000000, 1212,
      0);
  const bool ratio_ok = rep.thinned_ratio <= 1.3;
  const bool slope_ok = within_rel(rep.full_log_slope, rep.predicted_log_slope, 0.20);
  report(12, ratio_ok && slope_ok,
         fmt("thinned out-degree flat: final/initial %.3f (needs <= 1.3); full "
             "out-degree log-slope %.3f vs 2 pi beta = %.3f (+-20%%)",
             rep.thinned_ratio, rep.full_log_slope, rep.predicted_log_slope));
}

// ---------------------------------------------------------------------------
// 13. isolated vertices persist for s > d: the fraction stabilizes at a
//     positive value across n.
void criterion_13() {
  const RadiusLaw law = RadiusLaw::pareto(4.0, 0.1);
  std::vector<double> means, ses;
  std::string detail = "isolated fraction:";
  for (double n : {32.0, 64.0, 128.0, 256.0}) {
    OnlineStats stats;
    for (int seed = 0; seed < 100; ++seed) {
      const SampleInstance instance =
          sample_instance(2, n, 1.0, law, derive_stream(1313 + static_cast<int>(n), seed));
      stats.add(isolated_fraction(build_full_graph(instance)));
    }
    means.push_back(stats.mean);
    ses.push_back(stats.stderr_mean());
    detail += fmt(" n=%.0f %.4f;", n, stats.mean);
  }
  const bool positive = means.front() > 3.0 * ses.front() && means.back() > 3.0 * ses.back();
  const bool stable = means.back() >= 0.5 * means.front();
  report(13, positive && stable,
         detail + fmt(" final >= 0.5x initial: %s, both 3 s.e. above zero: %s",
                      stable ? "yes" : "NO", positive ? "yes" : "NO"));
}

// ---------------------------------------------------------------------------
// 14. determinism: identical (config, seed) -> byte-identical result files,
//     and serial == parallel aggregation.
void criterion_14() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "sfg-acceptance-determinism";
  fs::remove_all(root);
  fs::create_directories(root);

  auto read_file = [](const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };
  auto result_files_equal = [&](const RunManifest& a, const RunManifest& b) {
    if (a.files != b.files) return false;
    for (const auto& name : a.files) {
      if (name == "manifest.json") continue;  // carries timestamps
      if (read_file(fs::path(a.output_dir) / name) !=
          read_file(fs::path(b.output_dir) / name)) {
        return false;
      }
    }
    return true;
  };

  const std::vector<std::string> config_texts = {
      R"({"experiment":"chains","d":2,"s":2.0,"beta":1.0,"n_grid":[8,16],"replications":6,"seed":77})",
      R"({"experiment":"out-tail","d":2,"s":3.0,"beta":1.0,"alpha":[0.0,1.0],"draws":20000,"seed":77})",
      R"({"experiment":"regimes","d":2,"s":5.0,"beta":1.0,"alpha":1.0,"n_grid":[8,16],"replications":64,"seed":77})",
  };
  bool rerun_ok = true, parallel_ok = true;
  for (std::size_t i = 0; i < config_texts.size(); ++i) {
    ExperimentConfig config = parse_config_text(config_texts[i]);
    config.threads = 1;
    const RunManifest first =
        run_experiment(config, (root / ("a" + std::to_string(i))).string());
    const RunManifest second =
        run_experiment(config, (root / ("b" + std::to_string(i))).string());
    if (!result_files_equal(first, second)) rerun_ok = false;
    config.threads = 4;
    const RunManifest threaded =
        run_experiment(config, (root / ("c" + std::to_string(i))).string());
    if (!result_files_equal(first, threaded)) parallel_ok = false;
  }
  fs::remove_all(root);
  report(14, rerun_ok && parallel_ok,
         fmt("determinism: rerun produces byte-identical result files: %s; serial == "
             "parallel (threads=4) aggregates: %s",
             rerun_ok ? "yes" : "NO", parallel_ok ? "yes" : "NO"));
}

using CriterionFn = void (*)();
constexpr CriterionFn kCriteria[] = {
    criterion_1,  criterion_2,  criterion_3,  criterion_4,  criterion_5,
    criterion_6,  criterion_7,  criterion_8,  criterion_9,  criterion_10,
    criterion_11, criterion_12, criterion_13, criterion_14};

}  // namespace

int main(int argc, char** argv) {
  int selected = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      selected = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  if (selected < 0 || selected > 14) {
    std::fprintf(stderr, "criterion must be in 1..14\n");
    return 2;
  }
  try {
    if (selected == 0) {
      for (const auto& fn : kCriteria) fn();
    } else {
      kCriteria[selected - 1]();
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "acceptance run aborted: %s\n", err.what());
    return 2;
  }
  return g_failures == 0 ? 0 : 1;
}
