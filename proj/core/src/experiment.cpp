#include "sfg/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sfg/campbell.hpp"
#include "sfg/degree_experiments.hpp"
#include "sfg/errors.hpp"
#include "sfg/graph.hpp"
#include "sfg/hierarchy.hpp"
#include "sfg/parallel.hpp"
#include "sfg/paths.hpp"
#include "sfg/sampling.hpp"
#include "sfg/stats_util.hpp"
#include "sfg/text_io.hpp"
#include "sfg/torus.hpp"
#include "sfg/typical_samplers.hpp"
#include "sfg/version.hpp"

namespace sfg {

namespace {

using nlohmann::json;

const std::vector<std::string> kExperiments = {
    "out-tail", "in-tail", "regimes",  "thinning",
    "crossing", "backbone", "chains",  "isolated", "components"};

bool known_experiment(const std::string& name) {
  return std::find(kExperiments.begin(), kExperiments.end(), name) != kExperiments.end();
}

TailMethod parse_method(const std::string& text) {
  if (text == "loglog-ccdf") return TailMethod::loglog_ccdf;
  if (text == "hill") return TailMethod::hill;
  throw config_error("estimator.method must be loglog-ccdf or hill, got " + text);
}

void expect_keys(const json& object, const std::vector<std::string>& allowed,
                 const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw config_error("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw config_error(std::string("config is not valid JSON: ") + err.what());
  }
  if (!root.is_object()) throw config_error("config must be a JSON object");
  expect_keys(root,
              {"experiment", "d", "s", "beta", "lambda", "n", "n_grid", "alpha",
               "replications", "draws", "seed", "threads", "output_dir", "estimator",
               "pairs_per_instance", "depth_cap", "full_replications", "max_points"},
              "config");
  ExperimentConfig config;
  try {
    config.experiment = root.at("experiment").get<std::string>();
    config.d = root.value("d", 2);
    config.s = root.at("s").get<double>();
    config.beta = root.at("beta").get<double>();
    config.lambda = root.value("lambda", 1.0);
    if (root.contains("n") && root.contains("n_grid")) {
      throw config_error("give either n or n_grid, not both");
    }
    if (root.contains("n")) {
      config.n_grid = {root.at("n").get<double>()};
    } else if (root.contains("n_grid")) {
      config.n_grid = root.at("n_grid").get<std::vector<double>>();
    } else {
      config.n_grid.clear();
    }
    if (root.contains("alpha")) {
      const auto& alpha = root.at("alpha");
      if (alpha.is_array()) {
        config.alphas = alpha.get<std::vector<double>>();
      } else {
        config.alphas = {alpha.get<double>()};
      }
    }
    config.replications = root.value("replications", std::int64_t{1});
    config.draws = root.value("draws", std::int64_t{100000});
    config.seed = root.value("seed", std::uint64_t{0});
    config.threads = root.value("threads", 0);
    config.output_dir = root.value("output_dir", std::string("out"));
    if (root.contains("estimator")) {
      const json& est = root.at("estimator");
      if (!est.is_object()) throw config_error("estimator must be an object");
      expect_keys(est, {"method", "window"}, "estimator");
      if (est.contains("method")) config.method = parse_method(est.at("method"));
      if (est.contains("window")) {
        const auto window = est.at("window").get<std::vector<double>>();
        if (window.size() != 2) throw config_error("estimator.window must be [lo, hi]");
        config.window.lo = window[0];
        config.window.hi = window[1];
      }
    }
    config.pairs_per_instance = root.value("pairs_per_instance", std::int64_t{200});
    config.depth_cap = root.value("depth_cap", -1);
    config.full_replications = root.value("full_replications", std::int64_t{0});
    config.max_points = root.value("max_points", std::int64_t{50'000'000});
  } catch (const json::exception& err) {
    throw config_error(std::string("malformed config value: ") + err.what());
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

namespace {

json config_to_json(const ExperimentConfig& config) {
  json root;
  root["experiment"] = config.experiment;
  root["d"] = config.d;
  root["s"] = config.s;
  root["beta"] = config.beta;
  root["lambda"] = config.lambda;
  root["n_grid"] = config.n_grid;
  root["alpha"] = config.alphas;
  root["replications"] = config.replications;
  root["draws"] = config.draws;
  root["seed"] = config.seed;
  root["output_dir"] = config.output_dir;
  root["estimator"] = {{"method", to_string(config.method)},
                       {"window", {config.window.lo, config.window.hi}}};
  root["pairs_per_instance"] = config.pairs_per_instance;
  root["depth_cap"] = config.depth_cap;
  root["full_replications"] = config.full_replications;
  root["max_points"] = config.max_points;
  // threads intentionally excluded: parallelism must not change results
  return root;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex16(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return buf;
}

}  // namespace

std::string canonical_config_text(const ExperimentConfig& config) {
  return config_to_json(config).dump();
}

std::string config_hash(const ExperimentConfig& config) {
  return hex16(fnv1a64(canonical_config_text(config)));
}

std::vector<Violation> validate(const ExperimentConfig& config) {
  std::vector<Violation> violations;
  auto fail = [&](const std::string& field, const std::string& message) {
    violations.push_back({field, message, false});
  };
  auto warn = [&](const std::string& field, const std::string& message) {
    violations.push_back({field, message, true});
  };

  if (!known_experiment(config.experiment)) {
    fail("experiment", "unknown experiment \"" + config.experiment + "\"");
    return violations;
  }
  if (config.d < 2) fail("d", "dimension must be >= 2");
  if (!(config.s > 0.0)) fail("s", "tail index must be positive");
  if (!(config.beta > 0.0)) fail("beta", "tail constant must be positive");
  if (!(config.lambda > 0.0)) fail("lambda", "intensity must be positive");
  if (config.replications < 1) fail("replications", "need at least one replication");
  if (config.alphas.empty()) fail("alpha", "need at least one alpha");
  for (double alpha : config.alphas) {
    if (alpha < 0.0) fail("alpha", "alpha must be >= 0");
  }
  if (!(config.window.lo > 0.0 && config.window.lo < config.window.hi &&
        config.window.hi < 1.0)) {
    fail("estimator.window", "window must satisfy 0 < lo < hi < 1");
  }

  const bool needs_instances = config.experiment != "out-tail" && config.experiment != "in-tail";
  if (needs_instances) {
    if (config.n_grid.empty()) fail("n", "experiment needs n or n_grid");
    for (double n : config.n_grid) {
      if (!(n > 0.0)) fail("n_grid", "torus sides must be positive");
    }
    for (std::size_t i = 1; i < config.n_grid.size(); ++i) {
      if (!(config.n_grid[i] > config.n_grid[i - 1])) {
        fail("n_grid", "n_grid must be strictly increasing");
        break;
      }
    }
    for (double n : config.n_grid) {
      if (config.lambda * std::pow(n, config.d) > static_cast<double>(config.max_points)) {
        fail("n_grid", "expected point count exceeds max_points at n = " + format_double(n));
        break;
      }
    }
  } else {
    if (config.draws < 10000) fail("draws", "tail experiments need >= 10^4 draws");
  }

  if (config.experiment == "in-tail" && !(config.s > config.d)) {
    fail("s", "in-tail requires s > d: the typical in-sum is almost surely infinite "
              "otherwise");
  }
  if (config.experiment == "out-tail" || config.experiment == "in-tail") {
    for (double alpha : config.alphas) {
      const double index = config.experiment == "out-tail"
                               ? config.s / (alpha + config.d)
                               : (alpha > 0.0 ? (config.s - config.d) / alpha : 0.0);
      if (index > 4.0) {
        warn("alpha", "predicted tail index " + format_double(index) +
                          " > 4: too light for the default window");
      }
    }
  }
  if (config.experiment == "thinning" && config.s != static_cast<double>(config.d)) {
    fail("s", "thinning experiment is specified for the critical regime s = d");
  }
  if (config.experiment == "backbone") {
    const double threshold = std::pow(static_cast<double>(config.d), 0.5 * config.d) *
                             std::ldexp(1.0, 2 * config.d + 1) * (config.d + 1) *
                             std::log(2.0);
    if (!(config.beta > threshold)) {
      warn("beta", "beta = " + format_double(config.beta) +
                       " is not above the coupling threshold " + format_double(threshold));
    }
  }
  if ((config.experiment == "crossing" || config.experiment == "isolated") &&
      !(config.s > config.d)) {
    warn("s", "experiment is designed for s > d");
  }
  if (config.experiment == "thinning" && config.n_grid.size() < 2) {
    fail("n_grid", "thinning needs at least two torus sizes for the trend");
  }
  return violations;
}

void emit_plot_data(const std::vector<PlotSeries>& series, const std::string& dir,
                    std::vector<std::string>* files) {
  for (const auto& s : series) {
    if (s.x.size() != s.y.size() || (s.columns == 3 && s.yerr.size() != s.x.size())) {
      throw config_error("emit_plot_data: column lengths differ in series " + s.name);
    }
    const std::string path = dir + "/" + s.name + ".dat";
    std::ofstream out(path);
    if (!out) throw config_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << format_double(s.x[i]) << ' ' << format_double(s.y[i]);
      if (s.columns == 3) out << ' ' << format_double(s.yerr[i]);
      out << "\n";
    }
    if (files) files->push_back(s.name + ".dat");
  }
}

namespace {

struct ResultRow {
  std::string n;      // formatted or empty
  std::string alpha;  // formatted or empty
  std::int64_t replications = 0;
  std::string statistic;
  double value = 0.0;
  std::string se;      // formatted or empty
  std::string oracle;  // formatted or empty
};

struct RunOutput {
  std::vector<ResultRow> rows;
  std::vector<PlotSeries> plots;
  json summary;
  std::vector<std::pair<std::string, std::string>> extra_files;  // name -> content
  bool ok = true;
  std::vector<std::string> failures;
};

std::string plot_tag(double alpha) {
  std::string tag = format_double(alpha);
  for (char& c : tag) {
    if (c == '.') c = 'p';
  }
  return tag;
}

void tail_rows(RunOutput& out, const std::string& kind, double alpha,
               std::int64_t draws, const TailCheck& check) {
  out.rows.push_back({"", format_double(alpha), draws, "tail_index",
                      check.estimate.index_hat, format_double(check.estimate.index_stderr),
                      format_double(check.predicted_index)});
  out.rows.push_back({"", format_double(alpha), draws, "tail_constant", check.constant_hat,
                      "", format_double(check.predicted_constant)});
  PlotSeries ccdf;
  ccdf.name = "ccdf-" + kind + "-alpha" + plot_tag(alpha);
  ccdf.columns = 2;
  ccdf.x = check.curve.value;
  ccdf.y = check.curve.ccdf;
  out.plots.push_back(std::move(ccdf));
  json detail;
  detail["alpha"] = alpha;
  detail["index_hat"] = check.estimate.index_hat;
  detail["index_stderr"] = check.estimate.index_stderr;
  detail["scale_hat"] = check.estimate.scale_hat;
  detail["constant_hat"] = check.constant_hat;
  detail["predicted_index"] = check.predicted_index;
  detail["predicted_constant"] = check.predicted_constant;
  detail["light_tail_warning"] = check.light_tail_warning;
  detail["method"] = to_string(check.estimate.method);
  out.summary["fits"].push_back(detail);
}

RunOutput run_out_tail(const ExperimentConfig& config) {
  RunOutput out;
  for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
    const double alpha = config.alphas[ai];
    const TailCheck check = out_sum_tail_experiment(
        config.d, config.s, config.beta, alpha, static_cast<std::size_t>(config.draws),
        derive_stream(config.seed, ai), config.threads, config.method, config.window);
    tail_rows(out, "out", alpha, config.draws, check);
  }
  return out;
}

RunOutput run_in_tail(const ExperimentConfig& config) {
  RunOutput out;
  for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
    const double alpha = config.alphas[ai];
    if (alpha == 0.0) {
      const PoissonDegreeCheck check = in_degree_poisson_experiment(
          config.d, config.s, config.beta, static_cast<std::size_t>(config.draws),
          derive_stream(config.seed, ai), config.threads);
      out.rows.push_back({"", "0", config.draws, "mean_in_degree", check.empirical_mean,
                          format_double(check.mean_stderr),
                          format_double(check.expected_mean)});
      out.rows.push_back({"", "0", config.draws, "poisson_gof_p", check.gof_p_value, "", ""});
      out.summary["poisson"] = {{"expected_mean", check.expected_mean},
                                {"empirical_mean", check.empirical_mean},
                                {"mean_stderr", check.mean_stderr},
                                {"gof_p_value", check.gof_p_value}};
      continue;
    }
    const TailCheck check = in_sum_tail_experiment(
        config.d, config.s, config.beta, alpha, static_cast<std::size_t>(config.draws),
        derive_stream(config.seed, ai), config.threads, config.method, config.window);
    tail_rows(out, "in", alpha, config.draws, check);
  }
  return out;
}

RunOutput run_regimes(const ExperimentConfig& config) {
  RunOutput out;
  for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
    const double alpha = config.alphas[ai];
    const RegimeReport report =
        regime_experiment(config.d, alpha, config.s, config.beta, config.lambda,
                          config.n_grid, config.replications,
                          derive_stream(config.seed, ai), config.threads);
    PlotSeries mc, oracle;
    mc.name = "regime-mean-vs-n-alpha" + plot_tag(alpha);
    mc.columns = 3;
    oracle.name = "regime-oracle-vs-n-alpha" + plot_tag(alpha);
    oracle.columns = 2;
    json points = json::array();
    for (const auto& point : report.points) {
      const double normalized_oracle = point.oracle * point.normalizer;
      if (config.replications > 0) {
        out.rows.push_back({format_double(point.n), format_double(alpha),
                            config.replications, "normalized_mean",
                            point.mc_mom * point.normalizer,
                            format_double(point.mc_stderr * point.normalizer),
                            format_double(normalized_oracle)});
        mc.x.push_back(point.n);
        mc.y.push_back(point.mc_mom * point.normalizer);
        mc.yerr.push_back(point.mc_stderr * point.normalizer);
      } else {
        out.rows.push_back({format_double(point.n), format_double(alpha), 0,
                            "normalized_oracle", normalized_oracle, "", ""});
      }
      oracle.x.push_back(point.n);
      oracle.y.push_back(normalized_oracle);
      points.push_back({{"n", point.n},
                        {"mc_mean", point.mc_mean},
                        {"mc_mom", point.mc_mom},
                        {"mc_stderr", point.mc_stderr},
                        {"oracle", point.oracle},
                        {"normalizer", point.normalizer}});
    }
    if (config.replications > 0) out.plots.push_back(std::move(mc));
    out.plots.push_back(std::move(oracle));
    out.summary["regimes"].push_back({{"alpha", alpha},
                                      {"regime", to_string(report.regime)},
                                      {"limit_value", report.limit_value},
                                      {"points", points}});
  }
  return out;
}

RunOutput run_thinning(const ExperimentConfig& config) {
  RunOutput out;
  for (std::size_t ai = 0; ai < config.alphas.size(); ++ai) {
    const double alpha = config.alphas[ai];
    const ThinnedReport report = thinned_out_degree_experiment(
        config.d, config.s, config.beta, alpha, config.n_grid, config.replications,
        config.full_replications, derive_stream(config.seed, ai), config.threads);
    PlotSeries thin, full;
    thin.name = "thinned-out-sum-vs-n-alpha" + plot_tag(alpha);
    thin.columns = 3;
    full.name = "full-out-sum-vs-n-alpha" + plot_tag(alpha);
    full.columns = 3;
    for (const auto& point : report.points) {
      out.rows.push_back({format_double(point.n), format_double(alpha),
                          config.replications, "thinned_mean_out_sum", point.thinned_mean,
                          format_double(point.thinned_stderr), ""});
      out.rows.push_back({format_double(point.n), format_double(alpha),
                          config.replications, "full_mean_out_sum", point.full_mean,
                          format_double(point.full_stderr), ""});
      thin.x.push_back(point.n);
      thin.y.push_back(point.thinned_mean);
      thin.yerr.push_back(point.thinned_stderr);
      full.x.push_back(point.n);
      full.y.push_back(point.full_mean);
      full.yerr.push_back(point.full_stderr);
    }
    out.plots.push_back(std::move(thin));
    out.plots.push_back(std::move(full));
    out.summary["thinning"].push_back(
        {{"alpha", alpha},
         {"full_log_slope", report.full_log_slope},
         {"full_log_slope_stderr", report.full_log_slope_stderr},
         {"predicted_log_slope", report.predicted_log_slope},
         {"thinned_ratio", report.thinned_ratio},
         {"thinned_growth_exponent", report.thinned_growth_exponent}});
  }
  return out;
}

RunOutput run_crossing(const ExperimentConfig& config) {
  RunOutput out;
  const RadiusLaw law = RadiusLaw::pareto(config.s, config.beta);
  std::ostringstream distances;
  distances << "seed,n,source,target,hops,reachable\n";
  std::vector<double> log_n, log_mean;
  PlotSeries plot;
  plot.name = "crossing-hops-vs-n";
  plot.columns = 3;
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const double n = config.n_grid[ni];
    const std::uint64_t level_seed = derive_stream(config.seed, ni);
    struct Row {
      std::uint64_t seed;
      DistanceResult result;
    };
    std::vector<Row> rows(static_cast<std::size_t>(config.replications));
    parallel_for_index(config.replications, config.threads, [&](std::int64_t r) {
      const std::uint64_t instance_seed = derive_stream(level_seed, static_cast<std::uint64_t>(r));
      const SampleInstance instance =
          sample_instance(config.d, n, config.lambda, law, instance_seed,
                          static_cast<std::size_t>(config.max_points));
      const DirectedGeometricGraph g = build_full_graph(instance);
      rows[static_cast<std::size_t>(r)] = {instance_seed, crossing_distance(instance, g)};
    });
    OnlineStats stats;
    std::int64_t reachable = 0;
    for (const auto& row : rows) {
      distances << row.seed << ',' << format_double(n) << ',' << row.result.source << ','
                << row.result.target << ',' << row.result.hops << ','
                << (row.result.reachable ? 1 : 0) << "\n";
      if (row.result.reachable) {
        ++reachable;
        stats.add(static_cast<double>(row.result.hops));
      }
    }
    out.rows.push_back({format_double(n), "", config.replications, "mean_crossing_hops",
                        stats.mean, format_double(stats.stderr_mean()), ""});
    out.rows.push_back({format_double(n), "", config.replications, "reachable_fraction",
                        static_cast<double>(reachable) /
                            static_cast<double>(config.replications),
                        "", ""});
    plot.x.push_back(n);
    plot.y.push_back(stats.mean);
    plot.yerr.push_back(stats.stderr_mean());
    if (stats.mean > 0.0) {
      log_n.push_back(std::log(n));
      log_mean.push_back(std::log(stats.mean));
    }
  }
  out.plots.push_back(std::move(plot));
  out.extra_files.emplace_back("distances.csv", distances.str());
  if (log_n.size() >= 2) {
    const LinearFit fit = linear_fit(log_n, log_mean);
    out.summary["crossing"] = {{"growth_exponent", fit.slope},
                               {"growth_exponent_stderr", fit.slope_stderr}};
  }
  return out;
}

RunOutput run_backbone(const ExperimentConfig& config) {
  RunOutput out;
  const RadiusLaw law = RadiusLaw::pareto(config.s, config.beta);
  const double n = config.n_grid.front();
  struct Row {
    std::uint64_t seed = 0;
    BackboneResult backbone;
    bool verified = false;
    std::int64_t bfs_diameter = -1;
    bool connected = false;
    bool bound_ok = false;
  };
  std::vector<Row> rows(static_cast<std::size_t>(config.replications));
  parallel_for_index(config.replications, config.threads, [&](std::int64_t r) {
    Row& row = rows[static_cast<std::size_t>(r)];
    row.seed = derive_stream(config.seed, static_cast<std::uint64_t>(r));
    const SampleInstance instance =
        sample_instance(config.d, n, config.lambda, law, row.seed,
                        static_cast<std::size_t>(config.max_points));
    row.backbone = build_backbone(instance, config.depth_cap);
    const DirectedGeometricGraph g = build_full_graph(instance);
    const auto components = weakly_connected_components(g);
    row.connected = components.empty() ||
                    *std::max_element(components.begin(), components.end()) == 0;
    if (row.backbone.terminated) {
      row.verified = verify_backbone(instance, g, row.backbone);
      if (instance.size() <= kDiameterExactLimit) {
        const DiameterResult diam = diameter(g);
        row.bfs_diameter = diam.connected ? diam.value : -1;
        row.bound_ok = diam.connected && diam.value <= row.backbone.diameter_bound();
      }
    }
  });

  std::ostringstream csv;
  csv << "seed,n,terminated,depth,backbone_size,diameter_bound,bfs_diameter,connected\n";
  std::int64_t terminated = 0, verified = 0, bound_ok = 0;
  std::vector<std::int64_t> evaluated, retained;
  for (const auto& row : rows) {
    csv << row.seed << ',' << format_double(n) << ',' << (row.backbone.terminated ? 1 : 0)
        << ',' << row.backbone.depth << ',' << row.backbone.backbone.size() << ','
        << row.backbone.diameter_bound() << ',' << row.bfs_diameter << ','
        << (row.connected ? 1 : 0) << "\n";
    if (row.backbone.terminated) ++terminated;
    if (row.verified) ++verified;
    if (row.bound_ok) ++bound_ok;
    if (row.backbone.evaluated_per_level.size() > evaluated.size()) {
      evaluated.resize(row.backbone.evaluated_per_level.size(), 0);
      retained.resize(row.backbone.evaluated_per_level.size(), 0);
    }
    for (std::size_t k = 0; k < row.backbone.evaluated_per_level.size(); ++k) {
      evaluated[k] += row.backbone.evaluated_per_level[k];
      retained[k] += row.backbone.retained_per_level[k];
    }
  }
  out.extra_files.emplace_back("backbone.csv", csv.str());
  const auto reps = static_cast<double>(config.replications);
  out.rows.push_back({format_double(n), "", config.replications, "terminated_fraction",
                      static_cast<double>(terminated) / reps, "", ""});
  out.rows.push_back({format_double(n), "", config.replications, "verified_fraction",
                      terminated > 0 ? static_cast<double>(verified) /
                                           static_cast<double>(terminated)
                                     : 0.0,
                      "", ""});
  out.rows.push_back({format_double(n), "", config.replications,
                      "diameter_bound_ok_fraction",
                      terminated > 0 ? static_cast<double>(bound_ok) /
                                           static_cast<double>(terminated)
                                     : 0.0,
                      "", ""});
  json retention = json::array();
  const double bound = std::ldexp(1.0, -(config.d + 1));
  bool retention_ok = true;
  for (std::size_t k = 0; k < evaluated.size(); ++k) {
    const double m = static_cast<double>(evaluated[k]);
    const double p_hat = m > 0.0 ? static_cast<double>(retained[k]) / m : 0.0;
    const double se = m > 0.0 ? std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / m) : 0.0;
    if (p_hat > bound + 3.0 * se) retention_ok = false;
    retention.push_back(
        {{"level", k}, {"evaluated", evaluated[k]}, {"p_hat", p_hat}, {"stderr", se}});
  }
  out.summary["backbone"] = {{"retention", retention},
                             {"retention_bound", bound},
                             {"retention_bound_ok", retention_ok}};
  if (terminated > 0 && verified != terminated) {
    out.ok = false;
    out.failures.push_back("verify_backbone failed on a terminated run");
  }
  return out;
}

RunOutput run_chains(const ExperimentConfig& config) {
  RunOutput out;
  const RadiusLaw law = RadiusLaw::pareto(config.s, config.beta);
  std::ostringstream csv;
  csv << "seed,n,chain_length\n";
  PlotSeries plot;
  plot.name = "chain-over-logn-vs-n";
  plot.columns = 2;
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const double n = config.n_grid[ni];
    const std::uint64_t level_seed = derive_stream(config.seed, ni);
    std::vector<std::int64_t> lengths(static_cast<std::size_t>(config.replications));
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(config.replications));
    parallel_for_index(config.replications, config.threads, [&](std::int64_t r) {
      const std::uint64_t instance_seed = derive_stream(level_seed, static_cast<std::uint64_t>(r));
      seeds[static_cast<std::size_t>(r)] = instance_seed;
      const SampleInstance instance =
          sample_instance(config.d, n, config.lambda, law, instance_seed,
                          static_cast<std::size_t>(config.max_points));
      lengths[static_cast<std::size_t>(r)] =
          static_cast<std::int64_t>(longest_descending_chain(instance).length());
    });
    OnlineStats stats;
    std::int64_t max_length = 0;
    for (std::size_t r = 0; r < lengths.size(); ++r) {
      csv << seeds[r] << ',' << format_double(n) << ',' << lengths[r] << "\n";
      stats.add(static_cast<double>(lengths[r]));
      max_length = std::max(max_length, lengths[r]);
    }
    out.rows.push_back({format_double(n), "", config.replications, "mean_chain_length",
                        stats.mean, format_double(stats.stderr_mean()), ""});
    out.rows.push_back({format_double(n), "", config.replications, "max_chain_over_log_n",
                        static_cast<double>(max_length) / std::log(n), "", ""});
    plot.x.push_back(n);
    plot.y.push_back(static_cast<double>(max_length) / std::log(n));
  }
  out.plots.push_back(std::move(plot));
  out.extra_files.emplace_back("chains.csv", csv.str());
  return out;
}

RunOutput run_isolated(const ExperimentConfig& config) {
  RunOutput out;
  const RadiusLaw law = RadiusLaw::pareto(config.s, config.beta);
  PlotSeries plot;
  plot.name = "isolated-fraction-vs-n";
  plot.columns = 3;
  for (std::size_t ni = 0; ni < config.n_grid.size(); ++ni) {
    const double n = config.n_grid[ni];
    const std::uint64_t level_seed = derive_stream(config.seed, ni);
    std::vector<double> fractions(static_cast<std::size_t>(config.replications));
    parallel_for_index(config.replications, config.threads, [&](std::int64_t r) {
      const SampleInstance instance = sample_instance(
          config.d, n, config.lambda, law,
          derive_stream(level_seed, static_cast<std::uint64_t>(r)),
          static_cast<std::size_t>(config.max_points));
      fractions[static_cast<std::size_t>(r)] = isolated_fraction(build_full_graph(instance));
    });
    OnlineStats stats;
    for (double f : fractions) stats.add(f);
    out.rows.push_back({format_double(n), "", config.replications, "isolated_fraction",
                        stats.mean, format_double(stats.stderr_mean()), ""});
    plot.x.push_back(n);
    plot.y.push_back(stats.mean);
    plot.yerr.push_back(stats.stderr_mean());
  }
  out.plots.push_back(std::move(plot));
  return out;
}

RunOutput run_components(const ExperimentConfig& config) {
  RunOutput out;
  const RadiusLaw law = RadiusLaw::pareto(config.s, config.beta);
  const double n = config.n_grid.front();
  std::vector<char> matches(static_cast<std::size_t>(config.replications));
  parallel_for_index(config.replications, config.threads, [&](std::int64_t r) {
    const SampleInstance instance = sample_instance(
        config.d, n, config.lambda, law, derive_stream(config.seed, static_cast<std::uint64_t>(r)),
        static_cast<std::size_t>(config.max_points));
    const auto full = weakly_connected_components(build_full_graph(instance));
    const auto thin = weakly_connected_components(build_thinned_graph(instance));
    matches[static_cast<std::size_t>(r)] = full == thin ? 1 : 0;
  });
  std::int64_t matched = 0;
  for (char m : matches) matched += m;
  out.rows.push_back({format_double(n), "", config.replications, "component_match_fraction",
                      static_cast<double>(matched) / static_cast<double>(config.replications),
                      "", format_double(1.0)});
  if (matched != config.replications) {
    out.ok = false;
    out.failures.push_back("thinning changed the connected components of an instance");
  }
  return out;
}

RunOutput dispatch(const ExperimentConfig& config) {
  if (config.experiment == "out-tail") return run_out_tail(config);
  if (config.experiment == "in-tail") return run_in_tail(config);
  if (config.experiment == "regimes") return run_regimes(config);
  if (config.experiment == "thinning") return run_thinning(config);
  if (config.experiment == "crossing") return run_crossing(config);
  if (config.experiment == "backbone") return run_backbone(config);
  if (config.experiment == "chains") return run_chains(config);
  if (config.experiment == "isolated") return run_isolated(config);
  if (config.experiment == "components") return run_components(config);
  throw config_error("unknown experiment " + config.experiment);
}

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::string fresh_run_dir(const std::string& root, const std::string& stem) {
  namespace fs = std::filesystem;
  fs::create_directories(root);
  std::string dir = root + "/" + stem;
  int suffix = 1;
  while (fs::exists(dir)) {
    ++suffix;
    dir = root + "/" + stem + "-" + std::to_string(suffix);
  }
  fs::create_directories(dir);
  return dir;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw config_error("cannot open " + path + " for writing");
  out << content;
}

}  // namespace

RunManifest run_experiment(const ExperimentConfig& config, const std::string& out_dir_override) {
  const auto violations = validate(config);
  for (const auto& violation : violations) {
    if (!violation.warning) {
      throw config_error(violation.field + ": " + violation.message);
    }
  }

  RunManifest manifest;
  manifest.config_hash = config_hash(config);
  manifest.version = kVersion;
  manifest.started = iso_timestamp();
  manifest.seed_derivation = "replication i uses seed mix64(seed + 2^64*phi*(i+1))";

  const std::string root = out_dir_override.empty() ? config.output_dir : out_dir_override;
  const std::string dir =
      fresh_run_dir(root, config.experiment + "-" + manifest.config_hash);
  manifest.output_dir = dir;

  RunOutput output = dispatch(config);

  // results.csv
  std::ostringstream csv;
  csv << "experiment,d,n,s,beta,alpha,replications,statistic,value,stderr,oracle\n";
  for (const auto& row : output.rows) {
    csv << config.experiment << ',' << config.d << ',' << row.n << ','
        << format_double(config.s) << ',' << format_double(config.beta) << ',' << row.alpha
        << ',' << row.replications << ',' << row.statistic << ','
        << format_double(row.value) << ',' << row.se << ',' << row.oracle << "\n";
  }
  write_text_file(dir + "/results.csv", csv.str());
  manifest.files.push_back("results.csv");

  for (const auto& [name, content] : output.extra_files) {
    write_text_file(dir + "/" + name, content);
    manifest.files.push_back(name);
  }
  emit_plot_data(output.plots, dir, &manifest.files);

  json summary = output.summary;
  summary["experiment"] = config.experiment;
  summary["config_hash"] = manifest.config_hash;
  summary["version"] = manifest.version;
  summary["config"] = json::parse(canonical_config_text(config));
  write_text_file(dir + "/summary.json", summary.dump(2) + "\n");
  manifest.files.push_back("summary.json");

  manifest.ok = output.ok;
  manifest.failures = output.failures;
  if (config.replications <= 1000) {
    for (std::int64_t i = 0; i < config.replications; ++i) {
      manifest.replication_seeds.push_back(
          derive_stream(config.seed, static_cast<std::uint64_t>(i)));
    }
  }
  manifest.finished = iso_timestamp();

  json mjson;
  mjson["config_hash"] = manifest.config_hash;
  mjson["version"] = manifest.version;
  mjson["started"] = manifest.started;
  mjson["finished"] = manifest.finished;
  mjson["seed_derivation"] = manifest.seed_derivation;
  mjson["replication_seeds"] = manifest.replication_seeds;
  mjson["files"] = manifest.files;
  mjson["ok"] = manifest.ok;
  mjson["failures"] = manifest.failures;
  write_text_file(dir + "/manifest.json", mjson.dump(2) + "\n");
  return manifest;
}

}  // namespace sfg
