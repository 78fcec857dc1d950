// Command line front end for the scale-free Gilbert graph toolkit.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfg/errors.hpp"
#include "sfg/experiment.hpp"
#include "sfg/graph.hpp"
#include "sfg/hierarchy.hpp"
#include "sfg/paths.hpp"
#include "sfg/sampling.hpp"
#include "sfg/text_io.hpp"
#include "sfg/version.hpp"

namespace {

struct SampleArgs {
  int d = 2;
  double n = 32.0;
  double lambda = 1.0;
  double s = 2.0;
  double beta = 1.0;
  std::string out = "points.txt";
};

struct FileArgs {
  std::string points;
  std::string out;
};

struct DistanceArgs {
  std::string points;
  std::string out;
  std::string variant = "full";
  std::string pairs;  // "a:b,c:d"; empty means the crossing pair
};

struct BackboneArgs {
  std::string points;
  std::string out = "backbone.csv";
  int depth_cap = -1;
};

struct ExperimentArgs {
  std::string config_path;
  std::string out_dir;
  bool seed_set = false;
  std::uint64_t seed = 0;
  int threads = -1;
};

std::vector<std::pair<std::int32_t, std::int32_t>> parse_pairs(const std::string& text) {
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  std::istringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) {
      throw sfg::config_error("--pairs expects a:b[,c:d...], got \"" + token + "\"");
    }
    pairs.emplace_back(std::stol(token.substr(0, colon)), std::stol(token.substr(colon + 1)));
  }
  return pairs;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sfg::config_error("cannot open " + path + " for writing");
  out << content;
}

int run_distances(const DistanceArgs& args) {
  const sfg::SampleInstance instance = sfg::read_point_set_file(args.points);
  const sfg::DirectedGeometricGraph g = args.variant == "thinned"
                                            ? sfg::build_thinned_graph(instance)
                                            : sfg::build_full_graph(instance);
  std::ostringstream csv;
  csv << "seed,n,source,target,hops,reachable\n";
  auto emit = [&](const sfg::DistanceResult& result) {
    csv << instance.seed << ',' << sfg::format_double(instance.n) << ',' << result.source
        << ',' << result.target << ',' << result.hops << ',' << (result.reachable ? 1 : 0)
        << "\n";
  };
  if (args.pairs.empty()) {
    emit(sfg::crossing_distance(instance, g));
  } else {
    for (const auto& [a, b] : parse_pairs(args.pairs)) {
      emit(sfg::chemical_distance(g, a, b));
    }
  }
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(args.out, csv.str());
  }
  return 0;
}

int run_backbone_cmd(const BackboneArgs& args) {
  const sfg::SampleInstance instance = sfg::read_point_set_file(args.points);
  const sfg::BackboneResult result = sfg::build_backbone(instance, args.depth_cap);
  const sfg::DirectedGeometricGraph g = sfg::build_full_graph(instance);
  const auto components = sfg::weakly_connected_components(g);
  const bool connected =
      components.empty() || *std::max_element(components.begin(), components.end()) == 0;
  std::int64_t bfs_diameter = -1;
  if (result.terminated && instance.size() <= sfg::kDiameterExactLimit) {
    const sfg::DiameterResult diam = sfg::diameter(g);
    if (diam.connected) bfs_diameter = diam.value;
  }
  std::ostringstream csv;
  csv << "seed,n,terminated,depth,backbone_size,diameter_bound,bfs_diameter,connected\n";
  csv << instance.seed << ',' << sfg::format_double(instance.n) << ','
      << (result.terminated ? 1 : 0) << ',' << result.depth << ',' << result.backbone.size()
      << ',' << result.diameter_bound() << ',' << bfs_diameter << ',' << (connected ? 1 : 0)
      << "\n";
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(args.out, csv.str());
  }
  return 0;
}

int run_chains_cmd(const FileArgs& args) {
  const sfg::SampleInstance instance = sfg::read_point_set_file(args.points);
  const sfg::DescendingChain chain = sfg::longest_descending_chain(instance);
  std::ostringstream csv;
  csv << "seed,n,chain_length,ids\n";
  csv << instance.seed << ',' << sfg::format_double(instance.n) << ',' << chain.length()
      << ',';
  for (std::size_t i = 0; i < chain.ids.size(); ++i) {
    if (i > 0) csv << ' ';
    csv << chain.ids[i];
  }
  csv << "\n";
  if (args.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(args.out, csv.str());
  }
  return 0;
}

int run_experiment_cmd(const ExperimentArgs& args, bool validate_only) {
  sfg::ExperimentConfig config = sfg::parse_config_file(args.config_path);
  if (args.seed_set) config.seed = args.seed;
  if (args.threads >= 0) config.threads = args.threads;
  const auto violations = sfg::validate(config);
  bool has_error = false;
  for (const auto& violation : violations) {
    std::cerr << (violation.warning ? "warning: " : "error: ") << violation.field << ": "
              << violation.message << "\n";
    if (!violation.warning) has_error = true;
  }
  if (validate_only) {
    if (!has_error) std::cout << "ok\n";
    return has_error ? 1 : 0;
  }
  if (has_error) return 1;
  const sfg::RunManifest manifest = sfg::run_experiment(config, args.out_dir);
  std::cout << "wrote " << manifest.output_dir << " (config " << manifest.config_hash
            << ")\n";
  if (!manifest.ok) {
    for (const auto& failure : manifest.failures) std::cerr << "failure: " << failure << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scale-free Gilbert graph toolkit"};
  app.set_version_flag("--version", sfg::kVersion);
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::uint64_t global_seed = 0;
  bool global_seed_set = false;
  int global_threads = -1;
  std::string global_out_dir;
  app.add_option("--seed", global_seed, "seed override")->each([&](const std::string&) {
    global_seed_set = true;
  });
  app.add_option("--threads", global_threads, "worker threads (0 = hardware)");
  app.add_option("--out-dir", global_out_dir, "output directory override");

  SampleArgs sample;
  auto* sample_cmd = app.add_subcommand("sample", "draw a marked Poisson instance");
  sample_cmd->add_option("--d", sample.d, "dimension (>= 2)");
  sample_cmd->add_option("--n", sample.n, "torus side length");
  sample_cmd->add_option("--lambda", sample.lambda, "intensity");
  sample_cmd->add_option("--s", sample.s, "radius tail index");
  sample_cmd->add_option("--beta", sample.beta, "radius tail constant");
  sample_cmd->add_option("--out", sample.out, "point-set file to write");

  FileArgs build_args;
  auto* build_cmd = app.add_subcommand("build", "full graph edge list from a point set");
  build_cmd->add_option("--points", build_args.points, "point-set file")->required();
  build_cmd->add_option("--out", build_args.out, "edge-list file (stdout if omitted)");

  FileArgs thin_args;
  auto* thin_cmd = app.add_subcommand("thin", "thinned graph edge list from a point set");
  thin_cmd->add_option("--points", thin_args.points, "point-set file")->required();
  thin_cmd->add_option("--out", thin_args.out, "edge-list file (stdout if omitted)");

  DistanceArgs dist_args;
  auto* dist_cmd = app.add_subcommand("distances", "chemical distance queries");
  dist_cmd->add_option("--points", dist_args.points, "point-set file")->required();
  dist_cmd->add_option("--variant", dist_args.variant, "full or thinned")
      ->check(CLI::IsMember({"full", "thinned"}));
  dist_cmd->add_option("--pairs", dist_args.pairs,
                       "id pairs a:b[,c:d...]; default is the torus crossing pair");
  dist_cmd->add_option("--out", dist_args.out, "CSV file (stdout if omitted)");

  BackboneArgs backbone_args;
  auto* backbone_cmd = app.add_subcommand("backbone", "hierarchical cover report");
  backbone_cmd->add_option("--points", backbone_args.points, "point-set file")->required();
  backbone_cmd->add_option("--depth-cap", backbone_args.depth_cap,
                           "levels to attempt (-1 = automatic)");
  backbone_cmd->add_option("--out", backbone_args.out, "CSV file (stdout if omitted)");

  FileArgs chains_args;
  auto* chains_cmd = app.add_subcommand("chains", "longest toroidal descending chain");
  chains_cmd->add_option("--points", chains_args.points, "point-set file")->required();
  chains_cmd->add_option("--out", chains_args.out, "CSV file (stdout if omitted)");

  ExperimentArgs experiment_args;
  auto* experiment_cmd = app.add_subcommand("experiment", "seeded experiment harness");
  experiment_cmd->require_subcommand(1);
  experiment_cmd->fallthrough();
  auto* run_cmd = experiment_cmd->add_subcommand("run", "run a config");
  run_cmd->add_option("config", experiment_args.config_path, "config JSON file")->required();
  auto* validate_cmd = experiment_cmd->add_subcommand("validate", "check a config");
  validate_cmd->add_option("config", experiment_args.config_path, "config JSON file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sample_cmd->parsed()) {
      const sfg::RadiusLaw law = sfg::RadiusLaw::pareto(sample.s, sample.beta);
      const sfg::SampleInstance instance = sfg::sample_instance(
          sample.d, sample.n, sample.lambda, law, global_seed_set ? global_seed : 0);
      sfg::write_point_set_file(sample.out, instance);
      std::cout << "wrote " << sample.out << " (" << instance.size() << " points)\n";
      return 0;
    }
    if (build_cmd->parsed() || thin_cmd->parsed()) {
      const FileArgs& args = build_cmd->parsed() ? build_args : thin_args;
      const sfg::SampleInstance instance = sfg::read_point_set_file(args.points);
      const sfg::DirectedGeometricGraph g = build_cmd->parsed()
                                                ? sfg::build_full_graph(instance)
                                                : sfg::build_thinned_graph(instance);
      if (args.out.empty()) {
        sfg::write_edge_list(std::cout, g);
      } else {
        sfg::write_edge_list_file(args.out, g);
        std::cout << "wrote " << args.out << " (" << g.edge_count() << " edges)\n";
      }
      return 0;
    }
    if (dist_cmd->parsed()) return run_distances(dist_args);
    if (backbone_cmd->parsed()) return run_backbone_cmd(backbone_args);
    if (chains_cmd->parsed()) return run_chains_cmd(chains_args);
    if (experiment_cmd->parsed()) {
      experiment_args.out_dir = global_out_dir;
      experiment_args.seed_set = global_seed_set;
      experiment_args.seed = global_seed;
      experiment_args.threads = global_threads;
      return run_experiment_cmd(experiment_args, validate_cmd->parsed());
    }
  } catch (const sfg::config_error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}
