// Command line front end: weave counting, pseudogroup builds, hashing a
// single target, trial batches, mesh statistics and the brute-force
// baseline tables.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "weavehash/groups.hpp"
#include "weavehash/hash.hpp"
#include "weavehash/pseudogroup.hpp"
#include "weavehash/stats.hpp"
#include "weavehash/su2.hpp"
#include "weavehash/trials.hpp"
#include "weavehash/weave.hpp"

using namespace weavehash;

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Gate target_from_args(const std::vector<std::string>& args) {
  if (args.size() == 1 && args[0].rfind("named:", 0) == 0) {
    return named_gate(args[0].substr(6));
  }
  if (args.size() == 8) {
    std::string joined;
    for (const std::string& a : args) {
      if (!joined.empty()) joined += ' ';
      joined += a;
    }
    return parse_gate(joined);
  }
  throw std::invalid_argument(
      "--target needs 8 floats or named:<iY|X|Z|H>, got " +
      std::to_string(args.size()) + " value(s)");
}

void cmd_count_weaves(int L) {
  std::cout << "L=" << L << " count=" << count_weaves(L)
            << " cumulative=" << count_weaves_upto(L) << "\n";
}

void cmd_build_pseudogroup(const std::string& group_name, int L,
                           const std::string& mode_name,
                           const std::string& out) {
  BuildMode mode;
  if (mode_name == "exhaustive") {
    mode = BuildMode::exhaustive;
  } else if (mode_name == "mitm") {
    mode = BuildMode::mitm;
  } else {
    throw std::invalid_argument("--mode must be exhaustive or mitm");
  }
  const FiniteGroup group = FiniteGroup::by_name(group_name);
  const Pseudogroup pg = build_pseudogroup(
      group, L, mode, [](const std::string& msg) { std::cerr << msg << "\n"; });
  pg.save(out);
  std::cout << "group=" << pg.group_name() << " L=" << pg.L()
            << " mode=" << mode_name << "\n";
  std::cout << "mean_error=" << fmt17(pg.mean_error())
            << " min_error=" << fmt17(pg.min_error())
            << " max_error=" << fmt17(pg.max_error()) << "\n";
  std::cout << "saved " << out << "\n";
}

void cmd_hash(const std::vector<std::string>& target_args,
              const std::string& config_path) {
  const Gate target = target_from_args(target_args);
  const HashConfig cfg = HashConfig::load(config_path);
  const HashPipeline pipeline(cfg);
  const HashResult res = pipeline.hash_target(target);

  std::cout << "target " << format_gate(target) << "\n";
  for (const StageTrace& st : res.trace) {
    std::cout << st.stage << " error=" << fmt17(st.error)
              << " appended=" << st.appended_len
              << (st.tail_used ? " tail" : "") << "\n";
  }
  std::cout << "final error=" << fmt17(res.error) << "\n";
  std::cout << "length=" << res.word.length()
            << " nominal=" << res.unreduced_length << "\n";
  std::cout << "word=" << res.word.str() << "\n";
}

void cmd_trials(const std::string& config_path, int count, std::uint64_t seed,
                const std::string& out_dir) {
  const HashConfig cfg = HashConfig::load(config_path);
  const HashPipeline pipeline(cfg);
  const TrialReport report = run_trials(pipeline, count, seed);
  write_report(report, out_dir);
  std::cout << report.summary();
  std::cout << "wrote " << out_dir << "/report.txt, errors.csv, hist_*.csv\n";
}

void cmd_mesh_stats(const std::string& pg_path, int n,
                    const std::string& out_csv) {
  const Pseudogroup pg = Pseudogroup::load(pg_path);
  const FiniteGroup group = FiniteGroup::by_name(pg.group_name());
  const Mesh mesh(group, pg, n);

  const std::vector<Quat> uniq = mesh.unique_quats();
  const Quat id{};
  std::vector<double> dists;
  dists.reserve(uniq.size());
  for (const Quat& q : uniq) dists.push_back(proj_distance(q, id));

  const double sample_mean = mean(dists);
  const KsResult ks = ks_test(
      dists, [&](double s) { return wigner_dyson_cdf(s, sample_mean); });

  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error("cannot write " + out_csv);
  out << "# items=" << mesh.items().size() << " unique=" << uniq.size()
      << " s0_model=" << fmt17(mesh.s0())
      << " sample_mean=" << fmt17(sample_mean) << " ks_d=" << fmt17(ks.d)
      << " ks_p=" << fmt17(ks.p_value) << "\n";
  out << "# low high count density\n";
  out << format_histogram(make_log_histogram(dists));

  std::cout << "items=" << mesh.items().size() << " unique=" << uniq.size()
            << "\n";
  std::cout << "s0_model=" << fmt17(mesh.s0())
            << " sample_mean=" << fmt17(sample_mean) << "\n";
  std::cout << "wigner_dyson ks_d=" << fmt17(ks.d)
            << " ks_p=" << fmt17(ks.p_value) << "\n";
  std::cout << "saved " << out_csv << "\n";
}

void cmd_bf_baseline(int L, const std::string& out_csv) {
  const BaselineModel model = bf_baseline(L);
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error("cannot write " + out_csv);
  out << "# L=" << model.L << " N=" << model.N
      << " mean_distance=" << fmt17(model.mean_distance()) << "\n";
  out << "t,p_density,p_cumulative,closest_density\n";
  const int steps = 400;
  const double hi = std::numbers::sqrt2;
  for (int i = 0; i <= steps; ++i) {
    const double t = hi * double(i) / double(steps);
    out << fmt17(t) << "," << fmt17(model.p_density(t)) << ","
        << fmt17(model.p_cumulative(t)) << ","
        << fmt17(model.closest_density(t)) << "\n";
  }
  std::cout << "L=" << model.L << " N=" << model.N
            << " mean_distance=" << fmt17(model.mean_distance()) << "\n";
  std::cout << "saved " << out_csv << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit gates as Fibonacci braid weaves"};
  app.require_subcommand(1);

  int L = 0;
  auto* count = app.add_subcommand("count-weaves", "Count weaves of length L");
  count->add_option("--L", L, "Weave length (even)")->required();

  std::string group_name, mode_name, out_path;
  auto* build = app.add_subcommand("build-pseudogroup",
                                   "Best weave per group element");
  build->add_option("--group", group_name, "icosahedral or cubic")->required();
  build->add_option("--L", L, "Max weave length")->required();
  build->add_option("--mode", mode_name, "exhaustive or mitm")->required();
  build->add_option("--out", out_path, "Output file")->required();

  std::vector<std::string> target_args;
  std::string config_path;
  auto* hash = app.add_subcommand("hash", "Hash one target gate");
  hash->add_option("--target", target_args,
                   "8 floats (re/im row-major) or named:<iY|X|Z|H>")
      ->required()
      ->expected(1, 8);
  hash->add_option("--config", config_path, "Pipeline config file")->required();

  int trial_count = 1000;
  std::uint64_t seed = 1;
  auto* trials = app.add_subcommand("trials", "Batch of Haar-random targets");
  trials->add_option("--config", config_path, "Pipeline config file")
      ->required();
  trials->add_option("--count", trial_count, "Number of targets");
  trials->add_option("--seed", seed, "Base seed");
  trials->add_option("--out", out_path, "Report directory")->required();

  std::string pg_path;
  int n = 3;
  auto* mesh = app.add_subcommand("mesh-stats",
                                  "Mesh distance statistics from a pseudogroup");
  mesh->add_option("--pseudogroup", pg_path, "Pseudogroup file")->required();
  mesh->add_option("--n", n, "Tuple size");
  mesh->add_option("--out", out_path, "Output csv")->required();

  auto* baseline = app.add_subcommand("bf-baseline",
                                      "Closed-form brute-force baseline");
  baseline->add_option("--L", L, "Weave length (even)")->required();
  baseline->add_option("--out", out_path, "Output csv")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed()) {
      cmd_count_weaves(L);
    } else if (build->parsed()) {
      cmd_build_pseudogroup(group_name, L, mode_name, out_path);
    } else if (hash->parsed()) {
      cmd_hash(target_args, config_path);
    } else if (trials->parsed()) {
      cmd_trials(config_path, trial_count, seed, out_path);
    } else if (mesh->parsed()) {
      cmd_mesh_stats(pg_path, n, out_path);
    } else if (baseline->parsed()) {
      cmd_bf_baseline(L, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
