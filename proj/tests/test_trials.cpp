#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "weavehash/rng.hpp"
#include "weavehash/stats.hpp"
#include "weavehash/su2.hpp"
#include "weavehash/trials.hpp"

using namespace weavehash;

namespace {

const HashPipeline& pipe() {
  static const HashPipeline p(testsupport::small_config());
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("run_trials shapes and per-trial pipeline equality") {
  const TrialReport r = run_trials(pipe(), 25, 99);

  CHECK(r.trials == 25);
  CHECK(r.seed == 99);
  REQUIRE(r.stage_names.size() == 3);
  CHECK(r.stage_names[0] == "preprocess");
  CHECK(r.stage_names[1] == "iterate1");
  CHECK(r.stage_names[2] == "iterate2");
  REQUIRE(r.errors.size() == 3);
  REQUIRE(r.tails.size() == 2);
  for (const auto& stage : r.errors) CHECK(stage.size() == 25);
  for (const auto& stage : r.tails) CHECK(stage.size() == 25);

  // nominal budgets come from the config, not from any particular trial
  REQUIRE(r.nominal_lengths.size() == 3);
  CHECK(r.nominal_lengths[0] == 3 * 8);
  CHECK(r.nominal_lengths[1] == 4 * 12);
  CHECK(r.nominal_lengths[2] == 4 * 16);

  // each column reproduces a direct pipeline run on the same seeded target
  for (int k : {0, 7, 24}) {
    Rng rng = trial_rng(99, std::uint64_t(k));
    const Gate target = haar_gate(rng);
    const HashResult res = pipe().hash_target(target);
    REQUIRE(res.trace.size() == 3);
    for (std::size_t s = 0; s < 3; ++s) {
      CHECK(r.errors[s][k] == res.trace[s].error);
    }
    CHECK(int(r.tails[0][k]) == int(res.trace[1].tail_used));
    CHECK(int(r.tails[1][k]) == int(res.trace[2].tail_used));
  }

  // same seed is bitwise repeatable, another seed is not a copy
  const TrialReport again = run_trials(pipe(), 25, 99);
  CHECK(again.errors == r.errors);
  const TrialReport other = run_trials(pipe(), 25, 100);
  CHECK(other.errors != r.errors);
}

TEST_CASE("stage errors shrink monotonically") {
  const TrialReport r = run_trials(pipe(), 30, 4);
  for (int k = 0; k < 30; ++k) {
    CHECK(r.errors[1][k] <= r.errors[0][k] + 1e-11);
    CHECK(r.errors[2][k] <= r.errors[1][k] + 1e-11);
  }
  // each iteration buys a solid factor on average
  CHECK(r.stage_mean(1) < 0.6 * r.stage_mean(0));
  CHECK(r.stage_mean(2) < 0.6 * r.stage_mean(1));
}

TEST_CASE("report statistics match the stats helpers") {
  const TrialReport r = run_trials(pipe(), 20, 11);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(r.stage_mean(s) == mean(r.errors[s]));
    CHECK(r.stage_stddev(s) == stddev(r.errors[s]));
    CHECK(format_histogram(r.stage_histogram(s)) ==
          format_histogram(make_log_histogram(r.errors[s], 60)));
  }
  CHECK(r.input_quantile(1) == quantile(r.errors[0], r.config.tail_quantile));
  CHECK(r.input_quantile(2) == quantile(r.errors[1], r.config.tail_quantile));
  CHECK_THROWS_AS((void)r.input_quantile(0), std::invalid_argument);
}

TEST_CASE("summary is byte-stable and carries the expected sections") {
  const TrialReport r = run_trials(pipe(), 20, 5);
  const std::string text = r.summary();
  CHECK(text == run_trials(pipe(), 20, 5).summary());
  CHECK(text != run_trials(pipe(), 20, 6).summary());

  CHECK(text.find("trials=20") != std::string::npos);
  CHECK(text.find("seed=5") != std::string::npos);
  CHECK(text.find("L0=8") != std::string::npos);
  CHECK(text.find("preprocess mean=") != std::string::npos);
  CHECK(text.find("iterate2 mean=") != std::string::npos);
  CHECK(text.find("input_q") != std::string::npos);
  CHECK(text.find("tail_used=0") != std::string::npos);
  CHECK(text.find("scaling:") != std::string::npos);
  CHECK(text.find("solovay_kitaev_reference c=") != std::string::npos);
}

TEST_CASE("write_report emits stable files that parse back") {
  namespace fs = std::filesystem;
  const TrialReport r = run_trials(pipe(), 18, 8);
  const fs::path a = fs::temp_directory_path() / "weavehash-report-a";
  const fs::path b = fs::temp_directory_path() / "weavehash-report-b";
  fs::remove_all(a);
  fs::remove_all(b);
  write_report(r, a.string());
  write_report(r, b.string());

  for (const char* name :
       {"report.txt", "errors.csv", "hist_preprocess.csv", "hist_iterate1.csv",
        "hist_iterate2.csv"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(a / name));
    CHECK(slurp((a / name).string()) == slurp((b / name).string()));
  }
  CHECK(slurp((a / "report.txt").string()) == r.summary());
  CHECK(slurp((a / "hist_iterate2.csv").string()) ==
        format_histogram(r.stage_histogram(2)));

  // errors.csv: header + one row per trial, %.17g survives the round trip
  std::ifstream csv((a / "errors.csv").string());
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "trial,preprocess,iterate1,iterate2");
  int rows = 0;
  while (std::getline(csv, line)) {
    std::istringstream fields(line);
    std::string field;
    REQUIRE(std::getline(fields, field, ','));
    const int k = std::atoi(field.c_str());
    CHECK(k == rows);
    for (std::size_t s = 0; s < 3; ++s) {
      REQUIRE(std::getline(fields, field, ','));
      CHECK(std::strtod(field.c_str(), nullptr) == r.errors[s][k]);
    }
    ++rows;
  }
  CHECK(rows == 18);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("scaling table aggregates stage rows and fits the length law") {
  const TrialReport r = run_trials(pipe(), 16, 2);
  const ScalingTable tbl = scaling_report({&r, 1});

  REQUIRE(tbl.rows.size() == 3);
  CHECK(tbl.rows[0].stage == "preprocess");
  CHECK(tbl.rows[0].cumulative_length == 24);
  CHECK(tbl.rows[1].cumulative_length == 24 + 48);
  CHECK(tbl.rows[2].cumulative_length == 24 + 48 + 64);
  for (std::size_t s = 0; s < 3; ++s) {
    CHECK(tbl.rows[s].mean_error == r.stage_mean(s));
  }

  std::vector<double> x, y;
  for (const ScalingRow& row : tbl.rows) {
    x.push_back(std::sqrt(double(row.cumulative_length)));
    y.push_back(std::log(1.0 / row.mean_error));
  }
  const LinearFit fit = linear_fit(x, y);
  CHECK(tbl.fit.slope == fit.slope);
  CHECK(tbl.fit.intercept == fit.intercept);
  CHECK(tbl.fit.r2 == fit.r2);
  CHECK(tbl.fit.slope > 0.0);  // error falls as the braid grows

  const std::string text = tbl.str();
  CHECK(text.find("preprocess cumulative_length=24") != std::string::npos);
  CHECK(text.find("fit ln(1/eps) = ") != std::string::npos);
  CHECK(text.find("solovay_kitaev_reference") != std::string::npos);

  // two reports stack their rows
  const TrialReport r2 = run_trials(pipe(), 16, 3);
  const std::vector<TrialReport> both{r, r2};
  CHECK(scaling_report(both).rows.size() == 6);

  CHECK_THROWS_AS((void)scaling_report({}), std::invalid_argument);
}

TEST_CASE("tail flags are recorded and use_tail=false disables the fallback") {
  HashConfig cfg = testsupport::small_config();
  cfg.tail_thresholds = {0.0, 1e-15};  // fallback candidate on every trial
  const HashPipeline tail_pipe(cfg);

  const TrialReport with = run_trials(tail_pipe, 15, 3, true);
  for (int k = 0; k < 15; ++k) {
    Rng rng = trial_rng(3, std::uint64_t(k));
    const Gate target = haar_gate(rng);
    CHECK(int(with.tails[1][k]) ==
          int(tail_pipe.hash_target(target).trace[2].tail_used));
  }

  const TrialReport without = run_trials(tail_pipe, 15, 3, false);
  const TrialReport plain = run_trials(pipe(), 15, 3, true);
  CHECK(without.errors == plain.errors);
  for (int k = 0; k < 15; ++k) {
    CHECK(without.tails[0][k] == 0);
    CHECK(without.tails[1][k] == 0);
  }
}

TEST_CASE("run_trials needs at least two trials") {
  CHECK_THROWS_AS((void)run_trials(pipe(), 1, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)run_trials(pipe(), 0, 0), std::invalid_argument);
  const TrialReport tiny = run_trials(pipe(), 2, 1);
  CHECK(tiny.trials == 2);
  CHECK(tiny.stage_stddev(0) >= 0.0);
}
