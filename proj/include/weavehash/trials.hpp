#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weavehash/hash.hpp"
#include "weavehash/stats.hpp"

namespace weavehash {

// Batch of Haar-random targets pushed through a pipeline. errors[s][k] is
// the error after stage s on trial k; stage 0 is the preprocessor.
struct TrialReport {
  HashConfig config;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::string> stage_names;
  std::vector<std::vector<double>> errors;       // [stage][trial]
  std::vector<std::vector<std::uint8_t>> tails;  // [iteration stages][trial]
  std::vector<int> nominal_lengths;              // appended per stage

  double stage_mean(std::size_t s) const;
  double stage_stddev(std::size_t s) const;
  // tail_quantile of the errors entering stage s (i.e. after stage s-1).
  double input_quantile(std::size_t s) const;
  Histogram stage_histogram(std::size_t s, int nbins = 60) const;

  // report.txt body: config echo, per-stage stats, calibration quantiles,
  // scaling fit. Stable bytes for fixed config/seed/count.
  std::string summary() const;
};

TrialReport run_trials(const HashPipeline& pipeline, int count,
                       std::uint64_t seed, bool use_tail = true);

// Writes report.txt, errors.csv and hist_<stage>.csv under dir.
void write_report(const TrialReport& report, const std::string& dir);

struct ScalingRow {
  std::string stage;
  int cumulative_length = 0;  // nominal unreduced crossings through the stage
  double mean_error = 0.0;
};

struct ScalingTable {
  std::vector<ScalingRow> rows;
  LinearFit fit;  // ln(1/eps) against sqrt(cumulative length)
  std::string str() const;  // table plus the Solovay-Kitaev reference footer
};

// Aggregates stage rows from the reports; needs >= 3 stages in total.
ScalingTable scaling_report(std::span<const TrialReport> reports);

}  // namespace weavehash
