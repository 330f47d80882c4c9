#include "weavehash/trials.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "weavehash/rng.hpp"

namespace weavehash {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double TrialReport::stage_mean(std::size_t s) const {
  return mean(errors.at(s));
}

double TrialReport::stage_stddev(std::size_t s) const {
  return stddev(errors.at(s));
}

double TrialReport::input_quantile(std::size_t s) const {
  if (s == 0) throw std::invalid_argument("preprocessor has no input stage");
  return quantile(errors.at(s - 1), config.tail_quantile);
}

Histogram TrialReport::stage_histogram(std::size_t s, int nbins) const {
  return make_log_histogram(errors.at(s), nbins);
}

std::string TrialReport::summary() const {
  std::ostringstream out;
  out << "trial report\n";
  out << "trials=" << trials << "\n";
  out << "seed=" << seed << "\n";
  out << "config:\n";
  std::istringstream cfg(config.str());
  std::string line;
  while (std::getline(cfg, line)) out << "  " << line << "\n";
  out << "stages:\n";
  for (std::size_t s = 0; s < stage_names.size(); ++s) {
    out << "  " << stage_names[s] << " mean=" << fmt17(stage_mean(s))
        << " stddev=" << fmt17(stage_stddev(s));
    if (s > 0) {
      out << " input_q" << fmt17(config.tail_quantile) << "="
          << fmt17(input_quantile(s));
    }
    if (s >= 1 && s - 1 < tails.size()) {
      std::uint64_t used = 0;
      for (std::uint8_t t : tails[s - 1]) used += t;
      out << " tail_used=" << used;
    }
    out << "\n";
  }
  if (stage_names.size() >= 3) {
    const TrialReport* self = this;
    out << scaling_report(std::span<const TrialReport>(self, 1)).str();
  }
  return out.str();
}

TrialReport run_trials(const HashPipeline& pipeline, int count,
                       std::uint64_t seed, bool use_tail) {
  if (count < 2) throw std::invalid_argument("need at least 2 trials");
  TrialReport report;
  report.config = pipeline.config();
  report.trials = count;
  report.seed = seed;

  const std::size_t stages = 1 + pipeline.config().iterations.size();
  report.stage_names.resize(stages);
  report.errors.assign(stages, std::vector<double>(count));
  report.tails.assign(pipeline.config().iterations.size(),
                      std::vector<std::uint8_t>(count, 0));

  for (int k = 0; k < count; ++k) {
    Rng rng = trial_rng(seed, std::uint64_t(k));
    const Gate target = haar_gate(rng);
    const HashResult res = use_tail ? pipeline.hash_target(target)
                                    : pipeline.hash_target_no_tail(target);
    if (res.trace.size() != stages) {
      throw std::runtime_error("unexpected trace length");
    }
    for (std::size_t s = 0; s < stages; ++s) {
      report.errors[s][k] = res.trace[s].error;
      if (k == 0) report.stage_names[s] = res.trace[s].stage;
      if (s >= 1) report.tails[s - 1][k] = res.trace[s].tail_used ? 1 : 0;
    }
    if (k == 0) {
      report.nominal_lengths.clear();
      for (const StageTrace& st : res.trace) {
        report.nominal_lengths.push_back(st.appended_len);
      }
    }
  }
  // nominal stage budgets are config-determined, not trial-determined
  report.nominal_lengths.assign(1, pipeline.config().m * pipeline.config().L0);
  for (int L : pipeline.config().iterations) {
    report.nominal_lengths.push_back((pipeline.config().n + 1) * L);
  }
  return report;
}

void write_report(const TrialReport& report, const std::string& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir + "/report.txt");
    if (!out) throw std::runtime_error("cannot write report.txt in " + dir);
    out << report.summary();
  }
  {
    std::ofstream out(dir + "/errors.csv");
    if (!out) throw std::runtime_error("cannot write errors.csv in " + dir);
    out << "trial";
    for (const std::string& name : report.stage_names) out << "," << name;
    out << "\n";
    for (int k = 0; k < report.trials; ++k) {
      out << k;
      for (std::size_t s = 0; s < report.errors.size(); ++s) {
        out << "," << fmt17(report.errors[s][k]);
      }
      out << "\n";
    }
  }
  for (std::size_t s = 0; s < report.stage_names.size(); ++s) {
    std::ofstream out(dir + "/hist_" + report.stage_names[s] + ".csv");
    if (!out) throw std::runtime_error("cannot write histogram in " + dir);
    out << format_histogram(report.stage_histogram(s));
  }
}

std::string ScalingTable::str() const {
  std::ostringstream out;
  out << "scaling:\n";
  for (const ScalingRow& row : rows) {
    out << "  " << row.stage << " cumulative_length=" << row.cumulative_length
        << " mean_error=" << fmt17(row.mean_error) << "\n";
  }
  out << "  fit ln(1/eps) = " << fmt17(fit.slope) << " * sqrt(L) + "
      << fmt17(fit.intercept) << "  r2=" << fmt17(fit.r2) << "\n";
  // Solovay-Kitaev reference exponents for the footer comparison
  const double c = std::log(5.0) / std::log(1.5);
  const double d = std::log(3.0) / std::log(1.5);
  out << "  solovay_kitaev_reference c=" << fmt17(c) << " d=" << fmt17(d)
      << " (L ~ ln^c(1/eps) vs this length-linear law)\n";
  return out.str();
}

ScalingTable scaling_report(std::span<const TrialReport> reports) {
  ScalingTable table;
  for (const TrialReport& r : reports) {
    int cumulative = 0;
    for (std::size_t s = 0; s < r.stage_names.size(); ++s) {
      cumulative += r.nominal_lengths.at(s);
      table.rows.push_back(
          ScalingRow{r.stage_names[s], cumulative, r.stage_mean(s)});
    }
  }
  if (table.rows.size() < 3) {
    throw std::invalid_argument("scaling_report needs >= 3 stages of data");
  }
  std::vector<double> x, y;
  for (const ScalingRow& row : table.rows) {
    x.push_back(std::sqrt(double(row.cumulative_length)));
    y.push_back(std::log(1.0 / row.mean_error));
  }
  table.fit = linear_fit(x, y);
  return table;
}

}  // namespace weavehash
