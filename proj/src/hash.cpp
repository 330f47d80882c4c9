#include "weavehash/hash.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "weavehash/kernels.hpp"

namespace weavehash {

Mesh::Mesh(const FiniteGroup& group, Pseudogroup source, int n)
    : n_(n), source_(std::move(source)) {
  if (n < 1 || n > 4) throw std::invalid_argument("mesh n must be in [1, 4]");
  if (source_.group_name() != group.name()) {
    throw std::invalid_argument("mesh group does not match pseudogroup");
  }
  const int order = group.order();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= std::size_t(order);
  items_.reserve(total);
  quats_.reserve(total);

  std::array<int, 4> tuple{};
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int k = n - 1; k >= 0; --k) {
      tuple[k] = int(rest % order);
      rest /= order;
    }
    int acc = 0;
    Quat q{};
    Item item{};
    for (int k = 0; k < n; ++k) {
      acc = group.mul(acc, tuple[k]);
      q = q * source_.entry(tuple[k]).approx;
      item.tuple[k] = std::uint8_t(tuple[k]);
    }
    const int close = group.inv(acc);
    q = q * source_.entry(close).approx;
    item.tuple[n] = std::uint8_t(close);
    item.q = canonical_sign(q.normalized());
    items_.push_back(item);
    quats_.push_back(item.q);
  }
  s0_ = std::sqrt(double(n_ + 1)) * source_.mean_error();
}

BraidWord Mesh::word(std::size_t i) const {
  const Item& item = items_[i];
  BraidWord w;
  for (int k = 0; k <= n_; ++k) {
    w = concatenate_reduce(w, source_.entry(item.tuple[k]).word);
  }
  return w;
}

std::vector<Quat> Mesh::unique_quats() const {
  // Duplicate families are tight (float noise around a common algebraic
  // value) while distinct values differ by far more than 1e-12 in at least
  // one component. Splitting sorted runs at gaps > 1e-12 coordinate by
  // coordinate therefore isolates exactly the duplicate families, even when
  // unrelated families share some coordinates (conjugate items have equal w).
  constexpr double kGap = 1e-12;
  const auto component = [&](std::uint32_t i, int axis) {
    const Quat& q = quats_[i];
    switch (axis) {
      case 0: return q.w;
      case 1: return q.x;
      case 2: return q.y;
      default: return q.z;
    }
  };
  std::vector<char> keep(quats_.size(), 0);
  std::function<void(std::vector<std::uint32_t>&, int)> split =
      [&](std::vector<std::uint32_t>& idx, int axis) {
        if (axis == 4) {
          keep[*std::min_element(idx.begin(), idx.end())] = 1;
          return;
        }
        std::sort(idx.begin(), idx.end(),
                  [&](std::uint32_t a, std::uint32_t b) {
                    return component(a, axis) < component(b, axis);
                  });
        std::size_t run = 0;
        for (std::size_t i = 1; i <= idx.size(); ++i) {
          if (i == idx.size() ||
              component(idx[i], axis) - component(idx[i - 1], axis) > kGap) {
            std::vector<std::uint32_t> block(idx.begin() + run,
                                             idx.begin() + i);
            split(block, axis + 1);
            run = i;
          }
        }
      };
  std::vector<std::uint32_t> all(quats_.size());
  std::iota(all.begin(), all.end(), 0);
  split(all, 0);
  std::vector<Quat> out;
  for (std::size_t i = 0; i < quats_.size(); ++i) {
    if (keep[i]) out.push_back(quats_[i]);
  }
  return out;
}

Mesh build_mesh(const FiniteGroup& group, const Pseudogroup& source, int n) {
  return Mesh(group, source, n);
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

HashConfig HashConfig::parse(const std::string& text) {
  HashConfig cfg;
  cfg.iterations.clear();
  cfg.tail_thresholds.clear();
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line is not key=value: " + line);
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "group") {
        cfg.group = val;
      } else if (key == "L0") {
        cfg.L0 = std::stoi(val);
      } else if (key == "m") {
        cfg.m = std::stoi(val);
      } else if (key == "n") {
        cfg.n = std::stoi(val);
      } else if (key == "iterations") {
        cfg.iterations.clear();
        for (const std::string& p : split(val, ',')) {
          if (!trim(p).empty()) cfg.iterations.push_back(std::stoi(trim(p)));
        }
      } else if (key == "tail_quantile") {
        cfg.tail_quantile = std::stod(val);
      } else if (key == "tail_delta") {
        cfg.tail_delta = std::stoi(val);
      } else if (key == "tail_thresholds") {
        cfg.tail_thresholds.clear();
        for (const std::string& p : split(val, ',')) {
          if (!trim(p).empty()) cfg.tail_thresholds.push_back(std::stod(trim(p)));
        }
      } else if (key == "pseudogroup_dir") {
        cfg.pseudogroup_dir = val;
      } else {
        throw std::invalid_argument("unknown config key: " + key);
      }
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("bad value for " + key + ": " + val);
    }
  }
  if (cfg.L0 < 2 || cfg.L0 % 2 != 0) {
    throw std::invalid_argument("L0 must be even and >= 2");
  }
  if (cfg.m < 1 || cfg.m > 4) throw std::invalid_argument("m must be in [1, 4]");
  if (cfg.n < 1 || cfg.n > 4) throw std::invalid_argument("n must be in [1, 4]");
  for (int L : cfg.iterations) {
    if (L < 2 || L % 2 != 0) {
      throw std::invalid_argument("iteration lengths must be even and >= 2");
    }
  }
  if (!(cfg.tail_quantile > 0.0 && cfg.tail_quantile < 1.0)) {
    throw std::invalid_argument("tail_quantile must be in (0, 1)");
  }
  if (cfg.tail_delta < 0 || cfg.tail_delta % 2 != 0) {
    throw std::invalid_argument("tail_delta must be even and >= 0");
  }
  if (cfg.tail_thresholds.size() > cfg.iterations.size()) {
    throw std::invalid_argument("more tail thresholds than iterations");
  }
  cfg.tail_thresholds.resize(cfg.iterations.size(), 0.0);
  if (!cfg.tail_thresholds.empty() && cfg.tail_thresholds[0] > 0.0) {
    throw std::invalid_argument(
        "tail correction starts at the second iteration");
  }
  return cfg;
}

HashConfig HashConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string HashConfig::str() const {
  std::ostringstream out;
  char num[64];
  out << "group=" << group << "\n";
  out << "L0=" << L0 << "\n";
  out << "m=" << m << "\n";
  out << "n=" << n << "\n";
  out << "iterations=";
  for (std::size_t i = 0; i < iterations.size(); ++i) {
    out << (i ? "," : "") << iterations[i];
  }
  out << "\n";
  std::snprintf(num, sizeof num, "%.17g", tail_quantile);
  out << "tail_quantile=" << num << "\n";
  out << "tail_delta=" << tail_delta << "\n";
  out << "tail_thresholds=";
  for (std::size_t i = 0; i < tail_thresholds.size(); ++i) {
    std::snprintf(num, sizeof num, "%.17g", tail_thresholds[i]);
    out << (i ? "," : "") << num;
  }
  out << "\n";
  out << "pseudogroup_dir=" << pseudogroup_dir << "\n";
  return out.str();
}

std::string HashConfig::pseudogroup_path(int L) const {
  return pseudogroup_dir + "/" + group + "-L" + std::to_string(L) + ".pg";
}

int HashConfig::nominal_unreduced_length() const {
  int total = m * L0;
  for (int L : iterations) total += (n + 1) * L;
  return total;
}

Preprocessor::Preprocessor(const FiniteGroup& group, Pseudogroup source, int m)
    : m_(m), order_(group.order()), source_(std::move(source)) {
  if (m < 1 || m > 4) throw std::invalid_argument("m must be in [1, 4]");
  if (source_.size() != order_) {
    throw std::invalid_argument("pseudogroup does not match group");
  }
  std::size_t total = 1;
  for (int i = 0; i < m; ++i) total *= std::size_t(order_);
  quats_.resize(total);
  std::array<int, 4> tuple{};
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int k = m - 1; k >= 0; --k) {
      tuple[k] = int(rest % order_);
      rest /= order_;
    }
    Quat q = source_.entry(tuple[0]).approx;
    for (int k = 1; k < m; ++k) q = q * source_.entry(tuple[k]).approx;
    quats_[idx] = canonical_sign(q.normalized());
  }
}

double Preprocessor::mean_spacing_scale() const {
  return std::sqrt(double(m_)) * source_.mean_error();
}

Preprocessor::Pick Preprocessor::best(const Quat& target) const {
  const ScanBest sb = best_match_parallel(quats_, target);
  Pick pick;
  pick.q = quats_[sb.index];
  pick.tuple.resize(m_);
  std::size_t rest = sb.index;
  for (int k = m_ - 1; k >= 0; --k) {
    pick.tuple[k] = int(rest % order_);
    rest /= order_;
  }
  return pick;
}

BraidWord Preprocessor::word(const Pick& pick) const {
  BraidWord w;
  for (int j : pick.tuple) w = concatenate_reduce(w, source_.entry(j).word);
  return w;
}

IterationState iterate_once(const IterationState& current, const Quat& target,
                            const Mesh& mesh) {
  const Quat residual = canonical_sign(current.approx.conj() * target);
  const ScanBest sb = best_match_parallel(mesh.quats(), residual);
  IterationState next;
  next.word = concatenate_reduce(current.word, mesh.word(sb.index));
  next.approx = evaluate_quat(next.word);
  next.error = proj_distance(next.approx, target);
  return next;
}

HashPipeline::HashPipeline(const HashConfig& config)
    : config_(config), group_(FiniteGroup::by_name(config.group)) {
  config_.tail_thresholds.resize(config_.iterations.size(), 0.0);
  if (!config_.tail_thresholds.empty() && config_.tail_thresholds[0] > 0.0) {
    throw std::invalid_argument("tail correction starts at the second iteration");
  }
  pre_ = std::make_unique<Preprocessor>(
      group_, Pseudogroup::load(config_.pseudogroup_path(config_.L0)),
      config_.m);
  for (std::size_t i = 0; i < config_.iterations.size(); ++i) {
    const int L = config_.iterations[i];
    meshes_.push_back(std::make_unique<Mesh>(
        group_, Pseudogroup::load(config_.pseudogroup_path(L)), config_.n));
    if (config_.tail_thresholds[i] > 0.0) {
      const int tail_L = L - config_.tail_delta;
      if (tail_L < 2) {
        throw std::invalid_argument("tail fallback length below 2");
      }
      tail_meshes_.push_back(std::make_unique<Mesh>(
          group_, Pseudogroup::load(config_.pseudogroup_path(tail_L)),
          config_.n));
    } else {
      tail_meshes_.push_back(nullptr);
    }
  }
}

HashResult HashPipeline::run(const Gate& target, bool allow_tail) const {
  const Quat t = target.canonical();
  HashResult result;

  const Preprocessor::Pick pick = pre_->best(t);
  IterationState state;
  state.word = pre_->word(pick);
  state.approx = evaluate_quat(state.word);
  state.error = proj_distance(state.approx, t);
  result.trace.push_back(
      StageTrace{"preprocess", state.error, config_.m * config_.L0, false});

  for (std::size_t i = 0; i < meshes_.size(); ++i) {
    const double input_error = state.error;
    IterationState next = iterate_once(state, t, *meshes_[i]);
    int appended = meshes_[i]->nominal_length();
    bool tail_used = false;
    if (allow_tail && tail_meshes_[i] && config_.tail_thresholds[i] > 0.0 &&
        input_error > config_.tail_thresholds[i]) {
      IterationState tail_next = iterate_once(state, t, *tail_meshes_[i]);
      if (tail_next.error < next.error) {
        next = std::move(tail_next);
        appended = tail_meshes_[i]->nominal_length();
        tail_used = true;
      }
    }
    state = std::move(next);
    result.trace.push_back(StageTrace{"iterate" + std::to_string(i + 1),
                                      state.error, appended, tail_used});
  }

  result.word = state.word;
  result.error = state.error;
  result.unreduced_length = 0;
  for (const StageTrace& st : result.trace) {
    result.unreduced_length += st.appended_len;
  }
  return result;
}

HashResult HashPipeline::hash_target(const Gate& target) const {
  return run(target, true);
}

HashResult HashPipeline::hash_target_no_tail(const Gate& target) const {
  return run(target, false);
}

}  // namespace weavehash
