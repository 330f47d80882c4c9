#include "weavehash/pseudogroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "weavehash/kernels.hpp"

namespace weavehash {

namespace {

BraidWord word_from_packed(std::uint64_t packed) {
  return BraidWord(unpack_word(packed));
}

BraidWord reduce_join(std::uint64_t left, std::uint64_t right) {
  std::vector<Block> blocks = unpack_word(left);
  const std::vector<Block> rb = unpack_word(right);
  blocks.insert(blocks.end(), rb.begin(), rb.end());
  return reduce(blocks);
}

double error_from_absdot(double absdot) {
  const double d = 2.0 - 2.0 * std::min(1.0, absdot);
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

}  // namespace

std::vector<SearchResult> brute_force_multi(std::span<const Quat> targets,
                                            int L_max, int max_exhaustive) {
  if (L_max < 0 || L_max % 2 != 0) {
    throw std::invalid_argument("L_max must be even and >= 0");
  }
  if (L_max > max_exhaustive) {
    throw CapacityError("exhaustive search limit exceeded (L_max " +
                        std::to_string(L_max) + " > " +
                        std::to_string(max_exhaustive) + ")");
  }
  std::vector<WeaveBest> best(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) {
    best[t] = WeaveBest{std::fabs(targets[t].w), 0, 0, 0};  // empty word seed
  }
  if (L_max >= 2) best_weaves_parallel(L_max, targets, best);
  std::vector<SearchResult> out(targets.size());
  for (size_t t = 0; t < targets.size(); ++t) {
    out[t] = SearchResult{word_from_packed(best[t].packed),
                          error_from_absdot(best[t].absdot)};
  }
  return out;
}

SearchResult brute_force(const Gate& target, int L_max, int max_exhaustive) {
  const Quat q = target.canonical();
  return brute_force_multi(std::span<const Quat>(&q, 1), L_max,
                           max_exhaustive)[0];
}

RadiusSchedule default_schedule(int L) {
  RadiusSchedule s;
  s.r0 = 1.021 * std::exp(-double(L) / 5.970);
  // The worst group element sits several times above the mean error, so the
  // doubling schedule needs headroom past r0; unused rounds cost nothing
  // because the search stops once every target is resolved.
  s.rounds = 8;
  return s;
}

std::vector<MitmResult> mitm_search_multi(std::span<const Quat> targets, int L,
                                          const HalfWordIndex& index,
                                          const RadiusSchedule& schedule) {
  if (L < 0 || L % 2 != 0) throw std::invalid_argument("L must be even and >= 0");
  if (2 * index.half_len() < L) {
    throw std::invalid_argument("index half length too small for L");
  }
  const size_t n = targets.size();
  std::vector<MitmResult> out(n);
  std::vector<char> done(n, 0);
  std::vector<double> radius(n, schedule.r0);
  std::vector<double> best_d(n, 4.0);
  std::vector<std::uint64_t> best_left(n, 0), best_right(n, 0);

  const auto entries = index.entries();
  for (int round = 0; round < schedule.rounds; ++round) {
    bool all_done = true;
    for (size_t t = 0; t < n; ++t) {
      if (!done[t]) all_done = false;
    }
    if (all_done) break;
    for (const HalfWordIndex::Entry& left : entries) {
      const Quat lq{left.q[0], left.q[1], left.q[2], left.q[3]};
      const Quat lconj = lq.conj();
      for (size_t t = 0; t < n; ++t) {
        if (done[t]) continue;
        const Quat residual = lconj * targets[t];
        index.for_each_near(residual, radius[t], [&](const HalfWordIndex::Entry&
                                                         right) {
          // exact re-score of the joined word
          const BraidWord w = reduce_join(left.packed, right.packed);
          if (w.length() > L) return;
          const double d = proj_distance(evaluate_quat(w), targets[t]);
          if (d < best_d[t] ||
              (d == best_d[t] && (left.packed < best_left[t] ||
                                  (left.packed == best_left[t] &&
                                   right.packed < best_right[t])))) {
            best_d[t] = d;
            best_left[t] = left.packed;
            best_right[t] = right.packed;
          }
        });
      }
    }
    for (size_t t = 0; t < n; ++t) {
      if (done[t]) continue;
      if (best_d[t] <= radius[t]) {
        done[t] = 1;
      } else {
        radius[t] *= schedule.growth;
      }
    }
  }

  for (size_t t = 0; t < n; ++t) {
    if (done[t]) {
      out[t] = MitmResult{reduce_join(best_left[t], best_right[t]), best_d[t],
                          true};
    } else {
      // no pair landed inside any probe ball: fall back to the best single
      // indexed half-word, flagged incomplete
      double bd = 4.0;
      std::uint64_t bw = 0;
      for (const HalfWordIndex::Entry& e : entries) {
        const Quat q{e.q[0], e.q[1], e.q[2], e.q[3]};
        const double d = proj_distance(q, targets[t]);
        if (d < bd || (d == bd && e.packed < bw)) {
          bd = d;
          bw = e.packed;
        }
      }
      const BraidWord w = word_from_packed(bw);
      out[t] = MitmResult{w, proj_distance(evaluate_quat(w), targets[t]), false};
    }
  }
  return out;
}

MitmResult mitm_search(const Gate& target, int L, const HalfWordIndex& index,
                       const RadiusSchedule& schedule) {
  const Quat q = target.canonical();
  return mitm_search_multi(std::span<const Quat>(&q, 1), L, index, schedule)[0];
}

Pseudogroup::Pseudogroup(std::string group_name, int L,
                         std::vector<Entry> entries)
    : group_name_(std::move(group_name)), L_(L), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("empty pseudogroup");
  if (!entries_[0].word.empty() || entries_[0].error != 0.0) {
    throw std::invalid_argument("identity entry must be the empty word");
  }
  for (Entry& e : entries_) {
    if (e.word.length() > L_) {
      throw std::invalid_argument("entry word longer than L");
    }
    e.approx = evaluate_quat(e.word);
  }
  min_ = 4.0;
  max_ = 0.0;
  double sum = 0.0;
  for (size_t i = 1; i < entries_.size(); ++i) {
    sum += entries_[i].error;
    min_ = std::min(min_, entries_[i].error);
    max_ = std::max(max_, entries_[i].error);
  }
  mean_ = sum / double(entries_.size() - 1);
}

void Pseudogroup::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "pseudogroup-v1\n";
  out << "group=" << group_name_ << "\n";
  out << "L=" << L_ << "\n";
  out << "count=" << entries_.size() << "\n";
  char buf[64];
  for (size_t i = 0; i < entries_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", entries_[i].error);
    out << i << " " << entries_[i].word.str() << " " << buf << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

Pseudogroup Pseudogroup::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open pseudogroup file: " + path);
  std::string line;
  if (!std::getline(in, line) || line != "pseudogroup-v1") {
    throw std::runtime_error("bad pseudogroup header in " + path);
  }
  auto field = [&](const std::string& key) {
    if (!std::getline(in, line) || line.rfind(key + "=", 0) != 0) {
      throw std::runtime_error("missing " + key + " in " + path);
    }
    return line.substr(key.size() + 1);
  };
  const std::string group_name = field("group");
  const int L = std::stoi(field("L"));
  const size_t count = std::stoul(field("count"));

  const FiniteGroup group = FiniteGroup::by_name(group_name);
  if (count != size_t(group.order())) {
    throw std::runtime_error("pseudogroup count does not match group order");
  }
  std::vector<Entry> entries(count);
  std::vector<char> seen(count, 0);
  for (size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated " + path);
    std::istringstream ls(line);
    size_t idx;
    std::string word_text;
    double err;
    if (!(ls >> idx >> word_text >> err) || idx >= count) {
      throw std::runtime_error("bad pseudogroup line: " + line);
    }
    if (seen[idx]) throw std::runtime_error("duplicate index in " + path);
    seen[idx] = 1;
    entries[idx].word = BraidWord::parse(word_text);
    entries[idx].error = err;
  }
  // verify stored errors against a fresh evaluation
  for (size_t i = 0; i < count; ++i) {
    const double fresh =
        proj_distance(evaluate_quat(entries[i].word), group.quat(int(i)));
    if (std::fabs(fresh - entries[i].error) > 1e-10) {
      throw std::runtime_error("pseudogroup error mismatch at index " +
                               std::to_string(i) + " in " + path);
    }
  }
  return Pseudogroup(group_name, L, std::move(entries));
}

Pseudogroup build_pseudogroup(const FiniteGroup& group, int L, BuildMode mode,
                              const ProgressFn& progress) {
  auto say = [&](const std::string& msg) {
    if (progress) progress(msg);
  };
  std::vector<Pseudogroup::Entry> entries(group.order());
  if (mode == BuildMode::exhaustive) {
    say("exhaustive sweep of weaves up to length " + std::to_string(L));
    const auto results = brute_force_multi(group.quats(), L);
    for (int i = 0; i < group.order(); ++i) {
      entries[i].word = results[i].word;
      entries[i].error = results[i].error;
    }
  } else {
    const int half = ((L / 2) + 1) & ~1;  // smallest even half covering L
    say("building half-word index, half length " + std::to_string(half));
    HalfWordIndex index(half);
    say("index entries: " + std::to_string(index.size()));
    const auto results =
        mitm_search_multi(group.quats(), L, index, default_schedule(L));
    for (int i = 0; i < group.order(); ++i) {
      if (!results[i].complete) {
        throw std::runtime_error("meet-in-the-middle search incomplete for "
                                 "element " + std::to_string(i));
      }
      entries[i].word = results[i].word;
      entries[i].error = results[i].error;
    }
  }
  // The identity always gets the empty word. From L = 24 on the weave set
  // contains exact projective identities (full-twist powers are central and
  // scalar), and float noise can hand one of them the scan win; the empty
  // word is error 0 as well and strictly shorter.
  entries[0] = Pseudogroup::Entry{};
  say("assembling table");
  return Pseudogroup(group.name(), L, std::move(entries));
}

}  // namespace weavehash
