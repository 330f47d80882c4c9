#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "weavehash/groups.hpp"
#include "weavehash/halfword_index.hpp"
#include "weavehash/weave.hpp"

namespace weavehash {

// Thrown when an exhaustive search is asked to sweep more than the
// configured length budget allows.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kExhaustiveLimit = 32;

struct SearchResult {
  BraidWord word;
  double error = 0.0;
};

// Best weave of even length <= L_max (the empty word counts as length 0)
// for one target; dictionary-first on exact ties.
SearchResult brute_force(const Gate& target, int L_max,
                         int max_exhaustive = kExhaustiveLimit);

// Same search for many targets in one sweep of the weave tree.
std::vector<SearchResult> brute_force_multi(std::span<const Quat> targets,
                                            int L_max,
                                            int max_exhaustive = kExhaustiveLimit);

struct RadiusSchedule {
  double r0 = 1e-3;     // first probe radius
  double growth = 2.0;  // multiplied in after a fruitless round
  int rounds = 4;
};

// r0 at the predicted mean brute-force error for length L.
RadiusSchedule default_schedule(int L);

struct MitmResult {
  BraidWord word;
  double error = 0.0;
  // A hit inside some probe radius proves the word is optimal over all
  // weaves of length <= L. Without one the best single indexed half-word
  // is returned and the flag stays false.
  bool complete = false;
};

// Meet-in-the-middle search: every word of length <= L splits into two
// indexed halves, so probing the index around conj(q_half) * target at
// radius r finds every candidate with error <= r.
std::vector<MitmResult> mitm_search_multi(std::span<const Quat> targets, int L,
                                          const HalfWordIndex& index,
                                          const RadiusSchedule& schedule);
MitmResult mitm_search(const Gate& target, int L, const HalfWordIndex& index,
                       const RadiusSchedule& schedule);

// Best-approximation table for a finite group: entry i is the weave of
// length <= L closest to group element i. Entry 0 is the empty word with
// error 0 (the identity); stats exclude it.
class Pseudogroup {
 public:
  struct Entry {
    BraidWord word;
    double error = 0.0;
    Quat approx;  // canonical quat of evaluate(word), cached
  };

  Pseudogroup(std::string group_name, int L, std::vector<Entry> entries);

  const std::string& group_name() const { return group_name_; }
  int L() const { return L_; }
  int size() const { return static_cast<int>(entries_.size()); }
  const Entry& entry(int i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  double mean_error() const { return mean_; }
  double min_error() const { return min_; }
  double max_error() const { return max_; }

  void save(const std::string& path) const;
  // Re-evaluates every word and rejects files whose stored errors drift
  // more than 1e-10 from the recomputed ones.
  static Pseudogroup load(const std::string& path);

 private:
  std::string group_name_;
  int L_;
  std::vector<Entry> entries_;
  double mean_ = 0.0, min_ = 0.0, max_ = 0.0;
};

enum class BuildMode { exhaustive, mitm };

using ProgressFn = std::function<void(const std::string&)>;

Pseudogroup build_pseudogroup(const FiniteGroup& group, int L, BuildMode mode,
                              const ProgressFn& progress = nullptr);

}  // namespace weavehash
