#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "weavehash/weave.hpp"

namespace weavehash {

// Hot loops used by the searches, each in a serial reference version and an
// OpenMP version. Results are bitwise identical: per-thread partial results
// are merged in a deterministic order independent of scheduling.

struct ScanBest {
  double absdot = -1.0;
  std::uint32_t index = 0;
};

// argmax_i |<points[i], target>|, smallest index on exact ties.
ScanBest best_match_serial(std::span<const Quat> points, const Quat& target);
ScanBest best_match_parallel(std::span<const Quat> points, const Quat& target);

// Braid word packed into a u64: bits 0..4 block count, bit 5 first
// generator - 1, two bits per block exponent (+2, -2, +4, -4) from bit 6.
std::uint64_t pack_word(std::span<const Block> blocks);
std::vector<Block> unpack_word(std::uint64_t packed);

struct WeaveBest {
  double absdot = -1.0;
  std::uint64_t packed = 0;   // best word so far
  std::uint32_t subtree = 0;  // dictionary-order bookkeeping for merging
  std::uint64_t seq = 0;
};

// For every target, the weave of even length in [2, max_len] whose quaternion
// maximizes |<q_w, target>|; dictionary-first on exact ties. Callers seed
// `best` (e.g. with the empty word) before the scan.
void best_weaves_serial(int max_len, std::span<const Quat> targets,
                        std::span<WeaveBest> best);
void best_weaves_parallel(int max_len, std::span<const Quat> targets,
                          std::span<WeaveBest> best);

// Nearest-neighbour spacing (operator-norm metric) of every point to the
// rest of the cloud, via a coarse 4d grid with shell expansion.
std::vector<double> nn_spacings_serial(std::span<const Quat> points);
std::vector<double> nn_spacings_parallel(std::span<const Quat> points);

}  // namespace weavehash
