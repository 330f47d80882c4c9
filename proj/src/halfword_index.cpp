#include "weavehash/halfword_index.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "weavehash/kernels.hpp"

namespace weavehash {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

HalfWordIndex::HalfWordIndex(int half_len, double cell)
    : half_len_(half_len), cell_(cell) {
  if (half_len < 0 || half_len % 2 != 0) {
    throw std::invalid_argument("half_len must be even and >= 0");
  }
  if (!(cell > 0.0 && cell <= 0.25)) {
    throw std::invalid_argument("cell size must be in (0, 0.25]");
  }

  entries_.push_back(Entry{{1.0f, 0.0f, 0.0f, 0.0f}, 0});  // empty word
  for_each_weave_upto(half_len, [&](std::span<const Block> blocks, int,
                                    const Quat& q) {
    entries_.push_back(Entry{{float(q.w), float(q.x), float(q.y), float(q.z)},
                             pack_word(blocks)});
  });

  std::sort(entries_.begin(), entries_.end(),
            [this](const Entry& a, const Entry& b) {
              const std::uint64_t ca = entry_cell(a), cb = entry_cell(b);
              if (ca != cb) return ca < cb;
              return a.packed < b.packed;  // stable layout within a cell
            });

  std::size_t unique = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i == 0 || entry_cell(entries_[i]) != entry_cell(entries_[i - 1])) ++unique;
  }
  std::uint64_t slots = std::bit_ceil(2 * unique + 2);
  keys_.assign(slots, 0);
  vals_.assign(slots, 0);
  mask_ = slots - 1;

  std::size_t run = 0;
  for (std::size_t i = 1; i <= entries_.size(); ++i) {
    if (i == entries_.size() ||
        entry_cell(entries_[i]) != entry_cell(entries_[run])) {
      const std::uint64_t cell_id = entry_cell(entries_[run]);
      std::uint64_t slot = mix64(cell_id) & mask_;
      while (vals_[slot] != 0) slot = (slot + 1) & mask_;
      keys_[slot] = cell_id;
      vals_[slot] = (std::uint64_t(run) << 32) | std::uint64_t(i - run);
      run = i;
    }
  }
}

std::pair<std::uint32_t, std::uint32_t> HalfWordIndex::lookup(
    std::uint64_t cell) const {
  std::uint64_t slot = mix64(cell) & mask_;
  while (vals_[slot] != 0) {
    if (keys_[slot] == cell) {
      return {std::uint32_t(vals_[slot] >> 32), std::uint32_t(vals_[slot])};
    }
    slot = (slot + 1) & mask_;
  }
  return {0, 0};
}

}  // namespace weavehash
