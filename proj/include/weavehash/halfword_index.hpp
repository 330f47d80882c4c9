#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "weavehash/weave.hpp"

namespace weavehash {

// All canonical weaves of even length <= half_len (including the empty word)
// as float quaternions on a spatial hash, queryable by "every stored word
// within operator distance r of q". Built once, then shared by many
// meet-in-the-middle searches.
class HalfWordIndex {
 public:
  struct Entry {
    float q[4];            // canonical-sign quaternion, float precision
    std::uint64_t packed;  // pack_word encoding
  };

  // half_len must be even and >= 0; even halves make every even-length word
  // of length <= 2*half_len splittable into two indexed halves.
  explicit HalfWordIndex(int half_len, double cell = 0.01);

  int half_len() const { return half_len_; }
  double cell_size() const { return cell_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const Entry> entries() const { return entries_; }

  // Calls f(entry) for every entry within `radius` of q or of -q (operator
  // metric ~ 4d Euclidean at these scales). A float guard is added so no
  // true match inside `radius` is missed; callers re-score hits exactly.
  template <class F>
  void for_each_near(const Quat& q, double radius, F&& f) const {
    const double r = radius + kFloatGuard + 1e-3 * radius;
    if (r >= cell_) {  // big-radius queries just sweep everything
      for (const Entry& e : entries_) {
        if (within(e, q, r) || within_neg(e, q, r)) f(e);
      }
      return;
    }
    probe(q, r, f);
    if (q.w < r) {  // stored points have w >= 0; -q only reachable here
      probe(Quat{-q.w, -q.x, -q.y, -q.z}, r, f);
    }
  }

 private:
  static constexpr double kFloatGuard = 1e-6;

  static bool within(const Entry& e, const Quat& q, double r) {
    const double dw = e.q[0] - q.w, dx = e.q[1] - q.x;
    const double dy = e.q[2] - q.y, dz = e.q[3] - q.z;
    return dw * dw + dx * dx + dy * dy + dz * dz <= r * r;
  }
  static bool within_neg(const Entry& e, const Quat& q, double r) {
    const double dw = e.q[0] + q.w, dx = e.q[1] + q.x;
    const double dy = e.q[2] + q.y, dz = e.q[3] + q.z;
    return dw * dw + dx * dx + dy * dy + dz * dz <= r * r;
  }

  static std::uint64_t cell_key(int a, int b, int c, int d) {
    auto u = [](int v) { return std::uint64_t(std::uint16_t(std::int16_t(v))); };
    return u(a) | (u(b) << 16) | (u(c) << 32) | (u(d) << 48);
  }
  int coord_cell(double v) const { return int(std::floor(v / cell_)); }
  std::uint64_t entry_cell(const Entry& e) const {
    return cell_key(coord_cell(e.q[0]), coord_cell(e.q[1]), coord_cell(e.q[2]),
                    coord_cell(e.q[3]));
  }
  // (start, count) slice of the sorted entry array, or count 0
  std::pair<std::uint32_t, std::uint32_t> lookup(std::uint64_t cell) const;

  template <class F>
  void probe(const Quat& q, double r, F&& f) const {
    int lo[4], hi[4];
    const double c[4] = {q.w, q.x, q.y, q.z};
    for (int d = 0; d < 4; ++d) {
      lo[d] = coord_cell(c[d] - r);
      hi[d] = coord_cell(c[d] + r);
    }
    for (int a = lo[0]; a <= hi[0]; ++a)
      for (int b = lo[1]; b <= hi[1]; ++b)
        for (int cc = lo[2]; cc <= hi[2]; ++cc)
          for (int d = lo[3]; d <= hi[3]; ++d) {
            const auto [start, count] = lookup(cell_key(a, b, cc, d));
            for (std::uint32_t i = 0; i < count; ++i) {
              const Entry& e = entries_[start + i];
              if (within(e, q, r)) f(e);
            }
          }
  }

  int half_len_;
  double cell_;
  std::vector<Entry> entries_;       // sorted by cell
  std::vector<std::uint64_t> keys_;  // open-addressed: cell id
  std::vector<std::uint64_t> vals_;  // start << 32 | count
  std::uint64_t mask_ = 0;
};

}  // namespace weavehash
