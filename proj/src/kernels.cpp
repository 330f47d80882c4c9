#include "weavehash/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#ifdef WEAVEHASH_HAVE_OPENMP
#include <omp.h>
#endif

namespace weavehash {

namespace {

constexpr int kExps[4] = {2, -2, 4, -4};

bool better(const ScanBest& a, const ScanBest& b) {
  return a.absdot > b.absdot || (a.absdot == b.absdot && a.index < b.index);
}

}  // namespace

ScanBest best_match_serial(std::span<const Quat> points, const Quat& target) {
  ScanBest best;
  for (size_t i = 0; i < points.size(); ++i) {
    const double d = std::fabs(dot4(points[i], target));
    if (d > best.absdot) best = ScanBest{d, static_cast<std::uint32_t>(i)};
  }
  return best;
}

ScanBest best_match_parallel(std::span<const Quat> points, const Quat& target) {
  ScanBest best;
#ifdef WEAVEHASH_HAVE_OPENMP
#pragma omp parallel
  {
    ScanBest local;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
      const double d = std::fabs(dot4(points[i], target));
      if (d > local.absdot) local = ScanBest{d, static_cast<std::uint32_t>(i)};
    }
#pragma omp critical
    if (better(local, best)) best = local;
  }
#else
  best = best_match_serial(points, target);
#endif
  return best;
}

std::uint64_t pack_word(std::span<const Block> blocks) {
  if (blocks.size() > 29) throw std::invalid_argument("word too long to pack");
  std::uint64_t packed = blocks.size();
  if (!blocks.empty()) packed |= std::uint64_t(blocks[0].generator - 1) << 5;
  for (size_t i = 0; i < blocks.size(); ++i) {
    packed |= std::uint64_t(exponent_rank(blocks[i].exponent)) << (6 + 2 * i);
  }
  return packed;
}

std::vector<Block> unpack_word(std::uint64_t packed) {
  const int n = packed & 31;
  int gen = 1 + ((packed >> 5) & 1);
  std::vector<Block> blocks;
  blocks.reserve(n);
  for (int i = 0; i < n; ++i) {
    const int e = kExps[(packed >> (6 + 2 * i)) & 3];
    blocks.push_back(Block{static_cast<std::uint8_t>(gen), static_cast<std::int8_t>(e)});
    gen = 3 - gen;
  }
  return blocks;
}

namespace {

// DFS below one fixed first block; candidate updates keep the first
// (dictionary-order) word among exact absdot ties.
struct SubtreeScan {
  int max_len;
  std::span<const Quat> targets;
  const GeneratorSet& gens;
  std::uint32_t subtree;
  std::vector<WeaveBest>& best;  // per target
  std::uint64_t seq = 0;
  Block blocks[40];
  Quat qs[41];

  void run(int first_gen, int first_exp) {
    blocks[0] = Block{static_cast<std::uint8_t>(first_gen),
                      static_cast<std::int8_t>(first_exp)};
    qs[0] = Quat{};
    qs[1] = gens.block_quat(first_gen, first_exp);
    const int len = std::abs(first_exp);
    if (len > max_len) return;
    visit(1, len, first_gen);
  }

  void visit(int depth, int len, int last_gen) {
    const Quat q = canonical_sign(qs[depth]);
    for (size_t t = 0; t < targets.size(); ++t) {
      const double d = std::fabs(dot4(q, targets[t]));
      if (d > best[t].absdot) {
        best[t] = WeaveBest{d, pack_word({blocks, size_t(depth)}), subtree, seq};
      }
    }
    ++seq;
    if (len + 2 > max_len) return;
    const int g = 3 - last_gen;
    for (int e : kExps) {
      const int nlen = len + std::abs(e);
      if (nlen > max_len) continue;
      blocks[depth] = Block{static_cast<std::uint8_t>(g), static_cast<std::int8_t>(e)};
      qs[depth + 1] = qs[depth] * gens.block_quat(g, e);
      visit(depth + 1, nlen, g);
    }
  }
};

}  // namespace

void best_weaves_serial(int max_len, std::span<const Quat> targets,
                        std::span<WeaveBest> best) {
  for_each_weave_upto(max_len, [&](std::span<const Block> blocks, int,
                                   const Quat& q) {
    for (size_t t = 0; t < targets.size(); ++t) {
      const double d = std::fabs(dot4(q, targets[t]));
      if (d > best[t].absdot) best[t] = WeaveBest{d, pack_word(blocks), 0, 0};
    }
  });
}

void best_weaves_parallel(int max_len, std::span<const Quat> targets,
                          std::span<WeaveBest> best) {
  if (max_len < 2) return;
  const auto& gens = GeneratorSet::instance();
  // eight independent subtrees, one per first block
  std::vector<std::vector<WeaveBest>> partial(
      8, std::vector<WeaveBest>(targets.size()));
#ifdef WEAVEHASH_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (int s = 0; s < 8; ++s) {
    SubtreeScan scan{max_len, targets, gens, static_cast<std::uint32_t>(s),
                     partial[s]};
    scan.run(1 + s / 4, kExps[s % 4]);
  }
  // merge in subtree order so ties resolve exactly as in the serial scan
  for (int s = 0; s < 8; ++s) {
    for (size_t t = 0; t < targets.size(); ++t) {
      if (partial[s][t].absdot > best[t].absdot) best[t] = partial[s][t];
    }
  }
}

namespace {

struct SpacingGrid {
  double h;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> cells;
  std::vector<Quat> pts;  // both signs of every input point

  static std::uint64_t key(int a, int b, int c, int d) {
    auto u = [](int v) { return std::uint64_t(std::uint16_t(std::int16_t(v))); };
    return u(a) | (u(b) << 16) | (u(c) << 32) | (u(d) << 48);
  }

  std::uint64_t cell_of(const Quat& q) const {
    return key(int(std::floor(q.w / h)), int(std::floor(q.x / h)),
               int(std::floor(q.y / h)), int(std::floor(q.z / h)));
  }

  explicit SpacingGrid(std::span<const Quat> points) {
    const double n = double(points.size());
    // ~one point per cell around the expected nearest-neighbour scale
    h = std::min(0.5, 1.8 * std::cbrt(3.0 * M_PI / (4.0 * n)));
    pts.reserve(2 * points.size());
    for (const Quat& p : points) {
      pts.push_back(p);
      pts.push_back(Quat{-p.w, -p.x, -p.y, -p.z});
    }
    for (std::uint32_t i = 0; i < pts.size(); ++i) {
      cells[cell_of(pts[i])].push_back(i);
    }
  }

  // nearest other point (either sign), excluding index pair `self`
  double nearest(std::uint32_t self) const {
    const Quat& p = pts[self];
    const int cw = int(std::floor(p.w / h)), cx = int(std::floor(p.x / h));
    const int cy = int(std::floor(p.y / h)), cz = int(std::floor(p.z / h));
    double best = 4.0;
    for (int ring = 0;; ++ring) {
      bool any_cell = false;
      for (int a = -ring; a <= ring; ++a) {
        for (int b = -ring; b <= ring; ++b) {
          for (int c = -ring; c <= ring; ++c) {
            for (int d = -ring; d <= ring; ++d) {
              const int cheb = std::max({std::abs(a), std::abs(b), std::abs(c),
                                         std::abs(d)});
              if (cheb != ring) continue;
              auto it = cells.find(key(cw + a, cx + b, cy + c, cz + d));
              if (it == cells.end()) continue;
              any_cell = true;
              for (std::uint32_t j : it->second) {
                if ((j >> 1) == (self >> 1)) continue;  // same input point
                const double dw = p.w - pts[j].w, dx = p.x - pts[j].x;
                const double dy = p.y - pts[j].y, dz = p.z - pts[j].z;
                const double d2 = dw * dw + dx * dx + dy * dy + dz * dz;
                if (d2 < best) best = d2;
              }
            }
          }
        }
      }
      // everything beyond this ring is at least ring*h away
      if (best <= double(ring) * h * double(ring) * h) break;
      if (ring > 4.0 / h + 2 && !any_cell) break;  // empty input guard
    }
    return std::sqrt(best);
  }
};

}  // namespace

std::vector<double> nn_spacings_serial(std::span<const Quat> points) {
  if (points.size() < 2) throw std::invalid_argument("need at least 2 points");
  SpacingGrid grid(points);
  std::vector<double> out(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    out[i] = grid.nearest(static_cast<std::uint32_t>(2 * i));
  }
  return out;
}

std::vector<double> nn_spacings_parallel(std::span<const Quat> points) {
  if (points.size() < 2) throw std::invalid_argument("need at least 2 points");
  SpacingGrid grid(points);
  std::vector<double> out(points.size());
#ifdef WEAVEHASH_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(points.size()); ++i) {
    out[i] = grid.nearest(static_cast<std::uint32_t>(2 * i));
  }
  return out;
}

}  // namespace weavehash
