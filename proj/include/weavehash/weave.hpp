#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "weavehash/su2.hpp"

namespace weavehash {

// One segment of a weave: generator in {1, 2}, exponent in {+2, -2, +4, -4}.
struct Block {
  std::uint8_t generator;
  std::int8_t exponent;

  friend bool operator==(const Block&, const Block&) = default;
};

// Exponent order used everywhere ties and enumeration need an order:
// +2 < -2 < +4 < -4.
int exponent_rank(int e);

// Dictionary order on block sequences (prefix sorts first, blocks compared
// by generator then exponent_rank). This is also the enumeration order.
bool lex_less(std::span<const Block> a, std::span<const Block> b);

// Canonical weave word: adjacent blocks alternate generators, every exponent
// is one of +-2, +-4. The empty word is the identity.
class BraidWord {
 public:
  BraidWord() = default;
  explicit BraidWord(std::vector<Block> blocks);  // validates, throws

  std::span<const Block> blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }
  int length() const;  // total crossings = sum |exponent|

  BraidWord inverse() const;

  // "1^2.2^-2.1^4" with "e" for the empty word.
  std::string str() const;
  static BraidWord parse(const std::string& text);

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  std::vector<Block> blocks_;
};

// Elementary braid matrices for three Fibonacci anyons restricted to the
// total-charge-tau block, and their canonical projective quaternions.
class GeneratorSet {
 public:
  GeneratorSet();

  const std::array<cplx, 4>& sigma(int generator) const;  // 1 or 2
  // U(2) matrix of sigma_g^e for e in {+-2, +-4}.
  const std::array<cplx, 4>& block_matrix(int generator, int exponent) const;
  // Canonical quaternion of the same block (projective class).
  const Quat& block_quat(int generator, int exponent) const;

  static const GeneratorSet& instance();

 private:
  std::array<cplx, 4> sigma_[2];
  std::array<cplx, 4> mat_[2][4];
  Quat quat_[2][4];
};

// Full U(2) product of the word's blocks, phases included.
Gate evaluate(const BraidWord& w, const GeneratorSet& gens = GeneratorSet::instance());

// Canonical projective quaternion of evaluate(w); fast path used by searches.
Quat evaluate_quat(const BraidWord& w, const GeneratorSet& gens = GeneratorSet::instance());

// Collapse an arbitrary even-exponent sequence to canonical form: merge
// same-generator neighbours, reduce exponents mod 10 into {+-2, +-4, 0},
// drop zero blocks and repeat to a fixed point.
BraidWord reduce(std::span<const Block> raw);

// reduce(a + b); evaluates to the same projective class as the two words
// multiplied in order.
BraidWord concatenate_reduce(const BraidWord& a, const BraidWord& b);

// Number of canonical weaves of exact length L (even, L >= 0; N(0) = 1 for
// the empty word). Exact in uint64 through L = 60.
std::uint64_t count_weaves(int L);

// Sum of count_weaves over even lengths 0..L: size of the search space the
// approximation routines scan.
std::uint64_t count_weaves_upto(int L);

// All canonical weaves of exact length L (even, >= 2) in dictionary order.
void enumerate_weaves(int L, const std::function<void(const BraidWord&)>& fn);

// Exponents in enumeration (dictionary) order.
inline constexpr int kExponentOrder[4] = {2, -2, 4, -4};

// Depth-first scan over every canonical weave of even length in [2, max_len],
// in dictionary order, with the running quaternion product. fn receives
// (blocks-so-far, length, canonical quat of the product). The empty word is
// not visited. FnT: void(std::span<const Block>, int, const Quat&).
template <class FnT>
void for_each_weave_upto(int max_len, FnT&& fn,
                         const GeneratorSet& gens = GeneratorSet::instance()) {
  if (max_len < 2) return;
  Block blocks[40];
  Quat qs[41];
  qs[0] = Quat{};
  struct Rec {
    Block* blocks;
    Quat* qs;
    int max_len;
    const GeneratorSet& gens;
    FnT& fn;
    void go(int depth, int len, int prev_gen) {
      for (int g = 1; g <= 2; ++g) {
        if (g == prev_gen) continue;
        for (int e : kExponentOrder) {
          const int nlen = len + (e < 0 ? -e : e);
          if (nlen > max_len) continue;
          blocks[depth] = Block{static_cast<std::uint8_t>(g),
                                static_cast<std::int8_t>(e)};
          qs[depth + 1] = qs[depth] * gens.block_quat(g, e);
          fn(std::span<const Block>(blocks, depth + 1), nlen,
             canonical_sign(qs[depth + 1]));
          if (nlen + 2 <= max_len) go(depth + 1, nlen, g);
        }
      }
    }
  };
  Rec rec{blocks, qs, max_len, gens, fn};
  rec.go(0, 0, 0);
}

}  // namespace weavehash
