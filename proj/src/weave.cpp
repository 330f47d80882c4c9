#include "weavehash/weave.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace weavehash {

namespace {

int exp_index(int e) {
  switch (e) {
    case 2: return 0;
    case -2: return 1;
    case 4: return 2;
    case -4: return 3;
  }
  throw std::invalid_argument("block exponent must be one of +-2, +-4");
}

std::array<cplx, 4> matmul(const std::array<cplx, 4>& a,
                           const std::array<cplx, 4>& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

std::array<cplx, 4> dagger(const std::array<cplx, 4>& a) {
  return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])};
}

void validate_canonical(std::span<const Block> blocks) {
  for (size_t i = 0; i < blocks.size(); ++i) {
    const Block& b = blocks[i];
    if (b.generator != 1 && b.generator != 2) {
      throw std::invalid_argument("block generator must be 1 or 2");
    }
    exp_index(b.exponent);
    if (i > 0 && blocks[i].generator == blocks[i - 1].generator) {
      throw std::invalid_argument("adjacent blocks must alternate generators");
    }
  }
}

}  // namespace

int exponent_rank(int e) { return exp_index(e); }

bool lex_less(std::span<const Block> a, std::span<const Block> b) {
  const size_t n = std::min(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    if (a[i].generator != b[i].generator) return a[i].generator < b[i].generator;
    const int ra = exponent_rank(a[i].exponent);
    const int rb = exponent_rank(b[i].exponent);
    if (ra != rb) return ra < rb;
  }
  return a.size() < b.size();
}

BraidWord::BraidWord(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  validate_canonical(blocks_);
}

int BraidWord::length() const {
  int len = 0;
  for (const Block& b : blocks_) len += std::abs(b.exponent);
  return len;
}

BraidWord BraidWord::inverse() const {
  std::vector<Block> rev(blocks_.rbegin(), blocks_.rend());
  for (Block& b : rev) b.exponent = static_cast<std::int8_t>(-b.exponent);
  return BraidWord(std::move(rev));
}

std::string BraidWord::str() const {
  if (blocks_.empty()) return "e";
  std::ostringstream out;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out << '.';
    out << int(blocks_[i].generator) << '^' << int(blocks_[i].exponent);
  }
  return out.str();
}

BraidWord BraidWord::parse(const std::string& text) {
  if (text == "e") return BraidWord{};
  std::vector<Block> blocks;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, '.')) {
    const size_t caret = part.find('^');
    if (caret == std::string::npos) {
      throw std::invalid_argument("malformed block (expected g^e): " + part);
    }
    int g, e;
    try {
      g = std::stoi(part.substr(0, caret));
      e = std::stoi(part.substr(caret + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed block (expected g^e): " + part);
    }
    blocks.push_back(Block{static_cast<std::uint8_t>(g), static_cast<std::int8_t>(e)});
  }
  if (blocks.empty()) throw std::invalid_argument("empty word text");
  return BraidWord(std::move(blocks));
}

GeneratorSet::GeneratorSet() {
  const double tau = (std::sqrt(5.0) - 1.0) / 2.0;
  const double st = std::sqrt(tau);
  auto phase = [](double a) { return cplx{std::cos(a), std::sin(a)}; };
  sigma_[0] = {phase(-4.0 * M_PI / 5.0), cplx{0, 0},
               cplx{0, 0}, -phase(-2.0 * M_PI / 5.0)};
  sigma_[1] = {-tau * phase(-M_PI / 5.0), -st * phase(2.0 * M_PI / 5.0),
               -st * phase(2.0 * M_PI / 5.0), cplx{-tau, 0}};
  for (int g = 0; g < 2; ++g) {
    const auto sq = matmul(sigma_[g], sigma_[g]);
    mat_[g][0] = sq;                     // +2
    mat_[g][1] = dagger(sq);             // -2
    mat_[g][2] = matmul(sq, sq);         // +4
    mat_[g][3] = dagger(mat_[g][2]);     // -4
    for (int i = 0; i < 4; ++i) {
      quat_[g][i] = Gate::from_entries(mat_[g][i]).canonical();
    }
  }
}

const std::array<cplx, 4>& GeneratorSet::sigma(int generator) const {
  if (generator != 1 && generator != 2) {
    throw std::invalid_argument("generator must be 1 or 2");
  }
  return sigma_[generator - 1];
}

const std::array<cplx, 4>& GeneratorSet::block_matrix(int generator,
                                                      int exponent) const {
  if (generator != 1 && generator != 2) {
    throw std::invalid_argument("generator must be 1 or 2");
  }
  return mat_[generator - 1][exp_index(exponent)];
}

const Quat& GeneratorSet::block_quat(int generator, int exponent) const {
  if (generator != 1 && generator != 2) {
    throw std::invalid_argument("generator must be 1 or 2");
  }
  return quat_[generator - 1][exp_index(exponent)];
}

const GeneratorSet& GeneratorSet::instance() {
  static const GeneratorSet gens;
  return gens;
}

Gate evaluate(const BraidWord& w, const GeneratorSet& gens) {
  std::array<cplx, 4> acc = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
  for (const Block& b : w.blocks()) {
    acc = matmul(acc, gens.block_matrix(b.generator, b.exponent));
  }
  return Gate::from_entries(acc);
}

Quat evaluate_quat(const BraidWord& w, const GeneratorSet& gens) {
  Quat acc{};
  for (const Block& b : w.blocks()) {
    acc = acc * gens.block_quat(b.generator, b.exponent);
  }
  return canonical_sign(acc.normalized());
}

BraidWord reduce(std::span<const Block> raw) {
  std::vector<std::pair<int, int>> stack;  // (generator, exponent)
  auto residue = [](int e) {
    int r = e % 10;
    if (r > 5) r -= 10;
    if (r < -5) r += 10;
    return r;  // even exponents land in {-4, -2, 0, 2, 4}
  };
  for (const Block& b : raw) {
    if (b.generator != 1 && b.generator != 2) {
      throw std::invalid_argument("block generator must be 1 or 2");
    }
    if (b.exponent % 2 != 0) {
      throw std::invalid_argument("weave exponents must be even");
    }
    int g = b.generator;
    int e = residue(b.exponent);
    while (e != 0) {
      if (!stack.empty() && stack.back().first == g) {
        e = residue(stack.back().second + e);
        stack.pop_back();
        continue;
      }
      stack.emplace_back(g, e);
      break;
    }
  }
  std::vector<Block> blocks;
  blocks.reserve(stack.size());
  for (const auto& [g, e] : stack) {
    blocks.push_back(Block{static_cast<std::uint8_t>(g), static_cast<std::int8_t>(e)});
  }
  return BraidWord(std::move(blocks));
}

BraidWord concatenate_reduce(const BraidWord& a, const BraidWord& b) {
  std::vector<Block> joined(a.blocks().begin(), a.blocks().end());
  joined.insert(joined.end(), b.blocks().begin(), b.blocks().end());
  return reduce(joined);
}

std::uint64_t count_weaves(int L) {
  if (L < 0 || L % 2 != 0) throw std::invalid_argument("L must be even and >= 0");
  if (L == 0) return 1;
  // n2/n4: weaves of the current length whose last block is +-2 / +-4
  std::uint64_t n2 = 4, n4 = 0;
  for (int len = 2; len < L; len += 2) {
    const std::uint64_t next2 = 2 * (n2 + n4);
    const std::uint64_t next4 = n2;
    n2 = next2;
    n4 = next4;
  }
  return n2 + n4;
}

std::uint64_t count_weaves_upto(int L) {
  if (L < 0 || L % 2 != 0) throw std::invalid_argument("L must be even and >= 0");
  std::uint64_t total = 0;
  for (int len = 0; len <= L; len += 2) total += count_weaves(len);
  return total;
}

void enumerate_weaves(int L, const std::function<void(const BraidWord&)>& fn) {
  if (L < 2 || L % 2 != 0) throw std::invalid_argument("L must be even and >= 2");
  for_each_weave_upto(L, [&](std::span<const Block> blocks, int len, const Quat&) {
    if (len == L) fn(BraidWord(std::vector<Block>(blocks.begin(), blocks.end())));
  });
}

}  // namespace weavehash
