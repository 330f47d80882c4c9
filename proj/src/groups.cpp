#include "weavehash/groups.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace weavehash {

namespace {

// Table lookups. Elements sit ~0.3 apart, while sqrt(2-2|dot|) between two
// float copies of the same element can read up to ~3e-8 (norms are unit only
// to ~1e-16), so anything in between is unambiguous.
constexpr double kMatchTol = 1e-6;

Quat axis_rotation(double nx, double ny, double nz, double angle) {
  const double len = std::sqrt(nx * nx + ny * ny + nz * nz);
  const double c = std::cos(0.5 * angle), s = std::sin(0.5 * angle) / len;
  return Quat{c, s * nx, s * ny, s * nz};
}

int find_element(const std::vector<Quat>& quats, const Quat& q) {
  for (size_t i = 0; i < quats.size(); ++i) {
    if (proj_distance(quats[i], q) < kMatchTol) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<Quat> gens)
    : name_(std::move(name)) {
  // projective closure over canonical representatives
  std::vector<Quat> elems{Quat{}};
  for (const Quat& g : gens) {
    if (find_element(elems, g) < 0) elems.push_back(canonical_sign(g.normalized()));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const size_t n = elems.size();
    for (size_t i = 0; i < n && elems.size() <= 128; ++i) {
      for (size_t j = 0; j < n; ++j) {
        const Quat p = canonical_sign((elems[i] * elems[j]).normalized());
        if (find_element(elems, p) < 0) {
          elems.push_back(p);
          grew = true;
        }
      }
    }
  }
  if (elems.size() > 128) {
    throw std::runtime_error("group closure did not stabilize");
  }

  std::sort(elems.begin(), elems.end(), [](const Quat& a, const Quat& b) {
    auto key = [](const Quat& q) {
      return std::array<double, 4>{-q.w, -q.x, -q.y, -q.z};
    };
    return key(a) < key(b);
  });
  quats_ = std::move(elems);
  if (proj_distance(quats_[0], Quat{}) > kMatchTol) {
    throw std::runtime_error("identity is not the first group element");
  }

  const int n = order();
  mul_.assign(size_t(n) * n, 0);
  inv_.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    bool inv_found = false;
    for (int j = 0; j < n; ++j) {
      const int k = find_element(quats_, canonical_sign(quats_[i] * quats_[j]));
      if (k < 0) throw std::runtime_error("multiplication left the group");
      mul_[size_t(i) * n + j] = static_cast<std::uint8_t>(k);
      if (k == 0) {
        inv_[i] = static_cast<std::uint8_t>(j);
        inv_found = true;
      }
    }
    if (!inv_found) throw std::runtime_error("element without inverse");
  }
}

double FiniteGroup::rotation_angle(int i) const {
  const double w = std::min(1.0, std::max(-1.0, quats_[i].w));
  return 2.0 * std::acos(std::fabs(w));
}

FiniteGroup FiniteGroup::icosahedral() {
  // Five-fold axes along the vertices (0, +-1, +-phi) of the icosahedron
  // and their cyclic permutations.
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  return FiniteGroup("icosahedral",
                     {axis_rotation(0.0, 1.0, phi, 2.0 * M_PI / 5.0),
                      axis_rotation(1.0, phi, 0.0, 2.0 * M_PI / 5.0)});
}

FiniteGroup FiniteGroup::cubic() {
  return FiniteGroup("cubic", {axis_rotation(1.0, 0.0, 0.0, M_PI / 2.0),
                               axis_rotation(0.0, 1.0, 0.0, M_PI / 2.0)});
}

FiniteGroup FiniteGroup::by_name(const std::string& name) {
  if (name == "icosahedral") return icosahedral();
  if (name == "cubic") return cubic();
  throw std::invalid_argument("unknown group: " + name);
}

int closing_element(const FiniteGroup& group, std::span<const int> indices) {
  int acc = 0;
  for (int i : indices) {
    if (i < 0 || i >= group.order()) throw std::invalid_argument("index out of range");
    acc = group.mul(acc, i);
  }
  return group.inv(acc);
}

}  // namespace weavehash
