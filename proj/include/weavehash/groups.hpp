#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "weavehash/su2.hpp"

namespace weavehash {

// Finite rotation group as canonical SU(2) representatives (projective
// classes). Elements are deterministically ordered with the identity at
// index 0; mul/inv tables are closed and verified at build time.
class FiniteGroup {
 public:
  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(quats_.size()); }
  const std::vector<Quat>& quats() const { return quats_; }
  const Quat& quat(int i) const { return quats_[i]; }
  Gate element(int i) const { return Gate::from_quat(quats_[i]); }

  int mul(int i, int j) const { return mul_[i * order() + j]; }
  int inv(int i) const { return inv_[i]; }

  // SO(3) rotation angle of element i, in [0, pi].
  double rotation_angle(int i) const;

  static FiniteGroup icosahedral();
  static FiniteGroup cubic();
  static FiniteGroup by_name(const std::string& name);

 private:
  FiniteGroup(std::string name, std::vector<Quat> gens);

  std::string name_;
  std::vector<Quat> quats_;
  std::vector<std::uint8_t> mul_;
  std::vector<std::uint8_t> inv_;
};

// Index g such that indices[0] * indices[1] * ... * g == identity, from the
// multiplication table only.
int closing_element(const FiniteGroup& group, std::span<const int> indices);

}  // namespace weavehash
