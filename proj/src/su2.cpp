#include "weavehash/su2.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace weavehash {

namespace {

constexpr double kUnitaryTol = 1e-12;  // per entry of U U^dag - I
constexpr double kTieTol = 1e-12;

cplx mul_row_col(const std::array<cplx, 4>& a, const std::array<cplx, 4>& bdag,
                 int r, int c) {
  // (A * B^dag)_{rc} with B^dag_{kc} = conj(B_{ck})
  return a[2 * r] * std::conj(bdag[2 * c]) +
         a[2 * r + 1] * std::conj(bdag[2 * c + 1]);
}

void check_unitary(const std::array<cplx, 4>& e) {
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      const cplx v = mul_row_col(e, e, r, c);
      const cplx want = (r == c) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
      if (std::abs(v - want) > kUnitaryTol) {
        throw std::invalid_argument("gate entries are not unitary");
      }
    }
  }
}

Quat quat_from_su2(const std::array<cplx, 4>& v) {
  return Quat{v[0].real(), v[1].imag(), v[1].real(), v[0].imag()};
}

std::array<cplx, 4> su2_from_quat(const Quat& q) {
  return {cplx{q.w, q.z}, cplx{q.y, q.x}, cplx{-q.y, q.x}, cplx{q.w, -q.z}};
}

}  // namespace

Quat canonical_sign(const Quat& q) {
  bool flip;
  if (q.w > kTieTol) {
    flip = false;
  } else if (q.w < -kTieTol) {
    flip = true;
  } else if (std::fabs(q.z) > kTieTol) {
    // U00 ~ i z: arg in [0, pi) iff z > 0
    flip = q.z < 0.0;
  } else if (std::fabs(q.x) > kTieTol) {
    // U01 = y + i x: arg in [0, pi) iff x > 0
    flip = q.x < 0.0;
  } else {
    flip = q.y < 0.0;
  }
  return flip ? Quat{-q.w, -q.x, -q.y, -q.z} : q;
}

Gate::Gate() : e_{cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}}, canonical_{} {}

Gate Gate::from_entries(const std::array<cplx, 4>& entries) {
  check_unitary(entries);
  Gate g;
  g.e_ = entries;
  // strip the determinant phase: V = U * exp(-i arg(det)/2), det V = 1
  const cplx det = entries[0] * entries[3] - entries[1] * entries[2];
  const double half = 0.5 * std::arg(det);
  const cplx phase{std::cos(half), -std::sin(half)};
  std::array<cplx, 4> v;
  for (int i = 0; i < 4; ++i) v[i] = entries[i] * phase;
  g.canonical_ = canonical_sign(quat_from_su2(v).normalized());
  return g;
}

Gate Gate::from_quat(const Quat& q) {
  if (std::fabs(q.norm2() - 1.0) > 1e-9) {
    throw std::invalid_argument("quaternion is not unit length");
  }
  Gate g;
  g.e_ = su2_from_quat(q);
  g.canonical_ = canonical_sign(q.normalized());
  return g;
}

Gate Gate::from_axis_angle(const AxisAngle& aa) {
  const auto& n = aa.axis;
  const double len2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
  if (std::fabs(len2 - 1.0) > 2e-9) {
    throw std::invalid_argument("axis is not a unit vector");
  }
  if (!(aa.angle >= 0.0 && aa.angle < 2.0 * M_PI)) {
    throw std::invalid_argument("angle outside [0, 2pi)");
  }
  const double c = std::cos(0.5 * aa.angle);
  const double s = std::sin(0.5 * aa.angle);
  return from_quat(Quat{c, s * n[0], s * n[1], s * n[2]});
}

Gate Gate::canonical_gate() const {
  Gate g;
  g.e_ = su2_from_quat(canonical_);
  g.canonical_ = canonical_;
  return g;
}

AxisAngle Gate::to_axis_angle() const {
  const Quat& q = canonical_;
  const double w = std::min(1.0, std::max(-1.0, q.w));
  const double angle = 2.0 * std::acos(w);  // [0, pi] since w >= 0
  const double s = std::sqrt(std::max(0.0, 1.0 - w * w));
  if (s < 1e-12) {
    return AxisAngle{{0.0, 0.0, 1.0}, 0.0};
  }
  return AxisAngle{{q.x / s, q.y / s, q.z / s}, angle};
}

double distance(const Gate& u, const Gate& v) {
  return proj_distance(u.canonical(), v.canonical());
}

std::string format_gate(const Gate& g) {
  char buf[512];
  const auto& e = g.entries();
  std::snprintf(buf, sizeof buf,
                "%.17g %.17g %.17g %.17g %.17g %.17g %.17g %.17g",
                e[0].real(), e[0].imag(), e[1].real(), e[1].imag(),
                e[2].real(), e[2].imag(), e[3].real(), e[3].imag());
  return buf;
}

Gate parse_gate(const std::string& text) {
  std::istringstream in(text);
  double v[8];
  for (double& f : v) {
    if (!(in >> f)) throw std::invalid_argument("expected 8 floats for a gate");
  }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("trailing data after 8 floats");
  return Gate::from_entries({cplx{v[0], v[1]}, cplx{v[2], v[3]},
                             cplx{v[4], v[5]}, cplx{v[6], v[7]}});
}

Gate named_gate(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  if (name == "iY")
    return Gate::from_entries({cplx{0, 0}, cplx{1, 0}, cplx{-1, 0}, cplx{0, 0}});
  if (name == "X")
    return Gate::from_entries({cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}});
  if (name == "Z")
    return Gate::from_entries({cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}});
  if (name == "H")
    return Gate::from_entries({cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}});
  throw std::invalid_argument("unknown named gate: " + name);
}

}  // namespace weavehash
