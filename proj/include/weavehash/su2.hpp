#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace weavehash {

using cplx = std::complex<double>;

// Unit quaternion (w, x, y, z) identified with the SU(2) matrix
//   U = w*I + i*(x*sx + y*sy + z*sz)
// so that w = Re U00, z = Im U00, y = Re U01, x = Im U01.
struct Quat {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  // Matches the 2x2 complex matrix product of the corresponding SU(2)
  // elements (note the cross-product sign relative to Hamilton's rule).
  friend Quat operator*(const Quat& a, const Quat& b) {
    return Quat{
        a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
        a.w * b.x + b.w * a.x - (a.y * b.z - a.z * b.y),
        a.w * b.y + b.w * a.y - (a.z * b.x - a.x * b.z),
        a.w * b.z + b.w * a.z - (a.x * b.y - a.y * b.x),
    };
  }

  Quat conj() const { return Quat{w, -x, -y, -z}; }
  double norm2() const { return w * w + x * x + y * y + z * z; }
  Quat normalized() const {
    const double s = 1.0 / std::sqrt(norm2());
    return Quat{w * s, x * s, y * s, z * s};
  }
};

inline double dot4(const Quat& a, const Quat& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// Operator-norm distance between the projective classes of two unit
// quaternions: || U - e^{i phi} V || maximized over the spectrum collapses
// to sqrt(2 - 2|<u,v>|) because (U-V)^dag (U-V) is a multiple of I in SU(2).
inline double proj_distance(const Quat& a, const Quat& b) {
  const double d = 2.0 - 2.0 * std::fabs(dot4(a, b));
  return d > 0.0 ? std::sqrt(d) : 0.0;
}

// Deterministic sign fix for the +-q ambiguity: w > 0, ties broken so the
// first nonzero row entry of the matrix gets argument in [0, pi).
Quat canonical_sign(const Quat& q);

struct AxisAngle {
  std::array<double, 3> axis;  // unit vector, validated to 1e-9
  double angle;                // radians, [0, 2pi)
};

// Unitary 2x2 gate. Entries are stored row-major (e00, e01, e10, e11) and
// validated against U U^dag = I on construction. canonical() is the SU(2)
// representative with det = 1, Re tr >= 0 and the sign tie-break above,
// expressed as a quaternion.
class Gate {
 public:
  Gate();  // identity
  static Gate from_entries(const std::array<cplx, 4>& entries);
  static Gate from_axis_angle(const AxisAngle& aa);
  static Gate from_quat(const Quat& q);  // must be unit to 1e-9

  const std::array<cplx, 4>& entries() const { return e_; }
  const Quat& canonical() const { return canonical_; }
  Gate canonical_gate() const;  // SU(2) representative as a Gate

  AxisAngle to_axis_angle() const;  // angle in [0, pi] by axis flip

 private:
  std::array<cplx, 4> e_;
  Quat canonical_;
};

// sqrt(2 - 2|<u,v>|) over canonical representatives; symmetric,
// phase-invariant, bounded by sqrt(2).
double distance(const Gate& u, const Gate& v);

// 8 whitespace-separated floats (re/im of row-major entries), 17
// significant digits; parse validates unitarity.
std::string format_gate(const Gate& g);
Gate parse_gate(const std::string& text);

// Named targets accepted by the CLI: iY, X, Z, H.
Gate named_gate(const std::string& name);

}  // namespace weavehash
