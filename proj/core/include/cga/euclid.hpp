#pragma once

#include <cmath>

#include "cga/multivector.hpp"

namespace cga {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double c) const { return {x * c, y * c, z * c}; }
  constexpr Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
  constexpr double operator[](int k) const { return k == 0 ? x : (k == 1 ? y : z); }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  constexpr double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  double max_abs() const { return std::fmax(std::fabs(x), std::fmax(std::fabs(y), std::fabs(z))); }
};

inline constexpr Vec3 operator*(double c, const Vec3& v) { return v * c; }

// Euclidean bivector b1 i1 + b2 i2 + b3 i3 (i1 = e2e3, i2 = e3e1, i3 = e1e2).
// Component k is the dual of axis k, so a ^ b has the components of a x b.
struct Bivector3 {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;

  constexpr Vec3 as_vec() const { return {b1, b2, b3}; }
  double norm() const { return as_vec().norm(); }
  constexpr bool operator==(const Bivector3&) const = default;
};

inline Multivector to_multivector(const Vec3& v) {
  Multivector m;
  m[27] = -v.x;
  m[29] = -v.y;
  m[31] = -v.z;
  return m;
}

inline Multivector to_multivector(const Bivector3& b) {
  Multivector m;
  m[2] = b.b1;
  m[4] = b.b2;
  m[6] = b.b3;
  return m;
}

// Coefficients of e1, e2, e3.
inline Vec3 euclidean_vector_part(const Multivector& m) { return {-m[27], -m[29], -m[31]}; }

// Coefficients of i1, i2, i3.
inline Bivector3 euclidean_bivector_part(const Multivector& m) { return {m[2], m[4], m[6]}; }

inline Bivector3 wedge(const Vec3& a, const Vec3& b) {
  const Vec3 c = a.cross(b);
  return {c.x, c.y, c.z};
}

}  // namespace cga
