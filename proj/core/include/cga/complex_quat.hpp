#pragma once

#include "cga/complex_scalar.hpp"

namespace cga {

// q = s + v1 i1 + v2 i2 + v3 i3 with complex coefficients, where
// i1 = e2e3, i2 = e3e1, i3 = e1e2 are the Euclidean unit bivectors.
struct ComplexQuat {
  ComplexScalar s;
  ComplexScalar v1;
  ComplexScalar v2;
  ComplexScalar v3;

  // 0 -> s, 1..3 -> v1..v3
  constexpr ComplexScalar& operator[](int k) {
    switch (k) {
      case 0: return s;
      case 1: return v1;
      case 2: return v2;
      default: return v3;
    }
  }
  constexpr const ComplexScalar& operator[](int k) const {
    switch (k) {
      case 0: return s;
      case 1: return v1;
      case 2: return v2;
      default: return v3;
    }
  }

  constexpr ComplexQuat operator+(const ComplexQuat& o) const {
    return {s + o.s, v1 + o.v1, v2 + o.v2, v3 + o.v3};
  }
  constexpr ComplexQuat operator-(const ComplexQuat& o) const {
    return {s - o.s, v1 - o.v1, v2 - o.v2, v3 - o.v3};
  }
  constexpr ComplexQuat operator-() const { return {-s, -v1, -v2, -v3}; }
  constexpr ComplexQuat operator*(double c) const { return {s * c, v1 * c, v2 * c, v3 * c}; }

  // Product of two complex quaternions. The bivector-bivector terms follow
  // from i1 = e2e3 etc.: i1 i2 = -i3 (cyclic), i_k i_k = -1.
  constexpr ComplexQuat operator*(const ComplexQuat& q) const {
    const ComplexQuat& p = *this;
    return {
        p.s * q.s - (p.v1 * q.v1 + p.v2 * q.v2 + p.v3 * q.v3),
        p.s * q.v1 + p.v1 * q.s + (p.v3 * q.v2 - p.v2 * q.v3),
        p.s * q.v2 + p.v2 * q.s + (p.v1 * q.v3 - p.v3 * q.v1),
        p.s * q.v3 + p.v3 * q.s + (p.v2 * q.v1 - p.v1 * q.v2),
    };
  }

  constexpr ComplexQuat& operator+=(const ComplexQuat& o) {
    s += o.s;
    v1 += o.v1;
    v2 += o.v2;
    v3 += o.v3;
    return *this;
  }

  constexpr bool operator==(const ComplexQuat&) const = default;
};

}  // namespace cga
