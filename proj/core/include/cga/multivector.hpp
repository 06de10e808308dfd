#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

#include "cga/complex_quat.hpp"

namespace cga {

inline constexpr double kDefaultTolerance = 1e-9;

// Element of Cl(4,1) written as m = q + q_n n + q_nbar nbar + q_N N, with
// four complex-quaternion blocks (32 real coefficients).
//
// Flat slot index = 8 * block + sub, where block is 0:1, 1:n, 2:nbar, 3:N and
// sub runs s.re, s.im, v1.re, v1.im, v2.re, v2.im, v3.re, v3.im.
class Multivector {
 public:
  enum Block : int { kOne = 0, kN = 1, kNbar = 2, kNN = 3 };
  static constexpr int kSlots = 32;

  constexpr Multivector() = default;
  constexpr Multivector(const ComplexQuat& q, const ComplexQuat& qn, const ComplexQuat& qnbar,
                        const ComplexQuat& qN)
      : blocks_{q, qn, qnbar, qN} {}

  static constexpr Multivector scalar(double a) {
    Multivector m;
    m.blocks_[kOne].s.re = a;
    return m;
  }
  static Multivector basis(int slot);
  static Multivector from_array(std::span<const double, kSlots> coefficients);
  std::array<double, kSlots> to_array() const;

  constexpr const ComplexQuat& block(int b) const { return blocks_[b]; }
  constexpr ComplexQuat& block(int b) { return blocks_[b]; }

  double operator[](int slot) const;
  double& operator[](int slot);

  constexpr Multivector operator+(const Multivector& o) const {
    return {blocks_[0] + o.blocks_[0], blocks_[1] + o.blocks_[1], blocks_[2] + o.blocks_[2],
            blocks_[3] + o.blocks_[3]};
  }
  constexpr Multivector operator-(const Multivector& o) const {
    return {blocks_[0] - o.blocks_[0], blocks_[1] - o.blocks_[1], blocks_[2] - o.blocks_[2],
            blocks_[3] - o.blocks_[3]};
  }
  constexpr Multivector operator-() const { return {-blocks_[0], -blocks_[1], -blocks_[2], -blocks_[3]}; }
  constexpr Multivector operator*(double c) const {
    return {blocks_[0] * c, blocks_[1] * c, blocks_[2] * c, blocks_[3] * c};
  }
  constexpr Multivector operator/(double c) const { return *this * (1.0 / c); }
  Multivector& operator+=(const Multivector& o) { return *this = *this + o; }
  Multivector& operator-=(const Multivector& o) { return *this = *this - o; }

  // Geometric product. Blocks multiply through the {1, n, nbar, N} table:
  //   n n = 0,        n nbar = -1 + N,  n N = n,
  //   nbar n = -1 - N, nbar nbar = 0,   nbar N = -nbar,
  //   N n = -n,       N nbar = nbar,    N N = 1.
  // The quaternion coefficients commute with n, nbar and N.
  constexpr Multivector operator*(const Multivector& o) const {
    const ComplexQuat& q = blocks_[kOne];
    const ComplexQuat& qn = blocks_[kN];
    const ComplexQuat& qb = blocks_[kNbar];
    const ComplexQuat& qN = blocks_[kNN];
    const ComplexQuat& p = o.blocks_[kOne];
    const ComplexQuat& pn = o.blocks_[kN];
    const ComplexQuat& pb = o.blocks_[kNbar];
    const ComplexQuat& pN = o.blocks_[kNN];
    return {
        q * p + qN * pN - qn * pb - qb * pn,
        q * pn + qn * p + qn * pN - qN * pn,
        q * pb + qb * p - qb * pN + qN * pb,
        q * pN + qN * p + qn * pb - qb * pn,
    };
  }

  constexpr bool operator==(const Multivector&) const = default;

  double max_abs() const;
  // Euclidean norm of the 32 coefficients. Metric-free; used for zero tests.
  double coefficient_norm() const;
  bool is_zero(double eps = kDefaultTolerance) const { return max_abs() <= eps; }

  // Bit g set iff grade g has a coefficient with |c| > eps.
  unsigned grade_mask(double eps = 0.0) const;

 private:
  std::array<ComplexQuat, 4> blocks_{};
};

inline constexpr Multivector operator*(double c, const Multivector& m) { return m * c; }

// Grade of each flat slot.
inline constexpr std::array<int, Multivector::kSlots> kSlotGrade = {
    0, 5, 2, 3, 2, 3, 2, 3,  // 1, I, i_k, I i_k
    1, 4, 3, 2, 3, 2, 3, 2,  // n, I n, i_k n, I i_k n = e_k n
    1, 4, 3, 2, 3, 2, 3, 2,  // nbar, I nbar, i_k nbar, I i_k nbar = -e_k nbar
    2, 3, 4, 1, 4, 1, 4, 1,  // N, I N = i, i_k N, I i_k N = -e_k
};

// Human-readable label for each slot and the sign relating the slot's basis
// element to the labelled element (slot element = sign * label).
std::string_view slot_label(int slot);
int slot_label_sign(int slot);

// One line per nonzero slot: "<coefficient> <label>", coefficient taken with
// respect to the labelled element.
std::string to_string(const Multivector& m, double eps = 0.0);

Multivector geometric_product(const Multivector& a, const Multivector& b);
Multivector grade(const Multivector& m, int g);
Multivector reverse(const Multivector& m);
Multivector grade_involution(const Multivector& m);
double scalar_product(const Multivector& a, const Multivector& b);
Multivector outer_product(const Multivector& a, const Multivector& b);
Multivector left_contraction(const Multivector& a, const Multivector& b);
Multivector right_contraction(const Multivector& a, const Multivector& b);

// |m|^2 = reverse(m) * m
double magnitude_squared(const Multivector& m);
double magnitude(const Multivector& m);
Multivector normalize(const Multivector& m, double eps = kDefaultTolerance);
Multivector blade_inverse(const Multivector& m, double eps = kDefaultTolerance);
Multivector power(const Multivector& m, int k);
Multivector exponential(const Multivector& m);
Multivector dual(const Multivector& m);

// Single-grade check; returns the grade or -1.
int single_grade(const Multivector& m, double eps = kDefaultTolerance);

inline Multivector operator^(const Multivector& a, const Multivector& b) { return outer_product(a, b); }

}  // namespace cga
