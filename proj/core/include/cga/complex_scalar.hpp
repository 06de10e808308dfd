#pragma once

namespace cga {

// Element of the {1, I} subalgebra. I is the 5D pseudoscalar: it is central
// and squares to -1, so these multiply exactly like complex numbers.
struct ComplexScalar {
  double re = 0.0;  // coefficient of 1
  double im = 0.0;  // coefficient of I

  constexpr ComplexScalar() = default;
  constexpr ComplexScalar(double r, double i = 0.0) : re(r), im(i) {}

  constexpr ComplexScalar operator+(const ComplexScalar& o) const { return {re + o.re, im + o.im}; }
  constexpr ComplexScalar operator-(const ComplexScalar& o) const { return {re - o.re, im - o.im}; }
  constexpr ComplexScalar operator-() const { return {-re, -im}; }
  constexpr ComplexScalar operator*(double c) const { return {re * c, im * c}; }

  // (a + Ib)(c + Id) = ac - bd + I(ad + bc)
  constexpr ComplexScalar operator*(const ComplexScalar& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }

  constexpr ComplexScalar& operator+=(const ComplexScalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  constexpr ComplexScalar& operator-=(const ComplexScalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  constexpr bool operator==(const ComplexScalar&) const = default;
};

}  // namespace cga
