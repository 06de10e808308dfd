#include "cga/multivector.hpp"

#include <bit>
#include <cmath>
#include <cstdio>

#include "cga/errors.hpp"

namespace cga {
namespace {

constexpr std::array<std::string_view, Multivector::kSlots> kLabels = {
    "1",    "I",     "i1",     "Ii1",    "i2",     "Ii2",    "i3",     "Ii3",
    "n",    "In",    "i1n",    "e1n",    "i2n",    "e2n",    "i3n",    "e3n",
    "nbar", "Inbar", "i1nbar", "e1nbar", "i2nbar", "e2nbar", "i3nbar", "e3nbar",
    "N",    "i",     "i1N",    "e1",     "i2N",    "e2",     "i3N",    "e3",
};

// I i_k nbar = -e_k nbar and I i_k N = -e_k; every other slot is its label.
constexpr std::array<int, Multivector::kSlots> kLabelSign = {
    1, 1, 1, 1,  1, 1,  1, 1,   //
    1, 1, 1, 1,  1, 1,  1, 1,   //
    1, 1, 1, -1, 1, -1, 1, -1,  //
    1, 1, 1, -1, 1, -1, 1, -1,
};

// Display order within a block: s.re, s.im, v1.re, v2.re, v3.re, v1.im, v2.im, v3.im
constexpr std::array<int, 8> kDisplayOrder = {0, 1, 2, 4, 6, 3, 5, 7};

constexpr double& part(ComplexScalar& c, int k) { return k == 0 ? c.re : c.im; }
constexpr double part(const ComplexScalar& c, int k) { return k == 0 ? c.re : c.im; }

// Grade parts of m indexed by grade.
std::array<Multivector, 6> split_grades(const Multivector& m) {
  std::array<Multivector, 6> parts{};
  for (int s = 0; s < Multivector::kSlots; ++s) {
    const double c = m[s];
    if (c != 0.0) parts[kSlotGrade[s]][s] = c;
  }
  return parts;
}

// Sum over grade pairs (r, s) of <<a>_r <b>_s>_target(r, s); pairs whose
// target falls outside 0..5 contribute nothing.
template <typename TargetGrade>
Multivector graded_product(const Multivector& a, const Multivector& b, TargetGrade target) {
  const auto pa = split_grades(a);
  const auto pb = split_grades(b);
  const unsigned ma = a.grade_mask();
  const unsigned mb = b.grade_mask();
  Multivector out;
  for (int r = 0; r <= 5; ++r) {
    if (!(ma & (1u << r))) continue;
    for (int s = 0; s <= 5; ++s) {
      if (!(mb & (1u << s))) continue;
      const int g = target(r, s);
      if (g < 0 || g > 5) continue;
      out += grade(pa[r] * pb[s], g);
    }
  }
  return out;
}

}  // namespace

Multivector Multivector::basis(int slot) {
  Multivector m;
  m[slot] = 1.0;
  return m;
}

Multivector Multivector::from_array(std::span<const double, kSlots> coefficients) {
  Multivector m;
  for (int s = 0; s < kSlots; ++s) m[s] = coefficients[s];
  return m;
}

std::array<double, Multivector::kSlots> Multivector::to_array() const {
  std::array<double, kSlots> out{};
  for (int s = 0; s < kSlots; ++s) out[s] = (*this)[s];
  return out;
}

double Multivector::operator[](int slot) const {
  const int sub = slot % 8;
  return part(blocks_[slot / 8][sub / 2], sub % 2);
}

double& Multivector::operator[](int slot) {
  const int sub = slot % 8;
  return part(blocks_[slot / 8][sub / 2], sub % 2);
}

double Multivector::max_abs() const {
  double out = 0.0;
  for (int s = 0; s < kSlots; ++s) out = std::fmax(out, std::fabs((*this)[s]));
  return out;
}

double Multivector::coefficient_norm() const {
  double sum = 0.0;
  for (int s = 0; s < kSlots; ++s) sum += (*this)[s] * (*this)[s];
  return std::sqrt(sum);
}

unsigned Multivector::grade_mask(double eps) const {
  unsigned mask = 0;
  for (int s = 0; s < kSlots; ++s) {
    if (std::fabs((*this)[s]) > eps) mask |= 1u << kSlotGrade[s];
  }
  return mask;
}

std::string_view slot_label(int slot) { return kLabels.at(slot); }
int slot_label_sign(int slot) { return kLabelSign.at(slot); }

std::string to_string(const Multivector& m, double eps) {
  std::string out;
  char buf[64];
  for (int b = 0; b < 4; ++b) {
    for (int sub : kDisplayOrder) {
      const int s = 8 * b + sub;
      const double c = m[s];
      if (std::fabs(c) <= eps || c == 0.0) continue;
      std::snprintf(buf, sizeof buf, "%.17g ", c * kLabelSign[s]);
      out += buf;
      out += kLabels[s];
      out += '\n';
    }
  }
  return out;
}

Multivector geometric_product(const Multivector& a, const Multivector& b) { return a * b; }

Multivector grade(const Multivector& m, int g) {
  if (g < 0 || g > 5) throw DomainError("grade index out of range: " + std::to_string(g));
  Multivector out;
  for (int s = 0; s < Multivector::kSlots; ++s) {
    if (kSlotGrade[s] == g) out[s] = m[s];
  }
  return out;
}

Multivector reverse(const Multivector& m) {
  // (-1)^(g(g-1)/2): + + - - + +
  constexpr std::array<double, 6> sign = {1, 1, -1, -1, 1, 1};
  Multivector out;
  for (int s = 0; s < Multivector::kSlots; ++s) out[s] = sign[kSlotGrade[s]] * m[s];
  return out;
}

Multivector grade_involution(const Multivector& m) {
  Multivector out;
  for (int s = 0; s < Multivector::kSlots; ++s) out[s] = (kSlotGrade[s] % 2 ? -1.0 : 1.0) * m[s];
  return out;
}

double scalar_product(const Multivector& a, const Multivector& b) { return (a * b)[0]; }

Multivector outer_product(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, [](int r, int s) { return r + s; });
}

Multivector left_contraction(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, [](int r, int s) { return s - r; });
}

Multivector right_contraction(const Multivector& a, const Multivector& b) {
  return graded_product(a, b, [](int r, int s) { return r - s; });
}

double magnitude_squared(const Multivector& m) { return scalar_product(reverse(m), m); }

double magnitude(const Multivector& m) {
  const double sq = magnitude_squared(m);
  if (sq < 0.0) {
    // Round-off on a null element is not an indefinite magnitude.
    const double scale = m.coefficient_norm();
    if (sq >= -kDefaultTolerance * scale * scale) return 0.0;
    throw IndefiniteMagnitudeError(sq);
  }
  return std::sqrt(sq);
}

Multivector normalize(const Multivector& m, double eps) {
  const double sq = magnitude_squared(m);
  if (!(sq > eps)) {
    throw NormalizationError("cannot normalize: |m|^2 = " + std::to_string(sq));
  }
  return m / std::sqrt(sq);
}

int single_grade(const Multivector& m, double eps) {
  const unsigned mask = m.grade_mask(eps * std::fmax(1.0, m.max_abs()));
  if (mask == 0 || !std::has_single_bit(mask)) return -1;
  return std::countr_zero(mask);
}

Multivector blade_inverse(const Multivector& m, double eps) {
  if (single_grade(m, eps) < 0) throw InverseError("inverse requires a single-grade element");
  const double sq = magnitude_squared(m);
  const double scale = m.coefficient_norm();
  if (std::fabs(sq) <= eps * scale * scale) throw InverseError("blade is null; no inverse");
  Multivector inv = reverse(m) / sq;
  if (!(inv * m - Multivector::scalar(1.0)).is_zero(std::sqrt(eps))) {
    throw InverseError("element is not a blade; reverse(m)/|m|^2 is not an inverse");
  }
  return inv;
}

Multivector power(const Multivector& m, int k) {
  if (k < 0) throw DomainError("negative power");
  Multivector out = Multivector::scalar(1.0);
  for (int j = 0; j < k; ++j) out = out * m;
  return out;
}

Multivector exponential(const Multivector& m) {
  constexpr int kMaxTerms = 64;
  constexpr double kTermTolerance = 1e-15;
  Multivector sum = Multivector::scalar(1.0);
  Multivector term = sum;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = term * m / static_cast<double>(k);
    if (term.max_abs() < kTermTolerance) return sum + term;
    sum += term;
  }
  throw ConvergenceError("exponential series did not converge within 64 terms");
}

Multivector dual(const Multivector& m) {
  Multivector I;
  I[1] = 1.0;
  return m * I;
}

}  // namespace cga
