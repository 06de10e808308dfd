#include "cga/incidence.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "cga/basis.hpp"
#include "cga/errors.hpp"

namespace cga {
namespace {

// Orthonormal frame e1, e2, e3, e0, e4 with e0 = n/2 + nbar, e4 = n/2 - nbar.
const std::array<Multivector, 5>& frame() {
  static const std::array<Multivector, 5> kFrame = {
      basis::e1, basis::e2, basis::e3, basis::n * 0.5 + basis::nbar, basis::n * 0.5 - basis::nbar};
  return kFrame;
}

bool wedge_survives(const Multivector& a, const Multivector& b, double eps) {
  const double denom = a.coefficient_norm() * b.coefficient_norm();
  return denom > 0.0 && outer_product(a, b).coefficient_norm() > eps * denom;
}

// Replaces the lone null factor of J by its reciprocal to build an element
// that acts as J^-1 inside the meet.
Multivector null_join_inverse(const Multivector& J, double eps) {
  const double norm = J.coefficient_norm();
  for (const auto& [null, reciprocal] :
       {std::pair{basis::n, basis::nbar * -1.0}, std::pair{basis::nbar, basis::n * -1.0}}) {
    if (outer_product(J, null).coefficient_norm() > eps * norm) continue;
    // rest = reciprocal _| J is orthogonal to the reciprocal and J ~ rest ^ null.
    const Multivector rest = left_contraction(reciprocal, J);
    const Multivector rebuilt = outer_product(rest, null);
    double dot = 0.0, self = 0.0;
    for (int s = 0; s < Multivector::kSlots; ++s) {
      dot += J[s] * rebuilt[s];
      self += rebuilt[s] * rebuilt[s];
    }
    if (self == 0.0) continue;
    const double c = dot / self;
    if ((J - rebuilt * c).coefficient_norm() > std::sqrt(eps) * norm) continue;
    Multivector rest_inv;
    try {
      rest_inv = blade_inverse(rest, eps);
    } catch (const InverseError&) {
      continue;
    }
    return outer_product(reciprocal, rest_inv) / c;
  }
  throw DegenerateError("join is null and has no lone null factor");
}

}  // namespace

std::vector<Multivector> blade_factors(const Multivector& B, double eps) {
  const int g = single_grade(B, eps);
  if (g < 0) throw DomainError("blade_factors requires a single-grade element");
  if (g == 0) return {};
  const double norm = B.coefficient_norm();
  if (g == 1) return {B / norm};

  std::vector<Multivector> candidates;
  const auto& f = frame();
  // Contract every (g-1)-subset of the frame onto B; each result lies in B.
  for (unsigned mask = 0; mask < 32; ++mask) {
    if (std::popcount(mask) != g - 1) continue;
    Multivector Y = Multivector::scalar(1.0);
    for (int k = 0; k < 5; ++k) {
      if (mask & (1u << k)) Y = outer_product(Y, f[k]);
    }
    const Multivector c = grade(left_contraction(Y, B), 1);
    const double cn = c.coefficient_norm();
    if (cn > eps * norm) candidates.push_back(c / cn);
  }

  std::vector<Multivector> factors;
  Multivector span = Multivector::scalar(1.0);
  for (const Multivector& c : candidates) {
    if (!wedge_survives(span, c, 1e-6)) continue;
    span = outer_product(span, c);
    factors.push_back(c);
    if (static_cast<int>(factors.size()) == g) break;
  }
  if (static_cast<int>(factors.size()) != g) throw DomainError("element is not a blade");
  return factors;
}

bool blade_contains(const Multivector& outer, const Multivector& inner, double eps) {
  for (const Multivector& f : blade_factors(inner, eps)) {
    if (wedge_survives(outer, f, std::sqrt(eps))) return false;
  }
  return true;
}

Multivector join(const Multivector& W, const Multivector& V, double eps) {
  if (single_grade(W, eps) < 0 || single_grade(V, eps) < 0) {
    throw DomainError("join requires single-grade blades");
  }
  if (wedge_survives(W, V, std::sqrt(eps))) return outer_product(W, V);
  Multivector J = W;
  for (const Multivector& f : blade_factors(V, eps)) {
    if (wedge_survives(J, f, std::sqrt(eps))) J = outer_product(J, f);
  }
  return J;
}

Multivector meet(const Multivector& W, const Multivector& V, const Multivector& J, double eps) {
  Multivector J_inv;
  try {
    J_inv = blade_inverse(J, eps);
  } catch (const InverseError&) {
    J_inv = null_join_inverse(J, eps);
  }
  return left_contraction(left_contraction(V, J_inv), W);
}

Multivector project(const Multivector& m, const Multivector& B, double eps) {
  Multivector B_inv;
  try {
    B_inv = blade_inverse(B, eps);
  } catch (const InverseError& e) {
    throw DomainError(std::string("cannot project onto a null blade: ") + e.what());
  }
  return left_contraction(left_contraction(m, B), B_inv);
}

IncidenceResult sphere_line_intersect(const SphereOrPlane& sphere, const LineOrCircle& line, double eps) {
  if (sphere.is_flat(eps)) throw FlatnessError("intersection needs a sphere, not a plane");
  if (!line.is_flat(eps)) throw FlatnessError("intersection needs a line, not a circle");
  const LineParams lp = line_params(line, eps);

  IncidenceResult out;
  const Multivector M = meet(sphere.blade, line.blade, basis::I, eps);
  out.blade = M;
  const double scale = std::fmax(1.0, M.coefficient_norm());
  if (M.max_abs() <= eps * eps * scale) {
    out.kind = IncidenceKind::none;
    return out;
  }
  const PairDecomposition pair = decompose_point_pair(M, eps);
  out.discriminant = pair.discriminant;
  std::vector<Vec3> pts = pair.points;
  std::sort(pts.begin(), pts.end(), [&](const Vec3& a, const Vec3& b) {
    return a.dot(lp.unit_direction) < b.dot(lp.unit_direction);
  });
  for (const Vec3& p : pts) out.points.emplace_back(p);
  switch (pair.kind) {
    case PairKind::two_points: out.kind = IncidenceKind::two_points; break;
    case PairKind::one_point: out.kind = IncidenceKind::one_point; break;
    case PairKind::none: out.kind = IncidenceKind::none; break;
  }
  return out;
}

}  // namespace cga
