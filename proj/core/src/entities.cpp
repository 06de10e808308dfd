#include "cga/entities.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "cga/basis.hpp"
#include "cga/errors.hpp"

namespace cga {
namespace {

// Below this |gamma| / |u| (relative to the pair's length scale) the division
// by gamma loses too many digits and the pair is translated first.
constexpr double kGammaFallback = 0.5;

Vec3 pair_point(double square, const Vec3& u, const Vec3& v, double gamma) {
  return (u * square + v) / gamma;
}

Multivector translator(const Vec3& a) {
  return Multivector::scalar(1.0) + basis::n * to_multivector(a) * 0.5;
}

double pair_scale(const PointPairCoefficients& c) {
  const double un = c.u.norm();
  return std::fmax(1.0, std::fmax(std::fabs(c.gamma) / un, std::sqrt(c.v.norm() / un)));
}

PairDecomposition decompose_direct(const PointPairCoefficients& c, double eps) {
  const double u2 = c.u.norm2();
  const double scale = pair_scale(c);
  const double sigma = 0.5 * c.gamma * c.gamma - c.u.dot(c.v);
  const double rho2 = sigma * sigma - u2 * c.v.norm2();

  PairDecomposition out;
  out.discriminant = rho2 / (c.gamma * c.gamma * u2);
  const double tangent_tol = eps * scale * scale;
  if (out.discriminant > tangent_tol) {
    out.kind = PairKind::two_points;
    const double rho = std::sqrt(rho2);
    // The two squared norms multiply to v^2 / u^2; take the larger root
    // directly and the smaller from the product.
    const double big = (sigma + std::copysign(rho, sigma)) / u2;
    const double small = big != 0.0 ? c.v.norm2() / u2 / big : 0.0;
    const double first = sigma >= 0.0 ? big : small;
    const double second = sigma >= 0.0 ? small : big;
    out.points = {pair_point(first, c.u, c.v, c.gamma), pair_point(second, c.u, c.v, c.gamma)};
  } else if (out.discriminant >= -tangent_tol) {
    out.kind = PairKind::one_point;
    out.points = {pair_point(sigma / u2, c.u, c.v, c.gamma)};
  } else {
    out.kind = PairKind::none;
  }
  return out;
}

double relative_outer(const Multivector& a, const Multivector& b) {
  const double denom = a.coefficient_norm() * b.coefficient_norm();
  if (denom == 0.0) return 0.0;
  return outer_product(a, b).coefficient_norm() / denom;
}

void require_distinct(std::span<const ConformalPoint> pts, double eps, const char* what) {
  std::array<Vec3, 4> pos{};
  for (std::size_t i = 0; i < pts.size(); ++i) pos[i] = pts[i].position();
  const double scale = geometric_scale(std::span<const Vec3>(pos.data(), pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if ((pos[i] - pos[j]).norm() <= eps * scale) {
        throw DegenerateError(std::string(what) + ": points " + std::to_string(i + 1) + " and " +
                              std::to_string(j + 1) + " coincide");
      }
    }
  }
}

}  // namespace

ConformalPoint::ConformalPoint(const Vec3& x) : position_(x) {
  mv_ = to_multivector(x);
  mv_[8] = 0.5 * x.norm2();
  mv_[16] = 1.0;
}

ConformalPoint ConformalPoint::from_multivector(const Multivector& X, double eps) {
  return ConformalPoint(extract_point(X, eps));
}

ConformalPoint embed_point(const Vec3& x) { return ConformalPoint(x); }

Vec3 extract_point(const Multivector& X, double eps) {
  const double w = X[16];
  if (std::fabs(w) <= eps * std::fmax(1.0, X.coefficient_norm()) || w == 0.0) {
    throw FlatnessError("point has no nbar component (point at infinity)");
  }
  return euclidean_vector_part(X) / w;
}

double point_distance(const ConformalPoint& a, const ConformalPoint& b) {
  const double d2 = -2.0 * scalar_product(a.mv(), b.mv());
  if (d2 < 0.0) {
    const double scale = std::fmax(1.0, std::fmax(a.position().norm2(), b.position().norm2()));
    if (d2 < -kDefaultTolerance * scale) {
      throw DomainError("negative squared distance " + std::to_string(d2));
    }
    return 0.0;
  }
  return std::sqrt(d2);
}

double geometric_scale(std::span<const Vec3> points) {
  double s = 1.0;
  for (const Vec3& p : points) s = std::fmax(s, p.max_abs());
  return s;
}

PointPairCoefficients point_pair_coefficients(const Multivector& P) {
  PointPairCoefficients c;
  c.bivector = euclidean_bivector_part(P);
  c.u = {-P[19], -P[21], -P[23]};
  c.v = Vec3{P[11], P[13], P[15]} * -2.0;
  c.gamma = 2.0 * P[24];
  return c;
}

PairDecomposition decompose_point_pair(const Multivector& P, double eps) {
  if (single_grade(P, eps) != 2) throw DomainError("point pair must be a grade-2 element");
  const PointPairCoefficients c = point_pair_coefficients(P);
  const double un = c.u.norm();
  if (un <= eps * std::fmax(1.0, P.coefficient_norm())) {
    throw DegenerateError("point pair has no direction (u = 0)");
  }
  const double scale = pair_scale(c);
  if (std::fabs(c.gamma) / un >= kGammaFallback * scale) return decompose_direct(c, eps);

  // Shift along the dominant axis of u so that gamma grows, decompose, shift back.
  int axis = 0;
  for (int k = 1; k < 3; ++k) {
    if (std::fabs(c.u[k]) > std::fabs(c.u[axis])) axis = k;
  }
  Vec3 shift;
  const double step = 2.0 * scale * std::copysign(1.0, c.u[axis] * (c.gamma == 0.0 ? 1.0 : c.gamma));
  if (axis == 0) shift.x = step;
  if (axis == 1) shift.y = step;
  if (axis == 2) shift.z = step;
  const Multivector T = translator(shift);
  const Multivector moved = T * P * reverse(T);
  PairDecomposition out = decompose_direct(point_pair_coefficients(moved), eps);
  for (Vec3& p : out.points) p = p - shift;
  out.used_translation = true;
  return out;
}

bool LineOrCircle::is_flat(double eps) const {
  return relative_outer(blade, basis::n) <= eps;
}

bool SphereOrPlane::is_flat(double eps) const {
  return relative_outer(blade, basis::n) <= eps;
}

LineOrCircle line_through(const ConformalPoint& a1, const ConformalPoint& a2, double eps) {
  const std::array<ConformalPoint, 2> pts = {a1, a2};
  require_distinct(pts, eps, "line");
  return {outer_product(outer_product(a1.mv(), a2.mv()), basis::n)};
}

LineOrCircle circle_through(const ConformalPoint& a1, const ConformalPoint& a2,
                            const ConformalPoint& a3, double eps) {
  const std::array<ConformalPoint, 3> pts = {a1, a2, a3};
  require_distinct(pts, eps, "circle");
  return {outer_product(outer_product(a1.mv(), a2.mv()), a3.mv())};
}

bool is_collinear(const ConformalPoint& a1, const ConformalPoint& a2, const ConformalPoint& a3,
                  double eps) {
  const std::array<Vec3, 3> pos = {a1.position(), a2.position(), a3.position()};
  const double scale = geometric_scale(pos);
  const Multivector flat =
      outer_product(outer_product(outer_product(a1.mv(), a2.mv()), a3.mv()), basis::n);
  return flat.coefficient_norm() <= eps * scale * scale;
}

bool is_coplanar(const ConformalPoint& a1, const ConformalPoint& a2, const ConformalPoint& a3,
                 const ConformalPoint& a4, double eps) {
  const std::array<Vec3, 4> pos = {a1.position(), a2.position(), a3.position(), a4.position()};
  const double scale = geometric_scale(pos);
  const Multivector flat = outer_product(
      outer_product(outer_product(outer_product(a1.mv(), a2.mv()), a3.mv()), a4.mv()), basis::n);
  return flat.coefficient_norm() <= eps * scale * scale * scale;
}

CircleParams circle_params(const LineOrCircle& circle, double eps) {
  const Multivector& V = circle.blade;
  const Multivector carrier = outer_product(V, basis::n);
  if (relative_outer(V, basis::n) <= eps) throw FlatnessError("circle is flat (a line)");
  const double carrier_sq = scalar_product(carrier, carrier);
  const double r2 = -scalar_product(V, V) / carrier_sq;
  if (r2 < -eps) throw DomainError("imaginary circle (r^2 = " + std::to_string(r2) + ")");

  CircleParams out;
  out.radius = std::sqrt(std::fmax(r2, 0.0));
  out.center = extract_point(V * basis::n * V, eps);
  const Bivector3 plane{V[18], V[20], V[22]};
  const double pn = plane.norm();
  out.plane = {plane.b1 / pn, plane.b2 / pn, plane.b3 / pn};
  return out;
}

SphereOrPlane sphere_through(const ConformalPoint& a1, const ConformalPoint& a2,
                             const ConformalPoint& a3, const ConformalPoint& a4, double eps) {
  const std::array<ConformalPoint, 4> pts = {a1, a2, a3, a4};
  require_distinct(pts, eps, "sphere");
  return {outer_product(outer_product(outer_product(a1.mv(), a2.mv()), a3.mv()), a4.mv())};
}

SphereOrPlane sphere_from_center_radius(const Vec3& center, double radius) {
  if (!(radius > 0.0)) throw DomainError("sphere radius must be positive");
  const ConformalPoint a1(center + Vec3{radius, 0, 0});
  const ConformalPoint a2(center - Vec3{radius, 0, 0});
  const ConformalPoint a3(center + Vec3{0, radius, 0});
  const ConformalPoint a4(center + Vec3{0, 0, radius});
  return {outer_product(outer_product(outer_product(a1.mv(), a2.mv()), a3.mv()), a4.mv())};
}

SphereParams sphere_params(const SphereOrPlane& sphere, double eps) {
  const Multivector& V = sphere.blade;
  if (relative_outer(V, basis::n) <= eps) throw FlatnessError("sphere is flat (a plane)");
  const Multivector carrier = outer_product(V, basis::n);
  const double carrier_sq = scalar_product(carrier, carrier);
  const double r2 = scalar_product(V, V) / carrier_sq;
  if (r2 < -eps) throw DomainError("imaginary sphere (r^2 = " + std::to_string(r2) + ")");

  SphereParams out;
  out.radius = std::sqrt(std::fmax(r2, 0.0));
  // I V is a multiple of the dual sphere C - 1/2 r^2 n. Extraction divides
  // by the nbar coefficient, so neither the scale nor the n term matters.
  out.center = extract_point(basis::I * V, eps);
  return out;
}

LineParams line_params(const LineOrCircle& line, double eps) {
  const Multivector& V = line.blade;
  if (!line.is_flat(eps)) throw DomainError("blade is not a line");
  LineParams out;
  out.moment = {V[10], V[12], V[14]};
  out.direction = {-V[3], -V[5], -V[7]};
  const double len = out.direction.norm();
  if (len <= eps * std::fmax(1.0, V.coefficient_norm())) throw DegenerateError("line has no direction");
  out.unit_direction = out.direction / len;
  // Foot of the perpendicular: (u x (a1 x a2)) / u^2 with a1 x a2 = moment.
  out.base = out.direction.cross(out.moment.as_vec()) / (len * len);
  return out;
}

PointLineDistance point_line_distance(const Vec3& x, const LineParams& line) {
  const Multivector u = to_multivector(line.direction);
  const Multivector M = to_multivector(line.moment);
  const Multivector u_inv = u / line.direction.norm2();
  const Multivector d = grade(outer_product(to_multivector(x), u) - M, 2) * u_inv;
  PointLineDistance out;
  out.offset = euclidean_vector_part(grade(d, 1));
  out.distance = out.offset.norm();
  return out;
}

double incidence_residual(const Multivector& X, const Multivector& V) { return relative_outer(X, V); }

}  // namespace cga
