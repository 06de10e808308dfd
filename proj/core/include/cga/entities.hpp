#pragma once

#include <span>
#include <vector>

#include "cga/euclid.hpp"
#include "cga/multivector.hpp"

namespace cga {

// Grade-1 null vector X = x + 1/2 x^2 n + nbar with nbar-coefficient 1.
class ConformalPoint {
 public:
  ConformalPoint() : ConformalPoint(Vec3{}) {}
  explicit ConformalPoint(const Vec3& x);

  // Rescales an arbitrary representative so its nbar-coefficient is 1.
  // Throws FlatnessError for a point at infinity.
  static ConformalPoint from_multivector(const Multivector& X, double eps = kDefaultTolerance);

  const Multivector& mv() const { return mv_; }
  const Vec3& position() const { return position_; }

 private:
  Multivector mv_;
  Vec3 position_;
};

ConformalPoint embed_point(const Vec3& x);
Vec3 extract_point(const Multivector& X, double eps = kDefaultTolerance);

// sqrt(-2 A*B) = |a - b|. Throws DomainError if the radicand is clearly negative.
double point_distance(const ConformalPoint& a, const ConformalPoint& b);

// max(1, largest absolute coordinate); the length scale used by the
// degeneracy tests.
double geometric_scale(std::span<const Vec3> points);

// Coefficients of a grade-2 element read as
//   P = B - 1/2 v ^ n + u ^ nbar + 1/2 gamma N,
// so that A ^ B of two embedded points gives u = a - b, v = a^2 b - b^2 a and
// gamma = a^2 - b^2.
struct PointPairCoefficients {
  Bivector3 bivector;
  Vec3 u;
  Vec3 v;
  double gamma = 0.0;
};
PointPairCoefficients point_pair_coefficients(const Multivector& P);

enum class PairKind { two_points, one_point, none };

struct PairDecomposition {
  PairKind kind = PairKind::none;
  std::vector<Vec3> points;
  // Squared half-separation of the pair: > 0 real, 0 tangent, < 0 imaginary.
  double discriminant = 0.0;
  bool used_translation = false;
};

// Recovers the two points of A ^ B (any nonzero scale). Nearly equidistant
// pairs (small gamma) are shifted by a translator first and shifted back.
PairDecomposition decompose_point_pair(const Multivector& P, double eps = kDefaultTolerance);

// Grade-3 blade: a circle A1^A2^A3 or a line A1^A2^n.
struct LineOrCircle {
  Multivector blade;
  bool is_flat(double eps = kDefaultTolerance) const;
};

// Grade-4 blade: a sphere A1^A2^A3^A4 or a plane when the points are coplanar.
struct SphereOrPlane {
  Multivector blade;
  bool is_flat(double eps = kDefaultTolerance) const;
};

LineOrCircle line_through(const ConformalPoint& a1, const ConformalPoint& a2,
                          double eps = kDefaultTolerance);
LineOrCircle circle_through(const ConformalPoint& a1, const ConformalPoint& a2,
                            const ConformalPoint& a3, double eps = kDefaultTolerance);
bool is_collinear(const ConformalPoint& a1, const ConformalPoint& a2, const ConformalPoint& a3,
                  double eps = kDefaultTolerance);
bool is_coplanar(const ConformalPoint& a1, const ConformalPoint& a2, const ConformalPoint& a3,
                 const ConformalPoint& a4, double eps = kDefaultTolerance);

struct CircleParams {
  Vec3 center;
  double radius = 0.0;
  Bivector3 plane;  // unit bivector of the carrier plane
};
CircleParams circle_params(const LineOrCircle& circle, double eps = kDefaultTolerance);

SphereOrPlane sphere_through(const ConformalPoint& a1, const ConformalPoint& a2,
                             const ConformalPoint& a3, const ConformalPoint& a4,
                             double eps = kDefaultTolerance);
SphereOrPlane sphere_from_center_radius(const Vec3& center, double radius);

struct SphereParams {
  Vec3 center;
  double radius = 0.0;
};
SphereParams sphere_params(const SphereOrPlane& sphere, double eps = kDefaultTolerance);

struct LineParams {
  Bivector3 moment;  // a1 ^ a2
  Vec3 direction;    // a2 - a1
  Vec3 base;         // foot of the perpendicular from the origin
  Vec3 unit_direction;

  Vec3 point_at(double t) const { return base + unit_direction * t; }
};
LineParams line_params(const LineOrCircle& line, double eps = kDefaultTolerance);

struct PointLineDistance {
  Vec3 offset;  // from the line to the point
  double distance = 0.0;
};
PointLineDistance point_line_distance(const Vec3& x, const LineParams& line);

// |X ^ V| relative to |X| |V|; zero when the point lies on the entity.
double incidence_residual(const Multivector& X, const Multivector& V);

}  // namespace cga
