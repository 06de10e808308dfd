#include "cga/transforms.hpp"

#include <cmath>
#include <string>

#include "cga/basis.hpp"
#include "cga/entities.hpp"
#include "cga/errors.hpp"

namespace cga {
namespace {

constexpr double kUnitTolerance = 1e-9;

void require_unit_plane(const Bivector3& b) {
  if (std::fabs(b.norm() - 1.0) > kUnitTolerance) {
    throw DomainError("rotor plane must be a unit bivector (|b| = " + std::to_string(b.norm()) + ")");
  }
}

}  // namespace

double unit_defect(const Multivector& v) {
  return (v * reverse(v) - Multivector::scalar(1.0)).max_abs();
}

Versor::Versor(const Multivector& v, VersorKind kind) : mv_(v), kind_(kind) {
  if (unit_defect(v) > kUnitTolerance) throw DomainError("versor is not unit");
}

Versor Versor::after(const Versor& first) const {
  Multivector product = mv_ * first.mv_;
  if (unit_defect(product) > kUnitTolerance) {
    product = product / std::sqrt((product * reverse(product))[0]);
  }
  const VersorKind kind = kind_ == first.kind_ ? kind_ : VersorKind::motor;
  return Versor(product, kind);
}

Versor make_rotor(const Bivector3& plane, double angle) {
  require_unit_plane(plane);
  const Multivector r =
      Multivector::scalar(std::cos(0.5 * angle)) - to_multivector(plane) * std::sin(0.5 * angle);
  return Versor(r, VersorKind::rotor);
}

Versor make_translator(const Vec3& a) {
  return Versor(Multivector::scalar(1.0) + basis::n * to_multivector(a) * 0.5, VersorKind::translator);
}

Versor make_rotor_about(const Bivector3& plane, double angle, const Vec3& center) {
  const Multivector T = make_translator(center).mv();
  const Multivector R = make_rotor(plane, angle).mv();
  return Versor(T * R * reverse(T), VersorKind::rotor);
}

Versor compose_motor(const Vec3& translation, const RotorSpec& spec) {
  const Versor R = make_rotor_about(spec.plane, spec.angle, spec.center);
  const Versor T = make_translator(translation);
  return Versor(T.after(R).mv(), VersorKind::motor);
}

Multivector apply_versor(const Versor& v, const Multivector& m) {
  return v.mv() * m * reverse(v.mv());
}

Vec3 apply_versor(const Versor& v, const Vec3& x) {
  return extract_point(apply_versor(v, embed_point(x).mv()));
}

}  // namespace cga
