#pragma once

#include "cga/euclid.hpp"
#include "cga/multivector.hpp"

namespace cga {

enum class VersorKind { rotor, translator, motor };

// Unit even element applied by the sandwich V m ~V.
class Versor {
 public:
  Versor() : mv_(Multivector::scalar(1.0)), kind_(VersorKind::motor) {}
  // Throws DomainError unless V ~V = 1 within 1e-9.
  Versor(const Multivector& v, VersorKind kind);

  const Multivector& mv() const { return mv_; }
  VersorKind kind() const { return kind_; }

  // this * first: applies `first`, then this. Renormalizes when the product
  // drifts more than 1e-9 from unit.
  Versor after(const Versor& first) const;

 private:
  Multivector mv_;
  VersorKind kind_;
};

struct RotorSpec {
  Bivector3 plane;  // unit bivector
  double angle = 0.0;
  Vec3 center;
};

// max |V ~V - 1| over all coefficients.
double unit_defect(const Multivector& v);

// cos(t/2) - sin(t/2) b. With b = e1e2 and t > 0, e1 turns toward e2.
Versor make_rotor(const Bivector3& plane, double angle);
Versor make_translator(const Vec3& a);
Versor make_rotor_about(const Bivector3& plane, double angle, const Vec3& center);
Versor compose_motor(const Vec3& translation, const RotorSpec& spec);

Multivector apply_versor(const Versor& v, const Multivector& m);
Vec3 apply_versor(const Versor& v, const Vec3& x);

}  // namespace cga
