#pragma once

#include <vector>

#include "cga/entities.hpp"
#include "cga/multivector.hpp"

namespace cga {

// Vector factors spanning the blade B (|factors| = grade of B), each of unit
// coefficient norm. Throws DomainError for a non-blade.
std::vector<Multivector> blade_factors(const Multivector& B, double eps = kDefaultTolerance);

// Smallest blade containing both W and V.
Multivector join(const Multivector& W, const Multivector& V, double eps = kDefaultTolerance);

// Common subspace of W and V inside their join J: (V _| J^-1) _| W.
// A join that is null because it carries a lone n (or nbar) factor uses
// -nbar (or -n) as the reciprocal of that factor.
Multivector meet(const Multivector& W, const Multivector& V, const Multivector& J,
                 double eps = kDefaultTolerance);

// (m _| B) _| B^-1.
Multivector project(const Multivector& m, const Multivector& B, double eps = kDefaultTolerance);

// True when every vector factor of inner lies in outer.
bool blade_contains(const Multivector& outer, const Multivector& inner, double eps = kDefaultTolerance);

enum class IncidenceKind { two_points, one_point, none, blade };

struct IncidenceResult {
  IncidenceKind kind = IncidenceKind::none;
  std::vector<ConformalPoint> points;  // ordered by parameter along the line
  Multivector blade;
  double discriminant = 0.0;
};

IncidenceResult sphere_line_intersect(const SphereOrPlane& sphere, const LineOrCircle& line,
                                      double eps = kDefaultTolerance);

}  // namespace cga
