#pragma once

#include "cga/multivector.hpp"

// Frequently used basis elements.
namespace cga::basis {

inline Multivector slot(int index, double value = 1.0) {
  Multivector m;
  m[index] = value;
  return m;
}

inline const Multivector one = Multivector::scalar(1.0);
inline const Multivector I = slot(1);
inline const Multivector i1 = slot(2);
inline const Multivector i2 = slot(4);
inline const Multivector i3 = slot(6);
inline const Multivector n = slot(8);
inline const Multivector nbar = slot(16);
inline const Multivector N = slot(24);
inline const Multivector i = slot(25);  // e1 e2 e3 = I N
// e_k = -I i_k N
inline const Multivector e1 = slot(27, -1.0);
inline const Multivector e2 = slot(29, -1.0);
inline const Multivector e3 = slot(31, -1.0);

}  // namespace cga::basis
