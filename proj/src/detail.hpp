#pragma once

// Internal helpers shared by the special-function translation units.

#include <array>

#include "idv/numerics.hpp"

namespace idv::detail {

// B_{2k}, k = 1..13
inline constexpr std::array<double, 13> kBern2k = {
    1.0 / 6,        -1.0 / 30,       1.0 / 42,       -1.0 / 30,
    5.0 / 66,       -691.0 / 2730,   7.0 / 6,        -3617.0 / 510,
    43867.0 / 798,  -174611.0 / 330, 854513.0 / 138, -236364091.0 / 2730,
    8553103.0 / 6};

inline double bern2k(int k) { return kBern2k[static_cast<std::size_t>(k - 1)]; }

// sin(pi z) with argument reduction on the real part
inline Cplx sinpi(Cplx z) {
  double x = z.real(), y = z.imag();
  double n = std::floor(x + 0.5);
  double r = x - n;  // r in [-1/2, 1/2]
  Cplx s = std::sin(Cplx(kPi.hi * r, kPi.hi * y) + Cplx(kPi.lo * r, kPi.lo * y));
  if (std::fmod(std::abs(n), 2.0) == 1.0) s = -s;
  return s;
}

inline Cplx cospi(Cplx z) { return sinpi(Cplx(0.5, 0.0) - z); }

// complex expm1
inline Cplx cexpm1(Cplx u) {
  double x = u.real(), y = u.imag();
  double em1 = std::expm1(x);
  double c = std::cos(y), sn = std::sin(y);
  double cm1 = -2.0 * std::sin(0.5 * y) * std::sin(0.5 * y);
  return {em1 * c + cm1, (em1 + 1.0) * sn};
}

}  // namespace idv::detail
