#include "idv/numerics.hpp"

namespace idv {

Cplx constant(Constant which) {
  switch (which) {
    case Constant::pi:          return {kPi.hi, 0.0};
    case Constant::euler_gamma: return {kEulerGamma.hi, 0.0};
    case Constant::catalan:     return {kCatalan.hi, 0.0};
    case Constant::glaisher:    return {kGlaisher.hi, 0.0};
    case Constant::log_2pi:     return {kLog2Pi.hi, 0.0};
  }
  return {kNan, kNan};
}

bool is_finite(Cplx z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Cplx canon(Cplx z) {
  double re = z.real(), im = z.imag();
  if (im == 0.0) im = 0.0;  // maps -0.0 to +0.0
  if (re == 0.0) re = 0.0;
  return {re, im};
}

Cplx complex_log(Cplx z) {
  z = canon(z);
  if (z == Cplx(0.0, 0.0)) throw domain_error("log(0) is undefined");
  return std::log(z);
}

Cplx complex_pow(Cplx z, Cplx w) {
  z = canon(z);
  w = canon(w);
  if (z == Cplx(0.0, 0.0)) {
    if (w.real() > 0.0) return {0.0, 0.0};
    throw domain_error("0^w needs Re(w) > 0");
  }
  if (w == Cplx(0.0, 0.0)) return {1.0, 0.0};
  // integer exponents by squaring keeps values exact where the inputs are
  if (w.imag() == 0.0 && w.real() == std::floor(w.real()) &&
      std::abs(w.real()) <= 1024.0) {
    long n = static_cast<long>(w.real());
    bool inv = n < 0;
    unsigned long m = inv ? -static_cast<unsigned long>(n) : n;
    Cplx acc{1.0, 0.0}, base = z;
    while (m) {
      if (m & 1) acc *= base;
      base *= base;
      m >>= 1;
    }
    return inv ? Cplx{1.0, 0.0} / acc : acc;
  }
  return std::exp(w * complex_log(z));
}

Cplx complex_sqrt(Cplx z) { return std::sqrt(canon(z)); }

bool near_nonpos_int(Cplx z, long* which, double tol) {
  double r = std::round(z.real());
  if (r > 0.5) return false;
  if (std::abs(z.real() - r) <= tol && std::abs(z.imag()) <= tol) {
    if (which) *which = static_cast<long>(r);
    return true;
  }
  return false;
}

Cplx coth_m1(Cplx z) {
  if (z.real() > 350.0) return {0.0, 0.0};
  Cplx em1 = std::exp(2.0 * z) - 1.0;
  if (em1 == Cplx(0.0, 0.0)) throw pole_error("coth pole", z);
  if (z.real() < -350.0) return -2.0 + 2.0 / em1;  // hits -2 baseline
  return 2.0 / em1;
}

}  // namespace idv
