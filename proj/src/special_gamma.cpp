#include <array>

#include "detail.hpp"
#include "idv/special.hpp"

// Gamma, log-Gamma (principal branch), upper incomplete gamma and the
// exponential integrals. Log-gamma follows the usual scheme: Stirling with
// a recurrence shift on the right half-plane, Hare's reflection step on the
// left, conjugation for the lower half-plane.

namespace idv {
namespace {

using detail::kBern2k;
using detail::sinpi;

constexpr double kTwoPi = 6.283185307179586;

// Stirling series, needs |z| reasonably large and Re z > 0
Cplx loggamma_stirling(Cplx z) {
  Cplx lz = std::log(z);
  Cplx acc = (z - 0.5) * lz - z + 0.5 * Cplx(kLog2Pi.hi) + 0.5 * kLog2Pi.lo;
  Cplx zi = 1.0 / z;
  Cplx zi2 = zi * zi;
  Cplx p = zi;
  for (std::size_t k = 1; k <= 8; ++k) {
    acc += kBern2k[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
    p *= zi2;
  }
  return acc;
}

Cplx loggamma_core(Cplx z);

// Re z >= 0.5: shift right until Stirling is accurate
Cplx loggamma_right(Cplx z) {
  CplxSum shift;
  int guard = 0;
  while (std::abs(z) < 10.0 && guard++ < 32) {
    shift.add(std::log(z));
    z += 1.0;
  }
  return loggamma_stirling(z) - shift.value();
}

Cplx loggamma_core(Cplx z) {
  if (z.imag() < 0.0) return std::conj(loggamma_core(std::conj(z)));
  if (z.real() >= 0.5) return loggamma_right(z);
  // reflection with the winding term that keeps the branch principal
  double w = std::copysign(kTwoPi, z.imag()) * std::floor(0.5 * z.real() + 0.25);
  return std::log(Cplx(kPi.hi) / sinpi(z)) + Cplx(0.0, w) - loggamma_core(1.0 - z);
}

}  // namespace

EvalResult gamma_ln(Cplx z) {
  z = canon(z);
  long pole;
  if (near_nonpos_int(z, &pole))
    throw pole_error("log-gamma pole at non-positive integer " +
                         std::to_string(pole),
                     Cplx(static_cast<double>(pole), 0.0));
  EvalResult r;
  r.value = loggamma_core(z);
  r.terms_used = 1;
  r.abs_err = 8.0 * kEps * (std::abs(r.value) + 1.0);
  // precision degrades approaching a pole
  double d = std::abs(z - std::round(z.real()));
  if (z.real() < 0.5 && d < 0.1 && d > 0.0) r.abs_err += kEps / d;
  return r;
}

EvalResult gamma(Cplx z) {
  EvalResult lg = gamma_ln(z);
  EvalResult r;
  r.value = std::exp(lg.value);
  r.terms_used = lg.terms_used;
  r.abs_err = std::abs(r.value) * (lg.abs_err + 4.0 * kEps);
  r.converged = lg.converged;
  r.floor_error();
  return r;
}

Cplx rgamma(Cplx z) {
  z = canon(z);
  long pole;
  if (near_nonpos_int(z, &pole, 0.0)) return {0.0, 0.0};
  if (z.real() < 0.5) {
    // reflection keeps this entire-safe near the poles of Gamma
    return sinpi(z) * std::exp(loggamma_core(1.0 - z)) / kPi.hi;
  }
  return std::exp(-loggamma_core(z));
}

// ---------------------------------------------------------------------------
// upper incomplete gamma

namespace {

// Legendre continued fraction, modified Lentz; good for Re z > 0-ish, |z| large
EvalResult gamma_upper_cf(Cplx s, Cplx z) {
  const double tiny = 1e-290;
  Cplx b = z + 1.0 - s;
  Cplx c = 1.0 / tiny;
  Cplx d = 1.0 / b;
  Cplx h = d;
  long i = 1;
  double delta = 1.0;
  for (; i <= 2000; ++i) {
    Cplx an = -static_cast<double>(i) * (static_cast<double>(i) - s);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    Cplx del = d * c;
    h *= del;
    delta = std::abs(del - 1.0);
    if (delta < 4.0 * kEps) break;
  }
  EvalResult r;
  Cplx front = std::exp(-z + s * complex_log(z));
  r.value = front * h;
  r.terms_used = i;
  r.converged = delta < 1e-10;
  r.abs_err = std::abs(r.value) * (delta + 8.0 * kEps);
  r.floor_error();
  return r;
}

// Gamma(s) - z^s e^{-z} sum z^n / (s (s+1) ... (s+n)); moderate |z|
EvalResult gamma_upper_series(Cplx s, Cplx z) {
  Cplx t = 1.0 / s;
  CplxSum acc;
  acc.add(t);
  double maxmag = std::abs(t);
  long n = 0;
  for (n = 1; n <= 1200; ++n) {
    t *= z / (s + static_cast<double>(n));
    acc.add(t);
    maxmag = std::max(maxmag, std::abs(acc.value()));
    if (std::abs(t) < kEps * std::abs(acc.value()) && n > 4) break;
  }
  Cplx front = std::exp(s * complex_log(z) - z);
  Cplx lower = front * acc.value();
  EvalResult g = gamma(s);
  EvalResult r;
  r.value = g.value - lower;
  r.terms_used = n;
  r.converged = n <= 1200;
  r.abs_err = g.abs_err +
              (std::abs(front) * maxmag + std::abs(g.value)) * 8.0 * kEps +
              std::abs(front * t);
  r.floor_error();
  return r;
}

// Poincare asymptotic z^{s-1} e^{-z} (1 + (s-1)/z + ...); |z| large, any arg
EvalResult gamma_upper_asymptotic(Cplx s, Cplx z, bool* ok) {
  Cplx t = 1.0;
  CplxSum acc;
  acc.add(t);
  double best = 1.0;
  long n = 0;
  *ok = false;
  for (n = 1; n <= 60; ++n) {
    t *= (s - static_cast<double>(n)) / z;
    double m = std::abs(t);
    if (m >= best) break;  // series turned divergent
    acc.add(t);
    best = m;
    if (m < 2.0 * kEps) {
      *ok = true;
      break;
    }
  }
  EvalResult r;
  Cplx front = std::exp((s - 1.0) * complex_log(z) - z);
  r.value = front * acc.value();
  r.terms_used = n;
  r.abs_err = std::abs(front) * (best + 4.0 * kEps) +
              4.0 * kEps * std::abs(r.value);
  r.converged = *ok;
  r.floor_error();
  return r;
}

// E_1 by its log series; fine for small and negative-real z
EvalResult e1_series(Cplx z) {
  CplxSum acc;
  Cplx t = 1.0;
  double maxmag = 0.0;
  long k = 1;
  for (; k <= 500; ++k) {
    t *= -z / static_cast<double>(k);
    Cplx term = -t / static_cast<double>(k);
    acc.add(term);
    maxmag = std::max(maxmag, std::abs(term));
    if (std::abs(term) < 0.25 * kEps * (std::abs(acc.value()) + 1.0) && k > 3)
      break;
  }
  EvalResult r;
  r.value = -Cplx(kEulerGamma.hi, 0.0) - kEulerGamma.lo - complex_log(z) +
            acc.value();
  r.terms_used = k;
  r.converged = k <= 500;
  r.abs_err = (maxmag + std::abs(r.value) + 1.0) * 8.0 * kEps;
  r.floor_error();
  return r;
}

EvalResult e1_value(Cplx z) {
  double az = std::abs(z);
  if (az == 0.0) throw pole_error("E_1 pole at z = 0", z);
  if (az > 44.0) {
    bool ok;
    EvalResult r = gamma_upper_asymptotic(Cplx(0.0), z, &ok);
    if (ok) return r;
  }
  if (az > 4.0 && z.real() > -0.25 * std::abs(z.imag()))
    return gamma_upper_cf(Cplx(0.0), z);
  if (z.real() <= 0.0 || az <= 4.0) {
    EvalResult r = e1_series(z);
    // cancellation: none on the negative real axis, ~e^{|z|} elsewhere
    r.abs_err += kEps * std::exp(std::min(700.0, az + z.real()));
    if (r.abs_err > 1e-4 * (std::abs(r.value) + 1e-30)) r.converged = false;
    return r;
  }
  return gamma_upper_cf(Cplx(0.0), z);
}

// E_n via E_1 and the forward recurrence
EvalResult en_core(int n, Cplx z) {
  if (n == 1) return e1_value(z);
  if (std::abs(z) == 0.0) {
    EvalResult r;
    r.value = 1.0 / (n - 1.0);
    r.terms_used = 1;
    r.abs_err = kEps;
    return r;
  }
  // large |z|: asymptotic of Gamma(1-n, z) scaled is better conditioned
  if (std::abs(z) > 44.0) {
    bool ok;
    EvalResult g = gamma_upper_asymptotic(Cplx(1.0 - n), z, &ok);
    if (ok) {
      EvalResult r;
      r.value = complex_pow(z, Cplx(n - 1.0)) * g.value;
      r.terms_used = g.terms_used;
      r.abs_err = std::abs(complex_pow(z, Cplx(n - 1.0))) * g.abs_err;
      r.converged = true;
      r.floor_error();
      return r;
    }
  }
  EvalResult e = e1_value(z);
  Cplx emz = std::exp(-z);
  Cplx v = e.value;
  double err = e.abs_err;
  for (int j = 1; j < n; ++j) {
    v = (emz - z * v) / static_cast<double>(j);
    err = (std::abs(emz) * kEps + std::abs(z) * err) / j + kEps * std::abs(v);
  }
  EvalResult r;
  r.value = v;
  r.terms_used = e.terms_used + n;
  r.abs_err = err;
  r.converged = e.converged;
  r.floor_error();
  return r;
}

}  // namespace

EvalResult incomplete_gamma_upper(Cplx s, Cplx z) {
  s = canon(s);
  z = canon(z);
  if (std::abs(z) == 0.0) {
    if (s.real() > 0.0) return gamma(s);
    throw pole_error("Gamma(s, 0) needs Re s > 0", s);
  }
  long si;
  if (near_nonpos_int(s - 1.0, &si, 1e-13) || near_nonpos_int(s, &si, 1e-13) ||
      (s.imag() == 0.0 && s.real() == std::round(s.real()) &&
       std::abs(s.real()) < 1e15)) {
    long n = std::lround(s.real());
    if (std::abs(s.real() - n) < 1e-13 && std::abs(s.imag()) < 1e-13) {
      if (n >= 1 && n <= 170) {
        // Gamma(n, z) = (n-1)! e^{-z} sum_{k<n} z^k / k!
        Cplx t = 1.0;
        CplxSum acc;
        acc.add(t);
        double mag = 1.0;
        for (long k = 1; k < n; ++k) {
          t *= z / static_cast<double>(k);
          acc.add(t);
          mag = std::max(mag, std::abs(t));
        }
        double fact = 1.0;
        for (long k = 2; k < n; ++k) fact *= k;
        EvalResult r;
        Cplx emz = std::exp(-z);
        r.value = fact * emz * acc.value();
        r.terms_used = n;
        r.abs_err = fact * std::abs(emz) * mag * (n + 2) * kEps;
        r.floor_error();
        return r;
      }
      if (n <= 0 && n >= -300) {
        int m = static_cast<int>(1 - n);  // Gamma(1-m, z), m >= 1
        EvalResult e = en_core(m, z);
        EvalResult r;
        Cplx zp = complex_pow(z, Cplx(1.0 - m));
        r.value = e.value * zp;
        r.terms_used = e.terms_used;
        r.abs_err = e.abs_err * std::abs(zp) + 4.0 * kEps * std::abs(r.value);
        r.converged = e.converged;
        r.floor_error();
        return r;
      }
    }
  }
  if (std::abs(z) > 44.0 + std::abs(s)) {
    bool ok;
    EvalResult r = gamma_upper_asymptotic(s, z, &ok);
    if (ok) return r;
  }
  if (z.real() > 0.0 && std::abs(z) > 1.5 + 0.7 * std::abs(s))
    return gamma_upper_cf(s, z);
  // series route; shift s away from the poles of Gamma(s) first
  long dummy;
  int shift = 0;
  Cplx s0 = s;
  while (shift < 64 &&
         (near_nonpos_int(s0, &dummy, 0.05) || s0.real() <= 0.05)) {
    s0 += 1.0;
    ++shift;
  }
  EvalResult hi = gamma_upper_series(s0, z);
  if (shift == 0) return hi;
  // descend: Gamma(s, z) = (Gamma(s+1, z) - z^s e^{-z}) / s
  Cplx v = hi.value;
  double err = hi.abs_err;
  for (int j = shift - 1; j >= 0; --j) {
    Cplx sj = s + static_cast<double>(j);
    Cplx piece = std::exp(sj * complex_log(z) - z);
    v = (v - piece) / sj;
    err = (err + std::abs(piece) * 8.0 * kEps) / std::abs(sj) +
          kEps * std::abs(v);
  }
  EvalResult r;
  r.value = v;
  r.terms_used = hi.terms_used + shift;
  r.abs_err = err;
  r.converged = hi.converged;
  r.floor_error();
  return r;
}

EvalResult expint_en(int n, Cplx z) {
  z = canon(z);
  if (n < 1) throw domain_error("E_n needs n >= 1");
  if (std::abs(z) == 0.0 && n == 1) throw pole_error("E_1 pole at 0", z);
  return en_core(n, z);
}

EvalResult expint_ei(Cplx z) {
  z = canon(z);
  if (std::abs(z) == 0.0) throw pole_error("Ei pole at 0", z);
  if (z.imag() == 0.0) {
    double x = z.real();
    if (x < 0.0) {
      EvalResult e = en_core(1, Cplx(-x, 0.0));
      e.value = -e.value;
      return e;
    }
    // x > 0: gamma + ln x + sum x^k/(k k!) has no cancellation
    if (x <= 44.0) {
      KahanSum acc;
      double t = 1.0;
      long k = 1;
      for (; k <= 600; ++k) {
        t *= x / k;
        double term = t / k;
        acc.add(term);
        if (term < kEps * (std::abs(acc.value()) + 1.0)) break;
      }
      EvalResult r;
      r.value = Cplx(kEulerGamma.hi + (std::log(x) + (kEulerGamma.lo + acc.value())), 0.0);
      r.terms_used = k;
      r.abs_err = (std::abs(acc.value()) + std::abs(std::log(x)) + 1.0) * 8.0 * kEps;
      r.floor_error();
      return r;
    }
    // asymptotic e^x/x (1 + 1!/x + 2!/x^2 + ...)
    double t = 1.0;
    KahanSum acc;
    acc.add(t);
    double best = 1.0;
    long k = 1;
    for (; k <= 60; ++k) {
      t *= k / x;
      if (t >= best) break;
      acc.add(t);
      best = t;
      if (t < 2.0 * kEps) break;
    }
    EvalResult r;
    double front = std::exp(x) / x;
    r.value = Cplx(front * acc.value(), 0.0);
    r.terms_used = k;
    r.abs_err = front * (best + 4.0 * kEps);
    r.floor_error();
    return r;
  }
  EvalResult e = en_core(1, -z);
  EvalResult r;
  r.value = -e.value + Cplx(0.0, z.imag() > 0.0 ? kPi.hi : -kPi.hi);
  r.terms_used = e.terms_used;
  r.abs_err = e.abs_err + 4.0 * kEps;
  r.converged = e.converged;
  r.floor_error();
  return r;
}

}  // namespace idv
