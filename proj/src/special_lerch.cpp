#include <vector>

#include "accel.hpp"
#include "idv/special.hpp"

// Hurwitz-Lerch transcendent Phi(z, s, a) and the polylogarithm.
//
// Strategy ladder:
//   (a) z ~ 1            -> Hurwitz zeta (needs Re s > 1)
//   (b) s = -k, k <= 12  -> closed rational form from the operator recurrence
//                           Phi(z, -k-1, a) = (a + z d/dz) Phi(z, -k, a),
//                           valid for every z != 1
//   (c) |z| <= 0.9       -> defining series, geometric tail bound
//   (d) 0.9 < |z| < 1    -> series plus Wynn epsilon on the partial sums
//   (e) |z| = 1          -> root-of-unity decomposition into Hurwitz zetas
//                           when the rotation is rational with small
//                           denominator, else epsilon acceleration
// The order derivative (d = 1) differentiates the active representation.

namespace idv {
namespace {

constexpr double kTwoPi = 6.283185307179586;

bool rational_rotation(Cplx z, int max_den, long* p_out, long* q_out) {
  double theta = std::arg(z) / kTwoPi;  // in (-1/2, 1/2]
  for (int q = 1; q <= max_den; ++q) {
    double pq = theta * q;
    double p = std::round(pq);
    if (std::abs(pq - p) < 1e-9 * q) {
      // confirm on the nose: z^q must be 1
      Cplx zq = complex_pow(z, Cplx(static_cast<double>(q), 0.0));
      if (std::abs(zq - 1.0) < 1e-9) {
        long pi = static_cast<long>(p) % q;
        if (pi < 0) pi += q;
        *p_out = pi;
        *q_out = q;
        return true;
      }
    }
  }
  return false;
}

EvalResult lerch_series(Cplx z, Cplx s, Cplx a, int d, const bool accelerate) {
  CplxSum acc;
  std::vector<Cplx> partials;
  std::vector<Cplx> terms;
  const long budget = accelerate ? 3000 : 200000;
  double az = std::abs(z);
  double tail = kInf;
  long n = 0;
  Cplx zn = 1.0;
  double magsum = 0.0;
  for (; n < budget; ++n) {
    Cplx base = a + static_cast<double>(n);
    Cplx lb = std::log(base);
    Cplx term = zn * std::exp(-s * lb);
    if (d) term *= -lb;
    acc.add(term);
    magsum += std::abs(term);
    if (accelerate) {
      terms.push_back(term);
      partials.push_back(acc.value());
    }
    zn *= z;
    double tmag = std::abs(term);
    if (!accelerate && n > 8) {
      // |t_{n+1}/t_n| <= |z| (1 + |s| log-ish / n); margin handles Re s < 0
      double rho = az * (1.0 + (std::abs(s) + std::abs(d)) / (n + 1.0));
      if (rho < 0.999) {
        tail = tmag * rho / (1.0 - rho);
        if (tail <= 0.25 * kEps * (std::abs(acc.value()) + 1.0)) break;
      }
    }
  }
  EvalResult r;
  r.terms_used = n;
  if (!accelerate) {
    r.value = acc.value();
    r.converged = tail < kInf && n < budget;
    r.abs_err = (tail == kInf ? 1.0 : tail) + magsum * 2.0 * kEps;
    r.floor_error();
    return r;
  }
  double werr;
  r.value = detail::wynn_epsilon(partials, &werr);
  r.abs_err = werr + magsum * 2.0 * kEps;
  r.converged = werr < 1e-6 * (std::abs(r.value) + 1.0);
  r.floor_error();
  return r;
}

}  // namespace

EvalResult lerch_phi(Cplx z, Cplx s, Cplx a, int d) {
  z = canon(z);
  s = canon(s);
  a = canon(a);
  long pole;
  if (near_nonpos_int(a, &pole))
    throw pole_error("lerch_phi pole: a is the non-positive integer " +
                         std::to_string(pole),
                     a);
  if (d != 0 && d != 1) throw domain_error("lerch_phi derivative order d in {0,1}");
  double az = std::abs(z);

  if (std::abs(z - 1.0) < 1e-15) {
    if (s.real() <= 1.0)
      throw domain_error("Phi(1, s, a) diverges for Re s <= 1");
    return hurwitz_zeta(s, a, d);
  }

  // s a non-positive integer: rational closed form, any z
  long k;
  if (d == 0 && near_nonpos_int(s, &k) && k >= -12) {
    int kk = static_cast<int>(-k);
    std::vector<Cplx> coeff{Cplx(1.0, 0.0)};  // Phi(z, 0, a) = 1/(1-z)
    for (int step = 0; step < kk; ++step) {
      std::vector<Cplx> next(coeff.size() + 1, Cplx(0.0, 0.0));
      for (std::size_t j = 0; j < coeff.size(); ++j) {
        next[j] += (a + static_cast<double>(j)) * coeff[j];
        next[j + 1] += static_cast<double>(j + 1) * coeff[j];
      }
      coeff = std::move(next);
    }
    Cplx om = 1.0 - z;
    Cplx zp = 1.0;
    Cplx omp = om;
    CplxSum acc;
    double mag = 0.0;
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      Cplx term = coeff[j] * zp / omp;
      acc.add(term);
      mag += std::abs(term);
      zp *= z;
      omp *= om;
    }
    EvalResult r;
    r.value = acc.value();
    r.terms_used = static_cast<long>(coeff.size());
    r.abs_err = mag * (kk + 2.0) * kEps;
    r.floor_error();
    return r;
  }

  if (az <= 0.9) return lerch_series(z, s, a, d, false);
  if (az < 1.0 - 1e-12) return lerch_series(z, s, a, d, true);
  if (az <= 1.0 + 1e-12) {
    long p, q;
    if (rational_rotation(z, 64, &p, &q)) {
      // Phi(e^{2 pi i p/q}, s, a) = q^{-s} sum_r z^r zeta(s, (a+r)/q)
      double lq = std::log(static_cast<double>(q));
      Cplx qs = std::exp(-s * lq);
      CplxSum acc;
      double err = 0.0;
      Cplx zr = 1.0;
      for (long rr = 0; rr < q; ++rr) {
        Cplx arg = (a + static_cast<double>(rr)) / static_cast<double>(q);
        EvalResult zt = hurwitz_zeta(s, arg, 0);
        if (d == 0) {
          acc.add(zr * qs * zt.value);
          err += zt.abs_err;
        } else {
          EvalResult zt1 = hurwitz_zeta(s, arg, 1);
          acc.add(zr * qs * (zt1.value - lq * zt.value));
          err += zt1.abs_err + lq * zt.abs_err;
        }
        zr *= z;
      }
      EvalResult r;
      r.value = acc.value();
      r.terms_used = q;
      r.abs_err = std::abs(qs) * err + 8.0 * kEps * (std::abs(r.value) + 1.0);
      r.floor_error();
      return r;
    }
    // irrational rotation: epsilon acceleration of the boundary series
    return lerch_series(z, s, a, d, true);
  }
  throw domain_error("Phi series diverges for |z| > 1 unless s is a non-positive integer");
}

EvalResult polylog(Cplx s, Cplx z, int d) {
  EvalResult phi = lerch_phi(z, s, Cplx(1.0, 0.0), d);
  phi.value *= z;
  phi.abs_err *= std::abs(z);
  phi.floor_error();
  return phi;
}

}  // namespace idv
