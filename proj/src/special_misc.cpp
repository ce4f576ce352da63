#include <array>
#include <vector>

#include "detail.hpp"
#include "idv/special.hpp"

// q-digamma, q-Pochhammer, the orthogonal-polynomial evaluators and the
// Gudermannian function.

namespace idv {
namespace {

#include "euler_poly_coeffs.inc"

}  // namespace

EvalResult q_digamma(Cplx q, Cplx z) {
  q = canon(q);
  z = canon(z);
  double aq = std::abs(q);
  if (aq == 0.0) throw domain_error("q_digamma needs q != 0");
  if (std::abs(aq - 1.0) < 1e-14)
    throw domain_error("q_digamma undefined on |q| = 1");
  if (aq > 1.0) {
    // reduction to base 1/q: psi_q(z) = psi_{1/q}(z) + (z - 1/2) log q
    Cplx lq = complex_log(q);
    EvalResult inner = q_digamma(1.0 / q, z);
    inner.value += (z - 0.5) * lq;
    inner.abs_err += (std::abs(z) + 1.0) * std::abs(lq) * 4.0 * kEps;
    inner.floor_error();
    return inner;
  }
  Cplx lq = complex_log(q);
  Cplx qz = std::exp(z * lq);
  CplxSum acc;
  long n = 0;
  double tail = kInf;
  for (; n < 100000; ++n) {
    Cplx denom = 1.0 - qz;
    if (std::abs(denom) < 1e-14)
      throw pole_error("q_digamma pole: q^(n+z) = 1 at n = " + std::to_string(n), z);
    Cplx term = qz / denom;
    acc.add(term);
    qz *= q;
    double tm = std::abs(qz) / std::max(1e-300, std::abs(1.0 - qz));
    tail = tm * aq / (1.0 - aq);
    if (tail < 0.25 * kEps * (std::abs(acc.value()) + 1.0) && n > 2) break;
  }
  EvalResult r;
  r.value = -std::log(1.0 - q) + lq * acc.value();
  r.terms_used = n;
  r.abs_err = std::abs(lq) * tail + 8.0 * kEps * (std::abs(r.value) + 1.0);
  r.converged = n < 100000;
  r.floor_error();
  return r;
}

EvalResult q_pochhammer(const PochhammerSpec& spec) {
  Cplx a = canon(spec.base), q = canon(spec.q);
  EvalResult r;
  if (!spec.infinite) {
    if (spec.count < 0) throw domain_error("q_pochhammer count must be >= 0");
    Cplx prod = 1.0;
    Cplx aqk = a;
    for (long k = 0; k < spec.count; ++k) {
      prod *= 1.0 - aqk;
      aqk *= q;
    }
    r.value = prod;
    r.terms_used = spec.count;
    r.abs_err = (spec.count + 1.0) * kEps * std::abs(prod);
    r.floor_error();
    return r;
  }
  if (std::abs(q) >= 1.0)
    throw domain_error("infinite q_pochhammer needs |q| < 1");
  // logarithmic accumulation; factors -> 1 so the log series converges
  // geometrically
  CplxSum logsum;
  Cplx aqk = a;
  long k = 0;
  double tail = kInf;
  for (; k < 200000; ++k) {
    Cplx f = 1.0 - aqk;
    if (std::abs(f) == 0.0) {
      r.value = 0.0;
      r.terms_used = k;
      r.abs_err = 0.0;
      r.floor_error();
      return r;
    }
    logsum.add(std::log(f));
    aqk *= q;
    tail = std::abs(aqk) / (1.0 - std::abs(q));
    if (tail < 0.25 * kEps && k > 2) break;
  }
  r.value = std::exp(logsum.value());
  r.terms_used = k;
  r.abs_err = std::abs(r.value) * (tail * 2.0 + (k + 2.0) * kEps);
  r.converged = k < 200000;
  r.floor_error();
  return r;
}

EvalResult poly_eval(const PolyFamily& spec, Cplx x) {
  if (spec.degree < 0) throw domain_error("polynomial degree must be >= 0");
  EvalResult r;
  const int n = spec.degree;
  switch (spec.family) {
    case PolyKind::laguerre: {
      // (n+1) L_{n+1} = (2n + alpha + 1 - x) L_n - (n + alpha) L_{n-1}
      Cplx al = spec.parameter;
      Cplx lm1 = 0.0, l = 1.0;
      double mag = 1.0;
      for (int m = 0; m < n; ++m) {
        Cplx lnew = ((2.0 * m + 1.0 + al - x) * l -
                     (static_cast<double>(m) + al) * lm1) /
                    (m + 1.0);
        lm1 = l;
        l = lnew;
        mag = std::max(mag, std::abs(l));
      }
      r.value = l;
      r.terms_used = n;
      r.abs_err = mag * (3.0 * n + 2.0) * kEps;
      break;
    }
    case PolyKind::gegenbauer: {
      // (n+1) C_{n+1} = 2 (n + lambda) x C_n - (n + 2 lambda - 1) C_{n-1}
      Cplx la = spec.parameter;
      Cplx cm1 = 0.0, c = 1.0;
      double mag = 1.0;
      for (int m = 0; m < n; ++m) {
        Cplx cnew = (2.0 * (static_cast<double>(m) + la) * x * c -
                     (static_cast<double>(m) + 2.0 * la - 1.0) * cm1) /
                    (m + 1.0);
        cm1 = c;
        c = cnew;
        mag = std::max(mag, std::abs(c));
      }
      r.value = c;
      r.terms_used = n;
      r.abs_err = mag * (3.0 * n + 2.0) * kEps;
      break;
    }
    case PolyKind::euler_poly: {
      if (n > kEulerPolyMaxDegree)
        throw domain_error("euler_poly supports degree <= 40");
      const std::vector<double>& c = kEulerPolyCoeffs[static_cast<std::size_t>(n)];
      Cplx acc = 0.0;
      double mag = 0.0;
      for (std::size_t j = c.size(); j-- > 0;) {
        acc = acc * x + c[j];
        mag = mag * std::abs(x) + std::abs(c[j]);
      }
      r.value = acc;
      r.terms_used = n + 1;
      r.abs_err = mag * (2.0 * n + 2.0) * kEps;
      break;
    }
  }
  r.floor_error();
  return r;
}

EvalResult gudermannian(Cplx z) {
  z = canon(z);
  // poles where tanh(z/2) has them: z = i pi (2k+1)
  double ratio = z.imag() / kPi.hi;
  double nearest_odd = 2.0 * std::floor(0.5 * (ratio - 1.0) + 0.5) + 1.0;
  if (std::abs(z.real()) < 1e-12 && std::abs(ratio - nearest_odd) < 1e-12)
    throw pole_error("gd pole at i pi (2k+1)", z);
  EvalResult r;
  r.value = 2.0 * std::atan(std::tanh(0.5 * z));
  r.terms_used = 1;
  r.abs_err = 8.0 * kEps * (std::abs(r.value) + 1.0);
  return r;
}

}  // namespace idv
