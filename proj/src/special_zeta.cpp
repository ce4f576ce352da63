#include <array>

#include "detail.hpp"
#include "idv/special.hpp"

// Hurwitz zeta by Euler-Maclaurin (with analytic s-differentiation of the
// expansion), the first two generalized Stieltjes constants, and polygamma.

namespace idv {
namespace {

using detail::cexpm1;

// B_{2j} / (2j)!, j = 1..13
constexpr std::array<double, 13> kBernOverFact = {
    8.333333333333333e-02,  -1.3888888888888889e-03, 3.3068783068783071e-05,
    -8.2671957671957675e-07, 2.0876756987868099e-08, -5.2841901386874930e-10,
    1.3382536530684679e-11, -3.3896802963225832e-13, 8.5860620562778446e-15,
    -2.1748686985580618e-16, 5.5090028283602295e-18, -1.3954464685812522e-19,
    3.5347070396294675e-21};

// Pochhammer s(s+1)...(s+m-1) and its s-derivative (sum over leave-one-out
// products, robust when a factor vanishes)
void poch_and_deriv(Cplx s, int m, Cplx* p, Cplx* dp) {
  Cplx prod = 1.0;
  for (int i = 0; i < m; ++i) prod *= s + static_cast<double>(i);
  Cplx d = 0.0;
  for (int i = 0; i < m; ++i) {
    Cplx q = 1.0;
    for (int j = 0; j < m; ++j)
      if (j != i) q *= s + static_cast<double>(j);
    d += q;
  }
  *p = prod;
  *dp = d;
}

struct EmTail {
  Cplx value{0, 0};
  Cplx dvalue{0, 0};
  double err = 0.0;
};

// Bernoulli tail sum_j B2j/(2j)! (s)_{2j-1} w^{-s-2j+1}, optionally its
// s-derivative
EmTail em_tail(Cplx s, Cplx w, bool want_deriv) {
  EmTail t;
  Cplx lw = std::log(w);
  double prev = kInf;
  for (int j = 1; j <= 13; ++j) {
    Cplx p, dp;
    poch_and_deriv(s, 2 * j - 1, &p, &dp);
    Cplx wp = std::exp((-s - (2.0 * j - 1.0)) * lw);
    Cplx term = kBernOverFact[j - 1] * p * wp;
    double m = std::abs(term);
    if (m >= prev && j > 2) {  // expansion started diverging
      t.err = m;
      return t;
    }
    t.value += term;
    if (want_deriv)
      t.dvalue += kBernOverFact[j - 1] * (dp * wp + p * (-lw) * wp);
    prev = m;
    t.err = m;
    if (m < 1e-19 * (std::abs(t.value) + 1.0)) break;
  }
  return t;
}

int choose_shift(Cplx s, Cplx a) {
  double want = 20.0 + std::abs(s.imag());
  if (a.real() >= want) return 8;
  return static_cast<int>(std::ceil(want - a.real())) + 1;
}

}  // namespace

EvalResult hurwitz_zeta(Cplx s, Cplx a, int d) {
  s = canon(s);
  a = canon(a);
  if (std::abs(s - 1.0) < 1e-13)
    throw pole_error("zeta(s, a) pole at s = 1", s);
  if (a.real() <= 0.0)
    throw domain_error("zeta(s, a) needs Re a > 0 (apply the recurrence)");
  const int N = choose_shift(s, a);
  CplxSum head, dhead;
  for (int k = 0; k < N; ++k) {
    Cplx base = a + static_cast<double>(k);
    Cplx lb = std::log(base);
    Cplx pw = std::exp(-s * lb);
    head.add(pw);
    if (d) dhead.add(-lb * pw);
  }
  Cplx w = a + static_cast<double>(N);
  Cplx lw = std::log(w);
  Cplx sm1 = s - 1.0;
  Cplx w1s = std::exp((1.0 - s) * lw);
  Cplx ws = std::exp(-s * lw);
  EmTail tail = em_tail(s, w, d != 0);

  EvalResult r;
  r.value = head.value() + w1s / sm1 + 0.5 * ws + tail.value;
  if (d) {
    Cplx dpart = dhead.value();
    dpart += w1s * (-lw / sm1 - 1.0 / (sm1 * sm1));
    dpart += -0.5 * lw * ws;
    dpart += tail.dvalue;
    r.value = dpart;
    // the tail error bound inherits a log factor under differentiation
    r.abs_err = tail.err * (std::abs(lw) + 2.0);
  } else {
    r.abs_err = tail.err;
  }
  r.terms_used = N;
  r.abs_err += (std::abs(head.value()) + std::abs(w1s / sm1) + 1.0) * 8.0 * kEps;
  r.floor_error();
  return r;
}

EvalResult polygamma(int n, Cplx z) {
  z = canon(z);
  if (n < 0) throw domain_error("polygamma needs n >= 0");
  long pole;
  if (near_nonpos_int(z, &pole))
    throw pole_error("polygamma pole at non-positive integer " +
                         std::to_string(pole),
                     Cplx(static_cast<double>(pole), 0.0));
  if (z.imag() < 0.0) {
    EvalResult r = polygamma(n, std::conj(z));
    r.value = std::conj(r.value);
    return r;
  }
  // shift to Re(w) > 15 + n, subtract the recurrence terms afterwards
  double want = 15.0 + 0.5 * n;
  int m = z.real() < want && std::abs(z.imag()) < want
              ? static_cast<int>(std::ceil(want - z.real()))
              : 0;
  if (m < 0) m = 0;
  Cplx w = z + static_cast<double>(m);

  double nfact = 1.0;
  for (int k = 2; k <= n; ++k) nfact *= k;

  Cplx acc;
  Cplx lw = std::log(w);
  Cplx wi = 1.0 / w;
  double trunc = 0.0;
  if (n == 0) {
    acc = lw - 0.5 * wi;
    Cplx wi2 = wi * wi, p = wi2;
    for (int k = 1; k <= 11; ++k) {
      Cplx term = detail::bern2k(k) / (2.0 * k) * p;
      acc -= term;
      p *= wi2;
      trunc = std::abs(term);
      if (trunc < 1e-18) break;
    }
  } else {
    // psi^{(n)}(w) = (-1)^{n-1} [ (n-1)!/w^n + n!/(2 w^{n+1})
    //                           + sum_k B_{2k} (2k+n-1)!/(2k)! w^{-2k-n} ]
    double nm1fact = nfact / std::max(1, n);
    Cplx wn = std::exp(-static_cast<double>(n) * lw);
    Cplx inner = nm1fact * wn + 0.5 * nfact * wn * wi;
    Cplx p = wn * wi * wi;
    for (int k = 1; k <= 11; ++k) {
      // (2k+n-1)!/(2k)! = product_{i = 2k+1 .. 2k+n-1} i
      double fallfact = 1.0;
      for (int i = 2 * k + 1; i <= 2 * k + n - 1; ++i) fallfact *= i;
      Cplx term = detail::bern2k(k) * fallfact * p;
      inner += term;
      p *= wi * wi;
      trunc = std::abs(term);
      if (trunc < 1e-18 * (std::abs(inner) + 1.0)) break;
    }
    acc = ((n % 2) ? 1.0 : -1.0) * inner;
  }
  // recurrence part: psi^{(n)}(z) = psi^{(n)}(z+m) - sum (-1)^n n!/(z+k)^{n+1}
  CplxSum rec;
  for (int k = 0; k < m; ++k) {
    Cplx b = z + static_cast<double>(k);
    rec.add(std::exp(-(n + 1.0) * std::log(b)));
  }
  double sign = (n % 2 == 0) ? 1.0 : -1.0;
  EvalResult r;
  r.value = acc - sign * nfact * rec.value();
  r.terms_used = m + 10;
  r.abs_err = trunc + (std::abs(r.value) + nfact * std::abs(rec.value()) + 1.0) * 8.0 * kEps;
  r.floor_error();
  return r;
}

EvalResult harmonic(Cplx nu) {
  EvalResult r = polygamma(0, nu + 1.0);
  r.value += Cplx(kEulerGamma.hi, 0.0) + kEulerGamma.lo;
  r.abs_err += 2.0 * kEps;
  return r;
}

namespace {

// g(h) = zeta(1 + h, a) - 1/h, evaluated without the 1/h cancellation:
// the Euler-Maclaurin leading term w^{-h}/h - 1/h collapses to
// expm1(-h log w)/h exactly.
Cplx stieltjes_g(double h, Cplx a) {
  Cplx s = Cplx(1.0 + h, 0.0);
  const int N = choose_shift(s, a);
  CplxSum head;
  for (int k = 0; k < N; ++k)
    head.add(std::exp(-s * std::log(a + static_cast<double>(k))));
  Cplx w = a + static_cast<double>(N);
  Cplx lw = std::log(w);
  Cplx acc = head.value();
  acc += cexpm1(-h * lw) / h;
  acc += 0.5 * std::exp(-s * lw);
  acc += em_tail(s, w, false).value;
  return acc;
}

}  // namespace

EvalResult stieltjes_gamma(int n, Cplx a) {
  a = canon(a);
  if (a.real() <= 0.0) throw domain_error("stieltjes_gamma needs Re a > 0");
  if (n == 0) {
    EvalResult p = polygamma(0, a);
    p.value = -p.value;
    return p;
  }
  if (n != 1) throw domain_error("stieltjes_gamma supports n in {0, 1}");
  // gamma_1(a) = -g'(0); Richardson-extrapolated central differences over
  // the step ladder h = 2^{-j}, j = 3..8
  std::array<Cplx, 6> diff;
  for (int j = 3; j <= 8; ++j) {
    double h = std::ldexp(1.0, -j);
    diff[j - 3] = (stieltjes_g(h, a) - stieltjes_g(-h, a)) / (2.0 * h);
  }
  // Neville table in h^2 (central differences have even error expansion)
  std::array<Cplx, 6> t = diff;
  double err = kInf;
  Cplx best = t[5];
  for (int m = 1; m < 6; ++m) {
    double f = std::pow(4.0, m);
    for (int j = 5; j >= m; --j) t[j] = (f * t[j] - t[j - 1]) / (f - 1.0);
    double d = std::abs(t[5] - best);
    best = t[5];
    err = std::min(err, d + 16.0 * kEps * (std::abs(best) + 1.0));
  }
  EvalResult r;
  r.value = -best;
  r.terms_used = 12;
  r.abs_err = err;
  r.floor_error();
  return r;
}

}  // namespace idv
