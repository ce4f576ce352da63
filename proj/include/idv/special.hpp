#pragma once

// Special functions used by the identity registry, for complex arguments,
// each returning an EvalResult with an estimated absolute error.

#include <vector>

#include "idv/numerics.hpp"

namespace idv {

// ---------------------------------------------------------------------------
// domain types

enum class PolyKind { laguerre, gegenbauer, euler_poly };

struct PolyFamily {
  PolyKind family = PolyKind::laguerre;
  int degree = 0;          // >= 0
  Cplx parameter{0.0, 0.0};  // alpha for L_n^a, lambda for C_n^(l); unused for E_n
};

struct PochhammerSpec {
  Cplx base{0.0, 0.0};
  Cplx q{0.0, 0.0};
  long count = 0;        // ignored when infinite
  bool infinite = false; // requires |q| < 1
};

// ---------------------------------------------------------------------------
// gamma family

// principal-branch log-gamma: continuous off the negative real axis,
// real on the positive real axis; exp(gamma_ln(z)) = Gamma(z)
EvalResult gamma_ln(Cplx z);

// Gamma(z) = exp(gamma_ln(z)); throws pole_error at non-positive integers
EvalResult gamma(Cplx z);

// 1/Gamma(z), entire (0 at the poles of Gamma)
Cplx rgamma(Cplx z);

// upper incomplete gamma Gamma(s, z) for complex s, z
EvalResult incomplete_gamma_upper(Cplx s, Cplx z);

// generalized exponential integral E_n(z) = z^{n-1} Gamma(1-n, z), n >= 1
EvalResult expint_en(int n, Cplx z);

// exponential integral Ei: real principal value on the real line,
// Ei(z) = -E_1(-z) + i pi sign(Im z) off it
EvalResult expint_ei(Cplx z);

// ---------------------------------------------------------------------------
// zeta family

// Hurwitz zeta (d = 0) or its first order-derivative d/ds (d = 1),
// Euler-Maclaurin with analytic differentiation of the expansion
EvalResult hurwitz_zeta(Cplx s, Cplx a, int d = 0);

// Stieltjes constants gamma_0(a), gamma_1(a) (Laurent coefficients of
// zeta(s, a) at s = 1); n in {0, 1}, Re a > 0
EvalResult stieltjes_gamma(int n, Cplx a);

// polygamma psi^{(n)}(z), n >= 0
EvalResult polygamma(int n, Cplx z);

// harmonic number H_nu = psi(nu + 1) + euler_gamma
EvalResult harmonic(Cplx nu);

// ---------------------------------------------------------------------------
// Lerch transcendent and polylogarithm

// Phi(z, s, a) = sum_{n>=0} z^n / (n+a)^s (d = 0), or d/ds of it (d = 1)
EvalResult lerch_phi(Cplx z, Cplx s, Cplx a, int d = 0);

// Li_s(z) = z Phi(z, s, 1); d = 1 differentiates in the order s
EvalResult polylog(Cplx s, Cplx z, int d = 0);

// ---------------------------------------------------------------------------
// q-series

// q-digamma psi_q(z); |q| < 1 by the defining series, |q| > 1 through the
// standard reduction to base 1/q
EvalResult q_digamma(Cplx q, Cplx z);

EvalResult q_pochhammer(const PochhammerSpec& spec);

// ---------------------------------------------------------------------------
// hypergeometric family

EvalResult hypergeometric_pfq(const std::vector<Cplx>& a_list,
                              const std::vector<Cplx>& b_list, Cplx z);

// B_x(a, b) = x^a / a * 2F1(a, 1-b; a+1; x); b = 0 allowed
EvalResult incomplete_beta(Cplx x, Cplx a, Cplx b);

// ---------------------------------------------------------------------------
// polynomials, Bessel, Gudermannian

EvalResult poly_eval(const PolyFamily& spec, Cplx x);

EvalResult bessel_j(Cplx nu, Cplx z);

// gd(z) = 2 atan(tanh(z/2)), principal branches
EvalResult gudermannian(Cplx z);

}  // namespace idv
