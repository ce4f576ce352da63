#pragma once

// Adaptive numerical integration of complex-valued integrands over real
// intervals: finite panels by 15-point Gauss-Kronrod with worst-first
// refinement, singular endpoints and half-lines by double-exponential rules,
// oscillatory half-line tails by zero-splitting with epsilon acceleration.

#include <functional>
#include <optional>

#include "idv/numerics.hpp"

namespace idv {

struct Integrand {
  std::function<Cplx(double)> eval;  // defined on the open interval
  bool singular_lower = false;
  bool singular_upper = false;
  std::optional<double> oscillatory_hint;  // frequency of oscillation
};

struct QuadResult {
  Cplx value{0.0, 0.0};
  double abs_err = 0.0;
  long evaluations = 0;
  int subdivisions = 0;
  bool converged = true;
};

QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            const EngineConfig& cfg);

// (0, inf); integrand must decay (caller asserts)
QuadResult integrate_halfline(const Integrand& f, const EngineConfig& cfg);

// (1, inf) with a log(log x)-type singularity at 1: substitute x = e^u
QuadResult integrate_lower_limit_one(const Integrand& f,
                                     const EngineConfig& cfg);

// Integral_0^inf x^{s-1} f(x) dx
QuadResult mellin_sample(const Integrand& f, Cplx s, const EngineConfig& cfg);

// fixed-level tanh-sinh on a finite interval; exposed for the oracle suites
QuadResult tanh_sinh_raw(const std::function<Cplx(double)>& f, double lo,
                         double hi, int max_level);

}  // namespace idv
