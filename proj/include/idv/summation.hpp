#pragma once

// Convergence-controlled evaluation of infinite series, bilateral series,
// nested sums, finite sums and infinite products of complex terms.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "idv/numerics.hpp"

namespace idv {

struct AxisRange {
  long start = 0;
  long end = 0;        // ignored when infinite
  bool infinite = false;
  // optional triangular bound: end index as a function of the outer indices
  std::function<long(const long*)> bound_of_outer;
};

struct TermGenerator {
  // idx has one entry per axis, in declaration order (outer first)
  std::function<Cplx(const long*)> eval;
  // optional: log of the factor for products, preserving the winding the
  // factor's analytic form carries (exponent * log base instead of the
  // principal log of the value)
  std::function<Cplx(const long*)> log_eval;
  int arity = 1;
  std::array<AxisRange, 3> axes{};
  bool bilateral = false;  // axis 0 ranges over all integers
  bool alternating_hint = false;
};

enum class SumStrategy {
  direct,
  wynn_epsilon,
  levin_u,
  euler_alternating,
  shells,
  finite_exact,
  split_halves
};

const char* to_string(SumStrategy s);

struct SumResult {
  Cplx value{0.0, 0.0};
  double abs_err = 0.0;
  long terms_used = 0;
  SumStrategy strategy_used = SumStrategy::direct;
  bool converged = true;
  std::string note;  // diagnostics (branch-ambiguity warnings and the like)
};

SumResult sum_series(const TermGenerator& g, const EngineConfig& cfg);
SumResult sum_bilateral(const TermGenerator& g, const EngineConfig& cfg);
SumResult sum_multi(const TermGenerator& g, const EngineConfig& cfg);
SumResult prod_infinite(const TermGenerator& g, const EngineConfig& cfg);
SumResult sum_finite(const TermGenerator& g);
SumResult prod_finite(const TermGenerator& g);

// sequence transforms exposed for the property suites
Cplx accel_wynn_epsilon(const std::vector<Cplx>& partial_sums, double* err);
Cplx accel_levin_u(const std::vector<Cplx>& terms, double* err);

}  // namespace idv
