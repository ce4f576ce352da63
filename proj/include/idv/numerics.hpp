#pragma once

// Foundation types for the identity verifier: complex values, error-carrying
// results, evaluation configuration, fundamental constants and the
// compensated accumulators used by every summation loop.

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace idv {

using Cplx = std::complex<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();
inline constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kEps = std::numeric_limits<double>::epsilon();

// ---------------------------------------------------------------------------
// error types

// Pole of an evaluated function; carries the offending location so the
// verifier can report "identity hits pole at sample point".
class pole_error : public std::runtime_error {
public:
  pole_error(const std::string& what, Cplx at)
      : std::runtime_error(what), at_(at) {}
  Cplx at() const { return at_; }

private:
  Cplx at_;
};

// Argument outside the implemented domain; names the violated condition.
class domain_error : public std::runtime_error {
public:
  explicit domain_error(const std::string& condition)
      : std::runtime_error(condition) {}
};

// A series / product / integral recognized as divergent.
class divergence_error : public std::runtime_error {
public:
  explicit divergence_error(const std::string& what)
      : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// result and configuration records

struct EvalResult {
  Cplx value{0.0, 0.0};
  double abs_err = 0.0;   // estimated absolute error, >= 0
  long terms_used = 0;
  bool converged = true;

  // never report a zero error for a non-trivially-computed value
  void floor_error() {
    double f = (std::abs(value) + 1.0) * 4.0 * kEps;
    if (abs_err < f) abs_err = f;
  }
};

enum class Accel { direct, wynn_epsilon, levin_u, euler_alternating, automatic };

struct EngineConfig {
  double target_abs_tol = 1e-12;
  double target_rel_tol = 1e-10;
  long max_terms = 200000;
  int max_quad_depth = 30;
  Accel acceleration = Accel::automatic;
};

// ---------------------------------------------------------------------------
// fundamental constants, stored as double-double literal pairs
// (hi is the nearest double, lo the rounding remainder; hi+lo is good to
// ~32 significant digits)

struct DDConst {
  double hi, lo;
  operator double() const { return hi; }
};

inline constexpr DDConst kPi       {3.141592653589793,   1.2246467991473532e-16};
inline constexpr DDConst kEulerGamma{0.5772156649015329, -4.942915152430645e-18};
inline constexpr DDConst kCatalan  {0.915965594177219,    3.747558421514984e-18};
inline constexpr DDConst kGlaisher {1.2824271291006226,   1.6547388686645398e-17};
inline constexpr DDConst kLog2Pi   {1.8378770664093456,  -7.756588316134483e-17};

enum class Constant { pi, euler_gamma, catalan, glaisher, log_2pi };

Cplx constant(Constant which);

// ---------------------------------------------------------------------------
// compensated (Neumaier) accumulation, real and complex

class KahanSum {
public:
  void add(double x) {
    double t = s_ + x;
    if (std::abs(s_) >= std::abs(x))
      c_ += (s_ - t) + x;
    else
      c_ += (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

private:
  double s_ = 0.0, c_ = 0.0;
};

class CplxSum {
public:
  void add(Cplx z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Cplx value() const { return {re_.value(), im_.value()}; }

private:
  KahanSum re_, im_;
};

// ---------------------------------------------------------------------------
// elementary complex operations (principal branch, arg in (-pi, pi])

bool is_finite(Cplx z);

// canonicalize -0.0 components so negative reals land on the upper side of
// the cut and arg() returns values in (-pi, pi]
Cplx canon(Cplx z);

Cplx complex_log(Cplx z);             // z != 0
Cplx complex_pow(Cplx z, Cplx w);     // not (z == 0 and Re w <= 0)
Cplx complex_sqrt(Cplx z);

// true if z is within tol of a non-positive integer; *which receives it
bool near_nonpos_int(Cplx z, long* which, double tol = 1e-12);

// coth(x) - 1 = 2 / (e^{2x} - 1), stable for large Re x
Cplx coth_m1(Cplx z);

}  // namespace idv
