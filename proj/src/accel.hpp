#pragma once

// Nonlinear sequence transformations shared by the summation engine, the
// boundary-|z| Lerch series and the oscillatory quadrature path.

#include <vector>

#include "idv/numerics.hpp"

namespace idv::detail {

// Wynn's epsilon algorithm applied to a sequence of partial sums.
// Returns the highest-order even-column entry; *err gets a stabilization
// estimate from the last two accessible columns.
inline Cplx wynn_epsilon(const std::vector<Cplx>& s, double* err) {
  std::size_t n = s.size();
  if (n == 0) {
    if (err) *err = kInf;
    return {0.0, 0.0};
  }
  if (n == 1) {
    if (err) *err = kInf;
    return s[0];
  }
  std::vector<Cplx> cur = s, prevprev(n + 1, Cplx(0.0, 0.0));
  Cplx best = s.back();
  Cplx prev_best = s[n - 2];
  // columns: eps_{k+1}^{(i)} = eps_{k-1}^{(i+1)} + 1/(eps_k^{(i+1)} - eps_k^{(i)})
  std::vector<Cplx> nxt;
  for (std::size_t k = 1; cur.size() > 1; ++k) {
    nxt.assign(cur.size() - 1, Cplx(0.0, 0.0));
    bool bad = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      Cplx d = cur[i + 1] - cur[i];
      if (std::abs(d) < 1e-305) {
        bad = true;
        nxt[i] = cur[i + 1];
        continue;
      }
      nxt[i] = prevprev[i + 1] + 1.0 / d;
    }
    prevprev = cur;
    cur = nxt;
    if (k % 2 == 0 && !cur.empty()) {
      prev_best = best;
      best = cur.back();
    }
    if (bad) break;
  }
  if (err) *err = std::abs(best - prev_best) + 8.0 * kEps * (std::abs(best) + 1.0);
  return best;
}

// Levin u-transform on the terms a_0, a_1, ...; remainder estimates
// omega_n = (beta + n) a_n. Rolling-triangle update, one pass over the terms,
// returns the last stable estimate.
inline Cplx levin_u(const std::vector<Cplx>& a, double* err) {
  const double beta = 1.0;
  std::size_t count = a.size();
  if (count < 3) {
    if (err) *err = kInf;
    Cplx s = 0.0;
    for (Cplx t : a) s += t;
    return s;
  }
  std::vector<Cplx> numer(count), denom(count);
  Cplx sum = 0.0, best = 0.0, prev = 0.0;
  double stab = kInf;
  for (std::size_t n = 0; n < count; ++n) {
    sum += a[n];
    Cplx omega = (beta + static_cast<double>(n)) * a[n];
    if (std::abs(omega) < 1e-305) omega = 1e-305;
    double term = 1.0 / (beta + static_cast<double>(n));
    denom[n] = term / omega;
    numer[n] = sum * denom[n];
    if (n > 0) {
      double ratio = (beta + static_cast<double>(n) - 1.0) * term;
      for (std::size_t j = 1; j <= n; ++j) {
        double fact = (static_cast<double>(n - j) + beta) * term;
        numer[n - j] = numer[n - j + 1] - fact * numer[n - j];
        denom[n - j] = denom[n - j + 1] - fact * denom[n - j];
        term *= ratio;
      }
    }
    if (std::abs(denom[0]) > 1e-305 && n >= 3) {
      prev = best;
      best = numer[0] / denom[0];
      stab = std::abs(best - prev);
    }
  }
  if (err) *err = stab + 8.0 * kEps * (std::abs(best) + 1.0);
  return best;
}

// iterated averaging (Euler transform style) for alternating sequences of
// partial sums
inline Cplx euler_average(const std::vector<Cplx>& s, double* err) {
  if (s.empty()) {
    if (err) *err = kInf;
    return {0.0, 0.0};
  }
  std::vector<Cplx> cur = s;
  Cplx best = s.back(), prev = best;
  while (cur.size() > 1) {
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      cur[i] = 0.5 * (cur[i] + cur[i + 1]);
    cur.pop_back();
    prev = best;
    best = cur.back();
  }
  if (err) *err = std::abs(best - prev) + 8.0 * kEps * (std::abs(best) + 1.0);
  return best;
}

}  // namespace idv::detail
