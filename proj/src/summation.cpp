#include <algorithm>

#include "accel.hpp"
#include "idv/summation.hpp"

namespace idv {
namespace {

constexpr long kProbe = 32;  // terms examined before picking a strategy

struct TermStats {
  bool decaying_geometric = false;  // trailing ratios uniformly < 0.75
  bool alternating = false;         // successive terms rotate by ~pi
  double ratio = 1.0;
};

TermStats classify(const std::vector<Cplx>& t) {
  TermStats st;
  std::size_t n = t.size();
  if (n < 10) return st;
  double rmax = 0.0;
  int alt = 0, considered = 0;
  for (std::size_t i = n - 8; i < n; ++i) {
    double a = std::abs(t[i - 1]), b = std::abs(t[i]);
    if (a == 0.0 || b == 0.0) {
      rmax = std::max(rmax, 0.0);
      continue;
    }
    rmax = std::max(rmax, b / a);
    Cplx q = t[i] / t[i - 1];
    ++considered;
    if (q.real() < -0.1 * std::abs(q)) ++alt;
  }
  st.ratio = rmax;
  st.decaying_geometric = rmax < 0.75;
  st.alternating = considered > 0 && alt >= considered - 1;
  return st;
}

SumResult direct_tail(const TermGenerator& g, const EngineConfig& cfg,
                      std::vector<Cplx>& terms, CplxSum& acc, long n0) {
  // continue with a running geometric tail bound
  SumResult r;
  double magsum = 0.0;
  for (Cplx v : terms) magsum += std::abs(v);
  long idx = n0 + static_cast<long>(terms.size());
  long zeros = 0;
  double tol = cfg.target_abs_tol;
  for (long n = static_cast<long>(terms.size()); n < cfg.max_terms; ++n) {
    long i = idx++;
    Cplx v = g.eval(&i);
    acc.add(v);
    terms.push_back(v);
    magsum += std::abs(v);
    double tm = std::abs(v);
    if (tm == 0.0) {
      if (++zeros >= 3) {
        r.value = acc.value();
        r.abs_err = magsum * 2.0 * kEps;
        r.terms_used = n + 1;
        r.strategy_used = SumStrategy::direct;
        r.floor_error();
        return r;
      }
      continue;
    }
    zeros = 0;
    std::size_t m = terms.size();
    if (m >= 8) {
      double rho = 0.0;
      for (std::size_t j = m - 4; j < m; ++j) {
        double a = std::abs(terms[j - 1]), b = std::abs(terms[j]);
        rho = std::max(rho, a > 0.0 ? b / a : 0.0);
      }
      if (rho < 0.95) {
        double tail = tm * rho / (1.0 - rho);
        if (tail + magsum * kEps <=
            std::max(tol, cfg.target_rel_tol * std::abs(acc.value()))) {
          r.value = acc.value();
          r.abs_err = tail + magsum * 2.0 * kEps;
          r.terms_used = static_cast<long>(m);
          r.strategy_used = SumStrategy::direct;
          r.floor_error();
          return r;
        }
      }
    }
  }
  r.value = acc.value();
  r.abs_err = std::abs(terms.empty() ? Cplx(0) : terms.back()) * 10.0 +
              magsum * 2.0 * kEps;
  r.terms_used = static_cast<long>(terms.size());
  r.strategy_used = SumStrategy::direct;
  r.converged = false;
  r.floor_error();
  return r;
}

SumResult accelerate(const TermGenerator& g, const EngineConfig& cfg,
                     std::vector<Cplx>& terms, long n0) {
  // grow the window until two transforms agree within tolerance
  SumResult r;
  long idx = n0 + static_cast<long>(terms.size());
  std::size_t window = std::max<std::size_t>(24, terms.size());
  double tol = cfg.target_abs_tol;
  Cplx best = 0.0;
  double best_err = kInf;
  SumStrategy best_strategy = SumStrategy::wynn_epsilon;
  for (int round = 0; round < 7; ++round) {
    while (terms.size() < window &&
           static_cast<long>(terms.size()) < cfg.max_terms) {
      long i = idx++;
      terms.push_back(g.eval(&i));
    }
    std::vector<Cplx> partial(terms.size());
    CplxSum ps;
    double magsum = 0.0;
    for (std::size_t j = 0; j < terms.size(); ++j) {
      ps.add(terms[j]);
      partial[j] = ps.value();
      magsum += std::abs(terms[j]);
    }
    double e_eps, e_lev, e_eul;
    Cplx v_eps = detail::wynn_epsilon(partial, &e_eps);
    Cplx v_lev = detail::levin_u(terms, &e_lev);
    Cplx v_eul = detail::euler_average(partial, &e_eul);
    double round_floor = magsum * 2.0 * kEps;

    struct Cand {
      Cplx v;
      double e;
      SumStrategy s;
    };
    std::array<Cand, 3> cand{{{v_lev, e_lev, SumStrategy::levin_u},
                              {v_eps, e_eps, SumStrategy::wynn_epsilon},
                              {v_eul, e_eul, SumStrategy::euler_alternating}}};
    // acceptance: two transforms agreeing within the target
    for (std::size_t ai = 0; ai < cand.size(); ++ai)
      for (std::size_t bi = ai + 1; bi < cand.size(); ++bi) {
        double agree = std::abs(cand[ai].v - cand[bi].v);
        double combined = cand[ai].e + cand[bi].e + round_floor;
        if (agree <= std::max({tol, combined,
                               cfg.target_rel_tol * std::abs(cand[ai].v)}) &&
            cand[ai].e < best_err) {
          best = cand[ai].v;
          best_err = cand[ai].e + agree + round_floor;
          best_strategy = cand[ai].s;
        }
      }
    if (best_err <= std::max(tol, cfg.target_rel_tol * std::abs(best))) {
      r.value = best;
      r.abs_err = best_err;
      r.terms_used = static_cast<long>(terms.size());
      r.strategy_used = best_strategy;
      r.floor_error();
      return r;
    }
    window *= 2;
    if (static_cast<long>(window) > cfg.max_terms) break;
  }
  r.value = best_err < kInf ? best : 0.0;
  r.abs_err = best_err;
  r.terms_used = static_cast<long>(terms.size());
  r.strategy_used = best_strategy;
  r.converged = best_err < kInf &&
                best_err <= std::max(1e-6, 100.0 * tol) * (std::abs(best) + 1.0);
  r.floor_error();
  return r;
}

}  // namespace

const char* to_string(SumStrategy s) {
  switch (s) {
    case SumStrategy::direct: return "direct";
    case SumStrategy::wynn_epsilon: return "wynn_epsilon";
    case SumStrategy::levin_u: return "levin_u";
    case SumStrategy::euler_alternating: return "euler_alternating";
    case SumStrategy::shells: return "shells";
    case SumStrategy::finite_exact: return "finite_exact";
    case SumStrategy::split_halves: return "split_halves";
  }
  return "?";
}

Cplx accel_wynn_epsilon(const std::vector<Cplx>& partial_sums, double* err) {
  return detail::wynn_epsilon(partial_sums, err);
}

Cplx accel_levin_u(const std::vector<Cplx>& terms, double* err) {
  return detail::levin_u(terms, err);
}

SumResult sum_series(const TermGenerator& g, const EngineConfig& cfg) {
  if (g.arity != 1 || g.bilateral)
    throw domain_error("sum_series handles unilateral arity-1 generators");
  const long n0 = g.axes[0].start;
  std::vector<Cplx> terms;
  CplxSum acc;
  terms.reserve(64);
  for (long k = 0; k < kProbe; ++k) {
    long i = n0 + k;
    Cplx v = g.eval(&i);
    if (!is_finite(v))
      throw pole_error("series term not finite at index " + std::to_string(i),
                       Cplx(static_cast<double>(i), 0.0));
    terms.push_back(v);
    acc.add(v);
  }
  TermStats st = classify(terms);

  Accel mode = cfg.acceleration;
  if (g.alternating_hint && mode == Accel::automatic) mode = Accel::levin_u;
  switch (mode) {
    case Accel::direct:
      return direct_tail(g, cfg, terms, acc, n0);
    case Accel::wynn_epsilon:
    case Accel::levin_u:
    case Accel::euler_alternating:
      return accelerate(g, cfg, terms, n0);
    case Accel::automatic:
      break;
  }
  if (st.decaying_geometric) {
    SumResult r = direct_tail(g, cfg, terms, acc, n0);
    if (r.converged) return r;
  }
  return accelerate(g, cfg, terms, n0);
}

SumResult sum_bilateral(const TermGenerator& g, const EngineConfig& cfg) {
  if (!g.bilateral) throw domain_error("sum_bilateral needs a bilateral axis");
  TermGenerator pos = g;
  pos.bilateral = false;
  pos.axes[0].start = 0;
  pos.axes[0].infinite = true;
  pos.eval = [&g](const long* idx) {
    long i = idx[0];
    return g.eval(&i);
  };
  TermGenerator neg = pos;
  neg.eval = [&g](const long* idx) {
    long i = -1 - idx[0];
    return g.eval(&i);
  };
  SumResult a, b;
  try {
    a = sum_series(pos, cfg);
  } catch (const divergence_error&) {
    throw divergence_error("bilateral series diverges toward +infinity");
  }
  try {
    b = sum_series(neg, cfg);
  } catch (const divergence_error&) {
    throw divergence_error("bilateral series diverges toward -infinity");
  }
  if (!a.converged &&
      std::abs(a.value) > 1e6 * (std::abs(b.value) + 1.0) && a.abs_err > 1e3)
    throw divergence_error("bilateral series diverges toward +infinity");
  if (!b.converged &&
      std::abs(b.value) > 1e6 * (std::abs(a.value) + 1.0) && b.abs_err > 1e3)
    throw divergence_error("bilateral series diverges toward -infinity");
  SumResult r;
  r.value = a.value + b.value;
  r.abs_err = a.abs_err + b.abs_err;
  r.terms_used = a.terms_used + b.terms_used;
  r.strategy_used = SumStrategy::split_halves;
  r.converged = a.converged && b.converged;
  r.note = std::string("+half: ") + to_string(a.strategy_used) +
           ", -half: " + to_string(b.strategy_used);
  r.floor_error();
  return r;
}

namespace {

// enumerate one diagonal shell: indices of the infinite axes sum to `shell`
// (offsets from their starts); finite axes are enumerated exactly.
void shell_enumerate(const TermGenerator& g, const std::vector<int>& inf_axes,
                     long shell, int axis, long* idx, long remaining,
                     CplxSum& acc, double& mag, long& count) {
  if (axis == g.arity) {
    if (remaining != 0) return;
    Cplx v = g.eval(idx);
    if (!is_finite(v))
      throw pole_error("multi-sum term not finite", Cplx(0.0, 0.0));
    acc.add(v);
    mag += std::abs(v);
    ++count;
    return;
  }
  const AxisRange& ax = g.axes[static_cast<std::size_t>(axis)];
  bool is_inf =
      std::find(inf_axes.begin(), inf_axes.end(), axis) != inf_axes.end();
  if (is_inf) {
    bool last_inf = true;
    for (int a2 : inf_axes)
      if (a2 > axis) last_inf = false;
    if (last_inf) {
      idx[axis] = ax.start + remaining;
      shell_enumerate(g, inf_axes, shell, axis + 1, idx, 0, acc, mag, count);
    } else {
      for (long off = 0; off <= remaining; ++off) {
        idx[axis] = ax.start + off;
        shell_enumerate(g, inf_axes, shell, axis + 1, idx, remaining - off,
                        acc, mag, count);
      }
    }
    return;
  }
  long end = ax.bound_of_outer ? ax.bound_of_outer(idx) : ax.end;
  for (long v = ax.start; v <= end; ++v) {
    idx[axis] = v;
    shell_enumerate(g, inf_axes, shell, axis + 1, idx, remaining, acc, mag,
                    count);
  }
}

}  // namespace

SumResult sum_multi(const TermGenerator& g, const EngineConfig& cfg) {
  if (g.arity < 2 || g.arity > 3)
    throw domain_error("sum_multi handles arity 2 or 3");
  std::vector<int> inf_axes;
  for (int a = 0; a < g.arity; ++a)
    if (g.axes[static_cast<std::size_t>(a)].infinite) inf_axes.push_back(a);
  SumResult r;
  r.strategy_used = SumStrategy::shells;
  if (inf_axes.empty()) return sum_finite(g);

  CplxSum acc;
  double magsum = 0.0;
  long count = 0;
  const long max_shells = 2000;
  double tol = cfg.target_abs_tol;
  std::vector<double> shellmag;
  for (long shell = 0; shell < max_shells; ++shell) {
    CplxSum sacc;
    double smag = 0.0;
    long idx[3] = {0, 0, 0};
    shell_enumerate(g, inf_axes, shell, 0, idx, shell, sacc, smag, count);
    acc.add(sacc.value());
    magsum += smag;
    shellmag.push_back(std::abs(sacc.value()));
    std::size_t m = shellmag.size();
    if (m >= 6) {
      double recent = 0.0;
      for (std::size_t j = m - 3; j < m; ++j)
        recent = std::max(recent, shellmag[j]);
      double prevmax = 0.0;
      for (std::size_t j = m - 6; j < m - 3; ++j)
        prevmax = std::max(prevmax, shellmag[j]);
      double rho = prevmax > 0.0 ? std::min(0.9, recent / prevmax) : 0.0;
      double tail = recent * rho / (1.0 - rho) + recent;
      if (recent == 0.0) tail = 0.0;
      if (tail <= std::max(tol, cfg.target_rel_tol * std::abs(acc.value())) &&
          shell > 4) {
        r.value = acc.value();
        r.abs_err = tail + magsum * 4.0 * kEps;
        r.terms_used = count;
        r.floor_error();
        return r;
      }
    }
    if (count > cfg.max_terms) break;
  }
  r.value = acc.value();
  r.abs_err = (shellmag.empty() ? 0.0 : shellmag.back()) * 10.0 +
              magsum * 4.0 * kEps;
  r.terms_used = count;
  r.converged = false;
  r.floor_error();
  return r;
}

SumResult prod_infinite(const TermGenerator& g, const EngineConfig& cfg) {
  if (g.arity != 1) throw domain_error("prod_infinite handles arity 1");
  std::string note;
  bool zero_hit = false;
  long zero_at = 0;
  TermGenerator logs = g;
  logs.log_eval = nullptr;
  logs.eval = [&g, &note, &zero_hit, &zero_at](const long* idx) -> Cplx {
    Cplx lg;
    if (g.log_eval) {
      lg = g.log_eval(idx);
      if (!is_finite(lg)) {
        Cplx f = g.eval(idx);
        if (std::abs(f) == 0.0) {
          zero_hit = true;
          zero_at = idx[0];
          return {0.0, 0.0};
        }
      }
      return lg;
    }
    Cplx f = g.eval(idx);
    if (std::abs(f) == 0.0) {
      zero_hit = true;
      zero_at = idx[0];
      return {0.0, 0.0};
    }
    if (f.real() < 0.0 && std::abs(f.imag()) < 1e-14 * std::abs(f.real()) &&
        note.empty())
      note = "factor on the negative real axis at index " +
             std::to_string(idx[0]) + "; principal log branch is ambiguous";
    return std::log(f);
  };
  SumResult s = sum_series(logs, cfg);
  if (zero_hit) {
    SumResult r;
    r.value = 0.0;
    r.abs_err = 0.0;
    r.terms_used = s.terms_used;
    r.strategy_used = s.strategy_used;
    r.note = "zero factor at index " + std::to_string(zero_at);
    r.floor_error();
    return r;
  }
  if (!s.converged && s.abs_err > 1e3)
    throw divergence_error("log-series of the product diverges");
  SumResult r;
  r.value = std::exp(s.value);
  r.abs_err = std::abs(r.value) * std::min(1e30, s.abs_err) *
                  (1.0 + s.abs_err) +
              4.0 * kEps * std::abs(r.value);
  r.terms_used = s.terms_used;
  r.strategy_used = s.strategy_used;
  r.converged = s.converged;
  r.note = note.empty() ? s.note : (s.note.empty() ? note : s.note + "; " + note);
  r.floor_error();
  return r;
}

namespace {

void finite_enumerate(const TermGenerator& g, int axis, long* idx,
                      CplxSum& acc, Cplx& prod, double& mag, long& count,
                      bool product) {
  if (axis == g.arity) {
    Cplx v = g.eval(idx);
    if (!is_finite(v))
      throw pole_error(
          "term not finite at index " + std::to_string(idx[0]),
          Cplx(static_cast<double>(idx[0]), 0.0));
    if (product)
      prod *= v;
    else
      acc.add(v);
    mag += std::abs(v);
    ++count;
    return;
  }
  const AxisRange& ax = g.axes[static_cast<std::size_t>(axis)];
  if (ax.infinite) throw domain_error("finite evaluation on an infinite axis");
  long end = ax.bound_of_outer ? ax.bound_of_outer(idx) : ax.end;
  for (long v = ax.start; v <= end; ++v) {
    idx[axis] = v;
    finite_enumerate(g, axis + 1, idx, acc, prod, mag, count, product);
  }
}

SumResult finite_run(const TermGenerator& g, bool product) {
  CplxSum acc;
  Cplx prod = 1.0;
  double mag = 0.0;
  long count = 0;
  long idx[3] = {0, 0, 0};
  finite_enumerate(g, 0, idx, acc, prod, mag, count, product);
  SumResult r;
  r.value = product ? prod : acc.value();
  r.abs_err = (product ? std::abs(prod) * (count + 1.0)
                       : mag + 1.0) * 2.0 * kEps;
  r.terms_used = count;
  r.strategy_used = SumStrategy::finite_exact;
  r.floor_error();
  return r;
}

}  // namespace

SumResult sum_finite(const TermGenerator& g) { return finite_run(g, false); }

SumResult prod_finite(const TermGenerator& g) { return finite_run(g, true); }

}  // namespace idv
