#include <algorithm>
#include <vector>

#include "accel.hpp"
#include "idv/quadrature.hpp"

namespace idv {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo, hi;
  Cplx value;
  double err;
};

struct GkOut {
  Cplx kron;
  double err;
  bool finite;
};

GkOut gk15(const std::function<Cplx(double)>& f, double lo, double hi,
           long* evals) {
  double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
  Cplx fk[15];
  bool finite = true;
  Cplx kron = 0.0, gauss = 0.0;
  double resabs = 0.0;
  for (int i = 0; i < 8; ++i) {
    Cplx fa = f(c - r * kXgk[i]);
    Cplx fb = (i < 7) ? f(c + r * kXgk[i]) : fa;
    *evals += (i < 7) ? 2 : 1;
    if (!is_finite(fa) || !is_finite(fb)) finite = false;
    Cplx pair = (i < 7) ? fa + fb : fa;
    fk[i] = pair;
    kron += kWgk[i] * pair;
    resabs += kWgk[i] * (std::abs(fa) + ((i < 7) ? std::abs(fb) : 0.0));
    if (i % 2 == 1) gauss += kWg[i / 2] * pair;
  }
  if (std::abs(kXgk[7]) == 0.0) gauss += kWg[3] * fk[7];
  kron *= r;
  gauss *= r;
  resabs *= r;
  // QUADPACK-style error inflation of |K - G|
  Cplx mean = kron / (hi - lo);
  double resasc = 0.0;
  for (int i = 0; i < 8; ++i)
    resasc += kWgk[i] * std::abs(fk[i] - ((i < 7) ? 2.0 : 1.0) * mean);
  resasc *= r;
  double diff = std::abs(kron - gauss);
  double err = diff;
  if (resasc != 0.0 && diff != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * diff / resasc, 1.5));
  err = std::max(err, 50.0 * kEps * resabs);
  return {kron, err, finite};
}

// probe for an endpoint singularity: |f| must stay bounded approaching it
bool endpoint_singular(const std::function<Cplx(double)>& f, double at,
                       double toward, long* evals) {
  double scale = std::abs(toward - at);
  double m0 = 0.0;
  bool growing = false;
  double prev = -1.0;
  for (double eps : {1e-4, 1e-6, 1e-8}) {
    Cplx v = f(at + (toward - at) * eps);
    ++*evals;
    if (!is_finite(v)) return true;
    double m = std::abs(v);
    if (prev >= 0.0 && m > 8.0 * prev + 1.0) growing = true;
    prev = m;
    m0 = std::max(m0, m);
  }
  (void)scale;
  return growing;
}

struct TsOut {
  Cplx value;
  double err;
  long evals;
  int levels;
  bool converged;
};

// tanh-sinh on (lo, hi); never samples the endpoints, distances to the
// endpoints computed in stable form
TsOut tanh_sinh(const std::function<Cplx(double)>& f, double lo, double hi,
                int max_level, double tol) {
  const double half_pi = 1.5707963267948966;
  double r = 0.5 * (hi - lo);
  CplxSum acc;
  Cplx prev = 0.0, cur = 0.0;
  double err = kInf;
  long evals = 0;
  int level = 0;
  for (level = 0; level <= max_level; ++level) {
    double h = std::ldexp(1.0, -level);
    int kstart = level == 0 ? 0 : 1;
    int kstep = level == 0 ? 1 : 2;
    CplxSum fresh;
    for (int k = kstart;; k += kstep) {
      double t = k * h;
      double u = half_pi * std::sinh(t);
      double ch = std::cosh(u);
      double w = half_pi * std::cosh(t) / (ch * ch);
      double dist = r * 2.0 / (std::exp(2.0 * u) + 1.0);
      if (w < 1e-17 * (1.0) || dist <= 0.0) break;
      double xl = lo + dist;
      double xr = hi - dist;
      Cplx contrib{0.0, 0.0};
      Cplx fl = f(xl);
      ++evals;
      if (is_finite(fl))
        contrib += fl;
      else if (dist > 1e-13 * r)
        return {cur, kInf, evals, level, false};
      if (k > 0) {
        Cplx fr = f(xr);
        ++evals;
        if (is_finite(fr))
          contrib += fr;
        else if (dist > 1e-13 * r)
          return {cur, kInf, evals, level, false};
      }
      fresh.add(w * contrib);
      if (k > 8000) break;
    }
    acc.add(fresh.value());
    prev = cur;
    cur = acc.value() * r * std::ldexp(1.0, -level);
    if (level >= 2) {
      double d1 = std::abs(cur - prev);
      double e = d1 < 1.0 ? d1 * d1 : d1;  // level differences square up
      err = std::min(err, std::max(e, 4.0 * kEps * std::abs(cur)));
      if (d1 <= tol * 0.25 || d1 <= 4.0 * kEps * std::abs(cur)) {
        err = std::min(err, std::max(d1, 4.0 * kEps * std::abs(cur)));
        return {cur, err, evals, level, true};
      }
    }
  }
  double d1 = std::abs(cur - prev);
  return {cur, std::max(d1, 4.0 * kEps * std::abs(cur)), evals, max_level,
          d1 < 1e-8 * (std::abs(cur) + 1.0)};
}

// exp-sinh on (a, inf) for decaying integrands
TsOut exp_sinh(const std::function<Cplx(double)>& f, double a, int max_level,
               double tol) {
  const double half_pi = 1.5707963267948966;
  CplxSum acc;
  Cplx prev = 0.0, cur = 0.0;
  double err = kInf;
  long evals = 0;
  int level = 0;
  for (level = 0; level <= max_level; ++level) {
    double h = std::ldexp(1.0, -level);
    int kstart = level == 0 ? 0 : 1;
    int kstep = level == 0 ? 1 : 2;
    CplxSum fresh;
    for (int dir : {+1, -1}) {
      for (int k = (dir > 0) ? kstart : std::max(kstart, 1);; k += kstep) {
        double t = dir * k * h;
        double u = half_pi * std::sinh(t);
        double xoff = std::exp(u);
        double w = half_pi * std::cosh(t) * xoff;
        if (xoff > 1e300 || w > 1e300) break;       // far right tail
        if (xoff < 1e-300 || w < 1e-300) break;     // collapsed onto a
        Cplx fv = f(a + xoff);
        ++evals;
        if (!is_finite(fv)) {
          if (xoff > 1e-250) return {cur, kInf, evals, level, false};
          break;  // singular limit at a, weight already negligible
        }
        Cplx c = w * fv;
        fresh.add(c);
        if (k > 3 &&
            std::abs(c) < 1e-18 * (std::abs(acc.value()) +
                                   std::abs(fresh.value()) + 1e-30))
          break;
        if (k > 4000) break;
        if (k == 0) break;  // center node evaluated once
      }
    }
    acc.add(fresh.value());
    prev = cur;
    cur = acc.value() * std::ldexp(1.0, -level);
    if (level >= 2) {
      double d1 = std::abs(cur - prev);
      double e = d1 < 1.0 ? d1 * d1 : d1;
      err = std::min(err, std::max(e, 4.0 * kEps * std::abs(cur)));
      if (d1 <= tol * 0.25 || d1 <= 4.0 * kEps * std::abs(cur))
        return {cur, err, evals, level, true};
    }
  }
  double d1 = std::abs(cur - prev);
  return {cur, std::max(d1, 4.0 * kEps * std::abs(cur)), evals, max_level,
          d1 < 1e-8 * (std::abs(cur) + 1.0)};
}

QuadResult gk_adaptive(const std::function<Cplx(double)>& f, double lo,
                       double hi, const EngineConfig& cfg, double tol_abs,
                       double tol_rel) {
  long evals = 0;
  std::vector<Panel> panels;
  GkOut first = gk15(f, lo, hi, &evals);
  panels.push_back({lo, hi, first.kron, first.finite ? first.err : kInf});
  double err_reported = kInf;
  int splits = 0;
  const int max_panels = 1 << std::min(cfg.max_quad_depth, 13);
  while (true) {
    Cplx total = 0.0;
    double errsum = 0.0;
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      errsum += panels[i].err;
      if (panels[i].err > worst_err) {
        worst_err = panels[i].err;
        worst = i;
      }
    }
    err_reported = std::min(err_reported, errsum);
    bool good = errsum <= std::max(tol_abs, tol_rel * std::abs(total));
    if (good || static_cast<int>(panels.size()) >= max_panels ||
        !std::isfinite(errsum)) {
      QuadResult r;
      r.value = total;
      r.abs_err = err_reported;
      r.evaluations = evals;
      r.subdivisions = splits;
      r.converged = good && std::isfinite(errsum);
      return r;
    }
    Panel p = panels[worst];
    double mid = 0.5 * (p.lo + p.hi);
    GkOut a = gk15(f, p.lo, mid, &evals);
    GkOut b = gk15(f, mid, p.hi, &evals);
    panels[worst] = {p.lo, mid, a.kron, a.finite ? a.err : kInf};
    panels.push_back({mid, p.hi, b.kron, b.finite ? b.err : kInf});
    ++splits;
    if (!a.finite && !b.finite && p.hi - p.lo < 1e-12 * (hi - lo)) {
      // genuinely non-finite integrand
      QuadResult r;
      r.value = 0.0;
      r.abs_err = kInf;
      r.evaluations = evals;
      r.subdivisions = splits;
      r.converged = false;
      return r;
    }
  }
}

}  // namespace

QuadResult tanh_sinh_raw(const std::function<Cplx(double)>& f, double lo,
                         double hi, int max_level) {
  TsOut t = tanh_sinh(f, lo, hi, max_level, 1e-16);
  QuadResult r;
  r.value = t.value;
  r.abs_err = t.err;
  r.evaluations = t.evals;
  r.subdivisions = t.levels;
  r.converged = t.converged;
  return r;
}

QuadResult integrate_finite(const Integrand& f, double lo, double hi,
                            const EngineConfig& cfg) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw domain_error("integrate_finite needs finite lo < hi");
  double tol_abs = cfg.target_abs_tol, tol_rel = cfg.target_rel_tol;
  long evals = 0;
  bool sing_lo = f.singular_lower ||
                 endpoint_singular(f.eval, lo, hi, &evals);
  bool sing_hi = f.singular_upper ||
                 endpoint_singular(f.eval, hi, lo, &evals);
  if (sing_lo || sing_hi) {
    int lvl = std::min(12, cfg.max_quad_depth);
    TsOut t = tanh_sinh(f.eval, lo, hi, lvl, tol_abs);
    QuadResult r;
    r.value = t.value;
    r.abs_err = t.err;
    r.evaluations = t.evals + evals;
    r.subdivisions = t.levels;
    r.converged = t.converged;
    return r;
  }
  QuadResult r = gk_adaptive(f.eval, lo, hi, cfg, tol_abs, tol_rel);
  r.evaluations += evals;
  if (!r.converged) {
    // retry whole-interval tanh-sinh; rescues integrable interior trouble
    TsOut t = tanh_sinh(f.eval, lo, hi, std::min(12, cfg.max_quad_depth),
                        tol_abs);
    if (t.converged && t.err < r.abs_err) {
      r.value = t.value;
      r.abs_err = t.err;
      r.evaluations += t.evals;
      r.converged = true;
    }
  }
  return r;
}

QuadResult integrate_halfline(const Integrand& f, const EngineConfig& cfg) {
  double tol = cfg.target_abs_tol;
  // (0, 1]: tanh-sinh honors any lower-endpoint singularity
  TsOut head = tanh_sinh(f.eval, 0.0, 1.0, std::min(12, cfg.max_quad_depth),
                         0.5 * tol);
  QuadResult r;
  if (f.oscillatory_hint && *f.oscillatory_hint > 0.5) {
    // split [1, inf) at the oscillation scale and epsilon-accelerate the
    // partial integrals
    double period = kPi.hi / *f.oscillatory_hint;
    long evals = 0;
    std::vector<Cplx> partial;
    CplxSum acc;
    double x0 = 1.0;
    double direct_err = 0.0;
    bool settled = false;
    for (int seg = 0; seg < 800; ++seg) {
      double x1 = x0 + period;
      GkOut g = gk15(f.eval, x0, x1, &evals);
      // refine the segment once if rough
      if (g.err > 1e-13 * (std::abs(g.kron) + 1.0)) {
        GkOut g1 = gk15(f.eval, x0, 0.5 * (x0 + x1), &evals);
        GkOut g2 = gk15(f.eval, 0.5 * (x0 + x1), x1, &evals);
        g.kron = g1.kron + g2.kron;
        g.err = g1.err + g2.err;
      }
      acc.add(g.kron);
      direct_err += g.err;
      partial.push_back(acc.value());
      x0 = x1;
      if (seg > 8) {
        double werr;
        Cplx west = detail::wynn_epsilon(partial, &werr);
        if (werr + direct_err < 0.5 * tol ||
            (seg > 40 && werr < 1e-11 * (std::abs(west) + 1.0))) {
          r.value = head.value + west;
          r.abs_err = head.err + werr + direct_err;
          r.evaluations = head.evals + evals;
          r.subdivisions = seg;
          r.converged = head.converged;
          return r;
        }
      }
      // pure decay without sign changes: stop when segments vanish
      if (std::abs(g.kron) < 0.1 * tol && seg > 4) {
        r.value = head.value + acc.value();
        r.abs_err = head.err + direct_err + std::abs(g.kron);
        r.evaluations = head.evals + evals;
        r.subdivisions = seg;
        r.converged = head.converged;
        return r;
      }
    }
    double werr;
    Cplx west = detail::wynn_epsilon(partial, &werr);
    r.value = head.value + west;
    r.abs_err = head.err + werr + direct_err;
    r.evaluations = head.evals + evals;
    r.converged = false;
    return r;
  }
  TsOut tail = exp_sinh(f.eval, 1.0, std::min(12, cfg.max_quad_depth),
                        0.5 * tol);
  // divergence check: the two pieces both finite
  if (!is_finite(head.value) || !is_finite(tail.value))
    throw divergence_error("half-line integral appears to diverge");
  r.value = head.value + tail.value;
  r.abs_err = head.err + tail.err;
  r.evaluations = head.evals + tail.evals;
  r.subdivisions = head.levels + tail.levels;
  r.converged = head.converged && tail.converged;
  return r;
}

QuadResult integrate_lower_limit_one(const Integrand& f,
                                     const EngineConfig& cfg) {
  // x = e^u maps (1, inf) to (0, inf); the log log x singularity becomes a
  // log u singularity at 0
  Integrand g;
  g.eval = [&f](double u) -> Cplx { return f.eval(std::exp(u)) * std::exp(u); };
  g.singular_lower = true;
  g.oscillatory_hint = f.oscillatory_hint;
  return integrate_halfline(g, cfg);
}

QuadResult mellin_sample(const Integrand& f, Cplx s, const EngineConfig& cfg) {
  Integrand g;
  Cplx sm1 = s - 1.0;
  g.eval = [&f, sm1](double x) -> Cplx {
    return f.eval(x) * std::exp(sm1 * std::log(x));
  };
  g.singular_lower = f.singular_lower || s.real() < 1.0;
  g.singular_upper = f.singular_upper;
  g.oscillatory_hint = f.oscillatory_hint;
  return integrate_halfline(g, cfg);
}

}  // namespace idv
