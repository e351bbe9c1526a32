#include "fnlab/f_eval.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <utility>

#include "fnlab/arith.hpp"
#include "fnlab/orthopoly.hpp"

namespace fnlab {

const char* to_string(Method m) {
  switch (m) {
    case Method::BernoulliSeries: return "bernoulli-series";
    case Method::LaguerreSeries: return "laguerre-series";
    case Method::EulerianClosed: return "eulerian-closed";
    case Method::HermiteIntegral: return "hermite-integral";
  }
  return "?";
}

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(WeightExponent w) {
  switch (w) {
    case WeightExponent::AsPrinted: return "as-printed";
    case WeightExponent::GaussianCorrected: return "gaussian-corrected";
  }
  return "?";
}

Sign classify_sign(const Real& value, const Real& error_bound) {
  if (value.is_nan() || error_bound.is_nan()) return Sign::Indeterminate;
  if (value - error_bound > 0L) return Sign::Positive;
  if (value + error_bound < 0L) return Sign::Negative;
  return Sign::Indeterminate;
}

namespace {

Real at_prec(const Real& v, long prec) {
  Real r(prec);
  mpfr_set(r.raw(), v.raw(), MPFR_RNDN);
  return r;
}

void require_positive_x(const Real& x, const char* who) {
  if (x.is_nan() || !(x > 0L)) {
    throw std::domain_error(std::string(who) + ": requires x > 0");
  }
}

// ---------------------------------------------------------------------------
// Bernoulli power series
// ---------------------------------------------------------------------------

// Shared exact B_j list, grown on demand; exact through j = 512 (beyond that
// the zeta-product float formula takes over before big-rational arithmetic
// turns quadratic in practice).
constexpr unsigned long kMaxExactBernoulli = 512;

const std::vector<Rational>& exact_bernoulli(unsigned long j_need) {
  static std::mutex mu;
  static std::vector<Rational> list;
  std::lock_guard<std::mutex> lock(mu);
  if (list.size() <= j_need) {
    unsigned long target = std::max<unsigned long>(j_need, 64);
    list = bernoulli_list(std::min<unsigned long>(target, kMaxExactBernoulli));
  }
  return list;
}

// Series coefficient c_j = ((j+n-1)!/(j-1)!) B_j / j! rounded to `wb` bits.
Real series_coefficient(unsigned long n, unsigned long j, long wb,
                        const PrecisionContext& ctx) {
  if (j <= kMaxExactBernoulli) {
    const auto& bern = exact_bernoulli(j);
    Rational c(bern[j]);
    c *= Rational(rising_factorial(j, n));
    c /= Rational(factorial_exact(j));
    c.canonicalize();
    return to_real(c, wb);
  }
  const FloatBernoulli b = bernoulli_float(j, ctx.with_target(wb).with_guard(32));
  return to_real(rising_factorial(j, n), wb) * b.value / factorial_real(j, wb);
}

struct SeriesPass {
  Real sum;
  Real abs_sum;
  Real tail;
  long terms = 0;
  bool tail_ok = false;
};

SeriesPass bernoulli_series_pass(unsigned long n, const Real& x, long wb,
                                 const PrecisionContext& ctx, const Real& tol,
                                 unsigned long j_cap) {
  SeriesPass p{Real(wb), Real(wb), Real(wb)};
  const Real x_w = at_prec(x, wb);
  const Real half_fact = ldexp2(factorial_real(n, wb), -1);
  p.sum = half_fact;
  p.abs_sum = half_fact;
  const Real x_sq = x_w * x_w;
  // (x / 2pi)^2 with a touch of outward slack so the geometric comparison
  // stays an upper bound after rounding.
  const Real slack = Real(1L, wb) + pow2(-40, wb);
  const Real ratio_base = x_sq / pow_ui(ldexp2(const_pi(wb), 1), 2) * slack;
  Real x_pow = x_w;  // x^{j-1} at j = 2
  Real term(wb);
  for (unsigned long j = 2; j <= j_cap; j += 2) {
    term = series_coefficient(n, j, wb, ctx) * x_pow;
    p.sum += term;
    p.abs_sum += abs(term);
    p.terms += 1;
    // Exact-ratio certificate: |T_{j+2}/T_j| <= ((j+n)(j+n+1)/(j(j+1))) (x/2pi)^2
    // for every later index, since the polynomial factor decreases in j and
    // zeta(j+2)/zeta(j) < 1.  Once q < 1 the tail is geometric.
    Real q = ratio_base * Real(static_cast<long>(j + n), wb) *
             Real(static_cast<long>(j + n + 1), wb) /
             (Real(static_cast<long>(j), wb) * Real(static_cast<long>(j + 1), wb));
    if (q < 1L) {
      Real bound = abs(term) * q / (Real(1L, wb) - q) * slack;
      if (bound <= ldexp2(tol, -1)) {
        p.tail = bound;
        p.tail_ok = true;
        break;
      }
    }
    x_pow *= x_sq;
  }
  return p;
}

}  // namespace

EvalResult f_bernoulli_series(unsigned long n, const Real& x,
                              const PrecisionContext& ctx, const Real& tol) {
  if (n < 1) {
    throw std::domain_error("f_bernoulli_series: series form requires n >= 1");
  }
  require_positive_x(x, "f_bernoulli_series");
  if (x > 5L) {
    throw std::domain_error(
        "f_bernoulli_series: x outside the validated sub-disk (0, 5]; "
        "use f_laguerre_series or f_eulerian_closed instead");
  }

  constexpr unsigned long kTermCap = 4096;
  long wb = ctx.working_bits();
  for (int attempt = 0;; ++attempt) {
    SeriesPass p = bernoulli_series_pass(n, x, wb, ctx, tol, kTermCap);
    if (!p.tail_ok) {
      throw TruncationError("f_bernoulli_series: tolerance unreachable within term cap",
                            p.tail_ok ? p.tail : abs(p.sum));
    }
    Real rounding = p.abs_sum * Real(static_cast<long>(8 * (p.terms + 4)), wb) *
                    pow2(-wb, wb);
    // Alternating terms can dwarf the sum; if rounding ate the budget, retry
    // once with enough extra bits to cover the observed cancellation.
    if (rounding > ldexp2(tol, -1) && attempt == 0) {
      Real need = log(p.abs_sum / tol) / const_log2(64);
      wb = ctx.working_bits() + std::max<long>(64, need.to_long() + 48);
      continue;
    }
    EvalResult r;
    r.method = Method::BernoulliSeries;
    r.n = n;
    r.x = x;
    r.value = p.sum;
    r.error_bound = p.tail + rounding;
    r.sign = classify_sign(r.value, r.error_bound);
    r.terms_used = p.terms;
    return r;
  }
}

EvalResult f_laguerre_series(unsigned long n, const Real& x,
                             const PrecisionContext& ctx, const Real& tol) {
  require_positive_x(x, "f_laguerre_series");
  const long wb = ctx.working_bits();
  const Real x_w = at_prec(x, wb);
  const Real half_rate = exp(-ldexp2(x_w, -1));       // e^{-x/2}
  const Real denom = -expm1(-ldexp2(x_w, -1));        // 1 - e^{-x/2}
  const Real n_fact = factorial_real(n, wb);

  // Smallest J with n! e^{-(J+1)x/2} / (1 - e^{-x/2}) <= tol/2.
  const Real log_need = log(ldexp2(n_fact, 1) / (tol * denom));
  constexpr long kTermCap = 2'000'000;
  long terms_J = 0;
  if (log_need > 0L) {
    terms_J = (log_need / ldexp2(x_w, -1)).to_long() + 1;
  }
  Real tail = n_fact * pow_ui(half_rate, static_cast<unsigned long>(terms_J + 1)) / denom;
  if (terms_J > kTermCap) {
    throw TruncationError("f_laguerre_series: tolerance unreachable within term cap",
                          n_fact * pow_ui(half_rate, kTermCap + 1) / denom);
  }

  const Real decay = exp(-x_w);
  Real e_jx(1L, wb);  // e^{-jx}
  Real sum(0L, wb);
  for (long j = 0; j <= terms_J; ++j) {
    if (j > 0) e_jx *= decay;
    Real y = x_w * j;
    sum += laguerre_eval(n, y, ctx) * e_jx;
  }
  sum *= n_fact;

  // |L_n(jx) e^{-jx}| <= e^{-jx/2}, so the summed magnitudes stay below
  // 1/(1 - e^{-x/2}); per-term work is O(n) rounded operations.
  Real rounding = n_fact / denom *
                  Real(static_cast<long>((terms_J + 2)) * (4 * static_cast<long>(n) + 16), wb) *
                  pow2(-wb, wb);

  EvalResult r;
  r.method = Method::LaguerreSeries;
  r.n = n;
  r.x = x;
  r.value = sum;
  r.error_bound = tail + rounding;
  r.sign = classify_sign(r.value, r.error_bound);
  r.terms_used = terms_J + 1;
  return r;
}

namespace {

struct ClosedFormPass {
  Real value;
  Real rounding;
};

// One evaluation of the exact Leibniz form at `wb` bits.
ClosedFormPass eulerian_closed_pass(unsigned long n, const Real& x, long wb) {
  const Real x_w = at_prec(x, wb);
  const Real w = exp(-x_w);
  const Real u = Real(1L, wb) / (-expm1(-x_w));  // 1/(1-w), via expm1 for small x
  const Integer n_fact = factorial_exact(n);

  Real sum = to_real(n_fact, wb) * u;  // k = 0 term
  Real abs_sum = abs(sum);
  Real x_pow(1L, wb);
  Real u_pow = u;
  for (unsigned long k = 1; k <= n; ++k) {
    x_pow *= x_w;
    u_pow *= u;
    const Integer coef = binomial(n, k) * (n_fact / factorial_exact(k));
    Real term = to_real(coef, wb) * x_pow * w * eulerian_poly_eval(eulerian_row(k), w) * u_pow;
    if (k % 2 == 1) term = -term;
    sum += term;
    abs_sum += abs(term);
  }
  Real rounding = abs_sum * Real(static_cast<long>(8 * (n + 4)), wb) * pow2(-wb, wb);
  return {std::move(sum), std::move(rounding)};
}

}  // namespace

EvalResult f_eulerian_closed(unsigned long n, const Real& x,
                             const PrecisionContext& ctx) {
  require_positive_x(x, "f_eulerian_closed");
  // Cancellation control: alternating Leibniz terms can grow like 2^n/x, so
  // the guard scales with n; every value is re-derived at doubled guard and
  // escalated until the two agree at target resolution.
  long guard = std::max<long>(ctx.guard_bits, 2 * static_cast<long>(n) + 64);
  const Real target_eps = pow2(-ctx.target_bits, ctx.working_bits());

  ClosedFormPass prev = eulerian_closed_pass(n, x, ctx.target_bits + guard);
  for (int round = 0; round < 5; ++round) {
    guard *= 2;
    ClosedFormPass next = eulerian_closed_pass(n, x, ctx.target_bits + guard);
    const Real diff = abs(next.value - prev.value);
    if (diff <= target_eps * max(Real(1L, 64), abs(next.value)) || round == 4) {
      EvalResult r;
      r.method = Method::EulerianClosed;
      r.n = n;
      r.x = x;
      r.value = next.value;
      r.error_bound = next.rounding + diff;
      r.sign = classify_sign(r.value, r.error_bound);
      r.terms_used = static_cast<long>(n) + 1;
      return r;
    }
    prev = std::move(next);
  }
  throw std::logic_error("f_eulerian_closed: unreachable");
}

EvalResult f_alpha_closed(unsigned long n, const Real& alpha, const Real& x,
                          const PrecisionContext& ctx) {
  if (alpha.is_nan() || !(alpha > 0L)) {
    throw std::domain_error("f_alpha_closed: requires alpha > 0");
  }
  require_positive_x(x, "f_alpha_closed");
  long guard = std::max<long>(ctx.guard_bits, 2 * static_cast<long>(n) + 64);
  const Real target_eps = pow2(-ctx.target_bits, ctx.working_bits());

  auto pass = [&](long wb) -> ClosedFormPass {
    const Real x_w = at_prec(x, wb);
    const Real a_w = at_prec(alpha, wb);
    const Real w = exp(-x_w);
    const Real u = Real(1L, wb) / (-expm1(-x_w));
    const Real x_alpha = pow(x_w, a_w);

    // Gamma(n+alpha+1)/Gamma(k+alpha+1) as the finite product
    // (k+alpha+1)(k+alpha+2)...(n+alpha); build all of them in one sweep.
    std::vector<Real> gamma_ratio(n + 1, Real(1L, wb));
    for (unsigned long k = n; k-- > 0;) {
      gamma_ratio[k] = gamma_ratio[k + 1] * (a_w + static_cast<long>(k + 1));
    }

    Real sum = gamma_ratio[0] * x_alpha * u;  // k = 0 term
    Real abs_sum = abs(sum);
    Real x_pow = x_alpha;
    Real u_pow = u;
    for (unsigned long k = 1; k <= n; ++k) {
      x_pow *= x_w;
      u_pow *= u;
      Real term = to_real(binomial(n, k), wb) * gamma_ratio[k] * x_pow * w *
                  eulerian_poly_eval(eulerian_row(k), w) * u_pow;
      if (k % 2 == 1) term = -term;
      sum += term;
      abs_sum += abs(term);
    }
    Real rounding = abs_sum * Real(static_cast<long>(8 * (n + 6)), wb) * pow2(-wb, wb);
    return {std::move(sum), std::move(rounding)};
  };

  ClosedFormPass prev = pass(ctx.target_bits + guard);
  for (int round = 0; round < 5; ++round) {
    guard *= 2;
    ClosedFormPass next = pass(ctx.target_bits + guard);
    const Real diff = abs(next.value - prev.value);
    if (diff <= target_eps * max(Real(1L, 64), abs(next.value)) || round == 4) {
      EvalResult r;
      r.method = Method::EulerianClosed;
      r.n = n;
      r.x = x;
      r.value = next.value;
      r.error_bound = next.rounding + diff;
      r.sign = classify_sign(r.value, r.error_bound);
      r.terms_used = static_cast<long>(n) + 1;
      return r;
    }
    prev = std::move(next);
  }
  throw std::logic_error("f_alpha_closed: unreachable");
}

KernelValue kernel_K(const Real& x, const Real& t, const PrecisionContext& ctx,
                     const Real& tol, WeightExponent weight) {
  require_positive_x(x, "kernel_K");
  const long wb = ctx.working_bits();
  const Real x_w = at_prec(x, wb);
  const Real t_w = at_prec(t, wb);
  const Real sx = weight == WeightExponent::AsPrinted ? x_w : ldexp2(x_w, -1);
  const Real r = exp(-sx);
  const Real denom = -expm1(-sx);  // 1 - r

  // Smallest J with r^{J+1}/(1-r) <= tol.
  long terms_J = 0;
  const Real log_need = log(Real(1L, wb) / (tol * denom));
  if (log_need > 0L) terms_J = (log_need / sx).to_long() + 1;

  const Real two_x = ldexp2(x_w, 1);
  Real decay(1L, wb);
  Real sum(0L, wb);
  for (long j = 0; j <= terms_J; ++j) {
    if (j > 0) decay *= r;
    if (j == 0) {
      sum += Real(1L, wb);
    } else {
      sum += decay * cos(sqrt(two_x * j) * t_w);
    }
  }

  KernelValue kv;
  kv.x = x;
  kv.t = t;
  kv.value = sum;
  kv.tail_bound = pow_ui(r, static_cast<unsigned long>(terms_J + 1)) / denom;
  kv.weight = weight;
  kv.terms_used = terms_J + 1;
  return kv;
}

Real lower_bound_g(const Real& x, const PrecisionContext& ctx) {
  require_positive_x(x, "lower_bound_g");
  const long wb = ctx.working_bits();
  const Real x_w = at_prec(x, wb);
  return Real(1L, wb) - Real(1L, wb) / expm1(x_w);
}

EvalResult f_hermite_integral(unsigned long n, const Real& x,
                              const PrecisionContext& ctx, const Real& tol,
                              unsigned long quad_order_start, WeightExponent weight) {
  require_positive_x(x, "f_hermite_integral");
  const long wb = ctx.working_bits() + 32;
  const PrecisionContext work{ctx.target_bits, wb - ctx.target_bits};
  const Real x_w = at_prec(x, wb);
  const Real n_fact = factorial_real(n, wb);

  // Kernel truncation kept well under the requested tolerance: a kernel tail
  // of tau contributes at most n! tau to the final value.
  const Real tau = tol / (n_fact * 16L);
  const Real sx = weight == WeightExponent::AsPrinted ? x_w : ldexp2(x_w, -1);
  const Real r = exp(-sx);
  const Real denom = -expm1(-sx);
  long terms_J = 0;
  {
    const Real log_need = log(Real(1L, wb) / (tau * denom));
    if (log_need > 0L) terms_J = (log_need / sx).to_long() + 1;
  }
  const Real kernel_tail = pow_ui(r, static_cast<unsigned long>(terms_J + 1)) / denom;

  // Per-j amplitude e^{-sjx} and frequency sqrt(2jx).
  std::vector<Real> amp, freq;
  amp.reserve(terms_J + 1);
  freq.reserve(terms_J + 1);
  Real decay(1L, wb);
  const Real two_x = ldexp2(x_w, 1);
  for (long j = 0; j <= terms_J; ++j) {
    if (j > 0) decay *= r;
    amp.push_back(decay);
    freq.push_back(sqrt(two_x * j));
  }

  const Real scale = sqrt_pi(wb) * pow2(static_cast<long>(n), wb);  // sqrt(pi) 2^n
  auto estimate = [&](unsigned long m) -> Real {
    const QuadratureRule& rule = gauss_hermite_rule(m, work);
    Real acc(0L, wb);
    for (unsigned long i = 0; i < m; ++i) {
      const Real& t_i = rule.nodes[i];
      Real h = hermite_eval(n, t_i, work);
      Real kernel(0L, wb);
      for (long j = 0; j <= terms_J; ++j) {
        if (j == 0) {
          kernel += Real(1L, wb);
        } else {
          kernel += amp[j] * cos(freq[j] * t_i);
        }
      }
      acc += rule.weights[i] * h * h * kernel;
    }
    // halve onto [0, inf) by evenness, then divide by sqrt(pi) 2^{n-1}
    return acc / scale;
  };

  constexpr unsigned long kNodeCap = 8192;
  unsigned long m = quad_order_start ? quad_order_start : 4 * (n + 8);
  Real prev = estimate(m);
  while (true) {
    if (m * 2 > kNodeCap) {
      throw QuadratureError(
          "f_hermite_integral: no convergence by " + std::to_string(m) +
          " nodes (n=" + std::to_string(n) + ", last delta unknown)");
    }
    m *= 2;
    Real cur = estimate(m);
    Real delta = abs(cur - prev);
    if (delta < tol) {
      EvalResult r_out;
      r_out.method = Method::HermiteIntegral;
      r_out.n = n;
      r_out.x = x;
      r_out.value = cur;
      r_out.error_bound = delta + n_fact * kernel_tail;
      r_out.sign = classify_sign(r_out.value, r_out.error_bound);
      r_out.terms_used = static_cast<long>(m);
      r_out.heuristic_bound = true;
      return r_out;
    }
    prev = std::move(cur);
  }
}

ConsensusResult f_consensus(unsigned long n, const Real& x,
                            const PrecisionContext& ctx, const Real& tol) {
  return f_consensus(n, x, ctx, tol, ConsensusOptions{});
}

ConsensusResult f_consensus(unsigned long n, const Real& x,
                            const PrecisionContext& ctx, const Real& tol,
                            const ConsensusOptions& opts) {
  require_positive_x(x, "f_consensus");
  ConsensusResult out;
  out.methods.push_back(f_eulerian_closed(n, x, ctx));

  const double xd = x.to_double();
  if (n >= 1 && xd <= opts.bernoulli_max_x) {
    try {
      out.methods.push_back(f_bernoulli_series(n, x, ctx, tol));
    } catch (const TruncationError&) {
      // tolerance unattainable there; the method simply abstains
    }
  }
  if (xd >= opts.laguerre_min_x) {
    try {
      out.methods.push_back(f_laguerre_series(n, x, ctx, tol));
    } catch (const TruncationError&) {
    }
  }
  if (opts.include_hermite) {
    try {
      out.methods.push_back(f_hermite_integral(n, x, ctx, tol, 0, opts.hermite_weight));
    } catch (const QuadratureError&) {
    }
  }

  Real max_disc(0L, ctx.working_bits());
  Real max_bound(0L, ctx.working_bits());
  for (std::size_t i = 0; i < out.methods.size(); ++i) {
    max_bound = max(max_bound, out.methods[i].error_bound);
    for (std::size_t j = i + 1; j < out.methods.size(); ++j) {
      const EvalResult& a = out.methods[i];
      const EvalResult& b = out.methods[j];
      const Real disc = abs(a.value - b.value);
      max_disc = max(max_disc, disc);
      if (!a.heuristic_bound && !b.heuristic_bound &&
          disc > a.error_bound + b.error_bound) {
        out.alarm = true;
        std::ostringstream os;
        os << "consensus alarm at n=" << n << ", x=" << to_sci_string(x, 20)
           << ": " << to_string(a.method) << "=" << to_sci_string(a.value, 30)
           << " (bound " << to_sci_string(a.error_bound, 6) << ") vs "
           << to_string(b.method) << "=" << to_sci_string(b.value, 30)
           << " (bound " << to_sci_string(b.error_bound, 6) << ")";
        if (!out.alarm_detail.empty()) out.alarm_detail += "\n";
        out.alarm_detail += os.str();
      }
    }
  }

  out.result = out.methods.front();
  out.result.error_bound = max_disc + max_bound;
  out.result.sign = classify_sign(out.result.value, out.result.error_bound);
  return out;
}

}  // namespace fnlab
