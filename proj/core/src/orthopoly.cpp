#include "fnlab/orthopoly.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fnlab/arith.hpp"

namespace fnlab {

namespace {

Real at_prec(const Real& x, long prec) {
  Real r(prec);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

Real laguerre_eval(unsigned long n, const Real& y, const PrecisionContext& ctx) {
  if (y.is_nan() || y < 0L) {
    throw std::domain_error("laguerre_eval: y must be >= 0");
  }
  const long wb = ctx.working_bits();
  const Real y_w = at_prec(y, wb);
  Real prev(1L, wb);  // L_0
  if (n == 0) return prev;
  Real cur = Real(1L, wb) - y_w;  // L_1
  for (unsigned long k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1 - y) L_k - k L_{k-1}
    Real next = ((Real(static_cast<long>(2 * k + 1), wb) - y_w) * cur -
                 prev * static_cast<long>(k)) /
                static_cast<long>(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Real hermite_eval(unsigned long n, const Real& t, const PrecisionContext& ctx) {
  const long wb = ctx.working_bits();
  const Real t_w = at_prec(t, wb);
  Real prev(1L, wb);  // H_0
  if (n == 0) return prev;
  Real cur = ldexp2(t_w, 1);  // H_1
  for (unsigned long k = 1; k < n; ++k) {
    Real next = ldexp2(t_w * cur, 1) - ldexp2(prev * static_cast<long>(k), 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace {

struct RuleKey {
  unsigned long order;
  long bits;
  bool legendre;
  auto operator<=>(const RuleKey&) const = default;
};

std::mutex g_rule_mutex;
std::map<RuleKey, std::unique_ptr<QuadratureRule>>& rule_cache() {
  static std::map<RuleKey, std::unique_ptr<QuadratureRule>> cache;
  return cache;
}

// H_m and H_{m-1} in one recurrence pass.
void hermite_pair(unsigned long m, const Real& t, long prec, Real& h_m, Real& h_m1) {
  Real prev(1L, prec);
  Real cur = ldexp2(t, 1);
  for (unsigned long k = 1; k < m; ++k) {
    Real next = ldexp2(t * cur, 1) - ldexp2(prev * static_cast<long>(k), 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  h_m = std::move(cur);
  h_m1 = std::move(prev);
}

// P_m and P_{m-1} in one recurrence pass.
void legendre_pair(unsigned long m, const Real& t, long prec, Real& p_m, Real& p_m1) {
  Real prev(1L, prec);
  Real cur = at_prec(t, prec);
  for (unsigned long k = 1; k < m; ++k) {
    Real next = (t * cur * static_cast<long>(2 * k + 1) -
                 prev * static_cast<long>(k)) /
                static_cast<long>(k + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  p_m = std::move(cur);
  p_m1 = std::move(prev);
}

// Newton seeds for the positive roots of H_m, largest first.  Classical
// approximations; interlacing keeps each seed inside the basin of its root.
std::vector<double> hermite_seeds(unsigned long m) {
  const unsigned long half = (m + 1) / 2;
  std::vector<double> z(half);
  for (unsigned long i = 0; i < half; ++i) {
    double zi;
    if (i == 0) {
      zi = std::sqrt(2.0 * m + 1.0) - 1.85575 * std::pow(2.0 * m + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      zi = z[0] - 1.14 * std::pow(static_cast<double>(m), 0.426) / z[0];
    } else if (i == 2) {
      zi = 1.86 * z[1] - 0.86 * z[0];
    } else if (i == 3) {
      zi = 1.91 * z[2] - 0.91 * z[1];
    } else {
      zi = 2.0 * z[i - 1] - z[i - 2];
    }
    z[i] = zi;
  }
  return z;
}

std::unique_ptr<QuadratureRule> build_hermite(unsigned long m, long wb) {
  const long prec = wb + 32;
  const Real tol = pow2(-(wb + 8), prec);
  const unsigned long half = (m + 1) / 2;
  const std::vector<double> seeds = hermite_seeds(m);

  auto rule = std::make_unique<QuadratureRule>();
  rule->order = m;
  rule->nodes.assign(m, Real(prec));
  rule->weights.assign(m, Real(prec));

  const Real w_num = ldexp2(to_real(factorial_exact(m), prec) * sqrt_pi(prec),
                            static_cast<long>(m) - 1);
  const Real m_sq(static_cast<long>(m) * static_cast<long>(m), prec);

  for (unsigned long i = 0; i < half; ++i) {
    const bool root_at_zero = (m % 2 == 1 && i == half - 1);
    Real z = root_at_zero ? Real(0L, prec) : Real(seeds[i], prec);
    Real h_m(prec), h_m1(prec);
    if (!root_at_zero) {
      bool ok = false;
      for (int it = 0; it < 200; ++it) {
        hermite_pair(m, z, prec, h_m, h_m1);
        // H'_m = 2m H_{m-1}
        Real step = h_m / (ldexp2(h_m1, 1) * static_cast<long>(m));
        z -= step;
        if (abs(step) <= tol * max(Real(1L, prec), abs(z))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw ConvergenceError("gauss_hermite_rule: Newton failed for order " +
                               std::to_string(m) + ", root index " + std::to_string(i));
      }
    }
    hermite_pair(m, z, prec, h_m, h_m1);
    // w_i = 2^{m-1} m! sqrt(pi) / (m^2 H_{m-1}(z)^2)
    Real w = w_num / (m_sq * h_m1 * h_m1);
    rule->nodes[m - 1 - i] = z;
    rule->weights[m - 1 - i] = w;
    rule->nodes[i] = -z;
    rule->weights[i] = std::move(w);
  }
  return rule;
}

std::unique_ptr<QuadratureRule> build_legendre(unsigned long m, long wb) {
  const long prec = wb + 32;
  const Real tol = pow2(-(wb + 8), prec);
  const unsigned long half = (m + 1) / 2;
  const double pi_d = 3.14159265358979323846;

  auto rule = std::make_unique<QuadratureRule>();
  rule->order = m;
  rule->nodes.assign(m, Real(prec));
  rule->weights.assign(m, Real(prec));

  for (unsigned long i = 0; i < half; ++i) {
    const bool root_at_zero = (m % 2 == 1 && i == half - 1);
    Real z = root_at_zero ? Real(0L, prec)
                          : Real(std::cos(pi_d * (i + 0.75) / (m + 0.5)), prec);
    Real p_m(prec), p_m1(prec);
    if (!root_at_zero) {
      bool ok = false;
      for (int it = 0; it < 200; ++it) {
        legendre_pair(m, z, prec, p_m, p_m1);
        // P'_m(z) = m (z P_m - P_{m-1}) / (z^2 - 1)
        Real dp = (z * p_m - p_m1) * static_cast<long>(m) / (z * z - 1L);
        Real step = p_m / dp;
        z -= step;
        if (abs(step) <= tol * max(Real(1L, prec), abs(z))) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        throw ConvergenceError("gauss_legendre_rule: Newton failed for order " +
                               std::to_string(m) + ", root index " + std::to_string(i));
      }
    }
    legendre_pair(m, z, prec, p_m, p_m1);
    Real dp = (z * p_m - p_m1) * static_cast<long>(m) / (z * z - 1L);
    // w_i = 2 / ((1 - z^2) P'_m(z)^2)
    Real w = Real(2L, prec) / ((Real(1L, prec) - z * z) * dp * dp);
    rule->nodes[i] = -z;
    rule->weights[i] = w;
    rule->nodes[m - 1 - i] = std::move(z);
    rule->weights[m - 1 - i] = std::move(w);
  }
  return rule;
}

}  // namespace

const QuadratureRule& gauss_hermite_rule(unsigned long m, const PrecisionContext& ctx) {
  if (m < 1) throw std::domain_error("gauss_hermite_rule: m must be >= 1");
  const RuleKey key{m, ctx.working_bits(), false};
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto& cache = rule_cache();
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_hermite(m, ctx.working_bits())).first;
  }
  return *it->second;
}

const QuadratureRule& gauss_legendre_rule(unsigned long m, const PrecisionContext& ctx) {
  if (m < 1) throw std::domain_error("gauss_legendre_rule: m must be >= 1");
  const RuleKey key{m, ctx.working_bits(), true};
  std::lock_guard<std::mutex> lock(g_rule_mutex);
  auto& cache = rule_cache();
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, build_legendre(m, ctx.working_bits())).first;
  }
  return *it->second;
}

}  // namespace fnlab
