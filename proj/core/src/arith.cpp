#include "fnlab/arith.hpp"

#include <deque>
#include <mutex>
#include <stdexcept>

namespace fnlab {

Real to_real(const Integer& z, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Rational& q, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Integer factorial_exact(unsigned long n) {
  Integer z;
  mpz_fac_ui(z.get_mpz_t(), n);
  return z;
}

Integer binomial(unsigned long n, unsigned long k) {
  if (k > n) {
    throw std::domain_error("binomial: k > n");
  }
  Integer z;
  mpz_bin_uiui(z.get_mpz_t(), n, k);
  return z;
}

Integer rising_factorial(unsigned long j, unsigned long n) {
  Integer z = 1;
  for (unsigned long i = 0; i < n; ++i) {
    z *= Integer(j + i);
  }
  return z;
}

namespace {

// Tangent numbers T_1..T_m by the integer zigzag recurrence; only integer
// additions and small multiplications, which keeps bernoulli_list(512)
// cheap enough for the root-test experiment.
std::vector<Integer> tangent_numbers(unsigned long m) {
  std::vector<Integer> t(m + 1);
  if (m == 0) return t;
  t[1] = 1;
  for (unsigned long k = 2; k <= m; ++k) {
    t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  }
  for (unsigned long k = 2; k <= m; ++k) {
    for (unsigned long j = k; j <= m; ++j) {
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) +
             t[j] * static_cast<unsigned long>(j - k + 2);
    }
  }
  return t;
}

}  // namespace

std::vector<Rational> bernoulli_list(unsigned long n_max) {
  std::vector<Rational> out(n_max + 1, Rational(0));
  out[0] = 1;
  if (n_max >= 1) out[1] = Rational(-1, 2);
  const unsigned long m = n_max / 2;
  if (m == 0) return out;
  const std::vector<Integer> t = tangent_numbers(m);
  // B_{2k} = (-1)^{k-1} 2k T_k / (4^k (4^k - 1))
  Integer four_k = 1;
  for (unsigned long k = 1; k <= m; ++k) {
    four_k *= 4;
    Integer num = t[k] * static_cast<unsigned long>(2 * k);
    Integer den = four_k * (four_k - 1);
    Rational b(num, den);
    b.canonicalize();
    if (k % 2 == 0) b = -b;
    out[2 * k] = b;
  }
  return out;
}

FloatBernoulli bernoulli_float(unsigned long j, const PrecisionContext& ctx) {
  if (j < 2 || j % 2 != 0) {
    throw std::domain_error("bernoulli_float: j must be even and >= 2");
  }
  const long wb = ctx.working_bits();
  const Real two_pi = ldexp2(const_pi(wb), 1);
  Real value = ldexp2(factorial_real(j, wb), 1) * zeta_ui(j, wb) / pow_ui(two_pi, j);
  if ((j / 2) % 2 == 0) value = -value;
  // Every factor is correctly rounded, so a handful of ulps covers it.
  return {value, pow2(-wb + 3, wb)};
}

Integer EulerianRow::row_sum() const {
  Integer s = 0;
  for (const Integer& e : entries) s += e;
  return s;
}

bool EulerianRow::is_palindromic() const {
  const std::size_t len = entries.size();
  for (std::size_t i = 0; i < len / 2; ++i) {
    if (entries[i] != entries[len - 1 - i]) return false;
  }
  return true;
}

const EulerianRow& eulerian_row(unsigned long k) {
  // Rows are appended once and never mutated afterwards; deque keeps element
  // addresses stable so returned references outlive the lock.
  static std::mutex mu;
  static std::deque<EulerianRow> rows;
  std::lock_guard<std::mutex> lock(mu);
  if (rows.empty()) {
    rows.push_back(EulerianRow{0, {Integer(1)}});
  }
  while (rows.size() <= k) {
    const unsigned long next = rows.size();
    const EulerianRow& prev = rows[next - 1];
    EulerianRow row;
    row.k = next;
    row.entries.resize(next);
    // A(k,i) = (i+1) A(k-1,i) + (k-i) A(k-1,i-1)
    for (unsigned long i = 0; i < next; ++i) {
      Integer v = 0;
      if (i < prev.entries.size()) v += prev.entries[i] * static_cast<unsigned long>(i + 1);
      if (i >= 1 && i - 1 < prev.entries.size()) {
        v += prev.entries[i - 1] * static_cast<unsigned long>(next - i);
      }
      row.entries[i] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows[k];
}

Real eulerian_poly_eval(const EulerianRow& row, const Real& w) {
  Real acc(0L, w.prec());
  for (auto it = row.entries.rbegin(); it != row.entries.rend(); ++it) {
    acc *= w;
    acc += to_real(*it, w.prec());
  }
  return acc;
}

}  // namespace fnlab
