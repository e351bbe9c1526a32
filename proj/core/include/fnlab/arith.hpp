#pragma once

#include <gmpxx.h>

#include <vector>

#include "fnlab/precision.hpp"
#include "fnlab/real.hpp"

namespace fnlab {

using Integer = mpz_class;
/// Arbitrary-size signed rational, kept canonical by GMP: denominator > 0
/// and gcd(|numerator|, denominator) == 1 after every operation.
using Rational = mpq_class;

Real to_real(const Integer& z, long prec_bits);
Real to_real(const Rational& q, long prec_bits);

Integer factorial_exact(unsigned long n);

/// C(n, k), exact.  Throws std::domain_error when k > n.
Integer binomial(unsigned long n, unsigned long k);

/// j (j+1) ... (j+n-1), the rising factorial with n factors (1 when n == 0).
Integer rising_factorial(unsigned long j, unsigned long n);

/// B_0 .. B_n under the x/(e^x - 1) convention, i.e. B_1 = -1/2, and all
/// odd entries beyond B_1 zero.  This convention matters: the opposite one
/// silently flips the first-order term of every series built on top.
std::vector<Rational> bernoulli_list(unsigned long n_max);

struct FloatBernoulli {
  Real value;
  Real rel_error_bound;
};

/// B_j for even j >= 2 via B_{2m} = (-1)^{m+1} 2 (2m)! zeta(2m) / (2 pi)^{2m};
/// the large-index fallback once exact rationals get too heavy.
FloatBernoulli bernoulli_float(unsigned long j, const PrecisionContext& ctx);

/// Row k of the Eulerian-number triangle: entries A(k, 0..k-1) for k >= 1
/// (row {1} for k == 0).  Row sum is k! and each row is palindromic.
struct EulerianRow {
  unsigned long k = 0;
  std::vector<Integer> entries;

  Integer row_sum() const;
  bool is_palindromic() const;
};

/// Cached and immutable after first computation; safe for concurrent use.
const EulerianRow& eulerian_row(unsigned long k);

/// Eulerian polynomial A_k(w) = sum_i A(k,i) w^i evaluated by Horner.
Real eulerian_poly_eval(const EulerianRow& row, const Real& w);

}  // namespace fnlab
