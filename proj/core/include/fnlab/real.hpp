#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fnlab {

/// Arbitrary-precision real number backed by MPFR.  Every value carries its
/// own mantissa width; binary operations round to the wider of the operand
/// precisions, and copies preserve the precision of the source.  All
/// rounding is to nearest.
class Real {
 public:
  Real() { mpfr_init2(v_, kMinPrec); mpfr_set_nan(v_); }

  explicit Real(long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_nan(v_);
  }
  Real(double x, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(long x, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(int x, long prec_bits) : Real(static_cast<long>(x), prec_bits) {}
  Real(unsigned long x, long prec_bits) {
    mpfr_init2(v_, clamp_prec(prec_bits));
    mpfr_set_ui(v_, x, MPFR_RNDN);
  }

  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, kMinPrec);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(Real o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Parses a base-10 value; throws std::invalid_argument on malformed input.
  static Real from_string(const std::string& s, long prec_bits) {
    Real r(prec_bits);
    const char* str = s.c_str();
    char* end = nullptr;
    if (mpfr_strtofr(r.v_, str, &end, 10, MPFR_RNDN) != 0 && end == str) {
      throw std::invalid_argument("Real: cannot parse '" + s + "'");
    }
    if (end == str || *end != '\0') {
      throw std::invalid_argument("Real: cannot parse '" + s + "'");
    }
    return r;
  }

  long prec() const { return mpfr_get_prec(v_); }

  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  bool is_inf() const { return mpfr_inf_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return is_nan() ? 0 : mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(long k) { mpfr_mul_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& operator/=(long k) { mpfr_div_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& operator+=(long k) { mpfr_add_si(v_, v_, k, MPFR_RNDN); return *this; }
  Real& operator-=(long k) { mpfr_sub_si(v_, v_, k, MPFR_RNDN); return *this; }

  friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
  friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
  friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
  friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }

  friend Real operator+(const Real& a, long b) { Real r(a.prec()); mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, long b) { Real r(a.prec()); mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, long b) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, long b) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator-(long a, const Real& b) { Real r(b.prec()); mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN); return r; }
  friend Real operator/(long a, const Real& b) { Real r(b.prec()); mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN); return r; }

  // NaN-safe comparisons: any comparison against NaN is false.
  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }

  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0 && !a.is_nan(); }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0 && !a.is_nan(); }
  friend bool operator<=(const Real& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return !a.is_nan() && mpfr_cmp_si(a.v_, b) >= 0; }

  static constexpr long kMinPrec = 24;

 private:
  static long clamp_prec(long p) { return std::max(p, kMinPrec); }

  using mpfr_bin_fn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real bin(mpfr_bin_fn f, const Real& a, const Real& b) {
    Real r(std::max(a.prec(), b.prec()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

inline Real abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real exp(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
/// exp(a) - 1, accurate near zero.
inline Real expm1(const Real& a) {
  Real r(a.prec());
  mpfr_expm1(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real log(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& a) {
  Real r(a.prec());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline Real pow(const Real& a, const Real& b) {
  Real r(std::max(a.prec(), b.prec()));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline Real pow_ui(const Real& a, unsigned long k) {
  Real r(a.prec());
  mpfr_pow_ui(r.raw(), a.raw(), k, MPFR_RNDN);
  return r;
}
inline Real floor(const Real& a) {
  Real r(a.prec());
  mpfr_floor(r.raw(), a.raw());
  return r;
}
inline Real ceil(const Real& a) {
  Real r(a.prec());
  mpfr_ceil(r.raw(), a.raw());
  return r;
}
/// a * 2^e (exact).
inline Real ldexp2(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}
inline const Real& min(const Real& a, const Real& b) { return b < a ? b : a; }
inline const Real& max(const Real& a, const Real& b) { return a < b ? b : a; }

inline Real const_pi(long prec_bits) {
  Real r(prec_bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_log2(long prec_bits) {
  Real r(prec_bits);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}
inline Real const_euler(long prec_bits) {
  Real r(prec_bits);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}
inline Real sqrt_pi(long prec_bits) { return sqrt(const_pi(prec_bits)); }
/// Riemann zeta at an integer argument.
inline Real zeta_ui(unsigned long n, long prec_bits) {
  Real r(prec_bits);
  mpfr_zeta_ui(r.raw(), n, MPFR_RNDN);
  return r;
}
inline Real digamma(const Real& a) {
  Real r(a.prec());
  mpfr_digamma(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
/// 2^e as an exact Real.
inline Real pow2(long e, long prec_bits) {
  Real r(prec_bits);
  mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
  return r;
}
inline Real factorial_real(unsigned long n, long prec_bits) {
  Real r(prec_bits);
  mpfr_fac_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

/// Significant decimal digits that guarantee binary -> decimal -> binary
/// round-tripping at `prec_bits` of mantissa.
inline long roundtrip_digits(long prec_bits) {
  return static_cast<long>(std::ceil(prec_bits * 0.30102999566398119521)) + 2;
}

/// Scientific-notation decimal string with `digits` significant digits.
inline std::string to_sci_string(const Real& a, long digits) {
  if (a.is_nan()) return "nan";
  if (a.is_inf()) return a.sign() < 0 ? "-inf" : "inf";
  digits = std::max<long>(digits, 2);
  int len = mpfr_snprintf(nullptr, 0, "%.*Re", static_cast<int>(digits - 1), a.raw());
  std::string buf(static_cast<std::size_t>(len) + 1, '\0');
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits - 1), a.raw());
  buf.resize(static_cast<std::size_t>(len));
  return buf;
}

}  // namespace fnlab
