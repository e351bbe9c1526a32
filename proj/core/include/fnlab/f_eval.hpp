#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fnlab/precision.hpp"
#include "fnlab/real.hpp"

namespace fnlab {

enum class Method { BernoulliSeries, LaguerreSeries, EulerianClosed, HermiteIntegral };
enum class Sign { Positive, Negative, Indeterminate };

/// Kernel weighting for the Hermite-integral representation.  AsPrinted sums
/// e^{-jx} cos(sqrt(2jx) t); GaussianCorrected sums e^{-jx/2} cos(sqrt(2jx) t),
/// the form implied by the tabulated Laguerre-Hermite integral that carries an
/// extra Gaussian on the polynomial side.  Which one reproduces f_n is decided
/// empirically by the discriminators in analysis, not assumed here.
enum class WeightExponent { AsPrinted, GaussianCorrected };

const char* to_string(Method m);
const char* to_string(Sign s);
const char* to_string(WeightExponent w);

/// Positive iff value - error_bound > 0, Negative iff value + error_bound < 0,
/// Indeterminate otherwise (including NaN).
Sign classify_sign(const Real& value, const Real& error_bound);

struct EvalResult {
  Method method = Method::EulerianClosed;
  unsigned long n = 0;
  Real x;
  Real value;
  Real error_bound;
  Sign sign = Sign::Indeterminate;
  long terms_used = 0;
  /// True when error_bound is a convergence estimate (quadrature) rather
  /// than a certified bound.
  bool heuristic_bound = false;
};

/// Requested tolerance could not be certified within the term cap; carries
/// the best bound that was achieved.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, Real achieved)
      : std::runtime_error(what), achieved_bound_(std::move(achieved)) {}
  const Real& achieved_bound() const { return achieved_bound_; }

 private:
  Real achieved_bound_;
};

/// Quadrature failed to settle under the doubling cap.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Power-series evaluator around 0: f_n(x) = n!/2 + sum_{j>=2} c_j x^{j-1}
/// with c_j = ((j+n-1)!/(j-1)!) B_j / j!.  Valid on 0 < x <= 5 (inside the
/// |x| < 2 pi disk with usable convergence); n >= 1.  Tail certified by a
/// geometric comparison derived from the exact coefficient ratio.
EvalResult f_bernoulli_series(unsigned long n, const Real& x,
                              const PrecisionContext& ctx, const Real& tol);

/// Laguerre-series evaluator: f_n(x) = n! sum_j L_n(jx) e^{-jx}, x > 0.
/// Tail certified through |L_n(y) e^{-y/2}| <= 1:
/// tail <= n! e^{-(J+1)x/2} / (1 - e^{-x/2}).
EvalResult f_laguerre_series(unsigned long n, const Real& x,
                             const PrecisionContext& ctx, const Real& tol);

/// Exact Leibniz closed form over Eulerian polynomials: with w = e^{-x},
/// f_n(x) = sum_{k=0}^n C(n,k) (n!/k!) x^k (-1)^k w A_k(w) / (1-w)^{k+1}
/// (k = 0 factor is 1/(1-w)).  No truncation; the error bound reflects
/// rounding only, and every value is recomputed at doubled guard bits.
/// This is the designated oracle method.
EvalResult f_eulerian_closed(unsigned long n, const Real& x,
                             const PrecisionContext& ctx);

/// Gauss-Hermite evaluation of the integral representation
/// sqrt(pi) 2^{n-1} f_n(x) = int_0^inf e^{-t^2} H_n(t)^2 K(x,t) dt.
/// quad_order_start == 0 selects the default 4(n+8); the order doubles until
/// successive values differ by < tol, capped at 2^13 nodes.  The returned
/// bound is heuristic.
EvalResult f_hermite_integral(unsigned long n, const Real& x,
                              const PrecisionContext& ctx, const Real& tol,
                              unsigned long quad_order_start, WeightExponent weight);

/// Fractional-power variant d^n/dx^n (x^{n+alpha} / (1 - e^{-x})) with the
/// Gamma-ratio factors computed as finite products (k+alpha+1)...(n+alpha).
EvalResult f_alpha_closed(unsigned long n, const Real& alpha, const Real& x,
                          const PrecisionContext& ctx);

struct KernelValue {
  Real x;
  Real t;
  Real value;
  Real tail_bound;
  WeightExponent weight = WeightExponent::AsPrinted;
  long terms_used = 0;
};

/// Truncated kernel K(x,t) = sum_j e^{-s j x} cos(sqrt(2jx) t) with
/// s = 1 (AsPrinted) or 1/2 (GaussianCorrected); geometric tail bound.
KernelValue kernel_K(const Real& x, const Real& t, const PrecisionContext& ctx,
                     const Real& tol, WeightExponent weight);

/// g(x) = 1 - 1/(e^x - 1), the kernel lower-bound function; zero at log 2.
Real lower_bound_g(const Real& x, const PrecisionContext& ctx);

struct ConsensusOptions {
  /// Methods are only consulted where their validated domains apply.
  double bernoulli_max_x = 5.0;
  double laguerre_min_x = 0.05;
  bool include_hermite = false;
  WeightExponent hermite_weight = WeightExponent::GaussianCorrected;
};

struct ConsensusResult {
  /// EulerianClosed value with error_bound = max pairwise discrepancy plus
  /// the largest individual bound; sign classified from that bound.
  EvalResult result;
  std::vector<EvalResult> methods;
  /// Set when two certified methods disagree beyond their combined bounds.
  bool alarm = false;
  std::string alarm_detail;
};

ConsensusResult f_consensus(unsigned long n, const Real& x,
                            const PrecisionContext& ctx, const Real& tol);
ConsensusResult f_consensus(unsigned long n, const Real& x,
                            const PrecisionContext& ctx, const Real& tol,
                            const ConsensusOptions& opts);

}  // namespace fnlab
