#pragma once

#include <vector>

#include "fnlab/precision.hpp"
#include "fnlab/real.hpp"

namespace fnlab {

/// Root finding inside a rule construction failed to settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// L_n(y) by the three-term recurrence
/// (k+1) L_{k+1} = (2k+1-y) L_k - k L_{k-1}.  Requires y >= 0.
Real laguerre_eval(unsigned long n, const Real& y, const PrecisionContext& ctx);

/// H_n(t) by H_{k+1} = 2t H_k - 2k H_{k-1}.
Real hermite_eval(unsigned long n, const Real& t, const PrecisionContext& ctx);

struct QuadratureRule {
  unsigned long order = 0;
  std::vector<Real> nodes;    // strictly increasing
  std::vector<Real> weights;  // positive
};

/// Gauss-Hermite rule of order m: integrates p(t) e^{-t^2} over the real
/// line exactly through degree 2m-1.  Nodes are the roots of H_m located by
/// Newton iteration from interlacing seed values; weights from the
/// derivative formula.  Rules are cached per (m, working precision).
const QuadratureRule& gauss_hermite_rule(unsigned long m, const PrecisionContext& ctx);

/// Gauss-Legendre rule of order m on [-1, 1]; the panel workhorse for the
/// Laplace-transform quadratures.  Cached like the Hermite rules.
const QuadratureRule& gauss_legendre_rule(unsigned long m, const PrecisionContext& ctx);

}  // namespace fnlab
