#pragma once

#include <stdexcept>

namespace fnlab {

/// Precision policy shared by all numeric routines.  `target_bits` is the
/// precision the caller wants delivered; `guard_bits` absorb rounding in
/// intermediates.  Everything internal runs at working_bits().
struct PrecisionContext {
  long target_bits = 128;
  long guard_bits = 64;

  PrecisionContext() = default;
  PrecisionContext(long target, long guard)
      : target_bits(target), guard_bits(guard) {
    validate();
  }
  explicit PrecisionContext(long target) : PrecisionContext(target, 64) {}

  long working_bits() const noexcept { return target_bits + guard_bits; }

  PrecisionContext with_target(long t) const { return {t, guard_bits}; }
  PrecisionContext with_guard(long g) const { return {target_bits, g}; }

  void validate() const {
    if (target_bits < 24) {
      throw std::invalid_argument("PrecisionContext: target_bits must be >= 24");
    }
    if (guard_bits < 0) {
      throw std::invalid_argument("PrecisionContext: guard_bits must be >= 0");
    }
  }
};

}  // namespace fnlab
