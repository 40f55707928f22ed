#pragma once

namespace polycm {

/// Error budget and series limits shared by every evaluator.
///
/// A result is accepted when abs_error <= max(target_abs_error,
/// target_rel_error * |value|). The relative floor exists because values such
/// as psi^(15)(0.01) ~ 1e44 cannot carry an absolute 1e-12 bound in double.
struct PrecisionConfig {
  double target_abs_error = 1e-12;
  double target_rel_error = 1e-13;
  int max_series_terms = 100000;
  /// Summation starts at an argument no smaller than this; lower arguments
  /// are lifted by the unit-shift recurrence first.
  double recurrence_shift_target = 10.0;
  /// Highest polygamma order any derivative evaluation may request.
  int max_polygamma_order = 64;

  /// Throws DomainError if the invariants do not hold.
  void validate() const;

  double budget_for(double value) const;
};

}  // namespace polycm
