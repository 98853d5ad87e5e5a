#ifndef EEP_EVAL_RESULT_HPP
#define EEP_EVAL_RESULT_HPP

#include <complex>

namespace eep {

using ComplexValue = std::complex<double>;

/// Outcome of a truncated series or adaptive quadrature: the value together
/// with an estimate of the absolute error, the number of terms (or integrand
/// evaluations) consumed, and whether the termination criterion was met
/// within the budget.  `converged == false` means the value is the best
/// partial result and `abs_error_estimate` is its honest uncertainty; it is
/// never an approximate value silently presented as converged.
template <class T = double>
struct EvalResult {
  T value{};
  double abs_error_estimate = 0.0;
  long terms_used = 0;
  bool converged = false;
};

}  // namespace eep

#endif
