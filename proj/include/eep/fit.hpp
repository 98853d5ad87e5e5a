#ifndef EEP_FIT_HPP
#define EEP_FIT_HPP

#include <array>
#include <optional>
#include <span>

#include "eep/distributions.hpp"

namespace eep {

struct FitResult {
  EepParams params{1.0, 1.0, 1.0};
  double log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Delta-method standard errors of (alpha, beta, lambda) from the numerical
  /// Hessian of the log-likelihood at the optimum; absent when the observed
  /// information is not positive definite there.
  std::optional<std::array<double, 3>> standard_errors;
};

/// Sum of log pdf(x_i).  All data must be strictly positive and finite
/// (std::invalid_argument otherwise).
double log_likelihood(const EepParams& p, std::span<const double> data);

/// Maximum-likelihood fit of EEP(alpha, beta, lambda) by Nelder-Mead simplex
/// search in log-parameter space (positivity holds by construction).  Needs
/// at least 10 strictly positive observations.  When no initial guess is
/// given, alpha comes from the ratio of log sample quantiles, beta from
/// 1/mean and lambda starts at 1.  Non-convergence returns the best vertex
/// found with converged = false.
FitResult fit_mle(std::span<const double> data,
                  const std::optional<EepParams>& initial = std::nullopt,
                  int max_iterations = 4000);

}  // namespace eep

#endif
