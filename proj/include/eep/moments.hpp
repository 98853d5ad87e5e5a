#ifndef EEP_MOMENTS_HPP
#define EEP_MOMENTS_HPP

#include "eep/distributions.hpp"
#include "eep/eval_result.hpp"

namespace eep {

/// Above this lambda the closed-form series for the characteristic function,
/// the moment generating function and the real-order moments route to their
/// quadrature counterparts: the alternating series lose roughly
/// lambda / ln 10 digits to cancellation, which exceeds the headroom of the
/// internal extended-precision accumulation near lambda = 36.
inline constexpr double kLambdaSwitch = 30.0;

/// Characteristic function E exp(i t X) in closed form:
///   phi(t) = alpha lambda Gamma(1 - it/beta) / (1 - e^(-lambda))
///            * 1Psi1[(alpha, alpha); (1 + alpha - it/beta, alpha); -lambda].
/// Negative t is evaluated as conj(phi(-t)), so Hermitian symmetry holds by
/// construction.  For lambda > kLambdaSwitch the call is routed to
/// chf_quadrature.
ComplexValue chf(const EepParams& p, double t);

/// The same characteristic function from the finite-interval integral
///   alpha lambda/(1 - e^(-lambda)) int_0^1 (1-u)^(-it/beta) u^(alpha-1)
///   e^(-lambda u^alpha) du
/// by adaptive quadrature (the u = v^(1/alpha) substitution removes the
/// endpoint singularity when alpha < 1).  Serves as the independent check of
/// the series route.
ComplexValue chf_quadrature(const EepParams& p, double t);

/// Moment generating function in the phi(it) convention of the closed form,
///   M(t) = E exp(-t X) = alpha lambda Gamma(1 + t/beta) / (1 - e^(-lambda))
///          * 1Psi1[(alpha, alpha); (1 + alpha + t/beta, alpha); -lambda],
/// finite exactly for t > -beta (E exp(-tX) diverges at t = -beta).  The
/// Gamma factor carries simple poles at t = -m beta, m = 1, 2, ..., so the
/// closed form continues analytically to C minus that pole set; computing
/// the continuation is out of scope and values at t <= -beta are a hard
/// domain error instead.
double mgf(const EepParams& p, double t);

/// Real-order moment of EE(alpha, beta) in closed form,
///   E X^nu = alpha Gamma(nu + 1) / beta^nu * Phi*_{1-alpha}(1, nu+1, 1),
/// valid for nu > 1 - alpha (domain error otherwise).
double moment(const EeParams& p, double nu);

/// Gupta-Kundu series for the integer moments of EE(alpha, beta),
///   E X^n = alpha n! / beta^n * sum_k (-1)^k / (k+1)^(n+1) C(alpha-1, k).
/// For integer alpha the series terminates exactly.  For fractional alpha
/// the terms decay only algebraically; the reported estimate bounds the
/// truncated tail and converged = false signals an insufficient k_max.
EvalResult<double> moment_gupta_kundu(const EeParams& p, int n,
                                      long k_max = 200000);

/// Real-order moment of EEP(alpha, beta, lambda) as the weighted series of
/// Goyal-Laddha functions,
///   E X^nu = alpha lambda Gamma(nu+1) / (beta^nu (1 - e^(-lambda)))
///            * sum_m Phi*_{1-alpha(m+1)}(1, nu+1, 1) (-lambda)^m / m!,
/// for nu > 1 - alpha.  The error estimate combines the outer tail bound
/// with the inner evaluation errors.  lambda > kLambdaSwitch routes to
/// moment_quadrature.
EvalResult<double> moment(const EepParams& p, double nu);

/// Double-series form of the integer moments of EEP,
///   E X^n = alpha lambda n! / (beta^n (1 - e^(-lambda)))
///           * sum_{m,k} (-1)^(m+k) lambda^m / (m! (k+1)^(n+1))
///             C(alpha(m+1)-1, k),
/// kept solely as a cross-check of the single-series form.  Inner sums with
/// integer upper coefficient terminate and are evaluated exactly in
/// multiprecision (the alternating binomial sums cancel to ~2^(alpha m)
/// before settling); fractional ones are truncated with a tail correction.
/// Reliable for lambda up to about 15.
EvalResult<double> moment_double_series(const EepParams& p, int n,
                                        int m_max = 500, long k_max = 200000);

/// Direct quadrature of int_0^inf x^nu pdf(x) dx after the u = 1 - e^(-beta
/// x) substitution; valid on the full integrability range nu > -alpha, which
/// is wider than the series domain nu > 1 - alpha.
EvalResult<double> moment_quadrature(const EepParams& p, double nu);

struct MeanVariance {
  double mean;
  double variance;
};

/// First moment and central second moment from the closed-form series.
MeanVariance mean_variance(const EepParams& p);

}  // namespace eep

#endif
