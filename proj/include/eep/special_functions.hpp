#ifndef EEP_SPECIAL_FUNCTIONS_HPP
#define EEP_SPECIAL_FUNCTIONS_HPP

#include <complex>
#include <utility>
#include <vector>

#include "eep/eval_result.hpp"

namespace eep {

/// Principal branch of log Gamma(z), Lanczos approximation (g = 7, nine
/// coefficients) with the reflection formula for Re z < 1/2.  Relative
/// accuracy is about 1e-13; exp(log_gamma(x)) matches the real-axis gamma to
/// that level.  Throws std::domain_error at the poles z = 0, -1, -2, ...
/// For Re z < 1/2 the imaginary part off the real axis is only guaranteed
/// modulo 2*pi (exp of the result is always Gamma(z) itself).
ComplexValue log_gamma(ComplexValue z);

/// Rising factorial (w)_k = w (w+1) ... (w+k-1); (w)_0 = 1.
double pochhammer(double w, long k);
ComplexValue pochhammer(ComplexValue w, long k);

/// Generalized binomial coefficient C(w, k) = (-1)^k (-w)_k / k! for real w
/// and integer k >= 0.
double binomial_general(double w, long k);

/// Argument bundle for the Fox-Wright series
///   sum_n prod_j Gamma(a_j + A_j n) / prod_k Gamma(b_k + B_k n) * x^n / n!.
/// Construction enforces A, B > 0 and the convergence condition
/// Delta = 1 + sum B - sum A > 0.
struct FoxWrightSpec {
  using Pair = std::pair<ComplexValue, double>;  // (coefficient, scale)

  FoxWrightSpec(std::vector<Pair> upper_pairs, std::vector<Pair> lower_pairs,
                ComplexValue x);

  const std::vector<Pair>& upper() const { return upper_; }
  const std::vector<Pair>& lower() const { return lower_; }
  ComplexValue argument() const { return argument_; }
  double delta() const;  // 1 + sum B_k - sum A_j

 private:
  std::vector<Pair> upper_, lower_;
  ComplexValue argument_;
};

/// Confluent Fox-Wright 1Psi1 partial sum with a tail estimate.  The
/// argument bundle must hold exactly one upper and one lower pair
/// (std::invalid_argument otherwise).  Terms are accumulated internally in quad precision so that
/// the round-off floor of the alternating series stays below the reported
/// estimate even for arguments around x = -30.  Stops when three consecutive
/// terms fall below eps_rel * |sum| + eps_abs; converged = false if max_terms
/// is exhausted first.
EvalResult<ComplexValue> fox_wright_1psi1(const FoxWrightSpec& spec,
                                          double eps_rel = 1e-12,
                                          long max_terms = 10000);

/// Hurwitz-Lerch zeta Phi(z, s, a) = sum_n z^n / (n + a)^s.
/// Requires a > 0 and |z| < 1, or |z| = 1 with s > 1.
EvalResult<double> hlz_phi(double z, double s, double a, double eps_rel = 1e-12,
                           long max_terms = 10000);

/// Argument bundle for the Goyal-Laddha generalized Hurwitz-Lerch zeta
/// Phi*_mu(z, s, a).  Construction enforces z in [-1, 1], a > 0 and, on the
/// unit circle, the series condition s - mu > 1.
struct HlzStarArgs {
  HlzStarArgs(double mu, double z, double s, double a);
  double mu, z, s, a;
};

/// Goyal-Laddha series sum_n (mu)_n / n! * z^n / (n + a)^s.  For mu a
/// nonpositive integer the series terminates exactly at n = -mu (zero error
/// estimate, converged = true).  The |z| = 1 contract uses the classical
/// sufficient condition s - mu > 1, although termwise decay already holds
/// for s - mu > 0.  Phi*_mu is also a Riemann-Liouville fractional
/// derivative of z^(mu-1) Phi(z, s, a); that representation is documented
/// here for orientation, not implemented.
EvalResult<double> hlz_phi_star(const HlzStarArgs& args, double eps_rel = 1e-12,
                                long max_terms = 10000);

/// Integral form of the Goyal-Laddha function,
///   Phi*_mu(z, s, a) = 1/Gamma(s) * int_0^inf t^(s-1) e^(-a t)
///                      (1 - z e^(-t))^(-mu) dt,
/// evaluated by adaptive Gauss-Kronrod quadrature after endpoint
/// substitutions.  Requires s > 0 in addition to the HlzStarArgs invariants.
/// (Some references print e^(-s t) in the numerator; expanding the binomial
/// term by term reproduces the series only with e^(-a t), which is what is
/// implemented here.)
EvalResult<double> hlz_phi_star_integral(const HlzStarArgs& args);

}  // namespace eep

#endif
