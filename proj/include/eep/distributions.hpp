#ifndef EEP_DISTRIBUTIONS_HPP
#define EEP_DISTRIBUTIONS_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace eep {

/// Parameters of the exponentiated exponential Poisson distribution
/// EEP(alpha, beta, lambda): alpha and lambda are shape parameters, beta is
/// the rate (1/time).  Construction rejects values that are not strictly
/// positive and finite, so every operation may assume valid parameters.
struct EepParams {
  EepParams(double alpha_in, double beta_in, double lambda_in);
  double alpha, beta, lambda;
};

/// Parameters of the exponentiated exponential distribution EE(alpha, beta)
/// with CDF (1 - e^(-beta x))^alpha on x >= 0.
struct EeParams {
  EeParams(double alpha_in, double beta_in);
  double alpha, beta;
};

/// A batch of nonnegative lifetimes plus the generator key that produced it;
/// identical (seed, stream_id, n) reproduces the batch bit-exactly.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

/// CDF of EEP: (1 - e^(-lambda (1 - e^(-beta x))^alpha)) / (1 - e^(-lambda));
/// zero for x <= 0.
double cdf(const EepParams& p, double x);

/// Density of EEP.  Zero for x < 0.  For alpha < 1 the density has an
/// integrable singularity at the origin and pdf(p, 0) returns +infinity;
/// that is a documented signal, not an error.
double pdf(const EepParams& p, double x);

/// Survival function 1 - CDF, computed from the cancellation-safe form
/// (e^(-lambda g^alpha) - e^(-lambda)) / (1 - e^(-lambda)) so that relative
/// accuracy is preserved deep into the upper tail.
double survival(const EepParams& p, double x);

/// Hazard rate pdf/survival for x > 0, computed jointly so the shared
/// exponential factor cancels analytically; tends to beta as x -> infinity
/// and returns exactly beta once the tail quantities underflow.
double hazard(const EepParams& p, double x);

/// Closed-form quantile
///   Q(u) = -(1/beta) ln(1 - [-ln(1 - u (1 - e^(-lambda))) / lambda]^(1/alpha)).
/// Domain error outside [0, 1]; u = 1 maps to +infinity.
double quantile(const EepParams& p, double u);

/// n i.i.d. EEP draws by inverse transform over a Philox(seed, stream_id)
/// stream.  Uniform variates are drawn from the open interval, so samples
/// are strictly positive even for alpha < 1.
SampleBatch sample(const EepParams& p, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream_id = 0);

double cdf(const EeParams& p, double x);
double pdf(const EeParams& p, double x);

/// Partial sum of the Poisson mixture expansion of the EEP CDF,
///   1/(1 - e^(-lambda)) * sum_{m=1..m_max} (-1)^(m+1)/m! [lambda F_ee(x)]^m,
/// which brackets cdf(p, x) alternately and converges to it as m_max grows.
double mixture_cdf_partial(const EepParams& p, double x, int m_max);

}  // namespace eep

#endif
