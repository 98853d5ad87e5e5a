#include "eep/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eep/detail/log1mexp.hpp"
#include "eep/rng.hpp"

namespace eep {

namespace {

void require_positive_finite(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) +
                                " must be strictly positive and finite");
  }
}

// g = 1 - e^(-beta x) and g^alpha, the building blocks of every formula.
inline double g_of(double beta, double x) { return -std::expm1(-beta * x); }

inline double g_pow_alpha(double alpha, double beta, double x) {
  // exp(alpha log(1 - e^(-beta x))) through log1mexp, which keeps relative
  // accuracy both for beta x >> 1 (where 1 - e^(-beta x) rounds to 1) and
  // for beta x << 1 (where exp(-beta x) rounds to 1).
  return std::exp(alpha * detail::log1mexp(beta * x));
}

}  // namespace

EepParams::EepParams(double alpha_in, double beta_in, double lambda_in)
    : alpha(alpha_in), beta(beta_in), lambda(lambda_in) {
  require_positive_finite(alpha, "alpha");
  require_positive_finite(beta, "beta");
  require_positive_finite(lambda, "lambda");
}

EeParams::EeParams(double alpha_in, double beta_in)
    : alpha(alpha_in), beta(beta_in) {
  require_positive_finite(alpha, "alpha");
  require_positive_finite(beta, "beta");
}

double cdf(const EepParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  const double ga = g_pow_alpha(p.alpha, p.beta, x);
  return std::expm1(-p.lambda * ga) / std::expm1(-p.lambda);
}

double pdf(const EepParams& p, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (p.alpha < 1.0) return std::numeric_limits<double>::infinity();
    if (p.alpha > 1.0) return 0.0;
    return p.beta * p.lambda / -std::expm1(-p.lambda);
  }
  const double g = g_of(p.beta, x);
  const double ga = g_pow_alpha(p.alpha, p.beta, x);
  const double scale = p.alpha * p.beta * p.lambda / -std::expm1(-p.lambda);
  return scale * std::exp(-p.beta * x) * std::pow(g, p.alpha - 1.0) *
         std::exp(-p.lambda * ga);
}

double survival(const EepParams& p, double x) {
  if (!(x > 0.0)) return 1.0;
  // (e^(-lambda g^alpha) - e^(-lambda)) / (1 - e^(-lambda)), factored so the
  // difference is an expm1 of the small exponent gap.
  const double ga = g_pow_alpha(p.alpha, p.beta, x);
  const double one_minus_ga =
      -std::expm1(p.alpha * detail::log1mexp(p.beta * x));
  return std::exp(-p.lambda * ga) * -std::expm1(-p.lambda * one_minus_ga) /
         -std::expm1(-p.lambda);
}

double hazard(const EepParams& p, double x) {
  if (!(x > 0.0)) throw std::domain_error("hazard: requires x > 0");
  // pdf/survival with the common factor e^(-lambda g^alpha) cancelled:
  //   h(x) = alpha beta lambda e^(-beta x) g^(alpha-1)
  //          / (1 - e^(-lambda (1 - g^alpha))).
  const double log_g = detail::log1mexp(p.beta * x);
  const double one_minus_ga = -std::expm1(p.alpha * log_g);
  const double denom = -std::expm1(-p.lambda * one_minus_ga);
  if (denom == 0.0) return p.beta;  // tail underflow guard: the asymptote
  const double num = p.alpha * p.beta * p.lambda * std::exp(-p.beta * x) *
                     std::exp((p.alpha - 1.0) * log_g);
  return num / denom;
}

double quantile(const EepParams& p, double u) {
  if (!(u >= 0.0) || u > 1.0 || !std::isfinite(u))
    throw std::domain_error("quantile: requires u in [0, 1]");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return std::numeric_limits<double>::infinity();
  const double norm = -std::expm1(-p.lambda);  // 1 - e^(-lambda)
  const double inner = -std::log1p(-u * norm) / p.lambda;
  const double g = std::pow(inner, 1.0 / p.alpha);
  if (g >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-g) / p.beta;
}

SampleBatch sample(const EepParams& p, std::size_t n, std::uint64_t seed,
                   std::uint64_t stream_id) {
  SampleBatch batch;
  batch.seed = seed;
  batch.stream_id = stream_id;
  batch.values.reserve(n);
  Philox2x64 rng(seed, stream_id);
  for (std::size_t i = 0; i < n; ++i)
    batch.values.push_back(quantile(p, rng.next_open01()));
  return batch;
}

double cdf(const EeParams& p, double x) {
  if (!(x > 0.0)) return 0.0;
  return g_pow_alpha(p.alpha, p.beta, x);
}

double pdf(const EeParams& p, double x) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) {
    if (p.alpha < 1.0) return std::numeric_limits<double>::infinity();
    if (p.alpha > 1.0) return 0.0;
    return p.beta;
  }
  const double g = g_of(p.beta, x);
  return p.alpha * p.beta * std::exp(-p.beta * x) *
         std::pow(g, p.alpha - 1.0);
}

double mixture_cdf_partial(const EepParams& p, double x, int m_max) {
  if (m_max < 1) throw std::invalid_argument("mixture_cdf_partial: m_max >= 1");
  const double lf = p.lambda * cdf(EeParams(p.alpha, p.beta), x);
  long double sum = 0.0L;
  long double term = 1.0L;  // (lambda F)^m / m!
  for (int m = 1; m <= m_max; ++m) {
    term *= lf / m;
    sum += (m % 2 == 1) ? term : -term;
  }
  return static_cast<double>(sum / -std::expm1(-static_cast<long double>(p.lambda)));
}

}  // namespace eep
