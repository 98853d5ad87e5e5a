#include "eep/special_functions.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "eep/detail/quad_precision.hpp"
#include "eep/detail/summation.hpp"
#include "eep/quadrature.hpp"

namespace eep {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kHalfLogTwoPi = 0.91893853320467274178;

// Lanczos coefficients for g = 7 (the nine-term set used by GSL and many
// others); relative accuracy of the reconstructed Gamma is ~1e-13.
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

ComplexValue log_gamma_right_half(ComplexValue z) {
  z -= 1.0;
  ComplexValue s(kLanczos[0], 0.0);
  for (int i = 1; i < 9; ++i) s += kLanczos[i] / (z + static_cast<double>(i));
  const ComplexValue t = z + 7.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(t) - t + std::log(s);
}

using detail::NeumaierLd;

}  // namespace

ComplexValue log_gamma(ComplexValue z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("log_gamma: argument must be finite");
  if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()))
    throw std::domain_error("log_gamma: pole at nonpositive integer");
  if (std::signbit(z.imag()))  // conjugate symmetry holds by construction
    return std::conj(log_gamma(std::conj(z)));
  if (z.real() < 0.5)
    return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
  return log_gamma_right_half(z);
}

double pochhammer(double w, long k) {
  if (k < 0) throw std::invalid_argument("pochhammer: k must be >= 0");
  double prod = 1.0;
  for (long j = 0; j < k; ++j) prod *= w + static_cast<double>(j);
  return prod;
}

ComplexValue pochhammer(ComplexValue w, long k) {
  if (k < 0) throw std::invalid_argument("pochhammer: k must be >= 0");
  ComplexValue prod = 1.0;
  for (long j = 0; j < k; ++j) prod *= w + static_cast<double>(j);
  return prod;
}

double binomial_general(double w, long k) {
  if (k < 0) throw std::invalid_argument("binomial_general: k must be >= 0");
  // C(w, k) = prod_{j=0}^{k-1} (w - j) / (j + 1); equals (-1)^k (-w)_k / k!.
  double prod = 1.0;
  for (long j = 0; j < k; ++j)
    prod *= (w - static_cast<double>(j)) / static_cast<double>(j + 1);
  return prod;
}

// ---------------------------------------------------------------------------
// Fox-Wright 1Psi1

FoxWrightSpec::FoxWrightSpec(std::vector<Pair> upper_pairs,
                             std::vector<Pair> lower_pairs, ComplexValue x)
    : upper_(std::move(upper_pairs)),
      lower_(std::move(lower_pairs)),
      argument_(x) {
  for (const auto& [c, scale] : upper_)
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw std::domain_error("FoxWrightSpec: all A must be > 0");
  for (const auto& [c, scale] : lower_)
    if (!(scale > 0.0) || !std::isfinite(scale))
      throw std::domain_error("FoxWrightSpec: all B must be > 0");
  if (!(delta() > 0.0))
    throw std::domain_error(
        "FoxWrightSpec: outside the convergence domain, requires "
        "Delta = 1 + sum B - sum A > 0");
}

double FoxWrightSpec::delta() const {
  double d = 1.0;
  for (const auto& [c, a] : upper_) d -= a;
  for (const auto& [c, b] : lower_) d += b;
  return d;
}

EvalResult<ComplexValue> fox_wright_1psi1(const FoxWrightSpec& spec,
                                          double eps_rel, long max_terms) {
  using detail::c128;
  using detail::f128;
  if (spec.upper().size() != 1 || spec.lower().size() != 1)
    throw std::invalid_argument(
        "fox_wright_1psi1: spec must hold exactly one upper and one lower "
        "pair");
  if (max_terms < 1)
    throw std::invalid_argument("fox_wright_1psi1: max_terms must be >= 1");

  const c128 a(spec.upper()[0].first);
  const f128 A = spec.upper()[0].second;
  const c128 b(spec.lower()[0].first);
  const f128 B = spec.lower()[0].second;
  const c128 x(spec.argument());
  const bool alternating = spec.argument().imag() == 0.0 &&
                           spec.argument().real() < 0.0 &&
                           spec.upper()[0].first.imag() == 0.0 &&
                           spec.lower()[0].first.imag() == 0.0;

  constexpr double eps_abs = 1e-300;
  const f128 eps128 = f128(1.93e-34);

  auto term_at = [&](long n) {
    const c128 an = a + c128(A * f128(n));
    const c128 bn = b + c128(B * f128(n));
    return detail::exp_q(detail::lgamma_q(an) - detail::lgamma_q(bn));
  };

  c128 sum{};
  f128 abs_sum = 0;
  c128 power{f128(1)};  // x^n / n!
  f128 last_mag = 0, prev_mag = 0;
  int small_run = 0;
  long n = 0;
  bool met = false;
  for (; n < max_terms; ++n) {
    const c128 term = term_at(n) * power;
    sum = sum + term;
    const f128 mag = detail::abs_q(term);
    abs_sum += mag;
    prev_mag = last_mag;
    last_mag = mag;

    const f128 thresh = f128(eps_rel) * detail::abs_q(sum) + f128(eps_abs);
    small_run = (mag <= thresh) ? small_run + 1 : 0;
    power = power * x / f128(n + 1);
    if (small_run >= 3) {
      met = true;
      ++n;
      break;
    }
  }

  EvalResult<ComplexValue> out;
  out.terms_used = n;
  out.converged = met;
  out.value = sum.to_double();

  // Next (first omitted) term plus the round-off floor of the accumulation.
  const double next_mag =
      static_cast<double>(detail::abs_q(term_at(n) * power));
  double tail = next_mag;
  if (!alternating) {
    // Inflate by the geometric factor observed between the last two terms.
    double r = 0.0;
    if (prev_mag > 0) r = static_cast<double>(last_mag / prev_mag);
    if (!met) r = std::max(r, 0.5);
    r = std::min(r, 0.95);
    tail = next_mag / (1.0 - r);
  } else if (!met) {
    tail = next_mag * 2.0;
  }
  out.abs_error_estimate = tail +
                           static_cast<double>(eps128 * abs_sum) * 8.0 +
                           DBL_EPSILON * std::abs(out.value);
  return out;
}

// ---------------------------------------------------------------------------
// Hurwitz-Lerch zeta and the Goyal-Laddha generalization

namespace {

// Tail bounds for sum_{k >= N} t_k given the first omitted term.
//  - z = 1, terms eventually decreasing like (k+a)^-(decay+1): integral test,
//    t_N (1 + (N + a)/decay), a rigorous upper bound.
//  - alternating (z < 0): next-term bound.
//  - |z| < 1: geometric with the observed ratio capped below 1.
double series_tail_estimate(double z, double decay_minus_one, double a,
                            double next_mag, long n, double ratio_hint) {
  if (z == 1.0)
    return next_mag * (1.0 + (static_cast<double>(n) + a) /
                                 std::max(decay_minus_one, 1e-12));
  if (z < 0.0) return next_mag;
  double r = std::min(std::max(ratio_hint, std::abs(z)), 0.95);
  return next_mag / (1.0 - r);
}

}  // namespace

EvalResult<double> hlz_phi(double z, double s, double a, double eps_rel,
                           long max_terms) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("hlz_phi: requires a > 0");
  if (std::abs(z) > 1.0)
    throw std::domain_error("hlz_phi: requires |z| <= 1");
  if (std::abs(z) == 1.0 && !(s > 1.0))
    throw std::domain_error("hlz_phi: on |z| = 1 requires s > 1");
  if (max_terms < 1)
    throw std::invalid_argument("hlz_phi: max_terms must be >= 1");

  constexpr double eps_abs = 1e-300;
  NeumaierLd acc;
  long double zp = 1.0L;
  double last = 0.0, prev = 0.0;
  int small_run = 0;
  long n = 0;
  bool met = false;
  for (; n < max_terms; ++n) {
    const long double term =
        zp / powl(static_cast<long double>(n) + a, static_cast<long double>(s));
    acc.add(term);
    prev = last;
    last = std::abs(static_cast<double>(term));
    const double thresh = eps_rel * std::abs(static_cast<double>(acc.sum())) +
                          eps_abs;
    small_run = (last <= thresh) ? small_run + 1 : 0;
    zp *= z;
    if (small_run >= 3) {
      met = true;
      ++n;
      break;
    }
  }

  EvalResult<double> out;
  out.value = static_cast<double>(acc.sum());
  out.terms_used = n;
  out.converged = met;
  const double next_mag = std::abs(static_cast<double>(
      zp / powl(static_cast<long double>(n) + a, static_cast<long double>(s))));
  const double ratio = (prev > 0.0 && last > 0.0) ? last / prev : std::abs(z);
  out.abs_error_estimate =
      series_tail_estimate(z, s - 1.0, a, next_mag, n, ratio) +
      LDBL_EPSILON * std::abs(out.value) * 4.0;
  return out;
}

HlzStarArgs::HlzStarArgs(double mu_in, double z_in, double s_in, double a_in)
    : mu(mu_in), z(z_in), s(s_in), a(a_in) {
  if (!std::isfinite(mu) || !std::isfinite(z) || !std::isfinite(s) ||
      !std::isfinite(a))
    throw std::domain_error("HlzStarArgs: arguments must be finite");
  if (!(a > 0.0))
    throw std::domain_error(
        "HlzStarArgs: requires a > 0 for real-valued evaluation (a must not "
        "be a nonpositive integer in any case)");
  if (std::abs(z) > 1.0) throw std::domain_error("HlzStarArgs: requires |z| <= 1");
  if (std::abs(z) == 1.0 && !(s - mu > 1.0))
    throw std::domain_error("HlzStarArgs: on |z| = 1 requires s - mu > 1");
}

EvalResult<double> hlz_phi_star(const HlzStarArgs& args, double eps_rel,
                                long max_terms) {
  if (max_terms < 1)
    throw std::invalid_argument("hlz_phi_star: max_terms must be >= 1");
  const double mu = args.mu, z = args.z, s = args.s, a = args.a;

  constexpr double eps_abs = 1e-300;
  NeumaierLd acc;
  long double coef = 1.0L;  // (mu)_n z^n / n!
  double last = 0.0, prev = 0.0;
  int small_run = 0;
  long n = 0;
  bool met = false;
  for (; n < max_terms; ++n) {
    const long double term =
        coef / powl(static_cast<long double>(n) + a, static_cast<long double>(s));
    acc.add(term);
    prev = last;
    last = std::abs(static_cast<double>(term));
    coef *= (static_cast<long double>(mu) + n) * z / (n + 1.0L);
    if (coef == 0.0L) {  // nonpositive integer mu: the series terminates
      met = true;
      ++n;
      break;
    }
    const double thresh = eps_rel * std::abs(static_cast<double>(acc.sum())) +
                          eps_abs;
    small_run = (last <= thresh) ? small_run + 1 : 0;
    if (small_run >= 3) {
      met = true;
      ++n;
      break;
    }
  }

  EvalResult<double> out;
  out.value = static_cast<double>(acc.sum());
  out.terms_used = n;
  out.converged = met;
  if (coef == 0.0L) {
    out.abs_error_estimate = LDBL_EPSILON * std::abs(out.value) * n;
    return out;
  }
  const double next_mag = std::abs(static_cast<double>(
      coef / powl(static_cast<long double>(n) + a, static_cast<long double>(s))));
  const double ratio = (prev > 0.0 && last > 0.0) ? last / prev : std::abs(z);
  out.abs_error_estimate =
      series_tail_estimate(z, s - mu - 1.0, a, next_mag, n, ratio) +
      LDBL_EPSILON * std::abs(out.value) * 4.0;
  return out;
}

EvalResult<double> hlz_phi_star_integral(const HlzStarArgs& args) {
  const double mu = args.mu, z = args.z, s = args.s, a = args.a;
  if (!(s > 0.0))
    throw std::domain_error("hlz_phi_star_integral: requires s > 0");

  // (1 - z e^-t)^(-mu) via log1p for accuracy when z e^-t is close to 1.
  auto binom_factor = [mu, z](double t) {
    return std::exp(-mu * std::log1p(-z * std::exp(-t)));
  };

  // [0, 1]: the substitution y = t^s absorbs t^(s-1) dt exactly; if z = 1 and
  // mu > 0 the integrand still has a y^(-mu/s) endpoint and the further power
  // substitution y = q^(s/(s-mu)) flattens it.
  auto h01 = [&](double y) {
    const double t = std::pow(y, 1.0 / s);
    return std::exp(-a * t) * binom_factor(t) / s;
  };
  QuadResult<double> part1;
  if (z == 1.0 && mu > 0.0) {
    const double c = s / (s - mu);
    part1 = integrate_adaptive<double>(
        [&](double q) {
          const double t = std::pow(q, 1.0 / (s - mu));
          return std::exp(-a * t) * binom_factor(t) * c *
                 std::pow(q, c - 1.0) / s;
        },
        0.0, 1.0, 1e-13, 1e-11);
  } else {
    part1 = integrate_adaptive<double>(h01, 0.0, 1.0, 1e-13, 1e-11);
  }

  // [1, inf): t = 1 - ln w maps to w in (0, 1]; the w^(a-1) endpoint factor
  // is absorbed exactly by y = w^a.
  const double ze = z * std::exp(-1.0);
  auto tail = [&](double y) {
    const double w = std::pow(y, 1.0 / a);
    const double t = 1.0 - std::log(w);
    return std::exp(-a) / a * std::pow(t, s - 1.0) *
           std::exp(-mu * std::log1p(-ze * w));
  };
  QuadResult<double> part2 = integrate_adaptive<double>(tail, 0.0, 1.0, 1e-13, 1e-11);

  const double gamma_s = std::tgamma(s);
  EvalResult<double> out;
  out.value = (part1.value + part2.value) / gamma_s;
  out.abs_error_estimate =
      (part1.abs_error + part2.abs_error) / gamma_s +
      DBL_EPSILON * std::abs(out.value) * 4.0;
  out.terms_used = part1.evaluations + part2.evaluations;
  out.converged = part1.converged && part2.converged;
  return out;
}

}  // namespace eep
