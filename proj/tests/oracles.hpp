#ifndef EEP_TESTS_ORACLES_HPP
#define EEP_TESTS_ORACLES_HPP

// Test-only reference computations.  Each oracle deliberately takes a
// different route than the library code it checks: Euler's product limit
// instead of Lanczos, brute-force quad-precision term sums instead of the
// adaptive engine, bisection instead of the closed-form quantile, and
// x-space density integrals instead of the series representations.

#include <quadmath.h>

#include <cmath>
#include <complex>

#include "eep/distributions.hpp"
#include "eep/quadrature.hpp"

namespace oracles {

// Kahan-compensated accumulator used by the slowly converging limits below.
struct Kahan {
  long double s = 0.0L, c = 0.0L;
  void add(long double x) {
    const long double y = x - c;
    const long double t = s + y;
    c = (t - s) - y;
    s = t;
  }
};

// log Gamma(z) for Re z > 0 from Euler's limit
//   Gamma(z) = lim n^z n! / (z (z+1) ... (z+n)),
// Richardson-extrapolated over n, 2n, 4n to kill the 1/n and 1/n^2 errors.
inline std::complex<double> log_gamma_euler(std::complex<double> z_in,
                                            long n = 40000) {
  using C = std::complex<long double>;
  const C z(z_in.real(), z_in.imag());
  auto level = [&](long m) {
    Kahan re, im;
    for (long k = 0; k <= m; ++k) {
      const C lg = std::log(z + static_cast<long double>(k));
      re.add(lg.real());
      im.add(lg.imag());
    }
    const C partial = z * std::log(static_cast<long double>(m)) +
                      C(lgammal(static_cast<long double>(m) + 1.0L)) -
                      C(re.s + re.c, im.s + im.c);
    return partial;
  };
  const C e1 = level(n), e2 = level(2 * n), e3 = level(4 * n);
  const C r = e1 / 3.0L - 2.0L * e2 + e3 * (8.0L / 3.0L);
  return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

// Fox-Wright 1Psi1 with real parameters by brute-force quad-precision
// summation of a fixed number of terms (pass ~10x what the engine needs).
inline double fox_wright_brute_real(double a, double A, double b, double B,
                                    double x, long terms) {
  __float128 sum = 0;
  __float128 power = 1;  // x^n / n!
  for (long n = 0; n < terms; ++n) {
    const __float128 lg =
        lgammaq(__float128(a) + __float128(A) * n) -
        lgammaq(__float128(b) + __float128(B) * n);
    sum += expq(lg) * power;
    power = power * __float128(x) / (n + 1);
  }
  return static_cast<double>(sum);
}

// Quantile by bisection on the CDF.
inline double bisect_quantile(const eep::EepParams& p, double u,
                              int iterations = 200) {
  double lo = 0.0, hi = 1.0;
  while (eep::cdf(p, hi) < u) hi *= 2.0;
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (eep::cdf(p, mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// E[h(X)] for X ~ EEP(p) by direct x-space quadrature of h * pdf.  The head
// uses y = (beta x)^alpha to absorb the alpha < 1 density singularity; the
// tail maps x in [x1, inf) to u = e^(-beta (x - x1)) in (0, 1].
template <class H>
double expectation_eep(const eep::EepParams& p, H&& h, double abs_tol = 1e-13,
                       double rel_tol = 1e-10) {
  const double x1 = 1.0 / p.beta;
  eep::QuadResult<double> head;
  if (p.alpha >= 1.0) {
    head = eep::integrate_adaptive<double>(
        [&](double x) { return h(x) * eep::pdf(p, x); }, 0.0, x1, abs_tol,
        rel_tol, 40000);
  } else {
    const double scale = p.alpha * p.beta * p.lambda / -std::expm1(-p.lambda);
    head = eep::integrate_adaptive<double>(
        [&](double y) {
          const double bx = std::pow(y, 1.0 / p.alpha);
          const double x = bx / p.beta;
          const double g = -std::expm1(-bx);
          const double bracket =
              std::pow(g / bx, p.alpha - 1.0);  // bounded near 0
          return h(x) * scale / (p.alpha * p.beta) * std::exp(-bx) * bracket *
                 std::exp(-p.lambda * std::exp(p.alpha * std::log(g)));
        },
        0.0, std::pow(p.beta * x1, p.alpha), abs_tol, rel_tol, 40000);
  }
  eep::QuadResult<double> tail = eep::integrate_adaptive<double>(
      [&](double u) {
        const double x = x1 - std::log(u) / p.beta;
        return h(x) * eep::pdf(p, x) / (p.beta * u);
      },
      0.0, 1.0, abs_tol, rel_tol, 40000);
  return head.value + tail.value;
}

// Same for X ~ EE(alpha, beta).
template <class H>
double expectation_ee(const eep::EeParams& p, H&& h, double abs_tol = 1e-13,
                      double rel_tol = 1e-10) {
  const double x1 = 1.0 / p.beta;
  eep::QuadResult<double> head;
  if (p.alpha >= 1.0) {
    head = eep::integrate_adaptive<double>(
        [&](double x) { return h(x) * eep::pdf(p, x); }, 0.0, x1, abs_tol,
        rel_tol, 40000);
  } else {
    head = eep::integrate_adaptive<double>(
        [&](double y) {
          const double bx = std::pow(y, 1.0 / p.alpha);
          const double x = bx / p.beta;
          const double g = -std::expm1(-bx);
          return h(x) * std::exp(-bx) * std::pow(g / bx, p.alpha - 1.0);
        },
        0.0, std::pow(p.beta * x1, p.alpha), abs_tol, rel_tol, 40000);
  }
  eep::QuadResult<double> tail = eep::integrate_adaptive<double>(
      [&](double u) {
        const double x = x1 - std::log(u) / p.beta;
        return h(x) * eep::pdf(p, x) / (p.beta * u);
      },
      0.0, 1.0, abs_tol, rel_tol, 40000);
  return head.value + tail.value;
}

}  // namespace oracles

#endif
