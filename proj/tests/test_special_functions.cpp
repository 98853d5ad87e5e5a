#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <complex>
#include <limits>
#include <vector>

#include "eep/special_functions.hpp"
#include "oracles.hpp"

using eep::ComplexValue;
using eep::FoxWrightSpec;
using eep::HlzStarArgs;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("log_gamma known values on the real axis") {
  CHECK(eep::log_gamma({1.0, 0.0}).real() == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(eep::log_gamma({1.0, 0.0}).imag() == 0.0);
  CHECK(eep::log_gamma({5.0, 0.0}).real() ==
        doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(eep::log_gamma({0.5, 0.0}).real() ==
        doctest::Approx(0.5 * std::log(kPi)).epsilon(1e-14));
}

TEST_CASE("log_gamma matches an independent real-axis gamma to 1e-12") {
  for (double x = 0.1; x <= 30.0; x += 0.1) {
    const double mine = std::exp(eep::log_gamma({x, 0.0}).real());
    const double ref = std::exp(std::lgamma(x));
    CHECK(std::abs(mine - ref) <= 1e-12 * ref);
  }
}

TEST_CASE("log_gamma at 1+2i agrees with the Euler-limit oracle") {
  const ComplexValue got = eep::log_gamma({1.0, 2.0});
  const ComplexValue want = oracles::log_gamma_euler({1.0, 2.0});
  CHECK(std::abs(got - want) <= 5e-13);
}

TEST_CASE("log_gamma conjugate symmetry is exact") {
  for (ComplexValue z : {ComplexValue{2.5, 3.0}, ComplexValue{0.7, 11.0},
                         ComplexValue{-1.3, 0.4}, ComplexValue{6.0, -2.0}}) {
    const ComplexValue a = eep::log_gamma(std::conj(z));
    const ComplexValue b = std::conj(eep::log_gamma(z));
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
  }
}

TEST_CASE("log_gamma poles and bad input are rejected") {
  CHECK_THROWS_AS(eep::log_gamma({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(eep::log_gamma({-1.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(eep::log_gamma({-7.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(
      eep::log_gamma({std::numeric_limits<double>::infinity(), 0.0}),
      std::invalid_argument);
}

TEST_CASE("log_gamma recurrence Gamma(z+1) = z Gamma(z) across reflection") {
  for (ComplexValue z : {ComplexValue{-1.5, 0.7}, ComplexValue{-0.3, 0.0},
                         ComplexValue{-4.2, 1.3}}) {
    const ComplexValue lhs = std::exp(eep::log_gamma(z + 1.0));
    const ComplexValue rhs = z * std::exp(eep::log_gamma(z));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
  }
}

TEST_CASE("pochhammer basics") {
  CHECK(eep::pochhammer(3.7, 0) == 1.0);
  CHECK(eep::pochhammer(1.0, 6) == 720.0);
  CHECK(eep::pochhammer(0.0, 4) == 0.0);
  CHECK(eep::pochhammer(-3.0, 5) == 0.0);  // factor hits zero at j = 3
  CHECK(eep::pochhammer(ComplexValue{0.0, 1.0}, 2) ==
        ComplexValue{-1.0, 1.0});  // i (i+1)
  CHECK_THROWS_AS(eep::pochhammer(1.0, -1), std::invalid_argument);
}

TEST_CASE("binomial_general") {
  CHECK(eep::binomial_general(0.37, 0) == 1.0);
  CHECK(eep::binomial_general(3.0, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(eep::binomial_general(0.5, 2) ==
        doctest::Approx(-0.125).epsilon(1e-15));
  // (-1)^k (-w)_k / k! identity.
  for (double w : {0.5, -1.7, 4.0, 2.25}) {
    for (long k : {1L, 2L, 5L, 9L}) {
      double fact = 1.0;
      for (long j = 2; j <= k; ++j) fact *= static_cast<double>(j);
      const double via_poch =
          (k % 2 == 0 ? 1.0 : -1.0) * eep::pochhammer(-w, k) / fact;
      CHECK(eep::binomial_general(w, k) ==
            doctest::Approx(via_poch).epsilon(1e-13));
    }
  }
}

TEST_CASE("fox_wright_1psi1 degenerate argument x = 0") {
  FoxWrightSpec spec({{{1.3, 0.2}, 0.7}}, {{{2.1, -0.4}, 1.1}}, {0.0, 0.0});
  const auto r = eep::fox_wright_1psi1(spec);
  const ComplexValue want =
      std::exp(eep::log_gamma({1.3, 0.2}) - eep::log_gamma({2.1, -0.4}));
  CHECK(r.converged);
  CHECK(std::abs(r.value - want) <= 1e-13 * std::abs(want));
}

TEST_CASE("fox_wright_1psi1 normalization identity over the parameter grid") {
  // alpha lambda / (1 - e^-lambda) * 1Psi1[(a, a); (1+a, a); -lambda] = 1.
  for (double a : {0.5, 1.0, 2.0, 5.0}) {
    for (double l : {0.1, 1.0, 5.0, 20.0}) {
      FoxWrightSpec spec({{{a, 0.0}, a}}, {{{1.0 + a, 0.0}, a}}, {-l, 0.0});
      const auto r = eep::fox_wright_1psi1(spec);
      REQUIRE(r.converged);
      const double v = a * l / -std::expm1(-l) * r.value.real();
      CHECK(std::abs(v - 1.0) <= 1e-10);
      CHECK(std::abs(r.value.imag()) <= 1e-18);
    }
  }
}

TEST_CASE("fox_wright_1psi1 fixed point against the known closed value") {
  // With (a,A) = (2,2), (b,B) = (3,2), x = -1 the normalization identity
  // pins the sum to (1 - e^-1)/2.
  FoxWrightSpec spec({{{2.0, 0.0}, 2.0}}, {{{3.0, 0.0}, 2.0}}, {-1.0, 0.0});
  const auto r = eep::fox_wright_1psi1(spec);
  CHECK(r.value.real() ==
        doctest::Approx(-std::expm1(-1.0) / 2.0).epsilon(1e-13));
}

TEST_CASE("fox_wright_1psi1 against brute-force quad precision summation") {
  FoxWrightSpec spec({{{2.0, 0.0}, 2.0}}, {{{4.0, 0.0}, 2.0}}, {0.5, 0.0});
  const auto r = eep::fox_wright_1psi1(spec);
  const double brute =
      oracles::fox_wright_brute_real(2, 2, 4, 2, 0.5, 10 * r.terms_used);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - brute) <=
        r.abs_error_estimate + 1e-14 * std::abs(brute));
}

TEST_CASE("fox_wright_1psi1 supports complex argument") {
  FoxWrightSpec spec({{{1.5, 0.0}, 1.0}}, {{{2.0, 1.0}, 1.5}}, {0.3, 0.4});
  const auto r = eep::fox_wright_1psi1(spec);
  CHECK(r.converged);
  CHECK(std::isfinite(r.value.real()));
  CHECK(std::isfinite(r.value.imag()));
}

TEST_CASE("fox_wright_1psi1 domain and shape violations") {
  CHECK_THROWS_AS(
      FoxWrightSpec({{{1.0, 0.0}, 2.0}}, {{{1.0, 0.0}, 0.5}}, {1.0, 0.0}),
      std::domain_error);  // Delta = -0.5
  CHECK_THROWS_AS(
      FoxWrightSpec({{{1.0, 0.0}, -1.0}}, {{{1.0, 0.0}, 1.0}}, {1.0, 0.0}),
      std::domain_error);  // A <= 0
  FoxWrightSpec two_upper({{{1.0, 0.0}, 0.4}, {{1.0, 0.0}, 0.4}},
                          {{{1.0, 0.0}, 1.0}}, {1.0, 0.0});
  CHECK_THROWS_AS(eep::fox_wright_1psi1(two_upper), std::invalid_argument);
}

TEST_CASE("fox_wright_1psi1 reports non-convergence on a tiny budget") {
  FoxWrightSpec spec({{{1.0, 0.0}, 1.0}}, {{{1.0, 0.0}, 1.0}}, {30.0, 0.0});
  const auto r = eep::fox_wright_1psi1(spec, 1e-12, 5);
  CHECK_FALSE(r.converged);
  CHECK(r.abs_error_estimate > 0.0);
}

TEST_CASE("fox_wright_1psi1 refinement stays within the reported estimate") {
  // Refining eps_rel tenfold must move the value by less than the previous
  // abs_error_estimate, including at large negative arguments.
  for (double x : {-0.8, -5.0, -20.0, -50.0, 3.0, 20.0}) {
    for (double a : {0.5, 2.0}) {
      FoxWrightSpec spec({{{a, 0.0}, a}}, {{{1.0 + a, 0.0}, a}}, {x, 0.0});
      const auto coarse = eep::fox_wright_1psi1(spec, 1e-8, 100000);
      const auto fine = eep::fox_wright_1psi1(spec, 1e-9, 100000);
      REQUIRE(coarse.converged);
      CHECK(std::abs(fine.value - coarse.value) <= coarse.abs_error_estimate);
    }
  }
}

TEST_CASE("hlz_phi degenerate and closed-form points") {
  const auto z0 = eep::hlz_phi(0.0, 2.5, 1.7);
  CHECK(z0.value == doctest::Approx(std::pow(1.7, -2.5)).epsilon(1e-14));

  // zeta(2) = pi^2/6; the z = 1 series converges slowly and the estimate
  // must cover the truncation honestly.
  const auto z2 = eep::hlz_phi(1.0, 2.0, 1.0, 1e-12, 3000000);
  CHECK(z2.converged);
  CHECK(std::abs(z2.value - kPi * kPi / 6.0) <= z2.abs_error_estimate);
  CHECK(z2.abs_error_estimate < 2e-6);

  // Analytic oracle sum z^n/(n+1) = -ln(1-z)/z at z = 1/2.
  const auto lg = eep::hlz_phi(0.5, 1.0, 1.0);
  CHECK(std::abs(lg.value - 2.0 * std::log(2.0)) <=
        lg.abs_error_estimate + 1e-14);
  CHECK(lg.abs_error_estimate < 1e-11);
}

TEST_CASE("hlz_phi domain errors") {
  CHECK_THROWS_AS(eep::hlz_phi(1.2, 3.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(eep::hlz_phi(1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(eep::hlz_phi(-1.0, 0.8, 1.0), std::domain_error);
  CHECK_THROWS_AS(eep::hlz_phi(0.5, 2.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(eep::hlz_phi(0.5, 2.0, -2.0), std::domain_error);
}

TEST_CASE("hlz_phi_star special orders") {
  // mu = 0: only the n = 0 term survives.
  const auto m0 = eep::hlz_phi_star(HlzStarArgs(0.0, 1.0, 2.0, 1.0));
  CHECK(m0.value == 1.0);
  CHECK(m0.converged);

  // mu = 1 reduces to hlz_phi.
  for (double z : {0.3, -0.7, 0.9}) {
    for (double s : {1.5, 3.0}) {
      const auto star = eep::hlz_phi_star(HlzStarArgs(1.0, z, s, 1.3));
      const auto plain = eep::hlz_phi(z, s, 1.3);
      CHECK(std::abs(star.value - plain.value) <=
            star.abs_error_estimate + plain.abs_error_estimate + 1e-15);
    }
  }

  // mu = -1, z = 1, s = 2, a = 1: two-term sum 1 - 1/4.
  const auto m1 = eep::hlz_phi_star(HlzStarArgs(-1.0, 1.0, 2.0, 1.0));
  CHECK(m1.value == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(m1.converged);
}

TEST_CASE("hlz_phi_star terminating orders are exact") {
  for (double mu : {0.0, -1.0, -2.0, -3.0}) {
    const auto r = eep::hlz_phi_star(HlzStarArgs(mu, 1.0, 2.5, 1.0));
    REQUIRE(r.converged);
    CHECK(r.abs_error_estimate <= 1e-14 * (std::abs(r.value) + 1.0));
    long double want = 0.0L;
    long double coef = 1.0L;
    for (long n = 0; n <= static_cast<long>(-mu); ++n) {
      want += coef / powl(static_cast<long double>(n) + 1.0L, 2.5L);
      coef *= (static_cast<long double>(mu) + n) / (n + 1.0L);
    }
    CHECK(r.value ==
          doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
  }
}

TEST_CASE("hlz_phi_star domain errors") {
  CHECK_THROWS_AS(HlzStarArgs(0.5, 1.0, 1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(HlzStarArgs(1.0, 1.0, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(HlzStarArgs(0.0, 1.5, 2.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(HlzStarArgs(0.0, 0.5, 2.0, 0.0), std::domain_error);
}

TEST_CASE("hlz_phi_star_integral reductions and series agreement") {
  // mu = 0 reduces the integral to Gamma(s)/Gamma(s) * a^-s.
  const auto m0 = eep::hlz_phi_star_integral(HlzStarArgs(0.0, 0.3, 2.0, 1.0));
  CHECK(m0.value == doctest::Approx(1.0).epsilon(1e-11));

  const auto s1 = eep::hlz_phi(0.5, 2.0, 1.0);
  const auto i1 = eep::hlz_phi_star_integral(HlzStarArgs(1.0, 0.5, 2.0, 1.0));
  CHECK(std::abs(s1.value - i1.value) <=
        s1.abs_error_estimate + i1.abs_error_estimate + 1e-14);

  const HlzStarArgs half(-0.5, 1.0, 3.0, 1.0);
  const auto s2 = eep::hlz_phi_star(half, 1e-12, 2000000);
  const auto i2 = eep::hlz_phi_star_integral(half);
  CHECK(std::abs(s2.value - i2.value) <=
        s2.abs_error_estimate + i2.abs_error_estimate);

  CHECK_THROWS_AS(eep::hlz_phi_star_integral(HlzStarArgs(0.5, 0.5, -1.0, 1.0)),
                  std::domain_error);
}

TEST_CASE("hlz series and integral agree within combined estimates on a grid") {
  for (double mu : {-2.0, -0.5, 0.0, 0.5, 1.0}) {
    for (double s : {1.5, 2.0, 4.0}) {
      for (double z : {0.3, 1.0}) {
        if (z == 1.0 && !(s - mu > 1.0)) continue;
        for (double a : {1.0, 2.5}) {
          const HlzStarArgs args(mu, z, s, a);
          const auto ser = eep::hlz_phi_star(args, 1e-12, 400000);
          const auto integ = eep::hlz_phi_star_integral(args);
          CHECK(std::abs(ser.value - integ.value) <=
                ser.abs_error_estimate + integ.abs_error_estimate);
        }
      }
    }
  }
}
