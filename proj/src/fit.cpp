#include "eep/fit.hpp"

#include "eep/detail/log1mexp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace eep {

namespace {

// log f(x) in a form that stays finite far into the tail where pdf()
// underflows.
double log_pdf(double alpha, double beta, double lambda, double x) {
  const double log_g = detail::log1mexp(beta * x);
  const double ga = std::exp(alpha * log_g);
  return std::log(alpha * beta * lambda) - std::log(-std::expm1(-lambda)) -
         beta * x + (alpha - 1.0) * log_g - lambda * ga;
}

double neg_log_likelihood(const std::array<double, 3>& theta,
                          std::span<const double> data) {
  const double alpha = std::exp(theta[0]);
  const double beta = std::exp(theta[1]);
  const double lambda = std::exp(theta[2]);
  double acc = 0.0;
  for (double x : data) acc -= log_pdf(alpha, beta, lambda, x);
  if (!std::isfinite(acc)) acc = 1e300;  // simplex treats it as a wall
  return acc;
}

double sample_quantile(std::vector<double> sorted, double u) {
  const std::size_t idx = static_cast<std::size_t>(
      u * static_cast<double>(sorted.size() - 1));
  return sorted[idx];
}

// Quantile ratio Q(1/4)/Q(3/4) of EE(alpha, 1), monotone increasing in
// alpha; inverted by bisection for the starting alpha.
double ee_quantile_ratio(double alpha) {
  const double q1 = -std::log1p(-std::pow(0.25, 1.0 / alpha));
  const double q3 = -std::log1p(-std::pow(0.75, 1.0 / alpha));
  return q1 / q3;
}

double alpha_from_quantile_ratio(double r) {
  double lo = 0.02, hi = 100.0;
  if (r <= ee_quantile_ratio(lo)) return lo;
  if (r >= ee_quantile_ratio(hi)) return hi;
  for (int i = 0; i < 80; ++i) {
    const double mid = std::sqrt(lo * hi);
    (ee_quantile_ratio(mid) < r ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

}  // namespace

double log_likelihood(const EepParams& p, std::span<const double> data) {
  for (double x : data)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument(
          "log_likelihood: data must be strictly positive and finite");
  double acc = 0.0;
  for (double x : data) acc += log_pdf(p.alpha, p.beta, p.lambda, x);
  return acc;
}

FitResult fit_mle(std::span<const double> data,
                  const std::optional<EepParams>& initial,
                  int max_iterations) {
  if (data.size() < 10)
    throw std::invalid_argument("fit_mle: needs at least 10 observations");
  for (double x : data)
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument(
          "fit_mle: data must be strictly positive and finite");

  std::array<double, 3> start;
  if (initial) {
    start = {std::log(initial->alpha), std::log(initial->beta),
             std::log(initial->lambda)};
  } else {
    std::vector<double> sorted(data.begin(), data.end());
    std::sort(sorted.begin(), sorted.end());
    const double r =
        sample_quantile(sorted, 0.25) / sample_quantile(sorted, 0.75);
    const double mean =
        std::accumulate(sorted.begin(), sorted.end(), 0.0) /
        static_cast<double>(sorted.size());
    start = {std::log(alpha_from_quantile_ratio(r)), std::log(1.0 / mean),
             0.0};
  }

  // Nelder-Mead with the standard coefficients.
  using Vertex = std::array<double, 3>;
  std::array<Vertex, 4> simplex;
  std::array<double, 4> fval;
  for (int v = 0; v < 4; ++v) {
    simplex[v] = start;
    if (v > 0) simplex[v][v - 1] += 0.25;
    fval[v] = neg_log_likelihood(simplex[v], data);
  }

  auto order = [&] {
    std::array<int, 4> idx = {0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return fval[a] < fval[b]; });
    std::array<Vertex, 4> s2;
    std::array<double, 4> f2;
    for (int v = 0; v < 4; ++v) {
      s2[v] = simplex[idx[v]];
      f2[v] = fval[idx[v]];
    }
    simplex = s2;
    fval = f2;
  };
  order();

  int iter = 0;
  bool converged = false;
  for (; iter < max_iterations; ++iter) {
    double spread = 0.0;
    for (int d = 0; d < 3; ++d)
      for (int v = 1; v < 4; ++v)
        spread = std::max(spread, std::abs(simplex[v][d] - simplex[0][d]));
    if (std::abs(fval[3] - fval[0]) <=
            1e-10 * (std::abs(fval[0]) + 1.0) &&
        spread <= 1e-7) {
      converged = true;
      break;
    }

    Vertex centroid = {0, 0, 0};
    for (int v = 0; v < 3; ++v)
      for (int d = 0; d < 3; ++d) centroid[d] += simplex[v][d] / 3.0;

    auto blend = [&](double coef) {
      Vertex p;
      for (int d = 0; d < 3; ++d)
        p[d] = centroid[d] + coef * (simplex[3][d] - centroid[d]);
      return p;
    };

    const Vertex refl = blend(-1.0);
    const double f_refl = neg_log_likelihood(refl, data);
    if (f_refl < fval[0]) {
      const Vertex expa = blend(-2.0);
      const double f_expa = neg_log_likelihood(expa, data);
      if (f_expa < f_refl) {
        simplex[3] = expa;
        fval[3] = f_expa;
      } else {
        simplex[3] = refl;
        fval[3] = f_refl;
      }
    } else if (f_refl < fval[2]) {
      simplex[3] = refl;
      fval[3] = f_refl;
    } else {
      const Vertex contr = blend(f_refl < fval[3] ? -0.5 : 0.5);
      const double f_contr = neg_log_likelihood(contr, data);
      if (f_contr < std::min(f_refl, fval[3])) {
        simplex[3] = contr;
        fval[3] = f_contr;
      } else {
        for (int v = 1; v < 4; ++v) {  // shrink toward the best vertex
          for (int d = 0; d < 3; ++d)
            simplex[v][d] = 0.5 * (simplex[v][d] + simplex[0][d]);
          fval[v] = neg_log_likelihood(simplex[v], data);
        }
      }
    }
    order();
  }

  FitResult result;
  result.params = EepParams(std::exp(simplex[0][0]), std::exp(simplex[0][1]),
                            std::exp(simplex[0][2]));
  result.log_likelihood = -fval[0];
  result.iterations = iter;
  result.converged = converged;

  // Observed information in log-space by central differences; standard
  // errors in the original parametrization via the delta method.
  const double h = 1e-4;
  const Vertex best = simplex[0];
  auto f_at = [&](int i, int j, int si, int sj) {
    Vertex p = best;
    p[i] += si * h;
    p[j] += sj * h;
    return neg_log_likelihood(p, data);
  };
  Eigen::Matrix3d hess;
  const double f0 = fval[0];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) {
        hess(i, i) = (f_at(i, i, 1, 0) - 2.0 * f0 + f_at(i, i, -1, 0)) /
                     (h * h);
      } else {
        hess(i, j) = (f_at(i, j, 1, 1) - f_at(i, j, 1, -1) -
                      f_at(i, j, -1, 1) + f_at(i, j, -1, -1)) /
                     (4.0 * h * h);
      }
    }
  }
  Eigen::LDLT<Eigen::Matrix3d> ldlt(hess);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    const Eigen::Matrix3d cov = ldlt.solve(Eigen::Matrix3d::Identity());
    if ((cov.diagonal().array() > 0.0).all()) {
      result.standard_errors = {
          result.params.alpha * std::sqrt(cov(0, 0)),
          result.params.beta * std::sqrt(cov(1, 1)),
          result.params.lambda * std::sqrt(cov(2, 2))};
    }
  }
  return result;
}

}  // namespace eep
