#include "eep/simulator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eep/distributions.hpp"

namespace eep {

namespace {

constexpr int kStreams = 8;  // fixed partition for order-independent batches

// Ordinary Poisson by sequential inversion; lambda must be small enough for
// e^-lambda to carry precision (callers chunk larger rates).
int poisson_inversion(double lambda, Philox2x64& rng) {
  const double u = rng.next_open01();
  double term = std::exp(-lambda);
  double cum = term;
  int n = 0;
  while (u > cum && n < 4000) {
    ++n;
    term *= lambda / n;
    cum += term;
  }
  return n;
}

// Poisson additivity: split the rate into chunks of at most 25.
int sample_poisson(double lambda, Philox2x64& rng) {
  int total = 0;
  while (lambda > 25.0) {
    total += poisson_inversion(25.0, rng);
    lambda -= 25.0;
  }
  return total + poisson_inversion(lambda, rng);
}

}  // namespace

SystemSpec::SystemSpec(int units_per_block_in, double unit_rate_in,
                       double block_count_rate_in)
    : units_per_block(units_per_block_in),
      unit_rate(unit_rate_in),
      block_count_rate(block_count_rate_in) {
  if (units_per_block < 1)
    throw std::invalid_argument("SystemSpec: units_per_block must be >= 1");
  if (!(unit_rate > 0.0) || !std::isfinite(unit_rate))
    throw std::invalid_argument("SystemSpec: unit_rate must be > 0");
  if (!(block_count_rate > 0.0) || !std::isfinite(block_count_rate))
    throw std::invalid_argument("SystemSpec: block_count_rate must be > 0");
}

int sample_ztp(double lambda, Philox2x64& rng) {
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("sample_ztp: lambda must be > 0");
  if (lambda <= 30.0) {
    // Inversion over P{N = n} = lambda^n / (n! (e^lambda - 1)), n >= 1.
    const double u = rng.next_open01();
    double term = lambda / std::expm1(lambda);
    double cum = term;
    int n = 1;
    while (u > cum && n < 4000) {
      ++n;
      term *= lambda / n;
      cum += term;
    }
    return n;
  }
  // Rejection from the ordinary Poisson; P{0} = e^-lambda < 1e-13 here.
  for (;;) {
    const int n = sample_poisson(lambda, rng);
    if (n >= 1) return n;
  }
}

int sample_ztp(double lambda, std::uint64_t seed, std::uint64_t stream_id) {
  Philox2x64 rng(seed, stream_id);
  return sample_ztp(lambda, rng);
}

double sample_system_lifetime(const SystemSpec& spec, Philox2x64& rng) {
  const int blocks = sample_ztp(spec.block_count_rate, rng);
  double system_life = std::numeric_limits<double>::infinity();
  for (int b = 0; b < blocks; ++b) {
    double block_life = 0.0;  // parallel block: max of its units
    for (int u = 0; u < spec.units_per_block; ++u)
      block_life = std::max(block_life,
                            sample_exponential(rng, spec.unit_rate));
    system_life = std::min(system_life, block_life);  // series system
  }
  return system_life;
}

double sample_system_lifetime(const SystemSpec& spec, std::uint64_t seed,
                              std::uint64_t stream_id) {
  Philox2x64 rng(seed, stream_id);
  return sample_system_lifetime(spec, rng);
}

std::vector<double> simulate_lifetimes(const SystemSpec& spec, std::size_t n,
                                       std::uint64_t seed) {
  std::vector<double> out;
  out.reserve(n);
  for (int s = 0; s < kStreams; ++s) {
    const std::size_t count =
        n / kStreams + (static_cast<std::size_t>(s) < n % kStreams ? 1 : 0);
    Philox2x64 rng(seed, static_cast<std::uint64_t>(s));
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(sample_system_lifetime(spec, rng));
  }
  return out;
}

KsReport run_ks_validation(const SystemSpec& spec, std::size_t n,
                           std::uint64_t seed) {
  if (n < 1000)
    throw std::invalid_argument("run_ks_validation: requires n >= 1000");
  const EepParams params(static_cast<double>(spec.units_per_block),
                         spec.unit_rate, spec.block_count_rate);
  std::vector<double> lifetimes = simulate_lifetimes(spec, n, seed);
  KsReport report;
  report.n = n;
  report.ks_distance = ks_statistic(
      std::move(lifetimes), [&](double x) { return cdf(params, x); });
  report.critical_value_1pct = 1.63 / std::sqrt(static_cast<double>(n));
  report.pass = report.ks_distance <= report.critical_value_1pct;
  return report;
}

}  // namespace eep
