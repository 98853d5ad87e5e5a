#ifndef EEP_DETAIL_SUMMATION_HPP
#define EEP_DETAIL_SUMMATION_HPP

#include <cmath>

namespace eep::detail {

// Compensated accumulation (Neumaier's variant of Kahan summation) on long
// double, for series whose terms overshoot the result by a few orders.
struct NeumaierLd {
  long double hi = 0.0L, lo = 0.0L;
  void add(long double x) {
    const long double t = hi + x;
    if (std::fabs(hi) >= std::fabs(x))
      lo += (hi - t) + x;
    else
      lo += (x - t) + hi;
    hi = t;
  }
  long double sum() const { return hi + lo; }
};

}  // namespace eep::detail

#endif
