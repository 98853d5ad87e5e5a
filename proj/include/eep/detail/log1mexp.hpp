#ifndef EEP_DETAIL_LOG1MEXP_HPP
#define EEP_DETAIL_LOG1MEXP_HPP

#include <cmath>

namespace eep::detail {

// log(1 - e^-y) for y > 0 with full relative accuracy on both ends: below
// ln 2 the direct log1p(-exp(-y)) cancels, so switch to log(-expm1(-y)).
inline double log1mexp(double y) {
  return y > 0.6931471805599453 ? std::log1p(-std::exp(-y))
                                : std::log(-std::expm1(-y));
}

}  // namespace eep::detail

#endif
