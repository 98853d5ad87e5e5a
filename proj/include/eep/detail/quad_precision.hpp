#ifndef EEP_DETAIL_QUAD_PRECISION_HPP
#define EEP_DETAIL_QUAD_PRECISION_HPP

// Internal quad-precision (__float128) helpers for the series engines.
//
// The alternating series used by the characteristic-function and moment
// closed forms suffer cancellation of order e^lambda; near lambda = 30 that
// is ~13 decimal digits, which double precision cannot absorb while still
// meeting the advertised error bounds.  Summing the terms in __float128 keeps
// the round-off floor far below the truncation estimates that are reported
// to callers.  Nothing in this header is part of the public interface.

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace eep::detail {

using f128 = __float128;

inline f128 q_from(const char* s) { return strtoflt128(s, nullptr); }

inline const f128 pi_q = q_from("3.14159265358979323846264338327950288419716939937510582");
inline const f128 half_log_two_pi_q =
    q_from("0.918938533204672741780329736405617639861397473637783413");

struct c128 {
  f128 re{}, im{};
  c128() = default;
  c128(f128 r) : re(r), im(0) {}
  c128(f128 r, f128 i) : re(r), im(i) {}
  explicit c128(std::complex<double> z) : re(z.real()), im(z.imag()) {}
  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline c128 operator+(c128 a, c128 b) { return {a.re + b.re, a.im + b.im}; }
inline c128 operator-(c128 a, c128 b) { return {a.re - b.re, a.im - b.im}; }
inline c128 operator-(c128 a) { return {-a.re, -a.im}; }
inline c128 operator*(c128 a, c128 b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline c128 operator*(f128 a, c128 b) { return {a * b.re, a * b.im}; }
inline c128 operator/(c128 a, f128 d) { return {a.re / d, a.im / d}; }
inline c128 operator/(c128 a, c128 b) {
  // Smith's algorithm; the magnitudes here are always moderate.
  if (fabsq(b.re) >= fabsq(b.im)) {
    f128 r = b.im / b.re;
    f128 d = b.re + b.im * r;
    return {(a.re + a.im * r) / d, (a.im - a.re * r) / d};
  }
  f128 r = b.re / b.im;
  f128 d = b.im + b.re * r;
  return {(a.re * r + a.im) / d, (a.im * r - a.re) / d};
}

inline f128 abs_q(c128 z) { return hypotq(z.re, z.im); }
inline c128 conj_q(c128 z) { return {z.re, -z.im}; }

inline c128 log_q(c128 z) { return {logq(hypotq(z.re, z.im)), atan2q(z.im, z.re)}; }

inline const f128 ln_two_q =
    q_from("0.693147180559945309417232121458176568");

// log(1 - e^-y) for y > 0 with full relative accuracy on both ends.
inline f128 log1mexp_q(f128 y) {
  return y > ln_two_q ? log1pq(-expq(-y)) : logq(-expm1q(-y));
}

inline c128 exp_q(c128 z) {
  f128 m = expq(z.re);
  return {m * cosq(z.im), m * sinq(z.im)};
}

// sin(pi z) written to avoid overflow in cosh/sinh only for |Im z| within
// f128 range; adequate for every reflection this library performs.
inline c128 sin_pi_q(c128 z) {
  f128 x = pi_q * z.re, y = pi_q * z.im;
  return {sinq(x) * coshq(y), cosq(x) * sinhq(y)};
}

// Stirling coefficients B_{2k} / (2k (2k-1)) as exact rationals.
inline const f128 stirling_c[16] = {
    f128(1) / 12,
    -f128(1) / 360,
    f128(1) / 1260,
    -f128(1) / 1680,
    f128(1) / 1188,
    -f128(691) / 360360,
    f128(1) / 156,
    -f128(3617) / 122400,
    f128(43867) / 244188,
    -f128(174611) / 125400,
    f128(854513) / 63756,
    -f128(236364091) / 1507320,
    f128(8553103) / 3900,
    -f128(23749461029LL) / 657720,
    f128(8615841276005LL) / 12460140,
    -f128(7709321041217LL) / 505920};

// log Gamma(z) for Re z > 0 via upward recurrence into the Stirling regime.
// The result is exact only modulo 2*pi*i: every internal consumer feeds it
// into exp_q of a difference, where whole turns of the phase cancel.
inline c128 lgamma_q_pos(c128 z) {
  c128 shift{};
  while (hypotq(z.re, z.im) < 36) {
    shift = shift + log_q(z);
    z = z + c128(1);
  }
  c128 lz = log_q(z);
  c128 out = (z - c128(f128(1) / 2)) * lz - z + c128(half_log_two_pi_q);
  c128 zinv = c128(1) / z;
  c128 zinv2 = zinv * zinv;
  c128 p = zinv;
  for (const f128 c : stirling_c) {
    out = out + c * p;
    p = p * zinv2;
  }
  return out - shift;
}

inline c128 lgamma_q(c128 z) {
  if (z.re >= f128(1) / 2) return lgamma_q_pos(z);
  if (z.im == 0 && z.re == rintq(z.re))
    throw std::domain_error("log-gamma pole at a nonpositive integer");
  // Reflection; branch is again only controlled modulo 2*pi*i.
  return log_q(c128(pi_q) / sin_pi_q(z)) - lgamma_q_pos(c128(1) - z);
}

// ---------------------------------------------------------------------------
// Quad-precision G7K15 with recursive bisection, real integrands only.

struct QNodes {
  f128 x[8], wk[8], wg[4];
};

inline const QNodes& gk15_q() {
  static const QNodes n = [] {
    QNodes q;
    q.x[0] = q_from("0.991455371120812639206854697526329");
    q.x[1] = q_from("0.949107912342758524526189684047851");
    q.x[2] = q_from("0.864864423359769072789712788640926");
    q.x[3] = q_from("0.741531185599394439863864773280788");
    q.x[4] = q_from("0.586087235467691130294144838258730");
    q.x[5] = q_from("0.405845151377397166906606412076961");
    q.x[6] = q_from("0.207784955007898467600689403773245");
    q.x[7] = 0;
    q.wk[0] = q_from("0.022935322010529224963732008058970");
    q.wk[1] = q_from("0.063092092629978553290700663189204");
    q.wk[2] = q_from("0.104790010322250183839876322541518");
    q.wk[3] = q_from("0.140653259715525918745189590510238");
    q.wk[4] = q_from("0.169004726639267902826583426598550");
    q.wk[5] = q_from("0.190350578064785409913256402421014");
    q.wk[6] = q_from("0.204432940075298892414161999234649");
    q.wk[7] = q_from("0.209482141084727828012999174891714");
    q.wg[0] = q_from("0.129484966168869693270611432679082");
    q.wg[1] = q_from("0.279705391489276667901467771423780");
    q.wg[2] = q_from("0.381830050505118944950369775488975");
    q.wg[3] = q_from("0.417959183673469387755102040816327");
    return q;
  }();
  return n;
}

template <class F>
f128 gk15_panel_q(F&& f, f128 a, f128 b, f128& err) {
  const QNodes& n = gk15_q();
  const f128 mid = (a + b) / 2;
  const f128 h = (b - a) / 2;
  f128 fc = f(mid);
  f128 gauss = n.wg[3] * fc;
  f128 kron = n.wk[7] * fc;
  for (int i = 0; i < 7; ++i) {
    f128 dx = h * n.x[i];
    f128 fs = f(mid - dx) + f(mid + dx);
    kron += n.wk[i] * fs;
    if (i % 2 == 1) gauss += n.wg[i / 2] * fs;
  }
  kron *= h;
  gauss *= h;
  err = fabsq(kron - gauss);
  return kron;
}

// Double-exponential (tanh-sinh) rule on [a, b] for analytic integrands that
// may be singular at the endpoints.  Nodes and weights are generated from
// elementary functions, so quad precision needs no stored tables; each level
// halves the step and roughly doubles the number of correct digits.  The
// returned error is the last level-to-level difference (a generous bound).
template <class F>
f128 tanh_sinh_q(F&& f, f128 a, f128 b, f128 rel_tol, f128& err_out,
                 int max_level = 9) {
  const f128 half = (b - a) / 2;
  const f128 mid = (a + b) / 2;
  const f128 pi_half = pi_q / 2;
  const f128 t_max = f128(45) / 10;  // weights beyond are < 1e-33

  // One node at abscissa t (unscaled): x measured stably from the nearer
  // endpoint so singular integrands see the true tiny distance.
  auto node_sum = [&](f128 t) -> f128 {
    const f128 u = pi_half * sinhq(t);
    const f128 e2u = expq(-2 * fabsq(u));
    const f128 sech2 = 4 * e2u / ((1 + e2u) * (1 + e2u));
    const f128 dist = half * 2 * e2u / (1 + e2u);
    const f128 w = pi_half * coshq(t) * sech2;
    if (dist == 0 || w == 0) return 0;
    if (t == 0) return w * f(mid);
    return w * (f(a + dist) + f(b - dist));
  };

  f128 h = 1;
  f128 sum = node_sum(0);
  for (long k = 1; static_cast<f128>(k) * h <= t_max; ++k)
    sum += node_sum(static_cast<f128>(k) * h);
  f128 integral = sum * h * half;

  err_out = fabsq(integral);
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    f128 add = 0;
    for (long k = 1; static_cast<f128>(k) * h <= t_max; k += 2)
      add += node_sum(static_cast<f128>(k) * h);
    const f128 refined = integral / 2 + add * h * half;
    err_out = fabsq(refined - integral);
    integral = refined;
    if (level >= 3 && err_out <= rel_tol * fabsq(integral)) break;
  }
  return integral;
}

template <class F>
f128 integrate_q_rec(F&& f, f128 a, f128 b, f128 tol, int depth, f128& err_acc) {
  f128 err = 0;
  f128 v = gk15_panel_q(f, a, b, err);
  if (err <= tol || depth <= 0) {
    err_acc += err;
    return v;
  }
  f128 mid = (a + b) / 2;
  return integrate_q_rec(f, a, mid, tol / 2, depth - 1, err_acc) +
         integrate_q_rec(f, mid, b, tol / 2, depth - 1, err_acc);
}

/// Adaptive quad-precision integral of a real integrand over [a, b].
template <class F>
f128 integrate_q(F&& f, f128 a, f128 b, f128 tol, f128& err_out,
                 int max_depth = 48) {
  err_out = 0;
  return integrate_q_rec(f, a, b, tol, max_depth, err_out);
}

}  // namespace eep::detail

#endif
