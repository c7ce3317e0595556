#pragma once

// Momentum-space picture. With S(k) = diag(e^{ik}, e^{-ik}) the zero-field
// walk is W(k) = S(k) C, and the field shifts k by Phi per step, so for
// Phi = 2 pi n/m the m-step walk is the k-local product
//   W_m(k) = W(k + Phi) W(k + 2 Phi) ... W(k + m Phi).
//
// For psi^(k) = sum_x e^{ikx} psi(x) the position-space step of walkcore acts
// as psi^(k) -> W(k)^T psi^(k); transposition changes neither traces nor
// eigenvalues.

#include "ewalk/coin.hpp"
#include "ewalk/complex.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace ewalk::spectral {

template <class Real>
struct Mat2 {
  using value_type = basic_complex<Real>;
  std::array<std::array<value_type, 2>, 2> e{};

  static Mat2 identity() {
    Mat2 m;
    m.e[0][0] = Real(1);
    m.e[1][1] = Real(1);
    return m;
  }
  static Mat2 diag(value_type d0, value_type d1) {
    Mat2 m;
    m.e[0][0] = std::move(d0);
    m.e[1][1] = std::move(d1);
    return m;
  }
  static Mat2 from(value_type a, value_type b, value_type c, value_type d) {
    Mat2 m;
    m.e = {{{std::move(a), std::move(b)}, {std::move(c), std::move(d)}}};
    return m;
  }

  const value_type& operator()(int r, int c) const { return e[r][c]; }
  value_type& operator()(int r, int c) { return e[r][c]; }

  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    Mat2 z;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) z.e[r][c] = x.e[r][0] * y.e[0][c] + x.e[r][1] * y.e[1][c];
    }
    return z;
  }

  value_type trace() const { return e[0][0] + e[1][1]; }
  value_type det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

  Mat2 transpose() const { return from(e[0][0], e[1][0], e[0][1], e[1][1]); }
  Mat2 adjoint() const { return from(conj(e[0][0]), conj(e[1][0]), conj(e[0][1]), conj(e[1][1])); }

  // max |entry|
  Real max_abs() const {
    Real m(0);
    for (const auto& row : e) {
      for (const auto& v : row) m = std::max(m, abs(v));
    }
    return m;
  }

  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 z;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) z.e[r][c] = x.e[r][c] - y.e[r][c];
    }
    return z;
  }
};

template <class Real>
Mat2<Real> coin_matrix(const Coin<Real>& coin) {
  return Mat2<Real>::from(coin.entry(0, 0), coin.entry(0, 1), coin.entry(1, 0), coin.entry(1, 1));
}

template <class Real>
Mat2<Real> shift_matrix(const Real& k) {
  return Mat2<Real>::diag(expi(k), expi(Real(-k)));
}

// W(k) = S(k) C = [[a e^{ik}, b e^{ik}], [-conj(b) e^{-ik}, conj(a) e^{-ik}]]
template <class Real>
Mat2<Real> bloch_matrix(const Coin<Real>& coin, const Real& k) {
  const auto p = expi(k);
  const auto q = conj(p);
  return Mat2<Real>::from(coin.a * p, coin.b * p, -conj(coin.b) * q, conj(coin.a) * q);
}

namespace detail {

inline void require_coprime(std::int64_t n, std::int64_t m) {
  if (m < 1) throw input_error("config", "denominator must be positive");
  if (std::gcd(n, m) != 1) {
    throw input_error("config", "numerator " + std::to_string(n) + " is not coprime to " + std::to_string(m));
  }
}

}  // namespace detail

// Momentum-shift form W(k + Phi) ... W(k + m Phi). The shifts j Phi are
// reduced exactly to 2 pi ((j n) mod m)/m.
template <class Real>
Mat2<Real> regrouped_bloch(const Coin<Real>& coin, const FieldSpec::Rational& field, const Real& k) {
  detail::require_coprime(field.n, field.m);
  Mat2<Real> acc = Mat2<Real>::identity();
  for (std::int64_t j = 1; j <= field.m; ++j) {
    const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(j) * field.n) % field.m);
    acc = acc * bloch_matrix(coin, Real(k + two_pi<Real>() * Real(r) / Real(field.m)));
  }
  return acc;
}

// Power form S(Phi) W(k) S(Phi)^2 W(k) ... S(Phi)^m W(k), built by repeated
// multiplication with S(Phi). Independent of the shift form above.
template <class Real>
Mat2<Real> regrouped_bloch_powers(const Coin<Real>& coin, const FieldSpec::Rational& field, const Real& k) {
  detail::require_coprime(field.n, field.m);
  const Mat2<Real> s = shift_matrix(Real(two_pi<Real>() * Real(field.n) / Real(field.m)));
  const Mat2<Real> w = bloch_matrix(coin, k);
  Mat2<Real> acc = Mat2<Real>::identity();
  Mat2<Real> sp = Mat2<Real>::identity();
  for (std::int64_t j = 1; j <= field.m; ++j) {
    sp = sp * s;
    acc = acc * sp * w;
  }
  return acc;
}

namespace detail {

template <class Real>
basic_complex<Real> ipow(basic_complex<Real> z, std::int64_t e) {
  basic_complex<Real> r(Real(1));
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

}  // namespace detail

// tr(C R^0 C R^1 ... C R^{m-1}) with R = diag(eta, 1/eta), eta = e^{2 pi i j/m}.
template <class Real>
basic_complex<Real> trace_tau_direct(const Mat2<Real>& C, std::int64_t m, std::int64_t root_index) {
  if (m < 1) throw input_error("config", "m must be positive");
  std::int64_t j = root_index % m;
  if (j < 0) j += m;
  if (std::gcd(j, m) != 1) {
    throw input_error("config", "root index " + std::to_string(root_index) +
                                    " does not give a primitive root of unity of order " + std::to_string(m));
  }
  Mat2<Real> acc = Mat2<Real>::identity();
  for (std::int64_t l = 0; l < m; ++l) {
    const std::int64_t r = static_cast<std::int64_t>((static_cast<__int128>(j) * l) % m);
    const Real theta = two_pi<Real>() * Real(r) / Real(m);
    acc = acc * C * Mat2<Real>::diag(expi(theta), expi(Real(-theta)));
  }
  return acc.trace();
}

// Closed form: a^m + d^m for odd m, and for even m
//   -(a^m + d^m) + 2((-ad)^{m/2} - (-det C)^{m/2}).
template <class Real>
basic_complex<Real> trace_tau_closed(const Mat2<Real>& C, std::int64_t m) {
  if (m < 1) throw input_error("config", "m must be positive");
  const auto& a = C(0, 0);
  const auto& d = C(1, 1);
  const auto am = detail::ipow(a, m);
  const auto dm = detail::ipow(d, m);
  if (m % 2 != 0) return am + dm;
  const auto h = m / 2;
  return -(am + dm) + Real(2) * (detail::ipow(-(a * d), h) - detail::ipow(-C.det(), h));
}

struct Bands {
  double cos_omega = 0;
  double omega_plus = 0;   // in [0, pi]
  double omega_minus = 0;  // -omega_plus
};

// Closed-form bands of the m-step walk (independent of the numerator):
//   odd m:  cos w = |a|^m cos(m(k + k0))
//   even m: cos w = -|a|^m cos(m(k + k0)) + (-1)^{m/2+1}(1 - |a|^m)
// with a = |a| e^{i k0}. sin w is evaluated from a factorized 1 -+ cos w so
// that both branches stay accurate near w = 0 and w = pi.
struct DispersionRelation {
  std::int64_t m = 1;
  double abs_a = 0;
  double k0 = 0;

  Bands operator()(double k) const {
    const double A = std::pow(abs_a, static_cast<double>(m));
    const double theta = static_cast<double>(m) * (k + k0);
    double c = 0;
    double one_minus = 0;
    double one_plus = 0;
    if (m % 2 != 0) {
      c = A * std::cos(theta);
      one_minus = 1 - c;
      one_plus = 1 + c;
    } else if ((m / 2) % 2 != 0) {  // s = +1
      const double ch = std::cos(theta / 2);
      c = -A * std::cos(theta) + (1 - A);
      one_minus = 2 * A * ch * ch;
      one_plus = 2 - one_minus;
    } else {  // s = -1
      const double sh = std::sin(theta / 2);
      c = -A * std::cos(theta) - (1 - A);
      one_plus = 2 * A * sh * sh;
      one_minus = 2 - one_plus;
    }
    const double s = std::sqrt(std::max(0.0, one_minus) * std::max(0.0, one_plus));
    const double w = std::atan2(s, c);
    return {c, w, -w};
  }
};

template <class Real>
DispersionRelation dispersion(const Coin<Real>& coin, std::int64_t m) {
  if (m < 1) throw input_error("config", "m must be positive");
  return {m, to_double(coin.abs_a()), to_double(arg(coin.a))};
}

template <class Real>
Bands dispersion(const Coin<Real>& coin, const FieldSpec::Rational& field, double k) {
  detail::require_coprime(field.n, field.m);
  return dispersion(coin, field.m)(k);
}

// Eigenvalues tr/2 +- d of a normal 2x2 matrix. For normal P the traceless
// part M = P - tr/2 is d times a Hermitian reflection, so |d| follows from
// the Frobenius norm and the phase of d from the largest entry of M. Unlike
// sqrt(disc) this stays accurate at band touchings, where d -> 0.
template <class Real>
std::pair<basic_complex<Real>, basic_complex<Real>> eigenvalues(const Mat2<Real>& P) {
  using std::sqrt;
  const auto mid = P.trace() / Real(2);
  const auto m00 = (P(0, 0) - P(1, 1)) / Real(2);
  const auto off = P(0, 1) * P(1, 0);
  const Real mag = sqrt((Real(2) * norm(m00) + norm(P(0, 1)) + norm(P(1, 0))) / Real(2));
  if (mag == Real(0)) return {mid, mid};
  basic_complex<Real> unit;
  if (norm(m00) > Real(0) && norm(m00) >= abs(off)) {
    unit = m00 / abs(m00);
  } else {
    unit = expi(Real(arg(off) / Real(2)));  // d^2 = off / |R01|^2
  }
  const auto d = unit * mag;
  return {mid + d, mid - d};
}

// |a|^m-type revival norm: 2|a|^m (odd m), 2|a|^{m/2} (even m).
template <class Real>
double revival_norm(const Coin<Real>& coin, std::int64_t m) {
  if (m < 1) throw input_error("config", "m must be positive");
  const double A = to_double(coin.abs_a());
  if (A >= 1) return 2.0;
  const double e = static_cast<double>(m % 2 != 0 ? m : m / 2);
  return 2.0 * std::pow(A, e);
}

// max_k over both eigenvalues mu of W_m(k) of |mu^2 + 1| (odd m) or
// |mu + (-1)^{m/2}| (even m), from the eigenvalues of the regrouped product.
struct GridMaximum {
  double value = 0;
  double k = 0;
  double grid_value = 0;  // before refinement
};

template <class Real>
GridMaximum revival_norm_grid(const Coin<Real>& coin, std::int64_t m, int points = 4096) {
  if (m < 1) throw input_error("config", "m must be positive");
  const Coin<double> c{complex_cast<double>(coin.a), complex_cast<double>(coin.b)};
  const FieldSpec::Rational field{1, m};
  const double sign = (m % 2 != 0) ? 0.0 : (((m / 2) % 2 == 0) ? 1.0 : -1.0);
  auto value = [&](double k) {
    const auto [mu1, mu2] = eigenvalues(regrouped_bloch(c, field, k));
    auto f = [&](const basic_complex<double>& mu) {
      if (m % 2 != 0) return abs(mu * mu + basic_complex<double>(1.0));
      return abs(mu + basic_complex<double>(sign));
    };
    return std::max(f(mu1), f(mu2));
  };
  const double h = two_pi<double>() / points;
  GridMaximum best;
  best.value = -1;
  for (int i = 0; i < points; ++i) {
    const double k = i * h;
    const double v = value(k);
    if (v > best.value) best = {v, k, v};
  }
  // golden-section refinement on the bracket around the grid maximizer
  const double g = (std::sqrt(5.0) - 1) / 2;
  double lo = best.k - h;
  double hi = best.k + h;
  double x1 = hi - g * (hi - lo);
  double x2 = lo + g * (hi - lo);
  double f1 = value(x1);
  double f2 = value(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = value(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = value(x1);
    }
  }
  const double kr = (lo + hi) / 2;
  const double vr = value(kr);
  if (vr > best.value) {
    best.value = vr;
    best.k = kr;
  }
  return best;
}

}  // namespace ewalk::spectral
