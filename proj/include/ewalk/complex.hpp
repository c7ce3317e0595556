#pragma once

// Minimal complex arithmetic over any real scalar. std::complex<T> is only
// specified for the built-in floating types, so the high-precision paths use
// this type; the machine-precision paths use it too to keep a single code
// path per algorithm.

#include "ewalk/precision.hpp"

#include <complex>

namespace ewalk {

template <class Real>
struct basic_complex {
  Real re{0};
  Real im{0};

  basic_complex() = default;
  basic_complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  basic_complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  basic_complex& operator+=(const basic_complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  basic_complex& operator-=(const basic_complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  basic_complex& operator*=(const basic_complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  basic_complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  basic_complex& operator/=(const Real& s) {
    re /= s;
    im /= s;
    return *this;
  }

  friend basic_complex operator+(basic_complex a, const basic_complex& b) { return a += b; }
  friend basic_complex operator-(basic_complex a, const basic_complex& b) { return a -= b; }
  friend basic_complex operator*(basic_complex a, const basic_complex& b) { return a *= b; }
  friend basic_complex operator*(basic_complex a, const Real& s) { return a *= s; }
  friend basic_complex operator*(const Real& s, basic_complex a) { return a *= s; }
  friend basic_complex operator/(basic_complex a, const Real& s) { return a /= s; }
  friend basic_complex operator/(const basic_complex& a, const basic_complex& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend basic_complex operator-(const basic_complex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const basic_complex& a, const basic_complex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

template <class Real>
basic_complex<Real> conj(const basic_complex<Real>& z) {
  return {z.re, -z.im};
}

// |z|^2
template <class Real>
Real norm(const basic_complex<Real>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class Real>
Real abs(const basic_complex<Real>& z) {
  using std::sqrt;
  return sqrt(norm(z));
}

template <class Real>
Real arg(const basic_complex<Real>& z) {
  using std::atan2;
  return atan2(z.im, z.re);
}

// e^{i theta}
template <class Real>
basic_complex<Real> expi(const Real& theta) {
  using std::cos;
  using std::sin;
  return {cos(theta), sin(theta)};
}

template <class Real>
std::complex<double> to_std(const basic_complex<Real>& z) {
  return {to_double(z.re), to_double(z.im)};
}

template <class Real>
basic_complex<Real> from_std(const std::complex<double>& z) {
  return {Real(z.real()), Real(z.imag())};
}

template <class To, class From>
basic_complex<To> complex_cast(const basic_complex<From>& z) {
  if constexpr (std::is_same_v<To, From>) {
    return z;
  } else if constexpr (is_hp_v<To>) {
    return {To(z.re), To(z.im)};
  } else {
    return {to_double(z.re), to_double(z.im)};
  }
}

using hp_complex = basic_complex<hp_real>;

}  // namespace ewalk
