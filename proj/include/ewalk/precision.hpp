#pragma once

// Scalar plumbing shared by the machine-precision and arbitrary-precision
// code paths. Every algorithm in the library is a template over `Real`,
// instantiated with `double` or `hp_real`.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace ewalk {

// Variable-precision MPFR float. Expression templates are disabled so that
// `auto` in generic code always yields a value.
using hp_real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;
using big_int = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

template <class Real>
inline constexpr bool is_hp_v = std::is_same_v<Real, hp_real>;

// RAII scope for the MPFR working precision (decimal digits). The MPFR
// default precision is process-wide, so high-precision work at different
// precisions must not be interleaved across threads.
class precision_scope {
 public:
  explicit precision_scope(unsigned digits10) : saved_(hp_real::default_precision()) {
    hp_real::default_precision(digits10);
  }
  ~precision_scope() { hp_real::default_precision(saved_); }
  precision_scope(const precision_scope&) = delete;
  precision_scope& operator=(const precision_scope&) = delete;

 private:
  unsigned saved_;
};

// Decimal digits carried by `Real` at the current working precision.
template <class Real>
unsigned working_digits() {
  if constexpr (is_hp_v<Real>) {
    return hp_real::default_precision();
  } else {
    return std::numeric_limits<Real>::digits10 + 1;
  }
}

// Unit roundoff of `Real` at the current working precision.
template <class Real>
Real unit_roundoff() {
  if constexpr (is_hp_v<Real>) {
    return boost::multiprecision::pow(hp_real(10), 1 - static_cast<int>(working_digits<hp_real>()));
  } else {
    return std::numeric_limits<Real>::epsilon();
  }
}

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
Real two_pi() {
  return 2 * pi<Real>();
}

template <class Real>
Real real_from_string(const std::string& text) {
  if constexpr (is_hp_v<Real>) {
    return hp_real(text);
  } else {
    double out = 0;
    const char* first = text.data();
    if (!text.empty() && text.front() == '+') ++first;
    const auto res = std::from_chars(first, text.data() + text.size(), out);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
    return out;
  }
}

template <class Real>
Real from_big_int(const big_int& v) {
  if constexpr (is_hp_v<Real>) {
    return hp_real(v.str());
  } else {
    return v.template convert_to<double>();
  }
}

template <class Real>
Real from_rational(const rational& v) {
  return from_big_int<Real>(boost::multiprecision::numerator(v)) /
         from_big_int<Real>(boost::multiprecision::denominator(v));
}

template <class Real>
double to_double(const Real& v) {
  if constexpr (is_hp_v<Real>) {
    return v.template convert_to<double>();
  } else {
    return static_cast<double>(v);
  }
}

// Exact rational value of a (finite) high-precision float.
inline rational to_rational(const hp_real& v) {
  if (v == 0) return rational(0);
  mpz_t mant;
  mpz_init(mant);
  const mpfr_exp_t exp2 = mpfr_get_z_2exp(mant, v.backend().data());
  std::string digits(mpz_sizeinbase(mant, 10) + 2, '\0');
  mpz_get_str(digits.data(), 10, mant);
  mpz_clear(mant);
  digits.resize(std::char_traits<char>::length(digits.c_str()));
  rational out{big_int(digits)};
  if (exp2 >= 0) {
    out *= rational(big_int(1) << static_cast<unsigned>(exp2));
  } else {
    out /= rational(big_int(1) << static_cast<unsigned>(-exp2));
  }
  return out;
}

// Base-10 logarithm that stays finite for values far below the double range.
template <class Real>
double log10_of(const Real& v) {
  if constexpr (is_hp_v<Real>) {
    return boost::multiprecision::log10(v).template convert_to<double>();
  } else {
    return std::log10(v);
  }
}

template <class Real>
double log_of(const Real& v) {
  if constexpr (is_hp_v<Real>) {
    return boost::multiprecision::log(v).template convert_to<double>();
  } else {
    return std::log(v);
  }
}

// Decimal rendering: 17 significant digits for machine values, min(D, 50)
// for high-precision values. Locale independent.
inline std::string render(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string render(const hp_real& v) {
  const unsigned digits = std::min<unsigned>(v.precision(), 50);
  return v.str(static_cast<std::streamsize>(digits - 1), std::ios_base::scientific);
}

}  // namespace ewalk
