#pragma once

#include "ewalk/errors.hpp"
#include "ewalk/precision.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace ewalk {

// The electric field Phi = 2 pi nu, canonicalized to nu in [0, 1).
//
// Rational fields are exact. Real fields carry an exact rational
// representative `nu` together with the number of decimal digits D to which
// it is known; the true value lies in [nu - 10^-D, nu + 10^-D].
class FieldSpec {
 public:
  struct Rational {
    std::int64_t n;
    std::int64_t m;
  };

  static FieldSpec rational(std::int64_t n, std::int64_t m) {
    if (m <= 0) throw input_error("config", "field denominator must be positive");
    std::int64_t r = n % m;
    if (r < 0) r += m;
    const std::int64_t g = std::gcd(r, m);
    FieldSpec f;
    f.rat_ = Rational{r / g, m / g};
    f.nu_ = ewalk::rational(r / g, m / g);
    return f;
  }

  static FieldSpec real(const ewalk::rational& value, unsigned digits, std::string label = {}) {
    FieldSpec f;
    f.nu_ = value - ewalk::rational(floor_of(value));
    f.digits_ = digits;
    f.label_ = std::move(label);
    return f;
  }

  // nu = (sqrt 5 - 1) / 2, so Phi = pi (sqrt 5 - 1).
  static FieldSpec golden(unsigned digits) {
    return named("golden", digits);
  }

  // Accepts "n/m", exact decimals ("0.5"), truncated decimals ("0.6180339..."),
  // and the named constants golden, pi, sqrt2, e (fractional parts).
  static FieldSpec parse(std::string_view text, unsigned digits) {
    std::string t(text);
    if (t.empty()) throw input_error("config", "empty field");
    if (t == "golden" || t == "pi" || t == "sqrt2" || t == "e") return named(t, digits);
    if (const auto slash = t.find('/'); slash != std::string::npos) {
      try {
        std::size_t used_n = 0;
        std::size_t used_m = 0;
        const std::string ns = t.substr(0, slash);
        const std::string ms = t.substr(slash + 1);
        const long long n = std::stoll(ns, &used_n);
        const long long m = std::stoll(ms, &used_m);
        if (used_n != ns.size() || used_m != ms.size()) throw std::invalid_argument(t);
        return rational(n, m);
      } catch (const std::logic_error&) {
        throw input_error("config", "malformed rational field '" + t + "'");
      }
    }
    bool truncated = false;
    if (t.size() > 3 && t.substr(t.size() - 3) == "...") {
      truncated = true;
      t.resize(t.size() - 3);
    }
    const auto [value, frac_digits] = parse_decimal(t);
    if (truncated) return real(value, frac_digits);
    const big_int& den = boost::multiprecision::denominator(value);
    if (den > big_int(std::numeric_limits<std::int64_t>::max() / 2)) {
      throw input_error("config",
                        "decimal field '" + t + "' has a denominator beyond 64 bits; append '...' "
                        "to treat it as known to " + std::to_string(frac_digits) + " digits");
    }
    const ewalk::rational frac = value - ewalk::rational(floor_of(value));
    return rational(boost::multiprecision::numerator(frac).convert_to<std::int64_t>(),
                    boost::multiprecision::denominator(frac).convert_to<std::int64_t>());
  }

  bool is_rational() const { return rat_.has_value(); }

  const Rational& as_rational() const {
    if (!rat_) throw input_error("config", "operation requires a rational field, got " + to_string());
    return *rat_;
  }

  // Exact representative of nu in [0, 1).
  const ewalk::rational& nu() const { return nu_; }

  // Certified decimal digits (0 for exact rational fields).
  unsigned digits() const { return digits_; }

  const std::string& label() const { return label_; }

  // Closed interval guaranteed to contain the true nu.
  std::pair<ewalk::rational, ewalk::rational> enclosure() const {
    if (rat_) return {nu_, nu_};
    ewalk::rational w(1);
    w /= ewalk::rational(boost::multiprecision::pow(big_int(10), digits_));
    return {nu_ - w, nu_ + w};
  }

  template <class Real>
  Real nu_as() const {
    return from_rational<Real>(nu_);
  }

  template <class Real>
  Real phi() const {
    return two_pi<Real>() * nu_as<Real>();
  }

  std::string to_string() const {
    if (rat_) return std::to_string(rat_->n) + "/" + std::to_string(rat_->m);
    if (!label_.empty()) return label_;
    return decimal_string(nu_, digits_) + "...";
  }

  friend bool operator==(const FieldSpec& x, const FieldSpec& y) {
    const bool rx = x.rat_.has_value();
    const bool ry = y.rat_.has_value();
    if (rx != ry) return false;
    if (rx) return x.rat_->n == y.rat_->n && x.rat_->m == y.rat_->m;
    return x.nu_ == y.nu_ && x.digits_ == y.digits_;
  }

  // First `digits` decimals of a value in [0, 1), truncated.
  static std::string decimal_string(const ewalk::rational& v, unsigned digits) {
    const big_int scale = boost::multiprecision::pow(big_int(10), digits);
    const big_int scaled = boost::multiprecision::numerator(v) * scale /
                           boost::multiprecision::denominator(v);
    std::string s = scaled.str();
    if (s.size() < digits) s.insert(0, digits - s.size(), '0');
    return "0." + s;
  }

 private:
  static big_int floor_of(const ewalk::rational& v) {
    const big_int& n = boost::multiprecision::numerator(v);
    const big_int& d = boost::multiprecision::denominator(v);
    big_int q = n / d;
    if (n < 0 && q * d != n) q -= 1;
    return q;
  }

  static std::pair<ewalk::rational, unsigned> parse_decimal(const std::string& t) {
    std::size_t i = 0;
    bool neg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
    std::string int_part;
    std::string frac_part;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) int_part += t[i++];
    if (i < t.size() && t[i] == '.') {
      ++i;
      while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) frac_part += t[i++];
    }
    if (i != t.size() || (int_part.empty() && frac_part.empty())) {
      throw input_error("config", "malformed field '" + t + "'");
    }
    std::string all = int_part + frac_part;
    all.erase(0, std::min(all.find_first_not_of('0'), all.size()));
    const big_int num(all.empty() ? "0" : all);  // no leading zeros: cpp_int reads "0..." as octal
    const big_int den = boost::multiprecision::pow(big_int(10), static_cast<unsigned>(frac_part.size()));
    ewalk::rational v(num, den);
    if (neg) v = -v;
    return {v, static_cast<unsigned>(frac_part.size())};
  }

  static FieldSpec named(const std::string& name, unsigned digits) {
    if (digits == 0) throw input_error("config", "named field needs a positive digit count");
    precision_scope scope(digits + 20);
    hp_real v;
    if (name == "golden") {
      v = (boost::multiprecision::sqrt(hp_real(5)) - 1) / 2;
    } else if (name == "pi") {
      v = pi<hp_real>();
    } else if (name == "sqrt2") {
      v = boost::multiprecision::sqrt(hp_real(2));
    } else {
      v = boost::multiprecision::exp(hp_real(1));
    }
    return real(to_rational(v), digits, name);
  }

  std::optional<Rational> rat_;
  ewalk::rational nu_{0};
  unsigned digits_ = 0;
  std::string label_;
};

}  // namespace ewalk
