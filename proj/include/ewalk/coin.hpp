#pragma once

#include "ewalk/complex.hpp"
#include "ewalk/errors.hpp"

#include <array>
#include <string>
#include <string_view>

namespace ewalk {

// Coin states are indexed 0 for alpha = +1 and 1 for alpha = -1.
constexpr int coin_index(int alpha) { return alpha > 0 ? 0 : 1; }
constexpr int coin_sign(int index) { return index == 0 ? +1 : -1; }

// SU(2) coin C = [[a, b], [-conj(b), conj(a)]].
template <class Real>
struct Coin {
  basic_complex<Real> a;
  basic_complex<Real> b;

  // C_{alpha beta} with coin indices (0 = +1, 1 = -1).
  basic_complex<Real> entry(int row, int col) const {
    if (row == 0) return col == 0 ? a : b;
    return col == 0 ? -conj(b) : conj(a);
  }

  Real abs_a() const { return abs(a); }

  // | |a|^2 + |b|^2 - 1 |
  Real unitarity_defect() const {
    using std::abs;
    Real d = norm(a) + norm(b) - Real(1);
    return d < 0 ? Real(-d) : d;
  }
};

// Parsed coin description, instantiated at any precision. Keeping the
// decimal text lets the high-precision paths build a coin that is unitary to
// the full working precision instead of inheriting double rounding.
class CoinSpec {
 public:
  static CoinSpec hadamard() {
    CoinSpec s;
    s.name_ = "hadamard";
    return s;
  }

  // "hadamard", or "<a>,<b>" with complex literals such as "0.8", "0.6i",
  // "0.3+0.4i", "-i".
  static CoinSpec parse(std::string_view text) {
    std::string t = strip(text);
    if (t == "hadamard" || t == "h") return hadamard();
    const auto comma = t.find(',');
    if (comma == std::string::npos) {
      throw input_error("config", "coin must be 'hadamard' or '<a>,<b>', got '" + t + "'");
    }
    CoinSpec s;
    s.a_ = parse_complex(strip(t.substr(0, comma)));
    s.b_ = parse_complex(strip(t.substr(comma + 1)));
    const Coin<double> probe = s.make<double>();
    (void)probe;
    return s;
  }

  bool is_hadamard() const { return name_ == "hadamard"; }

  std::string to_string() const {
    if (is_hadamard()) return "hadamard";
    return render_complex(a_) + "," + render_complex(b_);
  }

  // Coin at the current working precision of `Real`, renormalized so that
  // |a|^2 + |b|^2 = 1 holds to that precision. Rejects inputs whose defect
  // exceeds `tolerance` before renormalization.
  template <class Real>
  Coin<Real> make(double tolerance = 1e-14) const {
    using std::sqrt;
    if (is_hadamard()) {
      const Real h = Real(1) / sqrt(Real(2));
      return {{h, Real(0)}, {h, Real(0)}};
    }
    Coin<Real> c{{real_from_string<Real>(a_[0]), real_from_string<Real>(a_[1])},
                 {real_from_string<Real>(b_[0]), real_from_string<Real>(b_[1])}};
    const double defect = to_double(c.unitarity_defect());
    if (!(defect <= tolerance)) {
      throw input_error("config", "coin is not unitary: | |a|^2+|b|^2-1 | = " + render(defect));
    }
    const Real scale = sqrt(norm(c.a) + norm(c.b));
    c.a /= scale;
    c.b /= scale;
    return c;
  }

  friend bool operator==(const CoinSpec&, const CoinSpec&) = default;

  using parts = std::array<std::string, 2>;  // decimal re, im

  // Splits a complex literal ("0.3+0.4i", "-i", "0.8") into decimal parts.
  static parts parse_complex(const std::string& s);

 private:
  static std::string strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return std::string(s);
  }

  static void check_decimal(const std::string& s) {
    try {
      (void)real_from_string<double>(s);
    } catch (const std::invalid_argument&) {
      throw input_error("config", "malformed number '" + s + "' in complex literal");
    }
  }

  static std::string render_complex(const parts& p) {
    if (p[1] == "0") return p[0];
    const std::string im = p[1].front() == '-' ? p[1] : "+" + p[1];
    return p[0] + im + "i";
  }

  std::string name_;
  parts a_{"0", "0"};
  parts b_{"0", "0"};
};

inline CoinSpec::parts CoinSpec::parse_complex(const std::string& s) {
  if (s.empty()) throw input_error("config", "empty complex literal");
  parts out{"0", "0"};
  if (s.back() != 'i') {
    out[0] = s;
    check_decimal(out[0]);
    return out;
  }
  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not part of an exponent or leading.
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  std::string re = "0";
  std::string im = body;
  if (split != std::string::npos) {
    re = body.substr(0, split);
    im = body.substr(split);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  if (!im.empty() && im.front() == '+') im.erase(0, 1);
  if (!re.empty() && re.front() == '+') re.erase(0, 1);
  check_decimal(re);
  check_decimal(im);
  out[0] = re;
  out[1] = im;
  return out;
}

}  // namespace ewalk
