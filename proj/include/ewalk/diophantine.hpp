#pragma once

#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"
#include "ewalk/precision.hpp"
#include "ewalk/walkcore.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ewalk::cf {

struct Convergent {
  big_int n;
  big_int q;
};

// Convergents n_k/q_k from r_k = c_k r_{k-1} + r_{k-2}, seeds
// n_{-1} = 1, q_{-1} = 0, n_{-2} = 0, q_{-2} = 1.
inline std::vector<Convergent> convergents(const std::vector<big_int>& c) {
  std::vector<Convergent> out;
  out.reserve(c.size());
  big_int n1 = 1, q1 = 0;  // k-1
  big_int n2 = 0, q2 = 1;  // k-2
  for (const big_int& ck : c) {
    big_int n = ck * n1 + n2;
    big_int q = ck * q1 + q2;
    out.push_back({n, q});
    n2 = std::move(n1);
    q2 = std::move(q1);
    n1 = std::move(n);
    q1 = std::move(q);
  }
  return out;
}

struct ContinuedFraction {
  std::vector<big_int> coefficients;  // c_0, c_1, ...
  std::vector<Convergent> convergents;
  bool exact = false;                 // expansion of a rational terminated
  bool precision_exhausted = false;   // next coefficient not determined by the input digits
  unsigned source_digits = 0;         // 0 for exact rational input

  // Number of coefficients after c_0.
  std::size_t certified_depth() const {
    return coefficients.empty() ? 0 : coefficients.size() - 1;
  }

  const big_int& c(std::size_t i) const { return coefficients.at(i); }

  // "(c0; c1, c2, ...)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i == 1) {
        s += "; ";
      } else if (i > 1) {
        s += ", ";
      }
      s += coefficients[i].str();
    }
    if (!exact) s += coefficients.size() > 1 ? ", ..." : "; ...";
    return s + ")";
  }

  static ContinuedFraction from_coefficients(std::vector<big_int> c, bool exact) {
    if (c.empty()) throw input_error("config", "continued fraction needs c_0");
    if (c[0] < 0) throw input_error("config", "c_0 must be non-negative");
    for (std::size_t i = 1; i < c.size(); ++i) {
      if (c[i] < 1) throw input_error("config", "c_i must be positive for i >= 1");
    }
    ContinuedFraction out;
    out.coefficients = std::move(c);
    out.convergents = cf::convergents(out.coefficients);
    out.exact = exact;
    return out;
  }

  // Value of the last convergent.
  rational value() const {
    const Convergent& v = convergents.back();
    return rational(v.n, v.q);
  }
};

namespace detail {

inline big_int floor_div(const big_int& n, const big_int& d) {
  big_int q = n / d;
  if ((n % d != 0) && ((n < 0) != (d < 0))) q -= 1;
  return q;
}

inline big_int floor_of(const rational& v) {
  return floor_div(boost::multiprecision::numerator(v), boost::multiprecision::denominator(v));
}

}  // namespace detail

// Expansion of any number known to lie in [lo, hi]. A coefficient is emitted
// only if it is the same for every point of the interval; `max_depth` limits
// the number of coefficients after c_0.
inline ContinuedFraction expand_interval(rational lo, rational hi, std::size_t max_depth,
                                         unsigned source_digits) {
  if (hi < lo) std::swap(lo, hi);
  ContinuedFraction out;
  out.source_digits = source_digits;
  while (true) {
    const big_int c = detail::floor_of(lo);
    if (detail::floor_of(hi) != c) {
      out.precision_exhausted = true;
      break;
    }
    out.coefficients.push_back(c);
    const rational flo = lo - rational(c);
    const rational fhi = hi - rational(c);
    if (fhi == 0) {  // lo == hi == c
      out.exact = true;
      break;
    }
    if (out.coefficients.size() > max_depth) break;
    if (flo == 0) {  // 1/flo unbounded
      out.precision_exhausted = true;
      break;
    }
    lo = 1 / fhi;
    hi = 1 / flo;
  }
  out.convergents = convergents(out.coefficients);
  return out;
}

// Certified expansion of a field's nu = Phi/(2 pi). Exact for rational
// fields; for real fields the enclosure nu +- 10^-D decides how many
// coefficients are determined.
inline ContinuedFraction expand(const FieldSpec& field, std::size_t max_depth) {
  const auto [lo, hi] = field.enclosure();
  return expand_interval(lo, hi, max_depth, field.digits());
}

inline ContinuedFraction expand(const rational& nu, std::size_t max_depth) {
  return expand_interval(nu, nu, max_depth, 0);
}

// 1 / (c_{k+1} q_k^2), an upper bound on |nu - n_k/q_k|.
inline rational approximation_quality_exact(const ContinuedFraction& cf, std::size_t k) {
  if (k + 1 >= cf.coefficients.size()) {
    throw input_error("level-out-of-range", "approximation quality at level " + std::to_string(k) +
                                                " needs c_" + std::to_string(k + 1));
  }
  const big_int& q = cf.convergents[k].q;
  return rational(big_int(1), cf.coefficients[k + 1] * q * q);
}

inline double approximation_quality(const ContinuedFraction& cf, std::size_t k) {
  return approximation_quality_exact(cf, k).convert_to<double>();
}

// (t/2)(t + 2L - 1)|dphi|: deviation between W_Phi^t psi and W_Phi'^t psi
// for psi supported in |x| < L.
template <class Real>
Real deviation_bound(std::int64_t t, std::int64_t L, const Real& delta_phi) {
  using std::abs;
  if (t < 0 || L < 1) throw input_error("config", "deviation bound needs t >= 0 and L >= 1");
  return Real(t) * Real(t + 2 * L - 1) / Real(2) * abs(delta_phi);
}

inline double deviation_bound(std::int64_t t, std::int64_t L, double delta_phi) {
  return deviation_bound<double>(t, L, delta_phi);
}

struct RevivalCertificate {
  std::size_t level = 0;
  big_int n;
  big_int q;
  big_int time;          // 2q (odd q) or q (even q)
  bool q_odd = true;
  int sign = +1;         // W^time psi ~ -sign psi
  big_int c_next;        // c_{k+1}, 0 at the last level of an exact expansion
  double theorem_term = 0;
  double deviation_term = 0;
  double total = 0;
  bool nontrivial = false;  // total < 2
};

struct RevivalSchedule {
  std::vector<RevivalCertificate> certificates;
  bool any_nontrivial = false;
  std::string reason;  // empty when some certificate is nontrivial
};

// log10 of 2|a|^e with e a possibly huge integer.
inline double log10_revival_term(double abs_a, const big_int& e) {
  if (abs_a >= 1) return std::log10(2.0);
  if (abs_a <= 0) return -std::numeric_limits<double>::infinity();
  return std::log10(2.0) + e.convert_to<double>() * std::log10(abs_a);
}

// Revival certificates for the levels of `cf`. Level k uses the rational
// field 2 pi n_k/q_k, whose revival term is exact, plus the deviation
// accumulated over the revival time from |Phi - Phi_k| < 2 pi/(c_{k+1} q_k^2).
// The last level of an exact expansion has no deviation term.
inline RevivalSchedule revival_schedule(const ContinuedFraction& cf, double abs_a, std::int64_t L,
                                        std::size_t levels) {
  if (L < 1) throw input_error("config", "support radius L must be >= 1");
  RevivalSchedule out;
  const std::size_t K = cf.coefficients.size();
  for (std::size_t k = 0; k < K && out.certificates.size() < levels; ++k) {
    const bool last = k + 1 == K;
    if (last && !cf.exact) break;
    RevivalCertificate c;
    c.level = k;
    c.n = cf.convergents[k].n;
    c.q = cf.convergents[k].q;
    c.q_odd = (c.q % 2) != 0;
    if (c.q_odd) {
      c.time = 2 * c.q;
      c.sign = +1;
    } else {
      c.time = c.q;
      c.sign = ((c.q / 2) % 2 == 0) ? +1 : -1;
    }
    const big_int exponent = c.q_odd ? c.q : c.q / 2;
    const double lg = log10_revival_term(abs_a, exponent);
    c.theorem_term = lg < std::log10(DBL_MIN) ? DBL_MIN : std::pow(10.0, lg);
    if (!last) {
      c.c_next = cf.coefficients[k + 1];
      // (T/2)(T + 2L - 1) * 2 pi / (c q^2), exact up to the final product.
      const rational ratio(c.time * (c.time + 2 * L - 1), 2 * c.c_next * c.q * c.q);
      c.deviation_term = ratio.convert_to<double>() * two_pi<double>() * (1 + 4 * DBL_EPSILON);
    }
    c.total = c.theorem_term + c.deviation_term;
    c.nontrivial = c.total < 2;
    out.any_nontrivial = out.any_nontrivial || c.nontrivial;
    out.certificates.push_back(std::move(c));
  }
  std::stable_sort(out.certificates.begin(), out.certificates.end(),
                   [](const RevivalCertificate& x, const RevivalCertificate& y) { return x.time < y.time; });
  if (!out.any_nontrivial) out.reason = "bounds vacuous";
  return out;
}

}  // namespace ewalk::cf
