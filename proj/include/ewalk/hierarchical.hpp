#pragma once

// Step-by-step construction of a field with hierarchical revivals and
// excursions. Level l fixes the convergent n_k/q_k (k = l + 1) and certifies
//   - a revival at time T_k with deficiency below eps_l for every state in I_l,
//   - an excursion time tau at which the worst return probability into I_l
//     is below eps_l/2 for the rational walk and below eps_l for any field
//     sharing the continued-fraction prefix.
// Both bounds hold for every field whose next coefficient is at least the
// recorded c_{k+1}; the constructor checks them by simulation at the field
// given by the prefix itself.

#include "ewalk/coin.hpp"
#include "ewalk/diophantine.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"
#include "ewalk/walkcore.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ewalk::hier {

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t sites() const { return hi - lo + 1; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  // smallest L with |x| < L on the interval
  std::int64_t radius() const { return std::max(lo < 0 ? -lo : lo, hi < 0 ? -hi : hi) + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct HierarchicalSpec {
  std::vector<double> epsilons;      // eps_0 > eps_1 > ... > 0
  std::vector<Interval> intervals;   // I_0 within I_1 within ...
  std::int64_t max_steps = 5000;     // longest simulated time
  std::int64_t max_support = 1 << 16;
  int max_doublings = 20;

  void validate() const {
    if (epsilons.empty()) throw input_error("config", "need at least one epsilon");
    if (epsilons.size() != intervals.size()) {
      throw input_error("config", "epsilon and interval schedules differ in length");
    }
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      if (!(epsilons[i] > 0 && epsilons[i] < 2)) throw input_error("config", "epsilons must lie in (0, 2)");
      if (i > 0 && !(epsilons[i] < epsilons[i - 1])) {
        throw input_error("config", "epsilons must be strictly decreasing");
      }
      if (intervals[i].hi < intervals[i].lo) throw input_error("config", "empty interval");
      if (i > 0 && !intervals[i].contains(intervals[i - 1])) {
        throw input_error("config", "intervals must be nested");
      }
    }
    if (max_steps < 1 || max_support < 3) throw input_error("config", "simulation budget too small");
  }
};

struct LevelCertificate {
  std::size_t level = 0;
  std::size_t k = 0;  // convergent index
  big_int n;
  big_int q;
  std::int64_t revival_time = 0;
  int revival_sign = +1;
  double epsilon = 0;
  Interval interval;
  std::int64_t support_radius = 1;

  double theorem_term = 0;
  double deviation_term = 0;
  double revival_bound = 0;      // theorem + deviation, < epsilon
  double revival_measured = 0;   // worst case over I at the prefix field

  std::int64_t excursion_time = 0;
  double escape_rational = 0;    // worst return probability of the rational walk at tau, tau + 1
  double escape_basis_max = 0;   // same, maximized over basis states only
  std::size_t dimension = 0;     // 2 |I|
  double escape_slack_bound = 0; // dimension * basis max: the convexity bound
  double escape_deviation = 0;   // deviation bound at tau + 1
  double escape_bound = 0;       // (sqrt(escape_rational) + deviation)^2
  double escape_measured = 0;    // worst return probability at the prefix field

  big_int c_next_lower;  // from the deviation requirements alone
  big_int c_next;        // recorded c_{k+1}
  bool verified = false;
};

struct HierarchicalResult {
  cf::ContinuedFraction prefix;
  std::vector<LevelCertificate> levels;
  bool budget_exhausted = false;
  std::string stop_reason;
};

namespace detail {

using cvec = std::vector<std::complex<double>>;

inline double lambda_max(const std::vector<cvec>& cols) {
  const auto d = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXcd G(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      std::complex<double> s = 0;
      for (std::size_t r = 0; r < cols[i].size(); ++r) s += std::conj(cols[i][r]) * cols[j][r];
      G(i, j) = s;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Amplitudes of `s` on the interval, flattened (x, coin).
inline cvec restrict(const WalkState<double>& s, const Interval& I) {
  cvec out;
  out.reserve(static_cast<std::size_t>(2 * I.sites()));
  for (std::int64_t x = I.lo; x <= I.hi; ++x) {
    for (int c = 0; c < 2; ++c) out.push_back(to_std(s.at(x, c)));
  }
  return out;
}

// Pads every vector to the same window so Gram entries line up.
inline std::vector<cvec> revival_columns(const std::vector<WalkState<double>>& evolved,
                                         const std::vector<WalkState<double>>& initial, int sign) {
  std::int64_t lo = evolved.front().x_min();
  std::int64_t hi = evolved.front().x_max();
  for (const auto& s : evolved) {
    lo = std::min(lo, s.x_min());
    hi = std::max(hi, s.x_max());
  }
  for (const auto& s : initial) {
    lo = std::min(lo, s.x_min());
    hi = std::max(hi, s.x_max());
  }
  std::vector<cvec> cols;
  for (std::size_t j = 0; j < evolved.size(); ++j) {
    cvec v;
    v.reserve(static_cast<std::size_t>(2 * (hi - lo + 1)));
    for (std::int64_t x = lo; x <= hi; ++x) {
      for (int c = 0; c < 2; ++c) {
        v.push_back(to_std(evolved[j].at(x, c)) + static_cast<double>(sign) * to_std(initial[j].at(x, c)));
      }
    }
    cols.push_back(std::move(v));
  }
  return cols;
}

inline std::vector<WalkState<double>> basis(const Interval& I) {
  std::vector<WalkState<double>> out;
  for (std::int64_t x = I.lo; x <= I.hi; ++x) {
    out.push_back(WalkState<double>::point(x, {1.0}, {}));
    out.push_back(WalkState<double>::point(x, {}, {1.0}));
  }
  return out;
}

inline double theorem_term(double abs_a, const big_int& q) {
  const big_int e = (q % 2 != 0) ? q : big_int(q / 2);
  return std::min(2.0, std::pow(10.0, cf::log10_revival_term(abs_a, e)));
}

inline big_int ceil_to_int(double v) {
  if (!(v < 1e300)) throw numerical_error("budget-exhausted", "coefficient bound overflows");
  return big_int(std::ceil(std::max(v, 1.0)));
}

struct Measurement {
  double revival = 0;  // worst-case revival deficiency at time T
  double escape = 0;   // worst-case return probability at tau, tau + 1
  double escape_basis = 0;
};

// Worst-case revival deficiency at `T` and return probability at tau and
// tau + 1 for states supported in I, for the field nu.
inline Measurement measure(const Coin<double>& coin, const FieldSpec& field, const Interval& I, std::int64_t T,
                           int sign, std::int64_t tau, const HierarchicalSpec& spec) {
  const std::vector<WalkState<double>> init = basis(I);
  std::vector<WalkState<double>> cur = init;
  std::vector<WalkState<double>> at_T;
  std::vector<cvec> ret_tau, ret_tau1;
  double basis_max = 0;
  walk::Propagator<double> prop(coin, field, static_cast<std::size_t>(spec.max_support));
  const std::int64_t t_end = std::max(T, tau + 1);
  for (std::int64_t t = 1; t <= t_end; ++t) {
    for (auto& s : cur) prop.advance(s);
    if (t == T) at_T = cur;
    if (t == tau || t == tau + 1) {
      auto& dst = t == tau ? ret_tau : ret_tau1;
      for (const auto& s : cur) {
        dst.push_back(restrict(s, I));
        double p = 0;
        for (const auto& z : dst.back()) p += std::norm(z);
        basis_max = std::max(basis_max, p);
      }
    }
  }
  Measurement m;
  m.revival = std::sqrt(std::max(0.0, lambda_max(revival_columns(at_T, init, sign))));
  m.escape = std::max(lambda_max(ret_tau), lambda_max(ret_tau1));
  m.escape_basis = basis_max;
  return m;
}

struct Excursion {
  std::int64_t tau = 0;
  double worst = 0;
  double basis_max = 0;
};

// First tau >= t_min with worst-case return probability into I at most
// `target` at both tau and tau + 1, for the rational field.
inline Excursion find_excursion(const Coin<double>& coin, const FieldSpec& field, const Interval& I,
                                std::int64_t t_min, double target, const HierarchicalSpec& spec) {
  std::vector<WalkState<double>> cur = basis(I);
  walk::Propagator<double> prop(coin, field, static_cast<std::size_t>(spec.max_support));
  double prev = 2;
  double prev_basis = 0;
  for (std::int64_t t = 1; t <= spec.max_steps; ++t) {
    for (auto& s : cur) prop.advance(s);
    std::vector<cvec> cols;
    double bmax = 0;
    for (const auto& s : cur) {
      cols.push_back(restrict(s, I));
      double p = 0;
      for (const auto& z : cols.back()) p += std::norm(z);
      bmax = std::max(bmax, p);
    }
    const double w = lambda_max(cols);
    if (t - 1 >= t_min && prev <= target && w <= target) {
      return {t - 1, std::max(prev, w), std::max(prev_basis, bmax)};
    }
    prev = w;
    prev_basis = bmax;
  }
  throw numerical_error("budget-exhausted", "no excursion below " + render(target) + " within " +
                                                std::to_string(spec.max_steps) + " steps");
}

}  // namespace detail

inline HierarchicalResult construct_hierarchical_field(const HierarchicalSpec& spec, const CoinSpec& coin_spec) {
  spec.validate();
  const Coin<double> coin = coin_spec.make<double>();
  const double abs_a = to_double(coin.abs_a());
  if (!(abs_a < 1 - 1e-12)) {
    throw input_error("config", "coin with |a| = 1 never disperses; no excursions exist");
  }

  HierarchicalResult out;
  std::vector<big_int> c{0};
  // c_1: smallest value whose convergent already revives to eps_0/2.
  {
    big_int c1 = 1;
    while (detail::theorem_term(abs_a, c1) > spec.epsilons[0] / 2) ++c1;
    c.push_back(c1);
  }

  for (std::size_t level = 0; level < spec.epsilons.size(); ++level) {
    const std::size_t k = level + 1;
    const auto conv = cf::convergents(c);
    const big_int& q = conv[k].q;
    const big_int& n = conv[k].n;
    const double eps = spec.epsilons[level];
    const Interval& I = spec.intervals[level];
    LevelCertificate cert;
    cert.level = level;
    cert.k = k;
    cert.n = n;
    cert.q = q;
    cert.epsilon = eps;
    cert.interval = I;
    cert.support_radius = I.radius();
    cert.dimension = static_cast<std::size_t>(2 * I.sites());
    const bool odd = q % 2 != 0;
    const big_int T = odd ? big_int(2 * q) : q;
    if (T > spec.max_steps || q > big_int(std::int64_t{1} << 62)) {
      out.budget_exhausted = true;
      out.stop_reason = "level " + std::to_string(level) + ": revival time " + T.str() + " exceeds the step budget";
      break;
    }
    cert.revival_time = T.convert_to<std::int64_t>();
    cert.revival_sign = odd ? +1 : (((q / 2) % 2 == 0) ? +1 : -1);
    cert.theorem_term = detail::theorem_term(abs_a, q);
    if (!(cert.theorem_term < eps)) {
      out.stop_reason = "level " + std::to_string(level) + ": revival term does not fit below epsilon";
      break;
    }
    const FieldSpec rational_field =
        FieldSpec::rational(n.convert_to<std::int64_t>(), q.convert_to<std::int64_t>());

    detail::Excursion ex;
    try {
      ex = detail::find_excursion(coin, rational_field, I, cert.revival_time, eps / 2, spec);
    } catch (const numerical_error& e) {
      out.budget_exhausted = true;
      out.stop_reason = "level " + std::to_string(level) + ": " + e.what();
      break;
    }
    cert.excursion_time = ex.tau;
    cert.escape_rational = ex.worst;
    cert.escape_basis_max = ex.basis_max;
    cert.escape_slack_bound = static_cast<double>(cert.dimension) * ex.basis_max;

    // Deviation targets and the coefficient they force:
    // (t/2)(t + 2L - 1) * 2 pi/(c q^2) <= target.
    const double qd = q.convert_to<double>();
    const auto L = cert.support_radius;
    auto c_for = [&](std::int64_t t, double target) {
      const double td = static_cast<double>(t);
      return td * (td + 2.0 * static_cast<double>(L) - 1.0) * pi<double>() / (qd * qd * target);
    };
    const double rev_target = (eps - cert.theorem_term) / 2;
    const double esc_target = std::min(eps / 2, std::sqrt(eps) - std::sqrt(ex.worst));
    if (!(esc_target > 0)) {
      out.stop_reason = "level " + std::to_string(level) + ": no room for the excursion deviation";
      break;
    }
    big_int c_next = std::max(detail::ceil_to_int(c_for(cert.revival_time, rev_target)),
                              detail::ceil_to_int(c_for(ex.tau + 1, esc_target)));
    cert.c_next_lower = c_next;
    if (level + 1 < spec.epsilons.size()) {
      // the next convergent must already revive to eps_{l+1}/2
      while (detail::theorem_term(abs_a, c_next * q + conv[k - 1].q) > spec.epsilons[level + 1] / 2) ++c_next;
    }

    bool ok = false;
    for (int attempt = 0; attempt <= spec.max_doublings && !ok; ++attempt, c_next *= 2) {
      const double delta = two_pi<double>() / (c_next.convert_to<double>() * qd * qd);
      cert.c_next = c_next;
      cert.deviation_term = cf::deviation_bound(cert.revival_time, L, delta);
      cert.revival_bound = cert.theorem_term + cert.deviation_term;
      cert.escape_deviation = cf::deviation_bound(ex.tau + 1, L, delta);
      const double se = std::sqrt(cert.escape_rational) + cert.escape_deviation;
      cert.escape_bound = se * se;
      std::vector<big_int> trial = c;
      trial.push_back(c_next);
      const rational nu = cf::ContinuedFraction::from_coefficients(trial, true).value();
      const big_int& nd = boost::multiprecision::denominator(nu);
      const FieldSpec prefix_field =
          nd < big_int(std::int64_t{1} << 62)
              ? FieldSpec::rational(boost::multiprecision::numerator(nu).convert_to<std::int64_t>(),
                                    nd.convert_to<std::int64_t>())
              : FieldSpec::real(nu, 0, "prefix");
      const detail::Measurement m = detail::measure(coin, prefix_field, I, cert.revival_time, cert.revival_sign,
                                                    cert.excursion_time, spec);
      cert.revival_measured = m.revival;
      cert.escape_measured = m.escape;
      ok = cert.revival_bound < eps && m.revival <= cert.revival_bound && m.escape <= cert.escape_bound &&
           cert.escape_bound <= eps;
      if (ok) break;
    }
    if (!ok) {
      out.stop_reason = "level " + std::to_string(level) + ": verification failed after doubling";
      break;
    }
    cert.verified = true;
    c.push_back(cert.c_next);
    out.levels.push_back(std::move(cert));
  }
  if (out.stop_reason.empty()) out.stop_reason = "all levels completed";
  out.prefix = cf::ContinuedFraction::from_coefficients(c, false);
  return out;
}

}  // namespace ewalk::hier
