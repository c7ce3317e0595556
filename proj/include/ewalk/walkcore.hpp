#pragma once

// Position-space dynamics of the electric walk W = e^{iQ Phi} C S.
//
// One step maps amplitudes as
//   psi'(x, beta) = e^{i x Phi} sum_alpha C_{alpha beta} psi(x - alpha, alpha),
// i.e. shift first, then coin (acting on basis kets, C|x,a> = sum_b C_ab |x,b>),
// then the position-dependent phase.

#include "ewalk/coin.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"
#include "ewalk/walk_state.hpp"

#include <cstdint>
#include <map>
#include <type_traits>
#include <optional>
#include <utility>
#include <vector>

#if defined(__SSE2__)
#include <xmmintrin.h>
#endif

namespace ewalk::walk {

// Flush-to-zero / denormals-are-zero for the lifetime of the guard. The
// light-cone tails of a spreading walk underflow through the subnormal
// range, where x86 arithmetic is an order of magnitude slower.
class flush_denormals {
 public:
#if defined(__SSE2__)
  flush_denormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
  ~flush_denormals() { _mm_setcsr(saved_); }

 private:
  unsigned saved_;
#endif
};

inline constexpr std::size_t default_max_sites = std::size_t{1} << 24;

// Phase e^{i x Phi} with exact argument reduction: for nu = p/q the
// argument is 2 pi ((x p) mod q) / q, so fields differing by 2 pi give
// bitwise identical phases.
template <class Real>
class PhaseTable {
 public:
  explicit PhaseTable(const FieldSpec& field) {
    const rational& nu = field.nu();
    num_ = boost::multiprecision::numerator(nu);
    den_ = boost::multiprecision::denominator(nu);
    small_ = den_ < big_int(std::int64_t{1} << 62);
    if (small_) {
      n64_ = num_.template convert_to<std::int64_t>();
      m64_ = den_.template convert_to<std::int64_t>();
    }
  }

  const basic_complex<Real>& operator()(std::int64_t x) {
    ensure(x, x);
    return cache_[static_cast<std::size_t>(x - lo_)];
  }

  void ensure(std::int64_t lo, std::int64_t hi) {
    if (cache_.empty()) {
      lo_ = lo;
      for (std::int64_t x = lo; x <= hi; ++x) cache_.push_back(compute(x));
      return;
    }
    const std::int64_t cur_hi = lo_ + static_cast<std::int64_t>(cache_.size()) - 1;
    if (lo < lo_) {
      const std::int64_t grow = std::max(lo_ - lo, static_cast<std::int64_t>(cache_.size()));
      std::vector<basic_complex<Real>> front;
      front.reserve(static_cast<std::size_t>(grow) + cache_.size());
      for (std::int64_t x = lo_ - grow; x < lo_; ++x) front.push_back(compute(x));
      front.insert(front.end(), cache_.begin(), cache_.end());
      cache_ = std::move(front);
      lo_ -= grow;
    }
    if (hi > cur_hi) {
      const std::int64_t grow = std::max(hi - cur_hi, static_cast<std::int64_t>(cache_.size()));
      cache_.reserve(cache_.size() + static_cast<std::size_t>(grow));
      for (std::int64_t x = cur_hi + 1; x <= cur_hi + grow; ++x) cache_.push_back(compute(x));
    }
  }

 private:
  basic_complex<Real> compute(std::int64_t x) const {
    if (small_) {
      const __int128 r = (static_cast<__int128>(x) * n64_) % m64_;
      const std::int64_t red = static_cast<std::int64_t>(r < 0 ? r + m64_ : r);
      return expi<Real>(two_pi<Real>() * Real(red) / Real(m64_));
    }
    big_int r = (big_int(x) * num_) % den_;
    if (r < 0) r += den_;
    return expi<Real>(two_pi<Real>() * from_big_int<Real>(r) / from_big_int<Real>(den_));
  }

  big_int num_;
  big_int den_;
  bool small_ = true;
  std::int64_t n64_ = 0;
  std::int64_t m64_ = 1;
  std::int64_t lo_ = 0;
  std::vector<basic_complex<Real>> cache_;
};

// Repeated application of W for a fixed coin and field. Keeps the phase
// cache and a scratch buffer alive between steps.
template <class Real>
class Propagator {
 public:
  Propagator(Coin<Real> coin, const FieldSpec& field, std::size_t max_sites = default_max_sites)
      : coin_(std::move(coin)), phases_(field), max_sites_(max_sites) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) entries_[r][c] = coin_.entry(r, c);
    }
  }

  const Coin<Real>& coin() const { return coin_; }

  // psi <- W psi; the window widens by one site on each side.
  void advance(WalkState<Real>& psi) {
    if (psi.size() + 2 > max_sites_) {
      throw numerical_error("support-overflow",
                            "walk support would exceed " + std::to_string(max_sites_) +
                                " sites; raise the lattice cap");
    }
    [[maybe_unused]] std::conditional_t<is_hp_v<Real>, int, flush_denormals> ftz{};
    const std::int64_t lo = psi.x_min() - 1;
    const std::int64_t hi = psi.x_max() + 1;
    phases_.ensure(lo, hi);
    scratch_.resize(psi.size() + 2);
    const auto src = psi.amplitudes();
    const std::int64_t n = static_cast<std::int64_t>(src.size());
    for (std::int64_t i = 0; i < n + 2; ++i) {
      // new site x = lo + i; inputs psi(x-1, +) at src[i-2] and psi(x+1, -) at src[i].
      const basic_complex<Real> up = (i - 2 >= 0 && i - 2 < n) ? src[i - 2][0] : basic_complex<Real>{};
      const basic_complex<Real> down = (i < n) ? src[i][1] : basic_complex<Real>{};
      const basic_complex<Real>& ph = phases_(lo + i);
      auto& out = scratch_[static_cast<std::size_t>(i)];
      out[0] = ph * (entries_[0][0] * up + entries_[1][0] * down);
      out[1] = ph * (entries_[0][1] * up + entries_[1][1] * down);
    }
    std::vector<typename WalkState<Real>::amplitude>& dst = psi.mutable_amplitudes();
    dst.swap(scratch_);
    psi = WalkState<Real>(lo, std::move(dst));
  }

 private:
  Coin<Real> coin_;
  basic_complex<Real> entries_[2][2];
  PhaseTable<Real> phases_;
  std::size_t max_sites_;
  std::vector<typename WalkState<Real>::amplitude> scratch_;
};

// One step of the electric walk.
template <class Real>
WalkState<Real> step(const WalkState<Real>& state, const Coin<Real>& coin, const FieldSpec& field,
                     std::size_t max_sites = default_max_sites) {
  Propagator<Real> prop(coin, field, max_sites);
  WalkState<Real> out = state;
  prop.advance(out);
  return out;
}

// W^t psi
template <class Real>
WalkState<Real> power(const WalkState<Real>& state, const Coin<Real>& coin, const FieldSpec& field,
                      std::int64_t t, std::size_t max_sites = default_max_sites) {
  Propagator<Real> prop(coin, field, max_sites);
  WalkState<Real> out = state;
  for (std::int64_t s = 0; s < t; ++s) prop.advance(out);
  return out;
}

struct Moments {
  double mean = 0;
  double sigma = 0;  // <x^2>^{1/2}, uncentered
};

template <class Real>
Moments position_moments(const WalkState<Real>& state) {
  Real m1(0);
  Real m2(0);
  for (std::int64_t x = state.x_min(); x <= state.x_max(); ++x) {
    const Real p = state.probability(x);
    m1 += Real(x) * p;
    m2 += Real(x) * Real(x) * p;
  }
  using std::sqrt;
  return {to_double(m1), to_double(sqrt(m2))};
}

template <class Real>
double return_probability(const WalkState<Real>& state, std::int64_t site) {
  return to_double(state.probability(site));
}

struct Observables {
  std::int64_t t = 0;
  double sigma = 0;
  double mean = 0;
  double p_return = 0;
};

struct ObservableSeries {
  std::vector<Observables> points;
  // Optional position distributions P(x) keyed by time step.
  std::map<std::int64_t, std::vector<std::pair<std::int64_t, double>>> distributions;
};

struct EvolveOptions {
  std::int64_t return_site = 0;
  std::vector<std::int64_t> snapshot_times;  // record P(x) at these steps
  std::size_t max_sites = default_max_sites;
};

template <class Real>
struct EvolveResult {
  ObservableSeries series;
  WalkState<Real> final_state;
};

template <class Real>
std::vector<std::pair<std::int64_t, double>> distribution(const WalkState<Real>& state) {
  std::vector<std::pair<std::int64_t, double>> out;
  out.reserve(state.size());
  for (std::int64_t x = state.x_min(); x <= state.x_max(); ++x) {
    out.emplace_back(x, to_double(state.probability(x)));
  }
  return out;
}

// Observables of W^t psi for t = 0..steps.
template <class Real>
EvolveResult<Real> evolve(const WalkState<Real>& initial, const Coin<Real>& coin,
                          const FieldSpec& field, std::int64_t steps,
                          const EvolveOptions& opts = {}) {
  if (steps < 0) throw input_error("config", "step count must be non-negative");
  Propagator<Real> prop(coin, field, opts.max_sites);
  EvolveResult<Real> res;
  res.final_state = initial;
  res.series.points.reserve(static_cast<std::size_t>(steps) + 1);
  auto record = [&](std::int64_t t) {
    const Moments m = position_moments(res.final_state);
    res.series.points.push_back({t, m.sigma, m.mean, return_probability(res.final_state, opts.return_site)});
    for (const std::int64_t s : opts.snapshot_times) {
      if (s == t) res.series.distributions[t] = distribution(res.final_state);
    }
  };
  record(0);
  for (std::int64_t t = 1; t <= steps; ++t) {
    prop.advance(res.final_state);
    record(t);
  }
  return res;
}

// Revival time and sign for denominator m: W^{2m} + 1 (m odd) or
// W^m + (-1)^{m/2} (m even).
struct RevivalShape {
  std::int64_t time;
  int sign;
};

inline RevivalShape revival_shape(std::int64_t m) {
  if (m % 2 != 0) return {2 * m, +1};
  return {m, (m / 2) % 2 == 0 ? +1 : -1};
}

// Closed-form operator norm of the revival operator: 2|a|^m (m odd),
// 2|a|^{m/2} (m even).
template <class Real>
Real revival_bound(const Real& abs_a, std::int64_t m) {
  using std::pow;
  if (m % 2 != 0) return Real(2) * pow(abs_a, Real(m));
  return Real(2) * pow(abs_a, Real(m / 2));
}

struct RevivalMeasurement {
  double deficiency = 0;         // ||W^T psi + s psi|| / ||psi||
  double theorem_bound = 0;      // closed form operator norm
  double rounding_estimate = 0;  // a priori accumulated rounding error
  std::int64_t time = 0;
  int sign = +1;
  unsigned digits = 0;
  std::string deficiency_text;   // full-precision rendering
};

// ||W^t psi + sign psi|| / ||psi|| for any field.
template <class Real>
Real revival_residual(const Coin<Real>& coin, const FieldSpec& field, const WalkState<Real>& psi,
                      std::int64_t time, int sign, std::size_t max_sites = default_max_sites) {
  using std::sqrt;
  const WalkState<Real> evolved = power(psi, coin, field, time, max_sites);
  Real acc(0);
  for (std::int64_t x = evolved.x_min(); x <= evolved.x_max(); ++x) {
    for (int c = 0; c < 2; ++c) {
      basic_complex<Real> d = evolved.at(x, c);
      if (sign > 0) {
        d += psi.at(x, c);
      } else {
        d -= psi.at(x, c);
      }
      acc += norm(d);
    }
  }
  return sqrt(acc / psi.norm_squared());
}

// A priori bound on the rounding error accumulated over `time` steps.
template <class Real>
Real rounding_estimate(std::int64_t time) {
  return Real(8) * Real(time) * unit_roundoff<Real>();
}

// Revival deficiency of psi for a rational field with denominator m, at the
// working precision of `Real`. Throws when the value is not resolved above
// the rounding floor.
template <class Real>
RevivalMeasurement revival_deficiency(const Coin<Real>& coin, const FieldSpec& field,
                                      const WalkState<Real>& psi) {
  const auto& r = field.as_rational();
  const RevivalShape shape = revival_shape(r.m);
  const Real value = revival_residual(coin, field, psi, shape.time, shape.sign);
  const Real estimate = rounding_estimate<Real>(shape.time);
  RevivalMeasurement out;
  out.deficiency = to_double(value);
  out.theorem_bound = to_double(revival_bound(coin.abs_a(), r.m));
  out.rounding_estimate = to_double(estimate);
  out.time = shape.time;
  out.sign = shape.sign;
  out.digits = working_digits<Real>();
  out.deficiency_text = render(value);
  if (value < Real(10) * estimate) {
    throw numerical_error("precision-insufficient",
                          "revival deficiency " + render(value) + " is below 10x the rounding "
                          "estimate " + render(estimate) + "; raise the digit count");
  }
  return out;
}

// Convenience: run at `digits` decimal digits in MPFR arithmetic.
inline RevivalMeasurement revival_deficiency(const CoinSpec& coin, const FieldSpec& field,
                                             const WalkState<double>& psi, unsigned digits) {
  precision_scope scope(digits);
  const Coin<hp_real> c = coin.make<hp_real>();
  return revival_deficiency(c, field, psi.cast<hp_real>());
}

// Default initial coin state (|+1> + i|-1>)/sqrt 2 at the origin.
template <class Real>
WalkState<Real> symmetric_origin_state() {
  using std::sqrt;
  const Real h = Real(1) / sqrt(Real(2));
  return WalkState<Real>::point(0, {h, Real(0)}, {Real(0), h});
}

}  // namespace ewalk::walk
