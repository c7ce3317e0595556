#pragma once

// Localized approximate eigenfunctions for irrational fields.
//
// The eigenvalue equation W psi = e^{iw} psi reads, with u_x = psi(x,+1),
// v_x = psi(x,-1) and e_x = e^{i(w - x Phi)},
//   a u_{x-1} - conj(b) v_{x+1} = e_x u_x
//   b u_{x-1} +    conj(a) v_{x+1} = e_x v_x
// which gives the site-to-site transfer map
//   v_{x+1} = e_x (a v_x - b u_x)
//   u_{x+1} = (conj(e_{x+1}) u_x - conj(b) v_{x+1}) / conj(a).

#include "ewalk/coin.hpp"
#include "ewalk/complex.hpp"
#include "ewalk/errors.hpp"
#include "ewalk/field.hpp"
#include "ewalk/precision.hpp"
#include "ewalk/walk_state.hpp"
#include "ewalk/walkcore.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace ewalk::loc {

struct PrecisionConfig {
  unsigned digits = 300;          // D
  std::int64_t truncation = 100;  // N

  void validate() const {
    if (digits < 50) throw input_error("config", "precision must be at least 50 digits");
    if (truncation < 10) throw input_error("config", "truncation radius must be at least 10");
  }
};

// w = phi_coef * Phi + pi_coef * pi + constant, kept symbolic so that it can
// be evaluated at any working precision.
struct QuasiEnergy {
  rational phi_coef{1, 2};
  rational pi_coef{1, 2};
  rational constant{0};

  // Phi/2 + pi/2: the quasi-energy whose localized eigenfunction satisfies
  // P(x) = P(1 - x).
  static QuasiEnergy symmetric() { return {}; }

  bool is_symmetric() const { return *this == symmetric(); }

  template <class Real>
  Real value(const FieldSpec& field) const {
    return from_rational<Real>(phi_coef) * field.phi<Real>() + from_rational<Real>(pi_coef) * pi<Real>() +
           from_rational<Real>(constant);
  }

  QuasiEnergy plus_pi() const {
    QuasiEnergy q = *this;
    q.pi_coef += 1;
    return q;
  }
  QuasiEnergy plus_phi() const {
    QuasiEnergy q = *this;
    q.phi_coef += 1;
    return q;
  }

  // "<r>,<s>" for r Phi + s pi, or a single decimal for a fixed value.
  static QuasiEnergy parse(const std::string& text) {
    auto to_rat = [&](const std::string& s) -> rational {
      const auto slash = s.find('/');
      if (slash == std::string::npos) return parse_signed_decimal(s);
      try {
        return rational(big_int(std::stoll(s.substr(0, slash))), big_int(std::stoll(s.substr(slash + 1))));
      } catch (const std::logic_error&) {
        throw input_error("config", "malformed quasi-energy '" + text + "'");
      }
    };
    QuasiEnergy q;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
      q.phi_coef = 0;
      q.pi_coef = 0;
      q.constant = parse_signed_decimal(text);
      return q;
    }
    q.phi_coef = to_rat(text.substr(0, comma));
    q.pi_coef = to_rat(text.substr(comma + 1));
    return q;
  }

  std::string to_string() const {
    auto r = [](const rational& v) { return v.str(); };
    if (phi_coef == 0 && pi_coef == 0) return constant.str();
    std::string s = r(phi_coef) + "*Phi+" + r(pi_coef) + "*pi";
    if (constant != 0) s += "+" + r(constant);
    return s;
  }

  friend bool operator==(const QuasiEnergy& x, const QuasiEnergy& y) {
    return x.phi_coef == y.phi_coef && x.pi_coef == y.pi_coef && x.constant == y.constant;
  }

 private:
  static rational parse_signed_decimal(const std::string& s) {
    std::string body = s;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
      neg = body[0] == '-';
      body.erase(0, 1);
    }
    const auto dot = body.find('.');
    try {
      const std::string ip = dot == std::string::npos ? body : body.substr(0, dot);
      rational v(ip.empty() ? 0LL : std::stoll(ip));
      if (dot != std::string::npos && dot + 1 < body.size()) v += FieldSpec::parse("0" + body.substr(dot), 0).nu();
      return neg ? rational(-v) : v;
    } catch (const std::logic_error&) {
      throw input_error("config", "malformed quasi-energy '" + s + "'");
    }
  }
};

struct EigenProfile {
  CoinSpec coin;
  FieldSpec field;
  PrecisionConfig cfg;
  QuasiEnergy omega;
  double omega_value = 0;
  WalkState<hp_real> psi;     // unit vector on [-N, N]
  hp_real residual;           // ||W psi - e^{iw} psi||
  double residual_log10 = 0;
  double growth_log10 = 0;    // log10(max |psi(x)| / |psi(-N)|)
  std::vector<double> ln_p;   // ln P(x) for x = -N..N

  std::int64_t N() const { return cfg.truncation; }

  // Decimal digits of the residual per digit of working precision.
  double rho() const { return -residual_log10 / static_cast<double>(cfg.digits); }
  double residual_digits() const { return -residual_log10; }
};

namespace detail {

inline double ln_probability(const WalkState<hp_real>& s, std::int64_t x) {
  const hp_real p = s.probability(x);
  if (p == 0) return -std::numeric_limits<double>::infinity();
  return log_of(p);
}

}  // namespace detail

// ||W psi - e^{iw} psi|| at the working precision of the caller.
inline hp_real eigen_residual(const Coin<hp_real>& coin, const FieldSpec& field, const hp_real& omega,
                              const WalkState<hp_real>& psi) {
  const WalkState<hp_real> wpsi = walk::step(psi, coin, field);
  const hp_complex phase = expi(omega);
  hp_real acc(0);
  for (std::int64_t x = wpsi.x_min(); x <= wpsi.x_max(); ++x) {
    for (int c = 0; c < 2; ++c) acc += norm(wpsi.at(x, c) - phase * psi.at(x, c));
  }
  return boost::multiprecision::sqrt(acc);
}

// Residual of an arbitrary state recomputed from scratch at `digits`.
inline hp_real recompute_residual(const CoinSpec& coin, const FieldSpec& field, const QuasiEnergy& omega,
                                  const WalkState<hp_real>& psi, unsigned digits) {
  precision_scope scope(digits);
  return eigen_residual(coin.make<hp_real>(), field, omega.value<hp_real>(field), psi);
}

struct TransferOptions {
  QuasiEnergy omega = QuasiEnergy::symmetric();
  std::array<std::complex<double>, 2> seed{{{0.8, 0.1}, {0.3, -0.5}}};  // (u, v) at x = -N
  double no_decay_ratio = 1e-4;  // edge P above this fraction of max P counts as extended
  unsigned margin_digits = 10;
};

// Iterates the transfer map from x = -N to x = +N at D digits, normalizes
// on the truncated window and records the residual.
inline EigenProfile transfer_iterate(const CoinSpec& coin_spec, const FieldSpec& field,
                                     const PrecisionConfig& cfg, const TransferOptions& opts = {}) {
  cfg.validate();
  precision_scope scope(cfg.digits);
  const Coin<hp_real> coin = coin_spec.make<hp_real>();
  if (coin.a == hp_complex{}) {
    throw input_error("config", "transfer iteration needs a coin with a != 0");
  }
  const std::int64_t N = cfg.truncation;
  const hp_real omega = opts.omega.value<hp_real>(field);
  const hp_complex eiw = expi(omega);
  walk::PhaseTable<hp_real> phases(field);
  phases.ensure(-N, N);
  auto e = [&](std::int64_t x) { return eiw * conj(phases(x)); };  // e^{i(w - x Phi)}
  const hp_complex a = coin.a;
  const hp_complex b = coin.b;
  const hp_complex abar = conj(a);
  const hp_complex bbar = conj(b);

  std::vector<WalkState<hp_real>::amplitude> amps(static_cast<std::size_t>(2 * N + 1));
  hp_complex u = from_std<hp_real>(opts.seed[0]);
  hp_complex v = from_std<hp_real>(opts.seed[1]);
  amps[0] = {u, v};
  for (std::int64_t x = -N; x < N; ++x) {
    const hp_complex v1 = e(x) * (a * v - b * u);
    const hp_complex u1 = (conj(e(x + 1)) * u - bbar * v1) / abar;
    u = u1;
    v = v1;
    amps[static_cast<std::size_t>(x + 1 + N)] = {u, v};
  }
  WalkState<hp_real> raw(-N, std::move(amps));

  hp_real pmax(0);
  for (std::int64_t x = -N; x <= N; ++x) pmax = std::max(pmax, raw.probability(x));
  const hp_real p0 = raw.probability(-N);
  const double growth = 0.5 * (log10_of(pmax) - log10_of(p0));
  if (2 * growth + opts.margin_digits > cfg.digits) {
    throw numerical_error("precision-exhausted",
                          "transfer growth of 10^" + render(growth) + " needs more than " +
                              std::to_string(cfg.digits) + " digits");
  }
  const hp_real edge = std::max(raw.probability(-N), raw.probability(N));
  if (edge > hp_real(opts.no_decay_ratio) * pmax) {
    throw numerical_error("no-decay", "edge probability is " + render(to_double(edge / pmax)) +
                                          " of the peak; no localized eigenfunction at this quasi-energy");
  }

  EigenProfile out;
  out.coin = coin_spec;
  out.field = field;
  out.cfg = cfg;
  out.omega = opts.omega;
  out.omega_value = to_double(omega);
  out.psi = raw.normalized();
  out.residual = eigen_residual(coin, field, omega, out.psi);
  out.residual_log10 = out.residual == 0 ? -static_cast<double>(cfg.digits) : log10_of(out.residual);
  out.growth_log10 = growth;
  out.ln_p.reserve(static_cast<std::size_t>(2 * N + 1));
  for (std::int64_t x = -N; x <= N; ++x) out.ln_p.push_back(detail::ln_probability(out.psi, x));
  return out;
}

// max_x |P(x) - P(1 - x)| over the window: zero for an exact symmetric
// eigenfunction at w = Phi/2 + pi/2.
inline double symmetry_defect(const EigenProfile& profile) {
  precision_scope scope(profile.cfg.digits);
  hp_real worst(0);
  const auto& s = profile.psi;
  for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) {
    if (!s.in_window(1 - x)) continue;
    const hp_real d = boost::multiprecision::abs(s.probability(x) - s.probability(1 - x));
    if (d > worst) worst = d;
  }
  return to_double(worst);
}

enum class LogBase { natural, decimal };

inline const char* to_string(LogBase b) { return b == LogBase::natural ? "ln" : "log10"; }

inline LogBase parse_log_base(const std::string& s) {
  if (s == "ln" || s == "natural" || s == "e") return LogBase::natural;
  if (s == "log10" || s == "decimal" || s == "10") return LogBase::decimal;
  throw input_error("config", "log base must be 'ln' or 'log10', got '" + s + "'");
}

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double rms = 0;  // root mean square residual
};

inline LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  const auto n = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ss += r * r;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

struct LocalizationFit {
  LogBase base = LogBase::decimal;
  double lambda = 0;          // in `base`
  double lambda_natural = 0;  // slope of ln P
  double lambda_decimal = 0;  // slope of log10 P
  LineFit left;               // ln P on [-0.8N, -0.1N]
  LineFit right;              // ln P on [0.1N, 0.8N]
  std::int64_t window_lo = 0;  // |x| range of both windows
  std::int64_t window_hi = 0;

  // |left + right| / mean |slope|: 0 for perfectly mirrored decay.
  double slope_mismatch() const {
    const double l = std::abs(left.slope);
    const double r = std::abs(right.slope);
    return std::abs(l - r) / (0.5 * (l + r));
  }
};

// Least-squares slopes of ln P(x) on both fit windows. `ln_p[i]` belongs to
// x = -N + i.
inline LocalizationFit localization_length(const std::vector<double>& ln_p, std::int64_t N,
                                           LogBase base = LogBase::decimal) {
  if (N < 20) throw input_error("fit-window", "fit windows need N >= 20, got " + std::to_string(N));
  if (ln_p.size() != static_cast<std::size_t>(2 * N + 1)) {
    throw input_error("config", "profile length does not match the truncation radius");
  }
  const auto lo = static_cast<std::int64_t>(std::ceil(0.1 * static_cast<double>(N)));
  const auto hi = static_cast<std::int64_t>(std::floor(0.8 * static_cast<double>(N)));
  std::vector<double> xl, yl, xr, yr;
  for (std::int64_t x = lo; x <= hi; ++x) {
    xr.push_back(static_cast<double>(x));
    yr.push_back(ln_p[static_cast<std::size_t>(x + N)]);
    xl.push_back(static_cast<double>(-x));
    yl.push_back(ln_p[static_cast<std::size_t>(-x + N)]);
  }
  for (const double v : yl) {
    if (!std::isfinite(v)) throw numerical_error("fit-window", "zero probability inside the fit window");
  }
  for (const double v : yr) {
    if (!std::isfinite(v)) throw numerical_error("fit-window", "zero probability inside the fit window");
  }
  LocalizationFit f;
  f.base = base;
  f.left = fit_line(xl, yl);
  f.right = fit_line(xr, yr);
  f.window_lo = lo;
  f.window_hi = hi;
  f.lambda_natural = 0.5 * (std::abs(f.left.slope) + std::abs(f.right.slope));
  f.lambda_decimal = f.lambda_natural / std::log(10.0);
  f.lambda = base == LogBase::natural ? f.lambda_natural : f.lambda_decimal;
  return f;
}

inline LocalizationFit localization_length(const EigenProfile& profile, LogBase base = LogBase::decimal) {
  return localization_length(profile.ln_p, profile.N(), base);
}

struct DerivedEigenpair {
  std::string name;  // "staggered" or "shifted"
  QuasiEnergy omega;
  WalkState<hp_real> psi;
  hp_real residual;
};

// (-1)^x psi at w + pi, and psi(x - 1) at w + Phi.
inline std::vector<DerivedEigenpair> symmetry_family(const EigenProfile& profile) {
  precision_scope scope(profile.cfg.digits);
  const Coin<hp_real> coin = profile.coin.make<hp_real>();
  const auto& src = profile.psi;

  std::vector<WalkState<hp_real>::amplitude> st(src.amplitudes().begin(), src.amplitudes().end());
  for (std::size_t i = 0; i < st.size(); ++i) {
    const std::int64_t x = src.x_min() + static_cast<std::int64_t>(i);
    if (x % 2 != 0) {
      st[i][0] = -st[i][0];
      st[i][1] = -st[i][1];
    }
  }
  std::vector<WalkState<hp_real>::amplitude> sh(src.amplitudes().begin(), src.amplitudes().end());

  std::vector<DerivedEigenpair> out;
  out.push_back({"staggered", profile.omega.plus_pi(), WalkState<hp_real>(src.x_min(), std::move(st)), hp_real(0)});
  out.push_back({"shifted", profile.omega.plus_phi(), WalkState<hp_real>(src.x_min() + 1, std::move(sh)), hp_real(0)});
  for (auto& d : out) {
    d.residual = eigen_residual(coin, profile.field, d.omega.value<hp_real>(profile.field), d.psi);
  }
  return out;
}

// Ring diagonalization ------------------------------------------------------

inline constexpr std::int64_t default_ring_cap = 2048;

struct RingEigenpair {
  std::int64_t M = 0;
  std::complex<double> eigenvalue;
  double omega = 0;
  double x2 = 0;                // <x^2> with ring labels in [-floor(M/2), ...)
  double center = 0;            // <x>
  double residual = 0;          // ||U v - mu v|| for the returned pair
  double max_residual = 0;      // over all eigenpairs of the ring
  double second_x2 = 0;         // next smallest <x^2>
  WalkState<double> psi;        // unit eigenvector on the ring labels
};

// Dense unitary of the M-site electric walk with e^{i x Phi}, Phi = 2 pi n/q,
// on ring labels x in [x0, x0 + M) with x0 = -floor(M/2).
inline Eigen::MatrixXcd ring_unitary(const Coin<double>& coin, std::int64_t n, std::int64_t q, std::int64_t M) {
  const std::int64_t x0 = -(M / 2);
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(2 * M, 2 * M);
  const FieldSpec field = FieldSpec::rational(n, q);
  walk::PhaseTable<double> phases(field);
  auto wrap = [&](std::int64_t x) {
    std::int64_t r = (x - x0) % M;
    if (r < 0) r += M;
    return r;
  };
  for (std::int64_t i = 0; i < M; ++i) {
    const std::int64_t x = x0 + i;
    for (int alpha = 0; alpha < 2; ++alpha) {
      const std::int64_t target = wrap(x + coin_sign(alpha));
      const auto ph = to_std(phases(x0 + target));
      for (int beta = 0; beta < 2; ++beta) {
        U(2 * target + beta, 2 * i + alpha) = ph * to_std(coin.entry(alpha, beta));
      }
    }
  }
  return U;
}

inline RingEigenpair ring_diagonalize_one(const CoinSpec& coin_spec, std::int64_t n, std::int64_t q,
                                          std::int64_t M, std::int64_t cap = default_ring_cap) {
  if (q < 1 || M < 1 || M % q != 0) {
    throw input_error("config", "ring size " + std::to_string(M) + " is not a multiple of " + std::to_string(q));
  }
  if (M > cap) {
    throw input_error("config", "ring size " + std::to_string(M) + " exceeds the cap of " + std::to_string(cap));
  }
  const Coin<double> coin = coin_spec.make<double>();
  const Eigen::MatrixXcd U = ring_unitary(coin, n, q, M);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(U);
  if (es.info() != Eigen::Success) throw numerical_error("eigensolver", "dense eigensolver did not converge");
  const std::int64_t x0 = -(M / 2);
  RingEigenpair best;
  best.x2 = std::numeric_limits<double>::infinity();
  best.second_x2 = std::numeric_limits<double>::infinity();
  std::int64_t best_j = -1;
  double max_res = 0;
  for (Eigen::Index j = 0; j < U.cols(); ++j) {
    Eigen::VectorXcd v = es.eigenvectors().col(j);
    v.normalize();
    const std::complex<double> mu = es.eigenvalues()(j);
    const double res = (U * v - mu * v).norm();
    max_res = std::max(max_res, res);
    double x2 = 0;
    for (std::int64_t i = 0; i < M; ++i) {
      const double p = std::norm(v(2 * i)) + std::norm(v(2 * i + 1));
      x2 += static_cast<double>((x0 + i) * (x0 + i)) * p;
    }
    if (x2 < best.x2) {
      best.second_x2 = best.x2;
      best.x2 = x2;
      best_j = j;
    } else if (x2 < best.second_x2) {
      best.second_x2 = x2;
    }
  }
  if (max_res > 1e-10) {
    throw numerical_error("eigensolver", "eigenpair residual " + render(max_res) + " exceeds 1e-10");
  }
  Eigen::VectorXcd v = es.eigenvectors().col(best_j);
  v.normalize();
  best.M = M;
  best.eigenvalue = es.eigenvalues()(best_j);
  best.omega = std::arg(best.eigenvalue);
  best.residual = (U * v - best.eigenvalue * v).norm();
  best.max_residual = max_res;
  std::vector<WalkState<double>::amplitude> amps(static_cast<std::size_t>(M));
  double c = 0;
  for (std::int64_t i = 0; i < M; ++i) {
    amps[static_cast<std::size_t>(i)] = {from_std<double>(v(2 * i)), from_std<double>(v(2 * i + 1))};
    c += static_cast<double>(x0 + i) * (std::norm(v(2 * i)) + std::norm(v(2 * i + 1)));
  }
  best.center = c;
  best.psi = WalkState<double>(x0, std::move(amps));
  return best;
}

inline std::vector<RingEigenpair> ring_diagonalize(const CoinSpec& coin, std::int64_t n, std::int64_t q,
                                                   const std::vector<std::int64_t>& rings,
                                                   std::int64_t cap = default_ring_cap) {
  std::vector<RingEigenpair> out;
  out.reserve(rings.size());
  for (const std::int64_t M : rings) out.push_back(ring_diagonalize_one(coin, n, q, M, cap));
  return out;
}

// P(x + shift) of a ring eigenvector, with the integer shift chosen so that
// the centre of mass lands within 1/2 of `target_center`.
inline std::vector<std::pair<std::int64_t, double>> recentred_probability(const RingEigenpair& r,
                                                                          double target_center) {
  const auto shift = static_cast<std::int64_t>(std::llround(r.center - target_center));
  std::vector<std::pair<std::int64_t, double>> out;
  for (std::int64_t x = r.psi.x_min(); x <= r.psi.x_max(); ++x) out.emplace_back(x - shift, r.psi.probability(x));
  return out;
}

// Random-field survey --------------------------------------------------------

// Uniform D-digit decimal in [0, 1); digit i depends only on the seed and i.
inline FieldSpec random_field(std::uint64_t seed, unsigned digits) {
  std::mt19937_64 rng(seed);
  std::string s;
  s.reserve(digits);
  constexpr std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                  std::numeric_limits<std::uint64_t>::max() % 10;
  for (unsigned i = 0; i < digits; ++i) {
    std::uint64_t r = rng();
    while (r >= limit) r = rng();
    s += static_cast<char>('0' + r % 10);
  }
  const auto nz = s.find_first_not_of('0');
  const big_int num(nz == std::string::npos ? std::string("0") : s.substr(nz));  // no octal prefix
  const rational nu(num, boost::multiprecision::pow(big_int(10), digits));
  return FieldSpec::real(nu, digits, FieldSpec::decimal_string(nu, std::min(digits, 20u)) + "...");
}

struct SurveyEntry {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string field;  // leading digits of nu
  bool ok = false;
  double lambda = 0;
  double lambda_natural = 0;
  double residual_log10 = 0;
  std::string error;  // error kind when !ok
};

struct SurveyResult {
  std::vector<SurveyEntry> entries;
  std::size_t accepted = 0;
  double mean = 0;
  double variance = 0;  // sample variance (n - 1)
  LogBase base = LogBase::decimal;
};

// Field i uses the sub-seed seed + i, so the first D digits of a field do
// not depend on D.
inline SurveyResult random_field_survey(const CoinSpec& coin, std::size_t num_fields, const PrecisionConfig& cfg,
                                        std::uint64_t seed, LogBase base = LogBase::decimal) {
  cfg.validate();
  SurveyResult out;
  out.base = base;
  std::vector<double> values;
  for (std::size_t i = 0; i < num_fields; ++i) {
    SurveyEntry e;
    e.index = i;
    e.seed = seed + i;
    const FieldSpec field = random_field(e.seed, cfg.digits);
    e.field = field.label();
    try {
      const EigenProfile p = transfer_iterate(coin, field, cfg);
      const LocalizationFit f = localization_length(p, base);
      e.ok = true;
      e.lambda = f.lambda;
      e.lambda_natural = f.lambda_natural;
      e.residual_log10 = p.residual_log10;
      values.push_back(f.lambda);
    } catch (const error& err) {
      e.error = err.kind();
    }
    out.entries.push_back(std::move(e));
  }
  out.accepted = values.size();
  if (!values.empty()) {
    double s = 0;
    for (const double v : values) s += v;
    out.mean = s / static_cast<double>(values.size());
  }
  if (values.size() > 1) {
    double ss = 0;
    for (const double v : values) ss += (v - out.mean) * (v - out.mean);
    out.variance = ss / static_cast<double>(values.size() - 1);
  }
  return out;
}

}  // namespace ewalk::loc
