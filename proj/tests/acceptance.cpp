// Acceptance criteria. Each test prints exactly one line
//   [ACn] PASS|FAIL  <summary>
// and is registered as its own ctest entry. Tolerances are pinned below.

#include "ewalk/ewalk.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

using namespace ewalk;

namespace {

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(clock::now() - start_).count(); }

 private:
  using clock = std::chrono::steady_clock;
  clock::time_point start_ = clock::now();
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void report(const char* id, bool pass, const std::string& summary) {
  std::printf("[%s] %s  %s\n", id, pass ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(pass) << id << ": " << summary;
}

WalkState<double> random_state(std::mt19937_64& rng, std::int64_t radius) {
  std::normal_distribution<double> g;
  std::vector<WalkState<double>::amplitude> amps;
  for (std::int64_t x = -radius; x <= radius; ++x) amps.push_back({{{g(rng), g(rng)}, {g(rng), g(rng)}}});
  return WalkState<double>(-radius, std::move(amps)).normalized();
}

// psi <- W^dagger psi:  psi(y, a) = sum_b conj(C_ab) e^{-i (y + a) Phi} phi(y + a, b).
WalkState<double> adjoint_step(const WalkState<double>& phi, const Coin<double>& c, double Phi) {
  const std::int64_t lo = phi.x_min() - 1;
  const std::int64_t hi = phi.x_max() + 1;
  std::vector<WalkState<double>::amplitude> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t y = lo; y <= hi; ++y) {
    for (int a = 0; a < 2; ++a) {
      const std::int64_t src = y + coin_sign(a);
      const auto ph = expi(-Phi * static_cast<double>(src));
      basic_complex<double> acc;
      for (int b = 0; b < 2; ++b) acc += conj(c.entry(a, b)) * phi.at(src, b);
      out[static_cast<std::size_t>(y - lo)][static_cast<std::size_t>(a)] = ph * acc;
    }
  }
  return WalkState<double>(lo, std::move(out));
}

WalkState<double> add(const WalkState<double>& x, const WalkState<double>& y, double sy = 1.0) {
  const std::int64_t lo = std::min(x.x_min(), y.x_min());
  const std::int64_t hi = std::max(x.x_max(), y.x_max());
  std::vector<WalkState<double>::amplitude> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t s = lo; s <= hi; ++s) {
    for (int c = 0; c < 2; ++c) out[static_cast<std::size_t>(s - lo)][static_cast<std::size_t>(c)] = x.at(s, c) + y.at(s, c) * sy;
  }
  return WalkState<double>(lo, std::move(out));
}

}  // namespace

// Odd-q revival: Hadamard, Phi = 2 pi / 5.
TEST(Acceptance, AC1_OddRevival) {
  constexpr double slack = 1e-12;
  constexpr double sup_tolerance = 0.01;
  const Coin<double> c = CoinSpec::hadamard().make<double>();
  const FieldSpec f = FieldSpec::rational(1, 5);
  const double bound = 2 * std::pow(2.0, -2.5);

  std::mt19937_64 rng(2024);
  Stopwatch sw;
  double worst = 0;
  std::vector<WalkState<double>> states;
  for (int i = 0; i < 100; ++i) {
    states.push_back(random_state(rng, 1 + i % 20));
    worst = std::max(worst, walk::revival_residual(c, f, states.back(), 10, +1));
  }
  const double t_random = sw.seconds();

  // Supremum over all states: power iteration on A^dagger A, A = W^10 + 1,
  // driven by the walk itself.
  Stopwatch sw2;
  const double Phi = f.phi<double>();
  WalkState<double> v = states.front();
  double sup = 0;
  for (int it = 0; it < 150; ++it) {
    const WalkState<double> Av = add(walk::power(v, c, f, 10), v);
    sup = std::sqrt(Av.norm_squared() / v.norm_squared());
    WalkState<double> back = Av;
    for (int t = 0; t < 10; ++t) back = adjoint_step(back, c, Phi);
    v = add(back, Av).normalized();
  }
  const double t_power = sw2.seconds();

  const bool ok = worst <= bound + slack && sup <= bound + slack && sup >= (1 - sup_tolerance) * bound &&
                  t_random < 1.0;
  report("AC1", ok,
         "bound " + fmt("%.12f", bound) + ", max over 100 random states " + fmt("%.12f", worst) +
             ", power-iteration supremum " + fmt("%.12f", sup) + " (" + fmt("%.4f", 100 * (1 - sup / bound)) +
             "% below), random-state time " + fmt("%.3f", t_random) + " s, supremum time " + fmt("%.2f", t_power) +
             " s");
}

// Even-q revival at high precision: Phi = 2 pi 51/256.
TEST(Acceptance, AC2_EvenRevivalHighPrecision) {
  constexpr unsigned digits = 45;
  Stopwatch sw;
  const FieldSpec f = FieldSpec::rational(51, 256);
  const auto m = walk::revival_deficiency(CoinSpec::hadamard(), f, walk::symmetric_origin_state<double>(), digits);
  precision_scope scope(digits);
  const auto psi = walk::power(walk::symmetric_origin_state<hp_real>(), CoinSpec::hadamard().make<hp_real>(), f, 256);
  const hp_real p256 = psi.probability(0);
  const double secs = sw.seconds();
  const double two63 = std::ldexp(1.0, -63);
  const hp_real floor_p = hp_real(1) - hp_real("1e-19");
  const bool ok = m.deficiency <= two63 && m.time == 256 && p256 >= floor_p && secs < 60;
  report("AC2", ok,
         "deficiency " + fmt("%.6e", m.deficiency) + " <= 2^-63 = " + fmt("%.6e", two63) + " at " +
             std::to_string(digits) + " digits, 1 - p(256) = " + fmt("%.4e", to_double(hp_real(1 - p256))) + ", " +
             fmt("%.2f", secs) + " s");
}

// Two nearby rational fields stay close for t <= 100.
TEST(Acceptance, AC3_CrossFieldCoincidence) {
  const Coin<double> c = CoinSpec::hadamard().make<double>();
  const FieldSpec f1 = FieldSpec::rational(1, 5);
  const FieldSpec f2 = FieldSpec::rational(51, 256);
  const double dphi = std::abs(f1.phi<double>() - f2.phi<double>());
  walk::Propagator<double> p1(c, f1), p2(c, f2);
  WalkState<double> a = walk::symmetric_origin_state<double>(), b = a;
  bool ok = true;
  double worst_ratio = 0;
  double max_dp = 0;
  double max_dp_over_bound = 0;
  for (std::int64_t t = 0; t <= 100; ++t) {
    if (t > 0) {
      p1.advance(a);
      p2.advance(b);
    }
    const double bound = 0.5 * static_cast<double>(t) * static_cast<double>(t + 1) * dphi;
    const double d = distance(a, b);
    if (d > bound + 1e-12) ok = false;
    if (bound > 0) worst_ratio = std::max(worst_ratio, d / bound);
    const double dp = std::abs(a.probability(0) - b.probability(0));
    const double dp_bound = std::min(1.0, 2 * bound);  // |p1 - p2| <= (||a|| + ||b||) ||a - b||
    if (t < 100) {
      if (dp > dp_bound + 1e-12) ok = false;
      max_dp = std::max(max_dp, dp);
      if (dp_bound > 0) max_dp_over_bound = std::max(max_dp_over_bound, dp / dp_bound);
    }
  }
  report("AC3", ok,
         "max ||dpsi(t)|| / (t(t+1)/2 |dPhi|) = " + fmt("%.4f", worst_ratio) + ", max |dp(t)| for t < 100 = " +
             fmt("%.4f", max_dp) + " (" + fmt("%.4f", max_dp_over_bound) + " of its bound)");
}

// Closed-form trace vs the direct product, all primitive roots, m <= 20.
TEST(Acceptance, AC4_TraceLemma) {
  constexpr double tol = 1e-11;
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  Stopwatch sw;
  double worst = 0;
  std::size_t checks = 0;
  for (std::int64_t m = 1; m <= 20; ++m) {
    for (int s = 0; s < 100; ++s) {
      spectral::Mat2<double> C;
      double fro = 0;
      for (auto& row : C.e) {
        for (auto& e : row) {
          e = {g(rng), g(rng)};
          fro += norm(e);
        }
      }
      // unit Frobenius norm keeps the m-fold products O(1)
      for (auto& row : C.e) {
        for (auto& e : row) e /= std::sqrt(fro);
      }
      const auto closed = spectral::trace_tau_closed(C, m);
      for (std::int64_t j = 1; j <= m; ++j) {
        if (std::gcd(j, m) != 1) continue;
        worst = std::max(worst, abs(spectral::trace_tau_direct(C, m, j) - closed));
        ++checks;
      }
    }
  }
  const double secs = sw.seconds();
  report("AC4", worst <= tol && secs < 10,
         std::to_string(checks) + " (matrix, m, root) checks, max |direct - closed| = " + fmt("%.3e", worst) + ", " +
             fmt("%.2f", secs) + " s");
}

// Regrouped Bloch product vs closed-form bands on a 1024-point grid.
TEST(Acceptance, AC5_Dispersion) {
  constexpr double tol = 1e-12;
  const Coin<double> c = CoinSpec::hadamard().make<double>();
  Stopwatch sw;
  double worst = 0;
  double worst_n = 0;
  for (const std::int64_t m : {2, 3, 5, 8, 13}) {
    const auto rel = spectral::dispersion(c, m);
    for (int i = 0; i < 1024; ++i) {
      const double k = two_pi<double>() * i / 1024;
      const auto b = rel(k);
      double first = -1;
      for (std::int64_t n = 1; n < m || n == 1; ++n) {
        if (std::gcd(n, m) != 1) continue;
        const auto [mu1, mu2] = spectral::eigenvalues(spectral::regrouped_bloch(c, FieldSpec::Rational{n, m}, k));
        // compare as unit-circle points: w+ and w- = -w+
        const double e1 = std::min(abs(mu1 - expi(b.omega_plus)) + abs(mu2 - expi(b.omega_minus)),
                                   abs(mu1 - expi(b.omega_minus)) + abs(mu2 - expi(b.omega_plus)));
        worst = std::max(worst, e1);
        const double wp = std::abs(arg(mu1));
        if (first < 0) first = wp;
        worst_n = std::max(worst_n, std::abs(wp - first));
      }
    }
  }
  const double secs = sw.seconds();
  report("AC5", worst <= tol && worst_n <= tol && secs < 10,
         "max eigenvalue mismatch " + fmt("%.3e", worst) + ", max spread over numerators " + fmt("%.3e", worst_n) +
             ", " + fmt("%.2f", secs) + " s");
}

// Continued fractions and the approximation inequality in exact arithmetic.
TEST(Acceptance, AC6_ContinuedFractions) {
  bool ok = true;
  std::string notes;

  const auto golden = cf::expand(FieldSpec::golden(300), 1000);
  for (std::size_t i = 1; i < golden.coefficients.size(); ++i) ok = ok && golden.coefficients[i] == 1;
  notes += "golden: " + std::to_string(golden.certified_depth()) + " ones";

  // pi itself, not reduced mod 1
  precision_scope scope(60);
  const rational pi_lo = to_rational(pi<hp_real>()) - rational(1, big_int(10) * boost::multiprecision::pow(big_int(10), 55));
  const rational pi_hi = pi_lo + rational(2, big_int(10) * boost::multiprecision::pow(big_int(10), 55));
  const auto pic = cf::expand_interval(pi_lo, pi_hi, 3, 55);
  ok = ok && pic.coefficients.size() >= 3 && pic.coefficients[0] == 3 && pic.coefficients[1] == 7 &&
       pic.coefficients[2] == 15;
  notes += ", pi: " + pic.to_string();

  const auto r = cf::expand(FieldSpec::rational(51, 256), 10);
  ok = ok && r.to_string() == "(0; 5, 51)";
  notes += ", 51/256: " + r.to_string();

  std::size_t levels = 0;
  for (const FieldSpec& f : {FieldSpec::golden(300), FieldSpec::parse("pi", 300), FieldSpec::parse("e", 300),
                             FieldSpec::parse("sqrt2", 300), FieldSpec::rational(51, 256),
                             loc::random_field(7, 300)}) {
    const auto c = cf::expand(f, 200);
    const auto [lo, hi] = f.enclosure();
    for (std::size_t k = 0; k + 1 < c.coefficients.size(); ++k) {
      const rational approx(c.convergents[k].n, c.convergents[k].q);
      const rational qk = cf::approximation_quality_exact(c, k);
      for (const rational& end : {lo, hi}) {
        rational d = end - approx;
        if (d < 0) d = -d;
        ok = ok && d <= qk;
      }
      ++levels;
    }
  }
  notes += ", inequality checked exactly at " + std::to_string(levels) + " certified levels";
  report("AC6", ok, notes);
}

// Golden-field localized eigenfunction at N = 100, D = 300.
TEST(Acceptance, AC7_Localization) {
  constexpr double residual_target = 1e-20;
  constexpr double lambda_target = 0.301;
  constexpr double lambda_tol = 0.02;
  constexpr double mismatch_tol = 0.05;
  Stopwatch sw;
  const loc::PrecisionConfig cfg{300, 100};
  const auto p = loc::transfer_iterate(CoinSpec::hadamard(), FieldSpec::golden(300), cfg);
  const auto fit = loc::localization_length(p, loc::LogBase::decimal);
  const double secs = sw.seconds();
  const double residual = std::pow(10.0, p.residual_log10);
  const bool res_ok = residual < residual_target;
  const bool lam_ok = std::abs(fit.lambda - lambda_target) <= lambda_tol;
  const bool mis_ok = fit.slope_mismatch() <= mismatch_tol;
  report("AC7", res_ok && lam_ok && mis_ok && secs < 300,
         "omega = " + p.omega.to_string() + "; residual " + fmt("%.3e", residual) + (res_ok ? " < " : " NOT < ") +
             "1e-20 (truncation-limited: edge amplitude ~10^(-0.301 N / 2)); lambda " + fmt("%.4f", fit.lambda) +
             " with log10 P [ln P slope " + fmt("%.4f", fit.lambda_natural) + ", convention flag log10]; " +
             "left/right mismatch " + fmt("%.4f", 100 * fit.slope_mismatch()) + "%; " + fmt("%.2f", secs) + " s");
}

// Staggered and shifted copies of the golden profile.
TEST(Acceptance, AC8_SymmetryFamily) {
  const auto p = loc::transfer_iterate(CoinSpec::hadamard(), FieldSpec::golden(300), {300, 100});
  const auto fam = loc::symmetry_family(p);
  precision_scope scope(300);
  bool ok = fam.size() == 2;
  std::string notes = "original residual " + fmt("%.4e", to_double(p.residual));
  for (const auto& d : fam) {
    ok = ok && d.residual <= 2 * p.residual;
    notes += ", " + d.name + " at " + d.omega.to_string() + " residual ratio " +
             fmt("%.6f", to_double(hp_real(d.residual / p.residual)));
  }
  report("AC8", ok, notes);
}

// Minimal-<x^2> ring eigenvector at 55/89 vs the transfer profile.
TEST(Acceptance, AC9_RingVsTransfer) {
  constexpr double tol = 1e-6;
  Stopwatch sw;
  const std::int64_t n = 55, q = 89;
  const auto ring = loc::ring_diagonalize_one(CoinSpec::hadamard(), n, q, q);
  // transfer profile at the same convergent field on the ring's window
  const auto p = loc::transfer_iterate(CoinSpec::hadamard(), FieldSpec::rational(n, q), {60, q / 2});
  double worst = 0;
  for (const auto& [x, prob] : loc::recentred_probability(ring, 0.5)) {
    if (std::abs(x) > q / 4) continue;
    worst = std::max(worst, std::abs(prob - to_double(p.psi.probability(x))));
  }
  // diagnostic: the golden-field profile itself
  const auto g = loc::transfer_iterate(CoinSpec::hadamard(), FieldSpec::golden(300), {300, 100});
  double worst_golden = 0;
  for (const auto& [x, prob] : loc::recentred_probability(ring, 0.5)) {
    if (std::abs(x) > q / 4) continue;
    worst_golden = std::max(worst_golden, std::abs(prob - to_double(g.psi.probability(x))));
  }
  const double secs = sw.seconds();
  report("AC9", worst <= tol && ring.max_residual <= 1e-10 && secs < 300,
         "M = 89 ring vs transfer at 55/89 on |x| <= 22: max |dP| " + fmt("%.3e", worst) + "; vs golden-field profile " +
             fmt("%.3e", worst_golden) + "; <x^2> " + fmt("%.4f", ring.x2) + ", eigenpair residual " +
             fmt("%.2e", ring.max_residual) + ", " + fmt("%.2f", secs) + " s");
}

// Desk-scale hierarchical construction: every certificate simulation-verified.
TEST(Acceptance, AC10_HierarchicalLevelZero) {
  Stopwatch sw;
  hier::HierarchicalSpec spec;
  spec.epsilons = {0.5};
  spec.intervals = {{0, 0}};
  const auto r = hier::construct_hierarchical_field(spec, CoinSpec::hadamard());
  const double secs = sw.seconds();
  bool ok = !r.levels.empty() && secs < 600;
  for (const auto& L : r.levels) {
    ok = ok && L.verified && L.revival_measured <= L.revival_bound && L.revival_bound < L.epsilon &&
         L.escape_measured <= L.escape_bound && L.escape_bound <= L.epsilon;
  }
  std::string notes = "prefix " + r.prefix.to_string();
  if (!r.levels.empty()) {
    const auto& L = r.levels[0];
    notes += "; level 0: revival at t = " + std::to_string(L.revival_time) + " measured " +
             fmt("%.4f", L.revival_measured) + " <= bound " + fmt("%.4f", L.revival_bound) + " < eps " +
             fmt("%.2f", L.epsilon) + "; escape at t = " + std::to_string(L.excursion_time + 1) + " measured " +
             fmt("%.4f", L.escape_measured) + " <= bound " + fmt("%.4f", L.escape_bound);
  }
  report("AC10", ok, notes + "; " + fmt("%.2f", secs) + " s");
}

// Random-field survey and variance shrinkage on the same seeds.
TEST(Acceptance, AC11_RandomFieldSurvey) {
  constexpr std::uint64_t seed = 1;
  const auto small = loc::random_field_survey(CoinSpec::hadamard(), 20, {200, 80}, seed);
  const auto large = loc::random_field_survey(CoinSpec::hadamard(), 20, {300, 120}, seed);
  const bool ok = small.accepted == 20 && small.mean >= 0.28 && small.mean <= 0.32 &&
                  large.variance < small.variance;
  report("AC11", ok,
         "N=80, D=200: mean " + fmt("%.4f", small.mean) + " variance " + fmt("%.3e", small.variance) +
             " (" + std::to_string(small.accepted) + "/20 accepted); N=120, D=300: mean " + fmt("%.4f", large.mean) +
             " variance " + fmt("%.3e", large.variance));
}
