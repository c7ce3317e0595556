#include "ewalk/spectral.hpp"
#include "ewalk/walkcore.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace ewalk;
using namespace ewalk::spectral;

namespace {

Mat2<double> from_oracle(const std::array<std::array<oracle::cd, 2>, 2>& m) {
  return Mat2<double>::from(from_std<double>(m[0][0]), from_std<double>(m[0][1]), from_std<double>(m[1][0]),
                            from_std<double>(m[1][1]));
}

}  // namespace

TEST(Spectral, BlochMatrixIsUnitary) {
  const Coin<double> c = CoinSpec::parse("0.6,0.8i").make<double>();
  const auto W = bloch_matrix(c, 0.37);
  EXPECT_LT((W * W.adjoint() - Mat2<double>::identity()).max_abs(), 1e-15);
}

TEST(Spectral, BlochMatrixGeneratesPositionStep) {
  // With psi^(k) = sum_x e^{ikx} psi(x), one step at zero field multiplies
  // by the transpose of the Bloch matrix.
  const Coin<double> c = CoinSpec::parse("0.6+0.2i,0.7745966692414834i").make<double>(1e-12);
  const WalkState<double> psi = WalkState<double>(-1, {{{{0.3, 0.1}, {0.2, -0.4}}},
                                                        {{{0.5, 0.0}, {0.1, 0.3}}},
                                                        {{{-0.2, 0.2}, {0.0, 0.4}}}});
  const auto out = walk::step(psi, c, FieldSpec::rational(0, 1));
  const double k = 0.81;
  auto ft = [k](const WalkState<double>& s, int comp) {
    basic_complex<double> acc;
    for (std::int64_t x = s.x_min(); x <= s.x_max(); ++x) acc += expi(k * static_cast<double>(x)) * s.at(x, comp);
    return acc;
  };
  const auto T = bloch_matrix(c, k).transpose();
  for (int r = 0; r < 2; ++r) {
    const auto expect = T(r, 0) * ft(psi, 0) + T(r, 1) * ft(psi, 1);
    EXPECT_LT(abs(ft(out, r) - expect), 1e-14);
  }
}

TEST(Spectral, RegroupedFormsAgree) {
  const Coin<double> c = CoinSpec::hadamard().make<double>();
  for (const FieldSpec::Rational f : {FieldSpec::Rational{1, 5}, {2, 5}, {51, 256}, {3, 8}}) {
    for (const double k : {0.0, 0.3, 2.9}) {
      EXPECT_LT((regrouped_bloch(c, f, k) - regrouped_bloch_powers(c, f, k)).max_abs(), 1e-11);
    }
  }
  EXPECT_THROW(regrouped_bloch(c, FieldSpec::Rational{2, 4}, 0.0), input_error);
}

TEST(Spectral, TraceLemmaSmallCases) {
  std::mt19937_64 rng(17);
  for (std::int64_t m = 1; m <= 12; ++m) {
    const auto C = from_oracle(oracle::random_matrix(rng));
    const auto closed = trace_tau_closed(C, m);
    for (std::int64_t j = 1; j <= m; ++j) {
      if (std::gcd(j, m) != 1) {
        EXPECT_THROW(trace_tau_direct(C, m, j), input_error);
        continue;
      }
      EXPECT_LT(abs(trace_tau_direct(C, m, j) - closed), 1e-11 * std::max(1.0, abs(closed))) << m << " " << j;
    }
  }
}

TEST(Spectral, PrintedEvenSignFailsTheOracle) {
  // The variant -(a^m + d^m) - 2((-ad)^{m/2} - det(C)^{m/2}) disagrees with
  // the direct product; the implemented form is the one that matches.
  std::mt19937_64 rng(23);
  const auto C = from_oracle(oracle::random_matrix(rng));
  for (const std::int64_t m : {2, 4, 6}) {
    const auto a = C(0, 0), d = C(1, 1);
    const auto printed = -(detail::ipow(a, m) + detail::ipow(d, m)) -
                         2.0 * (detail::ipow(-(a * d), m / 2) - detail::ipow(C.det(), m / 2));
    EXPECT_GT(abs(printed - trace_tau_direct(C, m, 1)), 1e-6) << m;
  }
}

TEST(Spectral, DispersionMatchesEigenvalues) {
  const Coin<double> c = CoinSpec::parse("0.6+0.3i,0.7416198487095663").make<double>(1e-12);
  for (const std::int64_t m : {1, 2, 3, 4, 6, 7}) {
    const auto rel = dispersion(c, m);
    for (int i = 0; i < 64; ++i) {
      const double k = two_pi<double>() * i / 64;
      const auto [mu1, mu2] = eigenvalues(regrouped_bloch(c, FieldSpec::Rational{1, m}, k));
      const double w1 = arg(mu1), w2 = arg(mu2);
      const auto b = rel(k);
      const double hi = std::max(std::abs(w1), std::abs(w2));
      EXPECT_NEAR(hi, b.omega_plus, 1e-10) << m << " " << k;
      EXPECT_NEAR(w1 + w2, 0.0, 1e-10);  // det of the product is 1 for a unitary coin with det 1
    }
  }
}

TEST(Spectral, TrivialCoinsGiveFlatOrLinearBands) {
  // b = 0: the walk is a pure shift and cos w = cos(m (k + k0)) for odd m
  const Coin<double> shift{{1.0, 0.0}, {0.0, 0.0}};
  const auto b = dispersion(shift, 3)(0.4);
  EXPECT_NEAR(b.cos_omega, std::cos(1.2), 1e-15);
  // a = 0: bands do not depend on k
  const Coin<double> flip{{0.0, 0.0}, {1.0, 0.0}};
  EXPECT_DOUBLE_EQ(dispersion(flip, 5)(0.1).omega_plus, dispersion(flip, 5)(2.0).omega_plus);
}

TEST(Spectral, RevivalNormFromBands) {
  const Coin<double> c = CoinSpec::hadamard().make<double>();
  for (const std::int64_t m : {3, 5, 8, 10}) {
    const auto g = revival_norm_grid(c, m);
    EXPECT_NEAR(g.value, revival_norm(c, m), 1e-9) << m;
  }
}

TEST(Spectral, EigenvaluesOfNormalMatrix) {
  const auto D = Mat2<double>::diag(expi(0.3), expi(-1.1));
  const auto [x, y] = eigenvalues(D);
  EXPECT_LT(std::min(abs(x - expi(0.3)), abs(y - expi(0.3))), 1e-15);
  EXPECT_LT(std::min(abs(x - expi(-1.1)), abs(y - expi(-1.1))), 1e-15);
}

TEST(Spectral, EigenvaluesNearBandTouching) {
  // SU(2) rotation with eigenvalues e^{+-i w}, w tiny: the discriminant
  // route would lose half the digits here.
  for (const double w : {1e-9, 1e-5, M_PI - 1e-9}) {
    const double c = std::cos(w), s = std::sin(w);
    const auto P = Mat2<double>::from({c, 0.6 * s}, {0.0, 0.8 * s}, {0.0, 0.8 * s}, {c, -0.6 * s});
    const auto [x, y] = eigenvalues(P);
    const double hi = std::max(std::abs(arg(x)), std::abs(arg(y)));
    EXPECT_NEAR(hi, w, 1e-15) << w;
  }
}
