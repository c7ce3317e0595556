#pragma once

#include "ewalk/coin.hpp"
#include "ewalk/complex.hpp"
#include "ewalk/errors.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace ewalk {

// Finitely supported two-component wave function on Z, stored densely over
// the window [x_min, x_min + size). Entries outside the window are zero.
template <class Real>
class WalkState {
 public:
  using amplitude = std::array<basic_complex<Real>, 2>;  // (psi(x,+1), psi(x,-1))

  WalkState() = default;
  WalkState(std::int64_t x_min, std::vector<amplitude> amps)
      : x_min_(x_min), amps_(std::move(amps)) {}

  static WalkState point(std::int64_t x, basic_complex<Real> up, basic_complex<Real> down) {
    return WalkState(x, {amplitude{std::move(up), std::move(down)}});
  }

  std::int64_t x_min() const { return x_min_; }
  std::int64_t x_max() const { return x_min_ + static_cast<std::int64_t>(amps_.size()) - 1; }
  std::size_t size() const { return amps_.size(); }
  bool empty() const { return amps_.empty(); }

  std::span<const amplitude> amplitudes() const { return amps_; }
  std::vector<amplitude>& mutable_amplitudes() { return amps_; }

  bool in_window(std::int64_t x) const { return x >= x_min_ && x <= x_max(); }

  // psi(x, alpha) for coin index 0 (+1) or 1 (-1); zero outside the window.
  basic_complex<Real> at(std::int64_t x, int index) const {
    if (!in_window(x)) return {};
    return amps_[static_cast<std::size_t>(x - x_min_)][static_cast<std::size_t>(index)];
  }

  // P(x) = sum_alpha |psi(x, alpha)|^2
  Real probability(std::int64_t x) const {
    if (!in_window(x)) return Real(0);
    const auto& p = amps_[static_cast<std::size_t>(x - x_min_)];
    return norm(p[0]) + norm(p[1]);
  }

  Real norm_squared() const {
    Real s(0);
    for (const auto& p : amps_) s += norm(p[0]) + norm(p[1]);
    return s;
  }

  // Smallest L with psi(x) = 0 for all |x| >= L.
  std::int64_t support_radius() const {
    std::int64_t r = 0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const auto& p = amps_[i];
      if (p[0] == basic_complex<Real>{} && p[1] == basic_complex<Real>{}) continue;
      const std::int64_t x = x_min_ + static_cast<std::int64_t>(i);
      r = std::max<std::int64_t>(r, (x < 0 ? -x : x) + 1);
    }
    return r;
  }

  WalkState normalized() const {
    using std::sqrt;
    const Real n = sqrt(norm_squared());
    WalkState out(*this);
    for (auto& p : out.amps_) {
      p[0] /= n;
      p[1] /= n;
    }
    return out;
  }

  template <class To>
  WalkState<To> cast() const {
    std::vector<typename WalkState<To>::amplitude> out;
    out.reserve(amps_.size());
    for (const auto& p : amps_) out.push_back({complex_cast<To>(p[0]), complex_cast<To>(p[1])});
    return WalkState<To>(x_min_, std::move(out));
  }

 private:
  std::int64_t x_min_ = 0;
  std::vector<amplitude> amps_;
};

// ||psi - phi|| over the union of both windows.
template <class Real>
Real distance(const WalkState<Real>& psi, const WalkState<Real>& phi) {
  using std::sqrt;
  if (psi.empty() && phi.empty()) return Real(0);
  const std::int64_t lo = std::min(psi.empty() ? phi.x_min() : psi.x_min(),
                                   phi.empty() ? psi.x_min() : phi.x_min());
  const std::int64_t hi = std::max(psi.empty() ? phi.x_max() : psi.x_max(),
                                   phi.empty() ? psi.x_max() : phi.x_max());
  Real s(0);
  for (std::int64_t x = lo; x <= hi; ++x) {
    for (int c = 0; c < 2; ++c) s += norm(psi.at(x, c) - phi.at(x, c));
  }
  return sqrt(s);
}

// <psi, phi>
template <class Real>
basic_complex<Real> inner(const WalkState<Real>& psi, const WalkState<Real>& phi) {
  basic_complex<Real> s;
  const std::int64_t lo = std::max(psi.x_min(), phi.x_min());
  const std::int64_t hi = std::min(psi.x_max(), phi.x_max());
  for (std::int64_t x = lo; x <= hi; ++x) {
    for (int c = 0; c < 2; ++c) s += conj(psi.at(x, c)) * phi.at(x, c);
  }
  return s;
}

}  // namespace ewalk
