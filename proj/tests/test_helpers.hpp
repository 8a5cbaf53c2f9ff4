// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0
//
// Shared test utilities: a deterministic random stream and independent
// quadrature oracles for the space-time inner products. The oracles evaluate
// the defining integrals pointwise from the model formulas and never touch
// the exact-algebra assembly paths they are used to check.

#ifndef CHINDEX_TEST_HELPERS_HPP
#define CHINDEX_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "chindex/basis.hpp"
#include "chindex/operator.hpp"
#include "chindex/spiral.hpp"
#include "chindex/torus.hpp"

namespace chindex::testing {

inline constexpr double kPi = std::numbers::pi;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9E3779B97F4A7C15ull) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex unit_complex() { return std::polar(1.0, 2.0 * kPi * uniform()); }
  Complex gaussian() {
    const double u = uniform() + 1e-300, v = uniform();
    return std::polar(std::sqrt(-2.0 * std::log(u)), 2.0 * kPi * v);
  }
  int integer(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

inline Eigen::VectorXcd random_vector(Rng& rng, std::size_t n) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = rng.gaussian();
  return v;
}

// --- torus oracle -----------------------------------------------------------

// <e~_{k,R} | e~_{k',L}> = int_0^{2pi} int_0^{2pi} (1/4pi^2)
//   e^{i(w_R - w_L) t} e^{i(k'-k) phi} f(phi) dphi dt, by the periodic
// trapezoid rule on an n x n grid.
template <typename F>
Complex torus_entry_oracle(int k_right, int k_left, int p, F&& conformal, int n = 400) {
  const double w_r = dispersion(k_right, p, Chirality::R).value();
  const double w_l = dispersion(k_left, p, Chirality::L).value();
  const double ht = 2.0 * kPi / n, hphi = 2.0 * kPi / n;
  Complex acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = ht * i;
    const Complex time_factor = std::polar(1.0, (w_r - w_l) * t);
    Complex spatial = 0.0;
    for (int j = 0; j < n; ++j) {
      const double phi = hphi * j;
      spatial += conformal(phi) * std::polar(1.0, (k_left - k_right) * phi);
    }
    acc += time_factor * spatial;
  }
  return acc * ht * hphi / (4.0 * kPi * kPi);
}

// --- spiral oracle ----------------------------------------------------------

struct SpinorValue {
  Complex left, right;
};

// V e_{k,c}(t, phi) evaluated from the transformation formula.
inline SpinorValue v_mode_value(int k, Chirality c, int p, double nu, double t, double phi) {
  const double omega = dispersion(k, p, c).value();
  const Complex wave = std::polar(1.0 / (2.0 * kPi), -omega * t + k * phi);
  const Complex mix = Complex(0.0, nu * std::cos(t / 3.0));
  SpinorValue v;
  if (c == Chirality::L) {
    v.left = wave;
    v.right = mix * wave;
  } else {
    v.right = wave;
    v.left = mix * wave;
  }
  return v;
}

// mu(t, phi) evaluated directly from the coefficient ansatz.
inline double mu_value(const MuCoefficients& co, double t, double phi) {
  Complex a = 0.0;
  for (const auto& [k, ak] : co.a) {
    if (k > 0)
      a += ak * std::polar(1.0, k * phi);
    else
      a += std::conj(ak) * std::polar(1.0, k * phi);
  }
  Complex vert = 0.0;
  for (const auto& [n, bn] : co.b) {
    vert += bn * std::polar(1.0, (n + 1.0 / 3.0) * t);
    vert += std::conj(bn) * std::polar(1.0, -(n + 1.0 / 3.0) * t);
  }
  const double hor = a.real() * (1.0 - 2.0 * std::cos(2.0 * t / 3.0));
  return 1.0 + hor + vert.real();
}

// (e~_{k,c} | S_L e~_{k',c'}) = int_0^{6pi} int_0^{2pi}
//   conj(right(V e_{k,c})) * left(V e_{k',c'}) * mu dphi dt
// by the periodic trapezoid rule.
inline Complex spiral_entry_oracle(const Mode& row, const Mode& col, const MuCoefficients& co,
                                   int p, int n = 600) {
  const double ht = 6.0 * kPi / n, hphi = 2.0 * kPi / n;
  Complex acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = ht * i;
    for (int j = 0; j < n; ++j) {
      const double phi = hphi * j;
      const SpinorValue bra = v_mode_value(row.k, row.chirality, p, co.nu, t, phi);
      const SpinorValue ket = v_mode_value(col.k, col.chirality, p, co.nu, t, phi);
      acc += std::conj(bra.right) * ket.left * mu_value(co, t, phi);
    }
  }
  return acc * ht * hphi;
}

}  // namespace chindex::testing

#endif
