// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/spiral.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "chindex/torus.hpp"

namespace chindex {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double unit_interval(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace

TrigSpinor v_conjugate_mode(int k, Chirality c, int p, double nu) {
  if (nu == 0.0) throw std::invalid_argument("v_conjugate_mode: nu must be nonzero");
  const Rational omega = dispersion(k, p, c);
  const int n_main = static_cast<int>(-3 * omega.num / omega.den);
  const Complex main_amp(1.0 / (2.0 * kPi), 0.0);
  const Complex side_amp(0.0, nu / (4.0 * kPi));

  TrigSpinor s;
  TrigPoly& main_comp = (c == Chirality::L) ? s.left : s.right;
  TrigPoly& side_comp = (c == Chirality::L) ? s.right : s.left;
  main_comp.add_term(n_main, k, main_amp);
  side_comp.add_term(n_main + 1, k, side_amp);
  side_comp.add_term(n_main - 1, k, side_amp);
  return s;
}

TrigPoly build_mu(const MuCoefficients& co) {
  TrigPoly mu = TrigPoly::constant(1.0);

  // horizontal part: a(phi) * (1 - e^{2it/3} - e^{-2it/3})
  for (const auto& [k, ak] : co.a) {
    if (k == 0) throw std::invalid_argument("build_mu: a has no k = 0 coefficient");
    const Complex c = (k > 0) ? ak : std::conj(ak);
    const int m = k;
    mu.add_term(0, m, c);
    mu.add_term(2, m, -c);
    mu.add_term(-2, m, -c);
  }
  // vertical part: sum_n e^{int} (b_n e^{it/3} + conj(b_{-n}) e^{-it/3})
  for (const auto& [n, bn] : co.b) {
    mu.add_term(3 * n + 1, 0, bn);
    mu.add_term(-3 * n - 1, 0, std::conj(bn));
  }

  if (!mu.is_real(0.0))
    throw std::invalid_argument(
        "build_mu: mu is not real-valued; the horizontal series requires a_k == a_{-k}");

  const MuDiagnostics diag = mu_diagnostics(mu);
  if (diag.grid_min <= 0.0) {
    std::ostringstream msg;
    msg << "build_mu: positivity violation, mu(" << diag.argmin_t << ", " << diag.argmin_phi
        << ") = " << diag.grid_min;
    throw std::invalid_argument(msg.str());
  }
  return mu;
}

MuDiagnostics mu_diagnostics(const TrigPoly& mu) {
  MuDiagnostics d;
  d.grid_min = std::numeric_limits<double>::infinity();
  constexpr int kGrid = 96;
  for (int i = 0; i < kGrid; ++i) {
    const double t = 6.0 * kPi * i / kGrid;
    for (int j = 0; j < kGrid; ++j) {
      const double phi = 2.0 * kPi * j / kGrid;
      const double value = mu.eval(t, phi).real();
      if (value < d.grid_min) {
        d.grid_min = value;
        d.argmin_t = t;
        d.argmin_phi = phi;
      }
    }
  }
  d.coeff_margin = 1.0 - (mu.coeff_abs_sum() - std::abs(mu.coeff(0, 0)));
  return d;
}

Basis spiral_basis(int cutoff, int p) {
  Basis b;
  b.reserve(2 * (2 * cutoff + 1));
  for (int k = -cutoff; k <= cutoff; ++k) {
    b.push_back(BasisLabel::of_mode(torus_mode(k, Chirality::L, p)));
    b.push_back(BasisLabel::of_mode(torus_mode(k, Chirality::R, p)));
  }
  return b;
}

namespace {

SparseOperator assemble_spiral(const MuCoefficients& co, int p, int cutoff, bool left_handed) {
  if (cutoff <= 0) throw std::invalid_argument("assemble_spiral: cutoff must be positive");
  const TrigPoly mu = build_mu(co);
  const Basis basis = spiral_basis(cutoff, p);

  std::vector<TrigSpinor> spinors;
  spinors.reserve(basis.size());
  for (const auto& label : basis)
    spinors.push_back(
        v_conjugate_mode(label.mode().k, label.mode().chirality, p, co.nu));

  SparseOperator op(basis, basis);
  for (std::size_t row = 0; row < basis.size(); ++row) {
    const TrigPoly bra =
        (left_handed ? spinors[row].right : spinors[row].left).conj();
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const TrigPoly& ket = left_handed ? spinors[col].left : spinors[col].right;
      const Complex entry = integrate_cell_weighted(trig_mul(bra, ket), mu);
      if (entry != Complex(0.0)) op.set_at(row, col, entry);
    }
  }
  return op;
}

}  // namespace

SparseOperator assemble_spiral_sl(const MuCoefficients& co, int p, int cutoff) {
  return assemble_spiral(co, p, cutoff, true);
}

SparseOperator assemble_spiral_sr(const MuCoefficients& co, int p, int cutoff) {
  return assemble_spiral(co, p, cutoff, false);
}

int spiral_boundary_band(int cutoff) { return std::max(5, 3 * cutoff / 8); }

TruncationPolicy spiral_policy(int cutoff) {
  TruncationPolicy pol = TruncationPolicy::defaults(cutoff);
  pol.boundary_band = spiral_boundary_band(cutoff);
  return pol;
}

MuCoefficients seeded_mu_coefficients(int p, int cutoff, double nu, std::uint64_t seed,
                                      double amplitude, double decay) {
  // coefficient list length: reach every coupling the stabilization run at
  // 2K retains (levels up to 2K - band), then stop, so that the structural
  // truncation artifacts land inside the discarded boundary band; cap where
  // amplitude*decay^m sinks toward the SVD rank threshold
  const int k2 = 2 * cutoff;
  int m_max = 2 * (k2 - spiral_boundary_band(k2)) + p + 2;
  const double floor = 3e-9;
  if (amplitude > floor) {
    const int resolvable =
        static_cast<int>(std::floor(std::log(floor / amplitude) / std::log(decay)));
    m_max = std::min(m_max, resolvable);
  }
  m_max = std::max(m_max, 4);

  MuCoefficients co;
  co.nu = nu;
  std::uint64_t state = seed ^ 0xC4CEB9FE1A85EC53ull;
  for (int k = 1; k <= m_max; ++k) {
    const double phase = 2.0 * kPi * unit_interval(splitmix64(state));
    const Complex v = std::polar(amplitude * std::pow(decay, k), phase);
    co.a[k] = v;
    co.a[-k] = v;  // realness of mu
  }
  for (int n = -m_max; n <= m_max; ++n) {
    const double phase = 2.0 * kPi * unit_interval(splitmix64(state));
    co.b[n] = std::polar(amplitude * std::pow(decay, std::abs(n)), phase);
  }
  return co;
}

IndexReport spiral_index(const MuCoefficients& co, int p, int cutoff, double mass_threshold,
                         double rel_tol) {
  const auto policy_at = [&](int K) {
    TruncationPolicy pol = spiral_policy(K);
    pol.mass_threshold = mass_threshold;
    pol.rel_tol = rel_tol;
    return pol;
  };
  const EndoBuilder builder = [&](int K) { return assemble_spiral_sl(co, p, K); };
  IndexReport rep = stabilize_index(builder, cutoff, 2 * cutoff, policy_at);
  rep.truncation.scenario = "spiral";
  return rep;
}

}  // namespace chindex
