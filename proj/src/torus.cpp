// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/torus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chindex {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Rational dispersion(int k, int p, Chirality c) {
  if (p <= 0) throw std::invalid_argument("dispersion: p must be positive");
  if (c == Chirality::L) return Rational::of_int(-k);
  return Rational::of_int(k <= 0 ? k : k + p);
}

Mode torus_mode(int k, Chirality c, int p) { return Mode{k, c, dispersion(k, p, c)}; }

Basis torus_basis(int cutoff, Chirality c, int p) {
  Basis b;
  b.reserve(2 * cutoff + 1);
  for (int k = -cutoff; k <= cutoff; ++k) b.push_back(BasisLabel::of_mode(torus_mode(k, c, p)));
  return b;
}

bool FourierSeries::real_symmetric(double tol) const {
  for (const auto& [k, v] : coeffs)
    if (std::abs(v - std::conj(at(-k))) > tol) return false;
  return true;
}

FourierSeries fourier_coefficients(const std::vector<std::pair<double, double>>& samples,
                                   int cutoff) {
  const std::size_t m = samples.size();
  if (m < static_cast<std::size_t>(8 * cutoff))
    throw std::invalid_argument("fourier_coefficients: aliasing risk, need at least 8*cutoff samples");
  FourierSeries s;
  s.cutoff = cutoff;
  for (int k = -cutoff; k <= cutoff; ++k) {
    Complex acc = 0.0;
    for (const auto& [phi, f] : samples) acc += f * std::polar(1.0, -k * phi);
    s.coeffs[k] = acc * (kTwoPi / static_cast<double>(m));
  }
  // realness: fhat_{-k} = conj(fhat_k)
  for (int k = 0; k <= cutoff; ++k) {
    const Complex sym = 0.5 * (s.coeffs[k] + std::conj(s.coeffs[-k]));
    s.coeffs[k] = sym;
    s.coeffs[-k] = std::conj(sym);
  }
  return s;
}

FourierSeries poisson_series(double r, int cutoff) {
  if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("poisson_series: need 0 <= r < 1");
  FourierSeries s;
  s.cutoff = cutoff;
  for (int k = -cutoff; k <= cutoff; ++k) s.coeffs[k] = kTwoPi * std::pow(r, std::abs(k));
  return s;
}

std::vector<std::pair<double, double>> poisson_samples(double r, int m) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double phi = kTwoPi * j / m;
    out.emplace_back(phi, (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(phi) + r * r));
  }
  return out;
}

std::pair<SparseOperator, SparseOperator> assemble_torus(const FourierSeries& fhat, int p,
                                                         int cutoff) {
  if (fhat.cutoff < 2 * cutoff + p)
    throw std::invalid_argument("assemble_torus: Fourier cutoff must reach 2K + p");

  const Basis left = torus_basis(cutoff, Chirality::L, p);
  const Basis right = torus_basis(cutoff, Chirality::R, p);
  SparseOperator s_l(right, left);
  for (int k = -cutoff; k <= cutoff; ++k) {
    const Rational w_r = dispersion(k, p, Chirality::R);
    for (int kp = -cutoff; kp <= cutoff; ++kp) {
      if (w_r != dispersion(kp, p, Chirality::L)) continue;
      const Complex c = fhat.at(k - kp) / kTwoPi;
      if (c != Complex(0.0))
        s_l.set(BasisLabel::of_mode(torus_mode(k, Chirality::R, p)),
                BasisLabel::of_mode(torus_mode(kp, Chirality::L, p)), c);
    }
  }
  return {s_l, s_l.adjoint()};
}

IndexReport torus_index0(const FourierSeries& fhat, int p, int cutoff,
                         const TruncationPolicy& policy) {
  auto [s_l, s_r] = assemble_torus(fhat, p, cutoff);
  IndexReport rep = chiral_index_odd(s_l, s_r, policy);
  rep.truncation.scenario = "torus";
  return rep;
}

IndexReport torus_index0_stabilized(const std::function<FourierSeries(int)>& series_for,
                                    int p, int cutoff, double mass_threshold, double rel_tol) {
  const auto policy_at = [&](int K) {
    TruncationPolicy pol = TruncationPolicy::defaults(K);
    pol.mass_threshold = mass_threshold;
    pol.rel_tol = rel_tol;
    return pol;
  };
  const OddBuilder builder = [&](int K) { return assemble_torus(series_for(2 * K + p), p, K); };
  IndexReport rep = stabilize_index_odd(builder, cutoff / 2, cutoff, policy_at);
  rep.truncation.scenario = "torus";
  return rep;
}

}  // namespace chindex
