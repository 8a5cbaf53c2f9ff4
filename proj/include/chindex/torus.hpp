// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_TORUS_HPP
#define CHINDEX_TORUS_HPP

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "chindex/index_engine.hpp"
#include "chindex/operator.hpp"

namespace chindex {

/// Frequencies of the plane-wave solutions: omega_{k,L} = -k and
/// omega_{k,R} = k for k <= 0, k + p for k > 0.
Rational dispersion(int k, int p, Chirality c);

Mode torus_mode(int k, Chirality c, int p);
Basis torus_basis(int cutoff, Chirality c, int p);

/// Fourier data of a real 2pi-periodic function under the convention
/// f(phi) = (1/2pi) sum_k fhat_k e^{i k phi}.
struct FourierSeries {
  int cutoff{0};
  std::map<int, Complex> coeffs;

  Complex at(int k) const {
    auto it = coeffs.find(k);
    return it == coeffs.end() ? Complex(0.0) : it->second;
  }
  bool real_symmetric(double tol = 1e-12) const;
};

/// fhat_k = (2pi/M) sum_j f(phi_j) e^{-ik phi_j} on a uniform M-point grid,
/// with realness enforced by symmetrization. Requires M >= 8*cutoff.
FourierSeries fourier_coefficients(const std::vector<std::pair<double, double>>& samples,
                                   int cutoff);

/// Closed form for the Poisson kernel (1-r^2)/(1 - 2r cos phi + r^2):
/// fhat_k = 2pi r^{|k|}.
FourierSeries poisson_series(double r, int cutoff);

/// Sampled values of the Poisson kernel on the uniform M-point grid.
std::vector<std::pair<double, double>> poisson_samples(double r, int m);

/// S_L restricted to H_L (rows: right modes, columns: left modes) and its
/// adjoint S_R restricted to H_R. Entry (k_row, k'_col) is fhat_{k-k'}/(2pi)
/// when the frequencies match, a structural zero otherwise; pairing is by
/// frequency matching, never by transcribed case labels. Requires the series
/// cutoff to reach 2K + p.
std::pair<SparseOperator, SparseOperator> assemble_torus(const FourierSeries& fhat, int p,
                                                         int cutoff);

IndexReport torus_index0(const FourierSeries& fhat, int p, int cutoff,
                         const TruncationPolicy& policy);

/// Stabilized run at (cutoff/2, cutoff); the series provider is called with
/// the Fourier cutoff each truncation needs.
IndexReport torus_index0_stabilized(const std::function<FourierSeries(int)>& series_for,
                                    int p, int cutoff, double mass_threshold = 0.5,
                                    double rel_tol = 1e-10);

}  // namespace chindex

#endif
