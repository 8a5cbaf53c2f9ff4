// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_SPIRAL_HPP
#define CHINDEX_SPIRAL_HPP

#include <cstdint>
#include <map>

#include "chindex/index_engine.hpp"
#include "chindex/operator.hpp"
#include "chindex/trigpoly.hpp"

namespace chindex {

/// Two chiral components of a transformed plane wave.
struct TrigSpinor {
  TrigPoly left;
  TrigPoly right;
};

/// V e_{k,c}: the main component at the dispersion frequency plus two
/// opposite-chirality sidebands shifted by +-1/3 in frequency, with
/// amplitude i nu / 4pi.
TrigSpinor v_conjugate_mode(int k, Chirality c, int p, double nu);

/// Fourier data of the deformation mu(t,phi) = 1 + mu_hor + mu_vert:
///   mu_hor  = [sum_{k>=1} (a_k e^{ik phi} + conj(a_{-k}) e^{-ik phi})]
///             * (1 - e^{2it/3} - e^{-2it/3})
///   mu_vert = sum_n e^{int} (b_n e^{it/3} + conj(b_{-n}) e^{-it/3})
/// Realness of mu requires a_k == a_{-k}; the b series is real for any b_n.
struct MuCoefficients {
  std::map<int, Complex> a;  // k != 0
  std::map<int, Complex> b;  // n in Z
  double nu{0.3};
};

struct MuDiagnostics {
  double grid_min{0.0};
  double argmin_t{0.0};
  double argmin_phi{0.0};
  double coeff_margin{0.0};  // 1 - sum of non-constant coefficient magnitudes
};

/// Builds mu as a real TrigPoly; throws if the realness invariant fails or
/// the 96x96 sample-grid minimum is non-positive (message names the point).
TrigPoly build_mu(const MuCoefficients& co);
MuDiagnostics mu_diagnostics(const TrigPoly& mu);

/// Matrix of S_L (or S_R) on the full 2(2K+1)-mode basis:
///   (e_{k,c} | S_L e_{k',c'}) = int int conj(right(V e_{k,c}))
///                               * left(V e_{k',c'}) * mu  dphi dt,
/// evaluated by exact frequency bookkeeping; entries that no mu frequency
/// matches are structural zeros. The chi_R route swaps the component roles.
/// adjoint(assemble_spiral_sl(...)) equals assemble_spiral_sr(...) bitwise.
SparseOperator assemble_spiral_sl(const MuCoefficients& co, int p, int cutoff);
SparseOperator assemble_spiral_sr(const MuCoefficients& co, int p, int cutoff);

Basis spiral_basis(int cutoff, int p);

/// Boundary band for spiral truncations. Wider than the generic default:
/// the seeded coefficient list is cut off so that arm breaks fall inside
/// this band at the stabilization size 2K.
int spiral_boundary_band(int cutoff);
TruncationPolicy spiral_policy(int cutoff);

/// Deterministic seeded coefficients: |a_k| = |b_n| = amplitude*decay^{|k|},
/// phases from a splitmix64 stream, a mirrored (a_{-k} = a_k) so mu is real.
/// The list length is tied to the stabilization size 2K so that every
/// emitted coupling stays well above the SVD rank threshold.
MuCoefficients seeded_mu_coefficients(int p, int cutoff, double nu, std::uint64_t seed,
                                      double amplitude = 0.05, double decay = 0.7);

/// Stabilized Noether index at truncations (K, 2K).
IndexReport spiral_index(const MuCoefficients& co, int p, int cutoff,
                         double mass_threshold = 0.5, double rel_tol = 1e-10);

}  // namespace chindex

#endif
