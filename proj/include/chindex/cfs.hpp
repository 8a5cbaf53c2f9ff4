// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_CFS_HPP
#define CHINDEX_CFS_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "chindex/operator.hpp"

namespace chindex {

/// One space-time point of a discrete causal fermion system: a weighted
/// finite-rank self-adjoint operator together with its pseudoscalar.
struct CFSPoint {
  SparseOperator x;
  SparseOperator gamma;
  double weight{1.0};
};

struct DiscreteCFS {
  long long hilbert_dim{0};
  int spin_dim{1};
  std::vector<CFSPoint> points;
};

struct PseudoscalarReport {
  bool ok{false};
  double selfadjoint_violation{0.0};   // max |x - x*| entry
  double signature_violation{0.0};     // excess eigenvalue count weight
  double range_violation{0.0};         // ||gamma (1 - P_range)||
  double intertwine_violation{0.0};    // max |x gamma + gamma* x| entry
  int rank{0};
  int n_pos{0};
  int n_neg{0};
  std::string detail;
};

/// Checks the defining conditions of a pseudoscalar point: x self-adjoint of
/// rank <= 2n with at most n positive and n negative eigenvalues, gamma
/// vanishing on the orthogonal complement of range(x), and
/// x gamma = -gamma^* x. Diagnostic only, never throws on violations.
PseudoscalarReport validate_pseudoscalar(const CFSPoint& point, int spin_dim);

/// -sum_points weight * x ; self-adjoint by construction.
SparseOperator assemble_signature(const DiscreteCFS& sys);

/// Chiral signature operators: S_L = -sum weight * x * chi_L(x) with the
/// pointwise projector chi_L(x) = (1 - gamma(x))/2, and S_R = S_L^*. The sign
/// in chi_L is fixed by requiring that the shift family reproduces
/// S_L u = (u_2, u_3, ...).
std::pair<SparseOperator, SparseOperator> assemble_chiral(const DiscreteCFS& sys);

/// Independent assembly of the right-handed operator via chi_R(x) =
/// (1 + gamma(x))/2, used to cross-check adjoint(S_L) == S_R.
SparseOperator assemble_chiral_right(const DiscreteCFS& sys);

/// The shift family: points k = 1..N-p with
///   x_k u  = -u_{k+p} e_k - u_k e_{k+p},
///   gamma(x_k) u = u_k e_k - u_{k+p} e_{k+p},
/// counting-measure weights. Requires N > p + 2.
DiscreteCFS build_shift_cfs(int p, long long n);

/// Flips gamma -> -gamma at every point (swaps the chiral roles).
DiscreteCFS negate_gamma(DiscreteCFS sys);

/// JSON round-trip of a discrete system:
/// {hilbert_dim, spin_dim, points:[{weight, x:[[row,col,re,im],..], gamma:[..]}]}
std::string cfs_to_json(const DiscreteCFS& sys);
DiscreteCFS cfs_from_json(const std::string& text);
DiscreteCFS cfs_from_json_file(const std::string& path);

}  // namespace chindex

#endif
