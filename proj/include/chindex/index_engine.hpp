// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_INDEX_ENGINE_HPP
#define CHINDEX_INDEX_ENGINE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chindex/kernel.hpp"
#include "chindex/operator.hpp"

namespace chindex {

/// How a truncated operator is cut off and how cutoff artifacts are filtered.
/// Kernel vectors whose squared-coefficient mass on boundary-band labels
/// (|k| > K - boundary_band for modes, index > N - boundary_band for
/// sequence labels) exceeds mass_threshold count as truncation artifacts.
struct TruncationPolicy {
  int K{0};
  int boundary_band{0};
  double mass_threshold{0.5};
  double rel_tol{1e-10};

  static TruncationPolicy defaults(int K) {
    TruncationPolicy p;
    p.K = K;
    p.boundary_band = std::max(5, K / 10);
    return p;
  }
  void validate() const;
};

/// Gap ratio below which a numerical kernel is considered untrustworthy.
inline constexpr double kGapIllConditioned = 1e3;

struct IndexReport {
  int dim_ker_L{0};
  int dim_ker_R{0};
  std::optional<long long> index;  // absent whenever finite is false
  bool finite{false};
  int boundary_discarded_L{0};
  int boundary_discarded_R{0};
  std::pair<double, double> gap_ratios{0.0, 0.0};
  long long zero_blocks{0};
  bool ill_conditioned{false};
  std::string note;

  struct Truncation {
    std::string scenario;
    int K{0};
    int boundary_band{0};
    double mass_threshold{0.5};
    double rel_tol{1e-10};
    // filled by the stabilized runs
    std::optional<int> K_coarse;
    std::optional<long long> zero_blocks_coarse;
  } truncation;

  std::vector<double> sv_tail_L, sv_tail_R;  // smallest singular values, ascending

  // retained kernel vectors (coefficients over the respective domain basis)
  std::vector<Eigen::VectorXcd> kernel_vectors_L, kernel_vectors_R;
  std::vector<double> kernel_masses_L, kernel_masses_R;  // boundary masses of kept vectors
};

/// Boundary-band mask over a basis, one flag per label.
std::vector<char> boundary_mask(const Basis& basis, const TruncationPolicy& policy);

/// Noether index of an endomorphism representation: filtered kernel of S_L
/// minus filtered kernel of S_L^*. Within the numerical null space the basis
/// is rotated to diagonalize the boundary-mass form, so artifact counts do
/// not depend on the arbitrary rotation an SVD picks in degenerate kernels.
IndexReport noether_index(const SparseOperator& s_l, const TruncationPolicy& policy);

/// Massless odd case: S_L restricted maps the left-handed basis to the
/// right-handed one and S_R restricted the reverse; each basis must be
/// chirality-pure.
IndexReport chiral_index_odd(const SparseOperator& s_l_restricted,
                             const SparseOperator& s_r_restricted,
                             const TruncationPolicy& policy);

using EndoBuilder = std::function<SparseOperator(int K)>;
using OddBuilder = std::function<std::pair<SparseOperator, SparseOperator>(int K)>;
using PolicyFactory = std::function<TruncationPolicy(int K)>;

/// Runs the index at two truncations K1 < K2 (K2 >= 2 K1) and returns the K2
/// report; finite stays true only if indices and filtered kernel dimensions
/// agree and the zero-block census did not grow.
IndexReport stabilize_runs(const std::function<IndexReport(int)>& run_at, int K1, int K2);
IndexReport stabilize_index(const EndoBuilder& builder, int K1, int K2,
                            const PolicyFactory& policy_at);
IndexReport stabilize_index_odd(const OddBuilder& builder, int K1, int K2,
                                const PolicyFactory& policy_at);

/// Largest principal angle (radians) between the span of the given vectors
/// and the coordinate span of the listed domain positions.
double subspace_angle(const std::vector<Eigen::VectorXcd>& vectors,
                      const std::vector<std::size_t>& coordinate_positions,
                      std::size_t ambient_dim);

}  // namespace chindex

#endif
