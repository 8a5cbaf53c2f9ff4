// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_KERNEL_HPP
#define CHINDEX_KERNEL_HPP

#include <vector>

#include "chindex/operator.hpp"

namespace chindex {

/// Numerical kernel of an operator, from a full dense SVD.
struct KernelResult {
  std::size_t dimension{0};
  std::vector<Eigen::VectorXcd> basis_vectors;  // unit norm, pairwise orthogonal
  std::vector<double> singular_values;          // descending, length = min(rows, cols)
  double gap_ratio{0.0};  // smallest retained sigma / largest discarded, inf if none discarded
};

/// Singular values below rel_tol * sigma_max count as zero; the kernel basis
/// consists of the corresponding right-singular vectors (plus the null
/// directions a wide matrix has beyond min(rows, cols)). rel_tol must lie in
/// (0, 1). SVD non-convergence is a hard error carrying a matrix dump path.
KernelResult kernel(const SparseOperator& a, double rel_tol);

/// Kernel extracted per invariant block of the sparsity graph, each block
/// thresholded against its own largest singular value. For operators whose
/// blocks carry widely different scales (geometrically decaying Fourier
/// pairings) this is the reading under which "dim ker" is stable in the
/// truncation; it agrees with the global kernel whenever the spectrum is
/// well-separated. Reported gap_ratio is the worst block's; singular values
/// are the concatenation, descending.
KernelResult blockwise_kernel(const SparseOperator& a, double rel_tol);

}  // namespace chindex

#endif
