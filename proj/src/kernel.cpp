// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/kernel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <Eigen/SVD>

#include "chindex/block.hpp"

namespace chindex {

KernelResult kernel(const SparseOperator& a, double rel_tol) {
  if (a.rows() == 0 || a.cols() == 0)
    throw std::invalid_argument("kernel: empty operator");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("kernel: rel_tol must lie in (0,1)");

  const Eigen::MatrixXcd m = a.dense();
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    const auto path = std::filesystem::temp_directory_path() / "chindex_svd_failure.csv";
    std::ofstream os(path);
    a.dump_csv(os);
    throw std::runtime_error("kernel: SVD did not converge; matrix dumped to " + path.string());
  }

  const Eigen::Index nsv = svd.singularValues().size();
  const Eigen::Index n = m.cols();
  KernelResult res;
  res.singular_values.assign(svd.singularValues().data(), svd.singularValues().data() + nsv);

  const double sigma_max = nsv > 0 ? res.singular_values.front() : 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  Eigen::Index rank = 0;
  if (sigma_max > 0.0) {
    const double thresh = rel_tol * sigma_max;
    while (rank < nsv && res.singular_values[static_cast<std::size_t>(rank)] > thresh) ++rank;
  }
  res.dimension = static_cast<std::size_t>(n - rank);

  const Eigen::MatrixXcd& v = svd.matrixV();
  res.basis_vectors.reserve(res.dimension);
  for (Eigen::Index j = rank; j < n; ++j) res.basis_vectors.push_back(v.col(j));

  if (rank == n) {
    res.gap_ratio = inf;
  } else if (rank == 0) {
    res.gap_ratio = inf;  // sigma_max == 0: everything is kernel, nothing retained
  } else {
    const double largest_discarded =
        (rank < nsv) ? res.singular_values[static_cast<std::size_t>(rank)] : 0.0;
    res.gap_ratio = largest_discarded > 0.0
                        ? res.singular_values[static_cast<std::size_t>(rank - 1)] / largest_discarded
                        : inf;
  }
  return res;
}

KernelResult blockwise_kernel(const SparseOperator& a, double rel_tol) {
  if (a.cols() == 0) throw std::invalid_argument("blockwise_kernel: empty domain");

  KernelResult res;
  res.dimension = 0;
  res.gap_ratio = std::numeric_limits<double>::infinity();
  const Eigen::Index n = static_cast<Eigen::Index>(a.cols());

  for (const auto& blk : block_decompose(a)) {
    if (blk.domain_positions.empty()) continue;
    if (blk.codomain_positions.empty() || blk.op.nnz() == 0) {
      // structurally zero block: its whole domain is kernel
      res.dimension += blk.domain_positions.size();
      for (std::size_t c : blk.domain_positions) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(static_cast<Eigen::Index>(c)) = 1.0;
        res.basis_vectors.push_back(std::move(v));
      }
      continue;
    }
    const KernelResult sub = kernel(blk.op, rel_tol);
    res.dimension += sub.dimension;
    res.gap_ratio = std::min(res.gap_ratio, sub.gap_ratio);
    res.singular_values.insert(res.singular_values.end(), sub.singular_values.begin(),
                               sub.singular_values.end());
    for (const auto& sv : sub.basis_vectors) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
      for (std::size_t i = 0; i < blk.domain_positions.size(); ++i)
        v(static_cast<Eigen::Index>(blk.domain_positions[i])) = sv(static_cast<Eigen::Index>(i));
      res.basis_vectors.push_back(std::move(v));
    }
  }
  std::sort(res.singular_values.begin(), res.singular_values.end(), std::greater<double>());
  return res;
}

}  // namespace chindex
