// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <Eigen/QR>

#include "chindex/block.hpp"
#include "chindex/kernel.hpp"
#include "chindex/operator.hpp"
#include "test_helpers.hpp"

using namespace chindex;
using chindex::testing::Rng;

namespace {

SparseOperator random_sparse(Rng& rng, std::size_t n, double fill) {
  const Basis basis = sequence_basis(static_cast<long long>(n));
  SparseOperator a(basis, basis);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      if (rng.uniform() < fill) a.set_at(r, c, rng.gaussian());
  return a;
}

// dense block with prescribed singular values, written into `op` at the given
// row/col positions
void put_block(SparseOperator& op, Rng& rng, const std::vector<std::size_t>& rows,
               const std::vector<std::size_t>& cols, const std::vector<double>& sigmas) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXcd g(n, n), h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = rng.gaussian();
      h(i, j) = rng.gaussian();
    }
  const Eigen::MatrixXcd u = Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ();
  const Eigen::MatrixXcd v = Eigen::HouseholderQR<Eigen::MatrixXcd>(h).householderQ();
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = sigmas[static_cast<std::size_t>(i)];
  const Eigen::MatrixXcd block = u * s.asDiagonal() * v.adjoint();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      op.set_at(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)], block(i, j));
}

}  // namespace

TEST_CASE("adjoint of a 1x1 matrix conjugates") {
  const Basis basis = {BasisLabel::seq(1)};
  SparseOperator a(basis, basis);
  a.set_at(0, 0, Complex(0.0, 1.0));
  CHECK(a.adjoint().at_position(0, 0) == Complex(0.0, -1.0));
}

TEST_CASE("adjoint of the shift matrix transposes it") {
  const Basis basis = sequence_basis(6);
  SparseOperator a(basis, basis);
  for (long long k = 1; k < 6; ++k) a.set(BasisLabel::seq(k), BasisLabel::seq(k + 1), 1.0);
  const SparseOperator at = a.adjoint();
  for (long long k = 1; k < 6; ++k) {
    CHECK(at.at(BasisLabel::seq(k + 1), BasisLabel::seq(k)) == Complex(1.0));
    CHECK_FALSE(at.has_entry(BasisLabel::seq(k), BasisLabel::seq(k + 1)));
  }
}

TEST_CASE("adjoint is an involution") {
  Rng rng(7);
  const SparseOperator a = random_sparse(rng, 12, 0.3);
  CHECK(a.adjoint().adjoint().max_abs_difference(a) == 0.0);
}

TEST_CASE("sesquilinearity: <u, A v> = conj(<v, A* u>)") {
  Rng rng(11);
  const SparseOperator a = random_sparse(rng, 15, 0.25);
  const SparseOperator at = a.adjoint();
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::VectorXcd u = testing::random_vector(rng, 15);
    const Eigen::VectorXcd v = testing::random_vector(rng, 15);
    const Complex lhs = u.dot(a.apply(v));
    const Complex rhs = std::conj(v.dot(at.apply(u)));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
  }
}

TEST_CASE("kernel of the zero matrix is everything") {
  const Basis basis = sequence_basis(3);
  const SparseOperator z(basis, basis);
  const KernelResult ker = kernel(z, 1e-10);
  CHECK(ker.dimension == 3);
  CHECK(std::isinf(ker.gap_ratio));
}

TEST_CASE("kernel of the identity is trivial") {
  const SparseOperator id = SparseOperator::identity(sequence_basis(4));
  const KernelResult ker = kernel(id, 1e-10);
  CHECK(ker.dimension == 0);
  CHECK(std::isinf(ker.gap_ratio));
}

TEST_CASE("degenerate 2x2 pairing block has a two-dimensional kernel") {
  // (1/4 pi i k) [[0, e^{2ikT}-1], [e^{-2ikT}-1, 0]] at k = 1, T = pi:
  // both entries vanish identically
  const Basis basis = sequence_basis(2);
  SparseOperator block(basis, basis);
  const Complex upper = (std::polar(1.0, 2.0 * testing::kPi) - 1.0) /
                        Complex(0.0, 4.0 * testing::kPi);
  if (upper != Complex(0.0)) block.set_at(0, 1, upper);
  // e^{2 i pi} rounds to 1 + O(1e-16); treat the residue like the assembler
  // does and keep the structural zero
  CHECK(std::abs(upper) < 1e-15);
  const KernelResult ker = kernel(SparseOperator(basis, basis), 1e-10);
  CHECK(ker.dimension == 2);
}

TEST_CASE("kernel dimension equals domain size minus numerical rank") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const SparseOperator a = random_sparse(rng, 10, 0.4);
    const double rel_tol = 1e-10;
    const KernelResult ker = kernel(a, rel_tol);
    std::size_t rank = 0;
    const double sigma_max = ker.singular_values.empty() ? 0.0 : ker.singular_values.front();
    for (double s : ker.singular_values)
      if (sigma_max > 0.0 && s > rel_tol * sigma_max) ++rank;
    CHECK(ker.dimension == a.cols() - rank);
  }
}

TEST_CASE("kernel vectors are unit norm and orthogonal") {
  Rng rng(31);
  const Basis basis = sequence_basis(8);
  SparseOperator a(basis, basis);
  put_block(a, rng, {0, 1, 2, 3, 4, 5, 6, 7}, {0, 1, 2, 3, 4, 5, 6, 7},
            {2.0, 1.5, 1.0, 0.8, 0.6, 0.0, 0.0, 0.0});
  const KernelResult ker = kernel(a, 1e-10);
  REQUIRE(ker.dimension == 3);
  for (std::size_t i = 0; i < ker.basis_vectors.size(); ++i) {
    CHECK(std::abs(ker.basis_vectors[i].norm() - 1.0) < 1e-8);
    for (std::size_t j = i + 1; j < ker.basis_vectors.size(); ++j)
      CHECK(std::abs(ker.basis_vectors[i].dot(ker.basis_vectors[j])) < 1e-8);
  }
}

TEST_CASE("rectangular kernel: wide matrix") {
  // 2x4 matrix of rank 2: kernel dimension 4 - 2 = 2
  Basis dom = sequence_basis(4), codom = sequence_basis(2);
  SparseOperator a(codom, dom);
  a.set_at(0, 0, 1.0);
  a.set_at(1, 1, 2.0);
  const KernelResult ker = kernel(a, 1e-10);
  CHECK(ker.dimension == 2);
  for (const auto& v : ker.basis_vectors) CHECK(a.apply(v).norm() < 1e-12);
}

TEST_CASE("block_decompose: diagonal matrix splits into singletons") {
  const Basis basis = sequence_basis(3);
  SparseOperator a(basis, basis);
  for (std::size_t i = 0; i < 3; ++i) a.set_at(i, i, Complex(1.0 + double(i)));
  const auto blocks = block_decompose(a);
  REQUIRE(blocks.size() == 3);
  for (const auto& b : blocks) {
    CHECK(b.domain_positions.size() == 1);
    CHECK(b.codomain_positions.size() == 1);
    CHECK(b.op.nnz() == 1);
  }
}

TEST_CASE("block_decompose: shift on 5 labels is one connected block") {
  // sparsity graph over the (shared) labels is the path 1-2-3-4-5
  const Basis basis = sequence_basis(5);
  SparseOperator a(basis, basis);
  for (long long k = 1; k < 5; ++k) a.set(BasisLabel::seq(k), BasisLabel::seq(k + 1), 1.0);
  const auto blocks = block_decompose(a);
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].domain_positions.size() == 5);
  CHECK(blocks[0].codomain_positions.size() == 5);
}

TEST_CASE("block_decompose partitions both bases and reassembles the input") {
  Rng rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    const SparseOperator a = random_sparse(rng, 14, 0.08);
    const auto blocks = block_decompose(a);
    std::vector<char> dom_seen(a.cols(), 0), codom_seen(a.rows(), 0);
    std::size_t entries = 0;
    for (const auto& b : blocks) {
      for (std::size_t c : b.domain_positions) {
        CHECK_FALSE(dom_seen[c]);
        dom_seen[c] = 1;
      }
      for (std::size_t r : b.codomain_positions) {
        CHECK_FALSE(codom_seen[r]);
        codom_seen[r] = 1;
      }
      for (const auto& [rc, v] : b.op.entries()) {
        CHECK(a.at_position(b.codomain_positions[rc.first], b.domain_positions[rc.second]) == v);
        ++entries;
      }
    }
    for (char s : dom_seen) CHECK(s);
    for (char s : codom_seen) CHECK(s);
    CHECK(entries == a.nnz());
  }
}

TEST_CASE("blockwise kernels add up to the global kernel") {
  Rng rng(53);
  for (int trial = 0; trial < 50; ++trial) {
    // random partition of 12 labels into blocks with well-separated spectra
    const Basis basis = sequence_basis(12);
    SparseOperator a(basis, basis);
    std::vector<std::size_t> perm(12);
    for (std::size_t i = 0; i < 12; ++i) perm[i] = i;
    for (std::size_t i = 11; i > 0; --i)
      std::swap(perm[i], perm[static_cast<std::size_t>(rng.integer(0, static_cast<int>(i)))]);
    std::size_t used = 0;
    while (used < 12) {
      const std::size_t size =
          std::min<std::size_t>(static_cast<std::size_t>(rng.integer(1, 4)), 12 - used);
      std::vector<std::size_t> ids(perm.begin() + static_cast<long>(used),
                                   perm.begin() + static_cast<long>(used + size));
      std::vector<double> sigmas;
      for (std::size_t i = 0; i < size; ++i)
        sigmas.push_back(rng.uniform() < 0.35 ? 0.0 : rng.uniform(0.5, 2.0));
      put_block(a, rng, ids, ids, sigmas);
      used += size;
    }
    const KernelResult global = kernel(a, 1e-10);
    CHECK(global.gap_ratio >= 1e3);
    std::size_t blockwise = 0;
    for (const auto& b : block_decompose(a)) {
      if (b.op.cols() == 0) continue;
      if (b.op.rows() == 0) {
        blockwise += b.op.cols();
        continue;
      }
      blockwise += kernel(b.op, 1e-10).dimension;
    }
    CHECK(blockwise == global.dimension);
  }
}

TEST_CASE("entries outside the declared bases are rejected") {
  const Basis basis = sequence_basis(3);
  SparseOperator a(basis, basis);
  CHECK_THROWS(a.set(BasisLabel::seq(9), BasisLabel::seq(1), 1.0));
  CHECK_THROWS((void)a.at(BasisLabel::seq(1), BasisLabel::seq(9)));
}

TEST_CASE("duplicate labels in one basis are rejected") {
  Basis bad = {BasisLabel::seq(1), BasisLabel::seq(1)};
  CHECK_THROWS(SparseOperator(bad, bad));
}
