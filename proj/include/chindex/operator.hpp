// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_OPERATOR_HPP
#define CHINDEX_OPERATOR_HPP

#include <complex>
#include <iosfwd>
#include <map>
#include <utility>

#include <Eigen/Dense>

#include "chindex/basis.hpp"

namespace chindex {

using Complex = std::complex<double>;

/// Finitely supported complex matrix over labeled, ordered bases.
/// Entries with |z| <= drop_tol are never stored, so an absent entry is a
/// structural zero. Rows are indexed by the codomain basis, columns by the
/// domain basis; the basis order fixes the dense layout deterministically.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(Basis codomain, Basis domain, double drop_tol = 0.0);

  static SparseOperator zero(const Basis& codomain, const Basis& domain) {
    return SparseOperator(codomain, domain);
  }
  static SparseOperator identity(const Basis& basis);

  const Basis& domain() const { return domain_; }
  const Basis& codomain() const { return codomain_; }
  std::size_t rows() const { return codomain_.size(); }
  std::size_t cols() const { return domain_.size(); }
  double drop_tol() const { return drop_tol_; }

  std::size_t row_position(const BasisLabel& l) const;
  std::size_t col_position(const BasisLabel& l) const;

  void set(const BasisLabel& row, const BasisLabel& col, Complex v);
  void add(const BasisLabel& row, const BasisLabel& col, Complex v);
  void set_at(std::size_t row, std::size_t col, Complex v);
  void add_at(std::size_t row, std::size_t col, Complex v);

  Complex at(const BasisLabel& row, const BasisLabel& col) const;
  Complex at_position(std::size_t row, std::size_t col) const;
  bool has_entry(const BasisLabel& row, const BasisLabel& col) const;

  const std::map<std::pair<std::size_t, std::size_t>, Complex>& entries() const {
    return entries_;
  }
  std::size_t nnz() const { return entries_.size(); }

  /// Conjugate transpose; domain and codomain bases swap.
  SparseOperator adjoint() const;

  SparseOperator scaled(Complex factor) const;
  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;

  /// Exact sparse product; no spurious fill beyond genuine cancellation.
  static SparseOperator matmul(const SparseOperator& a, const SparseOperator& b);

  Eigen::MatrixXcd dense() const;
  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;

  /// Largest singular value.
  double operator_norm() const;

  double max_abs_entry() const;
  double max_abs_difference(const SparseOperator& o) const;

  /// Debug dump: one line per entry, "row-label,col-label,re,im".
  void dump_csv(std::ostream& os) const;

 private:
  void check_same_shape(const SparseOperator& o) const;

  Basis domain_, codomain_;
  std::map<BasisLabel, std::size_t> domain_pos_, codomain_pos_;
  std::map<std::pair<std::size_t, std::size_t>, Complex> entries_;
  double drop_tol_{0.0};
};

}  // namespace chindex

#endif
