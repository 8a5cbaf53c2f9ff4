// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/operator.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <Eigen/SVD>

namespace chindex {

namespace {

std::map<BasisLabel, std::size_t> position_map(const Basis& basis, const char* which) {
  std::map<BasisLabel, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!pos.emplace(basis[i], i).second)
      throw std::invalid_argument(std::string("SparseOperator: duplicate label in ") +
                                  which + " basis: " + basis[i].str());
  }
  return pos;
}

}  // namespace

SparseOperator::SparseOperator(Basis codomain, Basis domain, double drop_tol)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), drop_tol_(drop_tol) {
  domain_pos_ = position_map(domain_, "domain");
  codomain_pos_ = position_map(codomain_, "codomain");
}

SparseOperator SparseOperator::identity(const Basis& basis) {
  SparseOperator id(basis, basis);
  for (std::size_t i = 0; i < basis.size(); ++i) id.set_at(i, i, 1.0);
  return id;
}

std::size_t SparseOperator::row_position(const BasisLabel& l) const {
  auto it = codomain_pos_.find(l);
  if (it == codomain_pos_.end())
    throw std::invalid_argument("SparseOperator: label not in codomain basis: " + l.str());
  return it->second;
}

std::size_t SparseOperator::col_position(const BasisLabel& l) const {
  auto it = domain_pos_.find(l);
  if (it == domain_pos_.end())
    throw std::invalid_argument("SparseOperator: label not in domain basis: " + l.str());
  return it->second;
}

void SparseOperator::set(const BasisLabel& row, const BasisLabel& col, Complex v) {
  set_at(row_position(row), col_position(col), v);
}

void SparseOperator::add(const BasisLabel& row, const BasisLabel& col, Complex v) {
  add_at(row_position(row), col_position(col), v);
}

void SparseOperator::set_at(std::size_t row, std::size_t col, Complex v) {
  if (row >= rows() || col >= cols())
    throw std::out_of_range("SparseOperator: position out of range");
  if (std::abs(v) <= drop_tol_)
    entries_.erase({row, col});
  else
    entries_[{row, col}] = v;
}

void SparseOperator::add_at(std::size_t row, std::size_t col, Complex v) {
  if (row >= rows() || col >= cols())
    throw std::out_of_range("SparseOperator: position out of range");
  auto it = entries_.find({row, col});
  const Complex sum = (it == entries_.end()) ? v : it->second + v;
  set_at(row, col, sum);
}

Complex SparseOperator::at(const BasisLabel& row, const BasisLabel& col) const {
  return at_position(row_position(row), col_position(col));
}

Complex SparseOperator::at_position(std::size_t row, std::size_t col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Complex(0.0) : it->second;
}

bool SparseOperator::has_entry(const BasisLabel& row, const BasisLabel& col) const {
  return entries_.count({row_position(row), col_position(col)}) > 0;
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator a(domain_, codomain_, drop_tol_);
  for (const auto& [rc, v] : entries_) a.set_at(rc.second, rc.first, std::conj(v));
  return a;
}

SparseOperator SparseOperator::scaled(Complex factor) const {
  SparseOperator s(codomain_, domain_, drop_tol_);
  for (const auto& [rc, v] : entries_) s.set_at(rc.first, rc.second, factor * v);
  return s;
}

void SparseOperator::check_same_shape(const SparseOperator& o) const {
  if (domain_ != o.domain_ || codomain_ != o.codomain_)
    throw std::invalid_argument("SparseOperator: basis mismatch");
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  check_same_shape(o);
  SparseOperator s = *this;
  for (const auto& [rc, v] : o.entries_) s.add_at(rc.first, rc.second, v);
  return s;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
  check_same_shape(o);
  SparseOperator s = *this;
  for (const auto& [rc, v] : o.entries_) s.add_at(rc.first, rc.second, -v);
  return s;
}

SparseOperator SparseOperator::matmul(const SparseOperator& a, const SparseOperator& b) {
  if (a.domain_ != b.codomain_)
    throw std::invalid_argument("SparseOperator::matmul: inner bases differ");
  // column-indexed view of a for cache of nonzero columns
  std::map<std::size_t, std::map<std::size_t, Complex>> a_by_col;
  for (const auto& [rc, v] : a.entries_) a_by_col[rc.second][rc.first] = v;
  SparseOperator c(a.codomain_, b.domain_, a.drop_tol_);
  for (const auto& [rc, vb] : b.entries_) {
    auto it = a_by_col.find(rc.first);
    if (it == a_by_col.end()) continue;
    for (const auto& [row, va] : it->second) c.add_at(row, rc.second, va * vb);
  }
  return c;
}

Eigen::MatrixXcd SparseOperator::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows()),
                                              static_cast<Eigen::Index>(cols()));
  for (const auto& [rc, v] : entries_)
    m(static_cast<Eigen::Index>(rc.first), static_cast<Eigen::Index>(rc.second)) = v;
  return m;
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
  if (v.size() != static_cast<Eigen::Index>(cols()))
    throw std::invalid_argument("SparseOperator::apply: size mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows()));
  for (const auto& [rc, w] : entries_)
    out(static_cast<Eigen::Index>(rc.first)) += w * v(static_cast<Eigen::Index>(rc.second));
  return out;
}

double SparseOperator::operator_norm() const {
  if (entries_.empty()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense());
  return svd.singularValues()(0);
}

double SparseOperator::max_abs_entry() const {
  double m = 0.0;
  for (const auto& [rc, v] : entries_) m = std::max(m, std::abs(v));
  return m;
}

double SparseOperator::max_abs_difference(const SparseOperator& o) const {
  check_same_shape(o);
  double m = 0.0;
  for (const auto& [rc, v] : entries_) m = std::max(m, std::abs(v - o.at_position(rc.first, rc.second)));
  for (const auto& [rc, v] : o.entries_) m = std::max(m, std::abs(v - at_position(rc.first, rc.second)));
  return m;
}

void SparseOperator::dump_csv(std::ostream& os) const {
  char buf[64];
  for (const auto& [rc, v] : entries_) {
    os << codomain_[rc.first].str() << ',' << domain_[rc.second].str() << ',';
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", v.real(), v.imag());
    os << buf;
  }
}

}  // namespace chindex
