// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/cfs.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include <json.hpp>

namespace chindex {

namespace {

constexpr double kEigTol = 1e-12;        // eigenvalues below this (relative) are rank noise
constexpr double kSelfAdjointTol = 1e-12;
constexpr double kStructureTol = 1e-10;

SparseOperator half_difference(const SparseOperator& x, const SparseOperator& x_gamma) {
  // (x - x*gamma)/2 computed entrywise; exact for integer-valued data
  return (x - x_gamma).scaled(0.5);
}

}  // namespace

PseudoscalarReport validate_pseudoscalar(const CFSPoint& point, int spin_dim) {
  PseudoscalarReport rep;
  std::ostringstream detail;

  rep.selfadjoint_violation = point.x.max_abs_difference(point.x.adjoint());
  if (rep.selfadjoint_violation > kSelfAdjointTol)
    detail << "x not self-adjoint (" << rep.selfadjoint_violation << "); ";

  const Eigen::MatrixXcd xd = point.x.dense();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(xd);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  std::vector<Eigen::Index> nonzero;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = es.eigenvalues()(i);
    if (std::abs(lam) > kEigTol * scale) {
      nonzero.push_back(i);
      (lam > 0 ? rep.n_pos : rep.n_neg)++;
    }
  }
  rep.rank = static_cast<int>(nonzero.size());
  if (rep.n_pos > spin_dim || rep.n_neg > spin_dim) {
    rep.signature_violation = std::max(rep.n_pos, rep.n_neg) - spin_dim;
    detail << "eigenvalue signature (" << rep.n_pos << "+," << rep.n_neg << "-) exceeds spin dimension "
           << spin_dim << "; ";
  }

  // gamma must vanish on the orthogonal complement of range(x)
  Eigen::MatrixXcd p_range =
      Eigen::MatrixXcd::Zero(xd.rows(), xd.cols());
  for (Eigen::Index i : nonzero)
    p_range += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
  const Eigen::MatrixXcd gd = point.gamma.dense();
  const Eigen::MatrixXcd residual = gd * (Eigen::MatrixXcd::Identity(xd.rows(), xd.cols()) - p_range);
  rep.range_violation = residual.norm();
  if (rep.range_violation > kStructureTol)
    detail << "gamma does not vanish on range(x)^perp (" << rep.range_violation << "); ";

  // x gamma = -gamma^* x
  const Eigen::MatrixXcd intertwine = xd * gd + gd.adjoint() * xd;
  rep.intertwine_violation = intertwine.cwiseAbs().maxCoeff();
  if (rep.intertwine_violation > kStructureTol)
    detail << "x*gamma != -gamma^* x (" << rep.intertwine_violation << "); ";

  rep.detail = detail.str();
  rep.ok = rep.detail.empty();
  return rep;
}

SparseOperator assemble_signature(const DiscreteCFS& sys) {
  const Basis basis = sequence_basis(sys.hilbert_dim);
  SparseOperator s(basis, basis);
  for (const auto& pt : sys.points) {
    if (pt.x.rows() != basis.size() || pt.x.cols() != basis.size())
      throw std::invalid_argument("assemble_signature: point dimension mismatch");
    s = s + pt.x.scaled(-pt.weight);
  }
  return s;
}

std::pair<SparseOperator, SparseOperator> assemble_chiral(const DiscreteCFS& sys) {
  const Basis basis = sequence_basis(sys.hilbert_dim);
  SparseOperator s_l(basis, basis);
  for (const auto& pt : sys.points) {
    if (pt.x.rows() != basis.size() || pt.x.cols() != basis.size())
      throw std::invalid_argument("assemble_chiral: point dimension mismatch");
    const SparseOperator x_gamma = SparseOperator::matmul(pt.x, pt.gamma);
    // x * chi_L(x) = (x - x*gamma)/2
    s_l = s_l + half_difference(pt.x, x_gamma).scaled(-pt.weight);
  }
  return {s_l, s_l.adjoint()};
}

SparseOperator assemble_chiral_right(const DiscreteCFS& sys) {
  const Basis basis = sequence_basis(sys.hilbert_dim);
  SparseOperator s_r(basis, basis);
  for (const auto& pt : sys.points) {
    const SparseOperator x_gamma = SparseOperator::matmul(pt.x, pt.gamma);
    // x * chi_R(x) = (x + x*gamma)/2
    s_r = s_r + (pt.x + x_gamma).scaled(-0.5 * pt.weight);
  }
  return s_r;
}

DiscreteCFS build_shift_cfs(int p, long long n) {
  if (p <= 0) throw std::invalid_argument("build_shift_cfs: p must be positive");
  if (n <= p + 2) throw std::invalid_argument("build_shift_cfs: need N > p + 2");

  DiscreteCFS sys;
  sys.hilbert_dim = n;
  sys.spin_dim = 1;
  const Basis basis = sequence_basis(n);
  for (long long k = 1; k + p <= n; ++k) {
    CFSPoint pt;
    pt.weight = 1.0;
    pt.x = SparseOperator(basis, basis);
    pt.x.set(BasisLabel::seq(k), BasisLabel::seq(k + p), -1.0);
    pt.x.set(BasisLabel::seq(k + p), BasisLabel::seq(k), -1.0);
    pt.gamma = SparseOperator(basis, basis);
    pt.gamma.set(BasisLabel::seq(k), BasisLabel::seq(k), 1.0);
    pt.gamma.set(BasisLabel::seq(k + p), BasisLabel::seq(k + p), -1.0);
    sys.points.push_back(std::move(pt));
  }
  return sys;
}

DiscreteCFS negate_gamma(DiscreteCFS sys) {
  for (auto& pt : sys.points) pt.gamma = pt.gamma.scaled(-1.0);
  return sys;
}

namespace {

nlohmann::json triplets(const SparseOperator& op) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [rc, v] : op.entries()) {
    arr.push_back({op.codomain()[rc.first].seq_index(), op.domain()[rc.second].seq_index(),
                   v.real(), v.imag()});
  }
  return arr;
}

SparseOperator op_from_triplets(const nlohmann::json& arr, const Basis& basis) {
  SparseOperator op(basis, basis);
  for (const auto& t : arr) {
    if (!t.is_array() || t.size() != 4)
      throw std::invalid_argument("cfs_from_json: triplet must be [row, col, re, im]");
    op.set(BasisLabel::seq(t[0].get<long long>()), BasisLabel::seq(t[1].get<long long>()),
           Complex(t[2].get<double>(), t[3].get<double>()));
  }
  return op;
}

}  // namespace

std::string cfs_to_json(const DiscreteCFS& sys) {
  nlohmann::json j;
  j["hilbert_dim"] = sys.hilbert_dim;
  j["spin_dim"] = sys.spin_dim;
  j["points"] = nlohmann::json::array();
  for (const auto& pt : sys.points) {
    nlohmann::json pj;
    pj["weight"] = pt.weight;
    pj["x"] = triplets(pt.x);
    pj["gamma"] = triplets(pt.gamma);
    j["points"].push_back(std::move(pj));
  }
  return j.dump(2);
}

DiscreteCFS cfs_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  for (const auto& [key, val] : j.items())
    if (key != "hilbert_dim" && key != "spin_dim" && key != "points")
      throw std::invalid_argument("cfs_from_json: unknown key '" + key + "'");
  DiscreteCFS sys;
  sys.hilbert_dim = j.at("hilbert_dim").get<long long>();
  sys.spin_dim = j.at("spin_dim").get<int>();
  if (sys.hilbert_dim <= 0) throw std::invalid_argument("cfs_from_json: hilbert_dim must be positive");
  const Basis basis = sequence_basis(sys.hilbert_dim);
  for (const auto& pj : j.at("points")) {
    for (const auto& [key, val] : pj.items())
      if (key != "weight" && key != "x" && key != "gamma")
        throw std::invalid_argument("cfs_from_json: unknown point key '" + key + "'");
    CFSPoint pt;
    pt.weight = pj.at("weight").get<double>();
    if (!(pt.weight > 0)) throw std::invalid_argument("cfs_from_json: weights must be positive");
    pt.x = op_from_triplets(pj.at("x"), basis);
    pt.gamma = op_from_triplets(pj.at("gamma"), basis);
    sys.points.push_back(std::move(pt));
  }
  return sys;
}

DiscreteCFS cfs_from_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cfs_from_json_file: cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return cfs_from_json(ss.str());
}

}  // namespace chindex
