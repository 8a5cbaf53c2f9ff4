// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/index_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "chindex/block.hpp"

namespace chindex {

void TruncationPolicy::validate() const {
  if (K <= 0) throw std::invalid_argument("TruncationPolicy: K must be positive");
  if (boundary_band <= 0 || boundary_band >= K)
    throw std::invalid_argument("TruncationPolicy: need 0 < boundary_band < K");
  if (!(mass_threshold > 0.0 && mass_threshold < 1.0))
    throw std::invalid_argument("TruncationPolicy: mass_threshold must lie in (0,1)");
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("TruncationPolicy: rel_tol must lie in (0,1)");
}

std::vector<char> boundary_mask(const Basis& basis, const TruncationPolicy& policy) {
  long long max_seq = 0;
  for (const auto& l : basis)
    if (!l.is_mode()) max_seq = std::max(max_seq, l.seq_index());

  std::vector<char> mask(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_mode()) {
      mask[i] = std::abs(basis[i].mode().k) > policy.K - policy.boundary_band;
    } else {
      mask[i] = basis[i].seq_index() > max_seq - policy.boundary_band;
    }
  }
  return mask;
}

namespace {

struct FilteredKernel {
  int kept{0};
  int discarded{0};
  double gap_ratio{0.0};
  std::vector<Eigen::VectorXcd> vectors;  // kept vectors
  std::vector<double> masses;             // their boundary masses
  std::vector<double> sv_tail;            // ascending
};

// Rotate the null-space basis to diagonalize the boundary-mass form, then
// classify each eigen-direction by its mass. The counts are independent of
// the rotation the SVD happened to return.
FilteredKernel filter_kernel(const KernelResult& ker, const std::vector<char>& mask,
                             double mass_threshold) {
  FilteredKernel out;
  out.gap_ratio = ker.gap_ratio;
  const std::size_t tail = std::min<std::size_t>(8, ker.singular_values.size());
  for (std::size_t i = 0; i < tail; ++i)
    out.sv_tail.push_back(ker.singular_values[ker.singular_values.size() - 1 - i]);

  const std::size_t p = ker.basis_vectors.size();
  if (p == 0) return out;
  const std::size_t n = static_cast<std::size_t>(ker.basis_vectors.front().size());

  Eigen::MatrixXcd v(n, p);
  for (std::size_t j = 0; j < p; ++j) v.col(static_cast<Eigen::Index>(j)) = ker.basis_vectors[j];

  Eigen::MatrixXcd vb = v;
  for (std::size_t i = 0; i < n; ++i)
    if (!mask[i]) vb.row(static_cast<Eigen::Index>(i)).setZero();
  const Eigen::MatrixXcd gram = vb.adjoint() * vb;  // boundary-mass form on the null space

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("filter_kernel: eigensolver failed");
  const Eigen::MatrixXcd rotated = v * es.eigenvectors();
  for (std::size_t j = 0; j < p; ++j) {
    const double mass = es.eigenvalues()(static_cast<Eigen::Index>(j));
    if (mass > mass_threshold) {
      ++out.discarded;
    } else {
      ++out.kept;
      out.vectors.push_back(rotated.col(static_cast<Eigen::Index>(j)));
      out.masses.push_back(mass);
    }
  }
  return out;
}

void require_pure_chirality(const Basis& basis, Chirality expected, const char* what) {
  for (const auto& l : basis) {
    if (!l.is_mode() || l.mode().chirality != expected)
      throw std::invalid_argument(std::string("chiral_index_odd: ") + what +
                                  " basis mixes chiralities or holds non-mode labels");
  }
}

IndexReport assemble_report(const FilteredKernel& fl, const FilteredKernel& fr,
                            long long census, const TruncationPolicy& policy) {
  IndexReport rep;
  rep.dim_ker_L = fl.kept;
  rep.dim_ker_R = fr.kept;
  rep.boundary_discarded_L = fl.discarded;
  rep.boundary_discarded_R = fr.discarded;
  rep.gap_ratios = {fl.gap_ratio, fr.gap_ratio};
  rep.zero_blocks = census;
  rep.ill_conditioned =
      fl.gap_ratio < kGapIllConditioned || fr.gap_ratio < kGapIllConditioned;
  rep.finite = !rep.ill_conditioned;
  if (rep.finite)
    rep.index = static_cast<long long>(rep.dim_ker_L) - rep.dim_ker_R;
  else
    rep.note = "ill-conditioned kernel (gap ratio below 1e3)";
  rep.truncation.K = policy.K;
  rep.truncation.boundary_band = policy.boundary_band;
  rep.truncation.mass_threshold = policy.mass_threshold;
  rep.truncation.rel_tol = policy.rel_tol;
  rep.sv_tail_L = fl.sv_tail;
  rep.sv_tail_R = fr.sv_tail;
  rep.kernel_vectors_L = fl.vectors;
  rep.kernel_vectors_R = fr.vectors;
  rep.kernel_masses_L = fl.masses;
  rep.kernel_masses_R = fr.masses;
  return rep;
}

}  // namespace

IndexReport noether_index(const SparseOperator& s_l, const TruncationPolicy& policy) {
  policy.validate();
  if (s_l.domain() != s_l.codomain())
    throw std::invalid_argument("noether_index: operator is not an endomorphism representation");

  const auto mask = boundary_mask(s_l.domain(), policy);
  const auto fl = filter_kernel(blockwise_kernel(s_l, policy.rel_tol), mask, policy.mass_threshold);
  const auto fr =
      filter_kernel(blockwise_kernel(s_l.adjoint(), policy.rel_tol), mask, policy.mass_threshold);

  IndexReport rep = assemble_report(fl, fr, zero_block_census(s_l), policy);
  rep.truncation.scenario = "noether";

  // rank-nullity guard: for a square truncation the raw kernels agree, so a
  // nonzero index can only come from boundary filtering
  if (rep.index.value_or(0) != 0 &&
      rep.boundary_discarded_L + rep.boundary_discarded_R == 0)
    throw std::logic_error("noether_index: nonzero index without boundary-filtered vectors");
  return rep;
}

IndexReport chiral_index_odd(const SparseOperator& s_l_restricted,
                             const SparseOperator& s_r_restricted,
                             const TruncationPolicy& policy) {
  policy.validate();
  require_pure_chirality(s_l_restricted.domain(), Chirality::L, "S_L domain");
  require_pure_chirality(s_l_restricted.codomain(), Chirality::R, "S_L codomain");
  require_pure_chirality(s_r_restricted.domain(), Chirality::R, "S_R domain");
  require_pure_chirality(s_r_restricted.codomain(), Chirality::L, "S_R codomain");

  const auto mask_l = boundary_mask(s_l_restricted.domain(), policy);
  const auto mask_r = boundary_mask(s_r_restricted.domain(), policy);
  const auto fl =
      filter_kernel(blockwise_kernel(s_l_restricted, policy.rel_tol), mask_l, policy.mass_threshold);
  const auto fr =
      filter_kernel(blockwise_kernel(s_r_restricted, policy.rel_tol), mask_r, policy.mass_threshold);

  IndexReport rep = assemble_report(fl, fr, zero_block_census(s_l_restricted), policy);
  rep.truncation.scenario = "odd";
  return rep;
}

IndexReport stabilize_runs(const std::function<IndexReport(int)>& run, int K1, int K2) {
  if (K2 < 2 * K1) throw std::invalid_argument("stabilize_index: require K2 >= 2*K1");
  const IndexReport coarse = run(K1);
  IndexReport fine = run(K2);
  fine.truncation.K_coarse = K1;
  fine.truncation.zero_blocks_coarse = coarse.zero_blocks;

  std::string disagree;
  if (fine.zero_blocks > coarse.zero_blocks)
    disagree = "zero-block census grew between truncations (" +
               std::to_string(coarse.zero_blocks) + " -> " + std::to_string(fine.zero_blocks) + ")";
  else if (coarse.dim_ker_L != fine.dim_ker_L || coarse.dim_ker_R != fine.dim_ker_R)
    disagree = "filtered kernel dimensions disagree between truncations";
  else if (!coarse.finite || !fine.finite)
    disagree = "kernel extraction ill-conditioned at one truncation";
  else if (coarse.index != fine.index)
    disagree = "index values disagree between truncations";

  if (!disagree.empty()) {
    fine.finite = false;
    fine.index.reset();
    fine.note = disagree;
  }
  return fine;
}

IndexReport stabilize_index(const EndoBuilder& builder, int K1, int K2,
                            const PolicyFactory& policy_at) {
  return stabilize_runs([&](int K) { return noether_index(builder(K), policy_at(K)); }, K1, K2);
}

IndexReport stabilize_index_odd(const OddBuilder& builder, int K1, int K2,
                                const PolicyFactory& policy_at) {
  return stabilize_runs(
      [&](int K) {
        auto [sl, sr] = builder(K);
        return chiral_index_odd(sl, sr, policy_at(K));
      },
      K1, K2);
}

double subspace_angle(const std::vector<Eigen::VectorXcd>& vectors,
                      const std::vector<std::size_t>& coordinate_positions,
                      std::size_t ambient_dim) {
  if (vectors.empty()) return 0.0;
  if (vectors.size() != coordinate_positions.size())
    throw std::invalid_argument("subspace_angle: dimension mismatch");
  const Eigen::Index p = static_cast<Eigen::Index>(vectors.size());
  Eigen::MatrixXcd v(static_cast<Eigen::Index>(ambient_dim), p);
  for (Eigen::Index j = 0; j < p; ++j) v.col(j) = vectors[static_cast<std::size_t>(j)];
  // orthonormalize (kernel vectors already are, up to roundoff)
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(v.rows(), p);
  Eigen::MatrixXcd overlap(p, p);
  for (Eigen::Index i = 0; i < p; ++i)
    overlap.row(i) = q.row(static_cast<Eigen::Index>(coordinate_positions[static_cast<std::size_t>(i)]));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(overlap);
  const double cos_min = std::min(1.0, svd.singularValues()(p - 1));
  return std::acos(cos_min);
}

}  // namespace chindex
