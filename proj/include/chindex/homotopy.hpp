// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_HOMOTOPY_HPP
#define CHINDEX_HOMOTOPY_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "chindex/index_engine.hpp"
#include "chindex/operator.hpp"

namespace chindex {

/// A time extent, kept symbolic when it is a rational multiple of pi so that
/// the T in pi*Q degeneracies are exact. Accepts "pi", "pi*a/b", "a/b*pi",
/// "2pi", or a plain decimal.
struct TimeParam {
  bool pi_multiple{false};
  Rational multiple{1, 1};
  double numeric{0.0};

  double value() const;
  std::string str() const;
  static TimeParam parse(const std::string& text);
  static TimeParam of(double t);
  static TimeParam pi_times(const Rational& r);
};

Mode lifetime_mode(int k, Chirality c);  // omega_{k,L} = -k, omega_{k,R} = k
Basis lifetime_basis(int cutoff, Chirality c);

/// True exactly when e^{2ikT} = 1, i.e. for symbolic T = pi a/b with b | ka.
bool lifetime_block_degenerate(int k, const TimeParam& T);

/// The invariant 2x2 block on span(e_{k,L}, e_{k,R}):
///   k  = 0: (T/2pi) [[0,1],[1,0]]
///   k != 0: pairing entry (R,L) = (e^{2ikT}-1)/(4 pi i k), (L,R) its
///           conjugate, so the block is self-adjoint. Degenerate entries are
///           structural zeros.
SparseOperator lifetime_block(int k, const TimeParam& T);

/// S_L|H_L (rows: right modes, columns: left modes) and S_R|H_R for the flat
/// finite-lifetime cylinder; the pairing is diagonal in k.
std::pair<SparseOperator, SparseOperator> assemble_lifetime(const TimeParam& T, int cutoff);

/// Number of frequencies k in 1..K whose block pairing vanishes (the +-k
/// blocks always degenerate together).
long long lifetime_degenerate_census(const TimeParam& T, int cutoff);

IndexReport lifetime_index0(const TimeParam& T, int cutoff, const TruncationPolicy& policy);
/// Stabilized at (cutoff/2, cutoff).
IndexReport lifetime_index0_stabilized(const TimeParam& T, int cutoff,
                                       double mass_threshold = 0.5, double rel_tol = 1e-10);

/// c_k = (1/2pi) int_0^T f(t) e^{2ikt} dt by trapezoid quadrature; samples
/// are f on >= 4096 uniform points spanning [0, T] inclusive.
Complex conformal_coeff(const std::vector<double>& f_samples, double T, int k);

/// Conformally deformed lifetime operators: diagonal pairing with c_k(f).
std::pair<SparseOperator, SparseOperator> assemble_conformal(const std::vector<double>& f_samples,
                                                             double T, int cutoff);

struct AsymptoticReport {
  double residual_max_plus{0.0};    // max_k k^2 |c_k - f(0)/(4 pi i k)|
  double residual_max_minus{0.0};   // max_k k^2 |c_k + f(0)/(4 pi i k)|
  double residual_at_kmin_plus{0.0};
  double residual_at_kmin_minus{0.0};
  bool bounded_plus{false};   // residual stays within 25% of its k = K/2 value
  bool bounded_minus{false};
  int bounded_sign{0};        // +1, -1, or 0 if not exactly one sign is bounded
};

/// Tests both leading-term signs over k in [K/2, K] and reports which one
/// leaves a bounded residual. (The stated asymptotics and the
/// integration-by-parts boundary term disagree by a sign; this records which
/// one the numbers follow.)
AsymptoticReport asymptotic_check(const std::vector<double>& f_samples, double T, int cutoff);

/// Conformal bump used by the sweeps: scale * cos^4(pi t / 2T) * (1 +
/// modulation * cos(pi t / T)); C^3 at t = T, value scale*(1+modulation)
/// at t = 0.
struct BumpSpec {
  double scale{1.0};
  double modulation{0.0};
};
std::vector<double> bump_samples(const BumpSpec& bump, double T, int n_samples = 4096);

struct HomotopyStep {
  double s{0.0};
  IndexReport report;
};

struct SweepVerdict {
  enum class Kind { Constant, Jump, Undefined } kind{Kind::Constant};
  int step{-1};
  std::string str() const;
};

struct SweepReport {
  std::vector<HomotopyStep> steps;
  std::vector<double> continuity;          // ||S_L(s_{i+1}) - S_L(s_i)||
  std::vector<double> continuity_sobolev;  // same, columns scaled by sqrt(1+k^2)
  SweepVerdict verdict;
};

/// A declared one-parameter family of scenarios; build returns the restricted
/// pair (S_L|H_L, S_R|H_R) at parameter s and truncation K. Families with a
/// scenario-specific census convention (lifetime) supply census_override.
struct HomotopyFamily {
  std::string name;
  int cutoff{0};
  std::function<std::pair<SparseOperator, SparseOperator>(double s, int K)> build;
  std::function<IndexReport(double s, int K, const SparseOperator& sl,
                            const SparseOperator& sr, const TruncationPolicy& pol)>
      census_override;
  double mass_threshold{0.5};
  double rel_tol{1e-10};
};

/// Per-step stabilized index at (K/2, K), continuity diagnostics between
/// consecutive fine operators, verdict per the SweepReport invariants.
/// Requires steps >= 3; parameters are s_i = i/(steps-1).
SweepReport homotopy_sweep(const HomotopyFamily& family, int steps);

HomotopyFamily lifetime_family(const TimeParam& from, const TimeParam& to, int cutoff);
HomotopyFamily conformal_family(const BumpSpec& from, const BumpSpec& to, double T, int cutoff);

}  // namespace chindex

#endif
