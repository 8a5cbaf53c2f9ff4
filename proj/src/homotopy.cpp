// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/homotopy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace chindex {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double TimeParam::value() const { return pi_multiple ? multiple.value() * kPi : numeric; }

std::string TimeParam::str() const {
  if (pi_multiple) return "pi*" + multiple.str();
  return std::to_string(numeric);
}

TimeParam TimeParam::of(double t) {
  TimeParam p;
  p.pi_multiple = false;
  p.numeric = t;
  return p;
}

TimeParam TimeParam::pi_times(const Rational& r) {
  TimeParam p;
  p.pi_multiple = true;
  p.multiple = r;
  return p;
}

TimeParam TimeParam::parse(const std::string& text) {
  // accepted: "pi", "pi*a", "pi*a/b", "pi/b", "a*pi", "a/b*pi", or a decimal
  const auto parse_rational = [](const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s), 1);
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  };
  const auto pos = text.find("pi");
  try {
    if (pos == std::string::npos) return of(std::stod(text));
    std::string before = text.substr(0, pos);
    std::string after = text.substr(pos + 2);
    Rational r(1, 1);
    if (!before.empty()) {
      if (before.back() != '*') throw std::invalid_argument("bad prefix");
      r = parse_rational(before.substr(0, before.size() - 1));
    }
    if (!after.empty()) {
      if (after.front() == '*')
        r = parse_rational(after.substr(1));
      else if (after.front() == '/')
        r = Rational(r.num, r.den * std::stoll(after.substr(1)));
      else
        throw std::invalid_argument("bad suffix");
    }
    return pi_times(r);
  } catch (const std::exception&) {
    throw std::invalid_argument("TimeParam: cannot parse '" + text +
                                "' (expected e.g. \"pi\", \"pi*3/4\", \"1.5\")");
  }
}

Mode lifetime_mode(int k, Chirality c) {
  return Mode{k, c, Rational::of_int(c == Chirality::L ? -k : k)};
}

Basis lifetime_basis(int cutoff, Chirality c) {
  Basis b;
  b.reserve(2 * cutoff + 1);
  for (int k = -cutoff; k <= cutoff; ++k) b.push_back(BasisLabel::of_mode(lifetime_mode(k, c)));
  return b;
}

bool lifetime_block_degenerate(int k, const TimeParam& T) {
  if (k == 0) return false;
  if (!T.pi_multiple) return false;
  // e^{2ikT} = 1  <=>  k * a / b integer for T = pi a/b
  const long long ka = static_cast<long long>(k) * T.multiple.num;
  return ka % T.multiple.den == 0;
}

namespace {

// pairing entry (right mode k | S_L | left mode k): (e^{2ikT}-1)/(4 pi i k)
Complex lifetime_pairing(int k, const TimeParam& T) {
  if (k == 0) return Complex(T.value() / kTwoPi, 0.0);
  const Complex numerator = std::polar(1.0, 2.0 * k * T.value()) - 1.0;
  return numerator / Complex(0.0, 4.0 * kPi * k);
}

}  // namespace

SparseOperator lifetime_block(int k, const TimeParam& T) {
  const Basis basis = {BasisLabel::of_mode(lifetime_mode(k, Chirality::L)),
                       BasisLabel::of_mode(lifetime_mode(k, Chirality::R))};
  SparseOperator block(basis, basis);
  if (lifetime_block_degenerate(k, T)) return block;
  const Complex c = lifetime_pairing(k, T);
  block.set_at(1, 0, c);             // (R, L)
  block.set_at(0, 1, std::conj(c));  // (L, R), adjoint entry
  return block;
}

std::pair<SparseOperator, SparseOperator> assemble_lifetime(const TimeParam& T, int cutoff) {
  const Basis left = lifetime_basis(cutoff, Chirality::L);
  const Basis right = lifetime_basis(cutoff, Chirality::R);
  SparseOperator s_l(right, left);
  for (int k = -cutoff; k <= cutoff; ++k) {
    if (lifetime_block_degenerate(k, T)) continue;
    s_l.set(BasisLabel::of_mode(lifetime_mode(k, Chirality::R)),
            BasisLabel::of_mode(lifetime_mode(k, Chirality::L)), lifetime_pairing(k, T));
  }
  return {s_l, s_l.adjoint()};
}

long long lifetime_degenerate_census(const TimeParam& T, int cutoff) {
  long long census = 0;
  for (int k = 1; k <= cutoff; ++k)
    if (lifetime_block_degenerate(k, T)) ++census;
  return census;
}

IndexReport lifetime_index0(const TimeParam& T, int cutoff, const TruncationPolicy& policy) {
  auto [s_l, s_r] = assemble_lifetime(T, cutoff);
  IndexReport rep = chiral_index_odd(s_l, s_r, policy);
  rep.truncation.scenario = "lifetime";
  // census convention: degenerate frequencies 1..K (the +-k blocks vanish
  // together), not raw zero rows/columns
  rep.zero_blocks = lifetime_degenerate_census(T, cutoff);
  return rep;
}

IndexReport lifetime_index0_stabilized(const TimeParam& T, int cutoff, double mass_threshold,
                                       double rel_tol) {
  return stabilize_runs(
      [&](int K) {
        TruncationPolicy pol = TruncationPolicy::defaults(K);
        pol.mass_threshold = mass_threshold;
        pol.rel_tol = rel_tol;
        return lifetime_index0(T, K, pol);
      },
      cutoff / 2, cutoff);
}

Complex conformal_coeff(const std::vector<double>& f_samples, double T, int k) {
  const std::size_t m = f_samples.size();
  if (m < 4096) throw std::invalid_argument("conformal_coeff: grid too coarse, need >= 4096 samples");
  if (!(T > 0.0)) throw std::invalid_argument("conformal_coeff: T must be positive");
  const double h = T / static_cast<double>(m - 1);
  Complex acc = 0.5 * (f_samples.front() + f_samples.back() * std::polar(1.0, 2.0 * k * T));
  for (std::size_t j = 1; j + 1 < m; ++j)
    acc += f_samples[j] * std::polar(1.0, 2.0 * k * (h * static_cast<double>(j)));
  return acc * h / kTwoPi;
}

std::pair<SparseOperator, SparseOperator> assemble_conformal(const std::vector<double>& f_samples,
                                                             double T, int cutoff) {
  const Basis left = lifetime_basis(cutoff, Chirality::L);
  const Basis right = lifetime_basis(cutoff, Chirality::R);
  SparseOperator s_l(right, left);
  for (int k = -cutoff; k <= cutoff; ++k)
    s_l.set(BasisLabel::of_mode(lifetime_mode(k, Chirality::R)),
            BasisLabel::of_mode(lifetime_mode(k, Chirality::L)),
            conformal_coeff(f_samples, T, k));
  return {s_l, s_l.adjoint()};
}

AsymptoticReport asymptotic_check(const std::vector<double>& f_samples, double T, int cutoff) {
  AsymptoticReport rep;
  const double f0 = f_samples.front();
  const int k_min = std::max(1, cutoff / 2);
  bool first = true;
  for (int k = k_min; k <= cutoff; ++k) {
    const Complex ck = conformal_coeff(f_samples, T, k);
    const Complex lead = f0 / Complex(0.0, 4.0 * kPi * k);
    const double res_plus = k * k * std::abs(ck - lead);
    const double res_minus = k * k * std::abs(ck + lead);
    if (first) {
      rep.residual_at_kmin_plus = res_plus;
      rep.residual_at_kmin_minus = res_minus;
      first = false;
    }
    rep.residual_max_plus = std::max(rep.residual_max_plus, res_plus);
    rep.residual_max_minus = std::max(rep.residual_max_minus, res_minus);
  }
  rep.bounded_plus = rep.residual_max_plus <= 1.25 * rep.residual_at_kmin_plus;
  rep.bounded_minus = rep.residual_max_minus <= 1.25 * rep.residual_at_kmin_minus;
  if (rep.bounded_plus != rep.bounded_minus)
    rep.bounded_sign = rep.bounded_plus ? +1 : -1;
  return rep;
}

std::vector<double> bump_samples(const BumpSpec& bump, double T, int n_samples) {
  std::vector<double> f(static_cast<std::size_t>(n_samples));
  for (int j = 0; j < n_samples; ++j) {
    const double t = T * static_cast<double>(j) / static_cast<double>(n_samples - 1);
    const double c = std::cos(kPi * t / (2.0 * T));
    f[static_cast<std::size_t>(j)] =
        bump.scale * c * c * c * c * (1.0 + bump.modulation * std::cos(kPi * t / T));
  }
  return f;
}

std::string SweepVerdict::str() const {
  switch (kind) {
    case Kind::Constant:
      return "constant";
    case Kind::Jump:
      return "jump at step " + std::to_string(step);
    case Kind::Undefined:
      return "undefined at step " + std::to_string(step);
  }
  return "";
}

namespace {

SparseOperator sobolev_scaled(const SparseOperator& op) {
  SparseOperator scaled(op.codomain(), op.domain());
  for (const auto& [rc, v] : op.entries()) {
    const BasisLabel& col = op.domain()[rc.second];
    const double k = col.is_mode() ? col.mode().k : static_cast<double>(col.seq_index());
    scaled.set_at(rc.first, rc.second, v * std::sqrt(1.0 + k * k));
  }
  return scaled;
}

}  // namespace

SweepReport homotopy_sweep(const HomotopyFamily& family, int steps) {
  if (steps < 3) throw std::invalid_argument("homotopy_sweep: need at least 3 steps");
  if (family.cutoff < 4) throw std::invalid_argument("homotopy_sweep: cutoff too small");

  SweepReport sweep;
  std::vector<SparseOperator> fine_ops;
  for (int i = 0; i < steps; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(steps - 1);
    IndexReport rep = stabilize_runs(
        [&](int K) {
          auto [sl, sr] = family.build(s, K);
          TruncationPolicy pol = TruncationPolicy::defaults(K);
          pol.mass_threshold = family.mass_threshold;
          pol.rel_tol = family.rel_tol;
          IndexReport r = family.census_override
                              ? family.census_override(s, K, sl, sr, pol)
                              : chiral_index_odd(sl, sr, pol);
          return r;
        },
        family.cutoff / 2, family.cutoff);
    rep.truncation.scenario = family.name;
    sweep.steps.push_back({s, std::move(rep)});
    fine_ops.push_back(family.build(s, family.cutoff).first);
  }

  for (std::size_t i = 0; i + 1 < fine_ops.size(); ++i) {
    const SparseOperator diff = fine_ops[i + 1] - fine_ops[i];
    sweep.continuity.push_back(diff.operator_norm());
    sweep.continuity_sobolev.push_back(sobolev_scaled(diff).operator_norm());
  }

  sweep.verdict.kind = SweepVerdict::Kind::Constant;
  for (std::size_t i = 0; i < sweep.steps.size(); ++i) {
    if (!sweep.steps[i].report.finite) {
      sweep.verdict = {SweepVerdict::Kind::Undefined, static_cast<int>(i)};
      return sweep;
    }
  }
  for (std::size_t i = 1; i < sweep.steps.size(); ++i) {
    if (sweep.steps[i].report.index != sweep.steps[i - 1].report.index) {
      sweep.verdict = {SweepVerdict::Kind::Jump, static_cast<int>(i)};
      return sweep;
    }
  }
  return sweep;
}

HomotopyFamily lifetime_family(const TimeParam& from, const TimeParam& to, int cutoff) {
  HomotopyFamily fam;
  fam.name = "lifetime";
  fam.cutoff = cutoff;
  const auto t_at = [from, to](double s) {
    if (s == 0.0) return from;
    if (s == 1.0) return to;
    return TimeParam::of((1.0 - s) * from.value() + s * to.value());
  };
  fam.build = [t_at](double s, int K) { return assemble_lifetime(t_at(s), K); };
  fam.census_override = [t_at](double s, int K, const SparseOperator& sl,
                               const SparseOperator& sr, const TruncationPolicy& pol) {
    IndexReport rep = chiral_index_odd(sl, sr, pol);
    rep.zero_blocks = lifetime_degenerate_census(t_at(s), K);
    return rep;
  };
  return fam;
}

HomotopyFamily conformal_family(const BumpSpec& from, const BumpSpec& to, double T, int cutoff) {
  HomotopyFamily fam;
  fam.name = "conformal";
  fam.cutoff = cutoff;
  const std::vector<double> f0 = bump_samples(from, T);
  const std::vector<double> f1 = bump_samples(to, T);
  fam.build = [f0, f1, T](double s, int K) {
    std::vector<double> fs(f0.size());
    for (std::size_t j = 0; j < f0.size(); ++j) fs[j] = (1.0 - s) * f0[j] + s * f1[j];
    return assemble_conformal(fs, T, K);
  };
  return fam;
}

}  // namespace chindex
