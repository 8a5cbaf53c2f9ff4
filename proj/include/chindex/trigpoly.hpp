// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_TRIGPOLY_HPP
#define CHINDEX_TRIGPOLY_HPP

#include <complex>
#include <map>
#include <utility>

namespace chindex {

using Complex = std::complex<double>;

/// Exact trigonometric polynomial on the cell (0, 6pi) x (0, 2pi):
///   P(t, phi) = sum_{(n,m)} c_{n,m} e^{i n t / 3} e^{i m phi}.
/// Frequencies are stored as integer numerators over the fixed denominator 3,
/// so frequency matching is exact integer arithmetic.
class TrigPoly {
 public:
  using Key = std::pair<int, int>;  // (t-frequency numerator, phi-frequency)

  TrigPoly() = default;
  static TrigPoly constant(Complex c);

  void add_term(int n, int m, Complex c);
  Complex coeff(int n, int m) const;
  const std::map<Key, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  TrigPoly conj() const;           // (n,m,c) -> (-n,-m, conj c)
  TrigPoly scaled(Complex) const;
  TrigPoly operator+(const TrigPoly&) const;

  Complex eval(double t, double phi) const;

  /// coeff(-n,-m) == conj(coeff(n,m)) for every term, bitwise when tol == 0.
  bool is_real(double tol = 0.0) const;

  double coeff_abs_sum() const;

 private:
  std::map<Key, Complex> terms_;
};

/// Convolution of term maps; exact integer frequency arithmetic. Guards
/// against runaway expansion at 10^6 terms.
TrigPoly trig_mul(const TrigPoly& p, const TrigPoly& q);

/// Integral over the cell: every term with a nonzero frequency integrates to
/// zero exactly (t-frequencies are multiples of 1/3 over length 6pi,
/// phi-frequencies integers over 2pi), leaving 12 pi^2 coeff(0,0).
Complex integrate_cell(const TrigPoly& p);

/// 12 pi^2 * sum_k x[k] * weight[-k], summed over conjugate-pair buckets
/// {k, -k} in canonical order. The bucket order makes the contraction exactly
/// conjugation-symmetric: swapping the roles behind x and conjugating weight
/// yields the bitwise complex conjugate.
Complex integrate_cell_weighted(const TrigPoly& x, const TrigPoly& weight);

}  // namespace chindex

#endif
