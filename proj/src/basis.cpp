// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/basis.hpp"

#include <numeric>
#include <stdexcept>
#include <tuple>

namespace chindex {

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::invalid_argument("Rational: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = (g != 0) ? n / g : 0;
  den = (g != 0) ? d / g : 1;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}

bool Rational::operator<(const Rational& o) const {
  return num * o.den < o.num * den;
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

bool Mode::operator<(const Mode& o) const {
  return std::tuple(k, chirality, omega.num, omega.den) <
         std::tuple(o.k, o.chirality, o.omega.num, o.omega.den);
}

std::string Mode::str() const {
  return "(" + std::to_string(k) + "," + chirality_char(chirality) +
         ",w=" + omega.str() + ")";
}

BasisLabel BasisLabel::seq(long long index) {
  BasisLabel l;
  l.is_mode_ = false;
  l.seq_ = index;
  return l;
}

BasisLabel BasisLabel::of_mode(const Mode& m) {
  BasisLabel l;
  l.is_mode_ = true;
  l.mode_ = m;
  return l;
}

long long BasisLabel::seq_index() const {
  if (is_mode_) throw std::logic_error("BasisLabel: not a sequence label");
  return seq_;
}

const Mode& BasisLabel::mode() const {
  if (!is_mode_) throw std::logic_error("BasisLabel: not a mode label");
  return mode_;
}

bool BasisLabel::operator==(const BasisLabel& o) const {
  if (is_mode_ != o.is_mode_) return false;
  return is_mode_ ? mode_ == o.mode_ : seq_ == o.seq_;
}

bool BasisLabel::operator<(const BasisLabel& o) const {
  if (is_mode_ != o.is_mode_) return !is_mode_;  // sequence labels first
  if (is_mode_) return mode_ < o.mode_;
  return seq_ < o.seq_;
}

std::string BasisLabel::str() const {
  return is_mode_ ? mode_.str() : std::to_string(seq_);
}

Basis sequence_basis(long long n) {
  Basis b;
  b.reserve(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) b.push_back(BasisLabel::seq(i));
  return b;
}

int basis_momentum_cutoff(const Basis& basis) {
  int kmax = 0;
  for (const auto& l : basis)
    if (l.is_mode()) kmax = std::max(kmax, std::abs(l.mode().k));
  return kmax;
}

}  // namespace chindex
