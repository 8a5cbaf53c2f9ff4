// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CHINDEX_BASIS_HPP
#define CHINDEX_BASIS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chindex {

enum class Chirality : std::uint8_t { L = 0, R = 1 };

inline char chirality_char(Chirality c) { return c == Chirality::L ? 'L' : 'R'; }

/// Exact rational number. Used for mode frequencies, which live in
/// (1/3)Z for the spiral scenario and in Z everywhere else.
struct Rational {
  long long num{0};
  long long den{1};

  Rational() = default;
  Rational(long long n, long long d = 1);

  static Rational of_int(long long n) { return Rational(n, 1); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator-() const { return Rational(-num, den); }
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
};

/// A labeled plane-wave basis vector: momentum, chirality and frequency.
struct Mode {
  int k{0};
  Chirality chirality{Chirality::L};
  Rational omega{};

  bool operator==(const Mode& o) const {
    return k == o.k && chirality == o.chirality && omega == o.omega;
  }
  bool operator<(const Mode& o) const;
  std::string str() const;
};

/// Label of one basis vector: either a plain sequence index (the l^2(N)
/// bases of the shift family) or a Mode record. Labels carry a total
/// order which fixes the matrix layout of every assembled operator.
class BasisLabel {
 public:
  static BasisLabel seq(long long index);
  static BasisLabel of_mode(const Mode& m);

  bool is_mode() const { return is_mode_; }
  long long seq_index() const;
  const Mode& mode() const;

  bool operator==(const BasisLabel& o) const;
  bool operator!=(const BasisLabel& o) const { return !(*this == o); }
  bool operator<(const BasisLabel& o) const;

  std::string str() const;

 private:
  bool is_mode_{false};
  long long seq_{0};
  Mode mode_{};
};

using Basis = std::vector<BasisLabel>;

/// Basis of sequence labels 1..n.
Basis sequence_basis(long long n);

/// Momentum cutoff of a pure-mode basis: max |k|.
int basis_momentum_cutoff(const Basis& basis);

}  // namespace chindex

#endif
