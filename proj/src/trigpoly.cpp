// Copyright (c) the chindex authors
// SPDX-License-Identifier: Apache-2.0

#include "chindex/trigpoly.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace chindex {

namespace {
constexpr std::size_t kTermGuard = 1000000;
const double kCell = 12.0 * std::numbers::pi * std::numbers::pi;
}  // namespace

TrigPoly TrigPoly::constant(Complex c) {
  TrigPoly p;
  p.add_term(0, 0, c);
  return p;
}

void TrigPoly::add_term(int n, int m, Complex c) {
  auto it = terms_.find({n, m});
  const Complex sum = (it == terms_.end()) ? c : it->second + c;
  if (sum == Complex(0.0))
    terms_.erase({n, m});
  else
    terms_[{n, m}] = sum;
}

Complex TrigPoly::coeff(int n, int m) const {
  auto it = terms_.find({n, m});
  return it == terms_.end() ? Complex(0.0) : it->second;
}

TrigPoly TrigPoly::conj() const {
  TrigPoly p;
  for (const auto& [key, c] : terms_) p.terms_[{-key.first, -key.second}] = std::conj(c);
  return p;
}

TrigPoly TrigPoly::scaled(Complex f) const {
  TrigPoly p;
  if (f == Complex(0.0)) return p;
  for (const auto& [key, c] : terms_) p.terms_[key] = f * c;
  return p;
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  TrigPoly p = *this;
  for (const auto& [key, c] : o.terms_) p.add_term(key.first, key.second, c);
  return p;
}

Complex TrigPoly::eval(double t, double phi) const {
  Complex acc = 0.0;
  for (const auto& [key, c] : terms_)
    acc += c * std::polar(1.0, key.first * t / 3.0 + key.second * phi);
  return acc;
}

bool TrigPoly::is_real(double tol) const {
  for (const auto& [key, c] : terms_) {
    const Complex mirror = coeff(-key.first, -key.second);
    if (std::abs(mirror - std::conj(c)) > tol) return false;
  }
  return true;
}

double TrigPoly::coeff_abs_sum() const {
  double s = 0.0;
  for (const auto& [key, c] : terms_) s += std::abs(c);
  return s;
}

TrigPoly trig_mul(const TrigPoly& p, const TrigPoly& q) {
  TrigPoly r;
  for (const auto& [kp, cp] : p.terms()) {
    for (const auto& [kq, cq] : q.terms()) {
      r.add_term(kp.first + kq.first, kp.second + kq.second, cp * cq);
      if (r.size() > kTermGuard)
        throw std::runtime_error("trig_mul: term count exceeds guard (1e6)");
    }
  }
  return r;
}

Complex integrate_cell(const TrigPoly& p) { return kCell * p.coeff(0, 0); }

Complex integrate_cell_weighted(const TrigPoly& x, const TrigPoly& weight) {
  // visit keys of x in conjugate-pair buckets: (0,0) first, then {k,-k}
  // ascending in the positive representative, positive member first
  std::set<TrigPoly::Key> reps;
  bool has_zero = false;
  for (const auto& [key, c] : x.terms()) {
    if (key.first == 0 && key.second == 0) {
      has_zero = true;
    } else {
      const bool positive = key.first > 0 || (key.first == 0 && key.second > 0);
      reps.insert(positive ? key : TrigPoly::Key{-key.first, -key.second});
    }
  }
  Complex acc = 0.0;
  if (has_zero) {
    const Complex z = x.coeff(0, 0) * weight.coeff(0, 0);
    if (z != Complex(0.0)) acc += z;
  }
  for (const auto& rep : reps) {
    // pair-sum first: a single commutative addition keeps the contraction
    // bitwise symmetric under conjugate mirroring of x
    const Complex term_pos = x.coeff(rep.first, rep.second) * weight.coeff(-rep.first, -rep.second);
    const Complex term_neg = x.coeff(-rep.first, -rep.second) * weight.coeff(rep.first, rep.second);
    const Complex bucket = term_pos + term_neg;
    if (bucket != Complex(0.0)) acc += bucket;
  }
  return kCell * acc;
}

}  // namespace chindex
