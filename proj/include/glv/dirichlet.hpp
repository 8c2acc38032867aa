// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "glv/arith.hpp"

namespace glv {

/// A Dirichlet character modulo q with exact values: chi(a) = e(phase(a))
/// on units, 0 elsewhere.
class DirichletCharacter {
 public:
  DirichletCharacter(i64 modulus, std::vector<std::optional<RationalPhase>> values);

  i64 modulus() const { return q_; }
  /// 0 for even characters, 1 for odd ones: chi(-1) = (-1)^parity.
  int parity() const { return parity_; }
  /// Smallest k >= 1 with chi^k trivial.
  i64 order() const;
  bool is_trivial() const { return order() == 1; }

  /// nullopt when gcd(a, q) > 1.
  std::optional<RationalPhase> phase(i64 a) const;
  std::complex<double> operator()(i64 a) const;

  bool operator==(const DirichletCharacter& o) const {
    return q_ == o.q_ && values_ == o.values_;
  }

 private:
  i64 q_;
  std::vector<std::optional<RationalPhase>> values_;
  int parity_ = 0;
};

/// All phi(q) characters modulo q. The trivial character comes first; the
/// rest follow in lexicographic order of their exponent vectors on the CRT
/// generators of (Z/qZ)^*.
std::vector<DirichletCharacter> characters_mod(i64 q);

bool is_primitive(const DirichletCharacter& chi);

/// sum_{a mod q} chi(a) e(a/q)
std::complex<double> gauss_sum(const DirichletCharacter& chi);

/// sum_{a mod q} chi(a) e(-r a/q), by direct summation.
std::complex<double> twist_average(const DirichletCharacter& chi, i64 r);

}  // namespace glv
