// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <string>
#include <vector>

namespace glv {

/// Representation parameter (lambda, delta) in C^n x (Z/2)^n.
struct ArchParams {
  std::vector<std::complex<double>> lambda;
  std::vector<int> delta;
  /// Allow lambda_i - lambda_j in Z. Only the pole bookkeeping near the
  /// origin changes in that case; evaluation away from 0 is unaffected.
  bool singular_ok = false;

  std::size_t n() const { return lambda.size(); }

  /// Checks sizes, sum(lambda) == 0 to 1e-12, sum(delta) even and, unless
  /// singular_ok, that no two lambda_j differ by an integer.
  void validate() const;
  /// True when some lambda_i - lambda_j is within 1e-12 of an integer.
  bool is_singular() const;

  /// Simultaneous permutation of the (lambda_j, delta_j) pairs:
  /// result[i] = this[perm[i]].
  ArchParams permuted(const std::vector<std::size_t>& perm) const;
  /// Stable reordering that moves the pair with the largest Re(lambda) to the
  /// last slot, which is where the test-function membership is read from.
  ArchParams dominant_last() const;

  std::string to_string() const;
};

}  // namespace glv
