// SPDX-License-Identifier: Apache-2.0
//
// Exact modular arithmetic, additive characters on Q/Z, divisor chains and
// hyperkloosterman sums.
#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace glv {

using i64 = std::int64_t;

/// Non-negative residue of x modulo m (m >= 1).
constexpr i64 mod_floor(i64 x, i64 m) {
  i64 r = x % m;
  return r < 0 ? r + m : r;
}

/// Inverse of x modulo m in [0, m). Returns 0 for m == 1.
/// Throws NoInverseError carrying gcd(x, m) when x is not a unit.
i64 mod_inverse(i64 x, i64 m);

/// (p, e) pairs in increasing order of p. n must be >= 1.
std::vector<std::pair<i64, int>> factorize(i64 n);
/// Positive divisors in increasing order.
std::vector<i64> divisors(i64 n);
i64 euler_phi(i64 n);
int moebius(i64 n);
bool is_prime(i64 n);
std::vector<i64> primes_up_to(i64 n);

/// e(numerator / modulus), stored reduced: gcd(numerator, modulus) == 1 and
/// 0 <= numerator < modulus (numerator 0 forces modulus 1).
class RationalPhase {
 public:
  RationalPhase() = default;
  RationalPhase(i64 numerator, i64 modulus);

  i64 numerator() const { return num_; }
  i64 modulus() const { return mod_; }

  RationalPhase operator+(const RationalPhase& o) const;
  RationalPhase operator-() const;
  RationalPhase operator-(const RationalPhase& o) const { return *this + (-o); }
  bool operator==(const RationalPhase&) const = default;

  /// exp(2 pi i numerator/modulus).
  std::complex<double> value() const;

 private:
  i64 num_ = 0;
  i64 mod_ = 1;
};

/// e(k / m) for integer k, evaluated from the reduced residue so that equal
/// residues give bit-identical results.
std::complex<double> unit_root(i64 k, i64 m);

/// A tuple (d_1, ..., d_{n-2}) together with the (q, c) it was built for.
struct DivisorChain {
  std::vector<i64> d;
  i64 q = 1;
  std::vector<i64> c;

  std::size_t length() const { return d.size(); }
  /// Product d_1 ... d_{n-2}.
  i64 product() const;
  /// Modulus of the j-th summation variable, q |c_1 ... c_j| / (d_1 ... d_j),
  /// for j in [1, length()].
  i64 modulus(std::size_t j) const;
  /// Throws ErrorCode::kInvalidChain when a divisibility condition fails.
  void validate() const;
};

/// All chains with d_j | q |c_1 ... c_j| / (d_1 ... d_{j-1}), lexicographic.
/// Signs of the c_j are ignored.
std::vector<DivisorChain> divisor_chains(i64 q, std::span<const i64> c);

/// The (n-1)-dimensional hyperkloosterman sum S(a, b; q, c, d), with n - 2 =
/// chain.length(). An empty chain gives e(a b / q).
std::complex<double> hyperkloosterman(i64 a, i64 b, const DivisorChain& chain);

/// Independent evaluation of the same sum: nested loops over the tuples with
/// a separate floating-point exponential per term. Meant as an oracle.
std::complex<double> hyperkloosterman_bruteforce(i64 a, i64 b,
                                                 const DivisorChain& chain);

/// Direct loop sum over x in (Z/qZ)^* of e((a x + b xbar) / q).
std::complex<double> kloosterman_classical(i64 a, i64 b, i64 q);

}  // namespace glv
