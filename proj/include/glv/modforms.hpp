// SPDX-License-Identifier: Apache-2.0
//
// Fourier-coefficient providers for full-level Hecke eigenforms. Coefficients
// are assembled prime by prime from Satake parameters through Schur
// polynomials, so any form with known prime data plugs in.
#pragma once

#include <complex>
#include <iosfwd>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "glv/arch_params.hpp"
#include "glv/arith.hpp"

namespace glv {

using i128 = __int128;

std::string to_string(i128 v);

/// tau(1..n_max) from q prod (1 - q^m)^24, exact. Entry 0 is unused (0).
/// The product is expanded with the pentagonal number theorem and 24 sparse
/// convolutions in overflow-checked 128-bit arithmetic; |tau(n)| stays below
/// 2^100 for n <= 10^5.
std::vector<i128> ramanujan_tau(i64 n_max);

/// The pair {alpha_p, 1/alpha_p} with alpha + 1/alpha = tau(p) / p^(11/2).
/// Unit modulus when the discriminant is negative.
std::array<std::complex<double>, 2> satake_gl2(i64 p, i128 tau_p);

/// Schur polynomial s_partition(x_1..x_n). The partition may be shorter than
/// n (padded with zeros). Bialternant ratio, switching to Jacobi-Trudi when
/// the Vandermonde denominator is nearly singular.
std::complex<double> schur_coefficient(std::span<const int> partition,
                                       std::span<const std::complex<double>> x);
/// Same value through the Jacobi-Trudi determinant only.
std::complex<double> schur_jacobi_trudi(std::span<const int> partition,
                                        std::span<const std::complex<double>> x);

/// Per-prime Satake parameters of a fixed form.
struct SatakeData {
  std::string form_id;
  int degree = 0;
  std::map<i64, std::vector<std::complex<double>>> params;
  /// "unitary": |alpha_{p,j}| = 1 (Hecke-normalized coefficients).
  std::string normalization = "unitary";
};

/// Interface for coefficient sources a_k, k = (k_1..k_{n-1}) nonzero.
class CoefficientProvider {
 public:
  virtual ~CoefficientProvider() = default;
  virtual std::string id() const = 0;
  /// n of GL(n).
  virtual int degree() const = 0;
  /// Hecke-normalized a_k; depends only on |k_j|. Throws kCoverage when a
  /// prime of some |k_j| lies outside the provider's table, kInvalidArgument
  /// when some k_j == 0.
  virtual std::complex<double> coefficient(std::span<const i64> k) const = 0;
  /// Estimated absolute floating-point error of coefficient(k).
  virtual double error_bound(std::span<const i64> k) const = 0;
  /// Largest index |k_j| the provider can serve.
  virtual i64 coverage() const = 0;
};

/// Coefficients of a GL(n) Hecke eigenform from its Satake parameters: the
/// p-block of a_k is s_mu(alpha_p) with mu_i = e_i + ... + e_{n-1} where
/// e_j = v_p(k_j).
class SatakeForm : public CoefficientProvider {
 public:
  SatakeForm(SatakeData data, i64 coverage);

  std::string id() const override { return data_.form_id; }
  int degree() const override { return data_.degree; }
  std::complex<double> coefficient(std::span<const i64> k) const override;
  double error_bound(std::span<const i64> k) const override;
  i64 coverage() const override { return coverage_; }
  const SatakeData& data() const { return data_; }

 private:
  SatakeData data_;
  i64 coverage_;
};

/// Delta (weight 12, level 1) as a GL(2) form, covering indices <= n_max.
std::unique_ptr<SatakeForm> make_delta_form(i64 n_max);
/// The symmetric-square lift of Delta to GL(3), parameters
/// {alpha_p^2, 1, alpha_p^-2}, covering indices <= n_max.
std::unique_ptr<SatakeForm> make_sym2_delta_form(i64 n_max);
/// Factory by id: "delta" or "sym2-delta".
std::unique_ptr<CoefficientProvider> make_form(const std::string& id, i64 n_max);

/// a_{k_1,k_2} for the symmetric-square lift of Delta.
double sym2_coefficient(i64 k1, i64 k2);

/// Weyl dimension of the GL(n) representation with highest weight mu.
double weyl_dimension(std::span<const int> mu, int n);

/// c_k = a_k / prod_j (sgn k_j)^(delta_1+..+delta_j) |k_j|^(lambda_1+..+lambda_j)
std::complex<double> a_to_c(std::complex<double> a, std::span<const i64> k,
                            const ArchParams& params);
std::complex<double> c_to_a(std::complex<double> c, std::span<const i64> k,
                            const ArchParams& params);

/// Tabulated coefficients, either Hecke-normalized a_k or distribution
/// normalized c_k.
struct CoefficientTable {
  enum class Kind { kHecke, kDistribution };
  Kind kind = Kind::kHecke;
  int index_length = 0;
  std::map<std::vector<i64>, std::complex<double>> values;

  /// All index tuples with 1 <= k_j <= max_index, lexicographic.
  static CoefficientTable from_provider(const CoefficientProvider& form,
                                        i64 max_index);
  CoefficientTable to_distribution(const ArchParams& params) const;

  /// CSV: a "# glv-coefficients v1 kind=a|c" line, a header
  /// "k1,..,k{n-1},re,im", then one row per index tuple.
  void write_csv(std::ostream& os) const;
  static CoefficientTable read_csv(std::istream& is);
};

}  // namespace glv
