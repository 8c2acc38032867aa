// SPDX-License-Identifier: Apache-2.0
//
// Signed Mellin transforms and the Mellin-side description of the transform
// f -> F:
//   M_delta f(s) = int_R f(x) |x|^(s-1) sgn(x)^delta dx
//   M_delta F(s) = (-1)^(n delta) prod_j G_{delta_j+delta}(s - lambda_j + 1)
//                  * M_delta f(-s)
#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "glv/arch_params.hpp"
#include "glv/gamma.hpp"

namespace glv {

/// A test function f in |x|^lambda_n sgn(x)^delta_n S(R), known pointwise and
/// through closed-form signed Mellin transforms.
class TestFunction {
 public:
  virtual ~TestFunction() = default;

  virtual std::string family() const = 0;
  virtual std::complex<double> value(double x) const = 0;
  /// True when M_eta f vanishes identically (parity mismatch).
  virtual bool mellin_vanishes(int eta) const = 0;
  /// log M_eta f(s); only called when !mellin_vanishes(eta).
  virtual cld log_mellin(int eta, cld s) const = 0;
  /// The first `count` poles of M_eta f, by decreasing real part.
  virtual std::vector<std::complex<double>> mellin_poles(int count) const = 0;
  /// M_eta f(s) is holomorphic for Re s > mellin_abscissa().
  double mellin_abscissa() const;
  /// Scale X beyond which f is negligible (f ~ 0 past 6 X).
  virtual double decay_scale() const = 0;
  /// Bound for sup_{|t| >= x} |f(t)|.
  virtual double tail_bound(double x) const = 0;
  /// Membership prefactor (lambda_n, delta_n).
  virtual std::complex<double> lambda_n() const = 0;
  virtual int delta_n() const = 0;

  std::complex<double> mellin(int eta, std::complex<double> s) const;
};

/// f(x) = |x|^lambda_n sgn(x)^delta_n x^m exp(-pi x^2 / X^2), m in {0, 1}.
/// M_eta f(s) = pi^(-a/2) X^a Gamma(a/2) with a = lambda_n + m + s when
/// delta_n + m + eta is even, and 0 otherwise.
class GaussianTestFunction final : public TestFunction {
 public:
  GaussianTestFunction(std::complex<double> lambda_n, int delta_n, int m,
                       double scale);

  std::string family() const override { return "gaussian"; }
  std::complex<double> value(double x) const override;
  bool mellin_vanishes(int eta) const override;
  cld log_mellin(int eta, cld s) const override;
  std::vector<std::complex<double>> mellin_poles(int count) const override;
  double decay_scale() const override { return scale_; }
  double tail_bound(double x) const override;
  std::complex<double> lambda_n() const override { return lambda_n_; }
  int delta_n() const override { return delta_n_; }
  int m() const { return m_; }

 private:
  std::complex<double> lambda_n_;
  int delta_n_;
  int m_;
  double scale_;
};

/// f = 0, for the degenerate limit of the Gaussian family.
class ZeroTestFunction final : public TestFunction {
 public:
  ZeroTestFunction(std::complex<double> lambda_n, int delta_n)
      : lambda_n_(lambda_n), delta_n_(delta_n) {}
  std::string family() const override { return "zero"; }
  std::complex<double> value(double) const override { return 0.0; }
  bool mellin_vanishes(int) const override { return true; }
  cld log_mellin(int, cld) const override;
  std::vector<std::complex<double>> mellin_poles(int) const override { return {}; }
  double decay_scale() const override { return 0.0; }
  double tail_bound(double) const override { return 0.0; }
  std::complex<double> lambda_n() const override { return lambda_n_; }
  int delta_n() const override { return delta_n_; }

 private:
  std::complex<double> lambda_n_;
  int delta_n_;
};

using RealLineFunction = std::function<std::complex<double>(double)>;

struct QuadratureResult {
  std::complex<double> value;
  double error = 0.0;
};

/// int_R f(x) |x|^(s-1) sgn(x)^delta dx by double-exponential quadrature on
/// (0, inf). Throws kQuadrature when the integrand is not integrable at
/// 0 or infinity for this s, or when the error estimate exceeds 1e-10 times
/// the L1 norm of the integrand (or 1e-10 when that norm is below 1).
QuadratureResult signed_mellin_numeric(const RealLineFunction& f, int delta,
                                       std::complex<double> s);

/// int_R f(y) e(-x y) dy, adaptive Gauss-Kronrod on R.
QuadratureResult fourier_numeric(const RealLineFunction& f, double x);

/// M_delta F(s) for the transform F of f under the parameter (lambda, delta).
/// Factors are combined in log space. Throws PoleError naming the factor j
/// when s - lambda_j + 1 is within 1e-9 of a pole of G_{delta_j + delta}.
std::complex<double> mellin_of_F(std::complex<double> s, int delta,
                                 const ArchParams& params,
                                 const TestFunction& f);
/// Extended-precision log of the same quantity without the (-1)^(n delta)
/// sign; -inf real part when it vanishes.
cld log_mellin_of_F(cld s, int delta, const ArchParams& params,
                    const TestFunction& f);

}  // namespace glv
