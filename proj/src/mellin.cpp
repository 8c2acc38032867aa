// SPDX-License-Identifier: Apache-2.0
#include "glv/mellin.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "glv/error.hpp"

namespace glv {

std::complex<double> TestFunction::mellin(int eta, std::complex<double> s) const {
  if (mellin_vanishes(eta & 1)) return 0.0;
  const cld v = std::exp(log_mellin(eta & 1, cld(s.real(), s.imag())));
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double TestFunction::mellin_abscissa() const {
  const auto p = mellin_poles(1);
  return p.empty() ? -INFINITY : p.front().real();
}

// -- Gaussian family -----------------------------------------------------------

GaussianTestFunction::GaussianTestFunction(std::complex<double> lambda_n,
                                           int delta_n, int m, double scale)
    : lambda_n_(lambda_n), delta_n_(delta_n & 1), m_(m), scale_(scale) {
  if (m != 0 && m != 1)
    throw Error(ErrorCode::kInvalidArgument, "Gaussian family needs m in {0,1}");
  if (!(scale > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "Gaussian scale X must be positive");
}

std::complex<double> GaussianTestFunction::value(double x) const {
  if (x == 0.0) return 0.0;
  const double ax = std::abs(x);
  std::complex<double> v =
      std::exp(lambda_n_ * std::log(ax) - std::numbers::pi * x * x / (scale_ * scale_));
  if (m_ == 1) v *= x;
  if (delta_n_ == 1 && x < 0) v = -v;
  return v;
}

bool GaussianTestFunction::mellin_vanishes(int eta) const {
  return ((delta_n_ + m_ + eta) & 1) != 0;
}

cld GaussianTestFunction::log_mellin(int, cld s) const {
  using R = long double;
  const cld a = cld(lambda_n_.real(), lambda_n_.imag()) + R(m_) + s;
  const R pi = std::numbers::pi_v<R>;
  return -a / R(2) * std::log(pi) + a * std::log(static_cast<R>(scale_)) +
         log_gamma(a / R(2));
}

std::vector<std::complex<double>> GaussianTestFunction::mellin_poles(int count) const {
  std::vector<std::complex<double>> out;
  for (int k = 0; k < count; ++k)
    out.push_back(-lambda_n_ - static_cast<double>(m_) - 2.0 * k);
  return out;
}

double GaussianTestFunction::tail_bound(double x) const {
  // |f(t)| = t^p exp(-pi t^2/X^2) with p = Re lambda_n + m, decreasing past
  // its maximum at t* = X sqrt(p / (2 pi)).
  const double p = lambda_n_.real() + m_;
  const double peak = p > 0 ? scale_ * std::sqrt(p / (2.0 * std::numbers::pi)) : 0.0;
  const double t = std::max(std::abs(x), peak);
  if (t == 0.0) return p < 0 ? INFINITY : (p == 0 ? 1.0 : 0.0);
  return std::exp(p * std::log(t) - std::numbers::pi * t * t / (scale_ * scale_));
}

cld ZeroTestFunction::log_mellin(int, cld) const {
  return cld(-std::numeric_limits<long double>::infinity(), 0);
}

// -- numeric transforms --------------------------------------------------------

QuadratureResult signed_mellin_numeric(const RealLineFunction& f, int delta,
                                       std::complex<double> s) {
  delta &= 1;
  const double sign = delta ? -1.0 : 1.0;
  auto g = [&](double x) {
    return (f(x) + sign * f(-x)) * std::exp((s - 1.0) * std::log(x));
  };
  // Integrability probes: x |g(x)| must decay at both ends.
  const double near0 = std::abs(g(1e-12)) * 1e-12;
  const double near0b = std::abs(g(1e-9)) * 1e-9;
  const double far = std::abs(g(1e6)) * 1e6;
  if (!std::isfinite(near0) || (near0 > near0b && near0 > 1e-8))
    throw Error(ErrorCode::kQuadrature,
                "signed Mellin integral diverges at 0 for Re s = " +
                    std::to_string(s.real()));
  if (!std::isfinite(far) || far > 1e-6)
    throw Error(ErrorCode::kQuadrature,
                "signed Mellin integral diverges at infinity for Re s = " +
                    std::to_string(s.real()));

  boost::math::quadrature::exp_sinh<double> integrator;
  const double tol = 1e-13;
  double err_re = 0, err_im = 0, l1 = 0;
  const double re = integrator.integrate(
      [&](double x) { return g(x).real(); }, 0.0,
      std::numeric_limits<double>::infinity(), tol, &err_re, &l1);
  double l1_im = 0;
  const double im = integrator.integrate(
      [&](double x) { return g(x).imag(); }, 0.0,
      std::numeric_limits<double>::infinity(), tol, &err_im, &l1_im);
  QuadratureResult r{{re, im}, std::hypot(err_re, err_im)};
  // The bound is relative to the L1 mass of the integrand.
  const double mass = std::max({1.0, l1, l1_im});
  if (!std::isfinite(re) || !std::isfinite(im) || r.error > 1e-10 * mass) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", r.error);
    throw Error(ErrorCode::kQuadrature,
                std::string("signed Mellin quadrature did not converge (error estimate ") +
                    buf + ")");
  }
  return r;
}

QuadratureResult fourier_numeric(const RealLineFunction& f, double x) {
  using boost::math::quadrature::gauss_kronrod;
  const double two_pi = 2.0 * std::numbers::pi;
  auto g = [&](double y) {
    const double ang = -two_pi * x * y;
    return f(y) * std::complex<double>(std::cos(ang), std::sin(ang));
  };
  const double inf = std::numeric_limits<double>::infinity();
  double err_re = 0, err_im = 0;
  const double re = gauss_kronrod<double, 61>::integrate(
      [&](double y) { return g(y).real(); }, -inf, inf, 15, 1e-13, &err_re);
  const double im = gauss_kronrod<double, 61>::integrate(
      [&](double y) { return g(y).imag(); }, -inf, inf, 15, 1e-13, &err_im);
  QuadratureResult r{{re, im}, std::hypot(err_re, err_im)};
  if (!std::isfinite(re) || !std::isfinite(im))
    throw Error(ErrorCode::kQuadrature, "Fourier quadrature failed");
  return r;
}

// -- Mellin side of f -> F -----------------------------------------------------

cld log_mellin_of_F(cld s, int delta, const ArchParams& params,
                    const TestFunction& f) {
  using R = long double;
  delta &= 1;
  if (f.mellin_vanishes(delta))
    return cld(-std::numeric_limits<R>::infinity(), 0);
  cld acc = 0;
  for (std::size_t j = 0; j < params.n(); ++j) {
    const cld lam(params.lambda[j].real(), params.lambda[j].imag());
    const cld arg = s - lam + R(1);
    const int parity = (params.delta[j] + delta) & 1;
    // pole proximity of G_parity at arg
    const R r = std::round(arg.real());
    if (r <= 0 && (static_cast<long>(-r) % 2) == parity &&
        std::abs(arg - cld(r, 0)) < 1e-9L)
      throw PoleError("factor j=" + std::to_string(j + 1) + ": G_" +
                          std::to_string(parity) + "(s - lambda_" +
                          std::to_string(j + 1) + " + 1) has a pole near s",
                      static_cast<double>((cld(r, 0) + lam - R(1)).real()), 0.0,
                      0.0, static_cast<int>(j));
    acc += log_gamma_factor(arg, parity);
  }
  return acc + f.log_mellin(delta, -s);
}

std::complex<double> mellin_of_F(std::complex<double> s, int delta,
                                 const ArchParams& params,
                                 const TestFunction& f) {
  delta &= 1;
  const cld l = log_mellin_of_F(cld(s.real(), s.imag()), delta, params, f);
  if (std::isinf(l.real()) && l.real() < 0) return 0.0;
  cld v = std::exp(l);
  if (delta == 1 && (params.n() % 2) == 1) v = -v;
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

}  // namespace glv
