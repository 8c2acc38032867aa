// SPDX-License-Identifier: Apache-2.0
#include "glv/gamma.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "glv/error.hpp"

namespace glv {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,
    .15808870322491248884e-3,   -.21026444172410488319e-3,
    .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,
    .36899182659531622704e-5};

constexpr double kPoleTol = 1e-12;

// Nearest non-positive integer when z sits on a Gamma pole.
bool near_nonpositive_integer(std::complex<double> z, double tol, double* k) {
  const double r = std::round(z.real());
  if (r > 0.0) return false;
  if (std::abs(z - std::complex<double>(r, 0.0)) > tol) return false;
  *k = r;
  return true;
}

// log sin(pi z), stable for large |Im z|.
template <typename C>
C log_sin_pi(C z) {
  using R = typename C::value_type;
  const R pi = std::numbers::pi_v<R>;
  const C i(0, 1);
  if (z.imag() >= 0) {
    // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i)
    return -i * pi * z + std::log((std::exp(R(2) * i * pi * z) - R(1)) / (R(2) * i));
  }
  return i * pi * z + std::log((R(1) - std::exp(-R(2) * i * pi * z)) / (R(2) * i));
}

}  // namespace

std::complex<double> log_gamma_lanczos(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    double k;
    if (near_nonpositive_integer(z, 0.0, &k))
      throw PoleError("Gamma pole at " + std::to_string(k), k,
                      (static_cast<long>(-k) % 2 ? -1.0 : 1.0) /
                          std::tgamma(1.0 - k),
                      0.0);
    return std::log(pi) - log_sin_pi(z) - log_gamma_lanczos(1.0 - z);
  }
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k)
    x += kLanczos[k] / (z + static_cast<double>(k));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

std::complex<double> gamma_lanczos(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    double k;
    if (near_nonpositive_integer(z, 0.0, &k))
      throw PoleError("Gamma pole at " + std::to_string(k), k,
                      (static_cast<long>(-k) % 2 ? -1.0 : 1.0) /
                          std::tgamma(1.0 - k),
                      0.0);
    return pi / (std::sin(pi * z) * gamma_lanczos(1.0 - z));
  }
  z -= 1.0;
  std::complex<double> x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k)
    x += kLanczos[k] / (z + static_cast<double>(k));
  const std::complex<double> t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

cld log_gamma(cld z) {
  using R = long double;
  const R pi = std::numbers::pi_v<R>;
  if (z.real() < 0.5L) {
    const R r = std::round(z.real());
    if (r <= 0 && z.imag() == 0 && z.real() == r)
      throw PoleError("Gamma pole", static_cast<double>(r), 0.0, 0.0);
    return std::log(pi) - log_sin_pi(z) - log_gamma(R(1) - z);
  }
  // shift up: log Gamma(z) = log Gamma(z + m) - log(z (z+1) ... (z+m-1))
  cld shift_log = 0;
  cld prod = 1;
  int steps = 0;
  while (std::abs(z) < 16.0L) {
    prod *= z;
    z += R(1);
    if (++steps % 8 == 0) {
      shift_log += std::log(prod);
      prod = 1;
    }
  }
  shift_log += std::log(prod);

  // Bernoulli B_{2k} / (2k (2k-1)), k = 1..12
  static constexpr std::array<long double, 12> kStirling = {
      1.0L / 12.0L,          -1.0L / 360.0L,          1.0L / 1260.0L,
      -1.0L / 1680.0L,       1.0L / 1188.0L,          -691.0L / 360360.0L,
      1.0L / 156.0L,         -3617.0L / 122400.0L,    43867.0L / 244188.0L,
      -174611.0L / 125400.0L, 77683.0L / 5796.0L,     -236364091.0L / 1506960.0L};
  const cld inv = R(1) / z;
  const cld inv2 = inv * inv;
  cld series = 0;
  cld pw = inv;
  for (long double c : kStirling) {
    series += c * pw;
    pw *= inv2;
  }
  return (z - R(0.5)) * std::log(z) - z + R(0.5) * std::log(R(2) * pi) +
         series - shift_log;
}

namespace {

// Residue of G_delta at the pole s = -m (m >= 0, m = delta mod 2).
std::complex<double> gamma_factor_residue(int m, int delta) {
  const double two_pi = 2.0 * std::numbers::pi;
  const double mag = 2.0 * std::pow(two_pi, m) / std::tgamma(m + 1.0);
  const int k = delta == 0 ? m / 2 : (m - 1) / 2;
  const double sign = (k % 2) ? -1.0 : 1.0;
  return delta == 0 ? std::complex<double>(sign * mag, 0.0)
                    : std::complex<double>(0.0, sign * mag);
}

void check_gamma_factor_pole(std::complex<double> s, int delta) {
  double k;
  if (!near_nonpositive_integer(s, kPoleTol, &k)) return;
  const int m = static_cast<int>(-k);
  if ((m % 2) != delta) return;  // removable: cos/sin zero cancels the pole
  const auto res = gamma_factor_residue(m, delta);
  throw PoleError("G_" + std::to_string(delta) + " has a pole at s=" +
                      std::to_string(static_cast<int>(k)),
                  k, res.real(), res.imag());
}

}  // namespace

std::complex<double> gamma_factor(std::complex<double> s, int delta) {
  delta &= 1;
  check_gamma_factor_pole(s, delta);
  const double pi = std::numbers::pi;
  if (std::abs(s.imag()) > 30.0) {
    const cld l = log_gamma_factor(cld(s.real(), s.imag()), delta);
    const cld v = std::exp(l);
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  // At the removable points Gamma has a pole while cos/sin vanish; the ratio
  // form is regular there.
  double k;
  if (near_nonpositive_integer(s, kPoleTol, &k)) {
    const cld v = std::exp(log_gamma_factor(cld(k, 0.0L), delta));
    return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
  }
  const std::complex<double> pre = 2.0 * std::pow(2.0 * pi, -s) * gamma_lanczos(s);
  if (delta == 0) return pre * std::cos(pi * s / 2.0);
  return std::complex<double>(0.0, 1.0) * pre * std::sin(pi * s / 2.0);
}

cld log_gamma_factor(cld s, int delta) {
  using R = long double;
  delta &= 1;
  const R pi = std::numbers::pi_v<R>;
  const cld a = delta == 0 ? s / R(2) : (s + R(1)) / R(2);
  const cld b = delta == 0 ? (R(1) - s) / R(2) : (R(2) - s) / R(2);
  // numerator pole: Gamma(a) with a a non-positive integer
  if (a.imag() == 0 && a.real() <= 0 && a.real() == std::round(a.real())) {
    const int m = static_cast<int>(-2 * a.real()) + delta;
    const auto res = gamma_factor_residue(m, delta);
    throw PoleError("G_" + std::to_string(delta) + " has a pole at s=" +
                        std::to_string(-m),
                    -m, res.real(), res.imag());
  }
  cld lg = (R(0.5) - s) * std::log(pi) + log_gamma(a);
  // zero: 1/Gamma(b) vanishes at non-positive integers b
  if (b.imag() == 0 && b.real() <= 0 && b.real() == std::round(b.real()))
    return cld(-std::numeric_limits<R>::infinity(), 0);
  lg -= log_gamma(b);
  if (delta == 1) lg += cld(0, pi / 2);
  return lg;
}

double rightmost_gamma_factor_pole(int delta) { return (delta & 1) ? -1.0 : 0.0; }

}  // namespace glv
