// SPDX-License-Identifier: Apache-2.0
//
// Complex Gamma function and the normalized Gamma factors
//   G_0(s) = 2 (2 pi)^-s Gamma(s) cos(pi s / 2)
//   G_1(s) = 2 i (2 pi)^-s Gamma(s) sin(pi s / 2)
#pragma once

#include <complex>

namespace glv {

using cld = std::complex<long double>;

/// Gamma(z) by a 15-term Lanczos approximation (g = 607/128), reflected for
/// Re z < 1/2. Relative error about 1e-15 away from the poles.
std::complex<double> gamma_lanczos(std::complex<double> z);
/// log Gamma(z) on the same approximation (any branch; only exp() of it is
/// meaningful to callers).
std::complex<double> log_gamma_lanczos(std::complex<double> z);

/// log Gamma(z) in extended precision: Stirling series after an upward shift
/// to |z| >= 16, reflection for Re z < 1/2.
cld log_gamma(cld z);

/// G_delta(s) from the closed form with the Lanczos Gamma. Throws PoleError
/// (with the residue) within 1e-12 of a pole. Falls back to the log-space
/// route when |Im s| is large.
std::complex<double> gamma_factor(std::complex<double> s, int delta);

/// log G_delta(s) through the equivalent ratio
///   G_0(s) = pi^(1/2-s) Gamma(s/2) / Gamma((1-s)/2)
///   G_1(s) = i pi^(1/2-s) Gamma((s+1)/2) / Gamma((2-s)/2)
/// in extended precision. Returns -inf real part at zeros; throws PoleError
/// at poles.
cld log_gamma_factor(cld s, int delta);

/// Right-most pole of G_delta: poles of G_0 are 0, -2, -4, ..., poles of G_1
/// are -1, -3, ...
double rightmost_gamma_factor_pole(int delta);

}  // namespace glv
