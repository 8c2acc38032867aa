// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "glv/error.hpp"
#include "glv/gamma.hpp"
#include "glv/mellin.hpp"
#include "glv/transform.hpp"

using namespace glv;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Closed form with the standard library Gamma on real arguments.
double g_real(double s, int delta) {
  const double base = 2.0 * std::pow(2 * kPi, -s) * std::tgamma(s);
  return delta == 0 ? base * std::cos(kPi * s / 2) : base * std::sin(kPi * s / 2);
}

double gauss(double x) { return std::exp(-kPi * x * x); }

ArchParams sym2_params() { return {{11, 0, -11}, {0, 0, 0}, true}; }

std::shared_ptr<GaussianTestFunction> sym2_f(int m = 0) {
  return std::make_shared<GaussianTestFunction>(11.0, 0, m, 4.0);
}

double rel(cd a, cd b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("gamma_factor examples") {
  CHECK(std::abs(gamma_factor(1.0, 0)) < 1e-15);
  CHECK(std::abs(gamma_factor(1.0, 1) - cd(0, 1 / kPi)) < 1e-15);
  CHECK(std::abs(gamma_factor(1.0, 1) - cd(0, 0.31830988618379067154)) < 1e-15);
  CHECK(std::abs(gamma_factor(2.0, 0) - cd(-1 / (2 * kPi * kPi), 0)) < 1e-15);
  CHECK(std::abs(gamma_factor(2.0, 0) - cd(-0.050660591821168885722, 0)) < 1e-15);
}

TEST_CASE("gamma_factor against the real closed form") {
  for (double s = -7.75; s < 12; s += 0.5)
    for (int d = 0; d < 2; ++d) {
      const double want = g_real(s, d);
      const cd got = gamma_factor(s, d);
      const cd expect = d == 0 ? cd(want, 0) : cd(0, want);
      CHECK(std::abs(got - expect) <= 1e-12 * std::max(1.0, std::abs(want)));
      const cld lg = log_gamma_factor(cld(s, 0), d);
      const cld viaLog = std::exp(lg);
      CHECK(std::abs(cd(double(viaLog.real()), double(viaLog.imag())) - expect) <=
            1e-12 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("zeros and poles of G_delta") {
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(gamma_factor(1.0 + 2 * k, 0)) < 1e-12);  // G_0 vanishes at odd positives
    CHECK(std::abs(gamma_factor(2.0 + 2 * k, 1)) < 1e-12);  // G_1 at even positives
    CHECK(std::isinf(log_gamma_factor(cld(1.0 + 2 * k, 0), 0).real()));
  }
  CHECK(rightmost_gamma_factor_pole(0) == 0.0);
  CHECK(rightmost_gamma_factor_pole(1) == -1.0);
  // G_1 is regular at 0 and G_0 at -1: the cos / sin zero cancels Gamma's pole.
  CHECK(std::abs(gamma_factor(0.0, 1) - cd(0, kPi)) < 1e-12);
  CHECK(std::isfinite(std::abs(gamma_factor(-1.0, 0))));
  for (int m = 0; m < 6; ++m) {
    const int d = m % 2;
    try {
      gamma_factor(static_cast<double>(-m), d);
      FAIL("expected a pole");
    } catch (const PoleError& e) {
      CHECK(e.location() == -m);
      const double eps = 1e-7;
      const double numeric = eps * g_real(-m + eps, d);
      const cd res(e.residue_re(), e.residue_im());
      const cd expect = d == 0 ? cd(numeric, 0) : cd(0, numeric);
      CHECK(std::abs(res - expect) < 1e-5 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("Lanczos Gamma accuracy") {
  // mpmath, 40 digits
  CHECK(std::abs(gamma_lanczos(cd(0.3, 7)) - cd(0.000028487579955011350965, 7.7289635745084296675e-7)) <
        1e-13 * 2.9e-5);
  for (double x = 0.25; x < 20; x += 0.75)
    CHECK(std::abs(gamma_lanczos(x).real() - std::tgamma(x)) < 1e-13 * std::tgamma(x));
  for (double x = -4.5; x < 0; x += 1.0)
    CHECK(std::abs(gamma_lanczos(x).real() - std::tgamma(x)) < 1e-13 * std::abs(std::tgamma(x)));
  const cd z(2.5, -3.25);
  CHECK(std::abs(std::exp(log_gamma_lanczos(z)) - gamma_lanczos(z)) < 1e-13 * std::abs(gamma_lanczos(z)));
  const cld lz = log_gamma(cld(2.5, -3.25));
  CHECK(std::abs(cd(double(std::exp(lz).real()), double(std::exp(lz).imag())) - gamma_lanczos(z)) <
        1e-13 * std::abs(gamma_lanczos(z)));
  // Large imaginary part: Stirling path keeps the log finite where Gamma underflows.
  const cld big = log_gamma(cld(0.5, 2000));
  CHECK(std::isfinite(big.real()));
  CHECK(std::abs(double(big.real()) - (-kPi * 1000 + 0.5 * std::log(2 * kPi))) < 1e-6);
}

TEST_CASE("signed_mellin_numeric examples") {
  CHECK(std::abs(signed_mellin_numeric(gauss, 0, 1.0).value - cd(1, 0)) < 1e-10);
  CHECK(std::abs(signed_mellin_numeric(gauss, 1, cd(0.7, 2)).value) < 1e-12);
  auto xg = [](double x) { return cd(x * gauss(x), 0); };
  CHECK(std::abs(signed_mellin_numeric(xg, 1, 2.0).value - cd(1 / (2 * kPi), 0)) < 1e-10);
  CHECK(std::abs(signed_mellin_numeric(xg, 1, 2.0).value - cd(0.159154943091895, 0)) < 1e-10);
  CHECK_THROWS_AS(signed_mellin_numeric(gauss, 0, -0.5), Error);
  auto heavy = [](double x) { return cd(1.0 / (1.0 + x * x), 0); };
  CHECK_THROWS_AS(signed_mellin_numeric(heavy, 0, 2.5), Error);
}

TEST_CASE("closed-form test-function Mellin transforms agree with quadrature") {
  for (int m = 0; m < 2; ++m)
    for (int dn = 0; dn < 2; ++dn)
      for (double lam : {0.0, 1.5, 11.0}) {
        GaussianTestFunction f(lam, dn, m, lam > 5 ? 4.0 : 1.3);
        auto pw = [&](double x) { return f.value(x); };
        for (int eta = 0; eta < 2; ++eta)
          for (cd s : {cd(0.5, 0), cd(1.2, -2.5), cd(2.0, 4.0), cd(0.8, 1.0)}) {
            const cd closed = f.mellin(eta, s);
            const cd numeric = signed_mellin_numeric(pw, eta, s).value;
            CHECK(std::abs(closed - numeric) <= 1e-9 * std::max(1.0, std::abs(closed)));
          }
      }
  GaussianTestFunction f(11.0, 0, 0, 4.0);
  CHECK(f.mellin_abscissa() == -11.0);
  CHECK(f.mellin_vanishes(1));
  CHECK(!f.mellin_vanishes(0));
  CHECK(f.tail_bound(30.0) >= std::abs(f.value(30.0)));
  CHECK(f.tail_bound(30.0) >= std::abs(f.value(31.0)));
}

TEST_CASE("fourier_numeric examples") {
  CHECK(std::abs(fourier_numeric(gauss, 0).value - cd(1, 0)) < 1e-10);
  CHECK(std::abs(fourier_numeric(gauss, 1).value - cd(gauss(1), 0)) < 1e-10);
  auto xg = [](double x) { return cd(x * gauss(x), 0); };
  CHECK(std::abs(fourier_numeric(xg, 1).value - cd(0, -gauss(1))) < 1e-10);
  CHECK(std::abs(fourier_numeric(xg, 0.4).value - cd(0, -0.4 * gauss(0.4))) < 1e-10);
  auto sum = [&](double x) { return 2.0 * cd(gauss(x), 0) + cd(0, 3) * xg(x); };
  const double x = 0.7;
  CHECK(std::abs(fourier_numeric(sum, x).value -
                 (2.0 * fourier_numeric(gauss, x).value + cd(0, 3) * fourier_numeric(xg, x).value)) < 1e-10);
}

TEST_CASE("Mellin transform of the Fourier transform") {
  const std::vector<RealLineFunction> phis{
      [](double x) { return cd(gauss(x), 0); },
      [](double x) { return cd(x * gauss(x), 0); },
      [](double x) { return cd(x * x * gauss(x), 0); },
  };
  const std::vector<cd> pts{{0.3, 0},  {0.5, 1},   {0.5, -1}, {0.7, 2.5}, {0.25, -3},
                            {0.6, 0.3}, {0.45, 4}, {0.8, -2}, {0.35, 1.7}, {0.55, -0.6}};
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const auto& phi = phis[i];
    const int eta = static_cast<int>(i % 2);
    // beyond |x| = 8 the transforms are below 1e-80 and quadrature returns noise
    auto fhat = [&](double x) { return std::abs(x) > 8 ? cd(0, 0) : fourier_numeric(phi, x).value; };
    for (const cd& s : pts) {
      const cd lhs = signed_mellin_numeric(fhat, eta, s).value;
      const cd rhs = (eta ? -1.0 : 1.0) * gamma_factor(s, eta) * signed_mellin_numeric(phi, eta, 1.0 - s).value;
      CHECK(std::abs(lhs - rhs) < 1e-8 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("mellin_of_F") {
  // n = 1 reads off a single factor
  const ArchParams one{{0}, {0}, false};
  GaussianTestFunction g(0.0, 0, 0, 1.0);
  for (double t : {-2.0, 0.0, 1.5}) {
    const cd s(0.5, t);
    CHECK(rel(mellin_of_F(s, 0, one, g), gamma_factor(s + 1.0, 0) * g.mellin(0, -s)) < 1e-12);
  }
  // Sym2 Delta against an mpmath evaluation of the same product
  const auto p = sym2_params();
  auto f = sym2_f();
  CHECK(rel(mellin_of_F(0.5, 0, p, *f), cd(44116.04000241555317797874, 0)) < 1e-11);
  CHECK(rel(mellin_of_F(cd(0.5, 3), 0, p, *f), cd(218045.7936476954867221511, 68805.52165789781903886625)) < 1e-11);
  CHECK(std::abs(mellin_of_F(cd(0.5, 3), 1, p, *f)) == 0.0);

  // symmetric under simultaneous permutation of (lambda_j, delta_j)
  const ArchParams q{{cd(0.4, 1.5), cd(-0.1, -2.0), cd(-0.3, 0.5)}, {1, 0, 1}, false};
  GaussianTestFunction h(cd(-0.3, 0.5), 1, 0, 2.0);
  const std::vector<std::vector<std::size_t>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (int delta = 0; delta < 2; ++delta)
    for (const cd s : {cd(1.3, 0.2), cd(2.0, -3.0)}) {
      const cd base = mellin_of_F(s, delta, q, h);
      for (const auto& pm : perms) CHECK(rel(mellin_of_F(s, delta, q.permuted(pm), h), base) < 1e-12);
    }

  // pole proximity names the factor
  try {
    mellin_of_F(10.0, 0, p, *f);  // s - 11 + 1 = 0
    FAIL("expected pole");
  } catch (const PoleError& e) {
    CHECK(e.factor_index() == 0);
  }
}

TEST_CASE("n=1 transform is |y| exp(-pi y^2)") {
  VoronoiTransform F(ArchParams{{0}, {0}, false}, std::make_shared<GaussianTestFunction>(0.0, 0, 0, 1.0));
  for (double y : {0.5, 1.0, 2.0, -0.5, -1.3, 0.1}) {
    const double want = std::abs(y) * gauss(y);
    CHECK(std::abs(F(y) - cd(want, 0)) < 1e-10);
  }
}

TEST_CASE("Sym2 Delta transform: contour shift, realness, convergence, decay") {
  const auto p = sym2_params();
  auto f = sym2_f();
  VoronoiTransform a(p, f, ContourConfig{0.5, 0.0, 0.0});
  VoronoiTransform b(p, f, ContourConfig{0.8, 0.0, 0.0});
  const cd fa = a(1.0), fb = b(1.0);
  CHECK(std::abs(fa - fb) < 1e-8 * std::max(1.0, std::abs(fa)));
  VoronoiTransform aut(p, f);
  CHECK(std::abs(aut(1.0) - fa) < 1e-8 * std::abs(fa));

  CHECK(aut.window(0).lower == -2.0);
  CHECK(aut.window(0).upper == INFINITY);
  CHECK_THROWS_AS(VoronoiTransform(p, f, ContourConfig{-3.0, 60.0, 0.05}), PoleError);

  TransformGrid grid(aut, 0.01, 20.0, 8);
  for (double y : grid.nodes()) {
    const cd v = aut(y);
    CHECK(std::abs(v.imag()) < 1e-9 * std::max(1.0, std::abs(v)));
    CHECK(aut.convergence_error(y) < 1e-9 * std::max(1.0, std::abs(v)));
    CHECK(std::abs(aut(-y) - v) < 1e-9 * std::max(1.0, std::abs(v)));  // even f, even delta
  }
  for (std::size_t i = 0; i < grid.nodes().size(); ++i)
    CHECK(grid.at(i, 1) == aut(grid.nodes()[i]));
  CHECK(std::abs(grid(grid.nodes()[3]) - aut(grid.nodes()[3])) < 1e-15);

  // Decay: |F(y)| |y|^N falls by orders of magnitude from y=5 to y=40.
  for (int N = 0; N <= 4; ++N) {
    auto w = [&](double y) { return std::abs(aut(y)) * std::pow(y, N); };
    CHECK(w(40) < 1e-3 * std::max({w(5), w(10), w(20)}));
  }
  // Near zero: |F(y)| <= C |y|^(-11 - eps).
  const double C = std::abs(aut(0.1)) * std::pow(0.1, 11.01);
  CHECK(std::abs(aut(0.01)) <= C * std::pow(0.01, -11.01));
}

TEST_CASE("parity: an odd f has no even component") {
  const auto p = sym2_params();
  auto f = sym2_f(1);  // x |x|^11 Gaussian
  CHECK(std::abs(mellin_of_F(cd(12.5, 1), 0, p, *f)) == 0.0);
  CHECK(std::abs(mellin_of_F(cd(12.5, 1), 1, p, *f)) > 0.0);
  VoronoiTransform F(p, f);
  CHECK(F.lines(0).empty());
  for (double y : {0.3, 1.0, 4.0}) {
    const cd v = F(y);
    CHECK(std::abs(v + F(-y)) < 1e-12 * std::max(1.0, std::abs(v)));
  }
  ZeroTestFunction z(11.0, 0);
  VoronoiTransform Z(p, std::make_shared<ZeroTestFunction>(11.0, 0));
  CHECK(Z.is_zero());
  CHECK(Z(1.0) == cd(0, 0));
}
