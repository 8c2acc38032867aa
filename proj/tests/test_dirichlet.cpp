// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "glv/dirichlet.hpp"

using namespace glv;
using cd = std::complex<double>;

namespace {

cd e_of(long double num, long double den) {
  const long double t = 2 * std::numbers::pi_v<long double> * num / den;
  return {static_cast<double>(std::cos(t)), static_cast<double>(std::sin(t))};
}

// Primitivity oracle: chi is imprimitive iff for some proper divisor d of q
// chi(a) = 1 for every unit a = 1 mod d.
bool primitive_oracle(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  for (i64 d = 1; d < q; ++d) {
    if (q % d) continue;
    bool induced = true;
    for (i64 a = 1; a < q && induced; ++a)
      if (std::gcd(a, q) == 1 && (a - 1) % d == 0) induced = std::abs(chi(a) - cd(1, 0)) < 1e-12;
    if (induced) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("characters_mod examples") {
  auto c1 = characters_mod(1);
  REQUIRE(c1.size() == 1);
  CHECK(c1[0].is_trivial());
  CHECK(std::abs(c1[0](0) - cd(1, 0)) < 1e-15);

  auto c4 = characters_mod(4);
  REQUIRE(c4.size() == 2);
  CHECK(c4[0].is_trivial());
  CHECK(std::abs(c4[1](3) - cd(-1, 0)) < 1e-15);
  CHECK(c4[1].parity() == 1);

  auto c5 = characters_mod(5);
  REQUIRE(c5.size() == 4);
  for (const auto& chi : c5) {
    const cd v = chi(2);
    CHECK(std::abs(std::pow(v, 4) - cd(1, 0)) < 1e-12);
  }
}

TEST_CASE("character invariants for q <= 60") {
  for (i64 q = 1; q <= 60; ++q) {
    const auto chars = characters_mod(q);
    i64 phi = 0;
    for (i64 a = 0; a < q; ++a) phi += std::gcd(a, q) == 1;
    CHECK(static_cast<i64>(chars.size()) == phi);
    CHECK(chars.front().is_trivial());
    for (const auto& chi : chars) {
      CHECK(chi.modulus() == q);
      CHECK(std::abs(chi(q - 1) - cd(chi.parity() ? -1.0 : 1.0, 0)) < 1e-12);
      for (i64 a = 0; a < q; ++a) {
        const double mag = std::abs(chi(a));
        CHECK(std::abs(mag - (std::gcd(a, q) == 1 ? 1.0 : 0.0)) < 1e-14);
        for (i64 b = 0; b < q; b += 1 + q / 8)
          if (std::gcd(a * b, q) == 1) CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
      }
      CHECK(is_primitive(chi) == primitive_oracle(chi));
    }
    // orthogonality
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cd s = 0;
        for (i64 a = 0; a < q; ++a) s += chars[i](a) * std::conj(chars[j](a));
        CHECK(std::abs(s - cd(i == j ? static_cast<double>(phi) : 0.0, 0)) < 1e-12);
      }
  }
}

TEST_CASE("primitivity examples") {
  CHECK(is_primitive(characters_mod(1)[0]));
  CHECK_FALSE(is_primitive(characters_mod(4)[0]));
  for (const auto& chi : characters_mod(5))
    if (chi.order() == 2) CHECK(is_primitive(chi));
}

TEST_CASE("Gauss sums") {
  CHECK(std::abs(gauss_sum(characters_mod(1)[0]) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(gauss_sum(characters_mod(4)[1]) - cd(0, 2)) < 1e-12);
  for (const auto& chi : characters_mod(5))
    if (chi.order() == 2) CHECK(std::abs(gauss_sum(chi) - cd(std::sqrt(5.0), 0)) < 1e-12);
  for (i64 q = 1; q <= 60; ++q)
    for (const auto& chi : characters_mod(q)) {
      cd oracle = 0;
      for (i64 a = 0; a < q; ++a) oracle += chi(a) * e_of(a, q);
      CHECK(std::abs(gauss_sum(chi) - oracle) < 1e-11);
      if (is_primitive(chi)) CHECK(std::abs(std::abs(gauss_sum(chi)) - std::sqrt(double(q))) < 1e-10);
    }
}

TEST_CASE("twist_average examples") {
  const auto c4 = characters_mod(4);
  CHECK(std::abs(twist_average(c4[1], 2)) < 1e-12);
  for (i64 r = -5; r < 6; ++r) CHECK(std::abs(twist_average(characters_mod(1)[0], r) - cd(1, 0)) < 1e-15);
  for (const auto& chi : characters_mod(5))
    if (chi.order() == 2) CHECK(std::abs(twist_average(chi, 1) - cd(std::sqrt(5.0), 0)) < 1e-12);
}

TEST_CASE("Gauss-sum identity, q <= 60") {
  for (i64 q = 1; q <= 60; ++q)
    for (const auto& chi : characters_mod(q)) {
      if (!is_primitive(chi)) continue;
      const cd g = gauss_sum(chi);
      for (i64 r = 0; r < q; ++r) {
        const cd expect = std::gcd(r, q) > 1 ? cd(0, 0) : std::conj(chi(-r)) * g;
        CHECK(std::abs(twist_average(chi, r) - expect) < 1e-12);
      }
    }
}

TEST_CASE("phases are exact") {
  for (i64 q = 2; q <= 30; ++q)
    for (const auto& chi : characters_mod(q))
      for (i64 a = 0; a < q; ++a) {
        const auto ph = chi.phase(a);
        CHECK(ph.has_value() == (std::gcd(a, q) == 1));
        if (ph) CHECK(chi.phase(a + q) == ph);
      }
}
