// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "glv/error.hpp"
#include "glv/modforms.hpp"

using namespace glv;
using cd = std::complex<double>;

namespace {

// q prod_{m>=1} (1 - q^m)^24 by plain series multiplication.
std::vector<i128> tau_oracle(int n_max) {
  std::vector<i128> s(static_cast<std::size_t>(n_max), 0);  // coefficient of q^(i+1)
  s[0] = 1;
  for (int m = 1; m < n_max; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (int i = n_max - 1; i >= m; --i) s[static_cast<std::size_t>(i)] -= s[static_cast<std::size_t>(i - m)];
  std::vector<i128> out(static_cast<std::size_t>(n_max) + 1, 0);
  for (int i = 0; i < n_max; ++i) out[static_cast<std::size_t>(i) + 1] = s[static_cast<std::size_t>(i)];
  return out;
}

// Sum over semistandard tableaux of shape mu with entries 1..n.
cd schur_tableaux(const std::vector<int>& mu, const std::vector<cd>& x) {
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < static_cast<int>(mu.size()); ++r)
    for (int c = 0; c < mu[static_cast<std::size_t>(r)]; ++c) cells.emplace_back(r, c);
  std::map<std::pair<int, int>, int> t;
  cd total = 0;
  const int n = static_cast<int>(x.size());
  std::function<void(std::size_t)> fill = [&](std::size_t i) {
    if (i == cells.size()) {
      cd m = 1;
      for (const auto& [cell, v] : t) m *= x[static_cast<std::size_t>(v)];
      total += m;
      return;
    }
    const auto [r, c] = cells[i];
    int lo = 0;
    if (c > 0) lo = std::max(lo, t[{r, c - 1}]);
    if (r > 0) lo = std::max(lo, t[{r - 1, c}] + 1);
    for (int v = lo; v < n; ++v) {
      t[{r, c}] = v;
      fill(i + 1);
    }
    t.erase({r, c});
  };
  fill(0);
  return total;
}

// h_k(x): all monomials of degree k.
cd complete_homogeneous(int k, const std::vector<cd>& x) {
  std::function<cd(std::size_t, int)> rec = [&](std::size_t i, int left) -> cd {
    if (i + 1 == x.size()) return std::pow(x[i], left);
    cd s = 0;
    for (int e = 0; e <= left; ++e) s += std::pow(x[i], e) * rec(i + 1, left - e);
    return s;
  };
  return rec(0, k);
}

std::vector<cd> random_params(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0, 2 * M_PI);
  std::vector<cd> x;
  for (int i = 0; i < n; ++i) x.push_back(std::polar(1.0, u(rng)));
  return x;
}

int valuation(i64 k, i64 p) {
  int e = 0;
  while (k % p == 0) k /= p, ++e;
  return e;
}

}  // namespace

TEST_CASE("ramanujan_tau against the q-expansion oracle") {
  const auto tau = ramanujan_tau(400);
  const auto oracle = tau_oracle(400);
  CHECK(tau[1] == 1);
  CHECK(tau[2] == -24);
  CHECK(tau[3] == 252);
  CHECK(tau[4] == -1472);
  CHECK(tau[5] == 4830);
  for (std::size_t i = 1; i <= 400; ++i) CHECK(tau[i] == oracle[i]);
  CHECK(to_string(tau[2]) == "-24");
}

TEST_CASE("Hecke relations for tau") {
  const auto tau = ramanujan_tau(10000);
  for (i64 p : primes_up_to(100)) {
    i128 p11 = 1;
    for (int i = 0; i < 11; ++i) p11 *= p;
    CHECK(tau[static_cast<std::size_t>(p)] * tau[static_cast<std::size_t>(p)] -
              tau[static_cast<std::size_t>(p * p)] ==
          p11);
  }
  for (i64 m = 1; m <= 100; ++m)
    for (i64 n = 1; n <= 100; ++n)
      if (std::gcd(m, n) == 1)
        CHECK(tau[static_cast<std::size_t>(m * n)] ==
              tau[static_cast<std::size_t>(m)] * tau[static_cast<std::size_t>(n)]);
}

TEST_CASE("tau at the top of the table does not overflow") {
  const auto tau = ramanujan_tau(100000);
  // Deligne: |tau(p)| <= 2 p^(11/2)
  for (i64 p : {99991LL, 99989LL, 99971LL})
    CHECK(std::abs(static_cast<long double>(tau[static_cast<std::size_t>(p)])) <=
          2 * std::pow(static_cast<long double>(p), 5.5L));
}

TEST_CASE("satake_gl2") {
  const auto tau = ramanujan_tau(200);
  auto a2 = satake_gl2(2, tau[2]);
  CHECK(std::abs((a2[0] + a2[1]).real() - (-0.530330085889911)) < 1e-12);
  CHECK(std::abs(a2[0] * a2[1] - cd(1, 0)) < 1e-14);
  auto a3 = satake_gl2(3, tau[3]);
  CHECK(std::abs((a3[0] + a3[1]).real() - 0.598733612492945) < 1e-12);
  for (i64 p : primes_up_to(199)) {
    auto a = satake_gl2(p, tau[static_cast<std::size_t>(p)]);
    CHECK(std::abs(std::abs(a[0]) - 1.0) < 1e-14);
    CHECK(std::abs(a[0] * a[1] - cd(1, 0)) < 1e-14);
    CHECK(std::abs((a[0] + a[1]).real() - static_cast<double>(tau[static_cast<std::size_t>(p)]) /
                                                std::pow(double(p), 5.5)) < 1e-12);
  }
}

TEST_CASE("schur_coefficient examples") {
  std::mt19937_64 rng(3);
  const auto x = random_params(rng, 3);
  CHECK(std::abs(schur_coefficient(std::vector<int>{}, x) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(schur_coefficient(std::vector<int>{1, 0, 0}, x) - (x[0] + x[1] + x[2])) < 1e-14);

  const auto tau = ramanujan_tau(10);
  const auto a = satake_gl2(2, tau[2]);
  const std::vector<cd> sym2{a[0] * a[0], cd(1, 0), a[1] * a[1]};
  const std::vector<int> mu{2, 1, 0};
  const cd oracle = schur_tableaux(mu, sym2);
  CHECK(std::abs(schur_coefficient(mu, sym2) - oracle) < 1e-13);
  CHECK(std::abs(schur_jacobi_trudi(mu, sym2) - oracle) < 1e-13);
}

TEST_CASE("schur_coefficient against tableaux for random shapes") {
  std::mt19937_64 rng(11);
  const std::vector<std::vector<int>> shapes{{1}, {2}, {1, 1}, {3, 1}, {2, 2}, {3, 2, 1}, {4, 1, 1}, {2, 1, 1, 1}};
  for (int n = 1; n <= 4; ++n)
    for (const auto& s : shapes) {
      if (static_cast<int>(s.size()) > n) continue;
      const auto x = random_params(rng, n);
      const cd oracle = schur_tableaux(s, x);
      CHECK(std::abs(schur_coefficient(s, x) - oracle) < 1e-12);
      CHECK(std::abs(schur_jacobi_trudi(s, x) - oracle) < 1e-12);
    }
}

TEST_CASE("degenerate parameters take the Jacobi-Trudi path") {
  const std::vector<cd> x{cd(1, 0), cd(1, 0), cd(1, 0)};
  // s_mu(1,1,1) = Weyl dimension
  for (const std::vector<int>& mu : {std::vector<int>{2, 1, 0}, {3, 0, 0}, {4, 2, 1}}) {
    CHECK(std::abs(schur_coefficient(mu, x) - cd(weyl_dimension(mu, 3), 0)) < 1e-10);
    CHECK(std::abs(schur_coefficient(mu, x) - schur_tableaux(mu, x)) < 1e-10);
  }
  const std::vector<cd> near{cd(1, 0), std::polar(1.0, 1e-9), std::polar(1.0, -1e-9)};
  CHECK(std::abs(schur_coefficient(std::vector<int>{2, 1, 0}, near) - cd(8, 0)) < 1e-8);
}

TEST_CASE("s_(k) equals the complete homogeneous polynomial") {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k <= 5; ++k) {
      const auto x = random_params(rng, n);
      std::vector<int> mu{k};
      CHECK(std::abs(schur_coefficient(mu, x) - complete_homogeneous(k, x)) < 1e-12);
    }
}

TEST_CASE("sym2_coefficient") {
  CHECK(std::abs(sym2_coefficient(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(sym2_coefficient(1, 2) - (-0.71875)) < 1e-13);
  CHECK(std::abs(sym2_coefficient(2, 1) - (-0.71875)) < 1e-13);
  const auto tau = ramanujan_tau(10000);
  // A(1,p) = tau(p^2) / p^11
  for (i64 p : primes_up_to(97))
    CHECK(std::abs(sym2_coefficient(1, p) -
                   static_cast<double>(tau[static_cast<std::size_t>(p * p)]) / std::pow(double(p), 11)) <
          1e-10);
  for (i64 k1 = 1; k1 <= 50; ++k1)
    for (i64 k2 = 1; k2 <= 50; ++k2) CHECK(std::abs(sym2_coefficient(k1, k2) - sym2_coefficient(k2, k1)) < 1e-10);
}

TEST_CASE("SatakeForm: normalization, sign insensitivity, multiplicativity") {
  auto sym2 = make_sym2_delta_form(1000);
  auto delta = make_delta_form(1000);
  CHECK(sym2->degree() == 3);
  CHECK(delta->degree() == 2);
  CHECK(std::abs(sym2->coefficient(std::vector<i64>{1, 1}) - cd(1, 0)) < 1e-15);
  CHECK(std::abs(delta->coefficient(std::vector<i64>{1}) - cd(1, 0)) < 1e-15);
  const auto tau = ramanujan_tau(1000);
  for (i64 k = 1; k <= 200; ++k)
    CHECK(std::abs(delta->coefficient(std::vector<i64>{k}).real() -
                   static_cast<double>(tau[static_cast<std::size_t>(k)]) / std::pow(double(k), 5.5)) < 1e-11);

  for (i64 k1 : {1, 2, 6, 12})
    for (i64 k2 : {1, 3, 10}) {
      const cd v = sym2->coefficient(std::vector<i64>{k1, k2});
      CHECK(std::abs(v - sym2->coefficient(std::vector<i64>{-k1, k2})) < 1e-15);
      CHECK(std::abs(v - sym2->coefficient(std::vector<i64>{k1, -k2})) < 1e-15);
      CHECK(std::abs(v - sym2->coefficient(std::vector<i64>{-k1, -k2})) < 1e-15);
    }

  // multiplicativity, and agreement with prime-by-prime Schur evaluation
  for (i64 k1 = 1; k1 <= 50; ++k1)
    for (i64 k2 = 1; k2 <= 50; ++k2) {
      cd direct = 1;
      for (i64 p : primes_up_to(50)) {
        const int e1 = valuation(k1, p), e2 = valuation(k2, p);
        if (e1 + e2 == 0) continue;
        const auto a = satake_gl2(p, tau[static_cast<std::size_t>(p)]);
        const std::vector<cd> x{a[0] * a[0], cd(1, 0), a[1] * a[1]};
        direct *= schur_tableaux(std::vector<int>{e1 + e2, e2}, x);
      }
      const cd v = sym2->coefficient(std::vector<i64>{k1, k2});
      CHECK(std::abs(v - direct) < 1e-10);
      CHECK(sym2->error_bound(std::vector<i64>{k1, k2}) >= 0);
      for (i64 l1 = 1; l1 <= 12; ++l1)
        for (i64 l2 = 1; l2 <= 12; ++l2)
          if (std::gcd(k1 * k2, l1 * l2) == 1)
            CHECK(std::abs(sym2->coefficient(std::vector<i64>{k1 * l1, k2 * l2}) -
                           v * sym2->coefficient(std::vector<i64>{l1, l2})) < 1e-10);
    }
}

TEST_CASE("SatakeData invariants") {
  for (const auto& form : {make_delta_form(500), make_sym2_delta_form(500)}) {
    const auto& d = form->data();
    CHECK(d.normalization == "unitary");
    CHECK(!d.params.empty());
    for (const auto& [p, alphas] : d.params) {
      cd prod = 1;
      for (const auto& a : alphas) prod *= a;
      CHECK(std::abs(prod - cd(1, 0)) < 1e-12);
      for (const auto& a : alphas) {
        double best = 1e300;
        for (const auto& b : alphas) best = std::min(best, std::abs(1.0 / a - b));
        CHECK(best < 1e-12);
      }
    }
  }
}

TEST_CASE("coverage and index errors") {
  auto sym2 = make_sym2_delta_form(100);
  CHECK(sym2->coverage() == 100);
  try {
    sym2->coefficient(std::vector<i64>{101, 1});
    FAIL("expected coverage error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCoverage);
  }
  try {
    sym2->coefficient(std::vector<i64>{0, 1});
    FAIL("expected invalid argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidArgument);
  }
  CHECK_THROWS_AS(make_form("nope", 10), Error);
  CHECK(make_form("delta", 10)->degree() == 2);
}

TEST_CASE("a_to_c and c_to_a") {
  ArchParams p{{1, 0, -1}, {0, 0, 0}, true};
  const cd a(0.7, -0.2);
  CHECK(std::abs(a_to_c(a, std::vector<i64>{1, 1}, p) - a) < 1e-15);
  CHECK(std::abs(a_to_c(a, std::vector<i64>{2, 3}, p) - a / 6.0) < 1e-15);
  CHECK_THROWS_AS(a_to_c(a, std::vector<i64>{0, 3}, p), Error);

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  ArchParams q{{cd(0.3, 2.0), cd(-0.1, -1.0), cd(-0.2, -1.0)}, {1, 0, 1}, false};
  for (int it = 0; it < 200; ++it) {
    const cd z(u(rng), u(rng));
    std::vector<i64> k{static_cast<i64>(rng() % 40) - 20, static_cast<i64>(rng() % 40) - 20};
    if (k[0] == 0 || k[1] == 0) continue;
    CHECK(std::abs(c_to_a(a_to_c(z, k, q), k, q) - z) < 1e-14 * std::max(1.0, std::abs(z)));
  }
  // sign factor: (sgn k_1)^{delta_1}
  CHECK(std::abs(a_to_c(a, std::vector<i64>{-1}, ArchParams{{0, 0}, {1, 1}, true}) + a) < 1e-15);
}

TEST_CASE("CoefficientTable and CSV") {
  auto sym2 = make_sym2_delta_form(100);
  auto t = CoefficientTable::from_provider(*sym2, 4);
  CHECK(t.index_length == 2);
  CHECK(t.values.size() == 16);
  CHECK(std::abs(t.values.at({1, 2}) - cd(-0.71875, 0)) < 1e-13);

  std::stringstream ss;
  t.write_csv(ss);
  const auto back = CoefficientTable::read_csv(ss);
  CHECK(back.kind == t.kind);
  CHECK(back.index_length == 2);
  REQUIRE(back.values.size() == t.values.size());
  for (const auto& [k, v] : t.values) CHECK(std::abs(back.values.at(k) - v) < 1e-15 * std::max(1.0, std::abs(v)));

  ArchParams p{{11, 0, -11}, {0, 0, 0}, true};
  const auto c = t.to_distribution(p);
  CHECK(c.kind == CoefficientTable::Kind::kDistribution);
  CHECK(std::abs(c.values.at({2, 1}) - t.values.at({2, 1}) / std::pow(2.0, 11)) < 1e-15);
  std::stringstream s2;
  c.write_csv(s2);
  CHECK(CoefficientTable::read_csv(s2).kind == CoefficientTable::Kind::kDistribution);
}
