// SPDX-License-Identifier: Apache-2.0
#include "glv/dirichlet.hpp"

#include <numeric>

#include "glv/error.hpp"
#include "glv/summation.hpp"

namespace glv {

namespace {

// One cyclic factor of (Z/qZ)^*: the subgroup generated by `generator`
// modulo `prime_power`, together with a discrete-log table on residues
// modulo prime_power.
struct CyclicFactor {
  i64 prime_power;
  i64 order;
  std::vector<i64> log;  // log[a mod prime_power], -1 when not in subgroup
  bool sign = false;     // the <-1> factor of 2^e, e >= 3
};

i64 powmod(i64 b, i64 e, i64 m) {
  __int128 r = 1 % m, x = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<i64>(r);
}

CyclicFactor make_factor(i64 prime_power, i64 generator, i64 order) {
  CyclicFactor f{prime_power, order, std::vector<i64>(prime_power, -1)};
  i64 x = 1 % prime_power;
  for (i64 k = 0; k < order; ++k) {
    f.log[x] = k;
    x = static_cast<i64>(static_cast<__int128>(x) * generator % prime_power);
  }
  return f;
}

i64 primitive_root(i64 p, i64 pe) {
  // A primitive root mod p that stays primitive mod p^2 is primitive mod p^e.
  const i64 phi_p = p - 1;
  auto fac = factorize(phi_p);
  for (i64 g = 2; g < p + 2; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [r, e] : fac)
      if (powmod(g, phi_p / r, p) == 1) ok = false;
    if (!ok) continue;
    if (pe > p && powmod(g, p - 1, p * p) == 1) continue;
    return g;
  }
  throw Error(ErrorCode::kInvalidArgument, "no primitive root found");
}

// Generators of (Z/qZ)^*, one list entry per cyclic factor.
std::vector<CyclicFactor> cyclic_factors(i64 q) {
  std::vector<CyclicFactor> out;
  for (auto [p, e] : factorize(q)) {
    i64 pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;
      out.push_back(make_factor(pe, pe - 1, 2));  // <-1>
      out.back().sign = e >= 3;
      if (e >= 3) out.push_back(make_factor(pe, 5, pe / 4));
      continue;
    }
    out.push_back(make_factor(pe, primitive_root(p, pe), pe / p * (p - 1)));
  }
  return out;
}

// Discrete logarithms of a unit modulo q against each cyclic factor.
std::vector<i64> discrete_logs(i64 a, const std::vector<CyclicFactor>& fs) {
  std::vector<i64> logs(fs.size(), 0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const CyclicFactor& f = fs[i];
    i64 r = mod_floor(a, f.prime_power);
    if (f.sign) {
      logs[i] = (r % 4 == 1) ? 0 : 1;
      continue;
    }
    if (f.prime_power % 8 == 0) {
      // <5> component: strip the sign first
      if (r % 4 == 3) r = f.prime_power - r;
    }
    logs[i] = f.log[r];
    if (logs[i] < 0)
      throw Error(ErrorCode::kInvalidArgument, "discrete log failed");
  }
  return logs;
}

}  // namespace

DirichletCharacter::DirichletCharacter(
    i64 modulus, std::vector<std::optional<RationalPhase>> values)
    : q_(modulus), values_(std::move(values)) {
  if (q_ < 1 || static_cast<i64>(values_.size()) != q_)
    throw Error(ErrorCode::kInvalidArgument,
                "character table size must equal the modulus");
  auto m1 = phase(-1);
  parity_ = (m1 && *m1 == RationalPhase(1, 2)) ? 1 : 0;
}

i64 DirichletCharacter::order() const {
  i64 l = 1;
  for (const auto& v : values_)
    if (v) l = std::lcm(l, v->modulus());
  return l;
}

std::optional<RationalPhase> DirichletCharacter::phase(i64 a) const {
  return values_[static_cast<std::size_t>(mod_floor(a, q_))];
}

std::complex<double> DirichletCharacter::operator()(i64 a) const {
  auto ph = phase(a);
  return ph ? ph->value() : std::complex<double>{0.0, 0.0};
}

std::vector<DirichletCharacter> characters_mod(i64 q) {
  if (q < 1)
    throw Error(ErrorCode::kInvalidArgument, "modulus must be positive");
  const auto factors = cyclic_factors(q);

  std::vector<std::vector<i64>> logs(static_cast<std::size_t>(q));
  for (i64 a = 0; a < q; ++a)
    if (std::gcd(a, q) == 1) logs[a] = discrete_logs(a, factors);

  std::vector<DirichletCharacter> out;
  std::vector<i64> k(factors.size(), 0);
  while (true) {
    std::vector<std::optional<RationalPhase>> values(static_cast<std::size_t>(q));
    for (i64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      RationalPhase ph;
      for (std::size_t i = 0; i < factors.size(); ++i)
        ph = ph + RationalPhase(k[i] * logs[a][i], factors[i].order);
      values[a] = ph;
    }
    out.emplace_back(q, std::move(values));
    // odometer over exponent vectors, last index fastest
    std::size_t i = factors.size();
    while (i > 0) {
      --i;
      if (++k[i] < factors[i].order) break;
      k[i] = 0;
      if (i == 0) return out;
    }
    if (factors.empty()) return out;
  }
}

bool is_primitive(const DirichletCharacter& chi) {
  const i64 q = chi.modulus();
  for (i64 d : divisors(q)) {
    if (d == q) break;
    // induced from modulus d iff trivial on units congruent to 1 mod d
    bool induced = true;
    for (i64 a = 1 % q; a < q + (q == 1); a += d) {
      auto ph = chi.phase(a);
      if (ph && ph->numerator() != 0) {
        induced = false;
        break;
      }
    }
    if (induced) return false;
  }
  return true;
}

std::complex<double> gauss_sum(const DirichletCharacter& chi) {
  return twist_average(chi, -1);
}

std::complex<double> twist_average(const DirichletCharacter& chi, i64 r) {
  const i64 q = chi.modulus();
  CompensatedSum<std::complex<double>> acc;
  for (i64 a = 0; a < q; ++a) {
    auto ph = chi.phase(a);
    if (!ph) continue;
    RationalPhase add(-mod_floor(r, q) * a, q);
    acc.add((*ph + add).value());
  }
  return acc.value();
}

}  // namespace glv
