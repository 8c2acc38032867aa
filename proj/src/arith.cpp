// SPDX-License-Identifier: Apache-2.0
#include "glv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <unordered_map>

#include "glv/error.hpp"
#include "glv/summation.hpp"

namespace glv {

namespace {

i64 checked_mul(i64 x, i64 y) {
  i64 r;
  if (__builtin_mul_overflow(x, y, &r))
    throw Error(ErrorCode::kInvalidArgument, "integer overflow in modulus");
  return r;
}

i64 abs64(i64 x) { return x < 0 ? -x : x; }

// Largest modulus for which phases are histogrammed before exponentiation.
constexpr i64 kHistogramLimit = i64{1} << 22;

}  // namespace

i64 mod_inverse(i64 x, i64 m) {
  if (m < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "modulus must be positive, got " + std::to_string(m));
  if (m == 1) return 0;
  i64 a = mod_floor(x, m);
  // extended Euclid on (a, m)
  i64 r0 = m, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 qt = r0 / r1;
    i64 r2 = r0 - qt * r1;
    r0 = r1;
    r1 = r2;
    i64 t2 = t0 - qt * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1) throw NoInverseError(x, m, r0);
  return mod_floor(t0, m);
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "factorize expects n >= 1, got " + std::to_string(n));
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> divisors(i64 n) {
  std::vector<i64> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

i64 euler_phi(i64 n) {
  i64 r = n;
  for (auto [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

int moebius(i64 n) {
  int mu = 1;
  for (auto [p, e] : factorize(n)) {
    if (e > 1) return 0;
    mu = -mu;
  }
  return mu;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<i64> primes_up_to(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (i64 p = 2; p <= n; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (i64 k = p * p; k <= n; k += p) composite[k] = true;
  }
  return out;
}

// -- RationalPhase ----------------------------------------------------------

RationalPhase::RationalPhase(i64 numerator, i64 modulus) {
  if (modulus < 1)
    throw Error(ErrorCode::kInvalidArgument,
                "phase modulus must be positive, got " +
                    std::to_string(modulus));
  i64 r = mod_floor(numerator, modulus);
  i64 g = std::gcd(r, modulus);
  num_ = r / g;
  mod_ = modulus / g;
}

RationalPhase RationalPhase::operator+(const RationalPhase& o) const {
  i64 g = std::gcd(mod_, o.mod_);
  i64 l = checked_mul(mod_ / g, o.mod_);
  __int128 n = static_cast<__int128>(num_) * (l / mod_) +
               static_cast<__int128>(o.num_) * (l / o.mod_);
  return RationalPhase(static_cast<i64>(n % l), l);
}

RationalPhase RationalPhase::operator-() const {
  return RationalPhase(mod_ - num_, mod_);
}

std::complex<double> RationalPhase::value() const {
  return unit_root(num_, mod_);
}

std::complex<double> unit_root(i64 k, i64 m) {
  i64 r = mod_floor(k, m);
  if (r == 0) return {1.0, 0.0};
  // Fold onto [0, m/8] by the symmetries of the circle so the trigonometric
  // argument stays small.
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  bool flip_im = false;
  if (2 * r > m) {
    r = m - r;
    flip_im = true;
  }
  // now r/m in (0, 1/2]
  long double c, s;
  if (4 * r <= m) {
    long double ang = two_pi * static_cast<long double>(r) / m;
    c = std::cos(ang);
    s = std::sin(ang);
  } else {
    // angle = pi/2 + phi with phi = 2 pi (4r - m) / (4m)
    long double phi = two_pi * static_cast<long double>(4 * r - m) / (4.0L * m);
    c = -std::sin(phi);
    s = std::cos(phi);
  }
  return {static_cast<double>(c),
          static_cast<double>(flip_im ? -s : s)};
}

// -- DivisorChain -----------------------------------------------------------

i64 DivisorChain::product() const {
  i64 p = 1;
  for (i64 x : d) p = checked_mul(p, x);
  return p;
}

i64 DivisorChain::modulus(std::size_t j) const {
  i64 num = abs64(q);
  i64 den = 1;
  for (std::size_t i = 0; i < j; ++i) {
    num = checked_mul(num, abs64(c[i]));
    den = checked_mul(den, d[i]);
  }
  if (den == 0 || num % den != 0)
    throw Error(ErrorCode::kInvalidChain,
                "intermediate modulus " + std::to_string(num) + "/" +
                    std::to_string(den) + " is not an integer");
  return num / den;
}

void DivisorChain::validate() const {
  if (q == 0) throw Error(ErrorCode::kInvalidChain, "q must be nonzero");
  if (c.size() != d.size())
    throw Error(ErrorCode::kInvalidChain,
                "chain length " + std::to_string(d.size()) +
                    " does not match c length " + std::to_string(c.size()));
  i64 num = abs64(q);
  i64 den = 1;
  for (std::size_t j = 0; j < d.size(); ++j) {
    if (c[j] == 0)
      throw Error(ErrorCode::kInvalidChain, "c entries must be nonzero");
    if (d[j] < 1)
      throw Error(ErrorCode::kInvalidChain, "d entries must be positive");
    num = checked_mul(num, abs64(c[j]));
    // d_j must divide q c_1..c_j / (d_1..d_{j-1}) = num / den
    if (num % den != 0 || (num / den) % d[j] != 0)
      throw Error(ErrorCode::kInvalidChain,
                  "d_" + std::to_string(j + 1) + "=" + std::to_string(d[j]) +
                      " does not divide " + std::to_string(num / den));
    den = checked_mul(den, d[j]);
  }
}

std::vector<DivisorChain> divisor_chains(i64 q, std::span<const i64> c) {
  if (q == 0)
    throw Error(ErrorCode::kInvalidArgument, "q must be nonzero");
  for (i64 cj : c)
    if (cj == 0)
      throw Error(ErrorCode::kInvalidArgument, "c entries must be nonzero");

  std::vector<DivisorChain> out;
  DivisorChain proto;
  proto.q = abs64(q);
  proto.c.assign(c.begin(), c.end());

  std::vector<i64> current;
  // remaining = q |c_1..c_j| / (d_1..d_{j-1}) before choosing d_j
  auto rec = [&](auto&& self, std::size_t j, i64 quotient) -> void {
    if (j == c.size()) {
      DivisorChain ch = proto;
      ch.d = current;
      out.push_back(std::move(ch));
      return;
    }
    i64 avail = checked_mul(quotient, abs64(c[j]));
    for (i64 dj : divisors(avail)) {
      current.push_back(dj);
      self(self, j + 1, avail / dj);
      current.pop_back();
    }
  };
  rec(rec, 0, abs64(q));
  return out;
}

// -- exponential sums -------------------------------------------------------

namespace {

struct UnitTable {
  i64 modulus;
  std::vector<i64> units;
  std::vector<i64> inverses;
};

UnitTable unit_table(i64 m) {
  UnitTable t{m, {}, {}};
  if (m == 1) {
    t.units.push_back(0);
    t.inverses.push_back(0);
    return t;
  }
  for (i64 x = 1; x < m; ++x) {
    if (std::gcd(x, m) != 1) continue;
    t.units.push_back(x);
    t.inverses.push_back(mod_inverse(x, m));
  }
  return t;
}

i64 lcm_checked(i64 a, i64 b) { return checked_mul(a / std::gcd(a, b), b); }

// Per-thread memo keyed by modulus; sweeps over (a, b) at fixed q reuse it.
template <class T, class Make>
const T& memo(std::unordered_map<i64, T>& cache, i64 m, Make make) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  if (cache.size() >= 64) cache.clear();
  return cache.emplace(m, make(m)).first->second;
}

const UnitTable& cached_unit_table(i64 m) {
  thread_local std::unordered_map<i64, UnitTable> cache;
  return memo(cache, m, unit_table);
}

const std::vector<std::complex<double>>& roots_of_unity(i64 m) {
  thread_local std::unordered_map<i64, std::vector<std::complex<double>>> cache;
  return memo(cache, m, [](i64 mm) {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(mm));
    for (i64 k = 0; k < mm; ++k) v[static_cast<std::size_t>(k)] = unit_root(k, mm);
    return v;
  });
}

}  // namespace

std::complex<double> hyperkloosterman(i64 a, i64 b, const DivisorChain& chain) {
  chain.validate();
  const i64 q = abs64(chain.q);
  const std::size_t len = chain.length();
  if (len == 0) {
    RationalPhase ph(mod_floor(a, q) * mod_floor(b, q) % q, q);
    return ph.value();
  }

  // Denominators of the phase terms: q, m_1, ..., m_len.
  std::vector<i64> mods(len + 1);
  mods[0] = q;
  for (std::size_t j = 1; j <= len; ++j) mods[j] = chain.modulus(j);
  i64 common = 1;
  for (i64 m : mods) common = lcm_checked(common, m);

  std::vector<const UnitTable*> tables;
  tables.reserve(len);
  for (std::size_t j = 1; j <= len; ++j) tables.push_back(&cached_unit_table(mods[j]));

  // Term j (0-based): d_{j+1} x_{j+1} xbar_j / mods[j] with xbar_0 := a.
  // Last term: b xbar_len / mods[len]. Everything is scaled to `common`.
  std::vector<i64> scale(len + 1);
  for (std::size_t j = 0; j <= len; ++j) scale[j] = common / mods[j];

  const i64 a_red = mod_floor(a, q);
  const i64 b_red = mod_floor(b, mods[len]);

  const bool histogram = common <= kHistogramLimit;
  std::vector<i64> counts;
  if (histogram) counts.assign(static_cast<std::size_t>(common), 0);
  CompensatedSum<std::complex<double>> direct;

  auto mulmod = [](i64 x, i64 y, i64 m) {
    return static_cast<i64>(static_cast<__int128>(x) * y % m);
  };

  // Iterate over all tuples (x_1..x_len) in lexicographic order.
  auto rec = [&](auto&& self, std::size_t j, i64 prev_inv, i64 phase) -> void {
    const UnitTable& t = *tables[j];
    const i64 mj = mods[j];  // denominator of term j
    for (std::size_t k = 0; k < t.units.size(); ++k) {
      const i64 x = t.units[k];
      i64 num = mulmod(mulmod(chain.d[j], x, mj), mod_floor(prev_inv, mj), mj);
      i64 ph = (phase + mulmod(num, scale[j], common)) % common;
      if (j + 1 < len) {
        self(self, j + 1, t.inverses[k], ph);
      } else {
        i64 last = mulmod(b_red, t.inverses[k], mods[len]);
        i64 total = (ph + mulmod(last, scale[len], common)) % common;
        if (histogram)
          ++counts[static_cast<std::size_t>(total)];
        else
          direct.add(unit_root(total, common));
      }
    }
  };
  rec(rec, 0, a_red, 0);

  if (!histogram) return direct.value();
  const auto& roots = roots_of_unity(common);
  CompensatedSum<std::complex<double>> acc;
  for (i64 k = 0; k < common; ++k) {
    const i64 cnt = counts[static_cast<std::size_t>(k)];
    if (cnt) acc.add(static_cast<double>(cnt) * roots[static_cast<std::size_t>(k)]);
  }
  return acc.value();
}

std::complex<double> hyperkloosterman_bruteforce(i64 a, i64 b,
                                                 const DivisorChain& chain) {
  chain.validate();
  const i64 q = abs64(chain.q);
  const std::size_t len = chain.length();
  const double two_pi = 2.0 * std::numbers::pi;
  if (len == 0) {
    const double u = static_cast<double>(mod_floor(a, q)) *
                     static_cast<double>(mod_floor(b, q)) / static_cast<double>(q);
    return std::polar(1.0, two_pi * (u - std::floor(u)));
  }
  std::vector<i64> mods(len + 1);
  mods[0] = q;
  for (std::size_t j = 1; j <= len; ++j) mods[j] = chain.modulus(j);
  std::vector<i64> x(len, 0);
  std::complex<double> total = 0.0;
  while (true) {
    bool units = true;
    for (std::size_t j = 0; j < len; ++j)
      if (std::gcd(x[j], mods[j + 1]) != 1) units = false;
    if (units) {
      double u = 0.0;
      i64 prev = mod_floor(a, q);
      for (std::size_t j = 0; j < len; ++j) {
        const i64 num = mod_floor(chain.d[j] * x[j] % mods[j] * prev, mods[j]);
        u += static_cast<double>(num) / static_cast<double>(mods[j]);
        prev = mod_inverse(x[j], mods[j + 1]);
      }
      u += static_cast<double>(mod_floor(mod_floor(b, mods[len]) * prev, mods[len])) /
           static_cast<double>(mods[len]);
      total += std::polar(1.0, two_pi * (u - std::floor(u)));
    }
    std::size_t j = len;
    while (j > 0) {
      --j;
      if (++x[j] < mods[j + 1]) break;
      x[j] = 0;
      if (j == 0) return total;
    }
  }
}

std::complex<double> kloosterman_classical(i64 a, i64 b, i64 q) {
  if (q < 1)
    throw Error(ErrorCode::kInvalidArgument, "q must be positive");
  if (q == 1) return {1.0, 0.0};
  // Own tables in plain double precision, independent of unit_root.
  struct Table {
    std::vector<std::complex<double>> e;
    std::vector<std::pair<i64, i64>> units;  // (x, xbar)
  };
  thread_local std::unordered_map<i64, Table> cache;
  const Table& t = memo(cache, q, [](i64 m) {
    Table out;
    const double two_pi = 2.0 * std::numbers::pi;
    for (i64 k = 0; k < m; ++k)
      out.e.push_back(std::polar(1.0, two_pi * static_cast<double>(k) / static_cast<double>(m)));
    for (i64 x = 1; x < m; ++x)
      if (std::gcd(x, m) == 1) out.units.emplace_back(x, mod_inverse(x, m));
    return out;
  });
  const i64 ar = mod_floor(a, q), br = mod_floor(b, q);
  CompensatedSum<std::complex<double>> acc;
  for (const auto& [x, xbar] : t.units)
    acc.add(t.e[static_cast<std::size_t>((ar * x + br * xbar) % q)]);
  return acc.value();
}

}  // namespace glv
