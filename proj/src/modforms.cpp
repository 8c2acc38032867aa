// SPDX-License-Identifier: Apache-2.0
#include "glv/modforms.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>

#include "glv/error.hpp"

namespace glv {

std::string to_string(i128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  // negate in unsigned space so the minimum value is handled
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v)
                            : static_cast<unsigned __int128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

// -- tau ---------------------------------------------------------------------

std::vector<i128> ramanujan_tau(i64 n_max) {
  if (n_max < 1 || n_max > 100000)
    throw Error(ErrorCode::kInvalidArgument,
                "ramanujan_tau supports 1 <= n_max <= 100000, got " +
                    std::to_string(n_max));
  const std::size_t len = static_cast<std::size_t>(n_max);  // powers 0..n_max-1

  // prod (1 - x^m) = sum_k (-1)^k x^{k(3k-1)/2}, k over all integers
  std::vector<std::pair<std::size_t, int>> pent;
  for (i64 k = 1;; ++k) {
    const i64 e1 = k * (3 * k - 1) / 2;
    const i64 e2 = k * (3 * k + 1) / 2;
    if (e1 >= static_cast<i64>(len)) break;
    const int sign = (k % 2) ? -1 : 1;
    pent.emplace_back(static_cast<std::size_t>(e1), sign);
    if (e2 < static_cast<i64>(len))
      pent.emplace_back(static_cast<std::size_t>(e2), sign);
  }

  std::vector<i128> poly(len, 0);
  poly[0] = 1;
  for (int rep = 0; rep < 24; ++rep) {
    // in place: high indices first, the constant term of the factor is 1
    for (std::size_t i = len; i-- > 1;) {
      i128 acc = poly[i];
      for (auto [e, sign] : pent) {
        if (e > i) break;
        i128 term = poly[i - e];
        bool ovf = sign > 0 ? __builtin_add_overflow(acc, term, &acc)
                            : __builtin_sub_overflow(acc, term, &acc);
        if (ovf)
          throw Error(ErrorCode::kInvalidArgument,
                      "128-bit overflow in eta-product expansion");
      }
      poly[i] = acc;
    }
  }
  std::vector<i128> tau(len + 1, 0);
  for (std::size_t n = 1; n <= len; ++n) tau[n] = poly[n - 1];
  return tau;
}

std::array<std::complex<double>, 2> satake_gl2(i64 p, i128 tau_p) {
  const long double x = static_cast<long double>(tau_p) /
                        std::pow(static_cast<long double>(p), 5.5L);
  const long double disc = x * x - 4.0L;
  if (disc < 0) {
    const long double im = std::sqrt(-disc) / 2.0L;
    const std::complex<double> a(static_cast<double>(x / 2.0L),
                                 static_cast<double>(im));
    return {a, std::conj(a)};
  }
  const long double r = (x + std::copysign(std::sqrt(disc), x)) / 2.0L;
  return {std::complex<double>(static_cast<double>(r), 0.0),
          std::complex<double>(static_cast<double>(1.0L / r), 0.0)};
}

// -- Schur polynomials ---------------------------------------------------------

namespace {

std::complex<double> ipow(std::complex<double> z, int e) {
  std::complex<double> r = 1.0;
  while (e > 0) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

std::vector<int> padded(std::span<const int> partition, std::size_t n) {
  if (partition.size() > n)
    throw Error(ErrorCode::kInvalidArgument,
                "partition longer than the number of variables");
  std::vector<int> mu(partition.begin(), partition.end());
  mu.resize(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (mu[i] < 0 || (i > 0 && mu[i] > mu[i - 1]))
      throw Error(ErrorCode::kInvalidArgument,
                  "partition must be non-increasing and non-negative");
  }
  return mu;
}

}  // namespace

std::complex<double> schur_jacobi_trudi(std::span<const int> partition,
                                        std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  const std::vector<int> mu = padded(partition, n);
  if (n == 0) return 1.0;
  const int top = mu[0] + static_cast<int>(n);

  // elementary symmetric e_0..e_n from prod (1 + x_j t)
  std::vector<std::complex<double>> e(n + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j + 1; i > 0; --i) e[i] += x[j] * e[i - 1];
  // complete homogeneous h_0..h_top
  std::vector<std::complex<double>> h(static_cast<std::size_t>(top) + 1, 0.0);
  h[0] = 1.0;
  for (int k = 1; k <= top; ++k) {
    std::complex<double> acc = 0.0;
    for (int i = 1; i <= std::min<int>(k, static_cast<int>(n)); ++i)
      acc += (i % 2 ? 1.0 : -1.0) * e[i] * h[k - i];
    h[k] = acc;
  }
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int idx = mu[i] - static_cast<int>(i) + static_cast<int>(j);
      m(i, j) = idx < 0 ? std::complex<double>(0.0) : h[idx];
    }
  return m.determinant();
}

std::complex<double> schur_coefficient(std::span<const int> partition,
                                       std::span<const std::complex<double>> x) {
  const std::size_t n = x.size();
  const std::vector<int> mu = padded(partition, n);
  if (n == 0) return 1.0;

  double min_gap = INFINITY, scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(x[i]));
    for (std::size_t j = i + 1; j < n; ++j)
      min_gap = std::min(min_gap, std::abs(x[i] - x[j]));
  }
  if (n > 1 && min_gap < 1e-4 * scale) return schur_jacobi_trudi(partition, x);

  Eigen::MatrixXcd num(n, n), den(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int base = static_cast<int>(n - 1 - i);
      num(i, j) = ipow(x[j], mu[i] + base);
      den(i, j) = ipow(x[j], base);
    }
  return num.determinant() / den.determinant();
}

double weyl_dimension(std::span<const int> mu, int n) {
  std::vector<int> m(mu.begin(), mu.end());
  m.resize(static_cast<std::size_t>(n), 0);
  double dim = 1.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dim *= static_cast<double>(m[i] - m[j] + j - i) / (j - i);
  return dim;
}

// -- Satake-based forms ---------------------------------------------------------

SatakeForm::SatakeForm(SatakeData data, i64 coverage)
    : data_(std::move(data)), coverage_(coverage) {
  if (data_.degree < 1)
    throw Error(ErrorCode::kInvalidArgument, "form degree must be >= 1");
  for (const auto& [p, alphas] : data_.params)
    if (static_cast<int>(alphas.size()) != data_.degree)
      throw Error(ErrorCode::kInvalidArgument,
                  "Satake multiset at p=" + std::to_string(p) +
                      " has the wrong size");
}

namespace {

// p-adic valuations of |k_j| grouped by prime.
std::map<i64, std::vector<int>> prime_exponents(std::span<const i64> k) {
  std::map<i64, std::vector<int>> out;
  for (std::size_t j = 0; j < k.size(); ++j) {
    const i64 a = k[j] < 0 ? -k[j] : k[j];
    for (auto [p, e] : factorize(a)) {
      auto& v = out[p];
      v.resize(k.size(), 0);
      v[j] = e;
    }
  }
  return out;
}

std::vector<int> block_partition(const std::vector<int>& e) {
  std::vector<int> mu(e.size() + 1, 0);
  for (std::size_t i = e.size(); i-- > 0;) mu[i] = mu[i + 1] + e[i];
  return mu;
}

}  // namespace

std::complex<double> SatakeForm::coefficient(std::span<const i64> k) const {
  if (static_cast<int>(k.size()) != data_.degree - 1)
    throw Error(ErrorCode::kInvalidArgument,
                "index tuple must have length n-1 = " +
                    std::to_string(data_.degree - 1));
  for (i64 kj : k) {
    if (kj == 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "zero index component: cusp form coefficients vanish");
    const i64 a = kj < 0 ? -kj : kj;
    if (a > coverage_)
      throw Error(ErrorCode::kCoverage,
                  "coefficient index " + std::to_string(a) +
                      " exceeds provider coverage " +
                      std::to_string(coverage_) + " (needs primes up to " +
                      std::to_string(a) + ")");
  }
  std::complex<double> value = 1.0;
  for (const auto& [p, e] : prime_exponents(k)) {
    auto it = data_.params.find(p);
    if (it == data_.params.end())
      throw Error(ErrorCode::kCoverage,
                  "no Satake parameters for p=" + std::to_string(p));
    const std::vector<int> mu = block_partition(e);
    value *= schur_coefficient(mu, it->second);
  }
  return value;
}

double SatakeForm::error_bound(std::span<const i64> k) const {
  double dims = 1.0;
  int blocks = 0;
  for (const auto& [p, e] : prime_exponents(k)) {
    const std::vector<int> mu = block_partition(e);
    dims *= weyl_dimension(mu, data_.degree) * (1.0 + mu[0]);
    ++blocks;
  }
  return 8.0 * std::numeric_limits<double>::epsilon() * dims * (1 + blocks);
}

std::unique_ptr<SatakeForm> make_delta_form(i64 n_max) {
  n_max = std::max<i64>(n_max, 2);
  const auto tau = ramanujan_tau(n_max);
  SatakeData data{"delta", 2, {}, "unitary"};
  for (i64 p : primes_up_to(n_max)) {
    auto a = satake_gl2(p, tau[p]);
    data.params[p] = {a[0], a[1]};
  }
  return std::make_unique<SatakeForm>(std::move(data), n_max);
}

std::unique_ptr<SatakeForm> make_sym2_delta_form(i64 n_max) {
  n_max = std::max<i64>(n_max, 2);
  const auto tau = ramanujan_tau(n_max);
  SatakeData data{"sym2-delta", 3, {}, "unitary"};
  for (i64 p : primes_up_to(n_max)) {
    auto a = satake_gl2(p, tau[p]);
    data.params[p] = {a[0] * a[0], 1.0, a[1] * a[1]};
  }
  return std::make_unique<SatakeForm>(std::move(data), n_max);
}

std::unique_ptr<CoefficientProvider> make_form(const std::string& id,
                                               i64 n_max) {
  if (id == "delta") return make_delta_form(n_max);
  if (id == "sym2-delta") return make_sym2_delta_form(n_max);
  throw Error(ErrorCode::kInvalidArgument, "unknown form '" + id + "'");
}

double sym2_coefficient(i64 k1, i64 k2) {
  static std::mutex mu;
  static std::unique_ptr<SatakeForm> form;
  const i64 need = std::max<i64>(std::abs(k1), std::abs(k2));
  std::lock_guard<std::mutex> lock(mu);
  if (!form || form->coverage() < need)
    form = make_sym2_delta_form(std::max(need, std::min<i64>(2 * need + 1024, 100000)));
  const i64 k[2] = {k1, k2};
  return form->coefficient(k).real();
}

// -- normalizations ------------------------------------------------------------

namespace {

std::complex<double> ctoa_factor(std::span<const i64> k,
                                 const ArchParams& params) {
  if (k.size() + 1 != params.n())
    throw Error(ErrorCode::kInvalidArgument,
                "index tuple must have length n-1");
  std::complex<double> f = 1.0;
  std::complex<double> lam_sum = 0.0;
  int del_sum = 0;
  for (std::size_t j = 0; j < k.size(); ++j) {
    if (k[j] == 0)
      throw Error(ErrorCode::kInvalidArgument,
                  "zero index component: cusp form coefficients vanish");
    lam_sum += params.lambda[j];
    del_sum += params.delta[j];
    const double ak = static_cast<double>(k[j] < 0 ? -k[j] : k[j]);
    f *= std::exp(lam_sum * std::log(ak));
    if (k[j] < 0 && del_sum % 2) f = -f;
  }
  return f;
}

}  // namespace

std::complex<double> a_to_c(std::complex<double> a, std::span<const i64> k,
                            const ArchParams& params) {
  return a / ctoa_factor(k, params);
}

std::complex<double> c_to_a(std::complex<double> c, std::span<const i64> k,
                            const ArchParams& params) {
  return c * ctoa_factor(k, params);
}

// -- tables --------------------------------------------------------------------

CoefficientTable CoefficientTable::from_provider(const CoefficientProvider& form,
                                                 i64 max_index) {
  CoefficientTable t;
  t.index_length = form.degree() - 1;
  std::vector<i64> k(static_cast<std::size_t>(t.index_length), 1);
  if (t.index_length == 0) return t;
  while (true) {
    t.values[k] = form.coefficient(k);
    std::size_t i = k.size();
    while (i > 0) {
      --i;
      if (++k[i] <= max_index) break;
      k[i] = 1;
      if (i == 0) return t;
    }
  }
}

CoefficientTable CoefficientTable::to_distribution(
    const ArchParams& params) const {
  if (kind != Kind::kHecke)
    throw Error(ErrorCode::kInvalidArgument, "table is already c_k");
  CoefficientTable out;
  out.kind = Kind::kDistribution;
  out.index_length = index_length;
  for (const auto& [k, a] : values) out.values[k] = a_to_c(a, k, params);
  return out;
}

void CoefficientTable::write_csv(std::ostream& os) const {
  os << "# glv-coefficients v1 kind=" << (kind == Kind::kHecke ? "a" : "c")
     << "\n";
  for (int j = 1; j <= index_length; ++j) os << "k" << j << ",";
  os << "re,im\n";
  std::ostringstream row;
  for (const auto& [k, v] : values) {
    row.str("");
    row << std::setprecision(17);
    for (i64 kj : k) row << kj << ",";
    row << v.real() << "," << v.imag() << "\n";
    os << row.str();
  }
}

CoefficientTable CoefficientTable::read_csv(std::istream& is) {
  CoefficientTable t;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::kConfig,
                "coefficient CSV line " + std::to_string(lineno) + ": " + why);
  };
  ++lineno;
  if (!std::getline(is, line) || line.rfind("# glv-coefficients v1 kind=", 0) != 0)
    fail("missing '# glv-coefficients v1' banner");
  const char kind = line.back();
  if (kind == 'a')
    t.kind = Kind::kHecke;
  else if (kind == 'c')
    t.kind = Kind::kDistribution;
  else
    fail("unknown kind");
  ++lineno;
  if (!std::getline(is, line)) fail("missing header");
  t.index_length = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 1;
  if (t.index_length < 0) fail("malformed header");
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (static_cast<int>(cells.size()) != t.index_length + 2)
      fail("expected " + std::to_string(t.index_length + 2) + " columns");
    try {
      std::vector<i64> k;
      for (int j = 0; j < t.index_length; ++j) k.push_back(std::stoll(cells[j]));
      t.values[k] = {std::stod(cells[t.index_length]),
                     std::stod(cells[t.index_length + 1])};
    } catch (const std::logic_error&) {
      fail("unparsable number");
    }
  }
  return t;
}

}  // namespace glv
