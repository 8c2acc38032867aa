// SPDX-License-Identifier: Apache-2.0
#include "glv/voronoi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

#include "glv/error.hpp"
#include "glv/summation.hpp"

namespace glv {

namespace {

using cld_sum = CompensatedSum<cld>;
constexpr i64 kBlock = 512;
constexpr double kYStart = 1.0;
constexpr double kYStep = 1.1;
constexpr double kYLimit = 1e7;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::complex<double> to_double(cld z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

// Sums block(k) for k = 0..blocks-1 in ascending order; blocks may be
// computed on several threads but the reduction order is fixed.
template <typename Fn>
cld ordered_block_sum(i64 blocks, int threads, Fn&& block) {
  std::vector<cld> partial(static_cast<std::size_t>(blocks));
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(blocks)));
  if (workers == 1) {
    for (i64 k = 0; k < blocks; ++k) partial[static_cast<std::size_t>(k)] = block(k);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (i64 k = w; k < blocks; k += workers)
            partial[static_cast<std::size_t>(k)] = block(k);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  cld_sum acc;
  for (const cld& p : partial) acc.add(p);
  return acc.value();
}

std::vector<i64> lhs_index(const VoronoiInstance& inst, i64 r) {
  std::vector<i64> k(inst.c.rbegin(), inst.c.rend());
  k.push_back(r);
  return k;
}

std::vector<i64> rhs_index(const DivisorChain& chain, i64 r) {
  std::vector<i64> k{r};
  k.insert(k.end(), chain.d.rbegin(), chain.d.rend());
  return k;
}

void require_coverage(const CoefficientProvider& form, i64 need, const char* side) {
  if (need > form.coverage())
    throw Error(ErrorCode::kCoverage,
                std::string(side) + " side needs coefficients of '" + form.id() +
                    "' up to index " + std::to_string(need) + ", provider covers " +
                    std::to_string(form.coverage()));
}

}  // namespace

// -- instance --------------------------------------------------------------------

void VoronoiInstance::validate() const {
  if (!form) throw Error(ErrorCode::kInvalidArgument, "instance has no form");
  if (!f) throw Error(ErrorCode::kInvalidArgument, "instance has no test function");
  params.validate();
  if (params.n() < 2)
    throw Error(ErrorCode::kInvalidArgument, "the summation formula needs n >= 2");
  if (form->degree() != n())
    throw Error(ErrorCode::kInvalidArgument,
                "form '" + form->id() + "' has degree " + std::to_string(form->degree()) +
                    " but the parameters have n=" + std::to_string(n()));
  if (dual && dual->degree() != n())
    throw Error(ErrorCode::kInvalidArgument, "dual form degree mismatch");
  if (static_cast<int>(c.size()) != n() - 2)
    throw Error(ErrorCode::kInvalidArgument,
                "c must have n-2=" + std::to_string(n() - 2) + " entries, got " +
                    std::to_string(c.size()));
  for (i64 cj : c)
    if (cj == 0) throw Error(ErrorCode::kInvalidArgument, "c entries must be nonzero");
  if (q == 0) throw Error(ErrorCode::kInvalidArgument, "q must be nonzero");
  const i64 g = std::gcd(a, q);
  if (g != 1)
    throw Error(ErrorCode::kInvalidArgument,
                "gcd(a,q) != 1: gcd(" + std::to_string(a) + "," + std::to_string(q) +
                    ")=" + std::to_string(g));
  bool member = false;
  for (std::size_t j = 0; j < params.n(); ++j)
    member = member || (std::abs(f->lambda_n() - params.lambda[j]) <= 1e-12 &&
                        (!enforce_membership || f->delta_n() == (params.delta[j] & 1)));
  if (!member)
    throw Error(ErrorCode::kInvalidArgument,
                "test function prefactor (lambda_n, delta_n) matches no parameter pair");
  if (threads < 1) throw Error(ErrorCode::kInvalidArgument, "threads must be >= 1");
}

std::shared_ptr<TestFunction> gaussian_for(const ArchParams& params, int m, double X) {
  return std::make_shared<GaussianTestFunction>(params.lambda.back(),
                                                params.delta.back(), m, X);
}

// -- sides -----------------------------------------------------------------------

SideResult lhs_sum(const VoronoiInstance& inst) {
  inst.validate();
  SideResult out;
  const TestFunction& f = *inst.f;
  const i64 q = std::abs(inst.q);
  for (i64 cj : inst.c) require_coverage(*inst.form, std::abs(cj), "left");

  auto term = [&](i64 r) -> cld {
    const auto fr = f.value(static_cast<double>(r));
    if (fr == 0.0) return 0;
    const auto k = lhs_index(inst, r);
    const auto a = inst.form->coefficient(k);
    const auto e = unit_root(mod_floor(-r * (inst.a % q), q), q);
    return cld(a) * cld(e) * cld(fr);
  };

  cld_sum acc;
  double max_term = 0.0;
  i64 R = inst.truncation.r_lhs;
  const double peak = f.decay_scale();
  if (R > 0) {
    require_coverage(*inst.form, R + 1, "left");
    for (i64 r = 1; r <= R; ++r)
      for (i64 s : {r, -r}) {
        const cld t = term(s);
        max_term = std::max(max_term, static_cast<double>(std::abs(t)));
        acc.add(t);
      }
  } else {
    for (i64 r = 1;; ++r) {
      require_coverage(*inst.form, r + 1, "left");
      for (i64 s : {r, -r}) {
        const cld t = term(s);
        max_term = std::max(max_term, static_cast<double>(std::abs(t)));
        acc.add(t);
      }
      const double next = static_cast<double>(r + 1);
      if (next > peak &&
          f.tail_bound(next) * next <= inst.truncation.term_tolerance * max_term) {
        R = r;
        break;
      }
      if (f.tail_bound(next) == 0.0 && max_term == 0.0) {
        R = r;
        break;
      }
    }
  }
  out.value = to_double(acc.value());
  out.max_term = max_term;
  out.diag.terms = 2 * R;
  out.diag.r_max = R;
  out.diag.first_neglected = std::max(static_cast<double>(std::abs(term(R + 1))),
                                      static_cast<double>(std::abs(term(-R - 1))));
  double tail = 0.0;
  for (i64 r = R + 1; r <= R + 256; ++r) tail += 2.0 * f.tail_bound(r) * static_cast<double>(r);
  out.diag.tail_bound = tail;
  return out;
}

std::complex<double> dual_kloosterman(i64 abar, i64 r, const DivisorChain& chain) {
  return hyperkloosterman(abar, r, chain);
}

long double chain_argument_scale(const DivisorChain& chain) {
  const std::size_t len = chain.length();
  const std::size_t n = len + 2;
  long double num = 1, den = std::pow(static_cast<long double>(std::abs(chain.q)),
                                      static_cast<long double>(n));
  for (std::size_t j = 0; j < len; ++j) {
    const int pw = static_cast<int>(n - 1 - j);  // d_{j+1}^{n-1-j}
    num *= std::pow(static_cast<long double>(chain.d[j]), pw);
    den *= std::pow(static_cast<long double>(chain.c[j]), pw - 1);
  }
  return num / den;
}

SideResult rhs_sum(const VoronoiInstance& inst, const VoronoiTransform& F, double scale) {
  inst.validate();
  SideResult out;
  if (F.is_zero()) {
    out.value = 0.0;
    return out;
  }
  const i64 q = std::abs(inst.q);
  const i64 abar = mod_inverse(mod_floor(inst.a, q), q);
  const auto chains = divisor_chains(q, inst.c);
  const CoefficientProvider& dual = inst.dual_form();
  if (scale <= 0.0) scale = lhs_sum(inst).max_term;
  const double tol_abs = inst.truncation.term_tolerance * scale;

  struct ChainData {
    DivisorChain chain;
    long double W;
    i64 modulus;
    std::vector<std::complex<double>> S;  // indexed by r mod modulus
    double d_prod;
    double s_max;
  };
  std::vector<ChainData> data;
  double s_max = 0.0;
  for (const auto& ch : chains) {
    ChainData cd{ch, chain_argument_scale(ch), 1, {}, 1.0, 0.0};
    cd.modulus = ch.length() == 0 ? q : ch.modulus(ch.length());
    cd.S.resize(static_cast<std::size_t>(cd.modulus));
    for (i64 r = 0; r < cd.modulus; ++r) {
      cd.S[static_cast<std::size_t>(r)] = dual_kloosterman(abar, r, ch);
      cd.s_max = std::max(cd.s_max, std::abs(cd.S[static_cast<std::size_t>(r)]));
    }
    for (i64 dj : ch.d) cd.d_prod *= static_cast<double>(dj);
    s_max = std::max(s_max, cd.s_max);
    data.push_back(std::move(cd));
  }

  // |F| is negligible past y_max: the first point of a run over a factor 2
  // in |y| where every sample times the weight bound is below tol_abs.
  const double bound = static_cast<double>(q) * std::max(1.0, s_max);
  double y_max = 0.0;
  if (inst.truncation.r_rhs <= 0) {
    double run_start = 0.0;
    for (double y = kYStart;; y *= kYStep) {
      if (y > kYLimit)
        throw Error(ErrorCode::kQuadrature,
                    "transform F shows no decay below the term tolerance up to |y|=" +
                        std::to_string(kYLimit));
      const double m = std::max(std::abs(F(y)), std::abs(F(-y))) * bound;
      if (m < tol_abs) {
        if (run_start == 0.0) run_start = y;
        if (y >= 2.0 * run_start) break;
      } else {
        run_start = 0.0;
      }
    }
    y_max = run_start;
  }
  out.diag.y_max = y_max;

  auto term = [&](const ChainData& cd, i64 r) -> cld {
    const long double y = static_cast<long double>(r) * cd.W;
    const auto k = rhs_index(cd.chain, std::abs(r));
    const auto a = dual.coefficient(k);
    const auto& S = cd.S[static_cast<std::size_t>(mod_floor(r, cd.modulus))];
    if (a == 0.0 || S == 0.0) return 0;
    const long double w = static_cast<long double>(q) /
                          (static_cast<long double>(std::abs(r)) * cd.d_prod);
    return cld(a) * w * cld(S) * cld(F(static_cast<double>(y)));
  };

  cld_sum total;
  for (const auto& cd : data) {
    i64 R = inst.truncation.r_rhs;
    if (R <= 0) R = static_cast<i64>(std::ceil(2.0L * y_max / std::abs(cd.W)));
    R = std::max<i64>(R, 1);
    require_coverage(dual, R + 1, "right");
    for (i64 dj : cd.chain.d) require_coverage(dual, dj, "right");
    const i64 blocks = (R + kBlock - 1) / kBlock;
    const cld value = ordered_block_sum(blocks, inst.threads, [&](i64 b) {
      cld_sum acc;
      const i64 lo = b * kBlock + 1, hi = std::min(R, (b + 1) * kBlock);
      for (i64 r = lo; r <= hi; ++r) {
        acc.add(term(cd, r));
        acc.add(term(cd, -r));
      }
      return acc.value();
    });
    ChainSubtotal sub;
    sub.d = cd.chain.d;
    sub.argument_scale = static_cast<double>(cd.W);
    sub.r_max = R;
    sub.terms = 2 * R;
    sub.value = to_double(value);
    out.chains.push_back(sub);
    total.add(value);
    out.diag.terms += 2 * R;
    out.diag.r_max = std::max(out.diag.r_max, R);
    out.diag.first_neglected =
        std::max({out.diag.first_neglected, static_cast<double>(std::abs(term(cd, R + 1))),
                  static_cast<double>(std::abs(term(cd, -R - 1)))});
  }
  out.value = to_double(total.value());
  return out;
}

SideResult rhs_sum(const VoronoiInstance& inst) {
  VoronoiTransform F(inst.params, inst.f, inst.contour);
  return rhs_sum(inst, F);
}

// -- verification ------------------------------------------------------------------

namespace {

void fill_echo(SummationReport& rep, const VoronoiInstance& inst) {
  rep.form_id = inst.form->id();
  rep.params = inst.params;
  rep.a = inst.a;
  rep.q = inst.q;
  rep.c = inst.c;
  rep.test_family = inst.f->family();
  rep.X = inst.f->decay_scale();
  if (auto* g = dynamic_cast<const GaussianTestFunction*>(inst.f.get())) rep.m = g->m();
  rep.tolerance = inst.tolerance;
  rep.truncation = inst.truncation;
}

void fill_contour(SummationReport& rep, const VoronoiTransform& F) {
  for (int delta = 0; delta < 2; ++delta) {
    rep.windows[static_cast<std::size_t>(delta)] = F.window(delta);
    for (const auto& l : F.lines(delta)) {
      ContourLine copy = l;
      copy.nodes.clear();
      rep.lines.push_back(std::move(copy));
    }
  }
}

void compare(SummationReport& rep) {
  rep.abs_err = std::abs(rep.lhs - rep.rhs);
  const double denom = std::max(std::abs(rep.lhs), std::abs(rep.rhs));
  rep.rel_err = denom > 0 ? rep.abs_err / denom : 0.0;
  rep.passed = rep.rel_err <= rep.tolerance.rel || denom <= rep.tolerance.abs_floor;
}

double self_test(const VoronoiTransform& F, const SummationReport& rep) {
  if (F.is_zero()) return 0.0;
  double smallest = INFINITY;
  for (const auto& ch : rep.chains) smallest = std::min(smallest, std::abs(ch.argument_scale));
  double worst = 0.0;
  for (double y : {smallest, 1.0, std::max(1.0, rep.rhs_diag.y_max / 2)}) {
    if (!(y > 0) || !std::isfinite(y)) continue;
    worst = std::max({worst, F.convergence_error(y), F.convergence_error(-y)});
  }
  return worst;
}

}  // namespace

SummationReport verify(const VoronoiInstance& inst, const VoronoiTransform& F) {
  inst.validate();
  SummationReport rep;
  fill_echo(rep, inst);
  Timings tm;
  auto t0 = std::chrono::steady_clock::now();
  const SideResult L = lhs_sum(inst);
  tm.lhs_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const SideResult R = rhs_sum(inst, F, L.max_term);
  tm.rhs_seconds = seconds_since(t0);
  rep.lhs = L.value;
  rep.rhs = R.value;
  rep.lhs_diag = L.diag;
  rep.rhs_diag = R.diag;
  rep.chains = R.chains;
  fill_contour(rep, F);
  rep.transform_self_test = self_test(F, rep);
  compare(rep);
  if (inst.record_timings) rep.timings = tm;
  return rep;
}

SummationReport verify(const VoronoiInstance& inst) {
  inst.validate();
  const auto t0 = std::chrono::steady_clock::now();
  VoronoiTransform F(inst.params, inst.f, inst.contour);
  const double build = seconds_since(t0);
  SummationReport rep = verify(inst, F);
  if (rep.timings) rep.timings->transform_seconds = build;
  return rep;
}

SummationReport twisted_verify(const VoronoiInstance& inst_in, const DirichletCharacter& chi,
                               i64 chi_index) {
  // a runs over all units below, so the configured one is irrelevant
  VoronoiInstance inst = inst_in;
  inst.a = 1;
  inst.validate();
  const i64 q = std::abs(inst.q);
  if (chi.modulus() != q)
    throw Error(ErrorCode::kInvalidArgument,
                "character modulus " + std::to_string(chi.modulus()) + " != q=" +
                    std::to_string(q));
  if (!is_primitive(chi))
    throw Error(ErrorCode::kInvalidArgument, "twisted verification needs a primitive character");

  const auto t0 = std::chrono::steady_clock::now();
  VoronoiTransform F(inst.params, inst.f, inst.contour);
  Timings tm;
  tm.transform_seconds = seconds_since(t0);

  SummationReport rep;
  fill_echo(rep, inst);
  cld_sum lhs, rhs;
  const double scale = lhs_sum(inst).max_term;
  bool first = true;
  for (i64 a = 0; a < std::max<i64>(q, 1); ++a) {
    if (std::gcd(a, q) != 1) continue;
    VoronoiInstance ia = inst;
    ia.a = a;
    const auto w = cld(chi(a));
    auto t1 = std::chrono::steady_clock::now();
    const SideResult L = lhs_sum(ia);
    tm.lhs_seconds += seconds_since(t1);
    t1 = std::chrono::steady_clock::now();
    const SideResult R = rhs_sum(ia, F, scale);
    tm.rhs_seconds += seconds_since(t1);
    lhs.add(w * cld(L.value));
    rhs.add(w * cld(R.value));
    if (first) {
      rep.lhs_diag = L.diag;
      rep.rhs_diag = R.diag;
      rep.chains = R.chains;
      first = false;
    }
  }
  rep.a = -1;
  rep.lhs = to_double(lhs.value());
  rep.rhs = to_double(rhs.value());
  fill_contour(rep, F);
  rep.transform_self_test = self_test(F, rep);
  compare(rep);

  // sum_a chi(a) e(-ra/q) = conj(chi(-r)) g_chi for gcd(r,q) = 1, else 0
  TwistBlock tw;
  tw.chi_index = chi_index;
  tw.parity = chi.parity();
  tw.degenerate = inst.f->mellin_vanishes(tw.parity);
  tw.gauss_sum = gauss_sum(chi);
  cld_sum col;
  const i64 R = rep.lhs_diag.r_max;
  for (i64 r = -R; r <= R; ++r) {
    if (r == 0 || std::gcd(r, q) != 1) continue;
    const auto k = lhs_index(inst, r);
    col.add(cld(std::conj(chi(-r))) * cld(inst.form->coefficient(k)) *
            cld(inst.f->value(static_cast<double>(r))));
  }
  tw.collapsed_lhs = to_double(col.value() * cld(tw.gauss_sum));
  const double diff = std::abs(tw.collapsed_lhs - rep.lhs);
  const double denom = std::max(std::abs(rep.lhs), std::abs(tw.collapsed_lhs));
  tw.collapsed_err = denom > 0 ? diff / denom : 0.0;
  tw.collapsed_ok = tw.collapsed_err <= 1e-10 || denom <= rep.tolerance.abs_floor;
  rep.twist = tw;
  rep.passed = rep.passed && tw.collapsed_ok;
  if (inst.record_timings) rep.timings = tm;
  return rep;
}

// -- calibration -------------------------------------------------------------------

CalibrationReport calibrate_arch_params(const VoronoiInstance& base,
                                        const std::vector<ArchParams>& candidates,
                                        int m, double X) {
  CalibrationReport out;
  for (const auto& cand : candidates) {
    CalibrationEntry e;
    e.params = cand;
    e.candidate = out.entries.size();
    try {
      VoronoiInstance inst = base;
      inst.params = cand;
      inst.enforce_membership = false;
      if (!inst.f) {
        ArchParams anchor = cand;
        std::fill(anchor.delta.begin(), anchor.delta.end(), 0);
        inst.f = gaussian_for(anchor.dominant_last(), m, X);
      }
      inst.q = 1;
      inst.a = 0;
      inst.c.assign(static_cast<std::size_t>(std::max(0, inst.n() - 2)), 1);
      e.report = verify(inst);
      e.report->params = cand;
      e.passed = e.report->passed;
    } catch (const Error& err) {
      e.error = err.what();
    }
    out.entries.push_back(std::move(e));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const CalibrationEntry& x, const CalibrationEntry& y) {
                     if (x.passed != y.passed) return x.passed;
                     const double ex = x.report ? x.report->rel_err : INFINITY;
                     const double ey = y.report ? y.report->rel_err : INFINITY;
                     return ex < ey;
                   });
  for (std::size_t i = 0; i < out.entries.size(); ++i)
    if (out.entries[i].passed &&
        (!out.winner || out.entries[i].candidate < out.entries[*out.winner].candidate))
      out.winner = i;
  return out;
}

std::vector<ArchParams> parity_candidates(const std::vector<std::complex<double>>& lambda,
                                          bool singular_ok) {
  std::vector<ArchParams> out;
  const std::size_t n = lambda.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    ArchParams p;
    p.lambda = lambda;
    p.singular_ok = singular_ok;
    int sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const int bit = static_cast<int>((mask >> (n - 1 - j)) & 1u);
      p.delta.push_back(bit);
      sum += bit;
    }
    if (sum % 2 == 0) out.push_back(std::move(p));
  }
  return out;
}

ArchParams default_arch_params(const std::string& form_id) {
  if (form_id == "delta") return {{5.5, -5.5}, {0, 0}, true};
  if (form_id == "sym2-delta") return {{11.0, 0.0, -11.0}, {0, 0, 0}, true};
  throw Error(ErrorCode::kInvalidArgument, "unknown form '" + form_id + "'");
}

// -- summary -------------------------------------------------------------------------

std::string SummationReport::summary() const {
  std::ostringstream os;
  char buf[512];
  std::string cs;
  for (std::size_t i = 0; i < c.size(); ++i) cs += (i ? "," : "") + std::to_string(c[i]);
  std::snprintf(buf, sizeof buf,
                "%s n=%zu form=%s q=%lld a=%s c=(%s) X=%.12g lhs=%.12g%+.12gi "
                "rhs=%.12g%+.12gi abs_err=%.12g rel_err=%.12g",
                passed ? "PASS" : "FAIL", params.n(), form_id.c_str(),
                static_cast<long long>(q), twist ? "*" : std::to_string(a).c_str(),
                cs.c_str(), X, lhs.real(), lhs.imag(), rhs.real(), rhs.imag(), abs_err,
                rel_err);
  os << buf;
  if (twist) {
    std::snprintf(buf, sizeof buf, " chi=%lld collapsed_err=%.12g",
                  static_cast<long long>(twist->chi_index), twist->collapsed_err);
    os << buf;
    if (twist->degenerate) os << " degenerate(parity of chi != parity of f)";
  }
  return os.str();
}

}  // namespace glv
