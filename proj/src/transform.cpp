// SPDX-License-Identifier: Apache-2.0
#include "glv/transform.hpp"

#include <algorithm>
#include <limits>
#include <numbers>
#include <string>

#include "glv/error.hpp"
#include "glv/summation.hpp"

namespace glv {

namespace {

constexpr double kEnvelopeDrop = 57.565;  // log(1e25)
constexpr double kMaxHeight = 4000.0;
constexpr double kLineSpacing = 2.0;
constexpr double kLadderSpan = 24.0;
constexpr int kPoleScan = 64;

// +1 at a pole of G_e(z), -1 at a zero, 0 elsewhere.
int gamma_factor_order(int e, std::complex<double> z) {
  const double r = std::round(z.real());
  if (std::abs(z - r) > 1e-9) return 0;
  const long k = static_cast<long>(r);
  if (k <= 0) return ((-k) % 2 == e) ? 1 : 0;
  return (k % 2 != e) ? -1 : 0;
}

bool near(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) < 1e-9;
}

// Keeps the real point s0 of the line away from cancelled singularities of
// individual factors, where the log-space product loses accuracy.
double nudge(double s0, const ArchParams& params, const ContourWindow& w) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    bool clear = true;
    for (const auto& l : params.lambda) {
      if (std::abs(l.imag()) > 1e-9) continue;
      const double z = s0 - l.real() + 1.0;
      if (std::abs(z - std::round(z)) < 0.2) clear = false;
    }
    if (clear) return s0;
    const double next = s0 + 0.25;
    if (next >= w.upper - 0.1) return s0;
    s0 = next;
  }
  return s0;
}

}  // namespace

int mellin_F_order(std::complex<double> s, int delta, const ArchParams& params,
                   const TestFunction& f) {
  delta &= 1;
  int order = 0;
  for (std::size_t j = 0; j < params.n(); ++j)
    order += gamma_factor_order((params.delta[j] + delta) & 1,
                                s - params.lambda[j] + 1.0);
  // M f(-s) has poles at s = -w for the poles w of M f
  for (const auto& w : f.mellin_poles(kPoleScan))
    if (near(s, -w)) ++order;
  return order;
}

ContourWindow contour_window(const ArchParams& params, const TestFunction& f,
                             int delta) {
  ContourWindow w;
  delta &= 1;
  if (f.mellin_vanishes(delta)) return {INFINITY, -INFINITY};
  double lo_re = INFINITY, hi_re = -INFINITY;
  for (const auto& l : params.lambda) {
    lo_re = std::min(lo_re, l.real());
    hi_re = std::max(hi_re, l.real());
  }
  const int span = static_cast<int>(std::ceil(hi_re - lo_re)) + 4;
  for (const auto& l : params.lambda) {
    for (int k = 0; k <= span; ++k) {
      const std::complex<double> s = l - 1.0 - static_cast<double>(k);
      if (s.real() <= w.lower) break;
      if (mellin_F_order(s, delta, params, f) > 0) {
        w.lower = s.real();
        break;
      }
    }
  }
  for (const auto& p : f.mellin_poles(kPoleScan)) {
    const std::complex<double> s = -p;
    if (s.real() <= w.lower) continue;
    if (s.real() >= w.upper) continue;
    if (mellin_F_order(s, delta, params, f) > 0) w.upper = s.real();
  }
  return w;
}

VoronoiTransform::VoronoiTransform(ArchParams params,
                                   std::shared_ptr<const TestFunction> f,
                                   ContourConfig config)
    : params_(std::move(params)), f_(std::move(f)), config_(config) {
  params_.validate();
  for (int delta = 0; delta < 2; ++delta) {
    window_[delta] = contour_window(params_, *f_, delta);
    if (f_->mellin_vanishes(delta)) continue;
    const ContourWindow& w = window_[delta];
    std::vector<double> abscissas;
    if (!std::isnan(config_.s0)) {
      if (!(config_.s0 > w.lower && config_.s0 < w.upper))
        throw PoleError("contour abscissa s0=" + std::to_string(config_.s0) +
                            " outside the admissible window (" +
                            std::to_string(w.lower) + ", " +
                            std::to_string(w.upper) + ") of parity " +
                            std::to_string(delta),
                        config_.s0 <= w.lower ? w.lower : w.upper, 0, 0);
      abscissas.push_back(config_.s0);
    } else if (w.upper - w.lower <= 2 * kLineSpacing) {
      abscissas.push_back(0.5 * (w.lower + w.upper));
    } else {
      const double top = std::min(w.upper - 0.5, w.lower + kLadderSpan);
      for (double s0 = w.lower + 0.5; s0 <= top + 1e-12; s0 += kLineSpacing)
        abscissas.push_back(s0);
    }
    for (double s0 : abscissas) {
      if (std::isnan(config_.s0)) s0 = nudge(s0, params_, w);
      ContourLine line;
      line.delta = delta;
      line.s0 = s0;
      const double d = std::min(s0 - w.lower, w.upper - s0);
      line.h = config_.h > 0 ? config_.h : std::min(0.05, d / 10.0);
      line.T = config_.T;
      build_line(line, config_.T <= 0.0);
      lines_[delta].push_back(std::move(line));
    }
  }
}

VoronoiTransform::VoronoiTransform(const VoronoiTransform& coarse, int refine)
    : params_(coarse.params_), f_(coarse.f_), config_(coarse.config_),
      window_(coarse.window_) {
  for (int delta = 0; delta < 2; ++delta) {
    for (const auto& c : coarse.lines_[delta]) {
      ContourLine line;
      line.delta = delta;
      line.s0 = c.s0;
      line.h = c.h / refine;
      line.T = c.T * refine;
      build_line(line, false);
      lines_[delta].push_back(std::move(line));
    }
  }
}

void VoronoiTransform::build_line(ContourLine& line, bool auto_T) const {
  auto log_abs = [&](double t) {
    return log_mellin_of_F(cld(line.s0, t), line.delta, params_, *f_).real();
  };
  if (auto_T) {
    long double peak = std::max(log_abs(0.0), std::numeric_limits<long double>::lowest());
    double T = kMaxHeight;
    for (double t = 1.0; t <= kMaxHeight; t += 1.0) {
      const long double e = std::max(log_abs(t), log_abs(-t));
      peak = std::max(peak, e);
      if (e < peak - kEnvelopeDrop) {
        T = t;
        break;
      }
    }
    line.T = T;
  }
  line.K = static_cast<long>(std::ceil(line.T / line.h));
  line.nodes.resize(static_cast<std::size_t>(2 * line.K + 1));
  line.log_peak = -std::numeric_limits<long double>::infinity();
  const bool negate = line.delta == 1 && (params_.n() % 2) == 1;
  for (long k = -line.K; k <= line.K; ++k) {
    const cld s(line.s0, static_cast<long double>(k) * line.h);
    const cld l = log_mellin_of_F(s, line.delta, params_, *f_);
    cld m = 0;
    if (!std::isinf(l.real())) {
      m = std::exp(l);
      line.log_peak = std::max(line.log_peak, l.real());
    }
    line.nodes[static_cast<std::size_t>(k + line.K)] = negate ? -m : m;
  }
}

std::size_t VoronoiTransform::node_count() const {
  std::size_t n = 0;
  for (const auto& ls : lines_)
    for (const auto& l : ls) n += l.nodes.size();
  return n;
}

const ContourLine& VoronoiTransform::pick(int delta, long double log_y) const {
  // rounding error scales like peak * |y|^-s0 against a fixed |F(y)|
  const auto& ls = lines_[delta];
  std::size_t best = 0;
  long double best_cost = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const long double cost = ls[i].log_peak - static_cast<long double>(ls[i].s0) * log_y;
    if (cost < best_cost) {
      best_cost = cost;
      best = i;
    }
  }
  return ls[best];
}

std::array<cld, 2> VoronoiTransform::parity_integrals(long double abs_y) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(abs_y);
    if (it != cache_.end()) return it->second;
  }
  using R = long double;
  const R L = std::log(abs_y);
  std::array<cld, 2> out{cld(0), cld(0)};
  for (int delta = 0; delta < 2; ++delta) {
    if (lines_[delta].empty()) continue;
    const ContourLine& line = pick(delta, L);
    const R h = line.h;
    const long K = line.K;
    // sum_k M_k exp(-i k h L); the phase advances by a fixed rotation and is
    // re-anchored every 64 nodes.
    const cld step = std::polar(R(1), -h * L);
    CompensatedSum<cld> acc;
    cld w;
    for (long k = -K; k <= K; ++k) {
      if ((k + K) % 64 == 0) w = std::polar(R(1), -static_cast<R>(k) * h * L);
      acc.add(line.nodes[static_cast<std::size_t>(k + K)] * w);
      w *= step;
    }
    const R scale = h * std::exp(-static_cast<R>(line.s0) * L) /
                    (R(4) * std::numbers::pi_v<R>);
    out[delta] = acc.value() * scale;
  }
  std::lock_guard<std::mutex> lock(mu_);
  cache_.emplace(abs_y, out);
  return out;
}

std::complex<double> VoronoiTransform::operator()(double y) const {
  if (y == 0.0)
    throw Error(ErrorCode::kInvalidArgument, "F is evaluated only at y != 0");
  if (is_zero()) return 0.0;
  const auto parts = parity_integrals(std::abs(static_cast<long double>(y)));
  const cld v = y > 0 ? parts[0] + parts[1] : parts[0] - parts[1];
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double VoronoiTransform::convergence_error(double y) const {
  if (is_zero()) return 0.0;
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (!refined_) refined_.reset(new VoronoiTransform(*this, 2));
  }
  return std::abs((*this)(y) - (*refined_)(y));
}

// -- grid ------------------------------------------------------------------------

namespace {

// Fritsch-Carlson slopes for monotone cubic Hermite interpolation.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0);
  if (n < 2) return m;
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
  m[0] = delta[0];
  m[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0) {
      m[i] = 0.0;
      continue;
    }
    const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
    const double w1 = 2 * h1 + h0, w2 = h1 + 2 * h0;
    m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  return m;
}

double hermite(double x0, double x1, double y0, double y1, double m0, double m1,
               double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * m1;
}

}  // namespace

TransformGrid::TransformGrid(const VoronoiTransform& F, double y_min,
                             double y_max, int nodes_per_decade) {
  if (!(y_min > 0 && y_max > y_min && nodes_per_decade > 0))
    throw Error(ErrorCode::kInvalidArgument, "bad transform grid range");
  const double l0 = std::log10(y_min), l1 = std::log10(y_max);
  const int count =
      std::max(2, static_cast<int>(std::ceil((l1 - l0) * nodes_per_decade)) + 1);
  for (int i = 0; i < count; ++i) {
    const double ly = l0 + (l1 - l0) * i / (count - 1);
    abs_y_.push_back(std::pow(10.0, ly));
    log_y_.push_back(ly * std::log(10.0));
  }
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c) values_[s][c].resize(abs_y_.size());
  for (std::size_t i = 0; i < abs_y_.size(); ++i) {
    for (int s = 0; s < 2; ++s) {
      const auto v = F(s == 0 ? abs_y_[i] : -abs_y_[i]);
      values_[s][0][i] = v.real();
      values_[s][1][i] = v.imag();
    }
  }
  for (int s = 0; s < 2; ++s)
    for (int c = 0; c < 2; ++c) slopes_[s][c] = pchip_slopes(log_y_, values_[s][c]);
}

std::complex<double> TransformGrid::at(std::size_t i, int sign) const {
  const int s = sign > 0 ? 0 : 1;
  return {values_[s][0][i], values_[s][1][i]};
}

std::complex<double> TransformGrid::operator()(double y) const {
  const double ay = std::abs(y);
  if (ay < abs_y_.front() || ay > abs_y_.back())
    throw Error(ErrorCode::kCoverage,
                "transform grid covers |y| in [" + std::to_string(abs_y_.front()) +
                    ", " + std::to_string(abs_y_.back()) + "], requested " +
                    std::to_string(ay));
  const int s = y > 0 ? 0 : 1;
  const double ly = std::log(ay);
  auto it = std::upper_bound(log_y_.begin(), log_y_.end(), ly);
  std::size_t i = it == log_y_.begin() ? 0 : static_cast<std::size_t>(it - log_y_.begin()) - 1;
  if (i + 1 >= log_y_.size()) i = log_y_.size() - 2;
  if (ly == log_y_[i]) return at(i, y > 0 ? 1 : -1);
  double out[2];
  for (int c = 0; c < 2; ++c)
    out[c] = hermite(log_y_[i], log_y_[i + 1], values_[s][c][i],
                     values_[s][c][i + 1], slopes_[s][c][i], slopes_[s][c][i + 1], ly);
  return {out[0], out[1]};
}

}  // namespace glv
