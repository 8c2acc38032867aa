// SPDX-License-Identifier: Apache-2.0
//
// F(y) = 1/(4 pi i) sum_delta sgn(y)^delta int_{Re s = s0} M_delta F(s) |y|^-s ds
// evaluated by the trapezoidal rule on truncated vertical lines.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "glv/arch_params.hpp"
#include "glv/gamma.hpp"
#include "glv/mellin.hpp"

namespace glv {

/// Unset fields (NaN / 0) are resolved automatically. A fixed s0 pins a
/// single contour line; otherwise a ladder of lines spans the window and
/// each |y| uses the best-conditioned one.
struct ContourConfig {
  double s0 = NAN;
  double T = 0.0;
  double h = 0.0;
};

/// Open interval of abscissas on which M_delta F is holomorphic. Poles of
/// the G-factors that are cancelled by zeros of other factors do not bound
/// the window.
struct ContourWindow {
  double lower = -INFINITY;
  double upper = INFINITY;
};

/// Net pole order of M_delta F at s (negative for zeros).
int mellin_F_order(std::complex<double> s, int delta, const ArchParams& params,
                   const TestFunction& f);
ContourWindow contour_window(const ArchParams& params, const TestFunction& f,
                             int delta);

struct ContourLine {
  int delta = 0;
  double s0 = 0.0;
  double h = 0.0;
  double T = 0.0;
  long double log_peak = 0.0;  // max log |M_delta F| over the nodes
  long K = 0;
  std::vector<cld> nodes;  // M_delta F(s0 + i k h), k = -K..K, with sign
};

class VoronoiTransform {
 public:
  /// Throws PoleError if a requested s0 lies outside a window.
  VoronoiTransform(ArchParams params, std::shared_ptr<const TestFunction> f,
                   ContourConfig config = {});

  /// F(y) for y != 0, memoized by |y|.
  std::complex<double> operator()(double y) const;

  const ContourConfig& contour() const { return config_; }
  const ArchParams& params() const { return params_; }
  const TestFunction& test_function() const { return *f_; }
  /// Window of parity component delta (empty range if it vanishes).
  const ContourWindow& window(int delta) const { return window_[delta & 1]; }
  const std::vector<ContourLine>& lines(int delta) const { return lines_[delta & 1]; }
  std::size_t node_count() const;
  bool is_zero() const { return lines_[0].empty() && lines_[1].empty(); }

  /// |F(y) - F'(y)| where F' uses h/2 and 2T on the same lines.
  double convergence_error(double y) const;

 private:
  VoronoiTransform(const VoronoiTransform& coarse, int refine);
  void build_line(ContourLine& line, bool auto_T) const;
  const ContourLine& pick(int delta, long double log_y) const;
  std::array<cld, 2> parity_integrals(long double abs_y) const;

  ArchParams params_;
  std::shared_ptr<const TestFunction> f_;
  ContourConfig config_;
  std::array<ContourWindow, 2> window_;
  std::array<std::vector<ContourLine>, 2> lines_;

  mutable std::mutex mu_;
  mutable std::map<long double, std::array<cld, 2>> cache_;
  mutable std::unique_ptr<VoronoiTransform> refined_;
};

/// F tabulated on a log-spaced grid in |y| (both signs), exact at the nodes
/// and monotone-preserving cubic (Fritsch-Carlson) in log|y| in between.
class TransformGrid {
 public:
  TransformGrid(const VoronoiTransform& F, double y_min, double y_max,
                int nodes_per_decade);

  std::complex<double> operator()(double y) const;
  const std::vector<double>& nodes() const { return abs_y_; }
  /// Value at node i for sign +1 / -1.
  std::complex<double> at(std::size_t i, int sign) const;

 private:
  std::vector<double> abs_y_;
  std::vector<double> log_y_;
  // [sign +/-][re/im] over nodes
  std::array<std::array<std::vector<double>, 2>, 2> values_;
  std::array<std::array<std::vector<double>, 2>, 2> slopes_;
};

}  // namespace glv
