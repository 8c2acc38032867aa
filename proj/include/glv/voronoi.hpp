// SPDX-License-Identifier: Apache-2.0
//
// Both sides of the GL(n) Voronoi formula
//   sum_{r != 0} a_{c_{n-2},..,c_1,r} e(-ra/q) f(r)
//     = |q| sum_chains sum_{r != 0} a_{r,d_{n-2},..,d_1} / |r d_1..d_{n-2}|
//         * S(abar, r; q, c, d) F(r d_{n-2}^2 .. d_1^{n-1} / (q^n c_{n-2} .. c_1^{n-2}))
// and their comparison.
#pragma once

#include <array>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "glv/arch_params.hpp"
#include "glv/arith.hpp"
#include "glv/dirichlet.hpp"
#include "glv/mellin.hpp"
#include "glv/modforms.hpp"
#include "glv/transform.hpp"

namespace glv {

/// 0 means "choose automatically". term_tolerance is relative to the largest
/// left-hand term.
struct Truncation {
  i64 r_lhs = 0;
  i64 r_rhs = 0;
  double term_tolerance = 1e-15;
};

struct Tolerance {
  double rel = 1e-6;
  double abs_floor = 1e-9;  // sides at or below this count as zero
};

struct VoronoiInstance {
  std::shared_ptr<const CoefficientProvider> form;
  /// Coefficients on the dual side; the form itself when null.
  std::shared_ptr<const CoefficientProvider> dual;
  ArchParams params;
  i64 a = 0;
  i64 q = 1;
  std::vector<i64> c;  // n - 2 nonzero entries
  std::shared_ptr<const TestFunction> f;
  ContourConfig contour;
  Truncation truncation;
  Tolerance tolerance;
  int threads = 1;
  bool record_timings = false;
  /// When false only lambda_n is matched against params, so a deliberately
  /// misassigned parity can be run against a fixed f.
  bool enforce_membership = true;

  int n() const { return static_cast<int>(params.n()); }
  const CoefficientProvider& dual_form() const { return dual ? *dual : *form; }
  /// gcd(a, q) = 1, sizes, ArchParams invariants, and that f sits in
  /// |x|^lambda_j sgn(x)^delta_j S(R) for some parameter pair j (the pairs
  /// may be permuted freely).
  void validate() const;
};

/// Gaussian test function matched to the last pair of `params`.
std::shared_ptr<TestFunction> gaussian_for(const ArchParams& params, int m,
                                           double X);

struct SideDiagnostics {
  i64 terms = 0;
  i64 r_max = 0;
  double first_neglected = 0.0;
  double tail_bound = 0.0;
  double y_max = 0.0;  // right side: |F| is negligible beyond y_max
};

struct ChainSubtotal {
  std::vector<i64> d;
  double argument_scale = 0.0;  // F is sampled at r * argument_scale
  i64 r_max = 0;
  i64 terms = 0;
  std::complex<double> value;
};

struct SideResult {
  std::complex<double> value;
  double max_term = 0.0;
  SideDiagnostics diag;
  std::vector<ChainSubtotal> chains;
};

SideResult lhs_sum(const VoronoiInstance& inst);
/// `scale` fixes the absolute term tolerance (term_tolerance * scale); the
/// largest left-hand term is used when it is 0.
SideResult rhs_sum(const VoronoiInstance& inst, const VoronoiTransform& F,
                   double scale = 0.0);
SideResult rhs_sum(const VoronoiInstance& inst);

/// The right-hand exponential sum for chain d at the dual index r.
std::complex<double> dual_kloosterman(i64 abar, i64 r, const DivisorChain& chain);
/// d_{n-2}^2 .. d_1^{n-1} / (q^n c_{n-2} .. c_1^{n-2}), signs of c included.
long double chain_argument_scale(const DivisorChain& chain);

struct TwistBlock {
  i64 chi_index = -1;
  int parity = 0;
  std::complex<double> gauss_sum;
  std::complex<double> collapsed_lhs;
  double collapsed_err = 0.0;
  bool collapsed_ok = false;
  /// The parity of chi differs from that of f, so both weighted sides vanish
  /// identically and the comparison carries no information.
  bool degenerate = false;
};

struct Timings {
  double lhs_seconds = 0.0;
  double transform_seconds = 0.0;
  double rhs_seconds = 0.0;
};

struct SummationReport {
  std::string form_id;
  ArchParams params;
  i64 a = 0;
  i64 q = 1;
  std::vector<i64> c;
  std::string test_family;
  double X = 0.0;
  int m = 0;
  Tolerance tolerance;
  Truncation truncation;

  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  bool passed = false;
  SideDiagnostics lhs_diag;
  SideDiagnostics rhs_diag;
  std::vector<ChainSubtotal> chains;
  std::array<ContourWindow, 2> windows;
  std::vector<ContourLine> lines;  // node vectors left empty
  double transform_self_test = 0.0;  // max convergence error at sampled y
  std::optional<TwistBlock> twist;
  std::optional<Timings> timings;

  std::string summary() const;
};

/// Passes iff rel_err <= tolerance.rel, or both |lhs| and |rhs| are at most
/// tolerance.abs_floor (both sides numerically zero).
SummationReport verify(const VoronoiInstance& inst);
/// Same with a prebuilt transform (it must match inst.params, inst.f and
/// inst.contour).
SummationReport verify(const VoronoiInstance& inst, const VoronoiTransform& F);

/// Character-weighted sum over all a mod q coprime to q of both sides, plus
/// the Gauss-sum collapse of the weighted left side.
SummationReport twisted_verify(const VoronoiInstance& inst,
                               const DirichletCharacter& chi, i64 chi_index = -1);

struct CalibrationEntry {
  ArchParams params;
  std::size_t candidate = 0;  // position in the candidate list
  std::optional<SummationReport> report;
  std::string error;  // set when the run failed structurally
  bool passed = false;
};

struct CalibrationReport {
  std::vector<CalibrationEntry> entries;  // passing first, then by rel_err
  /// Index into entries: the passing entry earliest in the candidate list.
  /// Candidates whose Gamma products coincide pass together with rel_err at
  /// rounding level, so rel_err alone would pick among them at random.
  std::optional<std::size_t> winner;
};

/// Runs verify on the smoke instance (q = 1, a = 0, c = (1..1)) derived from
/// `base` for every candidate. The test function stays fixed: base.f, or a
/// Gaussian of the given m and X attached to the pair of largest Re lambda
/// with parity 0.
CalibrationReport calibrate_arch_params(const VoronoiInstance& base,
                                        const std::vector<ArchParams>& candidates,
                                        int m, double X);

/// All parity vectors with even sum for the given lambda.
std::vector<ArchParams> parity_candidates(const std::vector<std::complex<double>>& lambda,
                                          bool singular_ok);

/// Calibrated parameters of the shipped forms.
ArchParams default_arch_params(const std::string& form_id);

}  // namespace glv
