// SPDX-License-Identifier: Apache-2.0
#include "glv/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

namespace glv {

namespace {

using nlohmann::ordered_json;

ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

ordered_json cplx(std::complex<double> z) {
  return {{"re", num(z.real())}, {"im", num(z.imag())}};
}

ordered_json params_json(const ArchParams& p) {
  ordered_json lam = ordered_json::array();
  for (const auto& l : p.lambda) lam.push_back(cplx(l));
  return {{"n", p.n()}, {"lambda", lam}, {"delta", p.delta}, {"singular_ok", p.singular_ok}};
}

ordered_json side_json(const SideDiagnostics& d, bool rhs) {
  ordered_json j = {{"terms", d.terms},
                    {"r_max", d.r_max},
                    {"first_neglected", num(d.first_neglected)}};
  if (rhs)
    j["y_max"] = num(d.y_max);
  else
    j["tail_bound"] = num(d.tail_bound);
  return j;
}

ordered_json report_object(const SummationReport& r) {
  ordered_json inst = {
      {"form", r.form_id},
      {"params", params_json(r.params)},
      {"q", r.q},
      {"a", r.twist ? ordered_json(nullptr) : ordered_json(r.a)},
      {"c", r.c},
      {"test_function", {{"family", r.test_family}, {"X", num(r.X)}, {"m", r.m}}},
      {"truncation",
       {{"r_lhs", r.truncation.r_lhs},
        {"r_rhs", r.truncation.r_rhs},
        {"term_tolerance", num(r.truncation.term_tolerance)}}},
      {"tolerance", {{"rel", num(r.tolerance.rel)}, {"abs_floor", num(r.tolerance.abs_floor)}}},
  };

  ordered_json chains = ordered_json::array();
  for (const auto& ch : r.chains)
    chains.push_back({{"d", ch.d},
                      {"argument_scale", num(ch.argument_scale)},
                      {"r_max", ch.r_max},
                      {"terms", ch.terms},
                      {"value", cplx(ch.value)}});

  ordered_json windows = ordered_json::array();
  for (int d = 0; d < 2; ++d)
    windows.push_back({{"delta", d},
                       {"lower", num(r.windows[static_cast<std::size_t>(d)].lower)},
                       {"upper", num(r.windows[static_cast<std::size_t>(d)].upper)}});
  ordered_json lines = ordered_json::array();
  for (const auto& l : r.lines)
    lines.push_back({{"delta", l.delta},
                     {"s0", num(l.s0)},
                     {"h", num(l.h)},
                     {"T", num(l.T)},
                     {"nodes", 2 * l.K + 1}});

  ordered_json j = {
      {"schema", kReportSchema},
      {"instance", inst},
      {"lhs", cplx(r.lhs)},
      {"rhs", cplx(r.rhs)},
      {"abs_err", num(r.abs_err)},
      {"rel_err", num(r.rel_err)},
      {"passed", r.passed},
      {"truncation", {{"lhs", side_json(r.lhs_diag, false)}, {"rhs", side_json(r.rhs_diag, true)}}},
      {"chain_count", r.chains.size()},
      {"chains", chains},
      {"contour", {{"windows", windows}, {"lines", lines}, {"self_test", num(r.transform_self_test)}}},
  };
  if (r.twist) {
    const auto& t = *r.twist;
    j["twist"] = {{"chi_index", t.chi_index},
                  {"parity", t.parity},
                  {"gauss_sum", cplx(t.gauss_sum)},
                  {"collapsed_lhs", cplx(t.collapsed_lhs)},
                  {"collapsed_err", num(t.collapsed_err)},
                  {"collapsed_ok", t.collapsed_ok},
                  {"degenerate", t.degenerate}};
  }
  if (r.timings)
    j["wall_time"] = {{"lhs_seconds", num(r.timings->lhs_seconds)},
                      {"transform_seconds", num(r.timings->transform_seconds)},
                      {"rhs_seconds", num(r.timings->rhs_seconds)}};
  return j;
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return std::strtod(buf, nullptr);
}

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string report_json(const SummationReport& rep, int indent) {
  return report_object(rep).dump(indent) + "\n";
}

std::string calibration_json(const CalibrationReport& cal, int indent) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : cal.entries) {
    ordered_json j = {
        {"candidate", e.candidate}, {"params", params_json(e.params)}, {"passed", e.passed}};
    if (e.report) {
      j["rel_err"] = num(e.report->rel_err);
      j["abs_err"] = num(e.report->abs_err);
      j["report"] = report_object(*e.report);
    } else {
      j["rel_err"] = nullptr;
      j["error"] = e.error;
    }
    entries.push_back(std::move(j));
  }
  ordered_json out = {{"schema", kCalibrationSchema},
                      {"entries", entries},
                      {"winner", cal.winner ? ordered_json(*cal.winner) : ordered_json(nullptr)}};
  return out.dump(indent) + "\n";
}

}  // namespace glv
