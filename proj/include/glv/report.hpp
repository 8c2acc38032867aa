// SPDX-License-Identifier: Apache-2.0
//
// JSON and CSV emission. Every floating-point number is rounded to 12
// significant digits before it is written, so equal runs give equal bytes.
#pragma once

#include <string>

#include "glv/voronoi.hpp"

namespace glv {

inline constexpr const char* kReportSchema = "glv.summation-report/1";
inline constexpr const char* kCalibrationSchema = "glv.calibration-report/1";

/// x rounded to 12 significant digits (non-finite values pass through).
double round12(double x);
/// printf("%.12g") of x.
std::string fmt12(double x);

std::string report_json(const SummationReport& rep, int indent = 2);
std::string calibration_json(const CalibrationReport& cal, int indent = 2);

}  // namespace glv
