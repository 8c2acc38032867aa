// SPDX-License-Identifier: Apache-2.0
//
// Run configuration: an INI-style file with [sections] and `key = value`
// lines. Only known keys are accepted, values are normalized on entry, and
// serialization is canonical, so parse -> serialize -> parse is a fixpoint.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glv/transform.hpp"
#include "glv/voronoi.hpp"

namespace glv {

enum class ValueType { kInt, kReal, kBool, kString, kIntList, kRealList, kComplexList };

struct KeySpec {
  const char* section;
  const char* key;
  ValueType type;
  const char* help;
};

/// Every accepted key, in serialization order.
const std::vector<KeySpec>& config_schema();

class Config {
 public:
  /// `origin` names the source in diagnostics (a path or "<string>").
  static Config parse(const std::string& text, const std::string& origin = "<string>");
  static Config load(const std::string& path);

  /// `dotted` is "section.key". Throws kConfig on unknown keys or values
  /// that do not parse as the key's type.
  void set(const std::string& dotted, const std::string& value);
  void unset(const std::string& dotted);
  bool has(const std::string& dotted) const;
  /// Canonical text of the value, nullopt when unset.
  std::optional<std::string> get(const std::string& dotted) const;

  i64 get_int(const std::string& dotted, i64 fallback) const;
  double get_real(const std::string& dotted, double fallback) const;
  bool get_bool(const std::string& dotted, bool fallback) const;
  std::string get_string(const std::string& dotted, const std::string& fallback) const;
  std::vector<i64> get_int_list(const std::string& dotted) const;
  std::vector<double> get_real_list(const std::string& dotted) const;
  std::vector<std::complex<double>> get_complex_list(const std::string& dotted) const;

  std::string serialize() const;
  bool operator==(const Config&) const = default;

 private:
  std::map<std::string, std::string> values_;  // "section.key" -> canonical
};

/// Shortest round-trip decimal text of a double.
std::string format_real(double x);

// -- resolution into run objects --------------------------------------------------

std::shared_ptr<const CoefficientProvider> config_form(const Config& cfg);
/// Explicit instance.lambda/delta, otherwise the calibrated defaults of the
/// form (or lambda = (0), delta = (0) when instance.form = none and n = 1).
ArchParams config_params(const Config& cfg);
/// The test function attached to the pair of largest Re lambda whose parity
/// is test_function.delta_n (default: that pair's own parity).
std::shared_ptr<const TestFunction> config_test_function(const Config& cfg,
                                                         const ArchParams& params);
ContourConfig config_contour(const Config& cfg);
VoronoiInstance config_instance(const Config& cfg);

}  // namespace glv
