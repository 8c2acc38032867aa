// SPDX-License-Identifier: Apache-2.0
#include "glv/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "glv/error.hpp"

namespace glv {

namespace {

using VT = ValueType;

const std::vector<KeySpec> kSchema = {
    {"instance", "form", VT::kString, "delta | sym2-delta | none"},
    {"instance", "n", VT::kInt, "GL(n); checked against the form and lambda"},
    {"instance", "q", VT::kInt, "modulus, nonzero"},
    {"instance", "a", VT::kInt, "residue coprime to q"},
    {"instance", "c", VT::kIntList, "n-2 nonzero integers"},
    {"instance", "lambda", VT::kComplexList, "archimedean parameters, sum 0"},
    {"instance", "delta", VT::kIntList, "parities, even sum"},
    {"instance", "singular_ok", VT::kBool, "allow integer lambda differences"},
    {"instance", "coverage", VT::kInt, "largest coefficient index to tabulate"},
    {"instance", "enforce_membership", VT::kBool, "require f to match a (lambda, delta) pair"},
    {"test_function", "family", VT::kString, "gaussian | zero"},
    {"test_function", "X", VT::kReal, "Gaussian scale"},
    {"test_function", "m", VT::kInt, "x^m factor, 0 or 1"},
    {"test_function", "delta_n", VT::kInt, "parity of the |x|^lambda_n sgn(x)^delta_n prefactor"},
    {"contour", "s0", VT::kReal, "pin a single contour line"},
    {"contour", "T", VT::kReal, "truncation height"},
    {"contour", "h", VT::kReal, "trapezoidal step"},
    {"truncation", "r_lhs", VT::kInt, "0 = automatic"},
    {"truncation", "r_rhs", VT::kInt, "0 = automatic"},
    {"truncation", "term_tolerance", VT::kReal, "relative to the largest left term"},
    {"tolerance", "rel", VT::kReal, "pass threshold on rel_err"},
    {"tolerance", "abs_floor", VT::kReal, "pass threshold on abs_err"},
    {"twist", "chi", VT::kInt, "index into characters_mod(q)"},
    {"transform", "y", VT::kRealList, "evaluation points"},
    {"transform", "grid_min", VT::kReal, "grid dump lower |y|"},
    {"transform", "grid_max", VT::kReal, "grid dump upper |y|"},
    {"transform", "nodes_per_decade", VT::kInt, "grid dump density"},
    {"calibrate", "X", VT::kReal, "smoke-instance Gaussian scale"},
    {"calibrate", "m", VT::kInt, "smoke-instance Gaussian m"},
    {"run", "threads", VT::kInt, "worker threads"},
    {"run", "out", VT::kString, "output path, '-' for stdout"},
    {"run", "timings", VT::kBool, "include wall times in reports"},
};

const KeySpec* find_key(const std::string& section, const std::string& key) {
  for (const auto& k : kSchema)
    if (section == k.section && key == k.key) return &k;
  return nullptr;
}

bool known_section(const std::string& s) {
  return std::any_of(kSchema.begin(), kSchema.end(),
                     [&](const KeySpec& k) { return s == k.section; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(v);
  while (std::getline(is, cur, ',')) out.push_back(trim(cur));
  if (!v.empty() && v.back() == ',') out.push_back("");
  return out;
}

std::optional<i64> parse_int(const std::string& s) {
  i64 v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e) return std::nullopt;
  return v;
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || b == e || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::complex<double>> parse_complex(const std::string& s) {
  if (auto r = parse_real(s)) return std::complex<double>(*r, 0.0);
  if (s.size() < 2 || s.back() != 'i') return std::nullopt;
  const std::string body = s.substr(0, s.size() - 1);
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      auto re = parse_real(body.substr(0, k));
      std::string im_txt = body.substr(k);
      if (im_txt == "+" || im_txt == "-") im_txt += "1";
      auto im = parse_real(im_txt);
      if (re && im) return std::complex<double>(*re, *im);
      return std::nullopt;
    }
  }
  std::string im_txt = body.empty() || body == "+" || body == "-" ? body + "1" : body;
  if (auto im = parse_real(im_txt)) return std::complex<double>(0.0, *im);
  return std::nullopt;
}

std::string format_complex(std::complex<double> z) {
  if (z.imag() == 0.0) return format_real(z.real());
  std::string im = format_real(z.imag());
  if (im[0] != '-') im = "+" + im;
  return (z.real() == 0.0 ? "" : format_real(z.real())) + im + "i";
}

// Canonical text for `raw`, or an error message.
std::pair<std::string, std::string> normalize(const KeySpec& spec, const std::string& raw) {
  const std::string v = trim(raw);
  const std::string type_err = std::string("expected ") +
                               (spec.type == VT::kInt       ? "an integer"
                                : spec.type == VT::kReal    ? "a finite real number"
                                : spec.type == VT::kBool    ? "true or false"
                                : spec.type == VT::kString  ? "a string"
                                : spec.type == VT::kIntList ? "a comma-separated integer list"
                                : spec.type == VT::kRealList ? "a comma-separated real list"
                                                             : "a comma-separated complex list") +
                               ", got '" + v + "'";
  switch (spec.type) {
    case VT::kInt:
      if (auto i = parse_int(v)) return {std::to_string(*i), ""};
      return {"", type_err};
    case VT::kReal:
      if (auto r = parse_real(v)) return {format_real(*r), ""};
      return {"", type_err};
    case VT::kBool:
      if (v == "true" || v == "1" || v == "yes" || v == "on") return {"true", ""};
      if (v == "false" || v == "0" || v == "no" || v == "off") return {"false", ""};
      return {"", type_err};
    case VT::kString:
      if (v.empty()) return {"", type_err};
      return {v, ""};
    case VT::kIntList:
    case VT::kRealList:
    case VT::kComplexList: {
      std::string out;
      if (v.empty()) return {"", ""};
      for (const auto& tok : split_list(v)) {
        std::string canon;
        if (spec.type == VT::kIntList) {
          auto i = parse_int(tok);
          if (!i) return {"", type_err};
          canon = std::to_string(*i);
        } else if (spec.type == VT::kRealList) {
          auto r = parse_real(tok);
          if (!r) return {"", type_err};
          canon = format_real(*r);
        } else {
          auto z = parse_complex(tok);
          if (!z) return {"", type_err};
          canon = format_complex(*z);
        }
        out += (out.empty() ? "" : ",") + canon;
      }
      return {out, ""};
    }
  }
  return {"", type_err};
}

std::pair<std::string, std::string> split_dotted(const std::string& dotted) {
  const auto dot = dotted.find('.');
  if (dot == std::string::npos)
    throw Error(ErrorCode::kConfig, "config key '" + dotted + "' must be section.key");
  return {dotted.substr(0, dot), dotted.substr(dot + 1)};
}

const KeySpec& require_key(const std::string& dotted) {
  auto [section, key] = split_dotted(dotted);
  const KeySpec* spec = find_key(section, key);
  if (!spec)
    throw Error(ErrorCode::kConfig, known_section(section)
                                        ? "unknown key '" + key + "' in section [" + section + "]"
                                        : "unknown section [" + section + "]");
  return *spec;
}

std::string pointer(const std::string& origin, std::size_t line, std::size_t col,
                    const std::string& text, const std::string& msg) {
  return origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg + "\n  " +
         text + "\n  " + std::string(col > 0 ? col - 1 : 0, ' ') + "^";
}

}  // namespace

const std::vector<KeySpec>& config_schema() { return kSchema; }

std::string format_real(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, p);
}

Config Config::parse(const std::string& text, const std::string& origin) {
  Config cfg;
  std::istringstream is(text);
  std::string raw, section;
  std::size_t lineno = 0;
  while (std::getline(is, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = trim(raw);
    const std::size_t indent = raw.find_first_not_of(" \t");
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line[0] == '[') {
      if (line.back() != ']')
        throw Error(ErrorCode::kConfig,
                    pointer(origin, lineno, indent + line.size() + 1, raw, "expected ']'"));
      section = trim(line.substr(1, line.size() - 2));
      if (!known_section(section))
        throw Error(ErrorCode::kConfig, pointer(origin, lineno, indent + 2, raw,
                                                "unknown section [" + section + "]"));
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::kConfig,
                  pointer(origin, lineno, indent + 1, raw, "expected 'key = value'"));
    if (section.empty())
      throw Error(ErrorCode::kConfig,
                  pointer(origin, lineno, indent + 1, raw, "key outside of any [section]"));
    const std::string key = trim(raw.substr(0, eq));
    const KeySpec* spec = find_key(section, key);
    if (!spec)
      throw Error(ErrorCode::kConfig,
                  pointer(origin, lineno, indent + 1, raw,
                          "unknown key '" + key + "' in section [" + section + "]"));
    const std::string dotted = section + "." + key;
    if (cfg.values_.count(dotted))
      throw Error(ErrorCode::kConfig,
                  pointer(origin, lineno, indent + 1, raw, "duplicate key '" + dotted + "'"));
    std::string value = raw.substr(eq + 1);
    const auto hash = value.find(" #");
    if (hash != std::string::npos) value = value.substr(0, hash);
    auto [canon, err] = normalize(*spec, value);
    if (!err.empty()) {
      const std::size_t vcol = raw.find_first_not_of(" \t", eq + 1);
      throw Error(ErrorCode::kConfig,
                  pointer(origin, lineno, (vcol == std::string::npos ? eq + 1 : vcol) + 1, raw,
                          dotted + ": " + err));
    }
    cfg.values_[dotted] = canon;
  }
  return cfg;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfig, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

void Config::set(const std::string& dotted, const std::string& value) {
  const KeySpec& spec = require_key(dotted);
  auto [canon, err] = normalize(spec, value);
  if (!err.empty()) throw Error(ErrorCode::kConfig, dotted + ": " + err);
  values_[dotted] = canon;
}

void Config::unset(const std::string& dotted) {
  require_key(dotted);
  values_.erase(dotted);
}

bool Config::has(const std::string& dotted) const { return values_.count(dotted) > 0; }

std::optional<std::string> Config::get(const std::string& dotted) const {
  require_key(dotted);
  auto it = values_.find(dotted);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

i64 Config::get_int(const std::string& dotted, i64 fallback) const {
  auto v = get(dotted);
  return v ? *parse_int(*v) : fallback;
}

double Config::get_real(const std::string& dotted, double fallback) const {
  auto v = get(dotted);
  return v ? *parse_real(*v) : fallback;
}

bool Config::get_bool(const std::string& dotted, bool fallback) const {
  auto v = get(dotted);
  return v ? *v == "true" : fallback;
}

std::string Config::get_string(const std::string& dotted, const std::string& fallback) const {
  auto v = get(dotted);
  return v ? *v : fallback;
}

std::vector<i64> Config::get_int_list(const std::string& dotted) const {
  std::vector<i64> out;
  if (auto v = get(dotted); v && !v->empty())
    for (const auto& t : split_list(*v)) out.push_back(*parse_int(t));
  return out;
}

std::vector<double> Config::get_real_list(const std::string& dotted) const {
  std::vector<double> out;
  if (auto v = get(dotted); v && !v->empty())
    for (const auto& t : split_list(*v)) out.push_back(*parse_real(t));
  return out;
}

std::vector<std::complex<double>> Config::get_complex_list(const std::string& dotted) const {
  std::vector<std::complex<double>> out;
  if (auto v = get(dotted); v && !v->empty())
    for (const auto& t : split_list(*v)) out.push_back(*parse_complex(t));
  return out;
}

std::string Config::serialize() const {
  std::string out;
  std::string section;
  for (const auto& k : kSchema) {
    auto it = values_.find(std::string(k.section) + "." + k.key);
    if (it == values_.end()) continue;
    if (section != k.section) {
      if (!out.empty()) out += "\n";
      section = k.section;
      out += "[" + section + "]\n";
    }
    out += std::string(k.key) + " = " + it->second + "\n";
  }
  return out;
}

// -- resolution ----------------------------------------------------------------------

std::shared_ptr<const CoefficientProvider> config_form(const Config& cfg) {
  const std::string id = cfg.get_string("instance.form", "sym2-delta");
  if (id == "none") return nullptr;
  const i64 coverage = cfg.get_int("instance.coverage", 100000);
  if (coverage < 1) throw Error(ErrorCode::kConfig, "instance.coverage must be >= 1");
  return make_form(id, coverage);
}

ArchParams config_params(const Config& cfg) {
  const std::string id = cfg.get_string("instance.form", "sym2-delta");
  ArchParams p;
  if (cfg.has("instance.lambda") || cfg.has("instance.delta")) {
    p.lambda = cfg.get_complex_list("instance.lambda");
    for (i64 d : cfg.get_int_list("instance.delta")) p.delta.push_back(static_cast<int>(d));
    if (!cfg.has("instance.delta")) p.delta.assign(p.lambda.size(), 0);
    if (!cfg.has("instance.lambda"))
      p.lambda = id == "none" ? std::vector<std::complex<double>>(p.delta.size(), 0.0)
                              : default_arch_params(id).lambda;
    p.singular_ok = cfg.get_bool("instance.singular_ok", id != "none");
  } else if (id == "none") {
    p = {{0.0}, {0}, false};
  } else {
    p = default_arch_params(id);
  }
  if (cfg.has("instance.singular_ok")) p.singular_ok = cfg.get_bool("instance.singular_ok", false);
  if (cfg.has("instance.n") && cfg.get_int("instance.n", 0) != static_cast<i64>(p.n()))
    throw Error(ErrorCode::kConfig, "instance.n=" + *cfg.get("instance.n") +
                                        " disagrees with the " + std::to_string(p.n()) +
                                        " archimedean parameters");
  p.validate();
  return p;
}

std::shared_ptr<const TestFunction> config_test_function(const Config& cfg,
                                                         const ArchParams& params) {
  std::size_t j = 0;
  const bool want_parity = cfg.has("test_function.delta_n");
  const int parity = static_cast<int>(cfg.get_int("test_function.delta_n", 0)) & 1;
  for (std::size_t i = 0; i < params.n(); ++i)
    if (params.lambda[i].real() >= params.lambda[j].real()) j = i;
  const std::complex<double> lam = params.lambda[j];
  const int del = want_parity ? parity : params.delta[j];
  const std::string family = cfg.get_string("test_function.family", "gaussian");
  if (family == "zero") return std::make_shared<ZeroTestFunction>(lam, del);
  if (family != "gaussian")
    throw Error(ErrorCode::kConfig, "test_function.family must be gaussian or zero, got '" +
                                        family + "'");
  return std::make_shared<GaussianTestFunction>(
      lam, del, static_cast<int>(cfg.get_int("test_function.m", 0)),
      cfg.get_real("test_function.X", 4.0));
}

ContourConfig config_contour(const Config& cfg) {
  ContourConfig c;
  c.s0 = cfg.get_real("contour.s0", NAN);
  c.T = cfg.get_real("contour.T", 0.0);
  c.h = cfg.get_real("contour.h", 0.0);
  return c;
}

VoronoiInstance config_instance(const Config& cfg) {
  VoronoiInstance inst;
  inst.form = config_form(cfg);
  if (!inst.form) throw Error(ErrorCode::kConfig, "instance.form = none cannot be verified");
  inst.params = config_params(cfg);
  inst.q = cfg.get_int("instance.q", 1);
  inst.a = cfg.get_int("instance.a", 0);
  inst.c = cfg.get_int_list("instance.c");
  if (!cfg.has("instance.c"))
    inst.c.assign(static_cast<std::size_t>(std::max(0, inst.n() - 2)), 1);
  inst.f = config_test_function(cfg, inst.params);
  inst.contour = config_contour(cfg);
  inst.truncation.r_lhs = cfg.get_int("truncation.r_lhs", 0);
  inst.truncation.r_rhs = cfg.get_int("truncation.r_rhs", 0);
  inst.truncation.term_tolerance = cfg.get_real("truncation.term_tolerance", 1e-15);
  inst.tolerance.rel = cfg.get_real("tolerance.rel", 1e-6);
  inst.tolerance.abs_floor = cfg.get_real("tolerance.abs_floor", 1e-9);
  inst.threads = static_cast<int>(cfg.get_int("run.threads", 1));
  inst.record_timings = cfg.get_bool("run.timings", false);
  inst.enforce_membership = cfg.get_bool("instance.enforce_membership", true);
  return inst;
}

}  // namespace glv
