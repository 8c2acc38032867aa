// SPDX-License-Identifier: Apache-2.0
//
// glv: command-line front end over the C interface.
//   exit 0  pass / success
//   exit 1  numerical failure (identity not met, oracle disagreement)
//   exit 2  structural error (bad input, config, poles, coverage)
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "glv/glv.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kStructural = 2;

struct Failure {
  std::string message;
};

void check(glv_status s, const char* what) {
  if (s != GLV_OK)
    throw Failure{std::string(what) + ": " + glv_status_name(s) + ": " + glv_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  glv_string_free(s);
  return out;
}

// Flags mapped onto config keys; a flag wins over the file.
struct InstanceFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::map<std::string, std::string> values;
  bool timings = false;

  void add(CLI::App* app, bool with_instance = true) {
    app->add_option("--config", config_path, "config file (default: $GLV_CONFIG)");
    app->add_option("--set", sets, "override section.key=value (repeatable)");
    auto opt = [&](const char* flag, const char* key, const char* help) {
      app->add_option_function<std::string>(
          flag, [this, key](const std::string& v) { values[key] = v; }, help);
    };
    opt("--form", "instance.form", "delta | sym2-delta | none");
    opt("--lambda", "instance.lambda", "archimedean parameters, comma-separated");
    opt("--delta", "instance.delta", "parities, comma-separated");
    opt("--coverage", "instance.coverage", "largest tabulated coefficient index");
    if (with_instance) {
      opt("--n", "instance.n", "GL(n)");
      opt("--q", "instance.q", "modulus");
      opt("--a", "instance.a", "residue coprime to q");
      opt("--c", "instance.c", "n-2 nonzero integers, comma-separated");
      opt("--family", "test_function.family", "gaussian | zero");
      opt("--X", "test_function.X", "Gaussian scale");
      opt("--m", "test_function.m", "x^m factor (0 or 1)");
      opt("--delta-n", "test_function.delta_n", "parity of the test-function prefactor");
      opt("--s0", "contour.s0", "pin the contour abscissa");
      opt("--T", "contour.T", "contour height");
      opt("--step", "contour.h", "contour step");
      opt("--r-lhs", "truncation.r_lhs", "left truncation (0 = auto)");
      opt("--r-rhs", "truncation.r_rhs", "right truncation (0 = auto)");
      opt("--term-tolerance", "truncation.term_tolerance", "relative term cutoff");
      opt("--tolerance", "tolerance.rel", "pass threshold on rel_err");
      opt("--abs-floor", "tolerance.abs_floor", "pass threshold on abs_err");
      opt("--threads", "run.threads", "worker threads");
      opt("--out", "run.out", "output path ('-' = stdout)");
      app->add_flag("--timings", timings, "include wall times in the report");
    }
  }

  glv_config* build() const {
    glv_config* cfg = nullptr;
    std::string path = config_path;
    if (path.empty())
      if (const char* env = std::getenv("GLV_CONFIG")) path = env;
    if (path.empty())
      check(glv_config_new(&cfg), "config");
    else
      check(glv_config_load(path.c_str(), &cfg), "config");
    try {
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw Failure{"--set expects section.key=value, got '" + s + "'"};
        check(glv_config_set(cfg, s.substr(0, eq).c_str(), s.substr(eq + 1).c_str()), "--set");
      }
      for (const auto& [k, v] : values) check(glv_config_set(cfg, k.c_str(), v.c_str()), k.c_str());
      if (timings) check(glv_config_set(cfg, "run.timings", "true"), "--timings");
    } catch (...) {
      glv_config_free(cfg);
      throw;
    }
    return cfg;
  }
};

struct ConfigHandle {
  glv_config* p;
  ~ConfigHandle() { glv_config_free(p); }
};

std::string get(const glv_config* cfg, const char* key) {
  char* v = nullptr;
  check(glv_config_get(cfg, key, &v), key);
  return take(v);
}

void write_output(const glv_config* cfg, const std::string& text) {
  const std::string out = get(cfg, "run.out");
  if (out.empty() || out == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Failure{"cannot write '" + out + "'"};
  f << text;
}

using Report = glv_status (*)(const glv_config*, int*, char**, char**);

int run_report(const InstanceFlags& flags, Report fn, const char* what) {
  ConfigHandle cfg{flags.build()};
  int passed = 0;
  char* json = nullptr;
  char* summary = nullptr;
  check(fn(cfg.p, &passed, &json, &summary), what);
  const std::string j = take(json);
  std::cerr << take(summary) << "\n";
  write_output(cfg.p, j);
  return passed ? kPass : kFail;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string fmt_complex(double re, double im) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s %s%si", fmt(re).c_str(), im < 0 ? "-" : "+",
                fmt(std::abs(im)).c_str());
  return buf;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"GL(n) Voronoi summation verifier"};
  app.require_subcommand(1);
  app.set_version_flag("--version", glv_version());

  InstanceFlags verify_flags, twist_flags, calib_flags, transform_flags, coeff_flags;

  auto* verify = app.add_subcommand("verify", "compare both sides of the summation formula");
  verify_flags.add(verify);

  auto* twist = app.add_subcommand("twist", "character-weighted verification over a mod q");
  twist_flags.add(twist);
  twist->add_option_function<std::string>(
      "--chi", [&](const std::string& v) { twist_flags.values["twist.chi"] = v; },
      "character index in characters_mod(q)");

  auto* calib = app.add_subcommand("calibrate", "rank parity assignments on the q=1 smoke instance");
  calib_flags.add(calib);
  std::string write_path;
  calib->add_option("--write", write_path, "write the config with the winning delta here");

  auto* sum = app.add_subcommand("sum", "hyperkloosterman sum S(a,b;q,c,d)");
  long long sa = 0, sb = 0, sq = 1;
  std::vector<long long> sc, sd;
  bool scheck = false;
  sum->add_option("--a", sa, "first argument")->required();
  sum->add_option("--b", sb, "second argument")->required();
  sum->add_option("--q", sq, "modulus")->required();
  sum->add_option("--c", sc, "c_1..c_{n-2}")->delimiter(',');
  sum->add_option("--d", sd, "d_1..d_{n-2}")->delimiter(',');
  sum->add_flag("--check", scheck, "also evaluate the brute-force oracle");

  auto* transform = app.add_subcommand("transform", "evaluate F(y) as CSV");
  transform_flags.add(transform);
  transform->add_option_function<std::string>(
      "--y", [&](const std::string& v) { transform_flags.values["transform.y"] = v; },
      "evaluation points, comma-separated");
  transform->add_option_function<std::string>(
      "--grid-min", [&](const std::string& v) { transform_flags.values["transform.grid_min"] = v; },
      "grid dump lower |y|");
  transform->add_option_function<std::string>(
      "--grid-max", [&](const std::string& v) { transform_flags.values["transform.grid_max"] = v; },
      "grid dump upper |y|");
  transform->add_option_function<std::string>(
      "--nodes-per-decade",
      [&](const std::string& v) { transform_flags.values["transform.nodes_per_decade"] = v; },
      "grid dump density");

  auto* coeffs = app.add_subcommand("coeffs", "dump Fourier coefficients as CSV");
  coeff_flags.add(coeffs, false);
  long long cmax = 1;
  bool with_c = false;
  coeffs->add_option("--max", cmax, "largest index per component")->required();
  coeffs->add_flag("--arch-params", with_c, "add c_k columns for the configured (lambda, delta)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kStructural;
  }

  try {
    if (*verify) return run_report(verify_flags, glv_verify, "verify");
    if (*twist) return run_report(twist_flags, glv_twisted_verify, "twist");
    if (*calib) {
      ConfigHandle cfg{calib_flags.build()};
      int found = 0;
      char* json = nullptr;
      char* summary = nullptr;
      check(glv_calibrate(cfg.p, &found, &json, &summary), "calibrate");
      const std::string j = take(json);
      std::cerr << take(summary);
      write_output(cfg.p, j);
      if (!write_path.empty()) {
        char* text = nullptr;
        check(glv_config_serialize(cfg.p, &text), "serialize");
        std::ofstream f(write_path, std::ios::binary);
        if (!f) throw Failure{"cannot write '" + write_path + "'"};
        f << take(text);
      }
      return found ? kPass : kFail;
    }
    if (*sum) {
      if (sc.size() != sd.size()) throw Failure{"--c and --d must have the same length"};
      std::vector<int64_t> c(sc.begin(), sc.end()), d(sd.begin(), sd.end());
      double re = 0, im = 0;
      check(glv_hyperkloosterman(sa, sb, sq, c.data(), d.data(), c.size(), &re, &im), "sum");
      std::cout << fmt_complex(re, im) << "\n";
      if (!scheck) return kPass;
      double bre = 0, bim = 0;
      check(glv_hyperkloosterman_bruteforce(sa, sb, sq, c.data(), d.data(), c.size(), &bre, &bim),
            "sum --check");
      const double diff = std::hypot(re - bre, im - bim);
      std::cout << fmt_complex(bre, bim) << " bruteforce\n";
      std::cout << "difference " << fmt(diff) << (diff > 1e-12 ? " MISMATCH" : " ok") << "\n";
      return diff > 1e-12 ? kFail : kPass;
    }
    if (*transform) {
      ConfigHandle cfg{transform_flags.build()};
      char* csv = nullptr;
      check(glv_transform_csv(cfg.p, &csv), "transform");
      write_output(cfg.p, take(csv));
      return kPass;
    }
    if (*coeffs) {
      ConfigHandle cfg{coeff_flags.build()};
      char* csv = nullptr;
      check(glv_coefficients_csv(cfg.p, cmax, with_c ? 1 : 0, &csv), "coeffs");
      std::cout << take(csv);
      return kPass;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kStructural;
  }
  return kStructural;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (...) {
    std::cerr << "error: unknown failure\n";
  }
  return kStructural;
}
