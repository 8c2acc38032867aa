// SPDX-License-Identifier: Apache-2.0
#include "glv/glv.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "glv/config.hpp"
#include "glv/error.hpp"
#include "glv/report.hpp"
#include "glv/voronoi.hpp"

struct glv_config {
  glv::Config cfg;
};

struct glv_transform {
  std::unique_ptr<glv::VoronoiTransform> F;
};

namespace {

thread_local std::string g_last_error;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

glv_status status_of(glv::ErrorCode c) {
  switch (c) {
    case glv::ErrorCode::kInvalidArgument: return GLV_E_INVALID_ARGUMENT;
    case glv::ErrorCode::kNoInverse: return GLV_E_NO_INVERSE;
    case glv::ErrorCode::kInvalidChain: return GLV_E_INVALID_CHAIN;
    case glv::ErrorCode::kPole: return GLV_E_POLE;
    case glv::ErrorCode::kQuadrature: return GLV_E_QUADRATURE;
    case glv::ErrorCode::kCoverage: return GLV_E_COVERAGE;
    case glv::ErrorCode::kConfig: return GLV_E_CONFIG;
  }
  return GLV_E_INTERNAL;
}

template <typename Fn>
glv_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return GLV_OK;
  } catch (const glv::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GLV_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GLV_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw glv::Error(glv::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
}

void emit(char** slot, const std::string& s) {
  if (slot) *slot = dup(s);
}

glv::DivisorChain make_chain(int64_t q, const int64_t* c, const int64_t* d, size_t len) {
  if (len > 0) {
    need(c, "c");
    need(d, "d");
  }
  if (q == 0) throw glv::Error(glv::ErrorCode::kInvalidArgument, "q must be nonzero");
  glv::DivisorChain ch;
  ch.q = std::abs(q);
  ch.c.assign(c, c + len);
  ch.d.assign(d, d + len);
  ch.validate();
  return ch;
}

std::string calibration_summary(const glv::CalibrationReport& cal) {
  std::string out;
  for (std::size_t i = 0; i < cal.entries.size(); ++i) {
    const auto& e = cal.entries[i];
    out += (cal.winner && *cal.winner == i ? "* " : "  ") + e.params.to_string() + " " +
           (e.passed ? "PASS" : "FAIL") + " rel_err=" +
           (e.report ? glv::fmt12(e.report->rel_err) : "n/a (" + e.error + ")") + "\n";
  }
  if (!cal.winner) out += "no candidate passed\n";
  return out;
}

}  // namespace

extern "C" {

const char* glv_version(void) { return "1.0.0"; }

const char* glv_last_error(void) { return g_last_error.c_str(); }

const char* glv_status_name(glv_status s) {
  switch (s) {
    case GLV_OK: return "ok";
    case GLV_E_INVALID_ARGUMENT: return "invalid argument";
    case GLV_E_NO_INVERSE: return "no inverse";
    case GLV_E_INVALID_CHAIN: return "invalid chain";
    case GLV_E_POLE: return "pole";
    case GLV_E_QUADRATURE: return "quadrature";
    case GLV_E_COVERAGE: return "coverage";
    case GLV_E_CONFIG: return "config";
    case GLV_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void glv_string_free(char* s) { std::free(s); }

glv_status glv_config_new(glv_config** out) {
  return guarded([&] {
    need(out, "out");
    *out = new glv_config{};
  });
}

glv_status glv_config_parse(const char* text, const char* origin, glv_config** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new glv_config{glv::Config::parse(text, origin ? origin : "<string>")};
  });
}

glv_status glv_config_load(const char* path, glv_config** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new glv_config{glv::Config::load(path)};
  });
}

void glv_config_free(glv_config* cfg) { delete cfg; }

glv_status glv_config_set(glv_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    if (value)
      cfg->cfg.set(key, value);
    else
      cfg->cfg.unset(key);
  });
}

glv_status glv_config_get(const glv_config* cfg, const char* key, char** value) {
  return guarded([&] {
    need(cfg, "cfg");
    need(key, "key");
    need(value, "value");
    auto v = cfg->cfg.get(key);
    *value = v ? dup(*v) : nullptr;
  });
}

glv_status glv_config_serialize(const glv_config* cfg, char** text) {
  return guarded([&] {
    need(cfg, "cfg");
    need(text, "text");
    *text = dup(cfg->cfg.serialize());
  });
}

glv_status glv_verify(const glv_config* cfg, int* passed, char** json, char** summary) {
  return guarded([&] {
    need(cfg, "cfg");
    const auto rep = glv::verify(glv::config_instance(cfg->cfg));
    if (passed) *passed = rep.passed ? 1 : 0;
    emit(json, glv::report_json(rep));
    emit(summary, rep.summary());
  });
}

glv_status glv_twisted_verify(const glv_config* cfg, int* passed, char** json, char** summary) {
  return guarded([&] {
    need(cfg, "cfg");
    const auto inst = glv::config_instance(cfg->cfg);
    const auto chars = glv::characters_mod(std::abs(inst.q));
    glv::i64 idx = cfg->cfg.get_int("twist.chi", -1);
    if (idx < 0) {
      // first primitive character whose parity matches f, else the first primitive
      for (std::size_t i = 0; i < chars.size() && idx < 0; ++i)
        if (glv::is_primitive(chars[i]) && !inst.f->mellin_vanishes(chars[i].parity()))
          idx = static_cast<glv::i64>(i);
      for (std::size_t i = 0; i < chars.size() && idx < 0; ++i)
        if (glv::is_primitive(chars[i])) idx = static_cast<glv::i64>(i);
      if (idx < 0)
        throw glv::Error(glv::ErrorCode::kInvalidArgument,
                         "no primitive character modulo " + std::to_string(std::abs(inst.q)));
    }
    if (idx >= static_cast<glv::i64>(chars.size()))
      throw glv::Error(glv::ErrorCode::kInvalidArgument,
                       "twist.chi=" + std::to_string(idx) + " but there are only " +
                           std::to_string(chars.size()) + " characters");
    const auto rep = glv::twisted_verify(inst, chars[static_cast<std::size_t>(idx)], idx);
    if (passed) *passed = rep.passed ? 1 : 0;
    emit(json, glv::report_json(rep));
    emit(summary, rep.summary());
  });
}

glv_status glv_calibrate(glv_config* cfg, int* found_winner, char** json, char** summary) {
  return guarded([&] {
    need(cfg, "cfg");
    glv::Config smoke = cfg->cfg;
    const auto params = glv::config_params(cfg->cfg);
    glv::VoronoiInstance base = glv::config_instance(smoke);
    if (!cfg->cfg.has("test_function.delta_n")) base.f = nullptr;
    const int m = static_cast<int>(cfg->cfg.get_int(
        "calibrate.m", cfg->cfg.get_int("test_function.m", 0)));
    const double X = cfg->cfg.get_real("calibrate.X", cfg->cfg.get_real("test_function.X", 4.0));
    const auto cal = glv::calibrate_arch_params(
        base, glv::parity_candidates(params.lambda, params.singular_ok), m, X);
    if (found_winner) *found_winner = cal.winner ? 1 : 0;
    if (cal.winner) {
      std::string d;
      for (int v : cal.entries[*cal.winner].params.delta) d += (d.empty() ? "" : ",") + std::to_string(v);
      cfg->cfg.set("instance.delta", d);
    }
    emit(json, glv::calibration_json(cal));
    emit(summary, calibration_summary(cal));
  });
}

glv_status glv_transform_new(const glv_config* cfg, glv_transform** out) {
  return guarded([&] {
    need(cfg, "cfg");
    need(out, "out");
    const auto params = glv::config_params(cfg->cfg);
    auto f = glv::config_test_function(cfg->cfg, params);
    auto t = std::make_unique<glv_transform>();
    t->F = std::make_unique<glv::VoronoiTransform>(params, f, glv::config_contour(cfg->cfg));
    *out = t.release();
  });
}

void glv_transform_free(glv_transform* t) { delete t; }

glv_status glv_transform_eval(const glv_transform* t, double y, double* re, double* im,
                              double* est_err) {
  return guarded([&] {
    need(t, "transform");
    need(re, "re");
    need(im, "im");
    if (y == 0.0 || !std::isfinite(y))
      throw glv::Error(glv::ErrorCode::kInvalidArgument, "F(y) needs a finite nonzero y");
    const auto v = (*t->F)(y);
    *re = v.real();
    *im = v.imag();
    if (est_err) *est_err = t->F->convergence_error(y);
  });
}

glv_status glv_transform_csv(const glv_config* cfg, char** csv) {
  return guarded([&] {
    need(cfg, "cfg");
    need(csv, "csv");
    const auto params = glv::config_params(cfg->cfg);
    auto f = glv::config_test_function(cfg->cfg, params);
    glv::VoronoiTransform F(params, f, glv::config_contour(cfg->cfg));
    std::vector<double> ys = cfg->cfg.get_real_list("transform.y");
    if (cfg->cfg.has("transform.grid_min") || cfg->cfg.has("transform.grid_max")) {
      const double lo = cfg->cfg.get_real("transform.grid_min", 0.1);
      const double hi = cfg->cfg.get_real("transform.grid_max", 100.0);
      const glv::i64 per = cfg->cfg.get_int("transform.nodes_per_decade", 16);
      if (!(lo > 0 && hi > lo) || per < 1)
        throw glv::Error(glv::ErrorCode::kConfig,
                         "transform grid needs 0 < grid_min < grid_max, nodes_per_decade >= 1");
      glv::TransformGrid grid(F, lo, hi, static_cast<int>(per));
      for (double y : grid.nodes()) ys.push_back(y);
    }
    std::string out = "y,re,im,est_err\n";
    for (double y : ys) {
      if (y == 0.0)
        throw glv::Error(glv::ErrorCode::kInvalidArgument, "F(y) needs a nonzero y");
      const auto v = F(y);
      out += glv::fmt12(y) + "," + glv::fmt12(v.real()) + "," + glv::fmt12(v.imag()) + "," +
             glv::fmt12(F.convergence_error(y)) + "\n";
    }
    *csv = dup(out);
  });
}

glv_status glv_hyperkloosterman(int64_t a, int64_t b, int64_t q, const int64_t* c,
                                const int64_t* d, size_t len, double* re, double* im) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    const auto v = glv::hyperkloosterman(a, b, make_chain(q, c, d, len));
    *re = v.real();
    *im = v.imag();
  });
}

glv_status glv_hyperkloosterman_bruteforce(int64_t a, int64_t b, int64_t q, const int64_t* c,
                                           const int64_t* d, size_t len, double* re,
                                           double* im) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    const auto v = glv::hyperkloosterman_bruteforce(a, b, make_chain(q, c, d, len));
    *re = v.real();
    *im = v.imag();
  });
}

glv_status glv_coefficients_csv(const glv_config* cfg, int64_t max_index, int with_c,
                                char** csv) {
  return guarded([&] {
    need(cfg, "cfg");
    need(csv, "csv");
    if (max_index < 1)
      throw glv::Error(glv::ErrorCode::kInvalidArgument, "max index must be >= 1");
    glv::Config local = cfg->cfg;
    if (!local.has("instance.coverage"))
      local.set("instance.coverage", std::to_string(std::max<int64_t>(max_index, 2)));
    const auto form = glv::config_form(local);
    if (!form) throw glv::Error(glv::ErrorCode::kConfig, "instance.form = none has no coefficients");
    const auto table = glv::CoefficientTable::from_provider(*form, max_index);
    const bool tau = form->id() == "delta";
    std::vector<glv::i128> taus;
    if (tau) taus = glv::ramanujan_tau(std::max<int64_t>(max_index, 1));
    glv::ArchParams params;
    if (with_c) params = glv::config_params(local);

    std::string out = "# glv-coefficients v1 form=" + form->id() + (with_c ? " kind=a+c" : " kind=a") + "\n";
    for (int j = 1; j <= table.index_length; ++j) out += "k" + std::to_string(j) + ",";
    out += "re,im";
    if (tau) out += ",tau";
    if (with_c) out += ",c_re,c_im";
    out += "\n";
    for (const auto& [k, v] : table.values) {
      for (glv::i64 kj : k) out += std::to_string(kj) + ",";
      out += glv::fmt12(glv::round12(v.real())) + "," + glv::fmt12(glv::round12(v.imag()));
      if (tau) out += "," + glv::to_string(taus[static_cast<std::size_t>(k[0])]);
      if (with_c) {
        const auto c = glv::a_to_c(v, k, params);
        out += "," + glv::fmt12(c.real()) + "," + glv::fmt12(c.imag());
      }
      out += "\n";
    }
    *csv = dup(out);
  });
}

}  // extern "C"
