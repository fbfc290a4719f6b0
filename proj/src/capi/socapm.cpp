#include "socapm/socapm.h"

#include "core/acceptance.hpp"
#include "core/apm.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/io.hpp"
#include "core/reports.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <random>
#include <sstream>
#include <string>

struct socapm_instance {
  socapm::ApmProblem problem;
};

struct socapm_trace {
  socapm::ApmTrace trace;
};

namespace {

thread_local std::string g_last_error;

socapm_status fail(socapm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

socapm_status map_error(const socapm::Error& e) {
  using socapm::ErrorCode;
  switch (e.code()) {
    case ErrorCode::CertificateRejected:
    case ErrorCode::CertificateVerificationFailed:
      return fail(SOCAPM_ERR_CERTIFICATE, e.what());
    case ErrorCode::LemmaViolation:
      return fail(SOCAPM_ERR_INTERNAL, e.what());
    default:
      return fail(SOCAPM_ERR_INPUT, std::string(socapm::error_code_name(e.code())) + ": " + e.what());
  }
}

// Runs f, translating exceptions into status codes.
template <class F>
socapm_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const socapm::Error& e) {
    return map_error(e);
  } catch (const std::bad_alloc&) {
    return fail(SOCAPM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SOCAPM_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

socapm_status need(const void* p, const char* what) {
  return p ? SOCAPM_OK : fail(SOCAPM_ERR_INPUT, std::string(what) + " must not be NULL");
}

}  // namespace

extern "C" {

const char* socapm_last_error(void) { return g_last_error.c_str(); }

void socapm_string_free(char* s) { std::free(s); }

socapm_status socapm_instance_names(char** out) {
  if (need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    std::string joined;
    for (const auto& n : socapm::instance_names()) joined += (joined.empty() ? "" : ",") + n;
    *out = dup(joined);
    return SOCAPM_OK;
  });
}

socapm_status socapm_instance_from_json(const char* json, socapm_instance** out) {
  if (need(json, "json") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    *out = new socapm_instance{socapm::problem_from_json(json)};
    return SOCAPM_OK;
  });
}

socapm_status socapm_instance_from_preset(const char* name, socapm_instance** out) {
  if (need(name, "name") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    // Presets go through the same JSON path as user files.
    *out = new socapm_instance{socapm::problem_from_json(socapm::preset_json(name))};
    return SOCAPM_OK;
  });
}

socapm_status socapm_instance_from_file(const char* path, socapm_instance** out) {
  if (need(path, "path") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    *out = new socapm_instance{socapm::load_problem(path)};
    return SOCAPM_OK;
  });
}

void socapm_instance_free(socapm_instance* inst) { delete inst; }

socapm_status socapm_instance_param_dim(const socapm_instance* inst, size_t* p) {
  if (need(inst, "instance") || need(p, "p")) return SOCAPM_ERR_INPUT;
  *p = static_cast<size_t>(inst->problem.h.dim());
  return SOCAPM_OK;
}

socapm_status socapm_instance_to_json(const socapm_instance* inst, char** out) {
  if (need(inst, "instance") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    *out = dup(socapm::problem_to_json(inst->problem));
    return SOCAPM_OK;
  });
}

socapm_status socapm_classify(const socapm_instance* inst, int format, char** out) {
  if (need(inst, "instance") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    *out = dup(format == 1 ? socapm::classify_json(inst->problem)
                           : socapm::classify_text(inst->problem));
    return SOCAPM_OK;
  });
}

socapm_status socapm_preset_t0(const socapm_instance* inst, const char* preset, double* out,
                               size_t n) {
  if (need(inst, "instance") || need(preset, "preset") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    const socapm::Vector t = socapm::preset_t0(inst->problem.name, preset);
    if (static_cast<size_t>(t.size()) != n) {
      return fail(SOCAPM_ERR_INPUT, "preset has dimension " + std::to_string(t.size()));
    }
    for (size_t i = 0; i < n; ++i) out[i] = t[static_cast<Eigen::Index>(i)];
    return SOCAPM_OK;
  });
}

socapm_status socapm_random_t0(const socapm_instance* inst, uint64_t seed, double* out, size_t n) {
  if (need(inst, "instance") || need(out, "out")) return SOCAPM_ERR_INPUT;
  if (n != static_cast<size_t>(inst->problem.h.dim())) {
    return fail(SOCAPM_ERR_INPUT, "t0 dimension must equal p");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (size_t i = 0; i < n; ++i) out[i] = normal(rng);
  return SOCAPM_OK;
}

socapm_status socapm_run(const socapm_instance* inst, const double* t0, size_t n, long iters,
                         const char* checkpoint, double tol, socapm_trace** out) {
  if (need(inst, "instance") || need(t0, "t0") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    if (n != static_cast<size_t>(inst->problem.h.dim())) {
      return fail(SOCAPM_ERR_INPUT, "t0 has dimension " + std::to_string(n) + ", instance has p=" +
                                        std::to_string(inst->problem.h.dim()));
    }
    if (tol < 0.0) return fail(SOCAPM_ERR_INPUT, "tolerance must be nonnegative");
    socapm::ApmRunOptions opt;
    opt.max_iters = iters;
    if (checkpoint) opt.schedule = socapm::CheckpointSchedule::parse(checkpoint);
    if (tol > 0.0) opt.membership_tol = tol;
    const socapm::Vector start =
        Eigen::Map<const socapm::Vector>(t0, static_cast<Eigen::Index>(n));
    *out = new socapm_trace{socapm::apm_run(start, inst->problem, opt)};
    return SOCAPM_OK;
  });
}

void socapm_trace_free(socapm_trace* trace) { delete trace; }

socapm_status socapm_trace_summary(const socapm_trace* trace, size_t* checkpoints, long* final_k,
                                   double* final_dist, long* terminated_at) {
  if (need(trace, "trace")) return SOCAPM_ERR_INPUT;
  const auto& t = trace->trace;
  if (checkpoints) *checkpoints = t.checkpoints.size();
  if (final_k) *final_k = t.final_k();
  if (final_dist) *final_dist = t.checkpoints.empty() ? 0.0 : t.checkpoints.back().dist;
  if (terminated_at) *terminated_at = t.terminated_at ? *t.terminated_at : -1;
  return SOCAPM_OK;
}

socapm_status socapm_trace_to_csv(const socapm_trace* trace, char** out) {
  if (need(trace, "trace") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    std::ostringstream s;
    socapm::write_trace_csv(s, trace->trace);
    *out = dup(s.str());
    return SOCAPM_OK;
  });
}

socapm_status socapm_trace_from_csv(const char* csv, socapm_trace** out) {
  if (need(csv, "csv") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    std::istringstream s(csv);
    *out = new socapm_trace{socapm::read_trace_csv(s)};
    return SOCAPM_OK;
  });
}

socapm_status socapm_rate_report(const socapm_trace* trace, const char* model, char** out) {
  if (need(trace, "trace") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    *out = dup(socapm::rate_report_json(trace->trace, model ? model : "auto"));
    return SOCAPM_OK;
  });
}

socapm_status socapm_certify(const socapm_instance* inst, const char* certificates_json,
                             char** out) {
  if (need(inst, "instance") || need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    const std::vector<socapm::Vector> certs =
        certificates_json ? socapm::certificates_from_json(certificates_json)
                          : socapm::product_certificates();
    *out = dup(socapm::certify_text(inst->problem, certs));
    return SOCAPM_OK;
  });
}

socapm_status socapm_reproduce(int quick, uint64_t seed, int format, char** out) {
  if (need(out, "out")) return SOCAPM_ERR_INPUT;
  return guarded([&] {
    socapm::AcceptanceOptions opt;
    opt.quick = quick != 0;
    opt.seed = seed;
    const auto results = socapm::run_acceptance(opt);
    *out = dup(format == 1 ? socapm::acceptance_json(results, opt)
                           : socapm::acceptance_table(results));
    for (const auto& r : results) {
      if (!r.pass) return fail(SOCAPM_ERR_ACCEPTANCE, "acceptance criterion " + std::to_string(r.id) + " failed");
    }
    return SOCAPM_OK;
  });
}

}  // extern "C"
