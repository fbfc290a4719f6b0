// socapm: command-line front end over the C API.
#include "socapm/socapm.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct InstanceDeleter {
  void operator()(socapm_instance* p) const { socapm_instance_free(p); }
};
struct TraceDeleter {
  void operator()(socapm_trace* p) const { socapm_trace_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { socapm_string_free(p); }
};
using InstancePtr = std::unique_ptr<socapm_instance, InstanceDeleter>;
using TracePtr = std::unique_ptr<socapm_trace, TraceDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct Failure {
  int code;
};

void check(socapm_status s) {
  if (s != SOCAPM_OK) {
    std::cerr << "error: " << socapm_last_error() << "\n";
    throw Failure{static_cast<int>(s)};
  }
}

void input_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  throw Failure{SOCAPM_ERR_INPUT};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) input_error("cannot write '" + out_path + "'");
  out << text;
}

struct InstanceArgs {
  std::string name;
  std::string spec;
};

void add_instance_options(CLI::App* cmd, InstanceArgs& a) {
  auto* inst = cmd->add_option("--instance", a.name, "named instance (case1, case2, case3, example1, example2)");
  auto* spec = cmd->add_option("--spec", a.spec, "instance JSON file");
  inst->excludes(spec);
}

InstancePtr open_instance(const InstanceArgs& a) {
  socapm_instance* raw = nullptr;
  if (!a.spec.empty()) {
    check(socapm_instance_from_file(a.spec.c_str(), &raw));
  } else if (!a.name.empty()) {
    check(socapm_instance_from_preset(a.name.c_str(), &raw));
  } else {
    input_error("one of --instance or --spec is required");
  }
  return InstancePtr(raw);
}

std::vector<double> parse_t0(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      input_error("--t0 must be comma separated numbers or a preset name, got '" + text + "'");
    }
  }
  return v;
}

bool looks_numeric(const std::string& s) {
  return !s.empty() && s.find_first_of("0123456789") != std::string::npos &&
         s.find_first_not_of("0123456789+-.,eE ") == std::string::npos;
}

int cmd_classify(const InstanceArgs& ia, bool json) {
  const InstancePtr inst = open_instance(ia);
  char* raw = nullptr;
  check(socapm_classify(inst.get(), json ? 1 : 0, &raw));
  const OwnedString report(raw);
  std::cout << report.get();
  if (json) std::cout << "\n";
  return 0;
}

struct RunArgs {
  InstanceArgs instance;
  long iters = 1000;
  std::string t0;
  std::string checkpoint = "geom:1.1";
  double tol = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int cmd_run(const RunArgs& a) {
  const InstancePtr inst = open_instance(a.instance);
  size_t p = 0;
  check(socapm_instance_param_dim(inst.get(), &p));
  std::vector<double> t0(p);
  if (!a.t0.empty() && looks_numeric(a.t0)) {
    t0 = parse_t0(a.t0);
  } else if (a.t0.empty() && a.seed) {
    check(socapm_random_t0(inst.get(), *a.seed, t0.data(), p));
    std::cerr << "seed: " << *a.seed << "\n";
  } else {
    check(socapm_preset_t0(inst.get(), a.t0.empty() ? "default" : a.t0.c_str(), t0.data(), p));
  }
  if (t0.size() != p) {
    input_error("--t0 has " + std::to_string(t0.size()) + " entries, instance has p=" + std::to_string(p));
  }
  socapm_trace* raw = nullptr;
  check(socapm_run(inst.get(), t0.data(), t0.size(), a.iters, a.checkpoint.c_str(), a.tol, &raw));
  const TracePtr trace(raw);

  char* csv_raw = nullptr;
  check(socapm_trace_to_csv(trace.get(), &csv_raw));
  const OwnedString csv(csv_raw);
  emit(csv.get(), a.out);

  size_t n = 0;
  long final_k = 0, term = -1;
  double dist = 0.0;
  check(socapm_trace_summary(trace.get(), &n, &final_k, &dist, &term));
  char line[256];
  std::snprintf(line, sizeof line, "summary: k=%ld dist=%.17g terminated_at=%s checkpoints=%zu\n",
                final_k, dist, term >= 0 ? std::to_string(term).c_str() : "none", n);
  (a.out.empty() || a.out == "-" ? std::cerr : std::cout) << line;
  return 0;
}

int cmd_rate(const std::string& trace_path, const std::string& model, const std::string& out) {
  const std::string csv = slurp(trace_path);
  socapm_trace* raw = nullptr;
  check(socapm_trace_from_csv(csv.c_str(), &raw));
  const TracePtr trace(raw);
  char* report_raw = nullptr;
  check(socapm_rate_report(trace.get(), model.c_str(), &report_raw));
  const OwnedString report(report_raw);
  emit(std::string(report.get()) + "\n", out);
  return 0;
}

int cmd_certify(const InstanceArgs& ia, const std::string& certs_path) {
  const InstancePtr inst = open_instance(ia);
  const std::string certs = certs_path.empty() ? std::string() : slurp(certs_path);
  char* raw = nullptr;
  check(socapm_certify(inst.get(), certs_path.empty() ? nullptr : certs.c_str(), &raw));
  const OwnedString report(raw);
  std::cout << report.get();
  return 0;
}

int cmd_reproduce(bool quick, std::uint64_t seed, bool json, const std::string& out) {
  char* raw = nullptr;
  const socapm_status s = socapm_reproduce(quick ? 1 : 0, seed, json ? 1 : 0, &raw);
  if (raw) {
    const OwnedString report(raw);
    emit(std::string(report.get()) + (json ? "\n" : ""), out);
  }
  if (s != SOCAPM_OK && s != SOCAPM_ERR_ACCEPTANCE) check(s);
  if (s == SOCAPM_ERR_ACCEPTANCE) std::cerr << "error: " << socapm_last_error() << "\n";
  return static_cast<int>(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Alternating projections for affine subspaces and second-order cones"};
  app.require_subcommand(1);

  InstanceArgs classify_args;
  bool classify_json = false;
  auto* classify = app.add_subcommand("classify", "classify the intersection and report the singularity degree");
  add_instance_options(classify, classify_args);
  classify->add_flag("--json", classify_json, "print JSON");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "run the alternating projection method and write a trace CSV");
  add_instance_options(run, run_args.instance);
  run->add_option("--iters", run_args.iters, "iterations")->check(CLI::PositiveNumber);
  run->add_option("--t0", run_args.t0, "initial params (comma separated) or preset name");
  run->add_option("--checkpoint", run_args.checkpoint, "linear:N or geom:F");
  run->add_option("--tol", run_args.tol, "relative membership tolerance (default 1e-12)");
  run->add_option("--seed", run_args.seed, "64-bit seed for a random initial point");
  run->add_option("--out", run_args.out, "CSV path (default stdout)");

  std::string rate_trace, rate_model = "auto", rate_out;
  auto* rate = app.add_subcommand("rate", "fit convergence rates from a trace CSV");
  rate->add_option("trace", rate_trace, "trace CSV")->required();
  rate->add_option("--model", rate_model, "auto, power or geometric");
  rate->add_option("--out", rate_out, "report path (default stdout)");

  InstanceArgs certify_args;
  std::string certs_path;
  auto* certify = app.add_subcommand("certify", "verify a facial reduction certificate chain");
  add_instance_options(certify, certify_args);
  certify->add_option("--certificates", certs_path, "certificates JSON (default: built-in d1, d2)");

  bool quick = false, repro_json = false;
  std::uint64_t repro_seed = 20240;
  std::string repro_out;
  auto* reproduce = app.add_subcommand("reproduce", "run the acceptance suite");
  reproduce->add_flag("--quick", quick, "k = 1e5 with doubled tolerances");
  reproduce->add_option("--seed", repro_seed, "seed of the random projection suite");
  reproduce->add_flag("--json", repro_json, "print JSON");
  reproduce->add_option("--out", repro_out, "report path (default stdout)");
  std::string repro_instance;
  reproduce->add_option("--instance", repro_instance, "instance name to check before running");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : SOCAPM_ERR_INPUT;
  }

  try {
    if (*classify) return cmd_classify(classify_args, classify_json);
    if (*run) return cmd_run(run_args);
    if (*rate) return cmd_rate(rate_trace, rate_model, rate_out);
    if (*certify) return cmd_certify(certify_args, certs_path);
    if (*reproduce) {
      if (!repro_instance.empty()) {
        socapm_instance* raw = nullptr;
        check(socapm_instance_from_preset(repro_instance.c_str(), &raw));
        socapm_instance_free(raw);
      }
      return cmd_reproduce(quick, repro_seed, repro_json, repro_out);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return SOCAPM_ERR_INPUT;
}
