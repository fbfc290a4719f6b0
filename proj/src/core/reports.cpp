#include "core/reports.hpp"

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/instances.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace socapm {

using nlohmann::json;

std::string format_vector(const Vector& v, int digits) {
  std::string out = "(";
  char buf[48];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    const double x = std::abs(v[i]) < 1e-15 ? 0.0 : v[i];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    out += buf;
  }
  return out + ")";
}

namespace {

json vec_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

struct Classification {
  std::string tag;
  std::optional<Vector> witness;
  double b_norm_sq = 0.0;
  std::optional<int> degree;
  std::optional<Vector> certificate;
  std::string minimal_face;
  std::string summary;
};

Classification classify(const ApmProblem& p) {
  Classification c;
  if (p.k.num_blocks() != 1) {
    c.tag = "Product";
    c.summary = "product of " + std::to_string(p.k.num_blocks()) +
                " cones; use certify with a certificate chain";
    return c;
  }
  c.b_norm_sq = p.h.basis().row(0).squaredNorm();
  try {
    const SingularityDegree sd = singularity_degree_single(p.h);
    c.degree = sd.degree;
    c.certificate = sd.certificate;
    c.minimal_face = describe(sd.minimal_face);
    if (sd.degree == 0) {
      c.tag = "Slater";
    } else {
      c.tag = intersection_tag_name(sd.intersection.tag);
      c.witness = sd.intersection.witness;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotNonTransversal) throw;
    c.tag = intersection_tag_name(IntersectionTag::NotNonTransversal);
  }
  c.summary = c.tag + (c.degree ? ", degree " + std::to_string(*c.degree) : ", degree unknown");
  return c;
}

}  // namespace

std::string classify_text(const ApmProblem& p) {
  const Classification c = classify(p);
  std::ostringstream out;
  out << "instance: " << p.name << "\n";
  out << "blocks:";
  for (int d : p.k.block_dims()) out << ' ' << d;
  out << "\n";
  if (p.k.num_blocks() == 1) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8g", c.b_norm_sq);
    out << "b_norm_sq: " << buf << "\n";
    out << "class: " << c.tag;
    if (c.witness) out << (c.tag == "HalfLine" ? " d=" : " u=") << format_vector(*c.witness);
    out << "\n";
    out << "degree: " << (c.degree ? std::to_string(*c.degree) : std::string("unknown")) << "\n";
    if (c.certificate) out << "certificate: " << format_vector(*c.certificate) << "\n";
    if (!c.minimal_face.empty()) out << "minimal face: " << c.minimal_face << "\n";
  }
  out << "summary: " << c.summary << "\n";
  return out.str();
}

std::string classify_json(const ApmProblem& p) {
  const Classification c = classify(p);
  json j;
  j["instance"] = p.name;
  j["blocks"] = p.k.block_dims();
  j["class"] = c.tag;
  j["summary"] = c.summary;
  if (p.k.num_blocks() == 1) j["b_norm_sq"] = c.b_norm_sq;
  j["witness"] = c.witness ? vec_json(*c.witness) : json(nullptr);
  j["degree"] = c.degree ? json(*c.degree) : json(nullptr);
  j["certificate"] = c.certificate ? vec_json(*c.certificate) : json(nullptr);
  if (!c.minimal_face.empty()) j["minimal_face"] = c.minimal_face;
  return j.dump(2);
}

namespace {

json diagnostic(const std::string& description, double tail, double predicted) {
  return {{"description", description},
          {"tail_estimate", tail},
          {"predicted", predicted},
          {"rel_error", std::abs(tail - predicted) / std::abs(predicted)}};
}

json diagnostic2(const std::string& description, double tail, double predicted, double derived) {
  json d = diagnostic(description, tail, predicted);
  d["predicted_derived"] = derived;
  d["rel_error_derived"] = std::abs(tail - derived) / std::abs(derived);
  return d;
}

bool unique_intersection_point(const std::string& name) {
  return name == "case1" || name == "case2" || name == "example1";
}

}  // namespace

std::string rate_report_json(const ApmTrace& trace, const std::string& model_in) {
  if (trace.checkpoints.size() < 2) {
    throw Error(ErrorCode::InsufficientCheckpoints, "rate report needs at least two checkpoints");
  }
  const std::string& name = trace.instance;
  const Vector& t0 = trace.checkpoints.front().params;
  const bool zneg = name == "example2" && t0.size() == 3 && t0[2] < 0.0;

  Vector limit = trace.final_params();
  if (trace.terminated_at) {
    limit = trace.final_params();
  } else if (unique_intersection_point(name) && trace.reference_params) {
    limit = *trace.reference_params;
  } else {
    limit = limit_extrapolate(trace);
  }

  std::string model = model_in;
  if (model == "auto") model = (name == "case1" || zneg) ? "geometric" : "power";
  if (model != "power" && model != "geometric") {
    throw Error(ErrorCode::InvalidInput, "model must be auto, power or geometric");
  }

  const auto ks = checkpoint_ks(trace);
  const long kmax = ks.back();
  std::optional<KWindow> window;
  if (name == "case1" && model == "geometric") window = KWindow{1, std::min(50L, kmax)};
  if (zneg && model == "geometric") window = KWindow{20, std::min(60L, kmax)};

  json report;
  report["instance"] = name;
  report["limit"] = vec_json(limit);
  json diags = json::array();
  try {
    RateEstimate est;
    if (zneg && model == "geometric") {
      // The Z coordinate carries the slowest geometric mode.
      std::vector<double> z;
      for (double v : coordinate(trace, 2)) z.push_back(std::abs(v));
      est = fit_geometric_rate(ks, z, window);
    } else {
      const auto ds = distances_to(trace, limit);
      est = model == "power" ? fit_power_rate(ks, ds, window) : fit_geometric_rate(ks, ds, window);
    }
    report["model"] = rate_model_name(est.model);
    report["exponent_or_ratio"] = est.exponent_or_ratio;
    report["constant"] = est.constant;
    report["fit_quality"] = est.fit_quality;
    report["window"] = {est.k_lo, est.k_hi};
    if (name == "case1") diags.push_back(diagnostic("per-step ratio of ||t_k||", est.exponent_or_ratio, 0.5));
    if (zneg) diags.push_back(diagnostic("per-step ratio of Z_k", est.exponent_or_ratio, 0.8));
  } catch (const Error& e) {
    report["model"] = model == "power" ? "Power" : "Geometric";
    report["exponent_or_ratio"] = nullptr;
    report["constant"] = nullptr;
    report["fit_quality"] = nullptr;
    report["window"] = nullptr;
    report["fit_error"] = e.what();
  }

  const Checkpoint& last = trace.checkpoints.back();
  const double k = static_cast<double>(last.k);
  if (name == "case2" && t0.size() == 1 && !trace.terminated_at) {
    const Theorem32Check c = check_theorem_3_2(trace, 0.0, 1.0);
    diags.push_back(diagnostic2("sqrt(k) |t_k| (u0 = 1, b = 0)", c.measured, c.candidate_paper,
                                c.candidate_derivation));
  } else if (name == "case3" && t0.size() == 2 && !trace.terminated_at) {
    const double xinf = limit[0];
    const double y = last.params[1];
    diags.push_back(diagnostic("k ||y_k||^2 / x_inf^2", k * y * y / (xinf * xinf), 1.0));
    diags.push_back(diagnostic2("k (x_inf - x_k) / x_inf", k * (xinf - last.params[0]) / xinf,
                                0.5, 0.25));
  } else if (name == "example1" && t0.size() == 2) {
    std::vector<double> X;
    for (const auto& c : trace.checkpoints) X.push_back(example1_from_params(c.params).X);
    try {
      const LinearFit f = fit_inverse_power_slope(ks, X, 6.0);
      diags.push_back(diagnostic("slope of X_k^-6 against k", f.slope, 1.0 / 16.0));
    } catch (const Error&) {
    }
  } else if (name == "example2" && t0.size() == 3 && !zneg && !trace.terminated_at) {
    std::vector<double> X;
    for (const auto& c : trace.checkpoints) X.push_back(example2_from_params(c.params).X);
    const double xinf = extrapolate_sequence(ks, X);
    const Example2State s = example2_from_params(last.params);
    diags.push_back(diagnostic("k (X_inf - X_k) / X_inf", k * (xinf - s.X) / xinf, 25.0 / 16.0));
    diags.push_back(diagnostic("sqrt(k) Z_k / X_inf", std::sqrt(k) * s.Z / xinf, std::sqrt(1.25)));
  }
  report["diagnostics"] = diags;
  return report.dump(2);
}

std::string certify_text(const ApmProblem& problem, std::span<const Vector> certificates) {
  const auto chain = facial_reduction_chain(problem.h, problem.k, certificates);
  std::ostringstream out;
  out << "instance: " << problem.name << "\n";
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out << "F" << i << ": " << describe(chain[i]) << "\n";
  }
  out << "terminal: " << describe(chain.back()) << "\n";
  return out.str();
}

}  // namespace socapm
