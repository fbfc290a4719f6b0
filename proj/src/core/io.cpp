#include "core/io.hpp"

#include "core/error.hpp"
#include "core/instances.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace socapm {

using nlohmann::json;

namespace {

Vector to_vector(const json& j, const std::string& what) {
  if (!j.is_array()) throw Error(ErrorCode::InvalidInput, what + " must be a list of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw Error(ErrorCode::InvalidInput, what + " must be a list of numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

json from_vector(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ApmProblem problem_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "instance must be a JSON object");
  for (const char* key : {"blocks", "anchor", "basis"}) {
    if (!j.contains(key)) throw Error(ErrorCode::InvalidInput, std::string("missing field '") + key + "'");
  }
  if (!j["blocks"].is_array()) throw Error(ErrorCode::InvalidInput, "'blocks' must be a list");
  std::vector<int> blocks;
  for (const auto& b : j["blocks"]) {
    if (!b.is_number_integer()) throw Error(ErrorCode::InvalidInput, "'blocks' must hold integers");
    blocks.push_back(b.get<int>());
  }
  Vector anchor = to_vector(j["anchor"], "'anchor'");
  const json& cols = j["basis"];
  if (!cols.is_array() || cols.empty()) {
    throw Error(ErrorCode::InvalidInput, "'basis' must be a non-empty list of columns");
  }
  Matrix basis(anchor.size(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const Vector col = to_vector(cols[c], "basis column " + std::to_string(c));
    if (col.size() != anchor.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "basis column " + std::to_string(c) + " has dimension " +
                      std::to_string(col.size()) + ", anchor has " + std::to_string(anchor.size()));
    }
    basis.col(static_cast<Eigen::Index>(c)) = col;
  }
  std::optional<Vector> reference;
  if (j.contains("reference")) reference = to_vector(j["reference"], "'reference'");
  std::string name = j.value("name", std::string("custom"));
  ApmProblem p{AffineSubspace(std::move(anchor), std::move(basis)), ConeProduct(std::move(blocks)),
               std::move(reference), std::move(name)};
  p.validate();
  return p;
}

std::string problem_to_json(const ApmProblem& p) {
  json j;
  j["name"] = p.name;
  j["blocks"] = p.k.block_dims();
  j["anchor"] = from_vector(p.h.anchor());
  json cols = json::array();
  for (Eigen::Index c = 0; c < p.h.dim(); ++c) cols.push_back(from_vector(p.h.basis().col(c)));
  j["basis"] = cols;
  if (p.reference) j["reference"] = from_vector(*p.reference);
  return j.dump(2);
}

std::string preset_json(const std::string& name) { return problem_to_json(make_instance(name)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ApmProblem load_problem(const std::string& path) { return problem_from_json(read_file(path)); }

void write_trace_csv(std::ostream& out, const ApmTrace& trace) {
  const Eigen::Index p = trace.checkpoints.empty() ? 0 : trace.checkpoints.front().params.size();
  out << "# instance=" << (trace.instance.empty() ? "custom" : trace.instance) << " p=" << p
      << " terminated_at="
      << (trace.terminated_at ? std::to_string(*trace.terminated_at) : std::string("none"))
      << " t_ref=";
  if (trace.reference_params) {
    for (Eigen::Index i = 0; i < trace.reference_params->size(); ++i) {
      if (i) out << ';';
      out << fmt17((*trace.reference_params)[i]);
    }
  } else {
    out << "none";
  }
  out << "\nk,dist";
  for (Eigen::Index i = 0; i < p; ++i) out << ",t_" << i;
  out << '\n';
  for (const auto& c : trace.checkpoints) {
    out << c.k << ',' << fmt17(c.dist);
    for (Eigen::Index i = 0; i < c.params.size(); ++i) out << ',' << fmt17(c.params[i]);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidInput, "not a number: '" + s + "'");
  }
}

}  // namespace

ApmTrace read_trace_csv(std::istream& in) {
  ApmTrace trace;
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw Error(ErrorCode::InvalidInput, "trace CSV must start with a '# instance=...' comment");
  }
  long p = -1;
  std::istringstream meta(line.substr(2));
  std::string field;
  while (meta >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "instance") {
      trace.instance = val;
    } else if (key == "p") {
      p = static_cast<long>(to_double(val));
    } else if (key == "terminated_at" && val != "none") {
      trace.terminated_at = static_cast<long>(to_double(val));
    } else if (key == "t_ref" && val != "none") {
      const auto parts = split(val, ';');
      Vector r(static_cast<Eigen::Index>(parts.size()));
      for (std::size_t i = 0; i < parts.size(); ++i) r[static_cast<Eigen::Index>(i)] = to_double(parts[i]);
      trace.reference_params = r;
    }
  }
  if (!std::getline(in, line) || line.rfind("k,dist", 0) != 0) {
    throw Error(ErrorCode::InvalidInput, "trace CSV is missing the 'k,dist,...' header");
  }
  const auto header = split(line, ',');
  const auto cols = static_cast<long>(header.size()) - 2;
  if (p >= 0 && p != cols) throw Error(ErrorCode::InvalidInput, "header p does not match columns");
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto parts = split(line, ',');
    if (static_cast<long>(parts.size()) != cols + 2) {
      throw Error(ErrorCode::InvalidInput, "trace row has the wrong number of fields: " + line);
    }
    Checkpoint c{static_cast<long>(to_double(parts[0])), Vector(cols), to_double(parts[1])};
    for (long i = 0; i < cols; ++i) c.params[i] = to_double(parts[static_cast<std::size_t>(i + 2)]);
    if (!trace.checkpoints.empty() && c.k <= trace.checkpoints.back().k) {
      throw Error(ErrorCode::InvalidInput, "checkpoint indices must increase");
    }
    trace.checkpoints.push_back(std::move(c));
  }
  if (trace.checkpoints.empty()) throw Error(ErrorCode::InvalidInput, "trace has no rows");
  return trace;
}

std::vector<Vector> certificates_from_json(const std::string& text) {
  const json j = parse_json(text);
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("certificates")) {
      throw Error(ErrorCode::InvalidInput, "certificates file needs a 'certificates' list");
    }
    list = &j["certificates"];
  }
  if (!list->is_array()) throw Error(ErrorCode::InvalidInput, "certificates must be a list");
  std::vector<Vector> out;
  for (std::size_t i = 0; i < list->size(); ++i) {
    out.push_back(to_vector((*list)[i], "certificate " + std::to_string(i + 1)));
  }
  return out;
}

Vector parse_vector(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.empty()) throw Error(ErrorCode::InvalidInput, "empty vector");
  Vector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<Eigen::Index>(i)] = to_double(parts[i]);
  return v;
}

}  // namespace socapm
