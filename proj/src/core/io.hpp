#pragma once

#include "core/apm.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace socapm {

// Instance JSON: {"blocks": [..], "anchor": [..], "basis": [[col], ..], "name"?}.
// Loading validates orthonormality and dimensions; errors carry InvalidInput,
// DimensionMismatch or NonOrthonormalBasis.
ApmProblem problem_from_json(const std::string& text);
ApmProblem load_problem(const std::string& path);
std::string problem_to_json(const ApmProblem& problem);

/// Embedded JSON for a named instance, in the same schema as user files.
std::string preset_json(const std::string& name);

// Trace CSV:
//   # instance=<name> p=<p> terminated_at=<k|none> t_ref=<v;v;..|none>
//   k,dist,t_0,...,t_{p-1}
// One row per checkpoint, %.17g.
void write_trace_csv(std::ostream& out, const ApmTrace& trace);
ApmTrace read_trace_csv(std::istream& in);

/// {"certificates": [[..], ..]} or a bare list of vectors.
std::vector<Vector> certificates_from_json(const std::string& text);

/// Comma separated reals, e.g. "0,1,-0.5".
Vector parse_vector(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace socapm
