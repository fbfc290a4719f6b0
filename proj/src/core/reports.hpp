#pragma once

#include "core/apm.hpp"

#include <span>
#include <string>

namespace socapm {

/// "(a,b,c)" with %.<digits>g entries; magnitudes below 1e-15 print as 0.
std::string format_vector(const Vector& v, int digits = 8);

/// Intersection class, ||b||^2, singularity degree and certificate for one-block
/// instances; block layout for products. Ends with a "summary:" line.
std::string classify_text(const ApmProblem& problem);
std::string classify_json(const ApmProblem& problem);

/// Rate report JSON. model is "auto", "power" or "geometric".
std::string rate_report_json(const ApmTrace& trace, const std::string& model = "auto");

/// Face chain as text, one face per line. Throws CertificateRejectedAtStep.
std::string certify_text(const ApmProblem& problem, std::span<const Vector> certificates);

}  // namespace socapm
