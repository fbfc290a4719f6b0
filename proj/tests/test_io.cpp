#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"
#include "core/io.hpp"
#include "core/reports.hpp"

#include <doctest.h>

#include <json.hpp>

#include <sstream>

using namespace socapm;

TEST_CASE("instance JSON round trip") {
  for (const auto& n : instance_names()) {
    const ApmProblem p = problem_from_json(preset_json(n));
    const ApmProblem q = make_instance(n);
    CHECK(p.name == n);
    CHECK(p.k == q.k);
    CHECK(p.h.anchor() == q.h.anchor());
    CHECK(p.h.basis() == q.h.basis());
  }
}

TEST_CASE("instance JSON errors") {
  const auto code_of = [](const std::string& text) {
    try {
      problem_from_json(text);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::InvalidInput;
  };
  CHECK(code_of(R"({"blocks":[3],"anchor":[1,1,0],"basis":[[0,0,2]]})") == ErrorCode::NonOrthonormalBasis);
  CHECK(code_of(R"({"blocks":[3],"anchor":[1,1],"basis":[[0,0,1]]})") == ErrorCode::DimensionMismatch);
  CHECK(code_of(R"({"blocks":[4],"anchor":[1,1,0],"basis":[[0,0,1]]})") == ErrorCode::DimensionMismatch);
  CHECK(code_of(R"({"blocks":[3],"anchor":[1,1,0]})") == ErrorCode::InvalidInput);
  CHECK(code_of(R"({"blocks":[3],"anchor":[1,"a",0],"basis":[[0,0,1]]})") == ErrorCode::InvalidInput);
  CHECK(code_of("[1, 2") == ErrorCode::InvalidInput);
  CHECK(code_of(R"({"blocks":[1,2],"anchor":[1,1,0],"basis":[[0,0,1]]})") == ErrorCode::InvalidInput);
}

TEST_CASE("trace CSV round trip keeps every digit") {
  ApmRunOptions o;
  o.max_iters = 5000;
  const ApmTrace tr = apm_run(preset_t0("case3"), make_case3(), o);
  std::stringstream s;
  write_trace_csv(s, tr);
  const std::string text = s.str();
  CHECK(text.rfind("# instance=case3 p=2 terminated_at=none t_ref=0;0\nk,dist,t_0,t_1\n", 0) == 0);
  const ApmTrace back = read_trace_csv(s);
  REQUIRE(back.checkpoints.size() == tr.checkpoints.size());
  for (std::size_t i = 0; i < tr.checkpoints.size(); ++i) {
    CHECK(back.checkpoints[i].k == tr.checkpoints[i].k);
    CHECK(back.checkpoints[i].dist == tr.checkpoints[i].dist);
    CHECK(back.checkpoints[i].params == tr.checkpoints[i].params);
  }
  CHECK(back.instance == "case3");
  CHECK(rate_report_json(back) == rate_report_json(tr));
}

TEST_CASE("trace CSV errors") {
  std::istringstream no_header("k,dist,t_0\n0,1,1\n");
  CHECK_THROWS_AS(read_trace_csv(no_header), Error);
  std::istringstream bad_row("# instance=x p=1 terminated_at=none t_ref=none\nk,dist,t_0\n0,1\n");
  CHECK_THROWS_AS(read_trace_csv(bad_row), Error);
  std::istringstream order("# instance=x p=1 terminated_at=none t_ref=none\nk,dist,t_0\n1,1,1\n1,1,1\n");
  CHECK_THROWS_AS(read_trace_csv(order), Error);
}

TEST_CASE("certificate files") {
  CHECK(certificates_from_json(R"({"certificates": [[1,-1,0],[0,0,1]]})").size() == 2);
  CHECK(certificates_from_json("[[1,-1,0]]").size() == 1);
  CHECK_THROWS_AS(certificates_from_json(R"({"certs": []})"), Error);
  CHECK(parse_vector("0,1,-0.5")[2] == -0.5);
  CHECK_THROWS_AS(parse_vector("0,x"), Error);
}

TEST_CASE("classify text") {
  const std::string c3 = classify_text(make_case3());
  CHECK(c3.find("class: HalfLine d=(0.70710678,0.70710678,0)") != std::string::npos);
  CHECK(c3.find("summary: HalfLine, degree 1") != std::string::npos);
  CHECK(classify_text(make_case2()).find("summary: SinglePoint, degree 1") != std::string::npos);
  CHECK(classify_text(make_case1()).find("summary: OriginOnly, degree 1") != std::string::npos);
  const auto j = nlohmann::json::parse(classify_json(make_case2()));
  CHECK(j["degree"] == 1);
  CHECK(j["class"] == "SinglePoint");
}

TEST_CASE("rate report JSON schema") {
  ApmRunOptions o;
  o.max_iters = 50;
  o.schedule = CheckpointSchedule::linear(1);
  o.membership_tol = 1e-300;
  const auto j = nlohmann::json::parse(rate_report_json(apm_run(preset_t0("case1"), make_case1(), o)));
  for (const char* key : {"instance", "model", "exponent_or_ratio", "constant", "fit_quality", "window", "diagnostics"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["model"] == "Geometric");
  CHECK(std::abs(j["exponent_or_ratio"].get<double>() - 0.5) < 1e-12);
  CHECK(j["diagnostics"][0]["predicted"] == 0.5);
}

TEST_CASE("certify text") {
  const auto certs = product_certificates();
  const std::string out = certify_text(make_example2(), certs);
  CHECK(out.find("terminal: Ray(0.70710678,0.70710678,0) x Ray(0.70710678,0.70710678,0)") !=
        std::string::npos);
}
