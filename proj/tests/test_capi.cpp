#include "socapm/socapm.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  socapm_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("instance handles") {
  char* names = nullptr;
  REQUIRE(socapm_instance_names(&names) == SOCAPM_OK);
  CHECK(take(names) == "case1,case2,case3,example1,example2");

  socapm_instance* inst = nullptr;
  REQUIRE(socapm_instance_from_preset("example2", &inst) == SOCAPM_OK);
  size_t p = 0;
  CHECK(socapm_instance_param_dim(inst, &p) == SOCAPM_OK);
  CHECK(p == 3);
  char* json = nullptr;
  REQUIRE(socapm_instance_to_json(inst, &json) == SOCAPM_OK);
  socapm_instance* again = nullptr;
  CHECK(socapm_instance_from_json(json, &again) == SOCAPM_OK);
  socapm_string_free(json);
  CHECK(socapm_instance_param_dim(again, &p) == SOCAPM_OK);
  CHECK(p == 3);
  socapm_instance_free(again);
  socapm_instance_free(inst);
  socapm_instance_free(nullptr);
}

TEST_CASE("error codes and last_error") {
  socapm_instance* inst = nullptr;
  CHECK(socapm_instance_from_preset("nosuch", &inst) == SOCAPM_ERR_INPUT);
  CHECK(inst == nullptr);
  CHECK(std::strlen(socapm_last_error()) > 0);
  CHECK(socapm_instance_from_json(R"({"blocks":[3],"anchor":[1,1,0],"basis":[[0,0,2]]})", &inst) ==
        SOCAPM_ERR_INPUT);
  CHECK(std::string(socapm_last_error()).find("NonOrthonormalBasis") != std::string::npos);
  CHECK(socapm_instance_from_file("/nonexistent/file.json", &inst) == SOCAPM_ERR_INPUT);
  CHECK(socapm_instance_from_preset(nullptr, &inst) == SOCAPM_ERR_INPUT);

  REQUIRE(socapm_instance_from_preset("case1", &inst) == SOCAPM_OK);
  CHECK(std::string(socapm_last_error()).empty());
  const double t0[2] = {1, 2};
  socapm_trace* tr = nullptr;
  CHECK(socapm_run(inst, t0, 2, 10, nullptr, 0, &tr) == SOCAPM_ERR_INPUT);
  CHECK(socapm_run(inst, t0, 1, 10, "sometimes", 0, &tr) == SOCAPM_ERR_INPUT);
  CHECK(socapm_run(inst, t0, 1, 10, nullptr, -1, &tr) == SOCAPM_ERR_INPUT);
  CHECK(tr == nullptr);
  socapm_instance_free(inst);
}

TEST_CASE("run, csv and rate") {
  socapm_instance* inst = nullptr;
  REQUIRE(socapm_instance_from_preset("case1", &inst) == SOCAPM_OK);
  double t0 = 0;
  REQUIRE(socapm_preset_t0(inst, "default", &t0, 1) == SOCAPM_OK);
  CHECK(t0 == 1.0);
  socapm_trace* tr = nullptr;
  REQUIRE(socapm_run(inst, &t0, 1, 100, "linear:1", 1e-300, &tr) == SOCAPM_OK);
  size_t n = 0;
  long k = 0, term = 0;
  double dist = 0;
  CHECK(socapm_trace_summary(tr, &n, &k, &dist, &term) == SOCAPM_OK);
  CHECK(n == 101);
  CHECK(k == 100);
  CHECK(term == -1);
  CHECK(dist > 0);

  char* csv = nullptr;
  REQUIRE(socapm_trace_to_csv(tr, &csv) == SOCAPM_OK);
  socapm_trace* back = nullptr;
  REQUIRE(socapm_trace_from_csv(csv, &back) == SOCAPM_OK);
  socapm_string_free(csv);
  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(socapm_rate_report(tr, "auto", &a) == SOCAPM_OK);
  REQUIRE(socapm_rate_report(back, nullptr, &b) == SOCAPM_OK);
  const std::string ra = take(a);
  CHECK(ra == take(b));
  CHECK(ra.find("\"model\": \"Geometric\"") != std::string::npos);
  CHECK(socapm_rate_report(tr, "cubic", &a) == SOCAPM_ERR_INPUT);
  CHECK(socapm_trace_from_csv("garbage", &back) != SOCAPM_OK);
  socapm_trace_free(back);
  socapm_trace_free(tr);
  socapm_instance_free(inst);
}

TEST_CASE("seeded random start is reproducible") {
  socapm_instance* inst = nullptr;
  REQUIRE(socapm_instance_from_preset("case3", &inst) == SOCAPM_OK);
  std::vector<double> a(2), b(2);
  CHECK(socapm_random_t0(inst, 7, a.data(), 2) == SOCAPM_OK);
  CHECK(socapm_random_t0(inst, 7, b.data(), 2) == SOCAPM_OK);
  CHECK(a == b);
  CHECK(socapm_random_t0(inst, 7, a.data(), 3) == SOCAPM_ERR_INPUT);
  socapm_instance_free(inst);
}

TEST_CASE("classify and certify") {
  socapm_instance* inst = nullptr;
  REQUIRE(socapm_instance_from_preset("case3", &inst) == SOCAPM_OK);
  char* out = nullptr;
  REQUIRE(socapm_classify(inst, 0, &out) == SOCAPM_OK);
  CHECK(take(out).find("summary: HalfLine, degree 1") != std::string::npos);
  REQUIRE(socapm_classify(inst, 1, &out) == SOCAPM_OK);
  CHECK(take(out).find("\"degree\": 1") != std::string::npos);
  socapm_instance_free(inst);

  REQUIRE(socapm_instance_from_preset("example1", &inst) == SOCAPM_OK);
  REQUIRE(socapm_certify(inst, nullptr, &out) == SOCAPM_OK);
  CHECK(take(out).find("terminal: Ray(0.70710678,0.70710678,0) x Ray(0.70710678,0.70710678,0)") !=
        std::string::npos);
  out = nullptr;
  CHECK(socapm_certify(inst, "[[1,-1,-1,1,-1,0]]", &out) == SOCAPM_ERR_CERTIFICATE);
  CHECK(out == nullptr);
  CHECK(std::strlen(socapm_last_error()) > 0);
  CHECK(socapm_certify(inst, "{", &out) == SOCAPM_ERR_INPUT);
  socapm_instance_free(inst);
}
