#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/instances.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace socapm;

namespace {

// Scalar trace x_k = f(k) at geometric(1.1) checkpoints up to kmax.
ApmTrace synthetic(const std::function<double(double)>& f, long kmax, long kmin = 1,
                   CheckpointSchedule s = CheckpointSchedule::geometric(1.1)) {
  ApmTrace tr;
  tr.instance = "synthetic";
  for (long k = kmin; k <= kmax; k = s.next_after(k)) {
    tr.checkpoints.push_back({k, Vector::Constant(1, f(static_cast<double>(k))), 0.0});
    if (k == kmax) break;
    if (s.next_after(k) > kmax && k != kmax) {
      tr.checkpoints.push_back({kmax, Vector::Constant(1, f(static_cast<double>(kmax))), 0.0});
      break;
    }
  }
  for (auto& c : tr.checkpoints) c.dist = std::abs(c.params[0]);
  return tr;
}

}  // namespace

TEST_CASE("fit_power_rate on pure power laws") {
  auto est = fit_power_rate(synthetic([](double k) { return 3 / std::sqrt(k); }, 1000000),
                            Vector::Zero(1));
  CHECK(est.model == RateModel::Power);
  CHECK(est.exponent_or_ratio == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(std::abs(est.constant - 3) < 1e-4);
  CHECK(est.fit_quality > 0.999999);
  CHECK(est.k_lo >= 100000);
  CHECK(est.k_hi == 1000000);
  est = fit_power_rate(synthetic([](double k) { return std::pow(k, -1.0 / 6); }, 1000000),
                       Vector::Zero(1));
  CHECK(std::abs(est.exponent_or_ratio + 1.0 / 6) < 1e-6);
}

TEST_CASE("fit_power_rate with O(k^-1/2) contamination") {
  const auto est = fit_power_rate(
      synthetic([](double k) { return std::pow(k, -0.5) * (1 + 1 / std::sqrt(k)); }, 1000000),
      Vector::Zero(1), KWindow{100000, 1000000});
  CHECK(std::abs(est.exponent_or_ratio + 0.5) < 0.02);
}

TEST_CASE("fit_power_rate errors") {
  CHECK_THROWS_AS(fit_power_rate(synthetic([](double) { return 2.0; }, 1000), Vector::Constant(1, 2.0)),
                  Error);
  try {
    fit_power_rate(synthetic([](double) { return 2.0; }, 1000), Vector::Constant(1, 2.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveDistance);
  }
  try {
    fit_power_rate(synthetic([](double k) { return 1 / k; }, 20, 1, CheckpointSchedule::geometric(2)), Vector::Zero(1));
    FAIL("expected InsufficientCheckpoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientCheckpoints);
  }
}

TEST_CASE("fit_power_rate shifts the window when the limit is the final iterate") {
  const ApmTrace tr = synthetic([](double k) { return 1 + 1 / k; }, 1000000);
  const auto est = fit_power_rate(tr, tr.final_params());
  CHECK(est.k_hi <= 100000);
  CHECK(est.k_lo >= 10000);
}

TEST_CASE("fit_geometric_rate") {
  const ApmTrace tr =
      synthetic([](double k) { return 7 * std::pow(0.5, k); }, 60, 1, CheckpointSchedule::linear(1));
  auto est = fit_geometric_rate(tr, Vector::Zero(1));
  CHECK(std::abs(est.exponent_or_ratio - 0.5) < 1e-9);
  CHECK(std::abs(est.constant - 7) < 1e-6);

  ApmRunOptions o;
  o.max_iters = 50;
  o.schedule = CheckpointSchedule::linear(1);
  o.membership_tol = 1e-300;
  const ApmTrace c1 = apm_run(Vector::Constant(1, 1.0), make_case1(), o);
  est = fit_geometric_rate(c1, Vector::Zero(1), KWindow{1, 50});
  CHECK(std::abs(est.exponent_or_ratio - 0.5) < 1e-6);

  const Example2Run r = example2_run(kExample2ZNeg, 60, CheckpointSchedule::linear(1), false);
  std::vector<double> z;
  for (const auto& s : r.states) z.push_back(std::abs(s.Z));
  est = fit_geometric_rate(r.ks, z, KWindow{20, 60});
  CHECK(std::abs(est.exponent_or_ratio - 0.8) < 0.01);
}

TEST_CASE("scaled_limit") {
  const ApmTrace tr = synthetic([](double k) { return 2 / std::sqrt(k); }, 100000);
  const auto ks = checkpoint_ks(tr);
  const auto xs = coordinate(tr, 0);
  auto d = scaled_limit(ks, xs, Scaling::k_pow(2));
  CHECK(d.tail_estimate == doctest::Approx(2).epsilon(1e-12));
  d = scaled_limit(ks, xs, Scaling::inverse_kq(2));
  CHECK(d.tail_estimate == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(d.tail_estimate == d.points.back().second);
  std::vector<double> gap;
  for (long k : ks) gap.push_back(1 - 3.0 / static_cast<double>(k));
  CHECK(scaled_limit(ks, gap, Scaling::gap_times_k(1)).tail_estimate == doctest::Approx(3));
  std::vector<long> lk{1, 2, 3};
  std::vector<double> geo{5 * std::pow(0.8, 2), 5 * std::pow(0.8, 4), 5 * std::pow(0.8, 6)};
  CHECK(scaled_limit(lk, geo, Scaling::geometric_scaled(0.8, 2)).tail_estimate ==
        doctest::Approx(5));
}

TEST_CASE("scaled_limit tails approach the limit as the window grows") {
  double prev = 1e9;
  for (long kmax : {1000L, 10000L, 100000L, 1000000L}) {
    const ApmTrace tr = synthetic([](double k) { return 2 / std::sqrt(k) * (1 + 1 / k); }, kmax);
    const double tail = scaled_limit(checkpoint_ks(tr), coordinate(tr, 0), Scaling::k_pow(2)).tail_estimate;
    CHECK(std::abs(tail - 2) < prev);
    prev = std::abs(tail - 2);
  }
}

TEST_CASE("check_theorem_3_2") {
  ApmTrace tr = synthetic([](double k) { return 2 / std::sqrt(k); }, 10000);
  auto c = check_theorem_3_2(tr, 0.0, 1.0);
  CHECK(c.measured == doctest::Approx(2));
  CHECK(c.candidate_paper == doctest::Approx(2));
  CHECK(c.candidate_derivation == doctest::Approx(std::sqrt(2.0)));
  CHECK(*c.matched == "stated");

  ApmRunOptions o;
  o.max_iters = 100000;
  tr = apm_run(preset_t0("case2"), make_case2(), o);
  c = check_theorem_3_2(tr, 0.0, 1.0);
  REQUIRE(c.matched.has_value());
  CHECK(*c.matched == "derivation");
  CHECK(c.measured == doctest::Approx(std::sqrt(2.0)).epsilon(0.01));
}

TEST_CASE("limit_extrapolate") {
  ApmTrace tr = synthetic([](double k) { return 1 - 1 / k; }, 100000);
  CHECK(std::abs(limit_extrapolate(tr)[0] - 1) < 1e-9);
  tr = synthetic([](double k) { return 4 + 3 * std::pow(k, -0.5); }, 100000);
  CHECK(std::abs(limit_extrapolate(tr)[0] - 4) < 1e-9);

  ApmRunOptions o;
  o.max_iters = 10;
  const ApmTrace term = apm_run(preset_t0("case3", "line"), make_case3(), o);
  CHECK(limit_extrapolate(term) == term.final_params());

  o.max_iters = 1000000;
  const ApmTrace c3 = apm_run(preset_t0("case3"), make_case3(), o);
  const double xinf = limit_extrapolate(c3)[0];
  // Cross-check against the gap constant x_inf / 4 measured one decade earlier.
  const auto ks = checkpoint_ks(c3);
  const auto xs = coordinate(c3, 0);
  const auto d = scaled_limit(ks, xs, Scaling::gap_times_k(xinf));
  double at_1e5 = 0;
  for (const auto& [k, val] : d.points) {
    if (k <= 100000) at_1e5 = val;
  }
  CHECK(at_1e5 / xinf == doctest::Approx(0.25).epsilon(0.01));
  CHECK(xinf == doctest::Approx(0.48157).epsilon(1e-4));
}

TEST_CASE("sandwich bound for x_{k+1} = x_k (1 - C x_k^q)") {
  for (const auto& [q, C] : {std::pair{2.0, 0.25}, std::pair{6.0, 1.0 / 96}}) {
    double x = 0.5;
    const long K = 1000000;
    for (long k = 0; k < K; ++k) x *= 1 - C * std::pow(x, q);
    const double scaled = std::pow(q * C, 1 / q) * std::pow(static_cast<double>(K), 1 / q) * x;
    CHECK(scaled >= 0.95);
    CHECK(scaled <= 1.05);
  }
}

TEST_CASE("fit_inverse_power_slope") {
  std::vector<long> ks;
  std::vector<double> xs;
  for (long k = 1; k <= 1000; ++k) {
    ks.push_back(k);
    xs.push_back(std::pow(100 + k / 16.0, -1.0 / 6));
  }
  const LinearFit f = fit_inverse_power_slope(ks, xs, 6);
  CHECK(f.slope == doctest::Approx(1.0 / 16).epsilon(1e-9));
}

TEST_CASE("example2_asymptotics") {
  const Example2Run neg = example2_run(kExample2ZNeg, 200, CheckpointSchedule::linear(1), true);
  const auto a = example2_asymptotics(neg, -1);
  REQUIRE(a.limits.size() == 5);
  CHECK(a.limits[0].measured == doctest::Approx(0.8).epsilon(0.01));
  CHECK(a.limits[1].measured == doctest::Approx(0.512).epsilon(0.02));
  CHECK(a.limits[2].measured == doctest::Approx(0.4096).epsilon(0.025));
  CHECK(a.limits[3].measured == doctest::Approx(a.limits[3].predicted_derived).epsilon(0.02));
  CHECK(a.limits[4].measured == doctest::Approx(a.limits[4].predicted_derived).epsilon(0.02));
  CHECK(a.limits[4].predicted_derived == doctest::Approx(16 * a.limits[4].predicted));
  const Example2Run sparse = example2_run(kExample2ZNeg, 200, CheckpointSchedule::geometric(1.1), false);
  CHECK_THROWS_AS(example2_asymptotics(sparse, -1), Error);
}
