#include "core/acceptance.hpp"

#include "core/analysis.hpp"
#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/instances.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>

namespace socapm {

namespace {

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

bool within_rel(double measured, double target, double tol) {
  return std::abs(measured - target) <= tol * std::abs(target);
}

struct Setup {
  long k_long;
  double scale;  // tolerance multiplier
};

// Largest increase of ||t_k - ref|| between consecutive checkpoints.
double fejer_violation(const ApmTrace& trace, const Vector& ref) {
  double worst = 0.0;
  double prev = -1.0;
  for (const auto& c : trace.checkpoints) {
    const double d = (c.params - ref).norm();
    if (prev >= 0.0) worst = std::max(worst, d - prev);
    prev = d;
  }
  return worst;
}

ApmTrace run(const ApmProblem& p, const Vector& t0, long iters,
             CheckpointSchedule schedule = CheckpointSchedule::geometric(1.1), double tol = 0.0) {
  ApmRunOptions opt;
  if (tol > 0.0) opt.membership_tol = tol;
  opt.max_iters = iters;
  opt.schedule = schedule;
  return apm_run(t0, p, opt);
}

CriterionResult c1_case1() {
  const ApmProblem p = make_case1();
  const auto start = std::chrono::steady_clock::now();
  const ApmTrace tr = run(p, preset_t0("case1"), 50, CheckpointSchedule::linear(1), 1e-300);
  const RateEstimate est = fit_geometric_rate(tr, Vector::Zero(1), KWindow{1, 50});
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  const bool ok = std::abs(est.exponent_or_ratio - 0.5) <= 1e-6 && ms < 1.0;
  return {1, "Case 1 linear rate", ok,
          "ratio=" + num(est.exponent_or_ratio, 12) + " predicted=0.5 tol=1e-06 over k in [1, 50]",
          "runtime " + num(ms, 3) + " ms (limit 1 ms)"};
}

CriterionResult c2_case2(const ApmTrace& tr, const Setup& s) {
  const Theorem32Check c = check_theorem_3_2(tr, 0.0, 1.0);
  const double tol = 0.05 * s.scale;
  const bool matched = c.rel_error_paper <= tol || c.rel_error_derivation <= tol;
  const RateEstimate est = fit_power_rate(tr, Vector::Zero(1));
  const bool exp_ok = std::abs(est.exponent_or_ratio + 0.5) <= 0.02 * s.scale;
  std::string which = "none";
  if (c.rel_error_derivation <= tol && c.rel_error_derivation <= c.rel_error_paper) {
    which = "sqrt(2) (derivation)";
  } else if (c.rel_error_paper <= tol) {
    which = "2 (stated constant)";
  }
  return {2, "Case 2 exact rate constant", matched && exp_ok,
          "sqrt(k)|t_k|=" + num(c.measured, 7) + " candidates 2 (rel err " +
              num(c.rel_error_paper, 3) + "), sqrt(2) (rel err " + num(c.rel_error_derivation, 3) +
              "); exponent=" + num(est.exponent_or_ratio, 6) + " predicted=-0.5",
          "matched: " + which + "; k=" + std::to_string(tr.final_k())};
}

CriterionResult c3_case3(const ApmTrace& tr, const Setup& s) {
  const Vector lim = limit_extrapolate(tr);
  const double xinf = lim[0];
  const Checkpoint& last = tr.checkpoints.back();
  const double k = static_cast<double>(last.k);
  const double y2 = last.params.tail(1).squaredNorm();
  const double a = k * y2 / (xinf * xinf);
  const double b = k * (xinf - last.params[0]) / (xinf / 2.0);
  const RateEstimate est = fit_power_rate(tr, lim);
  const double tol = 0.05 * s.scale;
  const bool ok_a = within_rel(a, 1.0, tol);
  const bool ok_b = within_rel(b, 1.0, tol);
  const bool ok_e = std::abs(est.exponent_or_ratio + 0.5) <= 0.02 * s.scale;
  return {3, "Case 3 constants", ok_a && ok_b && ok_e,
          "x_inf=" + num(xinf, 8) + "; k||y||^2/x_inf^2=" + num(a, 6) +
              " predicted=1; k(x_inf-x_k)/(x_inf/2)=" + num(b, 6) +
              " predicted=1 (derived 0.5); exponent=" + num(est.exponent_or_ratio, 6) +
              " predicted=-0.5",
          std::string(ok_a ? "" : "y constant off; ") +
              (ok_b ? "" : "x gap constant differs: one-step increment (r - x)^2/(4r) gives x_inf/4; ") +
              (ok_e ? "" : "exponent off")};
}

CriterionResult c4_case3_line(const ApmTrace& tr) {
  const ApmProblem p = make_case3();
  const bool term = tr.terminated_at && *tr.terminated_at <= 1;
  const bool exact = ambient_in_cone(tr.final_params(), p, 0.0);
  return {4, "Case 3 finite termination", term && exact,
          "terminated_at=" + (tr.terminated_at ? std::to_string(*tr.terminated_at) : "none") +
              " final t=" + num(tr.final_params()[0]) + "," + num(tr.final_params()[1]),
          exact ? "membership exact (zero tolerance)" : "final iterate not exactly in K"};
}

CriterionResult c5_example1(const Setup& s) {
  const Example1State s0{0.05, example1_S(0.05)};
  Example1Run r;
  try {
    r = example1_run(s0, s.k_long, CheckpointSchedule::geometric(1.1));
  } catch (const Error& e) {
    return {5, "Example 1 rate constant", false, "step invariant check aborted", e.what()};
  }
  std::vector<double> X;
  for (const auto& st : r.states) X.push_back(st.X);
  const LinearFit f = fit_inverse_power_slope(r.ks, X, 6.0);
  const double tol = 0.10 * s.scale;
  const bool slope_ok = within_rel(f.slope, 1.0 / 16.0, tol);
  return {5, "Example 1 rate constant", slope_ok && r.region_at_checkpoints,
          "slope of X^-6 vs k=" + num(f.slope, 6) + " predicted=0.0625 (rel err " +
              num(std::abs(f.slope * 16.0 - 1.0), 3) + ", tol " + num(tol, 2) + "); X_k=" +
              num(X.back(), 6) + " at k=" + std::to_string(r.ks.back()),
          std::string("step invariants held at every step; region invariance ") +
              (r.region_at_checkpoints ? "held" : "FAILED") + " at every checkpoint" +
              (slope_ok ? "" : "; slope carries an O(X_k) bias and X_k stays near X_0")};
}

CriterionResult c6_example2_pos(const Setup& s) {
  const Example2Run r =
      example2_run(kExample2ZPos, s.k_long, CheckpointSchedule::geometric(1.1), false);
  const Example2Asymptotics a = example2_asymptotics(r, +1);
  const double tol = 0.05 * s.scale;
  bool ok = r.first_proj3.has_value() && r.y_constant_after_proj3 && !r.transition_violation;
  std::string measured;
  for (const auto& l : a.limits) {
    ok = ok && within_rel(l.measured, l.predicted, tol);
    measured += l.description + "=" + num(l.measured, 7) + " predicted=" + num(l.predicted, 7) + "; ";
  }
  return {6, "Example 2, Z0 > 0", ok, measured + "X_inf=" + num(a.X_inf, 8),
          std::string("Y constant after first Proj3: ") +
              (r.y_constant_after_proj3 && r.first_proj3 ? "yes" : "no") +
              (r.transition_violation ? "; transition violation " + *r.transition_violation : "")};
}

CriterionResult c7_example2_neg(const Setup& s) {
  const Example2Run r = example2_run(kExample2ZNeg, 200, CheckpointSchedule::linear(1), true);
  const Example2Asymptotics a = example2_asymptotics(r, -1);
  const double tol = 0.01 * s.scale;
  bool ok = !r.transition_violation;
  std::string measured, note = "C=" + num(a.C, 7) + "; ";
  for (std::size_t i = 0; i < a.limits.size(); ++i) {
    const auto& l = a.limits[i];
    if (i < 3) {
      ok = ok && std::abs(l.measured - l.predicted) <= tol;
      measured += l.description + "=" + num(l.measured, 6) + " predicted=" + num(l.predicted, 6) + "; ";
    } else {
      note += l.description + "=" + num(l.measured, 6) + " stated=" + num(l.predicted, 6) +
              " derived=" + num(l.predicted_derived, 6) + "; ";
    }
  }
  return {7, "Example 2, Z0 < 0", ok, measured + "window k in [20, 60]",
          note + "gaps from tail sums of step increments over 200 steps"};
}

// Max deviation of one engine step against the closed form, in scaled coordinates.
template <class ToState, class Closed, class Diff>
double per_step_deviation(const ApmProblem& p, Vector t, long steps, ToState to_state,
                          Closed closed, Diff diff) {
  double worst = 0.0;
  for (long k = 0; k < steps; ++k) {
    const auto expected = closed(to_state(t));
    t = apm_step(t, p);
    worst = std::max(worst, diff(to_state(t), expected));
  }
  return worst;
}

CriterionResult c8_oracle() {
  constexpr long steps = 10000;
  const double d3 = per_step_deviation(
      make_case3(), preset_t0("case3"), steps,
      [](const Vector& t) { return Case3State{t[0], t.tail(1)}; },
      [](const Case3State& s) { return case3_step(s); },
      [](const Case3State& a, const Case3State& b) {
        return std::max(std::abs(a.x - b.x), (a.y - b.y).cwiseAbs().maxCoeff());
      });
  const double d1 = per_step_deviation(
      make_example1(), preset_t0("example1"), steps,
      [](const Vector& t) { return example1_from_params(t); },
      [](const Example1State& s) { return example1_step(s); },
      [](const Example1State& a, const Example1State& b) {
        return std::max(std::abs(a.X - b.X), std::abs(a.Y - b.Y));
      });
  const auto e2 = [&](const std::string& preset) {
    return per_step_deviation(
        make_example2(), preset_t0("example2", preset), steps,
        [](const Vector& t) { return example2_from_params(t); },
        [](const Example2State& s) { return example2_step(s).next; },
        [](const Example2State& a, const Example2State& b) {
          return std::max({std::abs(a.X - b.X), std::abs(a.Y - b.Y), std::abs(a.Z - b.Z)});
        });
  };
  const double d2p = e2("zpos");
  const double d2n = e2("zneg");
  const double worst = std::max({d3, d1, d2p, d2n});
  return {8, "Engine vs closed-form steppers", worst <= 1e-10,
          "max per-step deviation: case3=" + num(d3, 3) + " example1=" + num(d1, 3) +
              " example2(Z0>0)=" + num(d2p, 3) + " example2(Z0<0)=" + num(d2n, 3) + " (tol 1e-10)",
          "10^4 steps each"};
}

CriterionResult c9_projection(std::uint64_t seed) {
  constexpr int samples = 100000;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(2, 8);
  std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
  std::normal_distribution<double> normal;
  const auto random_vec = [&](int n) {
    Vector v(n);
    const double sc = std::pow(10.0, log_scale(rng));
    for (int i = 0; i < n; ++i) v[i] = sc * normal(rng);
    return v;
  };
  int fail_moreau = 0, fail_idem = 0, fail_nonexp = 0, fail_recon = 0;
  for (int i = 0; i < samples; ++i) {
    const int n = dim_dist(rng);
    const Vector x = random_vec(n);
    const Vector y = random_vec(n);
    const double tol = 1e-12 * (1.0 + x.norm());
    const Vector px = project_soc(ConeVector(x)).coords();
    const Vector pnx = project_soc(ConeVector(Vector(-x))).coords();
    const Vector py = project_soc(ConeVector(y)).coords();
    if ((x - (px - pnx)).norm() > tol || std::abs(px.dot(pnx)) > 1e-10 * (1.0 + x.squaredNorm())) {
      ++fail_moreau;
    }
    if ((project_soc(ConeVector(px)).coords() - px).norm() > tol) ++fail_idem;
    if ((px - py).norm() > (x - y).norm() + 1e-12 * (1.0 + x.norm() + y.norm())) ++fail_nonexp;
    const SpectralDecomposition sd = spectral_decompose(ConeVector(x));
    if ((sd.lambda1 * sd.e1.coords() + sd.lambda2 * sd.e2.coords() - x).norm() > tol) ++fail_recon;
  }
  const bool ok = fail_moreau + fail_idem + fail_nonexp + fail_recon == 0;
  return {9, "Projection property suite", ok,
          "failures out of 1e5 each: Moreau=" + std::to_string(fail_moreau) +
              " idempotence=" + std::to_string(fail_idem) + " nonexpansive=" +
              std::to_string(fail_nonexp) + " reconstruction=" + std::to_string(fail_recon),
          "seed " + std::to_string(seed)};
}

CriterionResult c10_certificates() {
  const std::vector<Vector> certs = product_certificates();
  Vector d(3);
  d << 1.0, 1.0, 0.0;
  Face target;
  target.blocks = {FaceBlock::ray(d), FaceBlock::ray(d)};
  std::string measured;
  bool ok = true;
  for (const auto& p : {make_example1(), make_example2()}) {
    try {
      const auto chain = facial_reduction_chain(p.h, p.k, certs);
      const bool hit = face_equal(chain.back(), target);
      ok = ok && hit;
      measured += p.name + " -> " + describe(chain.back()) + "; ";
    } catch (const Error& e) {
      ok = false;
      measured += p.name + " rejected: " + e.what() + "; ";
    }
  }
  for (const auto& p : {make_case2(), make_case3(), make_case1()}) {
    try {
      const SingularityDegree sd = singularity_degree_single(p.h);
      const bool verified = sd.certificate && verify_reducing_certificate(
                                                  p.h, Face::full(p.k), *sd.certificate);
      ok = ok && sd.degree == 1 && verified;
      measured += p.name + " degree " + std::to_string(sd.degree) +
                  (verified ? " (certificate verified); " : " (certificate NOT verified); ");
    } catch (const Error& e) {
      ok = false;
      measured += p.name + " error: " + e.what() + "; ";
    }
  }
  return {10, "Certificate chains and singularity degree", ok, measured,
          "expected terminal face Ray(0.70710678,0.70710678,0) x Ray(0.70710678,0.70710678,0)"};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
  const Setup s{options.quick ? 100000L : 1000000L, options.quick ? 2.0 : 1.0};
  const auto async = [](auto f) { return std::async(std::launch::async, std::move(f)); };

  auto t_case2 = async([&] { return run(make_case2(), preset_t0("case2"), s.k_long); });
  auto t_case3 = async([&] { return run(make_case3(), preset_t0("case3"), s.k_long); });
  auto t_line = async([&] { return run(make_case3(), preset_t0("case3", "line"), 10); });
  auto t_ex1 = async([&] { return run(make_example1(), preset_t0("example1"), s.k_long); });
  auto t_ex2p = async([&] { return run(make_example2(), preset_t0("example2", "zpos"), s.k_long); });
  auto t_ex2n = async([&] {
    return run(make_example2(), preset_t0("example2", "zneg"), 200, CheckpointSchedule::linear(1));
  });
  auto r5 = async([&] { return c5_example1(s); });
  auto r6 = async([&] { return c6_example2_pos(s); });
  auto r7 = async([&] { return c7_example2_neg(s); });
  auto r8 = async([] { return c8_oracle(); });
  auto r9 = async([&] { return c9_projection(options.seed); });
  auto r10 = async([] { return c10_certificates(); });

  const ApmTrace case2 = t_case2.get();
  const ApmTrace case3 = t_case3.get();
  const ApmTrace line = t_line.get();
  const ApmTrace ex1 = t_ex1.get();
  const ApmTrace ex2p = t_ex2p.get();
  const ApmTrace ex2n = t_ex2n.get();

  std::vector<CriterionResult> out;
  out.push_back(c1_case1());
  out.push_back(c2_case2(case2, s));
  out.push_back(c3_case3(case3, s));
  out.push_back(c4_case3_line(line));
  out.push_back(r5.get());
  out.push_back(r6.get());
  out.push_back(r7.get());
  out.push_back(r8.get());
  out.push_back(r9.get());
  out.push_back(r10.get());

  // Fejér monotonicity against points of H ∩ K.
  const ApmTrace case1 = run(make_case1(), preset_t0("case1"), 50, CheckpointSchedule::linear(1), 1e-300);
  const auto limit_point = [](const ApmTrace& tr) {
    const Example2State e = example2_from_params(tr.final_params());
    return example2_to_params({std::max(e.X, 0.0), std::max(e.Y, 0.0), 0.0});
  };
  Vector case3_ray(2);
  case3_ray << std::max(case3.final_params()[0], 0.0), 0.0;
  const std::vector<std::pair<std::string, double>> checks{
      {"case1", fejer_violation(case1, Vector::Zero(1))},
      {"case2", fejer_violation(case2, Vector::Zero(1))},
      {"case3/origin", fejer_violation(case3, Vector::Zero(2))},
      {"case3/ray", fejer_violation(case3, case3_ray)},
      {"case3/line", fejer_violation(line, Vector::Zero(2))},
      {"example1", fejer_violation(ex1, Vector::Zero(2))},
      {"example2+/origin", fejer_violation(ex2p, Vector::Zero(3))},
      {"example2+/face", fejer_violation(ex2p, limit_point(ex2p))},
      {"example2-/origin", fejer_violation(ex2n, Vector::Zero(3))},
      {"example2-/face", fejer_violation(ex2n, limit_point(ex2n))},
  };
  double worst = 0.0;
  std::string measured;
  for (const auto& [name, v] : checks) {
    worst = std::max(worst, v);
    measured += name + "=" + num(v, 3) + " ";
  }
  out.push_back({11, "Fejer monotonicity", worst <= 1e-12,
                 "largest recorded increase " + num(worst, 3) + " (tol 1e-12)", measured});
  for (auto& r : out) {
    for (std::string* f : {&r.measured, &r.note}) {
      while (!f->empty() && (f->back() == ' ' || f->back() == ';')) f->pop_back();
    }
  }
  return out;
}

std::string acceptance_table(const std::vector<CriterionResult>& results) {
  std::ostringstream out;
  int passed = 0;
  for (const auto& r : results) {
    passed += r.pass ? 1 : 0;
    out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << ". " << r.title << ": " << r.measured;
    if (!r.note.empty()) out << " | " << r.note;
    out << "\n";
  }
  out << passed << "/" << results.size() << " criteria passed\n";
  return out.str();
}

std::string acceptance_json(const std::vector<CriterionResult>& results,
                            const AcceptanceOptions& options) {
  nlohmann::json j;
  j["quick"] = options.quick;
  j["seed"] = options.seed;
  j["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    j["criteria"].push_back(
        {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"measured", r.measured}, {"note", r.note}});
  }
  return j.dump(2);
}

}  // namespace socapm
