#include "core/instances.hpp"

#include "core/error.hpp"

#include <cmath>
#include <sstream>

namespace socapm {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);
const double kA = 1.0 / std::sqrt(2.0);
const double kB = 1.0 / std::sqrt(10.0);

Vector vec(std::initializer_list<double> xs) {
  return Eigen::Map<const Vector>(xs.begin(), static_cast<Eigen::Index>(xs.size()));
}

Matrix columns(std::initializer_list<std::initializer_list<double>> cols) {
  const auto p = static_cast<Eigen::Index>(cols.size());
  const auto n = static_cast<Eigen::Index>(cols.begin()->size());
  Matrix m(n, p);
  Eigen::Index j = 0;
  for (const auto& c : cols) m.col(j++) = vec(c);
  return m;
}

ApmProblem finish(ApmProblem p) {
  p.validate();
  return p;
}

}  // namespace

ApmProblem make_case1() {
  return finish({AffineSubspace(Vector::Zero(3), columns({{0, 0, 1}})), ConeProduct({3}),
                 Vector(Vector::Zero(3)), "case1"});
}

ApmProblem make_case2(double u0) {
  if (!(u0 > 0.0)) throw Error(ErrorCode::InvalidInput, "case2 needs u0 > 0");
  const Vector anchor = vec({u0, u0, 0});
  return finish({AffineSubspace(anchor, columns({{0, 0, 1}})), ConeProduct({3}), anchor, "case2"});
}

ApmProblem make_case3() {
  return finish({AffineSubspace(Vector::Zero(3), columns({{kA, kA, 0}, {0, 0, 1}})),
                 ConeProduct({3}), Vector(Vector::Zero(3)), "case3"});
}

ApmProblem make_example1() {
  const Vector anchor = vec({1, 1, 0, 1, 1, 0});
  const Matrix basis = columns({{1 / kSqrt3, 1 / kSqrt3, 0, 0, 0, 1 / kSqrt3},
                                {0, 0, 1 / kSqrt6, 2 / kSqrt6, 1 / kSqrt6, 0}});
  return finish({AffineSubspace(anchor, basis), ConeProduct({3, 3}), anchor, "example1"});
}

ApmProblem make_example2() {
  const Matrix basis = columns({{kA, kA, 0, 0, 0, 0},
                                {0, 0, 0, kA, kA, 0},
                                {0, 0, 2 * kB, kB, -kB, 2 * kB}});
  return finish({AffineSubspace(Vector::Zero(6), basis), ConeProduct({3, 3}),
                 Vector(Vector::Zero(6)), "example2"});
}

const std::vector<std::string>& instance_names() {
  static const std::vector<std::string> names{"case1", "case2", "case3", "example1", "example2"};
  return names;
}

ApmProblem make_instance(const std::string& name) {
  if (name == "case1") return make_case1();
  if (name == "case2") return make_case2();
  if (name == "case3") return make_case3();
  if (name == "example1") return make_example1();
  if (name == "example2") return make_example2();
  throw Error(ErrorCode::UnknownInstance, "unknown instance '" + name + "'");
}

std::vector<Vector> product_certificates() {
  return {vec({1, -1, 0, 0, 0, 0}), vec({1, -1, -1, 1, -1, 0})};
}

Vector preset_t0(const std::string& instance, const std::string& preset) {
  const auto bad = [&] {
    return Error(ErrorCode::InvalidInput,
                 "instance '" + instance + "' has no preset '" + preset + "'");
  };
  if (instance == "case1") {
    if (preset == "default") return vec({1.0});
    throw bad();
  }
  if (instance == "case2") {
    if (preset == "default") return vec({0.5});
    throw bad();
  }
  if (instance == "case3") {
    if (preset == "default") return vec({0.0, 1.0});
    if (preset == "line") return vec({-1.0, 0.0});
    throw bad();
  }
  if (instance == "example1") {
    if (preset == "default") return example1_to_params({0.05, example1_S(0.05)});
    throw bad();
  }
  if (instance == "example2") {
    if (preset == "default" || preset == "zpos") return example2_to_params(kExample2ZPos);
    if (preset == "zneg") return example2_to_params(kExample2ZNeg);
    throw bad();
  }
  throw Error(ErrorCode::UnknownInstance, "unknown instance '" + instance + "'");
}

// ---- Case 3 ----

Case3State case3_step(const Case3State& s) {
  const double ysq = s.y.squaredNorm();
  if (ysq == 0.0) {
    if (s.x >= 0.0) return s;
    return {0.0, s.y};
  }
  const double root = std::sqrt(s.x * s.x + 2.0 * ysq);
  const double nsq = s.x * s.x + ysq;
  // x + nsq/root cancels for x < 0; use the rationalized form there.
  const double x = s.x >= 0.0 ? 0.5 * (s.x + nsq / root)
                              : 0.5 * ysq * ysq / (root * (nsq - s.x * root));
  return {x, 0.5 * (1.0 + s.x / root) * s.y};
}

// ---- Example 1 ----

double example1_S(double X) {
  const double x2 = X * X;
  return x2 / 2.0 - 3.0 * x2 * x2 / 8.0 + x2 * x2 * x2 / 2.0;
}

double example1_U(double X) { return X - std::pow(X, 7) / 96.0; }

Example1State example1_step(const Example1State& s) {
  const double X = s.X;
  const double Y = s.Y;
  const double P = std::hypot(X + 1.0, Y);
  const double Q = std::hypot(X, Y + 1.0);
  const double f = (3.0 * X - 2.0 + (2.0 * (X + 1.0) * (X + 1.0) + Y * Y) / P +
                    (2.0 * Y + 1.0) * X / Q) /
                   6.0;
  const double g = (6.0 * Y - 3.0 + (1.0 + X) * Y / P +
                    (2.0 * X * X + 4.0 * Y * Y + 7.0 * Y + 3.0) / Q) /
                   12.0;
  return {f, g};
}

bool example1_precondition(const Example1State& s) {
  return s.Y != 0.0 && s.X * s.X - 3.0 * s.Y * s.Y - 2.0 * s.Y > 0.0;
}

bool example1_region(const Example1State& s, double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidInput, "delta must be positive");
  return s.X >= 0.0 && s.X <= delta && std::abs(s.Y - example1_S(s.X)) < std::pow(s.X, 7);
}

Vector example1_to_params(const Example1State& s) { return vec({kSqrt3 * s.X, kSqrt6 * s.Y}); }

Example1State example1_from_params(const Vector& t) { return {t[0] / kSqrt3, t[1] / kSqrt6}; }

std::string Example1LemmaCheck::failure() const {
  std::string out;
  const auto add = [&](bool ok, const char* what) {
    if (!ok) out += out.empty() ? what : std::string(", ") + what;
  };
  add(e2, "E.2 (Y > 0, X^2 - 3Y^2 - 2Y > 0)");
  add(e3, "E.3 (|X~ - U(X)| < X^8)");
  add(e4, "E.4 (|Y~ - S(U(X))| < X^7)");
  add(e5, "E.5 (region invariance)");
  return out;
}

Example1LemmaCheck example1_lemma_check(const Example1State& s, double delta) {
  Example1LemmaCheck c;
  c.e2 = s.Y > 0.0 && s.X * s.X - 3.0 * s.Y * s.Y - 2.0 * s.Y > 0.0;
  c.next = example1_step(s);
  const double u = example1_U(s.X);
  c.e3 = std::abs(c.next.X - u) < std::pow(s.X, 8);
  c.e4 = std::abs(c.next.Y - example1_S(u)) < std::pow(s.X, 7);
  c.e5 = example1_region(c.next, delta);
  return c;
}

Example1Run example1_run(const Example1State& s0, long steps, const CheckpointSchedule& schedule,
                         double delta) {
  if (!example1_region(s0, delta)) {
    throw Error(ErrorCode::PreconditionViolation, "initial state is outside E(delta)");
  }
  Example1Run run;
  run.ks.push_back(0);
  run.states.push_back(s0);
  Example1State s = s0;
  long next_cp = schedule.next_after(0);
  for (long k = 0; k < steps; ++k) {
    const Example1LemmaCheck c = example1_lemma_check(s, delta);
    if (!c.ok()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "Example 1 step invariants fail at step " << k << " from (X, Y) = (" << s.X << ", " << s.Y
          << "): " << c.failure();
      throw Error(ErrorCode::LemmaViolation, msg.str());
    }
    s = c.next;
    if (k + 1 == next_cp || k + 1 == steps) {
      run.ks.push_back(k + 1);
      run.states.push_back(s);
      run.region_at_checkpoints = run.region_at_checkpoints && example1_region(s, delta);
      next_cp = schedule.next_after(k + 1);
    }
  }
  return run;
}

// ---- Example 2 ----

const char* example2_branch_name(Example2Branch b) {
  switch (b) {
    case Example2Branch::Pr1: return "Pr1";
    case Example2Branch::Proj3: return "Proj3";
    case Example2Branch::Proj4: return "Proj4";
    case Example2Branch::Proj5: return "Proj5";
  }
  return "?";
}

namespace {

// sqrt(v^2 + (2Z)^2) - v without cancellation.
double root_minus(double v, double root, double Z) {
  return v >= 0.0 ? 4.0 * Z * Z / (root + v) : root - v;
}

}  // namespace

Example2Step example2_step(const Example2State& s) {
  const double X = s.X;
  const double Y = s.Y;
  const double Z = s.Z;
  if (Z == 0.0) {
    const Example2State next{std::max(X, 0.0), std::max(Y, 0.0), 0.0};
    return {next, Example2Branch::Pr1, next.X - X, next.Y - Y};
  }

  // X~ = (X + P)^2 / (4P).
  const double P = std::hypot(X, 2.0 * Z);
  const double pm = root_minus(X, P, Z);
  const double dX = pm * pm / (4.0 * P);
  const double xp = X / P;

  if (Y >= Z && Z > 0.0) {
    return {{X + dX, Y, Z / 5.0 * (4.0 + xp)}, Example2Branch::Proj3, dX, 0.0};
  }
  if (Y <= Z && Z < 0.0) {
    return {{X + dX, 0.0, Z / 5.0 * (1.0 + xp)}, Example2Branch::Proj4, dX, -Y};
  }
  const double w = Y - Z;
  const double Q = std::hypot(w, 2.0 * Z);
  const double qm = root_minus(w, Q, Z);
  const double dY = w >= 0.0 ? Z * Z * (qm - 2.0 * Z) / (Q * (Q + w))
                             : (qm - 2.0 * Z) * qm / (4.0 * Q);
  const double Zn = Z * (0.5 + xp / 5.0 + (Y + 5.0 * Z) / (10.0 * Q));
  return {{X + dX, Y + dY, Zn}, Example2Branch::Proj5, dX, dY};
}

Vector example2_to_params(const Example2State& s) { return vec({s.X / kA, s.Y / kA, s.Z / kB}); }

Example2State example2_from_params(const Vector& t) { return {kA * t[0], kA * t[1], kB * t[2]}; }

std::optional<std::string> example2_lemma_violation(const Example2State& s,
                                                    const Example2Step& step) {
  const auto& n = step.next;
  if (!(n.X >= s.X && n.X >= 0.0)) return "L1: X must be nondecreasing and nonnegative";
  if (s.Y >= s.Z && s.Z > 0.0 && !(s.Z > n.Z && n.Z > 0.0 && n.Y == s.Y)) {
    return "L2: Y >= Z > 0 needs Z > Z~ > 0 and Y~ = Y";
  }
  if (s.Y <= s.Z && s.Z < 0.0 && !(n.Z < 0.0 && n.Y == 0.0)) {
    return "L3: Y <= Z < 0 needs Z~ < 0 and Y~ = 0";
  }
  if (s.Y < s.Z && s.Z > 0.0 && !(n.Z > 0.0 && n.Y > 0.0 && n.Y > s.Y)) {
    return "L4: Y < Z, Z > 0 needs Z~ > 0, Y~ > 0 and Y~ > Y";
  }
  if (s.Y > s.Z && s.Z < 0.0 &&
      !(n.Y > 0.0 && n.Z < 0.0 && n.Y > s.Y && 0.8 * s.Z < n.Z)) {
    return "L5: Y > Z, Z < 0 needs Y~ > 0 > Z~, Y~ > Y and 4Z/5 < Z~ < 0";
  }
  return std::nullopt;
}

Example2Run example2_run(const Example2State& s0, long steps, const CheckpointSchedule& schedule,
                         bool keep_increments) {
  Example2Run run;
  run.ks.push_back(0);
  run.states.push_back(s0);
  if (keep_increments) {
    run.dX.reserve(static_cast<std::size_t>(steps));
    run.dY.reserve(static_cast<std::size_t>(steps));
    run.branches.reserve(static_cast<std::size_t>(steps));
  }
  Example2State s = s0;
  std::optional<Example2Branch> prev;
  bool absorbed_proj5 = false;
  long next_cp = schedule.next_after(0);
  const auto violate = [&](long k, const std::string& what) {
    if (!run.transition_violation) {
      run.transition_violation = "step " + std::to_string(k) + ": " + what;
    }
  };

  for (long k = 0; k < steps; ++k) {
    const Example2Step st = example2_step(s);
    if (prev == Example2Branch::Proj3 && st.branch != Example2Branch::Proj3) {
      violate(k, "left Proj3");
    }
    if (prev == Example2Branch::Proj4 && st.branch != Example2Branch::Proj5) {
      violate(k, "Proj4 not followed by Proj5");
    }
    if (absorbed_proj5 && st.branch != Example2Branch::Proj5) {
      violate(k, "left Proj5 after entering it with Z < 0");
    }
    if (st.branch == Example2Branch::Proj5 && s.Z < 0.0) absorbed_proj5 = true;
    if (st.branch == Example2Branch::Proj3 && !run.first_proj3) run.first_proj3 = k;
    if (run.first_proj3 && st.next.Y != s.Y) run.y_constant_after_proj3 = false;
    ++run.branch_counts[static_cast<std::size_t>(st.branch)];
    if (keep_increments) {
      run.dX.push_back(st.dX);
      run.dY.push_back(st.dY);
      run.branches.push_back(st.branch);
    }
    prev = st.branch;
    s = st.next;
    if (k + 1 == next_cp || k + 1 == steps) {
      run.ks.push_back(k + 1);
      run.states.push_back(s);
      next_cp = schedule.next_after(k + 1);
    }
  }
  return run;
}

}  // namespace socapm
