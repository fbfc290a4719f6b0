#pragma once

#include "core/apm.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace socapm {

// Named problems. All live in K_3 or K_3 x K_3.
ApmProblem make_case1();
ApmProblem make_case2(double u0 = 1.0);
ApmProblem make_case3();
ApmProblem make_example1();
ApmProblem make_example2();

/// case1, case2, case3, example1, example2; throws UnknownInstance otherwise.
ApmProblem make_instance(const std::string& name);
const std::vector<std::string>& instance_names();

/// Reducing certificates (d1, d2) for the two product examples.
std::vector<Vector> product_certificates();

/// Named initial params. Presets: case1 "default"; case2 "default";
/// case3 "default", "line"; example1 "default"; example2 "zpos" (default), "zneg".
Vector preset_t0(const std::string& instance, const std::string& preset = "default");

// ---- Case 3: params t = (x; y) ----

struct Case3State {
  double x;
  Vector y;
};

Case3State case3_step(const Case3State& s);

// ---- Example 1: X = x/sqrt(3), Y = y/sqrt(6) ----

struct Example1State {
  double X;
  double Y;
};

inline constexpr double kExample1Delta = 0.1;

double example1_S(double X);
double example1_U(double X);
Example1State example1_step(const Example1State& s);
bool example1_precondition(const Example1State& s);
bool example1_region(const Example1State& s, double delta);

Vector example1_to_params(const Example1State& s);
Example1State example1_from_params(const Vector& t);

struct Example1LemmaCheck {
  bool e2 = false;  // Y > 0 and X^2 - 3Y^2 - 2Y > 0
  bool e3 = false;  // |X~ - U(X)| < X^8
  bool e4 = false;  // |Y~ - S(U(X))| < X^7
  bool e5 = false;  // (X~, Y~) in E(delta)
  Example1State next{};

  bool ok() const { return e2 && e3 && e4 && e5; }
  std::string failure() const;
};

Example1LemmaCheck example1_lemma_check(const Example1State& s, double delta = kExample1Delta);

/// Steps with the lemma check at every step; throws LemmaViolation naming the step.
struct Example1Run {
  std::vector<long> ks;
  std::vector<Example1State> states;  // at checkpoints
  bool region_at_checkpoints = true;
};

Example1Run example1_run(const Example1State& s0, long steps, const CheckpointSchedule& schedule,
                         double delta = kExample1Delta);

// ---- Example 2: X = a x, Y = a y, Z = b z ----

struct Example2State {
  double X;
  double Y;
  double Z;
};

enum class Example2Branch { Pr1, Proj3, Proj4, Proj5 };

const char* example2_branch_name(Example2Branch b);

struct Example2Step {
  Example2State next;
  Example2Branch branch;
  double dX;  // X~ - X, evaluated without cancellation
  double dY;  // Y~ - Y, evaluated without cancellation
};

Example2Step example2_step(const Example2State& s);

Vector example2_to_params(const Example2State& s);
Example2State example2_from_params(const Vector& t);

/// Sign-region transition invariants for one step; empty when all applicable items hold.
std::optional<std::string> example2_lemma_violation(const Example2State& s,
                                                    const Example2Step& step);

struct Example2Run {
  std::vector<long> ks;
  std::vector<Example2State> states;  // at checkpoints
  std::vector<double> dX;             // every step, only when increments are kept
  std::vector<double> dY;
  std::vector<Example2Branch> branches;  // every step, only when increments are kept
  std::array<long, 4> branch_counts{};
  std::optional<long> first_proj3;
  bool y_constant_after_proj3 = true;
  std::optional<std::string> transition_violation;
};

/// Iterates example2_step, tracking the transition diagram: Proj3 is absorbing,
/// Proj5 entered with Z < 0 is absorbing, Proj4 is followed by Proj5.
Example2Run example2_run(const Example2State& s0, long steps, const CheckpointSchedule& schedule,
                         bool keep_increments);

inline const Example2State kExample2ZPos{0.0, 1.0, 0.5};
inline const Example2State kExample2ZNeg{0.0, 1.0, -0.5};

}  // namespace socapm
