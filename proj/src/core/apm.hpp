#pragma once

#include "core/geometry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace socapm {

struct ApmProblem {
  AffineSubspace h;
  ConeProduct k;
  std::optional<Vector> reference;  // ambient point of H ∩ K, if known
  std::string name;

  /// Checks orthonormality and that H and K share the ambient dimension.
  void validate() const;

  /// basis^T (reference - anchor), or empty when there is no reference.
  std::optional<Vector> reference_params() const;
};

/// One APM iteration in parameter space: B^T (P_K(anchor + B t) - anchor).
Vector apm_step(const Vector& t, const ApmProblem& problem);

/// True when anchor + B t lies in K blockwise, relative tolerance rel_tol.
bool ambient_in_cone(const Vector& t, const ApmProblem& problem,
                     double rel_tol = kMembershipRelTol);

class CheckpointSchedule {
 public:
  enum class Kind { Linear, Geometric };

  static CheckpointSchedule linear(long stride);
  static CheckpointSchedule geometric(double factor = 1.1);
  /// "linear:N" or "geom:F".
  static CheckpointSchedule parse(const std::string& text);

  Kind kind() const { return kind_; }
  double value() const { return value_; }

  /// Next checkpoint strictly after k.
  long next_after(long k) const;

 private:
  CheckpointSchedule(Kind kind, double value) : kind_(kind), value_(value) {}
  Kind kind_;
  double value_;
};

struct Checkpoint {
  long k;
  Vector params;
  double dist;
};

struct ApmTrace {
  std::vector<Checkpoint> checkpoints;
  std::optional<long> terminated_at;  // iterate inside K (finite termination)
  std::optional<long> converged_at;   // numerically stationary, see ApmRunOptions::stop_dist
  std::string instance;
  std::optional<Vector> reference_params;

  long final_k() const { return checkpoints.empty() ? 0 : checkpoints.back().k; }
  const Vector& final_params() const { return checkpoints.back().params; }
};

struct ApmRunOptions {
  long max_iters = 1000;
  double stop_dist = 0.0;
  CheckpointSchedule schedule = CheckpointSchedule::geometric(1.1);
  double membership_tol = kMembershipRelTol;
};

/// Iterates apm_step from t0. Records k = 0, the scheduled checkpoints and the
/// final k. Stops when the iterate enters K or, with stop_dist > 0, when the
/// ambient distance to K is below stop_dist and the step is below 1e-15.
ApmTrace apm_run(const Vector& t0, const ApmProblem& problem, const ApmRunOptions& options);

}  // namespace socapm
