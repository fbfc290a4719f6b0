#include "core/apm.hpp"

#include "core/error.hpp"

#include <cmath>

namespace socapm {

void ApmProblem::validate() const {
  validate_subspace(h);
  if (k.ambient_dim() != h.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "cone product has dimension " + std::to_string(k.ambient_dim()) +
                    " but the subspace lives in dimension " + std::to_string(h.ambient_dim()));
  }
  if (reference && reference->size() != h.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "reference point has the wrong dimension");
  }
}

std::optional<Vector> ApmProblem::reference_params() const {
  if (!reference) return std::nullopt;
  return Vector(h.basis().transpose() * (*reference - h.anchor()));
}

namespace {

// Projects every block of u in place; returns true if all blocks were already in K.
bool project_blocks(Vector& u, const ConeProduct& k, double rel_tol) {
  bool inside = true;
  for (std::size_t b = 0; b < k.num_blocks(); ++b) {
    inside &= project_soc_inplace(u.segment(k.offset(b), k.dim(b)), rel_tol);
  }
  return inside;
}

struct Workspace {
  Vector ambient;
  Vector projected;
};

// Writes the next params into `out`; returns whether anchor + B t was in K.
bool step_into(const Vector& t, const ApmProblem& pr, Workspace& ws, Vector& out, double tol) {
  ws.ambient.noalias() = pr.h.basis() * t;
  ws.ambient += pr.h.anchor();
  ws.projected = ws.ambient;
  const bool inside = project_blocks(ws.projected, pr.k, tol);
  ws.projected -= pr.h.anchor();
  out.noalias() = pr.h.basis().transpose() * ws.projected;
  return inside;
}

}  // namespace

Vector apm_step(const Vector& t, const ApmProblem& problem) {
  if (t.size() != problem.h.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "apm_step: params have dimension " +
                                                  std::to_string(t.size()) + ", expected " +
                                                  std::to_string(problem.h.dim()));
  }
  Workspace ws;
  Vector out(t.size());
  step_into(t, problem, ws, out, kMembershipRelTol);
  return out;
}

bool ambient_in_cone(const Vector& t, const ApmProblem& problem, double rel_tol) {
  const Vector u = problem.h.point(t);
  for (std::size_t b = 0; b < problem.k.num_blocks(); ++b) {
    const ConeVector block(Vector(u.segment(problem.k.offset(b), problem.k.dim(b))));
    const Membership m = classify_membership(block, membership_tolerance(block, rel_tol));
    if (m != Membership::Interior && m != Membership::Boundary) return false;
  }
  return true;
}

CheckpointSchedule CheckpointSchedule::linear(long stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidInput, "linear checkpoint stride must be >= 1");
  return {Kind::Linear, static_cast<double>(stride)};
}

CheckpointSchedule CheckpointSchedule::geometric(double factor) {
  if (!(factor > 1.0)) throw Error(ErrorCode::InvalidInput, "geometric checkpoint factor must be > 1");
  return {Kind::Geometric, factor};
}

CheckpointSchedule CheckpointSchedule::parse(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::InvalidInput, "checkpoint schedule must be linear:N or geom:F");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (kind == "linear") {
      const long n = std::stol(arg, &used);
      if (used == arg.size()) return linear(n);
    } else if (kind == "geom" || kind == "geometric") {
      const double f = std::stod(arg, &used);
      if (used == arg.size()) return geometric(f);
    }
  } catch (const std::logic_error&) {
  }
  throw Error(ErrorCode::InvalidInput, "bad checkpoint schedule '" + text + "'");
}

long CheckpointSchedule::next_after(long k) const {
  if (kind_ == Kind::Linear) return k + static_cast<long>(value_);
  const auto scaled = static_cast<long>(std::ceil(static_cast<double>(k) * value_ - 1e-9));
  return std::max(k + 1, scaled);
}

ApmTrace apm_run(const Vector& t0, const ApmProblem& problem, const ApmRunOptions& options) {
  if (options.max_iters < 1) throw Error(ErrorCode::InvalidInput, "max_iters must be >= 1");
  if (t0.size() != problem.h.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "initial params have dimension " +
                                                  std::to_string(t0.size()) + ", expected " +
                                                  std::to_string(problem.h.dim()));
  }
  ApmTrace trace;
  trace.instance = problem.name;
  trace.reference_params = problem.reference_params();
  const auto dist_of = [&](const Vector& t) {
    return trace.reference_params ? (t - *trace.reference_params).norm() : t.norm();
  };
  const auto record = [&](long k, const Vector& t) {
    trace.checkpoints.push_back({k, t, dist_of(t)});
  };

  Workspace ws;
  ws.ambient.resize(problem.h.ambient_dim());
  ws.projected.resize(problem.h.ambient_dim());
  Vector t = t0;
  Vector next(t0.size());
  record(0, t);

  long next_cp = options.schedule.next_after(0);
  long k = 0;
  while (k < options.max_iters) {
    const bool inside = step_into(t, problem, ws, next, options.membership_tol);
    if (inside) {
      // Iterate k is already in K: the method has terminated at k.
      trace.terminated_at = k;
      break;
    }
    if (options.stop_dist > 0.0) {
      const double to_cone = (ws.projected + problem.h.anchor() - ws.ambient).norm();
      const double moved = (next - t).norm();
      t.swap(next);
      ++k;
      if (to_cone < options.stop_dist && moved < 1e-15) {
        trace.converged_at = k;
        break;
      }
    } else {
      t.swap(next);
      ++k;
    }
    if (k == next_cp) {
      record(k, t);
      next_cp = options.schedule.next_after(k);
    }
  }
  if (trace.checkpoints.back().k != k) record(k, t);
  return trace;
}

}  // namespace socapm
