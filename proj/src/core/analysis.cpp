#include "core/analysis.hpp"

#include "core/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace socapm {

const char* rate_model_name(RateModel m) {
  return m == RateModel::Power ? "Power" : "Geometric";
}

std::vector<double> distances_to(const ApmTrace& trace, const Vector& limit) {
  std::vector<double> d;
  d.reserve(trace.checkpoints.size());
  for (const auto& c : trace.checkpoints) {
    if (c.params.size() != limit.size()) {
      throw Error(ErrorCode::DimensionMismatch, "limit has the wrong dimension");
    }
    d.push_back((c.params - limit).norm());
  }
  return d;
}

std::vector<double> coordinate(const ApmTrace& trace, Eigen::Index j) {
  std::vector<double> x;
  x.reserve(trace.checkpoints.size());
  for (const auto& c : trace.checkpoints) x.push_back(c.params[j]);
  return x;
}

std::vector<long> checkpoint_ks(const ApmTrace& trace) {
  std::vector<long> ks;
  ks.reserve(trace.checkpoints.size());
  for (const auto& c : trace.checkpoints) ks.push_back(c.k);
  return ks;
}

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::InsufficientCheckpoints, "least squares needs at least two points");
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientCheckpoints, "degenerate abscissae");
  const double slope = sxy / sxx;
  const double r2 = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
  return {slope, my - slope * mx, r2};
}

namespace {

struct WindowPoints {
  std::vector<double> k;
  std::vector<double> d;
  long lo;
  long hi;
};

WindowPoints select(std::span<const long> ks, std::span<const double> ds, KWindow w,
                    std::size_t min_points) {
  if (ks.size() != ds.size()) throw Error(ErrorCode::InvalidInput, "k and value lengths differ");
  WindowPoints out{{}, {}, 0, 0};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < w.lo || ks[i] > w.hi || ks[i] < 1) continue;
    if (!(ds[i] > 0.0)) {
      throw Error(ErrorCode::NonPositiveDistance,
                  "distance at k=" + std::to_string(ks[i]) + " is not positive");
    }
    out.k.push_back(static_cast<double>(ks[i]));
    out.d.push_back(ds[i]);
  }
  if (out.k.size() < min_points) {
    throw Error(ErrorCode::InsufficientCheckpoints,
                "window [" + std::to_string(w.lo) + ", " + std::to_string(w.hi) + "] holds " +
                    std::to_string(out.k.size()) + " checkpoints, need " +
                    std::to_string(min_points));
  }
  out.lo = static_cast<long>(out.k.front());
  out.hi = static_cast<long>(out.k.back());
  return out;
}

KWindow default_window(std::span<const long> ks, std::span<const double> ds) {
  if (ks.empty()) throw Error(ErrorCode::InsufficientCheckpoints, "empty trace");
  const long kmax = ks.back();
  if (ds.back() == 0.0) return {kmax / 100, kmax / 10};
  return {kmax / 10, kmax};
}

}  // namespace

RateEstimate fit_power_rate(std::span<const long> ks, std::span<const double> ds,
                            std::optional<KWindow> window) {
  const WindowPoints pts = select(ks, ds, window.value_or(default_window(ks, ds)), 10);
  std::vector<double> lk(pts.k.size()), ld(pts.d.size());
  std::transform(pts.k.begin(), pts.k.end(), lk.begin(), [](double v) { return std::log(v); });
  std::transform(pts.d.begin(), pts.d.end(), ld.begin(), [](double v) { return std::log(v); });
  const LinearFit fit = least_squares(lk, ld);
  return {RateModel::Power, fit.slope, std::exp(fit.intercept), fit.r_squared, pts.lo, pts.hi};
}

RateEstimate fit_power_rate(const ApmTrace& trace, const Vector& limit,
                            std::optional<KWindow> window) {
  const auto ks = checkpoint_ks(trace);
  const auto ds = distances_to(trace, limit);
  return fit_power_rate(ks, ds, window);
}

RateEstimate fit_geometric_rate(std::span<const long> ks, std::span<const double> ds,
                                std::optional<KWindow> window) {
  const WindowPoints pts = select(ks, ds, window.value_or(default_window(ks, ds)), 10);
  const double span = pts.k.back() - pts.k.front();
  const double log_ratio = (std::log(pts.d.back()) - std::log(pts.d.front())) / span;
  std::vector<double> ld(pts.d.size());
  std::transform(pts.d.begin(), pts.d.end(), ld.begin(), [](double v) { return std::log(v); });
  const LinearFit fit = least_squares(pts.k, ld);
  const double ratio = std::exp(log_ratio);
  const double constant = std::exp(std::log(pts.d.front()) - log_ratio * pts.k.front());
  return {RateModel::Geometric, ratio, constant, fit.r_squared, pts.lo, pts.hi};
}

RateEstimate fit_geometric_rate(const ApmTrace& trace, const Vector& limit,
                                std::optional<KWindow> window) {
  const auto ks = checkpoint_ks(trace);
  const auto ds = distances_to(trace, limit);
  return fit_geometric_rate(ks, ds, window);
}

ScaledLimitDiagnostic scaled_limit(std::span<const long> ks, std::span<const double> xs,
                                   const Scaling& s, std::string description) {
  if (ks.size() != xs.size()) throw Error(ErrorCode::InvalidInput, "k and value lengths differ");
  ScaledLimitDiagnostic out{std::move(description), {}, 0.0};
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < 1) continue;
    const auto k = static_cast<double>(ks[i]);
    const double x = xs[i];
    double v = 0.0;
    switch (s.kind) {
      case Scaling::Kind::KPow:
        v = std::pow(k, 1.0 / s.q) * x;
        break;
      case Scaling::Kind::InverseKq:
        if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveDistance, "inverse_kq needs x > 0");
        v = 1.0 / (k * std::pow(x, s.q));
        break;
      case Scaling::Kind::GapTimesK:
        v = k * (s.limit - x);
        break;
      case Scaling::Kind::GeometricScaled:
        v = x * std::exp(-s.m * k * std::log(s.r));
        break;
    }
    out.points.emplace_back(ks[i], v);
  }
  if (out.points.empty()) throw Error(ErrorCode::InsufficientCheckpoints, "no checkpoints with k >= 1");
  out.tail_estimate = out.points.back().second;
  return out;
}

Theorem32Check check_theorem_3_2(const ApmTrace& trace, double b_norm_sq, double u0) {
  if (trace.checkpoints.empty() || trace.final_params().size() != 1) {
    throw Error(ErrorCode::InvalidInput, "check_theorem_3_2 needs a one-parameter trace");
  }
  const Checkpoint& last = trace.checkpoints.back();
  if (last.k < 1) throw Error(ErrorCode::InsufficientCheckpoints, "trace has no iterations");
  Theorem32Check c{};
  c.measured = std::sqrt(static_cast<double>(last.k)) * last.dist;
  c.candidate_derivation = std::sqrt(2.0) * u0 / (1.0 - 2.0 * b_norm_sq);
  c.candidate_paper = c.candidate_derivation * c.candidate_derivation;
  c.rel_error_paper = std::abs(c.measured - c.candidate_paper) / c.candidate_paper;
  c.rel_error_derivation = std::abs(c.measured - c.candidate_derivation) / c.candidate_derivation;
  const bool paper_ok = c.rel_error_paper <= 0.05;
  const bool deriv_ok = c.rel_error_derivation <= 0.05;
  if (paper_ok && (!deriv_ok || c.rel_error_paper <= c.rel_error_derivation)) {
    c.matched = "stated";
  } else if (deriv_ok) {
    c.matched = "derivation";
  }
  return c;
}

double extrapolate_sequence(std::span<const long> ks, std::span<const double> xs) {
  if (ks.size() != xs.size() || ks.empty()) {
    throw Error(ErrorCode::InvalidInput, "extrapolate_sequence needs matching non-empty inputs");
  }
  const std::size_t ic = ks.size() - 1;
  const double xc = xs[ic];
  if (ks.size() < 3) return xc;
  const auto nearest = [&](double target, std::size_t below) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < below; ++i) {
      if (std::abs(ks[i] - target) < std::abs(ks[best] - target)) best = i;
    }
    return best;
  };
  const std::size_t ib = nearest(ks[ic] / 2.0, ic);
  const std::size_t ia = nearest(ks[ib] / 2.0, ib);
  if (!(ia < ib && ib < ic) || ks[ia] < 1) return xc;

  const double ka = static_cast<double>(ks[ia]);
  const double kb = static_cast<double>(ks[ib]);
  const double kc = static_cast<double>(ks[ic]);
  const double d1 = xs[ib] - xs[ia];
  const double d2 = xc - xs[ib];
  if (d1 == 0.0 || d2 == 0.0 || (d1 > 0) != (d2 > 0)) return xc;

  const auto model_ratio = [&](double p) {
    return (std::pow(kb, -p) - std::pow(kc, -p)) / (std::pow(ka, -p) - std::pow(kb, -p));
  };
  const double rho = d2 / d1;
  double lo = 0.2, hi = 3.0;
  double rlo = model_ratio(lo), rhi = model_ratio(hi);
  // model_ratio decreases in p.
  if (!(rho <= rlo && rho >= rhi)) return xc;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (model_ratio(mid) > rho) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double p = 0.5 * (lo + hi);
  const double c = d2 / (std::pow(kb, -p) - std::pow(kc, -p));
  return xc + c * std::pow(kc, -p);
}

Vector limit_extrapolate(const ApmTrace& trace) {
  if (trace.checkpoints.empty()) throw Error(ErrorCode::InsufficientCheckpoints, "empty trace");
  if (trace.terminated_at || trace.converged_at) return trace.final_params();
  const auto ks = checkpoint_ks(trace);
  Vector out(trace.final_params().size());
  for (Eigen::Index j = 0; j < out.size(); ++j) {
    out[j] = extrapolate_sequence(ks, coordinate(trace, j));
  }
  return out;
}

LinearFit fit_inverse_power_slope(std::span<const long> ks, std::span<const double> xs, double q,
                                  std::optional<KWindow> window) {
  const KWindow w = window.value_or(KWindow{1, ks.empty() ? 0 : ks.back()});
  std::vector<double> k, v;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (ks[i] < w.lo || ks[i] > w.hi) continue;
    if (!(xs[i] > 0.0)) throw Error(ErrorCode::NonPositiveDistance, "x_k must be positive");
    k.push_back(static_cast<double>(ks[i]));
    v.push_back(std::pow(xs[i], -q));
  }
  if (k.size() < 10) throw Error(ErrorCode::InsufficientCheckpoints, "slope fit needs 10 points");
  return least_squares(k, v);
}

Example2Asymptotics example2_asymptotics(const Example2Run& run, int z_sign) {
  if (run.states.size() < 3) throw Error(ErrorCode::InsufficientCheckpoints, "run is too short");
  Example2Asymptotics a{z_sign, 0.0, 0.0, 0.0, {}};
  const Example2State& last = run.states.back();
  const long kmax = run.ks.back();

  if (z_sign > 0) {
    std::vector<double> xs;
    for (const auto& s : run.states) xs.push_back(s.X);
    a.X_inf = extrapolate_sequence(run.ks, xs);
    a.Y_inf = last.Y;
    const double k = static_cast<double>(kmax);
    a.limits.push_back({"k (X_inf - X_k) / X_inf", k * (a.X_inf - last.X) / a.X_inf, 25.0 / 16.0,
                        25.0 / 16.0});
    a.limits.push_back({"sqrt(k) Z_k / X_inf", std::sqrt(k) * last.Z / a.X_inf,
                        std::sqrt(1.25), std::sqrt(1.25)});
    return a;
  }

  const std::size_t n = run.dX.size();
  if (run.states.size() != n + 1 || static_cast<long>(n) != kmax) {
    throw Error(ErrorCode::InvalidInput,
                "Z0 < 0 asymptotics need every state and the per-step increments");
  }
  constexpr long lo = 20, hi = 60;
  if (kmax < hi + 20) {
    throw Error(ErrorCode::InsufficientCheckpoints, "Z0 < 0 asymptotics need at least 80 steps");
  }
  // gap[k] = sum_{j >= k} increment_j.
  std::vector<double> gx(n + 1, 0.0), gy(n + 1, 0.0);
  for (std::size_t j = n; j-- > 0;) {
    gx[j] = gx[j + 1] + run.dX[j];
    gy[j] = gy[j + 1] + run.dY[j];
  }
  a.X_inf = last.X;
  a.Y_inf = last.Y;
  const auto ratio = [&](double v_lo, double v_hi) {
    return std::pow(v_hi / v_lo, 1.0 / static_cast<double>(hi - lo));
  };
  const auto& zl = run.states[lo].Z;
  const auto& zh = run.states[hi].Z;
  a.C = -zh * std::pow(1.25, static_cast<double>(hi));
  a.limits.push_back({"Z_{k+1} / Z_k", ratio(zl, zh), 0.8, 0.8});
  a.limits.push_back({"(Y_inf - Y_{k+1}) / (Y_inf - Y_k)", ratio(gy[lo], gy[hi]), 0.512, 0.512});
  a.limits.push_back({"(X_inf - X_{k+1}) / (X_inf - X_k)", ratio(gx[lo], gx[hi]), 0.4096, 0.4096});
  const double c3 = a.C * a.C * a.C;
  a.limits.push_back({"(Y_inf - Y_k) (5/4)^(3k)", gy[hi] * std::pow(1.25, 3.0 * hi),
                      125.0 * c3 / (61.0 * a.Y_inf * a.Y_inf),
                      125.0 * c3 / (61.0 * a.Y_inf * a.Y_inf)});
  const double x3 = a.X_inf * a.X_inf * a.X_inf;
  a.limits.push_back({"(X_inf - X_k) (5/4)^(4k)", gx[hi] * std::pow(1.25, 4.0 * hi),
                      625.0 * c3 * a.C / (5904.0 * x3), 625.0 * c3 * a.C / (369.0 * x3)});
  return a;
}

}  // namespace socapm
