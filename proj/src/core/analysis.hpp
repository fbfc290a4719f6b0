#pragma once

#include "core/apm.hpp"
#include "core/instances.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace socapm {

enum class RateModel { Power, Geometric };

const char* rate_model_name(RateModel m);

struct RateEstimate {
  RateModel model;
  double exponent_or_ratio;
  double constant;
  double fit_quality;  // coefficient of determination of the log-linear fit
  long k_lo;
  long k_hi;
};

struct KWindow {
  long lo;
  long hi;
};

/// ||t_k - limit|| at every checkpoint.
std::vector<double> distances_to(const ApmTrace& trace, const Vector& limit);

/// log d = log c + e log k over the top decade [k_max/10, k_max]. When the last
/// distance is exactly zero (limit taken as the final iterate) the window moves
/// down one decade. Needs >= 10 points.
RateEstimate fit_power_rate(std::span<const long> ks, std::span<const double> ds,
                            std::optional<KWindow> window = std::nullopt);
RateEstimate fit_power_rate(const ApmTrace& trace, const Vector& limit,
                            std::optional<KWindow> window = std::nullopt);

/// ratio = exp((log d_hi - log d_lo) / (k_hi - k_lo)) over the window; the
/// constant is d_lo / ratio^k_lo. Default window is the top decade.
RateEstimate fit_geometric_rate(std::span<const long> ks, std::span<const double> ds,
                                std::optional<KWindow> window = std::nullopt);
RateEstimate fit_geometric_rate(const ApmTrace& trace, const Vector& limit,
                                std::optional<KWindow> window = std::nullopt);

struct Scaling {
  enum class Kind { KPow, InverseKq, GapTimesK, GeometricScaled };
  Kind kind;
  double q = 1.0;      // KPow, InverseKq
  double limit = 0.0;  // GapTimesK
  double r = 1.0;      // GeometricScaled
  double m = 1.0;      // GeometricScaled

  static Scaling k_pow(double q) { return {Kind::KPow, q}; }
  static Scaling inverse_kq(double q) { return {Kind::InverseKq, q}; }
  static Scaling gap_times_k(double limit) { return {Kind::GapTimesK, 1.0, limit}; }
  static Scaling geometric_scaled(double r, double m) {
    return {Kind::GeometricScaled, 1.0, 0.0, r, m};
  }
};

struct ScaledLimitDiagnostic {
  std::string description;
  std::vector<std::pair<long, double>> points;
  double tail_estimate;
};

/// k^(1/q) x_k, 1/(k x_k^q), k (x_inf - x_k) or x_k r^(-m k); k = 0 is skipped.
ScaledLimitDiagnostic scaled_limit(std::span<const long> ks, std::span<const double> xs,
                                   const Scaling& scaling, std::string description = {});

struct Theorem32Check {
  double measured;              // sqrt(k) |t_k| at the last checkpoint
  double candidate_paper;       // (sqrt(2) u0 / (1 - 2 b^2))^2
  double candidate_derivation;  // sqrt(2) u0 / (1 - 2 b^2)
  double rel_error_paper;
  double rel_error_derivation;
  std::optional<std::string> matched;  // "stated" or "derivation", within 5%
};

Theorem32Check check_theorem_3_2(const ApmTrace& trace, double b_norm_sq, double u0);

/// Limit of a scalar sequence from three checkpoints k_a ~ k_b/2, k_b ~ k_c/2,
/// k_c = last: fits x_k = x_inf - c k^(-p), p in [0.2, 3], and falls back to the
/// last value when the gaps do not fit that model.
double extrapolate_sequence(std::span<const long> ks, std::span<const double> xs);

/// Coordinatewise extrapolate_sequence; the final iterate for terminated traces.
Vector limit_extrapolate(const ApmTrace& trace);

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

LinearFit least_squares(std::span<const double> x, std::span<const double> y);

/// Slope of x_k^(-q) against k over the window (default: all k >= 1).
LinearFit fit_inverse_power_slope(std::span<const long> ks, std::span<const double> xs, double q,
                                  std::optional<KWindow> window = std::nullopt);

/// Scalar coordinate j of every checkpoint.
std::vector<double> coordinate(const ApmTrace& trace, Eigen::Index j);
std::vector<long> checkpoint_ks(const ApmTrace& trace);

// ---- Example 2 asymptotics ----

struct PredictedLimit {
  std::string description;
  double measured;
  double predicted;          // constant as printed in the source analysis
  double predicted_derived;  // our own derivation, equal to predicted when they agree
};

struct Example2Asymptotics {
  int z_sign;
  double X_inf;
  double Y_inf;
  double C;  // -lim Z_k (5/4)^k, Z0 < 0 only
  std::vector<PredictedLimit> limits;
};

/// Z0 > 0: k (X_inf - X_k) / X_inf -> 25/16 and sqrt(k) Z_k / X_inf -> sqrt(5/4).
/// Z0 < 0 (needs kept increments): per-step ratios of Z, Y_inf - Y and X_inf - X over
/// [20, 60] and the geometric constants; gaps are tail sums of the step increments.
Example2Asymptotics example2_asymptotics(const Example2Run& run, int z_sign);

}  // namespace socapm
