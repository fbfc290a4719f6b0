#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <optional>

namespace socapm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Membership tolerance, relative to (1 + ||x||).
inline constexpr double kMembershipRelTol = 1e-12;

// Below this ||x1|| the spectral direction falls back to the first unit vector.
inline constexpr double kZeroDirectionNorm = 1e-300;

/// A point (x0; x1) in the ambient space of one second-order cone
/// {(x0; x1) : ||x1|| <= x0}. Dimension is at least 2.
class ConeVector {
 public:
  explicit ConeVector(Vector coords);
  ConeVector(std::initializer_list<double> coords);

  double x0() const { return v_[0]; }
  auto x1() const { return v_.tail(v_.size() - 1); }
  double x1_norm() const { return v_.tail(v_.size() - 1).norm(); }

  Eigen::Index dim() const { return v_.size(); }
  double norm() const { return v_.norm(); }
  const Vector& coords() const { return v_; }
  double operator[](Eigen::Index i) const { return v_[i]; }

 private:
  Vector v_;
};

enum class Membership { Interior, Boundary, OutsideConePair, InNegativeCone };

const char* membership_name(Membership m);

struct SpectralDecomposition {
  double lambda1;
  double lambda2;
  ConeVector e1;
  ConeVector e2;
};

/// (x0; -x1). An isometric involution.
ConeVector hat(const ConeVector& x);

/// Absolute tolerance derived from the relative policy: rel * (1 + ||x||).
double membership_tolerance(const ConeVector& x, double rel_tol = kMembershipRelTol);

/// Priority when bands overlap: Interior, Boundary, InNegativeCone, OutsideConePair.
Membership classify_membership(const ConeVector& x, double tol);

/// x = lambda1 e1 + lambda2 e2 with lambda1 >= lambda2 and e1, e2 unit vectors on
/// the boundary. When x1 vanishes the direction of the x1 block is the first
/// canonical unit vector.
SpectralDecomposition spectral_decompose(const ConeVector& x);

/// Euclidean projection onto the cone: x itself, zero, or lambda1 e1.
ConeVector project_soc(const ConeVector& x, double rel_tol = kMembershipRelTol);

/// For x on the boundary (nonzero) and y in the cone with x^T y = 0, returns the
/// alpha >= 0 with y = alpha * hat(x). Empty when y is not such a vector.
/// Throws PreconditionViolation if x is not a nonzero boundary point.
std::optional<double> boundary_orthogonal_ray(const ConeVector& x, const ConeVector& y,
                                              double tol);

/// Allocation-free kernel behind project_soc, used on blocks of a product-cone
/// iterate. Returns true when the block was already in the cone (left unchanged).
bool project_soc_inplace(Eigen::Ref<Vector> block, double rel_tol = kMembershipRelTol);

}  // namespace socapm
