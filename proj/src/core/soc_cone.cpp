#include "core/soc_cone.hpp"

#include "core/error.hpp"

#include <cmath>
#include <string>

namespace socapm {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Membership classify(double x0, double x1_norm, double tol) {
  const double gap = x0 - x1_norm;
  if (gap > tol) return Membership::Interior;
  if (std::abs(gap) <= tol) return Membership::Boundary;
  if (-x0 - x1_norm >= -tol) return Membership::InNegativeCone;
  return Membership::OutsideConePair;
}

}  // namespace

ConeVector::ConeVector(Vector coords) : v_(std::move(coords)) {
  if (v_.size() < 2) {
    throw Error(ErrorCode::InvalidInput,
                "cone vector needs dimension >= 2, got " + std::to_string(v_.size()));
  }
}

ConeVector::ConeVector(std::initializer_list<double> coords)
    : ConeVector(Vector(Eigen::Map<const Vector>(coords.begin(),
                                                 static_cast<Eigen::Index>(coords.size())))) {}

const char* membership_name(Membership m) {
  switch (m) {
    case Membership::Interior: return "Interior";
    case Membership::Boundary: return "Boundary";
    case Membership::OutsideConePair: return "OutsideConePair";
    case Membership::InNegativeCone: return "InNegativeCone";
  }
  return "?";
}

ConeVector hat(const ConeVector& x) {
  Vector v = -x.coords();
  v[0] = x.x0();
  return ConeVector(std::move(v));
}

double membership_tolerance(const ConeVector& x, double rel_tol) {
  return rel_tol * (1.0 + x.norm());
}

Membership classify_membership(const ConeVector& x, double tol) {
  return classify(x.x0(), x.x1_norm(), tol);
}

SpectralDecomposition spectral_decompose(const ConeVector& x) {
  const Eigen::Index n = x.dim() - 1;
  const double r = x.x1_norm();
  Vector dir = Vector::Zero(n);
  if (r > kZeroDirectionNorm) {
    dir = x.x1() / r;
  } else {
    dir[0] = 1.0;
  }

  Vector e1(n + 1), e2(n + 1);
  e1[0] = kInvSqrt2;
  e2[0] = kInvSqrt2;
  e1.tail(n) = kInvSqrt2 * dir;
  e2.tail(n) = -kInvSqrt2 * dir;
  return {(x.x0() + r) * kInvSqrt2, (x.x0() - r) * kInvSqrt2, ConeVector(std::move(e1)),
          ConeVector(std::move(e2))};
}

bool project_soc_inplace(Eigen::Ref<Vector> block, double rel_tol) {
  const Eigen::Index n = block.size() - 1;
  const double x0 = block[0];
  const double r = block.tail(n).norm();
  const double tol = rel_tol * (1.0 + std::hypot(x0, r));
  switch (classify(x0, r, tol)) {
    case Membership::Interior:
    case Membership::Boundary:
      return true;
    case Membership::InNegativeCone:
      block.setZero();
      return false;
    case Membership::OutsideConePair:
      break;
  }
  // lambda1 e1 = ((x0 + r) / 2) (1; x1 / r). Outside the cone pair r > |x0| >= 0.
  const double half = 0.5 * (x0 + r);
  block.tail(n) *= half / r;
  block[0] = half;
  return false;
}

ConeVector project_soc(const ConeVector& x, double rel_tol) {
  Vector v = x.coords();
  project_soc_inplace(v, rel_tol);
  return ConeVector(std::move(v));
}

std::optional<double> boundary_orthogonal_ray(const ConeVector& x, const ConeVector& y,
                                              double tol) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "boundary_orthogonal_ray: dimension mismatch");
  }
  if (x.norm() <= tol || classify_membership(x, tol) != Membership::Boundary) {
    throw Error(ErrorCode::PreconditionViolation,
                "boundary_orthogonal_ray: x must be a nonzero boundary point");
  }
  const Membership my = classify_membership(y, tol);
  if (my != Membership::Interior && my != Membership::Boundary) return std::nullopt;
  if (std::abs(x.coords().dot(y.coords())) > tol) return std::nullopt;

  const ConeVector xh = hat(x);
  const double alpha = xh.coords().dot(y.coords()) / xh.coords().squaredNorm();
  if ((y.coords() - alpha * xh.coords()).norm() > tol * (1.0 + y.norm())) return std::nullopt;
  if (alpha < -tol) return std::nullopt;
  return alpha < 0.0 ? 0.0 : alpha;
}

}  // namespace socapm
