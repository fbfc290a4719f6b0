#pragma once

#include "core/soc_cone.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace socapm {

inline constexpr double kOrthonormalTol = 1e-10;
inline constexpr double kClassifyTol = 1e-10;

/// Ordered list of second-order cone blocks; a single cone is the one-block case.
class ConeProduct {
 public:
  explicit ConeProduct(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return dims_; }
  std::size_t num_blocks() const { return dims_.size(); }
  Eigen::Index ambient_dim() const { return total_; }
  Eigen::Index offset(std::size_t block) const { return offsets_[block]; }
  int dim(std::size_t block) const { return dims_[block]; }

  friend bool operator==(const ConeProduct&, const ConeProduct&) = default;

 private:
  std::vector<int> dims_;
  std::vector<Eigen::Index> offsets_;
  Eigen::Index total_ = 0;
};

/// H = { anchor + basis * t : t in R^p }, basis columns orthonormal.
/// Construction checks shapes only; call validate_subspace for orthonormality.
class AffineSubspace {
 public:
  AffineSubspace(Vector anchor, Matrix basis);

  const Vector& anchor() const { return anchor_; }
  const Matrix& basis() const { return basis_; }
  Eigen::Index ambient_dim() const { return anchor_.size(); }
  Eigen::Index dim() const { return basis_.cols(); }

  Vector point(const Vector& params) const { return anchor_ + basis_ * params; }

 private:
  Vector anchor_;
  Matrix basis_;
};

/// Throws NonOrthonormalBasis naming the offending column pair.
void validate_subspace(const AffineSubspace& h);

struct AffineProjection {
  Vector point;
  Vector params;
};

AffineProjection project_affine(const Vector& v, const AffineSubspace& h);

// Faces of a product of second-order cones, blockwise.
struct FaceBlock {
  enum class Kind { Zero, Ray, Full };

  Kind kind = Kind::Full;
  int dim = 0;
  Vector direction;  // unit boundary vector, only for Ray

  static FaceBlock zero(int dim) { return {Kind::Zero, dim, {}}; }
  static FaceBlock full(int dim) { return {Kind::Full, dim, {}}; }
  static FaceBlock ray(Vector direction);  // normalizes
};

struct Face {
  std::vector<FaceBlock> blocks;

  static Face full(const ConeProduct& k);
  Eigen::Index ambient_dim() const;
};

const char* face_kind_name(FaceBlock::Kind kind);
std::string describe(const Face& face);

/// Blockwise containment; rays compare by direction within tol.
bool face_contains(const Face& outer, const Face& inner, double tol = 1e-9);
bool face_equal(const Face& a, const Face& b, double tol = 1e-9);

enum class IntersectionTag { OriginOnly, SinglePoint, HalfLine, NotNonTransversal };

const char* intersection_tag_name(IntersectionTag tag);

struct IntersectionClass {
  IntersectionTag tag;
  std::optional<Vector> witness;  // u_* for SinglePoint, unit d for HalfLine
  double b_norm_sq;
  Vector anchor;                  // the anchor after re-projection onto the boundary
};

/// Single-cone geometry of H against the cone, assuming H misses the interior.
/// The anchor must be a boundary point within kClassifyTol; it is snapped onto
/// the boundary before classification. Throws AnchorNotOnBoundary otherwise.
IntersectionClass classify_intersection(const AffineSubspace& h, double tol = kClassifyTol);

/// F ∩ {y}^⊥ evaluated blockwise. Assumes y is in the dual of F.
Face face_intersect(const Face& f, const Vector& y, double tol = kClassifyTol);

/// y ∈ F* \ F^⊥ with anchor^T y = 0 and basis^T y = 0, all within tol.
bool verify_reducing_certificate(const AffineSubspace& h, const Face& f, const Vector& y,
                                 double tol = kClassifyTol);

struct SingularityDegree {
  int degree;
  std::optional<Vector> certificate;
  IntersectionClass intersection;
  Face minimal_face;
};

/// Degree 0 for a Slater anchor, otherwise degree 1 with a verified certificate.
SingularityDegree singularity_degree_single(const AffineSubspace& h, double tol = kClassifyTol);

/// Applies the certificates in order starting from the full cone. The returned
/// chain starts with the full face. Throws CertificateRejectedAtStep.
std::vector<Face> facial_reduction_chain(const AffineSubspace& h, const ConeProduct& k,
                                         std::span<const Vector> certificates,
                                         double tol = kClassifyTol);

}  // namespace socapm
