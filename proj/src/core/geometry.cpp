#include "core/geometry.hpp"

#include "core/error.hpp"

#include <cmath>
#include <sstream>

namespace socapm {

ConeProduct::ConeProduct(std::vector<int> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::InvalidInput, "cone product needs at least one block");
  offsets_.reserve(dims_.size());
  for (int d : dims_) {
    if (d < 2) {
      throw Error(ErrorCode::InvalidInput,
                  "second-order cone blocks need dimension >= 2, got " + std::to_string(d));
    }
    offsets_.push_back(total_);
    total_ += d;
  }
}

AffineSubspace::AffineSubspace(Vector anchor, Matrix basis)
    : anchor_(std::move(anchor)), basis_(std::move(basis)) {
  if (anchor_.size() != basis_.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "anchor has dimension " + std::to_string(anchor_.size()) +
                    " but basis columns have dimension " + std::to_string(basis_.rows()));
  }
}

void validate_subspace(const AffineSubspace& h) {
  const Eigen::Index n = h.ambient_dim();
  const Eigen::Index p = h.dim();
  if (p < 1 || p >= n) {
    throw Error(ErrorCode::InvalidInput, "subspace dimension p=" + std::to_string(p) +
                                             " must satisfy 1 <= p < N=" + std::to_string(n));
  }
  const Matrix gram = h.basis().transpose() * h.basis();
  for (Eigen::Index i = 0; i < p; ++i) {
    for (Eigen::Index j = i; j < p; ++j) {
      const double expected = i == j ? 1.0 : 0.0;
      if (!(std::abs(gram(i, j) - expected) <= kOrthonormalTol)) {
        std::ostringstream msg;
        msg << "basis columns (" << i << ", " << j << ") violate orthonormality: inner product "
            << gram(i, j);
        throw Error(ErrorCode::NonOrthonormalBasis, msg.str());
      }
    }
  }
}

AffineProjection project_affine(const Vector& v, const AffineSubspace& h) {
  if (v.size() != h.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "project_affine: vector has dimension " +
                                                  std::to_string(v.size()) + ", expected " +
                                                  std::to_string(h.ambient_dim()));
  }
  Vector params = h.basis().transpose() * (v - h.anchor());
  Vector point = h.point(params);
  return {std::move(point), std::move(params)};
}

FaceBlock FaceBlock::ray(Vector direction) {
  const double nrm = direction.norm();
  if (!(nrm > 0.0)) throw Error(ErrorCode::InvalidInput, "ray face needs a nonzero direction");
  const int dim = static_cast<int>(direction.size());
  return {Kind::Ray, dim, direction / nrm};
}

Face Face::full(const ConeProduct& k) {
  Face f;
  for (int d : k.block_dims()) f.blocks.push_back(FaceBlock::full(d));
  return f;
}

Eigen::Index Face::ambient_dim() const {
  Eigen::Index n = 0;
  for (const auto& b : blocks) n += b.dim;
  return n;
}

const char* face_kind_name(FaceBlock::Kind kind) {
  switch (kind) {
    case FaceBlock::Kind::Zero: return "Zero";
    case FaceBlock::Kind::Ray: return "Ray";
    case FaceBlock::Kind::Full: return "Full";
  }
  return "?";
}

std::string describe(const Face& face) {
  std::ostringstream out;
  out.precision(8);
  for (std::size_t i = 0; i < face.blocks.size(); ++i) {
    if (i) out << " x ";
    const auto& b = face.blocks[i];
    out << face_kind_name(b.kind);
    if (b.kind == FaceBlock::Kind::Ray) {
      out << "(";
      for (Eigen::Index j = 0; j < b.direction.size(); ++j) {
        if (j) out << ",";
        const double v = b.direction[j];
        out << (std::abs(v) < 1e-15 ? 0.0 : v);
      }
      out << ")";
    }
  }
  return out.str();
}

namespace {

bool block_contains(const FaceBlock& outer, const FaceBlock& inner, double tol) {
  using K = FaceBlock::Kind;
  if (outer.dim != inner.dim) return false;
  switch (outer.kind) {
    case K::Full: return true;
    case K::Zero: return inner.kind == K::Zero;
    case K::Ray:
      if (inner.kind == K::Zero) return true;
      if (inner.kind == K::Full) return false;
      return (outer.direction - inner.direction).norm() <= tol;
  }
  return false;
}

double block_tol(double tol, const Eigen::Ref<const Vector>& y) { return tol * (1.0 + y.norm()); }

bool in_cone(const Eigen::Ref<const Vector>& y, double tol) {
  const double gap = y[0] - y.tail(y.size() - 1).norm();
  return gap >= -block_tol(tol, y);
}

// Empty string when y certifies a reduction of f; otherwise the failed condition.
std::string certificate_failure(const AffineSubspace& h, const Face& f, const Vector& y,
                                double tol) {
  using K = FaceBlock::Kind;
  if (y.size() != h.ambient_dim() || f.ambient_dim() != h.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "certificate, face and subspace dimensions differ");
  }
  bool outside_perp = false;
  Eigen::Index off = 0;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    const auto& b = f.blocks[i];
    const auto yb = y.segment(off, b.dim);
    off += b.dim;
    switch (b.kind) {
      case K::Zero:
        break;
      case K::Full:
        if (!in_cone(yb, tol)) return "block " + std::to_string(i) + " is not in the dual cone";
        if (yb.norm() > tol) outside_perp = true;
        break;
      case K::Ray: {
        const double dot = yb.dot(b.direction);
        if (dot < -tol) return "block " + std::to_string(i) + " has negative inner product with the ray";
        if (std::abs(dot) > tol) outside_perp = true;
        break;
      }
    }
  }
  if (!outside_perp) return "certificate lies in the orthogonal complement of the face";
  const double scale = tol * (1.0 + y.norm());
  if (std::abs(h.anchor().dot(y)) > scale) return "certificate is not orthogonal to the anchor";
  if ((h.basis().transpose() * y).cwiseAbs().maxCoeff() > scale) {
    return "certificate is not orthogonal to the basis";
  }
  return {};
}

}  // namespace

bool face_contains(const Face& outer, const Face& inner, double tol) {
  if (outer.blocks.size() != inner.blocks.size()) return false;
  for (std::size_t i = 0; i < outer.blocks.size(); ++i) {
    if (!block_contains(outer.blocks[i], inner.blocks[i], tol)) return false;
  }
  return true;
}

bool face_equal(const Face& a, const Face& b, double tol) {
  return face_contains(a, b, tol) && face_contains(b, a, tol);
}

const char* intersection_tag_name(IntersectionTag tag) {
  switch (tag) {
    case IntersectionTag::OriginOnly: return "OriginOnly";
    case IntersectionTag::SinglePoint: return "SinglePoint";
    case IntersectionTag::HalfLine: return "HalfLine";
    case IntersectionTag::NotNonTransversal: return "NotNonTransversal";
  }
  return "?";
}

IntersectionClass classify_intersection(const AffineSubspace& h, double tol) {
  validate_subspace(h);
  const ConeVector raw(h.anchor());
  const double gap = raw.x0() - raw.x1_norm();
  if (!(std::abs(gap) <= tol * (1.0 + raw.norm()))) {
    throw Error(ErrorCode::AnchorNotOnBoundary,
                "anchor is not on the cone boundary (x0 - ||x1|| = " + std::to_string(gap) + ")");
  }
  const SpectralDecomposition sd = spectral_decompose(raw);
  Vector anchor = sd.lambda1 > 0.0 ? Vector(sd.lambda1 * sd.e1.coords())
                                   : Vector(Vector::Zero(raw.dim()));

  const Matrix& basis = h.basis();
  const Vector b = basis.row(0).transpose();
  const double bsq = b.squaredNorm();

  IntersectionClass out{IntersectionTag::NotNonTransversal, std::nullopt, bsq, anchor};
  if (std::abs(bsq - 0.5) <= tol) {
    // The half-line starts at the origin, so H has to pass through it.
    const Vector off_h = anchor - basis * (basis.transpose() * anchor);
    if (off_h.norm() <= tol) {
      Vector d = basis * b;
      out.tag = IntersectionTag::HalfLine;
      out.witness = d / d.norm();
    }
  } else if (bsq < 0.5 - tol) {
    if (anchor.norm() <= tol) {
      out.tag = IntersectionTag::OriginOnly;
    } else {
      const Vector residual = basis.transpose() * hat(ConeVector(anchor)).coords();
      if (residual.norm() <= tol) {
        out.tag = IntersectionTag::SinglePoint;
        out.witness = anchor;
      }
    }
  }
  return out;
}

Face face_intersect(const Face& f, const Vector& y, double tol) {
  using K = FaceBlock::Kind;
  if (y.size() != f.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "face_intersect: dimension mismatch");
  }
  Face g;
  Eigen::Index off = 0;
  for (const auto& b : f.blocks) {
    const Vector yb = y.segment(off, b.dim);
    off += b.dim;
    switch (b.kind) {
      case K::Zero:
        g.blocks.push_back(b);
        break;
      case K::Ray:
        g.blocks.push_back(std::abs(yb.dot(b.direction)) <= tol ? b : FaceBlock::zero(b.dim));
        break;
      case K::Full: {
        if (yb.norm() <= tol) {
          g.blocks.push_back(b);
          break;
        }
        const ConeVector cy(yb);
        switch (classify_membership(cy, membership_tolerance(cy, tol))) {
          case Membership::Interior:
            g.blocks.push_back(FaceBlock::zero(b.dim));
            break;
          case Membership::Boundary:
            g.blocks.push_back(FaceBlock::ray(hat(cy).coords()));
            break;
          default:
            throw Error(ErrorCode::PreconditionViolation,
                        "face_intersect: certificate block is outside the dual cone");
        }
        break;
      }
    }
  }
  return g;
}

bool verify_reducing_certificate(const AffineSubspace& h, const Face& f, const Vector& y,
                                 double tol) {
  return certificate_failure(h, f, y, tol).empty();
}

SingularityDegree singularity_degree_single(const AffineSubspace& h, double tol) {
  validate_subspace(h);
  const ConeProduct k({static_cast<int>(h.ambient_dim())});
  const Face full = Face::full(k);

  const ConeVector a(h.anchor());
  if (a.x0() - a.x1_norm() > tol * (1.0 + a.norm())) {
    IntersectionClass ic{IntersectionTag::NotNonTransversal, std::nullopt,
                         h.basis().row(0).squaredNorm(), h.anchor()};
    return {0, std::nullopt, ic, full};
  }

  IntersectionClass ic = classify_intersection(h, tol);
  const auto n = static_cast<int>(h.ambient_dim());
  Vector y;
  Face expected;
  switch (ic.tag) {
    case IntersectionTag::SinglePoint:
      y = hat(ConeVector(*ic.witness)).coords();
      expected.blocks.push_back(FaceBlock::ray(*ic.witness));
      break;
    case IntersectionTag::HalfLine:
      y = hat(ConeVector(*ic.witness)).coords();
      expected.blocks.push_back(FaceBlock::ray(*ic.witness));
      break;
    case IntersectionTag::OriginOnly: {
      // y = C c with [B C] orthogonal and c the first row of C.
      const Eigen::Index p = h.dim();
      const Matrix q = Eigen::HouseholderQR<Matrix>(h.basis()).householderQ();
      const Matrix completion = q.rightCols(n - p);
      const Vector c = completion.row(0).transpose();
      y = completion * c;
      expected.blocks.push_back(FaceBlock::zero(n));
      break;
    }
    case IntersectionTag::NotNonTransversal:
      throw Error(ErrorCode::NotNonTransversal,
                  "intersection is not one of the non-transversal cases; no certificate");
  }

  const std::string failure = certificate_failure(h, full, y, tol);
  if (!failure.empty()) {
    throw Error(ErrorCode::CertificateVerificationFailed,
                "constructed certificate failed verification: " + failure);
  }
  Face reduced = face_intersect(full, y, tol);
  if (!face_equal(reduced, expected, 1e-8)) {
    throw Error(ErrorCode::CertificateVerificationFailed,
                "reduced face " + describe(reduced) + " differs from the minimal face " +
                    describe(expected));
  }
  return {1, y, ic, reduced};
}

std::vector<Face> facial_reduction_chain(const AffineSubspace& h, const ConeProduct& k,
                                         std::span<const Vector> certificates, double tol) {
  validate_subspace(h);
  if (k.ambient_dim() != h.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cone product and subspace dimensions differ");
  }
  std::vector<Face> chain{Face::full(k)};
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    const Vector& y = certificates[i];
    if (y.size() != h.ambient_dim()) {
      throw CertificateRejectedAtStep(i + 1, "certificate has dimension " +
                                                 std::to_string(y.size()) + ", expected " +
                                                 std::to_string(h.ambient_dim()));
    }
    const std::string failure = certificate_failure(h, chain.back(), y, tol);
    if (!failure.empty()) throw CertificateRejectedAtStep(i + 1, failure);
    Face next = face_intersect(chain.back(), y, tol);
    if (face_equal(next, chain.back())) {
      throw CertificateRejectedAtStep(i + 1, "face did not shrink");
    }
    chain.push_back(std::move(next));
  }
  return chain;
}

}  // namespace socapm
