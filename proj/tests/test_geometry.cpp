#include "core/error.hpp"
#include "core/geometry.hpp"
#include "core/instances.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace socapm;

namespace {

const double r2 = std::sqrt(2.0);

Vector v(std::initializer_list<double> xs) {
  return Eigen::Map<const Vector>(xs.begin(), static_cast<Eigen::Index>(xs.size()));
}

Matrix col(std::initializer_list<double> xs) { return v(xs); }

AffineSubspace remark_halfline() {
  Matrix b(3, 2);
  b << 1 / r2, 0, 1 / r2, 0, 0, 1;
  return AffineSubspace(Vector::Zero(3), b);
}

}  // namespace

TEST_CASE("validate_subspace") {
  CHECK_NOTHROW(validate_subspace(AffineSubspace(Vector::Zero(3), col({0, 0, 1}))));
  try {
    validate_subspace(AffineSubspace(Vector::Zero(3), col({0, 0, 2})));
    FAIL("expected NonOrthonormalBasis");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonOrthonormalBasis);
    CHECK(std::string(e.what()).find("(0, 0)") != std::string::npos);
  }
  Matrix skew(3, 2);
  skew << 1, 1, 0, 0, 0, 0;
  try {
    validate_subspace(AffineSubspace(Vector::Zero(3), skew));
    FAIL("expected NonOrthonormalBasis");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }
  CHECK_NOTHROW(make_example1().validate());
  CHECK_NOTHROW(make_example2().validate());
  CHECK_THROWS_AS(AffineSubspace(Vector::Zero(2), col({0, 0, 1})), Error);
}

TEST_CASE("project_affine") {
  const AffineSubspace h(v({1, 1, 0}), col({0, 0, 1}));
  auto pr = project_affine(v({0, 0, 5}), h);
  CHECK(pr.point == v({1, 1, 5}));
  CHECK(pr.params == v({5}));
  pr = project_affine(v({1, 1, -2}), h);
  CHECK(pr.point == v({1, 1, -2}));

  const AffineSubspace ex = make_example1().h;
  Vector t = v({0.3, -0.7});
  Vector w = v({1, -1, 0, 0, 0, 0});  // orthogonal to both columns
  pr = project_affine(ex.point(t) + w, ex);
  CHECK((pr.params - t).norm() < 1e-14);
  CHECK((ex.basis().transpose() * (ex.point(t) + w - pr.point)).norm() < 1e-10);
  CHECK_THROWS_AS(project_affine(v({1, 2}), h), Error);
}

TEST_CASE("classify_intersection") {
  auto c = classify_intersection(AffineSubspace(v({1, 1, 0}), col({0, 0, 1})));
  CHECK(c.tag == IntersectionTag::SinglePoint);
  CHECK((*c.witness - v({1, 1, 0})).norm() < 1e-12);

  c = classify_intersection(remark_halfline());
  CHECK(c.tag == IntersectionTag::HalfLine);
  CHECK((*c.witness - v({1 / r2, 1 / r2, 0})).norm() < 1e-12);
  CHECK(c.b_norm_sq == doctest::Approx(0.5).epsilon(1e-15));

  c = classify_intersection(AffineSubspace(Vector::Zero(3), col({0, 0, 1})));
  CHECK(c.tag == IntersectionTag::OriginOnly);
  CHECK_FALSE(c.witness.has_value());

  // Snapped anchor: within 1e-10 of the boundary.
  c = classify_intersection(AffineSubspace(v({1 + 5e-11, 1, 0}), col({0, 0, 1})));
  CHECK(c.tag == IntersectionTag::SinglePoint);

  CHECK_THROWS_AS(classify_intersection(AffineSubspace(v({2, 1, 0}), col({0, 0, 1}))), Error);
  // Boundary anchor whose hat is not orthogonal to the basis.
  c = classify_intersection(AffineSubspace(v({1, 1, 0}), col({0, 1, 0})));
  CHECK(c.tag == IntersectionTag::NotNonTransversal);
}

TEST_CASE("face_intersect") {
  const Face full{{FaceBlock::full(3)}};
  Face g = face_intersect(full, v({1, -1, 0}));
  REQUIRE(g.blocks[0].kind == FaceBlock::Kind::Ray);
  CHECK((g.blocks[0].direction - v({1, 1, 0}) / r2).norm() < 1e-15);

  const Face ray{{FaceBlock::ray(v({1, 1, 0}))}};
  g = face_intersect(ray, v({1, -1, -1}));
  CHECK(face_equal(g, ray));
  g = face_intersect(full, v({2, 1, 0}));
  CHECK(g.blocks[0].kind == FaceBlock::Kind::Zero);
  g = face_intersect(full, v({0, 0, 0}));
  CHECK(g.blocks[0].kind == FaceBlock::Kind::Full);
  g = face_intersect(ray, v({1, 0, 0}));
  CHECK(g.blocks[0].kind == FaceBlock::Kind::Zero);
}

TEST_CASE("verify_reducing_certificate on the product examples") {
  const ApmProblem ex1 = make_example1();
  const auto certs = product_certificates();
  const Face ff = Face::full(ex1.k);
  CHECK(verify_reducing_certificate(ex1.h, ff, certs[0]));
  Face g1{{FaceBlock::ray(v({1, 1, 0})), FaceBlock::full(3)}};
  CHECK(verify_reducing_certificate(ex1.h, g1, certs[1]));
  CHECK_FALSE(verify_reducing_certificate(ex1.h, ff, Vector::Zero(6)));
  CHECK_FALSE(verify_reducing_certificate(ex1.h, ff, certs[1]));  // block (1,-1,-1) is not in K
}

TEST_CASE("singularity degree of the single-cone instances") {
  auto sd = singularity_degree_single(make_case2().h);
  CHECK(sd.degree == 1);
  CHECK((*sd.certificate - v({1, -1, 0})).norm() < 1e-12);

  sd = singularity_degree_single(remark_halfline());
  CHECK(sd.degree == 1);
  CHECK((*sd.certificate - v({1, -1, 0}) / r2).norm() < 1e-12);

  sd = singularity_degree_single(make_case1().h);
  CHECK(sd.degree == 1);
  const Vector& y = *sd.certificate;
  // Completion of (0,0,1): c = (1, 0) up to sign and rotation, y = (1, 0, 0).
  CHECK(y[0] * y[0] - y.tail(2).squaredNorm() > 0.0);
  CHECK((y - v({1, 0, 0})).norm() < 1e-12);
  CHECK(sd.minimal_face.blocks[0].kind == FaceBlock::Kind::Zero);

  sd = singularity_degree_single(AffineSubspace(v({2, 1, 0}), col({0, 0, 1})));
  CHECK(sd.degree == 0);
  CHECK_FALSE(sd.certificate.has_value());

  CHECK_THROWS_AS(singularity_degree_single(AffineSubspace(v({1, 1, 0}), col({0, 1, 0}))), Error);
}

TEST_CASE("OriginOnly certificate is interior for tilted bases") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const int n = 3 + i % 4;
    Vector b(n);
    for (int j = 0; j < n; ++j) b[j] = nd(rng);
    b /= b.norm();
    if (b[0] * b[0] >= 0.5 - 1e-6) continue;
    const AffineSubspace h(Vector::Zero(n), b);
    const auto sd = singularity_degree_single(h);
    REQUIRE(sd.degree == 1);
    const Vector& y = *sd.certificate;
    const double cn2 = 1 - b[0] * b[0];  // ||c||^2
    CHECK(y[0] * y[0] - y.tail(n - 1).squaredNorm() ==
          doctest::Approx(cn2 * (2 * cn2 - 1)).epsilon(1e-9));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("facial_reduction_chain") {
  const auto certs = product_certificates();
  Face target{{FaceBlock::ray(v({1, 1, 0})), FaceBlock::ray(v({1, 1, 0}))}};
  for (const auto& p : {make_example1(), make_example2()}) {
    const auto chain = facial_reduction_chain(p.h, p.k, certs);
    REQUIRE(chain.size() == 3);
    CHECK(face_equal(chain.back(), target));
    for (std::size_t i = 1; i < chain.size(); ++i) {
      CHECK(face_contains(chain[i - 1], chain[i]));
      CHECK_FALSE(face_equal(chain[i - 1], chain[i]));
    }
  }
  const ApmProblem ex1 = make_example1();
  const auto empty = facial_reduction_chain(ex1.h, ex1.k, {});
  REQUIRE(empty.size() == 1);
  CHECK(face_equal(empty[0], Face::full(ex1.k)));

  const std::vector<Vector> d2_first{certs[1]};
  try {
    facial_reduction_chain(ex1.h, ex1.k, d2_first);
    FAIL("expected rejection");
  } catch (const CertificateRejectedAtStep& e) {
    CHECK(e.step() == 1);
  }
  const std::vector<Vector> repeated{certs[0], certs[0]};
  try {
    facial_reduction_chain(ex1.h, ex1.k, repeated);
    FAIL("expected rejection");
  } catch (const CertificateRejectedAtStep& e) {
    CHECK(e.step() == 2);
  }
}

TEST_CASE("property: brute-force sampling agrees with the classification") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  const AffineSubspace single(v({1, 1, 0}), col({0, 0, 1}));
  const AffineSubspace half = remark_halfline();
  const Vector d = v({1 / r2, 1 / r2, 0});
  for (int i = 0; i < 10000; ++i) {
    Vector t(1);
    t << u(rng);
    ConeVector x(single.point(t));
    CHECK_FALSE(x.x0() - x.x1_norm() > 1e-9);
    if (x.x0() - x.x1_norm() >= -1e-9) CHECK((x.coords() - v({1, 1, 0})).norm() < 1e-4);

    Vector s(2);
    s << u(rng), u(rng);
    if (s.norm() > 1) continue;
    ConeVector y(half.point(s));
    CHECK_FALSE(y.x0() - y.x1_norm() > 1e-9);
    if (y.x0() - y.x1_norm() >= -1e-9) {
      // On the predicted half-line {alpha d}.
      CHECK((y.coords() - y.coords().dot(d) * d).norm() < 1e-4);
      CHECK(y.coords().dot(d) >= -1e-9);
    }
  }
}

TEST_CASE("property: I - 2bb^T has eigenvalues 1 and 1 - 2||b||^2") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  for (int i = 0; i < 10000; ++i) {
    const int p = 1 + i % 5;
    Vector b(p);
    for (int j = 0; j < p; ++j) b[j] = nd(rng);
    b *= std::uniform_real_distribution<double>(0, 0.7)(rng) / b.norm();
    const Matrix m = Matrix::Identity(p, p) - 2 * b * b.transpose();
    CHECK((m * b - (1 - 2 * b.squaredNorm()) * b).norm() <= 1e-12);
    Vector w(p);
    for (int j = 0; j < p; ++j) w[j] = nd(rng);
    if (b.squaredNorm() > 0) w -= b * (b.dot(w) / b.squaredNorm());
    CHECK((m * w - w).norm() <= 1e-12 * (1 + w.norm()));
  }
}
