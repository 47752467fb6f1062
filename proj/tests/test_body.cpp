#include "doctest.h"
#include "oracles.hpp"
#include "polarkit/body.hpp"
#include "polarkit/rng.hpp"

using namespace polarkit;

namespace {

std::vector<Vec> random_symmetric(Rng& rng, int n, int pairs) {
  std::vector<Vec> out;
  for (int k = 0; k < pairs; ++k) {
    const Vec v = rng.normal_vec(n);
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

Mat random_spd(Rng& rng, int n) {
  Mat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rng.normal();
  return a * a.transpose() + 0.5 * Mat::Identity(n, n);
}

std::vector<ConvexBody> zoo(Rng& rng, int n) {
  std::vector<ConvexBody> out;
  out.push_back(ConvexBody::ball(n, 1.7));
  out.push_back(ConvexBody::ellipsoid(random_spd(rng, n)));
  out.push_back(ConvexBody::hpolytope(random_symmetric(rng, n, n + 2)));
  out.push_back(ConvexBody::vpolytope(random_symmetric(rng, n, n + 2)));
  out.push_back(ConvexBody::lp_ball(n, 3.0, 0.8));
  out.push_back(ConvexBody::lp_ball(n, 1.4));
  out.push_back(ConvexBody::cube(n, 2.0));
  out.push_back(ConvexBody::cross_polytope(n));
  Mat t = Mat::Identity(n, n) + 0.4 * Mat::Random(n, n);
  out.push_back(ConvexBody::linear_image(ConvexBody::lp_ball(n, 4.0), t));
  return out;
}

}  // namespace

TEST_CASE("support of K equals gauge of the polar") {
  Rng rng(21);
  for (int n : {2, 3, 4}) {
    for (const auto& k : zoo(rng, n)) {
      const auto kp = polar(k);
      for (int s = 0; s < 20; ++s) {
        const Vec x = rng.normal_vec(n);
        CAPTURE(k.kind());
        CHECK(support(k, x) == doctest::Approx(gauge(kp, x)).epsilon(1e-9));
        CHECK(gauge(k, x) == doctest::Approx(support(kp, x)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("boundary points have gauge 1 and the support is attained") {
  Rng rng(4);
  for (const auto& k : zoo(rng, 3)) {
    for (int s = 0; s < 10; ++s) {
      const Vec x = rng.normal_vec(3);
      const Vec y = x / gauge(k, x);
      CHECK(gauge(k, y) == doctest::Approx(1.0));
      CHECK(contains(k, y));
      CHECK_FALSE(contains(k, 1.001 * y));
      const Vec u = rng.unit_vec(3);
      CHECK(u.dot(y) <= support(k, u) + 1e-9);
    }
  }
}

TEST_CASE("homogeneity and symmetry") {
  Rng rng(8);
  for (const auto& k : zoo(rng, 3)) {
    const Vec x = rng.normal_vec(3);
    CHECK(support(k, 2.5 * x) == doctest::Approx(2.5 * support(k, x)));
    CHECK(support(k, -x) == doctest::Approx(support(k, x)));
    CHECK(gauge(k, -x) == doctest::Approx(gauge(k, x)));
  }
}

TEST_CASE("closed-form support functions") {
  Vec x(3);
  x << 1.0, -2.0, 0.5;
  CHECK(support(ConvexBody::cube(3), x) == doctest::Approx(3.5));
  CHECK(support(ConvexBody::cross_polytope(3), x) == doctest::Approx(2.0));
  CHECK(support(ConvexBody::ball(3, 2.0), x) == doctest::Approx(2.0 * x.norm()));
  Mat m = Mat::Zero(3, 3);
  m.diagonal() << 1.0, 4.0, 0.25;
  // semi-axes 1, 1/2, 2
  CHECK(support(ConvexBody::ellipsoid(m), x) ==
        doctest::Approx(std::sqrt(1.0 + 1.0 + 0.25 * 4.0)));
}

TEST_CASE("polar pairs") {
  const auto c = polar(ConvexBody::cube(3, 2.0));
  REQUIRE(c.as<LpBall>() != nullptr);
  CHECK(c.as<LpBall>()->p == 1.0);
  CHECK(c.as<LpBall>()->radius == doctest::Approx(0.5));
  const auto b = polar(ConvexBody::lp_ball(4, 3.0));
  CHECK(b.as<LpBall>()->p == doctest::Approx(1.5));

  Rng rng(2);
  const auto h = ConvexBody::hpolytope(random_symmetric(rng, 3, 6));
  const auto hp = polar(h);
  REQUIRE(hp.as<VPolytope>() != nullptr);
  CHECK(hp.as<VPolytope>()->vertices.size() == h.as<HPolytope>()->data->facets.size());
  const auto hpp = polar(hp);
  for (int s = 0; s < 10; ++s) {
    const Vec x = rng.normal_vec(3);
    CHECK(support(hpp, x) == doctest::Approx(support(h, x)));
  }
}

TEST_CASE("linear images compose") {
  Rng rng(12);
  const auto base = ConvexBody::lp_ball(3, 2.5);
  const Mat s = Mat::Identity(3, 3) + 0.3 * Mat::Random(3, 3);
  const Mat t = Mat::Identity(3, 3) + 0.3 * Mat::Random(3, 3);
  const auto twice = linear_image(linear_image(base, s), t);
  REQUIRE(twice.as<LinearImage>() != nullptr);
  CHECK(twice.as<LinearImage>()->base->as<LpBall>() != nullptr);
  CHECK(twice.as<LinearImage>()->abs_det == doctest::Approx(std::abs((t * s).determinant())));
  const Vec x = rng.normal_vec(3);
  CHECK(support(twice, x) == doctest::Approx(support(base, (t * s).transpose() * x)));
}

TEST_CASE("polytope view of cube, crosspolytope and their images") {
  const auto cd = polytope_data(ConvexBody::cube(4, 0.5));
  REQUIRE(cd);
  CHECK(cd->vertices.size() == 16u);
  CHECK(cd->vertices[0].cwiseAbs().maxCoeff() == doctest::Approx(0.5));
  CHECK(polytope_data(ConvexBody::cross_polytope(3))->facets.size() == 8u);
  CHECK_FALSE(polytope_data(ConvexBody::ball(3)));
  CHECK_FALSE(polytope_data(ConvexBody::lp_ball(3, 3.0)));
  Mat t = 2.0 * Mat::Identity(2, 2);
  const auto li = polytope_data(linear_image(ConvexBody::cube(2), t));
  REQUIRE(li);
  for (const auto& v : li->vertices) CHECK(v.cwiseAbs().maxCoeff() == doctest::Approx(2.0));
  for (const auto& f : li->facets) CHECK(f.cwiseAbs().maxCoeff() == doctest::Approx(0.5));
}

TEST_CASE("high-dimensional polytopes use linear programs") {
  Rng rng(31);
  const int n = 8;
  const auto h = ConvexBody::hpolytope(random_symmetric(rng, n, 12));
  const auto v = polar(h);
  CHECK_FALSE(polytope_data(h));
  for (int s = 0; s < 5; ++s) {
    const Vec x = rng.normal_vec(n);
    CHECK(support(h, x) == doctest::Approx(gauge(v, x)).epsilon(1e-8));
  }
  CHECK(support(ConvexBody::cube(n), Vec::Ones(n)) == doctest::Approx(8.0));
}

TEST_CASE("circumradius bound") {
  Rng rng(14);
  for (const auto& k : zoo(rng, 3)) {
    const double r = circumradius_bound(k);
    for (int s = 0; s < 50; ++s) CHECK(support(k, rng.unit_vec(3)) <= r * (1 + 1e-12));
  }
  CHECK(circumradius_bound(ConvexBody::cube(4)) == doctest::Approx(2.0));
}

TEST_CASE("invalid bodies are rejected") {
  CHECK_THROWS_AS(ConvexBody::ball(0), ValidationError);
  CHECK_THROWS_AS(ConvexBody::ball(2, -1.0), ValidationError);
  CHECK_THROWS_AS(ConvexBody::lp_ball(2, 0.5), ValidationError);
  Mat bad(2, 2);
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(ConvexBody::ellipsoid(bad), ValidationError);
  bad << 1, 0.5, 0.4, 1;
  CHECK_THROWS_AS(ConvexBody::ellipsoid(bad), ValidationError);
  std::vector<Vec> asym{Vec::Unit(2, 0), Vec::Unit(2, 1), -Vec::Unit(2, 1)};
  CHECK_THROWS_AS(ConvexBody::vpolytope(asym), ValidationError);
  std::vector<Vec> flat{Vec::Unit(2, 0), -Vec::Unit(2, 0)};
  CHECK_THROWS_AS(ConvexBody::hpolytope(flat), ValidationError);
  CHECK_THROWS_AS(linear_image(ConvexBody::ball(2), Mat::Zero(2, 2)), ValidationError);
  CHECK_THROWS_AS(support(ConvexBody::ball(2), Vec::Ones(3)), ValidationError);
  CHECK_THROWS_AS(Direction(Vec::Ones(2)), ValidationError);
}
