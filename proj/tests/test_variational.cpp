#include "doctest.h"
#include "oracles.hpp"
#include "polarkit/measure.hpp"
#include "polarkit/rng.hpp"
#include "polarkit/variational.hpp"

using namespace polarkit;

namespace {

// Cosine coefficients of |V(exp(2 pi i t))|^2 for real v.
std::vector<double> autocorrelation(const std::vector<double>& v) {
  const int d = static_cast<int>(v.size()) - 1;
  std::vector<double> a(d + 1, 0.0);
  for (int k = 0; k <= d; ++k) {
    for (int l = 0; l + k <= d; ++l) a[k] += v[l + k] * v[l];
    if (k > 0) a[k] *= 2.0;
  }
  return a;
}

double sup_error(const std::vector<double>& a, const std::vector<Complex>& u) {
  double worst = 0.0;
  for (int i = 0; i < 4000; ++i) {
    const double t = i / 4000.0;
    worst = std::max(worst, std::abs(cosine_poly(a, t) - factor_square(u, t)));
  }
  return worst;
}

}  // namespace

TEST_CASE("rho on exactly tiled cubes is 1/vol") {
  for (int g : {2, 16, 64}) {
    const auto e = rho_solve(ConvexBody::cube(2), g);
    CHECK(std::abs(e.upper - 0.25) < 1e-12);
    CHECK(std::abs(e.diagnostics.at("iterative_value") - 0.25) < 1e-12);
    CHECK(e.conjectured_or_exact == doctest::Approx(0.25).epsilon(1e-15));
  }
  const auto e3 = rho_solve(ConvexBody::cube(3, 0.5), 8);
  CHECK(std::abs(e3.upper - 1.0) < 1e-12);
}

TEST_CASE("rho on the disk converges to 1/pi") {
  double prev = 0.0;
  for (int g : {32, 64, 128, 256}) {
    const auto e = rho_solve(ConvexBody::ball(2), g);
    const double vt = e.upper * kPi;
    CHECK(vt <= 1.0);
    CHECK(vt > prev);
    prev = vt;
    CHECK(std::abs(e.diagnostics.at("iterative_value") - e.upper) < 1e-10 * e.upper);
  }
  CHECK(prev >= 0.98);
  const auto conv = rho_convergence(ConvexBody::ball(2), {32, 64, 128, 256});
  CHECK(conv.fitted_c > 0.0);
  for (const auto& row : conv.rows) CHECK(row.rel_error <= 2.0 * conv.fitted_c / row.grid);
}

TEST_CASE("closed form and projected gradient agree") {
  Rng rng(31);
  std::vector<Vec> pts;
  for (int i = 0; i < 5; ++i) {
    const Vec v = rng.normal_vec(2);
    pts.push_back(v);
    pts.push_back(-v);
  }
  Mat q(3, 3);
  q << 3.0, 0.5, 0.1, 0.5, 1.0, -0.2, 0.1, -0.2, 2.0;
  const std::vector<ConvexBody> bodies = {ConvexBody::vpolytope(pts), ConvexBody::cross_polytope(3),
                                          ConvexBody::ellipsoid(q), ConvexBody::lp_ball(2, 1.5)};
  for (const auto& k : bodies) {
    for (std::uint64_t seed : {1u, 2u}) {
      const auto e = rho_solve(k, 24, seed);
      CHECK(std::abs(e.diagnostics.at("iterative_value") - e.upper) <= 1e-10 * e.upper);
      CHECK(std::abs(e.diagnostics.at("f_at_zero") - 1.0) < 1e-12);
      CHECK(e.diagnostics.at("covered_fraction") >= 1.0);
      CHECK(e.upper >= 0.0);
    }
  }
  CHECK_THROWS_AS(rho_solve(ConvexBody::ball(2), 1), ValidationError);
}

TEST_CASE("rho is homogeneous of degree -N") {
  const auto base = rho_solve(ConvexBody::ball(2), 128);
  const double budget = 4.0 / 128;
  for (double s : {0.5, 2.0}) {
    const auto scaled = rho_solve(ConvexBody::ball(2, s), 128);
    CHECK(std::abs(scaled.upper / base.upper * s * s - 1.0) < budget);
  }
  Mat t(2, 2);
  t << 1.0, 0.3, 0.0, 0.7;
  const auto k = ConvexBody::linear_image(ConvexBody::cube(2), t);
  const auto kb = rho_solve(k, 96);
  const auto kh = rho_solve(ConvexBody::linear_image(ConvexBody::cube(2), 0.5 * t), 96);
  CHECK(std::abs(kh.upper / kb.upper * 0.25 - 1.0) < 4.0 / 96);
}

TEST_CASE("cube eta sandwich") {
  for (int n = 1; n <= 3; ++n) {
    const auto up = eta_upper_cube(n);
    CHECK(std::abs(up.upper - 1.0) < 1e-12);
    CHECK(up.conjectured_or_exact == 1.0);
    CHECK(up.diagnostics.at("f_at_zero") == 1.0);
    CHECK(up.diagnostics.at("min_sampled") >= 0.0);
    CHECK(up.certificate == Certificate::fejer_product);
    const auto w = eta_lower_poisson(ConvexBody::cube(n), AdmissibleFunction::fejer(n), 1000);
    CHECK(std::abs(w.lattice_sum - 1.0) < 1e-12);
    CHECK(w.remainder_bound < 1e-3);
    const auto s = eta_cube_sandwich(n);
    REQUIRE(s.lower);
    CHECK(std::abs(*s.lower - s.upper) < 1e-12);
    CHECK(*s.lower <= s.upper + 1e-12);
  }
}

TEST_CASE("poisson witness by direct summation") {
  const auto f2 = AdmissibleFunction::fejer(2, 2.0);
  const auto w = eta_lower_poisson(ConvexBody::cube(2), f2, 40);
  double direct = 0.0;
  for (int i = -40; i <= 40; ++i) {
    for (int j = -40; j <= 40; ++j) {
      Vec x(2);
      x << i, j;
      direct += f2.value(x);
    }
  }
  CHECK(w.lattice_sum >= 2.0 - 1e-12);
  CHECK(std::abs(w.lattice_sum - direct) < 1e-12);

  // nonseparable path: the same function without factors, spectrum strictly inside
  AdmissibleFunction g;
  g.dim = 2;
  g.spectrum_half_width = 0.8;
  g.value = [](const Vec& x) { return fejer_1d(0.8 * x[0]) * fejer_1d(0.8 * x[1]); };
  g.envelope = 1.0;
  const auto wg = eta_lower_poisson(ConvexBody::cube(2), g, 60);
  double dg = 0.0;
  for (int i = -60; i <= 60; ++i) {
    for (int j = -60; j <= 60; ++j) {
      Vec x(2);
      x << i, j;
      dg += g.value(x);
    }
  }
  CHECK(std::abs(wg.lattice_sum - dg) < 1e-10);
  // int F = 1 / 0.8^2 and the truncated sum approaches it
  CHECK(std::abs(wg.lattice_sum - 1.0 / 0.64) < wg.remainder_bound);
}

TEST_CASE("poisson witness rejects bad inputs") {
  auto f = AdmissibleFunction::fejer(1);
  f.vanishes_on_boundary = false;
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(1), f, 10), ValidationError);
  auto wide = AdmissibleFunction::fejer(1);
  wide.spectrum_half_width = 1.2;
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(1), wide, 10), ValidationError);
  auto small = AdmissibleFunction::fejer(1, 0.5);
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(1), small, 10), ValidationError);
  AdmissibleFunction neg;
  neg.dim = 1;
  neg.spectrum_half_width = 0.5;
  neg.value = [](const Vec& x) { return std::cos(kPi * x[0]); };
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(1), neg, 10), ValidationError);
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(1, 1.5), AdmissibleFunction::fejer(1), 10), ValidationError);
  CHECK_THROWS_AS(eta_lower_poisson(ConvexBody::cube(2), AdmissibleFunction::fejer(1), 10), ValidationError);
}

TEST_CASE("ball eta kernel square certificate") {
  for (int n = 1; n <= 3; ++n) {
    const auto e = eta_upper_ball(n);
    const double target = std::pow(2.0, n) / unit_ball_volume(n);
    CHECK(std::abs(e.upper - target) < 1e-12 * target);
    CHECK(e.conjectured_or_exact == doctest::Approx(target).epsilon(1e-14));
    CHECK(e.diagnostics.at("spatial_rel_diff") < 0.02);
    CHECK(std::abs(e.diagnostics.at("f_at_zero") - 1.0) < 1e-12);
    CHECK(std::abs(e.diagnostics.at("kernel_at_origin") - volume(ConvexBody::ball(n, 0.5)).value) < 1e-14);
    CHECK(e.certificate == Certificate::kernel_square);
  }
  CHECK(eta_upper_ball(1).upper == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eta_upper_ball(2).upper == doctest::Approx(4.0 / kPi).epsilon(1e-14));
}

TEST_CASE("lp probe") {
  for (int n = 1; n <= 2; ++n) {
    const auto e = eta_lp_probe(ConvexBody::cube(n), 4, 1000);
    CHECK(e.probe);
    CHECK(e.certificate == Certificate::lp_solution);
    CHECK(e.upper <= 1.0 + 1e-9);
    CHECK(e.upper == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(e.diagnostics.at("f_at_zero") >= 1.0 - 1e-9);
    CHECK(e.diagnostics.at("min_check_ratio") > -1e-3);
  }
  const auto c16 = eta_lp_probe(ConvexBody::cube(1), 16, 500);
  CHECK(c16.upper == doctest::Approx(1.0).epsilon(1e-6));

  const auto b4 = eta_lp_probe(ConvexBody::ball(2), 4, 2000, 0.0, 5);
  const auto b8 = eta_lp_probe(ConvexBody::ball(2), 8, 2000, 0.0, 5);
  CHECK(b8.upper < b4.upper);
  CHECK(b8.upper > 4.0 / kPi * 0.99);
  CHECK(b8.conjectured_or_exact == doctest::Approx(4.0 / kPi).epsilon(1e-12));
  CHECK(b8.diagnostics.at("gap_to_conjecture") == doctest::Approx(b8.upper - 4.0 / kPi).epsilon(1e-12));
  const auto again = eta_lp_probe(ConvexBody::ball(2), 8, 2000, 0.0, 5);
  CHECK(again.upper == b8.upper);
  CHECK_THROWS_AS(eta_lp_probe(ConvexBody::ball(2), 1, 100), ValidationError);
}

TEST_CASE("fejer-riesz small cases") {
  const auto one = fejer_riesz_1d({1.0});
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one[0] - 1.0) < 1e-15);
  const auto u = fejer_riesz_1d({2.0, 2.0});
  REQUIRE(u.size() == 2);
  CHECK(std::abs(u[0] - 1.0) < 1e-7);
  CHECK(std::abs(u[1] - 1.0) < 1e-7);
  CHECK(sup_error({2.0, 2.0}, u) < 1e-8);
  const auto trimmed = fejer_riesz_1d({2.0, 2.0, 0.0, 0.0});
  CHECK(trimmed.size() == 2);
  CHECK_THROWS_AS(fejer_riesz_1d({1.0, 3.0}), ValidationError);
  CHECK_THROWS_AS(fejer_riesz_1d({}), ValidationError);
}

TEST_CASE("fejer-riesz round trip") {
  Rng rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + static_cast<int>(rng.uniform() * 20.0);
    std::vector<double> v(d + 1);
    for (auto& x : v) x = rng.normal();
    if (trial % 10 == 0) {
      // force a double root on the unit circle at w = -1
      std::vector<double> w(d + 2, 0.0);
      for (int k = 0; k <= d; ++k) {
        w[k] += v[k];
        w[k + 1] += v[k];
      }
      v = w;
    }
    const auto a = autocorrelation(v);
    const auto u = fejer_riesz_1d(a);
    CHECK(u.size() == a.size());
    CHECK(u.back().real() > 0.0);
    CHECK(std::abs(u.back().imag()) < 1e-12);
    worst = std::max(worst, sup_error(a, u));
  }
  CHECK(worst < 1e-8);
}
