#include <nlohmann/json.hpp>
#include "polarkit/body_io.hpp"
#include "polarkit/fourier.hpp"
#include "polarkit/records.hpp"
#include "polarkit/rng.hpp"
#include "polarkit/variational.hpp"
#include "polarkit/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

using namespace polarkit;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<Vec> cube_vertices(int n) {
  std::vector<Vec> v;
  for (long m = 0; m < (1L << n); ++m) {
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = (m >> i) & 1 ? 1.0 : -1.0;
    v.push_back(x);
  }
  return v;
}

std::vector<Vec> cross_vertices(int n) {
  std::vector<Vec> v;
  for (int i = 0; i < n; ++i) {
    v.push_back(Vec::Unit(n, i));
    v.push_back(-Vec::Unit(n, i));
  }
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

void c1_mahler(Outcome& o) {
  double worst = 0.0;
  int bodies = 0;
  for (int n = 1; n <= 6; ++n) {
    const double bound = std::pow(4.0, n) / factorial(n);
    const std::vector<ConvexBody> family = {
        ConvexBody::cube(n),
        ConvexBody::vpolytope(cube_vertices(n)),
        ConvexBody::hpolytope(cross_vertices(n)),
        ConvexBody::cross_polytope(n),
        ConvexBody::vpolytope(cross_vertices(n)),
        ConvexBody::hpolytope(cube_vertices(n)),
    };
    for (const auto& k : family) {
      const auto r = volume_product(k);
      o.require(r.vol_k.method == VolumeMethod::exact && r.vol_polar.method == VolumeMethod::exact,
                "inexact volume at N=" + std::to_string(n));
      worst = std::max(worst, rel(r.product, bound));
      ++bodies;
    }
    if (n <= 5) {
      for (std::uint64_t s = 0; s < 10; ++s) {
        const auto r = volume_product(random_body(BodyKind::hanner, n, n, 100 + s));
        worst = std::max(worst, rel(r.product, bound));
        ++bodies;
      }
    }
  }
  o.require(worst < 1e-9, "relative deviation from 4^N/N! too large");
  o.detail << bodies << " bodies, max relative deviation " << worst;
}

void c2_sweep(Outcome& o) {
  const BodyKind kinds[] = {BodyKind::vpolytope, BodyKind::hpolytope, BodyKind::ellipsoid, BodyKind::lp_ball,
                            BodyKind::hanner};
  int violations = 0, ellipsoids = 0, total = 0;
  double worst_ellipsoid = 0.0, max_ratio = 0.0;
  for (int n = 2; n <= 4; ++n) {
    std::vector<ConvexBody> bodies;
    std::vector<BodyKind> tags;
    for (int i = 0; i < 500; ++i) {
      tags.push_back(kinds[i % 5]);
      bodies.push_back(random_body(tags.back(), n, n + (i / 5) % 8, 10000 * n + i));
    }
    const auto reports = verify_bs_many(bodies);
    for (std::size_t i = 0; i < reports.size(); ++i) {
      const auto& r = reports[i];
      ++total;
      const double limit = 1.0 + (r.method == VolumeMethod::exact ? 1e-9 : 5.0 * r.rel_error);
      if (r.ratio > limit || r.verdict == Verdict::violated) ++violations;
      if (tags[i] == BodyKind::ellipsoid) {
        ++ellipsoids;
        worst_ellipsoid = std::max(worst_ellipsoid, std::abs(r.ratio - 1.0));
      } else {
        max_ratio = std::max(max_ratio, r.ratio);
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.require(worst_ellipsoid < 1e-9, "ellipsoid ratio off 1");
  o.detail << total << " bodies, " << violations << " violations, " << ellipsoids
           << " ellipsoids with max |ratio-1| " << worst_ellipsoid << ", max other ratio " << max_ratio;
}

void c3_rho(Outcome& o) {
  const auto ball = rho_solve(ConvexBody::ball(2), 256);
  const double bv = ball.upper * kPi;
  o.require(bv >= 0.98 && bv <= 1.0, "ball rho vol outside [0.98, 1]");
  double cube_err = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int g : {4, 16}) {
      const auto e = rho_solve(ConvexBody::cube(n), g);
      cube_err = std::max(cube_err, std::abs(e.upper * std::pow(2.0, n) - 1.0));
    }
  }
  o.require(cube_err < 1e-12, "tiled cube not exact");
  double worst_scale = 0.0, budget = 1.0;
  for (int n = 2; n <= 3; ++n) {
    const int g = n == 2 ? 128 : 24;
    const auto base = rho_solve(ConvexBody::ball(n), g);
    const double e0 = std::abs(base.diagnostics.at("value_times_volume") - 1.0);
    for (double t : {0.5, 2.0}) {
      const auto s = rho_solve(ConvexBody::ball(n, t), g);
      const double e1 = std::abs(s.diagnostics.at("value_times_volume") - 1.0);
      const double dev = std::abs(s.upper * std::pow(t, n) / base.upper - 1.0);
      o.require(dev <= e0 + e1, "homogeneity outside the grid-error budget");
      worst_scale = std::max(worst_scale, dev);
      budget = std::min(budget, e0 + e1);
    }
  }
  o.detail << "ball rho vol at g=256 " << bv << ", tiled cube error " << cube_err << ", homogeneity deviation "
           << worst_scale << " (budget >= " << budget << ")";
}

void c4_eta(Outcome& o) {
  double cube_err = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto e = eta_cube_sandwich(n);
    const auto w = eta_lower_poisson(ConvexBody::cube(n), AdmissibleFunction::fejer(n), 1000);
    o.require(e.lower.has_value(), "sandwich without lower bound");
    cube_err = std::max({cube_err, std::abs(e.upper - 1.0), std::abs(e.lower.value_or(0.0) - 1.0),
                         std::abs(w.lattice_sum - 1.0)});
  }
  o.require(cube_err < 1e-12, "cube sandwich not exact");
  double ball_err = 0.0, cross = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const auto e = eta_upper_ball(n);
    const double expect = std::pow(2.0, n) * std::tgamma(0.5 * n + 1.0) / std::pow(kPi, 0.5 * n);
    o.require(e.certificate == Certificate::kernel_square, "ball certificate");
    ball_err = std::max(ball_err, rel(e.upper, expect));
    cross = std::max(cross, std::abs(e.diagnostics.at("spatial_quadrature") / e.upper - 1.0));
  }
  o.require(ball_err < 1e-12, "ball upper bound off 2^N/vol(B)");
  o.require(cross < 0.02, "spatial cross-check beyond 2%");
  o.detail << "cube sandwich error " << cube_err << ", ball bound error " << ball_err << ", N=2 value "
           << eta_upper_ball(2).upper << ", spatial cross-check " << cross;
}

void c5_fourier(Outcome& o) {
  Rng rng(5);
  std::vector<double> rs;
  for (int i = 0; i <= 12; ++i) rs.push_back(0.25 * i);
  double worst = 0.0;
  for (int n = 2; n <= 3; ++n) {
    const std::vector<ConvexBody> bodies = {ConvexBody::cube(n), ConvexBody::ball(n),
                                            random_body(BodyKind::vpolytope, n, 2 * n + 2, 7 + n)};
    for (const auto& k : bodies) {
      for (int d = 0; d < 10; ++d) worst = std::max(worst, projection_slice_check(k, Direction(rng.unit_vec(n)), rs));
    }
  }
  o.require(worst < 1e-7, "projection-slice error");
  double parseval = 0.0;
  // window of one cell period, 1 / (4 half_step) on each side
  for (const auto& [k, g] : {std::pair{ConvexBody::ball(2), 256}, std::pair{ConvexBody::cross_polytope(2), 512}}) {
    const auto f = extremal_rho_function(k, g);
    const double w = 0.25 / f.half_step.maxCoeff();
    parseval = std::max(parseval, std::abs(spatial_norm_sq(f, w, 0.25) / parseval_norm_sq(f) - 1.0));
  }
  o.require(parseval < 0.02, "Parseval mismatch beyond 2%");
  o.detail << "max projection-slice error " << worst << ", Parseval relative gap " << parseval;
}

void c6_equality(Outcome& o) {
  double res = 0.0, alpha = 0.0;
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t s = 0; s < 2; ++s) {
      const auto d = equality_diagnostics(random_body(BodyKind::ellipsoid, n, n, 60 + s), 64, 33);
      res = std::max(res, d.max_profile_residual);
      alpha = std::max(alpha, d.max_alpha_error);
    }
  }
  const auto cube = equality_diagnostics(ConvexBody::cube(3), 64, 33);
  o.require(res < 1e-8, "ellipsoid profile residual");
  o.require(alpha < 1e-8, "ellipsoid alpha_hat off 1");
  o.require(cube.max_tail_deviation > 0.01, "cube tail deviation not detected");
  o.detail << "ellipsoid residual " << res << ", |alpha_hat-1| " << alpha << ", cube tail deviation "
           << cube.max_tail_deviation;
}

void c7_fejer_riesz(Outcome& o) {
  Rng rng(77);
  double worst = 0.0, worst_coeff = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = static_cast<int>(rng.uniform() * 21.0);
    std::vector<double> v(d + 1);
    for (auto& x : v) x = rng.normal();
    // nonnegative by construction: a_k from the autocorrelation of v
    std::vector<double> a(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) {
      for (int l = 0; l + k <= d; ++l) a[k] += v[l + k] * v[l];
      if (k > 0) a[k] *= 2.0;
    }
    a[0] += trial % 4 == 0 ? 0.0 : rng.uniform();
    const auto u = fejer_riesz_1d(a);
    for (int i = 0; i < 4096; ++i) {
      const double t = i / 4096.0;
      worst = std::max(worst, std::abs(cosine_poly(a, t) - factor_square(u, t)));
    }
    for (int k = 0; k < static_cast<int>(a.size()); ++k) {
      Complex c = 0.0;
      for (int l = 0; l + k < static_cast<int>(u.size()); ++l) c += u[l + k] * std::conj(u[l]);
      worst_coeff = std::max(worst_coeff, std::abs((k ? 2.0 : 1.0) * c.real() - a[k]));
    }
  }
  o.require(worst < 1e-8, "sup-norm reconstruction error");
  o.require(worst_coeff < 1e-8, "coefficient reconstruction error");
  o.detail << "100 polynomials, sup-norm error " << worst << ", coefficient error " << worst_coeff;
}

void c8_probes(Outcome& o) {
  int probes = 0;
  const std::vector<ConvexBody> general = {ConvexBody::ball(2), ConvexBody::lp_ball(2, 1.5),
                                           random_body(BodyKind::vpolytope, 2, 6, 3)};
  for (const auto& k : general) {
    const auto e = eta_lp_probe(k, 6, 1500, 0.0, 11);
    const auto j = nlohmann::json::parse(extremal_record(body_hash(k), e));
    o.require(e.probe && j["probe"] == true, "probe not labeled");
    o.require(e.certificate == Certificate::lp_solution && !e.lower.has_value(), "probe carries a certified bound");
    o.require(j["seed"] == 11 && !j["grid_spec"].empty(), "probe provenance missing");
    o.require(std::isfinite(e.upper) && e.upper > 0.0, "probe value not finite");
    ++probes;
  }
  for (int n = 1; n <= 3; ++n) {
    const auto c = eta_cube_sandwich(n);
    o.require(!c.probe && c.diagnostics.at("min_sampled") >= 0.0, "fejer certificate not admissible");
    o.require(std::abs(c.diagnostics.at("f_at_zero") - 1.0) < 1e-12, "fejer certificate not normalized");
    const auto b = eta_upper_ball(n);
    o.require(!b.probe && std::abs(b.diagnostics.at("f_at_zero") - 1.0) < 1e-12, "kernel square not normalized");
    const auto r = rho_solve(ConvexBody::ball(n), n == 3 ? 16 : 32);
    o.require(!r.probe && std::abs(r.diagnostics.at("f_at_zero") - 1.0) < 1e-10, "rho certificate not normalized");
    o.require(r.diagnostics.at("covered_fraction") >= 1.0, "rho grid does not cover K");
  }
  bool rejected = false;
  try {
    eta_lower_poisson(ConvexBody::cube(2, 1.5), AdmissibleFunction::fejer(2), 100);
  } catch (const ValidationError&) {
    rejected = true;
  }
  o.require(rejected, "inadmissible Poisson witness accepted");
  o.detail << probes << " probes labeled with provenance, certificates admissible, no equality asserted";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "volume-product equalities", 10.0, c1_mahler},
      {2, "volume-product sweep", 300.0, c2_sweep},
      {3, "rho convergence", 60.0, c3_rho},
      {4, "eta sandwich and ball bound", 120.0, c4_eta},
      {5, "projection-slice and Parseval", 120.0, c5_fourier},
      {6, "equality-case diagnostics", 60.0, c6_equality},
      {7, "Fejer-Riesz round trip", 30.0, c7_fejer_riesz},
      {8, "probe labeling and certificate admissibility", 120.0, c8_probes},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < c.limit_s, "runtime over limit");
    failed += !o.pass;
    std::printf("criterion %d %s: %s (%.2f s, limit %.0f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs,
                c.limit_s, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
