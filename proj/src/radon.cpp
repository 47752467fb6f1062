#include "polarkit/radon.hpp"

#include "polarkit/measure.hpp"
#include "polarkit/quadrature.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>

namespace polarkit {
namespace {

void check_theta(const ConvexBody& k, const Direction& theta) {
  if (theta.dim() != k.dim()) {
    throw ValidationError("radon: direction dimension " + std::to_string(theta.dim()) +
                          " does not match body dimension " + std::to_string(k.dim()));
  }
}

// Orthonormal basis of theta^perp as the columns of an N x (N-1) matrix.
Mat complement_frame(const Vec& theta) {
  const auto n = theta.size();
  Eigen::HouseholderQR<Mat> qr{Mat(theta)};
  const Mat q = qr.householderQ() * Mat::Identity(n, n);
  return q.rightCols(n - 1);
}

double polytope_slice(const PolytopeData& d, const Vec& theta, double t) {
  double h = -1.0;
  int top = 0;
  for (std::size_t i = 0; i < d.vertices.size(); ++i) {
    const double v = d.vertices[i].dot(theta);
    if (v > h) {
      h = v;
      top = static_cast<int>(i);
    }
  }
  const double at = std::abs(t);
  if (at >= h) return 0.0;
  if (d.dim == 1) return 1.0;
  const Vec c = (at / h) * d.vertices[top];
  const Mat u = complement_frame(theta);
  std::vector<Vec> normals;
  normals.reserve(d.facets.size());
  for (const auto& f : d.facets) {
    const double slack = 1.0 - f.dot(c);
    if (slack < 1e-10) return 0.0;
    const Vec a = u.transpose() * f;
    if (a.norm() <= 1e-12 * f.norm()) continue;
    normals.push_back(a / slack);
  }
  return polytope_volume(polytope_from_halfspaces(normals));
}

double ball_slice(int n, double r, double t) {
  const double at = std::abs(t);
  if (at >= r) return 0.0;
  return unit_ball_volume(n - 1) * std::pow((r - at) * (r + at), 0.5 * (n - 1));
}

// Unit l_p ball, 1 < p < inf: slice volume by radial integration around an
// interior point of the slice.
double lp_slice(int n, double p, const Vec& theta, double t, bool cap = true) {
  const double q = conjugate_exponent(p);
  const double h = lp_norm(theta, q);
  const double at = std::abs(t);
  if (at >= h) return 0.0;
  if (n == 1) return 1.0;
  if (n > 4) throw NumericError("radon: l_p ball slices are implemented for N <= 4");
  // cap slices: S ~ (h - t)^{(N-1)/2} as t -> h for smooth strictly convex bodies
  constexpr double kCap = 1e-6;
  if (cap && h - at < kCap * h) {
    const double t0 = (1.0 - kCap) * h;
    return lp_slice(n, p, theta, t0, false) * std::pow((h - at) / (h - t0), 0.5 * (n - 1));
  }
  Vec top(n);
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(theta[i]);
    top[i] = (theta[i] < 0 ? -1.0 : 1.0) * std::pow(a / h, q - 1.0);
  }
  const Vec c = (at / h) * top;
  const Mat u = complement_frame(theta);
  auto radial = [&](const Vec& dir) {
    const Vec step = u * dir;
    auto f = [&](double s) {
      const Vec x = c + s * step;
      double acc = 0.0;
      for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), p);
      return acc - 1.0;
    };
    double hi = 1.0;
    while (f(hi) <= 0.0) hi *= 2.0;
    std::uintmax_t iters = 200;
    const auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto [lo_s, hi_s] = boost::math::tools::toms748_solve(f, 0.0, hi, f(0.0), f(hi), tol, iters);
    return 0.5 * (lo_s + hi_s);
  };
  if (n == 2) {
    Vec e(1);
    e << 1.0;
    return radial(e) + radial(-e);
  }
  if (n == 3) {
    auto r2 = [&](double phi) {
      Vec e(2);
      e << std::cos(phi), std::sin(phi);
      const double r = radial(e);
      return 0.5 * r * r;
    };
    std::vector<double> cuts;
    for (int i = 0; i <= 8; ++i) cuts.push_back(2.0 * kPi * i / 8);
    return piecewise_integral(r2, cuts, 1e-10, 8);
  }
  auto shell = [&](double beta) {
    auto ring = [&](double phi) {
      Vec e(3);
      e << std::sin(beta) * std::cos(phi), std::sin(beta) * std::sin(phi), std::cos(beta);
      return std::pow(radial(e), 3) / 3.0;
    };
    std::vector<double> cuts;
    for (int i = 0; i <= 4; ++i) cuts.push_back(2.0 * kPi * i / 4);
    return std::sin(beta) * piecewise_integral(ring, cuts, 1e-9, 6);
  };
  return piecewise_integral(shell, {0.0, 0.5 * kPi, kPi}, 1e-9, 6);
}

double radon_vec(const ConvexBody& k, const Vec& theta, double t) {
  const int n = k.dim();
  if (const auto* b = k.as<Ball>()) return ball_slice(n, b->radius, t);
  if (const auto* e = k.as<Ellipsoid>()) {
    const Vec u = e->factor * theta;
    const double len = u.norm();
    return e->factor_det / len * ball_slice(n, 1.0, t / len);
  }
  if (const auto* li = k.as<LinearImage>()) {
    const Vec u = li->map.transpose() * theta;
    const double len = u.norm();
    return li->abs_det / len * radon_vec(*li->base, u / len, t / len);
  }
  if (const auto* l = k.as<LpBall>()) {
    const double r = l->radius;
    const double scale = std::pow(r, n - 1);
    if (std::isinf(l->p) || l->p == 1.0) {
      if (n > kExactPolytopeDim) throw NumericError("radon: polytope slices need N <= 6");
      return scale * polytope_slice(*polytope_data(ConvexBody::lp_ball(n, l->p)), theta, t / r);
    }
    if (l->p == 2.0) return ball_slice(n, r, t);
    return scale * lp_slice(n, l->p, theta, t / r);
  }
  const auto data = polytope_data(k);
  if (!data) throw NumericError("radon: polytope slices need N <= 6");
  return polytope_slice(*data, theta, t);
}

bool closed_form_slices(const ConvexBody& k) {
  if (const auto* li = k.as<LinearImage>()) return closed_form_slices(*li->base);
  if (const auto* l = k.as<LpBall>()) return l->p == 2.0;
  return k.as<Ball>() || k.as<Ellipsoid>();
}

bool is_polytopal(const ConvexBody& k) {
  if (const auto* li = k.as<LinearImage>()) return is_polytopal(*li->base);
  if (const auto* l = k.as<LpBall>()) return std::isinf(l->p) || l->p == 1.0;
  return k.as<HPolytope>() || k.as<VPolytope>();
}

// Integrates w(t) S(t) over [a, b] with panels no longer than max_len (in t).
template <class W>
auto integrate_weighted(const ConvexBody& k, const Vec& theta, double h, double a, double b, const W& w,
                        double max_len) {
  using R = decltype(w(0.0));
  auto s = [&](double t) { return radon_vec(k, theta, t); };
  if (is_polytopal(k)) {
    std::vector<double> heights;
    if (const auto data = polytope_data(k)) {
      for (const auto& v : data->vertices) heights.push_back(v.dot(theta));
    }
    const auto cuts = panel_cuts(a, b, heights, max_len);
    const auto& rule = gauss_legendre(16);
    R total{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      total += gauss_panel([&](double t) { return w(t) * s(t); }, cuts[i], cuts[i + 1], rule);
    }
    return total;
  }
  // t = h sin(phi) removes the algebraic endpoint behaviour at +-h.
  const double pa = std::asin(std::clamp(a / h, -1.0, 1.0));
  const double pb = std::asin(std::clamp(b / h, -1.0, 1.0));
  const double max_phi = std::isfinite(max_len) ? max_len / h : std::numeric_limits<double>::infinity();
  const auto cuts = panel_cuts(pa, pb, {}, max_phi);
  auto g = [&](double phi) {
    const double t = h * std::sin(phi);
    return w(t) * (s(t) * h * std::cos(phi));
  };
  const bool exact_slices = closed_form_slices(k);
  const double tol = exact_slices ? 1e-13 : 1e-9;
  const unsigned depth = exact_slices ? 20 : 8;
  R total{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += adaptive_integral(g, cuts[i], cuts[i + 1], tol, depth);
  return total;
}

}  // namespace

double radon(const ConvexBody& k, const Direction& theta, double t) {
  check_theta(k, theta);
  return radon_vec(k, theta.vec(), t);
}

RadonProfile radon_profile(const ConvexBody& k, const Direction& theta, int n_samples) {
  check_theta(k, theta);
  if (n_samples < 3) throw ValidationError("radon_profile: n_samples must be >= 3");
  RadonProfile prof{theta, support(k, theta.vec()), {}, {}, std::nullopt};
  if (k.as<Ball>()) prof.closed_form = "ball";
  for (int i = 0; i < n_samples; ++i) {
    const double t = -prof.h + 2.0 * prof.h * i / (n_samples - 1);
    prof.t.push_back(t);
    prof.values.push_back(radon_vec(k, theta.vec(), t));
  }
  return prof;
}

std::vector<double> profile_breakpoints(const ConvexBody& k, const Direction& theta) {
  check_theta(k, theta);
  std::vector<double> out;
  if (!is_polytopal(k)) return out;
  if (const auto data = polytope_data(k)) {
    for (const auto& v : data->vertices) out.push_back(v.dot(theta.vec()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(), [](double x, double y) { return std::abs(x - y) < 1e-14; }),
            out.end());
  return out;
}

double integrate_profile(const ConvexBody& k, const Direction& theta, double a, double b,
                         const std::function<double(double)>& w) {
  check_theta(k, theta);
  const double h = support(k, theta.vec());
  a = std::max(a, -h);
  b = std::min(b, h);
  if (!(b > a)) return 0.0;
  const double inf = std::numeric_limits<double>::infinity();
  if (!w) return integrate_weighted(k, theta.vec(), h, a, b, [](double) { return 1.0; }, inf);
  return integrate_weighted(k, theta.vec(), h, a, b, w, inf);
}

Complex profile_fourier(const ConvexBody& k, const Direction& theta, double r) {
  check_theta(k, theta);
  const double h = support(k, theta.vec());
  const double max_len = r != 0.0 ? 0.5 / std::abs(r) : std::numeric_limits<double>::infinity();
  auto w = [r](double t) {
    const double ph = -2.0 * kPi * r * t;
    return Complex(std::cos(ph), std::sin(ph));
  };
  return integrate_weighted(k, theta.vec(), h, -h, h, w, max_len);
}

double section_tail(const ConvexBody& k, const Direction& theta, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("section_tail: t must lie in [0, 1]");
  const double h = support(k, theta.vec());
  return integrate_profile(k, theta, t * h, h);
}

std::vector<double> section_tails(const ConvexBody& k, const Direction& theta,
                                  const std::vector<double>& fractions) {
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] >= 0.0 && fractions[i] <= 1.0)) {
      throw ValidationError("section_tails: fractions must lie in [0, 1]");
    }
    if (i && fractions[i] < fractions[i - 1]) throw ValidationError("section_tails: fractions must increase");
  }
  const double h = support(k, theta.vec());
  std::vector<double> out(fractions.size(), 0.0);
  double acc = 0.0;
  double upper = h;
  for (std::size_t i = fractions.size(); i-- > 0;) {
    const double lower = fractions[i] * h;
    acc += integrate_profile(k, theta, lower, upper);
    out[i] = acc;
    upper = lower;
  }
  return out;
}

double ball_tail_reference(int n, double t, double vol_k) {
  if (n < 2) throw ValidationError("ball_tail_reference: N must be >= 2");
  if (!(t >= 0.0 && t <= 1.0)) throw ValidationError("ball_tail_reference: t must lie in [0, 1]");
  // s = cos(phi) turns (1 - s^2)^{(N-1)/2} ds into sin^N(phi) dphi
  const double integral =
      adaptive_integral([n](double phi) { return std::pow(std::sin(phi), n); }, 0.0, std::acos(t), 1e-14);
  return unit_ball_volume(n - 1) * vol_k / unit_ball_volume(n) * integral;
}

}  // namespace polarkit
