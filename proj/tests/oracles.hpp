#pragma once

// Independent reference computations used only by the tests.

#include "polarkit/core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using polarkit::Mat;
using polarkit::Vec;

// Vertices of {x : a_i.x <= 1} by trying every N-subset of constraints.
inline std::vector<Vec> brute_vertices(const std::vector<Vec>& normals, double tol = 1e-9) {
  const int n = static_cast<int>(normals.front().size());
  const int m = static_cast<int>(normals.size());
  std::vector<Vec> out;
  std::vector<int> idx(n);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == n) {
      Mat a(n, n);
      for (int i = 0; i < n; ++i) a.row(i) = normals[idx[i]].transpose();
      Eigen::FullPivLU<Mat> lu(a);
      if (!lu.isInvertible()) return;
      const Vec x = lu.solve(Vec::Ones(n));
      for (const auto& f : normals)
        if (f.dot(x) > 1.0 + tol) return;
      for (const auto& y : out)
        if ((y - x).norm() < 1e-7) return;
      out.push_back(x);
      return;
    }
    for (int i = start; i < m; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  return out;
}

// Area of a convex polygon given by unordered vertices (shoelace after an
// angular sort around the centroid).
inline double polygon_area(std::vector<Vec> v) {
  Vec c = Vec::Zero(2);
  for (const auto& p : v) c += p;
  c /= static_cast<double>(v.size());
  std::sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec& p = v[i];
    const Vec& q = v[(i + 1) % v.size()];
    s += p[0] * q[1] - p[1] * q[0];
  }
  return 0.5 * std::abs(s);
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

// Regular 2m-gon with circumradius r (origin symmetric).
inline std::vector<Vec> regular_polygon(int m2, double r, double phase = 0.1) {
  std::vector<Vec> v;
  for (int k = 0; k < m2; ++k) {
    const double a = phase + 2.0 * polarkit::kPi * k / m2;
    Vec p(2);
    p << r * std::cos(a), r * std::sin(a);
    v.push_back(p);
  }
  return v;
}

// Volume of {x : |x|_p <= 1} in R^n.
inline double lp_ball_volume(int n, double p) {
  return std::pow(2.0 * std::tgamma(1.0 + 1.0 / p), n) / std::tgamma(1.0 + n / p);
}

// int over a convex polygon of exp(-2 pi i xi.x): vertical chords clipped
// against the edges, integrated in y exactly and in x by Gauss-Legendre on
// panels between vertex abscissae.
inline std::complex<double> polygon_ft(std::vector<Vec> v, const Vec& xi, int order = 80, int panels = 40) {
  using C = std::complex<double>;
  const double pi = polarkit::kPi;
  std::vector<double> xs;
  for (const auto& p : v) xs.push_back(p[0]);
  std::sort(xs.begin(), xs.end());
  Vec c = Vec::Zero(2);
  for (const auto& p : v) c += p;
  c /= static_cast<double>(v.size());
  std::sort(v.begin(), v.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(a[1] - c[1], a[0] - c[0]) < std::atan2(b[1] - c[1], b[0] - c[0]);
  });
  auto chord = [&](double x, double& lo, double& hi) {
    lo = 1e300;
    hi = -1e300;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Vec& p = v[i];
      const Vec& q = v[(i + 1) % v.size()];
      const double a = std::min(p[0], q[0]);
      const double b = std::max(p[0], q[0]);
      if (x < a || x > b || a == b) continue;
      const double y = p[1] + (q[1] - p[1]) * (x - p[0]) / (q[0] - p[0]);
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  };
  // Legendre nodes by Newton
  std::vector<double> gx(order), gw(order);
  for (int k = 0; k < order; ++k) {
    double z = std::cos(pi * (k + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    gx[k] = z;
    gw[k] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  C total = 0.0;
  for (std::size_t s = 0; s + 1 < xs.size(); ++s) {
    if (xs[s + 1] - xs[s] < 1e-14) continue;
    for (int m = 0; m < panels; ++m) {
      const double a = xs[s] + (xs[s + 1] - xs[s]) * m / panels;
      const double b = xs[s] + (xs[s + 1] - xs[s]) * (m + 1) / panels;
      for (int k = 0; k < order; ++k) {
        const double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[k];
        double lo = 0.0, hi = 0.0;
        chord(x, lo, hi);
        C inner;
        if (xi[1] == 0.0) {
          inner = hi - lo;
        } else {
          const C e = C(0.0, -2.0 * pi * xi[1]);
          inner = (std::exp(e * hi) - std::exp(e * lo)) / e;
        }
        total += 0.5 * (b - a) * gw[k] * std::exp(C(0.0, -2.0 * pi * xi[0] * x)) * inner;
      }
    }
  }
  return total;
}

}  // namespace oracle
