#include "polarkit/fourier.hpp"

#include "polarkit/kernels.hpp"
#include "polarkit/measure.hpp"
#include "polarkit/quadrature.hpp"
#include "polarkit/radon.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace polarkit {
namespace {

// r^N (r|xi|)^{-N/2} J_{N/2}(2 pi r |xi|).
double ball_ft(int n, double r, double rho) {
  const double nu = 0.5 * n;
  const double x = 2.0 * kPi * r * rho;
  const double vol = unit_ball_volume(n) * std::pow(r, n);
  if (x < 1e-3) {
    // series of (x/2)^{-nu} J_nu(x) Gamma(nu + 1)
    const double q = 0.25 * x * x;
    double term = 1.0;
    double s = 1.0;
    for (int k = 1; k < 8; ++k) {
      term *= -q / (k * (k + nu));
      s += term;
    }
    return vol * s;
  }
  return std::pow(r, n) * std::pow(r * rho, -nu) * std::cyl_bessel_j(nu, x);
}

double cube_ft(double half_width, const Vec& xi) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double z = xi[i];
    v *= z == 0.0 ? 2.0 * half_width : sin_pi(2.0 * half_width * z) / (kPi * z);
  }
  return v;
}

Complex polytope_ft(const PolytopeData& d, const Vec& xi) {
  Complex s = 0.0;
  for (const auto& simplex : polytope_simplices(d)) s += simplex_ft(simplex, xi);
  return s;
}

void check_xi(const ConvexBody& k, const Vec& xi) { require_dim(xi, k.dim(), "indicator_ft"); }

}  // namespace

Complex simplex_ft(const std::vector<Vec>& s, const Vec& xi) {
  const int n = static_cast<int>(xi.size());
  if (static_cast<int>(s.size()) != n + 1) throw ValidationError("simplex_ft: need N + 1 vertices");
  Mat e(n, n);
  double diam = 0.0;
  for (int k = 0; k < n; ++k) {
    e.col(k) = s[k + 1] - s[0];
    diam = std::max(diam, e.col(k).norm());
  }
  const double jac = std::abs(e.determinant());
  if (jac == 0.0) return 0.0;
  const Vec a = -2.0 * kPi * (e.transpose() * xi);
  const double phase0 = -2.0 * kPi * xi.dot(s[0]);
  const double kappa = kPi * xi.norm() * diam;
  const int m = static_cast<int>(std::ceil(0.75 * kappa + 14.0));
  const auto& rule = gauss_legendre(m);
  // lambda_1 = u_1, lambda_k = u_k prod_{j<k} (1 - u_j); Jacobian prod (1 - u_k)^{N-k}
  std::function<Complex(int, double, double)> rec = [&](int k, double rest, double phase) -> Complex {
    if (k == n) return Complex(std::cos(phase), std::sin(phase));
    Complex acc = 0.0;
    for (int q = 0; q < m; ++q) {
      const double u = 0.5 * (rule.x[q] + 1.0);
      const double w = 0.5 * rule.w[q] * std::pow(1.0 - u, n - 1 - k);
      acc += w * rec(k + 1, rest * (1.0 - u), phase + a[k] * rest * u);
    }
    return acc;
  };
  return jac * rec(0, 1.0, phase0);
}

Complex indicator_ft(const ConvexBody& k, const Vec& xi) {
  check_xi(k, xi);
  const int n = k.dim();
  if (xi.norm() == 0.0) return volume(k).value;
  if (const auto* b = k.as<Ball>()) return ball_ft(n, b->radius, xi.norm());
  if (const auto* e = k.as<Ellipsoid>()) return e->factor_det * ball_ft(n, 1.0, (e->factor * xi).norm());
  if (const auto* li = k.as<LinearImage>()) return li->abs_det * indicator_ft(*li->base, li->map.transpose() * xi);
  if (const auto* l = k.as<LpBall>()) {
    if (std::isinf(l->p)) return cube_ft(l->radius, xi);
    if (l->p == 2.0) return ball_ft(n, l->radius, xi.norm());
    if (l->p == 1.0) {
      if (n > kExactPolytopeDim) throw NumericError("indicator_ft: polytope cubature needs N <= 6");
      const auto unit = polytope_data(ConvexBody::cross_polytope(n));
      return std::pow(l->radius, n) * polytope_ft(*unit, l->radius * xi);
    }
    const double rho = xi.norm();
    return profile_fourier(k, Direction(xi / rho, 1e-9), rho);
  }
  const auto data = polytope_data(k);
  if (!data) throw NumericError("indicator_ft: polytope cubature needs N <= 6");
  return polytope_ft(*data, xi);
}

BandlimitedFunction extremal_rho_function(const ConvexBody& k, int grid_per_axis) {
  const int g = grid_per_axis;
  if (g < 2) throw ValidationError("extremal_rho_function: grid_per_axis must be >= 2");
  const int n = k.dim();
  Vec half(n);
  for (int i = 0; i < n; ++i) half[i] = support(k, Vec::Unit(n, i));
  const Vec step = 2.0 * half / g;
  const Vec lo = -half;
  const auto flags = kernels::cell_flags(k, lo, step, g);
  BandlimitedFunction f{k, {}, {}, step.prod(), 0.5 * step, {}};
  const double density = 1.0 / volume(k).value;
  for (std::size_t c = 0; c < flags.size(); ++c) {
    if (!flags[c]) continue;
    Eigen::VectorXi idx(n);
    long rest = static_cast<long>(c);
    for (int i = 0; i < n; ++i) {
      const int cell = static_cast<int>(rest % g);
      rest /= g;
      if (flags[c] == 1) {
        idx[i] = 2 * cell + 1 - g;
      } else {
        const int a = 2 * cell - g;  // half-step coordinates of the cell faces
        const int b = a + 2;
        idx[i] = std::clamp(0, a, b);
      }
    }
    f.freq_nodes.push_back(idx.cast<double>().cwiseProduct(f.half_step));
    f.lattice_index.push_back(idx);
    f.weights.emplace_back(density, 0.0);
  }
  if (f.freq_nodes.empty()) throw NumericError("extremal_rho_function: no grid node inside K");
  return f;
}

Complex evaluate(const BandlimitedFunction& f, const Vec& x) {
  require_dim(x, f.spectrum_body.dim(), "evaluate");
  Mat pts(x.size(), 1);
  pts.col(0) = x;
  Mat nodes(x.size(), f.freq_nodes.size());
  for (std::size_t j = 0; j < f.freq_nodes.size(); ++j) nodes.col(j) = f.freq_nodes[j];
  return kernels::exp_sums_serial(nodes, f.weights, pts, f.cell_measure)[0];
}

std::vector<Complex> evaluate_many(const BandlimitedFunction& f, const Mat& points) {
  if (points.rows() != f.spectrum_body.dim()) throw ValidationError("evaluate_many: dimension mismatch");
  Mat nodes(points.rows(), f.freq_nodes.size());
  for (std::size_t j = 0; j < f.freq_nodes.size(); ++j) nodes.col(j) = f.freq_nodes[j];
  return kernels::exp_sums(nodes, f.weights, points, f.cell_measure);
}

double parseval_norm_sq(const BandlimitedFunction& f) {
  double s = 0.0;
  for (const auto& w : f.weights) s += std::norm(w);
  return s * f.cell_measure;
}

double spatial_norm_sq(const BandlimitedFunction& f, double half_width, double step) {
  if (f.half_step.size() == 0 || f.lattice_index.size() != f.freq_nodes.size()) {
    throw ValidationError("spatial_norm_sq: nodes must lie on a lattice");
  }
  if (!(half_width > 0.0) || !(step > 0.0)) throw ValidationError("spatial_norm_sq: bad box or step");
  const int n = f.spectrum_body.dim();
  const int pts = static_cast<int>(std::llround(2.0 * half_width / step)) + 1;
  const double tau = 2.0 * half_width / (pts - 1);
  Eigen::VectorXi kmin = f.lattice_index.front();
  Eigen::VectorXi kmax = kmin;
  for (const auto& idx : f.lattice_index) {
    kmin = kmin.cwiseMin(idx);
    kmax = kmax.cwiseMax(idx);
  }
  std::vector<long> dims(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    dims[i] = kmax[i] - kmin[i] + 1;
    total *= dims[i];
  }
  std::vector<Complex> t(total, 0.0);
  for (std::size_t j = 0; j < f.lattice_index.size(); ++j) {
    long off = 0;
    long stride = 1;
    for (int i = 0; i < n; ++i) {
      off += (f.lattice_index[j][i] - kmin[i]) * stride;
      stride *= dims[i];
    }
    t[off] += f.weights[j];
  }
  // mode products: axis i of length dims[i] becomes length pts
  for (int i = 0; i < n; ++i) {
    const long len = dims[i];
    Eigen::MatrixXcd e(pts, len);
    for (int p = 0; p < pts; ++p) {
      const double x = -half_width + p * tau;
      for (long k = 0; k < len; ++k) {
        const double ph = 2.0 * kPi * x * (kmin[i] + k) * f.half_step[i];
        e(p, k) = Complex(std::cos(ph), std::sin(ph));
      }
    }
    long inner = 1;
    for (int j = 0; j < i; ++j) inner *= dims[j];
    long outer = 1;
    for (int j = i + 1; j < n; ++j) outer *= dims[j];
    std::vector<Complex> out(static_cast<std::size_t>(inner) * pts * outer);
#pragma omp parallel for schedule(static)
    for (long o = 0; o < outer; ++o) {
      for (int p = 0; p < pts; ++p) {
        for (long r = 0; r < inner; ++r) {
          Complex s = 0.0;
          for (long k = 0; k < len; ++k) s += e(p, k) * t[r + inner * (k + len * o)];
          out[r + inner * (p + static_cast<long>(pts) * o)] = s;
        }
      }
    }
    t.swap(out);
    dims[i] = pts;
  }
  double s = 0.0;
  for (long c = 0; c < static_cast<long>(t.size()); ++c) {
    double w = 1.0;
    long rest = c;
    for (int i = 0; i < n; ++i) {
      const long p = rest % pts;
      rest /= pts;
      if (p == 0 || p == pts - 1) w *= 0.5;
    }
    s += w * std::norm(t[c]);
  }
  return s * std::pow(tau, n) * f.cell_measure * f.cell_measure;
}

Complex reproducing_kernel(double delta, int n, const Vec& w, const Vec& z) {
  if (!(delta > 0.0)) throw ValidationError("reproducing_kernel: delta must be positive");
  require_dim(w, n, "reproducing_kernel");
  require_dim(z, n, "reproducing_kernel");
  return indicator_ft(ConvexBody::ball(n, delta), z - w);
}

double fejer_1d(double x) {
  if (x == 0.0) return 1.0;
  const double s = sin_pi(x) / (kPi * x);
  return s * s;
}

double fejer_kernel(const Vec& x) {
  double v = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) v *= fejer_1d(x[i]);
  return v;
}

std::vector<ProjectionSliceRow> projection_slice_table(const ConvexBody& k, const Direction& theta,
                                                       const std::vector<double>& r_grid) {
  if (theta.dim() != k.dim()) throw ValidationError("projection_slice_check: dimension mismatch");
  std::vector<ProjectionSliceRow> rows;
  for (double r : r_grid) {
    ProjectionSliceRow row;
    row.r = r;
    row.via_radon = profile_fourier(k, theta, r);
    row.direct = indicator_ft(k, r * theta.vec());
    row.error = std::abs(row.via_radon - row.direct);
    rows.push_back(row);
  }
  return rows;
}

double projection_slice_check(const ConvexBody& k, const Direction& theta, const std::vector<double>& r_grid) {
  double worst = 0.0;
  for (const auto& row : projection_slice_table(k, theta, r_grid)) worst = std::max(worst, row.error);
  return worst;
}

}  // namespace polarkit
