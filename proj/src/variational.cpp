#include "polarkit/variational.hpp"

#include "polarkit/kernels.hpp"
#include "polarkit/lp.hpp"
#include "polarkit/measure.hpp"
#include "polarkit/quadrature.hpp"
#include "polarkit/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>

namespace polarkit {
namespace {

constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

double radical_inverse(long i, int base) {
  double f = 1.0;
  double r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

// Halton points in [0,1)^n with a random shift mod 1.
Mat shifted_halton(int n, long count, std::uint64_t seed) {
  if (n > static_cast<int>(std::size(kPrimes))) throw ValidationError("halton: dimension too large");
  Rng rng(seed);
  Vec shift(n);
  for (int i = 0; i < n; ++i) shift[i] = rng.uniform();
  Mat pts(n, count);
  for (long k = 0; k < count; ++k) {
    for (int i = 0; i < n; ++i) {
      const double u = radical_inverse(k + 1, kPrimes[i]) + shift[i];
      pts(i, k) = u - std::floor(u);
    }
  }
  return pts;
}

// Neumaier summation.
class Summer {
 public:
  void add(double x) {
    const double t = s_ + x;
    c_ += std::abs(s_) >= std::abs(x) ? (s_ - t) + x : (x - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

// int_R (sin pi x / pi x)^2 dx by unit Gauss-Legendre panels on [0, L] and the
// asymptotic tail 1/(2 pi^2 L) - 1/(4 pi^4 L^3).
double fejer_integral_1d() {
  static const double value = [] {
    const int len = 10000;
    const auto& rule = gauss_legendre(20);
    Summer s;
    for (int p = 0; p < len; ++p) s.add(gauss_panel(fejer_1d, p, p + 1.0, rule));
    const double l = len;
    s.add(1.0 / (2.0 * kPi * kPi * l) - 1.0 / (4.0 * std::pow(kPi, 4) * l * l * l));
    return 2.0 * s.value();
  }();
  return value;
}

long ipow(long b, int e) {
  long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Complex horner(const std::vector<double>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

Complex horner_derivative(const std::vector<double>& c, Complex z) {
  Complex v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * z + static_cast<double>(k) * c[k];
  return v;
}

}  // namespace

std::string to_string(Quantity q) { return q == Quantity::rho ? "rho" : "eta"; }

std::string to_string(Certificate c) {
  switch (c) {
    case Certificate::constant_density: return "constant_density";
    case Certificate::fejer_product: return "fejer_product";
    case Certificate::kernel_square: return "kernel_square";
    case Certificate::lp_solution: return "lp_solution";
    case Certificate::poisson_dual: return "poisson_dual";
  }
  return "unknown";
}

ExtremalEstimate rho_solve(const ConvexBody& k, int grid_per_axis, std::uint64_t seed) {
  const auto f = extremal_rho_function(k, grid_per_axis);
  const long m = static_cast<long>(f.freq_nodes.size());
  const double delta = f.cell_measure;
  const double closed = 1.0 / (m * delta);

  // gradient step 0.25 / Delta halves every weight; the projection moves along
  // the all-ones direction back to |sum g Delta| = 1 keeping the phase
  Rng rng(seed);
  std::vector<Complex> g(m);
  for (auto& w : g) w = Complex(rng.normal(), rng.normal());
  double value = 0.0;
  int iters = 0;
  for (; iters < 1000; ++iters) {
    Complex s = 0.0;
    for (auto& w : g) {
      w *= 0.5;
      s += w;
    }
    s *= delta;
    if (std::abs(s) < 1.0) {
      const Complex target = std::abs(s) > 0.0 ? s / std::abs(s) : Complex(1.0, 0.0);
      const Complex c = (target - s) / (m * delta);
      for (auto& w : g) w += c;
    }
    double v = 0.0;
    for (const auto& w : g) v += std::norm(w);
    v *= delta;
    const bool done = iters > 0 && std::abs(v - value) <= 1e-16 * v;
    value = v;
    if (done) break;
  }
  Complex f0 = 0.0;
  for (const auto& w : g) f0 += w;
  f0 *= delta;
  if (std::abs(value - closed) > 1e-10 * closed) {
    throw NumericError("rho_solve: iterative and closed-form solutions disagree");
  }
  const double vol = volume(k).value;
  ExtremalEstimate e;
  e.quantity = Quantity::rho;
  e.upper = closed;
  e.conjectured_or_exact = 1.0 / vol;
  e.grid_spec = {grid_per_axis, 0};
  e.certificate = Certificate::constant_density;
  e.seed = seed;
  e.diagnostics = {{"iterative_value", value},
                   {"iterations", iters},
                   {"node_count", static_cast<double>(m)},
                   {"cell_measure", delta},
                   {"covered_volume", m * delta},
                   {"covered_fraction", m * delta / vol},
                   {"f_at_zero", std::abs(f0)},
                   {"value_times_volume", closed * vol}};
  return e;
}

RhoConvergence rho_convergence(const ConvexBody& k, const std::vector<int>& grids) {
  if (grids.empty()) throw ValidationError("rho_convergence: empty grid list");
  const double vol = volume(k).value;
  RhoConvergence out;
  double num = 0.0;
  double den = 0.0;
  for (int g : grids) {
    const auto e = rho_solve(k, g);
    RhoConvergenceRow row;
    row.grid = g;
    row.value = e.upper;
    row.value_times_volume = e.upper * vol;
    row.rel_error = std::abs(row.value_times_volume - 1.0);
    num += row.rel_error / g;
    den += 1.0 / (static_cast<double>(g) * g);
    out.rows.push_back(row);
  }
  out.fitted_c = num / den;
  return out;
}

ExtremalEstimate eta_upper_cube(int n) {
  if (n < 1) throw ValidationError("eta_upper_cube: N must be >= 1");
  const double i1 = fejer_integral_1d();
  const long samples = 100000;
  const Mat pts = shifted_halton(std::min(n, 12), samples, 17);
  double lo = 1.0;
  for (long s = 0; s < samples; ++s) lo = std::min(lo, fejer_kernel(16.0 * pts.col(s).array() - 8.0));
  ExtremalEstimate e;
  e.quantity = Quantity::eta;
  e.upper = std::pow(i1, n);
  e.conjectured_or_exact = std::pow(2.0, n) / volume(ConvexBody::cube(n)).value;
  e.grid_spec = {0, samples};
  e.certificate = Certificate::fejer_product;
  e.diagnostics = {{"f_at_zero", fejer_kernel(Vec::Zero(n))}, {"min_sampled", lo}, {"integral_1d", i1}};
  return e;
}

AdmissibleFunction AdmissibleFunction::fejer(int n, double amplitude) {
  if (n < 1) throw ValidationError("fejer: N must be >= 1");
  AdmissibleFunction f;
  f.dim = n;
  f.value = [amplitude](const Vec& x) { return amplitude * fejer_kernel(x); };
  f.spectrum_half_width = 1.0;
  f.vanishes_on_boundary = true;
  f.factors.push_back([amplitude](double x) { return amplitude * fejer_1d(x); });
  for (int i = 1; i < n; ++i) f.factors.push_back(fejer_1d);
  f.envelope = std::max(1.0, amplitude) / (kPi * kPi);
  return f;
}

PoissonWitness eta_lower_poisson(const ConvexBody& k, const AdmissibleFunction& f, long truncation_radius) {
  const int n = k.dim();
  if (f.dim != n) throw ValidationError("eta_lower_poisson: dimension mismatch");
  if (truncation_radius < 1) throw ValidationError("eta_lower_poisson: truncation radius must be >= 1");
  for (int i = 0; i < n; ++i) {
    if (support(k, Vec::Unit(n, i)) > 1.0 + 1e-12) throw ValidationError("eta_lower_poisson: K must lie in [-1,1]^N");
  }
  if (f.spectrum_half_width > 1.0) throw ValidationError("eta_lower_poisson: spectrum leaves the cube [-1,1]^N");
  if (f.spectrum_half_width == 1.0 && !f.vanishes_on_boundary) {
    throw ValidationError("eta_lower_poisson: spectrum touches the closed cube boundary");
  }
  if (!f.factors.empty() && static_cast<int>(f.factors.size()) != n) {
    throw ValidationError("eta_lower_poisson: one factor per coordinate required");
  }
  const double f0 = f.value(Vec::Zero(n));
  if (f0 < 1.0 - 1e-12) throw ValidationError("eta_lower_poisson: F(0) < 1");
  const long samples = 10000;
  const double box = std::min<double>(static_cast<double>(truncation_radius), 50.0);
  const Mat pts = shifted_halton(std::min(n, 12), samples, 23);
  for (long s = 0; s < samples; ++s) {
    if (f.value(2.0 * box * pts.col(s).array() - box) < -1e-10 * f0) {
      throw ValidationError("eta_lower_poisson: F takes negative values");
    }
  }
  PoissonWitness w;
  w.value_at_zero = f0;
  w.radius = truncation_radius;
  const long r = truncation_radius;
  if (!f.factors.empty()) {
    double prod = 1.0;
    double bound = 1.0;
    for (const auto& fi : f.factors) {
      Summer s;
      for (long j = -r; j <= r; ++j) s.add(fi(static_cast<double>(j)));
      prod *= s.value();
      bound *= std::abs(s.value()) + 2.0 * f.envelope / r;
    }
    w.lattice_sum = prod;
    w.remainder_bound = bound - std::abs(prod);
  } else {
    w.lattice_sum = kernels::lattice_sum(f.value, n, r);
    w.remainder_bound = f.envelope * 2.0 * n * std::pow(3.0, n - 1) / r;
  }
  return w;
}

ExtremalEstimate eta_cube_sandwich(int n, long truncation_radius) {
  auto e = eta_upper_cube(n);
  const auto w = eta_lower_poisson(ConvexBody::cube(n), AdmissibleFunction::fejer(n), truncation_radius);
  e.lower = w.lattice_sum;
  e.lower_certificate = Certificate::poisson_dual;
  e.grid_spec[0] = truncation_radius;
  e.diagnostics["lattice_sum"] = w.lattice_sum;
  e.diagnostics["remainder_bound"] = w.remainder_bound;
  e.diagnostics["gap"] = e.upper - w.lattice_sum;
  return e;
}

ExtremalEstimate eta_upper_ball(int n, int grid_per_axis) {
  if (n < 1) throw ValidationError("eta_upper_ball: N must be >= 1");
  if (grid_per_axis < 2) throw ValidationError("eta_upper_ball: grid_per_axis must be >= 2");
  const double delta = 0.5;
  const Vec zero = Vec::Zero(n);
  const double k00 = reproducing_kernel(delta, n, zero, zero).real();
  auto v = [&](double r) {
    Vec z = Vec::Zero(n);
    z[0] = r;
    return reproducing_kernel(delta, n, zero, z).real() / k00;
  };
  const auto& rule = gauss_legendre(16);
  Summer s;
  const double rmax = grid_per_axis;
  for (int p = 0; p < grid_per_axis; ++p) {
    s.add(gauss_panel([&](double r) { const double x = v(r); return x * x * std::pow(r, n - 1); }, p, p + 1.0, rule));
  }
  // |V(r)|^2 r^{N-1} ~ c0^2 / (pi^2 r^2) on average
  const double c0 = std::pow(delta, 0.5 * n) / k00;
  const double omega = sphere_surface_area(n);
  const double spatial = omega * (s.value() + c0 * c0 / (kPi * kPi * rmax));
  ExtremalEstimate e;
  e.quantity = Quantity::eta;
  e.upper = 1.0 / k00;
  e.conjectured_or_exact = std::pow(2.0, n) / unit_ball_volume(n);
  e.grid_spec = {grid_per_axis, static_cast<long>(grid_per_axis) * 16};
  e.certificate = Certificate::kernel_square;
  e.diagnostics = {{"kernel_at_origin", k00},
                   {"kernel_radius", delta},
                   {"f_at_zero", v(0.0) * v(0.0)},
                   {"spatial_quadrature", spatial},
                   {"spatial_rel_diff", std::abs(spatial - e.upper) / e.upper}};
  return e;
}

ExtremalEstimate eta_lp_probe(const ConvexBody& k, int freq_grid, long space_samples, double space_radius,
                              std::uint64_t seed) {
  const int n = k.dim();
  if (freq_grid < 2) throw ValidationError("eta_lp_probe: freq_grid must be >= 2");
  if (space_samples < 0) throw ValidationError("eta_lp_probe: space_samples must be >= 0");
  if (space_radius < 0.0) throw ValidationError("eta_lp_probe: space_radius must be >= 0");
  Vec half(n);
  for (int i = 0; i < n; ++i) half[i] = support(k, Vec::Unit(n, i));
  const double h = half.minCoeff() / freq_grid;

  // nodes j h whose hat support j h + [-h, h]^N lies in K
  std::vector<int> range(n);
  long total = 1;
  for (int i = 0; i < n; ++i) {
    range[i] = static_cast<int>(std::floor(half[i] / h + 1e-9)) - 1;
    total *= 2 * range[i] + 1;
  }
  std::vector<Eigen::VectorXi> nodes;
  for (long c = 0; c < total; ++c) {
    Eigen::VectorXi j(n);
    long rest = c;
    for (int i = 0; i < n; ++i) {
      j[i] = static_cast<int>(rest % (2 * range[i] + 1)) - range[i];
      rest /= 2 * range[i] + 1;
    }
    bool inside = true;
    for (int mask = 0; mask < (1 << n) && inside; ++mask) {
      Vec corner(n);
      for (int i = 0; i < n; ++i) corner[i] = h * (j[i] + ((mask >> i & 1) ? 1.0 : -1.0));
      inside = contains(k, corner);
    }
    if (inside) nodes.push_back(j);
  }

  // cosine classes {j, -j}; class 0 is the origin
  auto positive = [](const Eigen::VectorXi& j) {
    for (int i = 0; i < j.size(); ++i) {
      if (j[i] != 0) return j[i] > 0;
    }
    return true;
  };
  std::vector<Eigen::VectorXi> reps;
  std::vector<int> mult;
  reps.push_back(Eigen::VectorXi::Zero(n));
  mult.push_back(1);
  for (const auto& j : nodes) {
    if (j.isZero() || !positive(j)) continue;
    reps.push_back(j);
    mult.push_back(2);
  }
  const int nc = static_cast<int>(reps.size());

  // constraint points
  std::vector<Vec> pts;
  const double period = 1.0 / h;
  const double lo = space_radius > 0.0 ? -space_radius : 0.0;
  const double width = space_radius > 0.0 ? 2.0 * space_radius : period;
  const Mat hal = shifted_halton(n, space_samples, seed);
  for (long s = 0; s < space_samples; ++s) pts.push_back(lo + width * hal.col(s).array());
  const int g = 2 * freq_grid;
  for (long c = 0; c < ipow(g, n); ++c) {
    Vec x(n);
    long rest = c;
    for (int i = 0; i < n; ++i) {
      x[i] = period * static_cast<double>(rest % g) / g;
      rest /= g;
    }
    pts.push_back(x);
  }
  const long cell = static_cast<long>(std::ceil(period));
  if (ipow(cell, n) <= 4096) {
    for (long c = 0; c < ipow(cell, n); ++c) {
      Vec x(n);
      long rest = c;
      for (int i = 0; i < n; ++i) {
        x[i] = static_cast<double>(rest % cell);
        rest /= cell;
      }
      pts.push_back(x);
    }
  }
  const long ns = static_cast<long>(pts.size());

  // min y_0 s.t. P(x_s) >= -eps_s, h^N sum |c| y_c >= 1 with y free; the
  // tiny random eps_s break the degeneracy of the homogeneous rows
  Mat a(ns + 1, nc);
  Vec rhs(ns + 1);
  Rng perturb(seed ^ 0x2545f4914f6cdd1dULL);
  for (long s = 0; s < ns; ++s) {
    for (int c = 0; c < nc; ++c) {
      a(s, c) = -mult[c] * std::cos(2.0 * kPi * h * reps[c].cast<double>().dot(pts[s]));
    }
    rhs[s] = 1e-10 * (1.0 + perturb.uniform());
  }
  for (int c = 0; c < nc; ++c) a(ns, c) = -std::pow(h, n) * mult[c];
  rhs[ns] = -1.0;
  const Vec obj = -Vec::Unit(nc, 0);
  const auto res = solve_lp_free(a, rhs, obj);
  if (res.status != LpStatus::optimal) {
    throw NumericError("eta_lp_probe: linear program did not reach optimality (status " +
                       std::to_string(static_cast<int>(res.status)) + ")");
  }
  const Vec y = res.x;

  // fresh check points over the same region
  const long checks = 100000;
  const Mat chk = shifted_halton(n, checks, seed ^ 0x9e3779b97f4a7c15ULL);
  Mat freq(n, nodes.size());
  std::vector<Complex> wts(nodes.size());
  std::map<std::vector<int>, int> cls;
  for (int c = 0; c < nc; ++c) cls[std::vector<int>(reps[c].data(), reps[c].data() + n)] = c;
  for (std::size_t q = 0; q < nodes.size(); ++q) {
    Eigen::VectorXi j = positive(nodes[q]) ? nodes[q] : Eigen::VectorXi(-nodes[q]);
    freq.col(q) = h * nodes[q].cast<double>();
    wts[q] = y[cls.at(std::vector<int>(j.data(), j.data() + n))];
  }
  Mat cpts(n, checks);
  for (long s = 0; s < checks; ++s) cpts.col(s) = lo + width * chk.col(s).array();
  const auto vals = kernels::exp_sums(freq, wts, cpts, 1.0);
  double p0 = 0.0;
  for (const auto& w : wts) p0 += w.real();
  double pmin = p0;
  for (const auto& v : vals) pmin = std::min(pmin, v.real());

  ExtremalEstimate e;
  e.quantity = Quantity::eta;
  e.upper = y[0];
  e.conjectured_or_exact = std::pow(2.0, n) / volume(k).value;
  e.grid_spec = {freq_grid, ns};
  e.certificate = Certificate::lp_solution;
  e.seed = seed;
  e.probe = true;
  e.diagnostics = {{"lp_value", -res.value},
                   {"node_spacing", h},
                   {"node_count", static_cast<double>(nodes.size())},
                   {"classes", nc},
                   {"constraints", static_cast<double>(ns + 1)},
                   {"f_at_zero", std::pow(h, n) * p0},
                   {"min_check_ratio", p0 > 0.0 ? pmin / p0 : 0.0},
                   {"space_radius", space_radius},
                   {"gap_to_conjecture", y[0] - e.conjectured_or_exact}};
  return e;
}

double cosine_poly(const std::vector<double>& a, double t) {
  double v = a.empty() ? 0.0 : a[0];
  for (std::size_t k = 1; k < a.size(); ++k) v += a[k] * std::cos(2.0 * kPi * static_cast<double>(k) * t);
  return v;
}

double factor_square(const std::vector<Complex>& u, double t) {
  Complex v = 0.0;
  const Complex w = std::polar(1.0, 2.0 * kPi * t);
  for (std::size_t k = u.size(); k-- > 0;) v = v * w + u[k];
  return std::norm(v);
}

std::vector<Complex> fejer_riesz_1d(const std::vector<double>& cosine_coeffs) {
  std::vector<double> a = cosine_coeffs;
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  if (a.empty()) throw ValidationError("fejer_riesz_1d: zero polynomial");
  double scale = 0.0;
  for (double x : a) {
    if (!std::isfinite(x)) throw ValidationError("fejer_riesz_1d: non-finite coefficient");
    scale += std::abs(x);
  }
  const double tol = std::max(1e-12, 1e-12 * scale);
  for (int i = 0; i < 10000; ++i) {
    if (cosine_poly(a, i / 10000.0) < -tol) throw ValidationError("fejer_riesz_1d: polynomial takes negative values");
  }
  const int d = static_cast<int>(a.size()) - 1;
  if (d == 0) return {Complex(std::sqrt(a[0]), 0.0)};

  // w^d F = sum c_k w^k, palindromic of degree 2d
  std::vector<double> c(2 * d + 1, 0.0);
  c[d] = a[0];
  for (int k = 1; k <= d; ++k) c[d + k] = c[d - k] = 0.5 * a[k];
  Mat comp = Mat::Zero(2 * d, 2 * d);
  for (int i = 1; i < 2 * d; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < 2 * d; ++i) comp(i, 2 * d - 1) = -c[i] / c[2 * d];
  Eigen::EigenSolver<Mat> es(comp, false);
  if (es.info() != Eigen::Success) throw NumericError("fejer_riesz_1d: root finding failed");
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + 2 * d);
  for (auto& r : roots) {
    for (int it = 0; it < 4; ++it) {
      const Complex q = horner(c, r);
      const Complex dq = horner_derivative(c, r);
      if (dq == 0.0) break;
      const Complex next = r - q / dq;
      if (std::abs(horner(c, next)) >= std::abs(q)) break;
      r = next;
    }
  }

  const double ring = 1e-6;
  std::vector<Complex> chosen;
  std::vector<Complex> circle;
  for (const auto& r : roots) {
    if (std::abs(r) < 1.0 - ring) {
      chosen.push_back(r);
    } else if (std::abs(r) <= 1.0 + ring) {
      circle.push_back(r);
    }
  }
  std::sort(circle.begin(), circle.end(), [](Complex x, Complex y) { return std::arg(x) < std::arg(y); });
  std::vector<bool> used(circle.size(), false);
  for (std::size_t i = 0; i < circle.size(); ++i) {
    if (used[i]) continue;
    std::size_t best = circle.size();
    for (std::size_t j = i + 1; j < circle.size(); ++j) {
      if (!used[j] && (best == circle.size() || std::abs(circle[j] - circle[i]) < std::abs(circle[best] - circle[i]))) {
        best = j;
      }
    }
    if (best == circle.size()) throw NumericError("fejer_riesz_1d: unpaired root on the unit circle");
    used[i] = used[best] = true;
    const Complex mid = 0.5 * (circle[i] + circle[best]);
    chosen.push_back(mid / std::abs(mid));
  }
  if (static_cast<int>(chosen.size()) != d) throw NumericError("fejer_riesz_1d: root count mismatch");

  std::vector<Complex> p{1.0};
  for (const auto& r : chosen) {
    std::vector<Complex> next(p.size() + 1, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + 1] += p[k];
      next[k] -= r * p[k];
    }
    p.swap(next);
  }
  double norm2 = 0.0;
  for (const auto& x : p) norm2 += std::norm(x);
  const double lambda = std::sqrt(a[0] / norm2);
  for (auto& x : p) x *= lambda;
  return p;
}

}  // namespace polarkit
