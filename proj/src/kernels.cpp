#include "polarkit/kernels.hpp"

#include "polarkit/rng.hpp"

#include <algorithm>
#include <cmath>

namespace polarkit::kernels {
namespace {

long block_count(long n) { return (n + kBlock - 1) / kBlock; }

long hits_in_block(const ConvexBody& k, const Vec& half_box, long samples, std::uint64_t seed, long b) {
  Rng rng(block_seed(seed, static_cast<std::uint64_t>(b)));
  const long begin = b * kBlock;
  const long end = std::min(samples, begin + kBlock);
  const int n = k.dim();
  Vec x(n);
  long hits = 0;
  for (long s = begin; s < end; ++s) {
    for (int i = 0; i < n; ++i) x[i] = rng.uniform(-half_box[i], half_box[i]);
    if (contains(k, x)) ++hits;
  }
  return hits;
}

Moments moments_in_block(const ConvexBody& k, long n_dirs, std::uint64_t seed, long b) {
  Rng rng(block_seed(seed, static_cast<std::uint64_t>(b)));
  const long begin = b * kBlock;
  const long end = std::min(n_dirs, begin + kBlock);
  const int n = k.dim();
  Moments m;
  for (long s = begin; s < end; ++s) {
    const double v = std::pow(support(k, rng.unit_vec(n)), -n);
    m.sum += v;
    m.sum_sq += v * v;
    ++m.count;
  }
  return m;
}

Moments merge(const std::vector<Moments>& parts) {
  Moments out;
  for (const auto& m : parts) {
    out.sum += m.sum;
    out.sum_sq += m.sum_sq;
    out.count += m.count;
  }
  return out;
}

Complex exp_sum_at(const Mat& nodes, const std::vector<Complex>& weights, const Mat& points, long p,
                   double scale) {
  Complex s = 0.0;
  for (Eigen::Index j = 0; j < nodes.cols(); ++j) {
    const double phase = 2.0 * kPi * points.col(p).dot(nodes.col(j));
    s += weights[j] * Complex(std::cos(phase), std::sin(phase));
  }
  return scale * s;
}

void check_exp_args(const Mat& nodes, const std::vector<Complex>& weights, const Mat& points) {
  if (static_cast<std::size_t>(nodes.cols()) != weights.size()) {
    throw ValidationError("exp_sums: one weight per node required");
  }
  if (nodes.rows() != points.rows()) throw ValidationError("exp_sums: dimension mismatch");
}

char cell_flag(const ConvexBody& k, const Vec& lo, const Vec& step, int g, long c) {
  const int n = k.dim();
  Vec center(n);
  Vec near(n);
  long rest = c;
  for (int i = 0; i < n; ++i) {
    const long idx = rest % g;
    rest /= g;
    const double a = lo[i] + idx * step[i];
    const double b = a + step[i];
    center[i] = a + 0.5 * step[i];
    near[i] = std::clamp(0.0, a, b);
  }
  if (contains(k, center)) return 1;
  if (contains(k, near)) return 2;
  return 0;
}

long cell_total(int dim, int g) {
  const double total = std::pow(static_cast<double>(g), dim);
  if (total > 2e9) throw NumericError("cell_flags: grid too large");
  return static_cast<long>(total);
}

double lattice_block(const std::function<double(const Vec&)>& f, int dim, long radius, long b, long total) {
  const long side = 2 * radius + 1;
  const long begin = b * kBlock;
  const long end = std::min(total, begin + kBlock);
  Vec x(dim);
  double s = 0.0;
  for (long c = begin; c < end; ++c) {
    long rest = c;
    for (int i = 0; i < dim; ++i) {
      x[i] = static_cast<double>(rest % side - radius);
      rest /= side;
    }
    s += f(x);
  }
  return s;
}

long lattice_total(int dim, long radius) {
  const double total = std::pow(2.0 * radius + 1.0, dim);
  if (total > 4e9) throw NumericError("lattice_sum: too many lattice points");
  return static_cast<long>(total);
}

}  // namespace

long mc_hits(const ConvexBody& k, const Vec& half_box, long samples, std::uint64_t seed) {
  const long nb = block_count(samples);
  std::vector<long> parts(nb, 0);
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < nb; ++b) parts[b] = hits_in_block(k, half_box, samples, seed, b);
  long hits = 0;
  for (long h : parts) hits += h;
  return hits;
}

long mc_hits_serial(const ConvexBody& k, const Vec& half_box, long samples, std::uint64_t seed) {
  long hits = 0;
  for (long b = 0; b < block_count(samples); ++b) hits += hits_in_block(k, half_box, samples, seed, b);
  return hits;
}

Moments inverse_support_moments(const ConvexBody& k, long n_dirs, std::uint64_t seed) {
  const long nb = block_count(n_dirs);
  std::vector<Moments> parts(nb);
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < nb; ++b) parts[b] = moments_in_block(k, n_dirs, seed, b);
  return merge(parts);
}

Moments inverse_support_moments_serial(const ConvexBody& k, long n_dirs, std::uint64_t seed) {
  std::vector<Moments> parts;
  for (long b = 0; b < block_count(n_dirs); ++b) parts.push_back(moments_in_block(k, n_dirs, seed, b));
  return merge(parts);
}

std::vector<Complex> exp_sums(const Mat& nodes, const std::vector<Complex>& weights, const Mat& points,
                              double scale) {
  check_exp_args(nodes, weights, points);
  std::vector<Complex> out(points.cols());
#pragma omp parallel for schedule(static)
  for (long p = 0; p < static_cast<long>(points.cols()); ++p)
    out[p] = exp_sum_at(nodes, weights, points, p, scale);
  return out;
}

std::vector<Complex> exp_sums_serial(const Mat& nodes, const std::vector<Complex>& weights,
                                     const Mat& points, double scale) {
  check_exp_args(nodes, weights, points);
  std::vector<Complex> out(points.cols());
  for (long p = 0; p < static_cast<long>(points.cols()); ++p)
    out[p] = exp_sum_at(nodes, weights, points, p, scale);
  return out;
}

std::vector<char> cell_flags(const ConvexBody& k, const Vec& lo, const Vec& step, int g) {
  const long total = cell_total(k.dim(), g);
  std::vector<char> flags(total);
#pragma omp parallel for schedule(static)
  for (long c = 0; c < total; ++c) flags[c] = cell_flag(k, lo, step, g, c);
  return flags;
}

std::vector<char> cell_flags_serial(const ConvexBody& k, const Vec& lo, const Vec& step, int g) {
  const long total = cell_total(k.dim(), g);
  std::vector<char> flags(total);
  for (long c = 0; c < total; ++c) flags[c] = cell_flag(k, lo, step, g, c);
  return flags;
}

double lattice_sum(const std::function<double(const Vec&)>& f, int dim, long radius) {
  const long total = lattice_total(dim, radius);
  const long nb = block_count(total);
  std::vector<double> parts(nb, 0.0);
#pragma omp parallel for schedule(dynamic)
  for (long b = 0; b < nb; ++b) parts[b] = lattice_block(f, dim, radius, b, total);
  double s = 0.0;
  for (double v : parts) s += v;
  return s;
}

double lattice_sum_serial(const std::function<double(const Vec&)>& f, int dim, long radius) {
  const long total = lattice_total(dim, radius);
  double s = 0.0;
  for (long b = 0; b < block_count(total); ++b) s += lattice_block(f, dim, radius, b, total);
  return s;
}

}  // namespace polarkit::kernels
