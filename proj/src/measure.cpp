#include "polarkit/measure.hpp"

#include "polarkit/kernels.hpp"

#include <cmath>

namespace polarkit {
namespace {

VolumeEstimate exact(double v) {
  VolumeEstimate e;
  e.value = v;
  e.method = VolumeMethod::exact;
  return e;
}

VolumeEstimate scaled(VolumeEstimate e, double factor) {
  e.value *= factor;
  e.std_error *= factor;
  return e;
}

double lp_ball_volume(int n, double p, double r) {
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return std::pow(2.0 * r * std::tgamma(inv_p + 1.0), n) / std::tgamma(n * inv_p + 1.0);
}

double rel(const VolumeEstimate& e) { return e.value > 0.0 ? e.std_error / e.value : 0.0; }

}  // namespace

std::string to_string(VolumeMethod m) {
  switch (m) {
    case VolumeMethod::exact:
      return "exact";
    case VolumeMethod::monte_carlo:
      return "monte_carlo";
    case VolumeMethod::quadrature:
      return "quadrature";
  }
  return "unknown";
}

VolumeEstimate volume(const ConvexBody& k, const VolumeOptions& opts) {
  const int n = k.dim();
  if (const auto* b = k.as<Ball>()) return exact(unit_ball_volume(n) * std::pow(b->radius, n));
  if (const auto* e = k.as<Ellipsoid>()) return exact(unit_ball_volume(n) * e->factor_det);
  if (const auto* l = k.as<LpBall>()) return exact(lp_ball_volume(n, l->p, l->radius));
  if (const auto* li = k.as<LinearImage>()) return scaled(volume(*li->base, opts), li->abs_det);
  if (const auto data = polytope_data(k)) return exact(polytope_volume(*data));
  return volume_mc(k, opts.mc_samples, opts.seed);
}

VolumeEstimate volume_mc(const ConvexBody& k, long samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("volume_mc: samples must be >= 1");
  const int n = k.dim();
  Vec half(n);
  for (int i = 0; i < n; ++i) half[i] = support(k, Vec::Unit(n, i));
  const double box = (2.0 * half).prod();
  const long hits = kernels::mc_hits(k, half, samples, seed);
  const double phat = static_cast<double>(hits) / static_cast<double>(samples);
  VolumeEstimate e;
  e.value = box * phat;
  e.method = VolumeMethod::monte_carlo;
  e.std_error = box * std::sqrt(phat * (1.0 - phat) / static_cast<double>(samples));
  e.seed = seed;
  e.sample_count = samples;
  return e;
}

VolumeProductReport volume_product(const ConvexBody& k, const VolumeOptions& opts) {
  VolumeProductReport r;
  r.vol_k = volume(k, opts);
  VolumeOptions polar_opts = opts;
  polar_opts.seed = opts.seed ^ 0x5bd1e995ULL;
  r.vol_polar = volume(polar(k), polar_opts);
  r.product = r.vol_k.value * r.vol_polar.value;
  r.reference_product = ball_volume_product(k.dim());
  r.ratio = r.product / r.reference_product;
  r.rel_error = std::hypot(rel(r.vol_k), rel(r.vol_polar));
  return r;
}

VolumeEstimate polar_volume_polar_integral(const ConvexBody& k, long n_dirs, std::uint64_t seed) {
  if (n_dirs < 2) throw ValidationError("polar_volume_polar_integral: n_dirs must be >= 2");
  const auto m = kernels::inverse_support_moments(k, n_dirs, seed);
  const double count = static_cast<double>(m.count);
  const double mean = m.sum / count;
  const double var = std::max(0.0, (m.sum_sq - count * mean * mean) / (count - 1.0));
  const double kappa = unit_ball_volume(k.dim());
  VolumeEstimate e;
  e.value = kappa * mean;
  e.method = VolumeMethod::monte_carlo;
  e.std_error = kappa * std::sqrt(var / count);
  e.seed = seed;
  e.sample_count = n_dirs;
  return e;
}

double sphere_surface_area(int n) {
  if (n < 1) throw ValidationError("sphere_surface_area: N must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double ball_volume_product(int n) {
  const double v = unit_ball_volume(n);
  return v * v;
}

}  // namespace polarkit
