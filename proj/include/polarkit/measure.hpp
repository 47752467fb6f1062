#pragma once

#include "polarkit/body.hpp"

#include <cstdint>
#include <string>

namespace polarkit {

enum class VolumeMethod { exact, monte_carlo, quadrature };

std::string to_string(VolumeMethod m);

struct VolumeEstimate {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::exact;
  double std_error = 0.0;  // 0 for exact
  std::uint64_t seed = 0;  // monte_carlo only
  long sample_count = 0;
};

struct VolumeOptions {
  long mc_samples = 1'000'000;  // used only when no exact formula applies
  std::uint64_t seed = 1;
};

struct VolumeProductReport {
  VolumeEstimate vol_k;
  VolumeEstimate vol_polar;
  double product = 0.0;
  double reference_product = 0.0;  // product for the Euclidean ball
  double ratio = 0.0;
  double rel_error = 0.0;  // combined relative standard error of the product
};

/// Exact volume where a closed form or the polytope recursion applies,
/// otherwise Monte Carlo.
VolumeEstimate volume(const ConvexBody& k, const VolumeOptions& opts = {});

/// Rejection sampling in the bounding box [-h_K(e_i), h_K(e_i)].
VolumeEstimate volume_mc(const ConvexBody& k, long samples, std::uint64_t seed);

VolumeProductReport volume_product(const ConvexBody& k, const VolumeOptions& opts = {});

/// vol(K*) = vol(B) * mean over the sphere of h_K(theta)^{-N}.
VolumeEstimate polar_volume_polar_integral(const ConvexBody& k, long n_dirs, std::uint64_t seed);

/// Surface area of the unit sphere S^{N-1}: 2 pi^{N/2} / Gamma(N/2).
double sphere_surface_area(int n);

/// Volume product of the Euclidean unit ball in R^N.
double ball_volume_product(int n);

}  // namespace polarkit
