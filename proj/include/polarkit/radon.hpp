#pragma once

#include "polarkit/body.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace polarkit {

/// S_K(t, theta) sampled on a uniform grid over [-h, h], h = h_K(theta).
struct RadonProfile {
  Direction theta;
  double h = 0.0;
  std::vector<double> t;
  std::vector<double> values;
  std::optional<std::string> closed_form;  // "ball" when the closed form was used
};

/// (N-1)-volume of { x in K : x.theta = t }; 0 for |t| >= h_K(theta).
double radon(const ConvexBody& k, const Direction& theta, double t);

RadonProfile radon_profile(const ConvexBody& k, const Direction& theta, int n_samples);

/// Heights v.theta of the vertices in [-h, h] (polytopal bodies only): the
/// profile is a polynomial of degree N-1 between consecutive heights.
std::vector<double> profile_breakpoints(const ConvexBody& k, const Direction& theta);

/// int_a^b w(t) S_K(t, theta) dt for [a, b] inside [-h, h]; w = 1 when empty.
double integrate_profile(const ConvexBody& k, const Direction& theta, double a, double b,
                         const std::function<double(double)>& w = {});

/// int S_K(t, theta) exp(-2 pi i r t) dt over [-h, h] (panels of at most half
/// a period).
Complex profile_fourier(const ConvexBody& k, const Direction& theta, double r);

/// D_K(t, theta) = int_{t h}^{h} S_K(r, theta) dr, t in [0, 1].
double section_tail(const ConvexBody& k, const Direction& theta, double t);

/// section_tail at every fraction of an increasing grid in [0, 1], computed
/// cumulatively from the top.
std::vector<double> section_tails(const ConvexBody& k, const Direction& theta,
                                  const std::vector<double>& fractions);

/// Section tail of a ball-shaped profile with total volume vol_k:
/// (kappa_{N-1} vol_k / kappa_N) int_t^1 (1 - s^2)^{(N-1)/2} ds.
double ball_tail_reference(int n, double t, double vol_k);

}  // namespace polarkit
