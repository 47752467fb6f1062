#pragma once

// Data-parallel inner loops. Each kernel has an OpenMP version and a serial
// reference with identical results: work is split into fixed-size blocks,
// every block draws from its own seed, and per-block partial results are
// combined in block order, so the output does not depend on the thread count.

#include "polarkit/body.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace polarkit::kernels {

inline constexpr long kBlock = 1L << 14;

/// Number of uniform samples from the box prod [-half_box_i, half_box_i] that
/// fall inside K.
long mc_hits(const ConvexBody& k, const Vec& half_box, long samples, std::uint64_t seed);
long mc_hits_serial(const ConvexBody& k, const Vec& half_box, long samples, std::uint64_t seed);

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  long count = 0;
};

/// Sum and sum of squares of h_K(theta)^{-N} over uniform random directions.
Moments inverse_support_moments(const ConvexBody& k, long n_dirs, std::uint64_t seed);
Moments inverse_support_moments_serial(const ConvexBody& k, long n_dirs, std::uint64_t seed);

/// out_p = scale * sum_j w_j exp(2 pi i x_p . xi_j). nodes is N x M, points N x P.
std::vector<Complex> exp_sums(const Mat& nodes, const std::vector<Complex>& weights, const Mat& points,
                              double scale);
std::vector<Complex> exp_sums_serial(const Mat& nodes, const std::vector<Complex>& weights,
                                     const Mat& points, double scale);

/// Membership flags for the g^N cells of the grid with lower corner `lo` and
/// cell widths `step`: cell kept iff its center or its point nearest the
/// origin lies in K. Cells are indexed with the first axis fastest.
std::vector<char> cell_flags(const ConvexBody& k, const Vec& lo, const Vec& step, int g);
std::vector<char> cell_flags_serial(const ConvexBody& k, const Vec& lo, const Vec& step, int g);

/// sum of f(n) over integer points n with |n|_inf <= radius.
double lattice_sum(const std::function<double(const Vec&)>& f, int dim, long radius);
double lattice_sum_serial(const std::function<double(const Vec&)>& f, int dim, long radius);

}  // namespace polarkit::kernels
