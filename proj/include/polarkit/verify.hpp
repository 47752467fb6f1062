#pragma once

#include "polarkit/body.hpp"
#include "polarkit/measure.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace polarkit {

enum class Verdict { satisfied, equality_candidate, violated };
std::string to_string(Verdict v);

struct BSReport {
  std::string body_hash;
  std::string kind;
  int dim = 0;
  VolumeMethod method = VolumeMethod::exact;  // monte_carlo if either volume is
  double vol_k = 0.0;
  double vol_polar = 0.0;
  double product = 0.0;
  double p_ball = 0.0;
  double ratio = 0.0;
  double rel_error = 0.0;           // combined relative standard error, 0 if exact
  double margin_std_errors = 0.0;   // (1 - ratio) / rel_error; +inf if exact
  Verdict verdict = Verdict::satisfied;
};

/// P(K) against P(B). Exact volumes: violated if ratio > 1 + 1e-9, equality
/// candidate if |ratio - 1| < 1e-6. Monte Carlo: violated if ratio > 1 + 5
/// rel_error, equality candidate if |ratio - 1| < 2 rel_error.
BSReport verify_bs(const ConvexBody& k, const VolumeOptions& opts = {});

/// verify_bs over a list, parallel over bodies, results in input order.
std::vector<BSReport> verify_bs_many(const std::vector<ConvexBody>& bodies, const VolumeOptions& opts = {});

struct DirectionDiagnostics {
  Direction theta;
  double support = 0.0;
  double alpha_hat = 0.0;         // least squares scale against the ball-shaped profile
  double profile_residual = 0.0;  // sup |S - alpha ref| / sup S
  double tail_deviation = 0.0;    // max_t |D(t, theta) - mean_theta D(t, .)| / D(0)
};

struct EqualityDiagnostics {
  std::vector<DirectionDiagnostics> directions;
  std::vector<double> t_fractions;
  double max_profile_residual = 0.0;
  double max_alpha_error = 0.0;   // max |alpha_hat - 1|
  double max_tail_deviation = 0.0;
};

/// n_dirs sampled directions (Fibonacci points in N = 3, normalized Gaussians
/// otherwise) plus the coordinate axes and the main diagonals. Profiles use
/// n_t samples over [-h, h]; tails use n_t fractions in [0, 1].
EqualityDiagnostics equality_diagnostics(const ConvexBody& k, int n_dirs, int n_t, std::uint64_t seed = 1);

/// The sampled direction set used by equality_diagnostics.
std::vector<Direction> diagnostic_directions(int n, int n_dirs, std::uint64_t seed);

struct MahlerReport {
  double product = 0.0;
  double bound = 0.0;  // 4^N / N!
  double slack = 0.0;  // product - bound
  double rel_error = 0.0;
  bool exact = true;
  bool flagged = false;  // slack below -5 standard errors (or -1e-9 relative if exact)
};

MahlerReport mahler_check(const ConvexBody& k, const VolumeOptions& opts = {});

enum class BodyKind { vpolytope, hpolytope, ellipsoid, lp_ball, hanner };
std::string to_string(BodyKind k);
BodyKind parse_body_kind(const std::string& s);

/// Binary tree of l_inf sums (product) and l_1 sums (hull) over segments.
struct HannerNode {
  enum class Op { segment, product, hull } op = Op::segment;
  std::vector<HannerNode> children;
  int dim() const;
};

std::vector<Vec> hanner_vertices(const HannerNode& node);
HannerNode random_hanner_tree(int n, std::uint64_t seed);
/// All-product tree (the cube) when `product` is true, all-hull tree (the
/// crosspolytope) otherwise.
HannerNode uniform_hanner_tree(int n, bool product);

/// Deterministic per seed. size_param >= N sets the number of symmetric pairs
/// of vertices or normals as max(N, ceil(size/2)).
ConvexBody random_body(BodyKind kind, int n, int size_param, std::uint64_t seed);

struct SweepRow {
  double parameter = 0.0;  // p for the l_p family
  BSReport report;
};

/// l_p family with 1/p on a uniform grid over [1/p_max, 1/p_min], so p and its
/// conjugate exponent appear in mirrored positions.
std::vector<SweepRow> sweep(const std::string& family, int n, int steps, double p_min = 1.0,
                            double p_max = std::numeric_limits<double>::infinity());

}  // namespace polarkit
