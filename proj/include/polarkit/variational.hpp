#pragma once

#include "polarkit/body.hpp"
#include "polarkit/fourier.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polarkit {

enum class Quantity { rho, eta };
enum class Certificate { constant_density, fejer_product, kernel_square, lp_solution, poisson_dual };

std::string to_string(Quantity q);
std::string to_string(Certificate c);

/// Bound or estimate for rho(K) or eta(K). `probe` marks values obtained from
/// finitely many sampled constraints; they are never certified bounds.
struct ExtremalEstimate {
  Quantity quantity = Quantity::rho;
  std::optional<double> lower;
  double upper = 0.0;
  double conjectured_or_exact = 0.0;
  std::vector<long> grid_spec;  // frequency grid per axis, spatial sample count
  Certificate certificate = Certificate::constant_density;
  std::optional<Certificate> lower_certificate;
  std::uint64_t seed = 0;
  bool probe = false;
  std::map<std::string, double> diagnostics;
};

/// min sum |g_j|^2 Delta subject to |sum g_j Delta| >= 1 on the nodes of
/// extremal_rho_function(K, g), by the closed form and by projected gradient
/// descent from a random start. Throws NumericError if they disagree beyond
/// 1e-10 relative.
ExtremalEstimate rho_solve(const ConvexBody& k, int grid_per_axis, std::uint64_t seed = 1);

struct RhoConvergenceRow {
  int grid = 0;
  double value = 0.0;
  double value_times_volume = 0.0;
  double rel_error = 0.0;  // |value vol - 1|
};

struct RhoConvergence {
  std::vector<RhoConvergenceRow> rows;
  double fitted_c = 0.0;  // least squares fit of rel_error ~ C / grid
};

RhoConvergence rho_convergence(const ConvexBody& k, const std::vector<int>& grids);

/// Fejer product certificate for eta([-1,1]^N) <= 1: integral of the kernel
/// by iterated 1-D quadrature, F(0) and sampled nonnegativity checked.
ExtremalEstimate eta_upper_cube(int n);

/// Nonnegative function with spectrum in [-a, a]^N. |F(x)| <= envelope *
/// |x|_inf^{-(N+1)} for |x|_inf >= 1, or for separable F each factor satisfies
/// |f_i(x)| <= envelope / x^2 for |x| >= 1.
struct AdmissibleFunction {
  int dim = 1;
  std::function<double(const Vec&)> value;
  double spectrum_half_width = 1.0;
  bool vanishes_on_boundary = false;
  std::vector<std::function<double(double)>> factors;
  double envelope = 1.0;

  static AdmissibleFunction fejer(int n, double amplitude = 1.0);
};

struct PoissonWitness {
  double lattice_sum = 0.0;       // sum over |n|_inf <= R of F(n)
  double remainder_bound = 0.0;   // bound on the omitted terms
  double value_at_zero = 0.0;
  long radius = 0;
};

/// Truncated lattice sum of F. When supp F^ lies in the cube and F^ vanishes
/// on its boundary, sum_n F(n) = F^(0) = int F, so the sum witnesses int F >=
/// F(0). K must lie in [-1,1]^N.
PoissonWitness eta_lower_poisson(const ConvexBody& k, const AdmissibleFunction& f, long truncation_radius);

/// Upper and lower bounds for eta([-1,1]^N) from the Fejer product and its
/// Poisson lattice sum.
ExtremalEstimate eta_cube_sandwich(int n, long truncation_radius = 1000);

/// Kernel square certificate F = |V|^2, V = K(0, .) / K(0, 0) with kernel
/// radius 1/2: upper = 1 / vol(B/2), cross-checked by radial quadrature of
/// |V|^2 out to radius grid_per_axis.
ExtremalEstimate eta_upper_ball(int n, int grid_per_axis = 400);

/// Linear program over F^ = sum_j g_j hat(xi - j h) with tensor hat functions
/// whose supports lie in K: minimize int F = g_0 subject to sampled
/// nonnegativity of the cosine polynomial P(x) = sum_j g_j exp(2 pi i j h.x)
/// and F(0) = h^N sum_j g_j >= 1. Samples cover the period cell of P, or the
/// box [-space_radius, space_radius]^N when space_radius > 0.
ExtremalEstimate eta_lp_probe(const ConvexBody& k, int freq_grid, long space_samples, double space_radius = 0.0,
                              std::uint64_t seed = 1);

/// U with a_0 + sum_k a_k cos(2 pi k t) = |U(exp(2 pi i t))|^2; coefficients
/// u_0..u_d, leading coefficient positive.
std::vector<Complex> fejer_riesz_1d(const std::vector<double>& cosine_coeffs);

/// a_0 + sum_k a_k cos(2 pi k t).
double cosine_poly(const std::vector<double>& a, double t);

/// |sum_k u_k exp(2 pi i k t)|^2.
double factor_square(const std::vector<Complex>& u, double t);

}  // namespace polarkit
