#pragma once

#include "polarkit/body.hpp"

#include <vector>

namespace polarkit {

/// F(x) = sum_j g_j exp(2 pi i x.xi_j) Delta with every node xi_j in K.
/// Nodes produced by extremal_rho_function lie on the lattice
/// half_step * Z^N; lattice_index holds the integer coordinates.
struct BandlimitedFunction {
  ConvexBody spectrum_body;
  std::vector<Vec> freq_nodes;
  std::vector<Complex> weights;
  double cell_measure = 0.0;
  Vec half_step;                                 // empty when nodes are scattered
  std::vector<Eigen::VectorXi> lattice_index;    // parallel to freq_nodes when on a lattice
};

/// int_K exp(-2 pi i xi.x) dx.
Complex indicator_ft(const ConvexBody& k, const Vec& xi);

/// Same integral over the simplex conv(s[0], ..., s[N]) by collapsed
/// Gauss-Legendre cubature.
Complex simplex_ft(const std::vector<Vec>& s, const Vec& xi);

/// Constant density 1/vol(K) on the cells of a g^N grid over the bounding box
/// of K. A cell is kept when its center or its point nearest the origin lies
/// in K; the node is the center if inside, otherwise that nearest point.
BandlimitedFunction extremal_rho_function(const ConvexBody& k, int grid_per_axis);

Complex evaluate(const BandlimitedFunction& f, const Vec& x);

/// Evaluation at the columns of `points` (parallel over points).
std::vector<Complex> evaluate_many(const BandlimitedFunction& f, const Mat& points);

/// sum_j |g_j|^2 Delta.
double parseval_norm_sq(const BandlimitedFunction& f);

/// Trapezoid rule for int |F|^2 over [-half_width, half_width]^N with the
/// given step, evaluated on the tensor grid by one matrix product per axis.
/// Requires lattice nodes.
double spatial_norm_sq(const BandlimitedFunction& f, double half_width, double step);

/// K(w, z) = int_{delta B} exp(-2 pi i (z - w).xi) dxi for real w, z.
Complex reproducing_kernel(double delta, int n, const Vec& w, const Vec& z);

/// (sin(pi x) / (pi x))^2, 1 at x = 0.
double fejer_1d(double x);

/// prod_n (sin(pi x_n) / (pi x_n))^2.
double fejer_kernel(const Vec& x);

struct ProjectionSliceRow {
  double r = 0.0;
  Complex via_radon;
  Complex direct;
  double error = 0.0;
};

/// For each r: the 1-D transform of S_K(., theta) at r against
/// indicator_ft(K, r theta).
std::vector<ProjectionSliceRow> projection_slice_table(const ConvexBody& k, const Direction& theta,
                                                       const std::vector<double>& r_grid);

/// Max error of projection_slice_table.
double projection_slice_check(const ConvexBody& k, const Direction& theta, const std::vector<double>& r_grid);

}  // namespace polarkit
