#pragma once

#include "polarkit/core.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <vector>

namespace polarkit {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};

/// n-point rule, computed once per n (Newton on the Legendre recurrence).
const GaussRule& gauss_legendre(int n);

template <class F>
auto gauss_panel(const F& f, double a, double b, const GaussRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  decltype(f(mid)) s{};
  for (std::size_t k = 0; k < rule.x.size(); ++k) s += rule.w[k] * f(mid + half * rule.x[k]);
  return s * half;
}

/// Adaptive Gauss-Kronrod (G15/K31) on [a, b].
template <class F>
auto adaptive_integral(const F& f, double a, double b, double rel_tol = 1e-13, unsigned depth = 20) {
  using boost::math::quadrature::gauss_kronrod;
  if (a == b) return decltype(f(a)){};
  return gauss_kronrod<double, 31>::integrate(f, a, b, depth, rel_tol);
}

/// Sum of adaptive integrals over [cuts[i], cuts[i+1]].
template <class F>
auto piecewise_integral(const F& f, const std::vector<double>& cuts, double rel_tol = 1e-13,
                        unsigned depth = 20) {
  decltype(f(0.0)) s{};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) s += adaptive_integral(f, cuts[i], cuts[i + 1], rel_tol, depth);
  return s;
}

/// Splits [a, b] at the given interior points and then into panels of length
/// at most max_len. Points outside (a, b) are ignored.
std::vector<double> panel_cuts(double a, double b, std::vector<double> interior, double max_len);

}  // namespace polarkit
