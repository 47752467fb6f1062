#pragma once

#include "polarkit/core.hpp"

namespace polarkit {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Vec x;      // primal solution
  Vec duals;  // one multiplier per inequality row (>= 0)
};

/// Dense two-phase tableau simplex:
///   maximize c.x  subject to  A x <= b,  x >= 0.
/// Pivoting uses lexicographic tie-breaking on variable indices, which rules
/// out cycling.
LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c, long max_pivots = 200000);

/// maximize c.x over free x subject to A x <= b (variables split as x+ - x-).
LpResult solve_lp_free(const Mat& A, const Vec& b, const Vec& c, long max_pivots = 200000);

}  // namespace polarkit
