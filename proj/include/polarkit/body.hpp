#pragma once

#include "polarkit/core.hpp"
#include "polarkit/polytope.hpp"

#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace polarkit {

class ConvexBody;

// Exact H/V conversion is available up to this dimension; above it polytope
// queries go through linear programs and volumes fall back to Monte Carlo.
inline constexpr int kExactPolytopeDim = 6;

struct Ball {
  int dim = 0;
  double radius = 1.0;
};

/// {x : x^T M x <= 1} = L B with L L^T = M^{-1}.
struct Ellipsoid {
  Mat shape;
  Mat inverse;
  Mat factor;
  double factor_det = 1.0;  // det L = det(M)^{-1/2}
};

/// {x : a_i . x <= 1}, offsets normalized to 1.
struct HPolytope {
  std::vector<Vec> normals;
  std::shared_ptr<const PolytopeData> data;  // null above kExactPolytopeDim
};

struct VPolytope {
  std::vector<Vec> vertices;
  std::shared_ptr<const PolytopeData> data;  // null above kExactPolytopeDim
};

/// Radius-r ball of the l_p norm; p = +infinity is the max norm.
struct LpBall {
  int dim = 0;
  double p = 2.0;
  double radius = 1.0;
};

/// T K.
struct LinearImage {
  std::shared_ptr<const ConvexBody> base;
  Mat map;
  Mat inverse;
  double abs_det = 1.0;
};

/// Origin-symmetric convex body with the origin in its interior. Immutable
/// after construction; factories validate every invariant and throw
/// ValidationError on violation.
class ConvexBody {
 public:
  using Variant = std::variant<Ball, Ellipsoid, HPolytope, VPolytope, LpBall, LinearImage>;

  static ConvexBody ball(int dim, double radius = 1.0);
  static ConvexBody ellipsoid(const Mat& shape);
  static ConvexBody hpolytope(std::vector<Vec> normals, const Tolerances& tol = default_tolerances());
  static ConvexBody vpolytope(std::vector<Vec> vertices, const Tolerances& tol = default_tolerances());
  static ConvexBody lp_ball(int dim, double p, double radius = 1.0);
  static ConvexBody cube(int dim, double half_width = 1.0) {
    return lp_ball(dim, std::numeric_limits<double>::infinity(), half_width);
  }
  static ConvexBody cross_polytope(int dim, double radius = 1.0) { return lp_ball(dim, 1.0, radius); }
  static ConvexBody linear_image(const ConvexBody& base, const Mat& map);

  int dim() const { return dim_; }
  const Variant& variant() const { return v_; }
  std::string kind() const;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&v_);
  }

 private:
  ConvexBody(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}
  Variant v_;
  int dim_ = 0;
};

/// h_K(x) = sup { x.y : y in K }.
double support(const ConvexBody& k, const Vec& x);

/// Minkowski functional inf { lambda > 0 : x in lambda K }.
double gauge(const ConvexBody& k, const Vec& x);

/// gauge(K, x) <= 1 + 1e-12.
bool contains(const ConvexBody& k, const Vec& x);

/// K* = { y : x.y <= 1 for all x in K }.
ConvexBody polar(const ConvexBody& k);

/// T K. Composes with an existing LinearImage. Throws for singular T.
ConvexBody linear_image(const ConvexBody& k, const Mat& map);

/// Upper bound on max_theta h_K(theta) (exact except for nested linear images).
double circumradius_bound(const ConvexBody& k);

/// Polytope view (both representations) of a polytopal body, including the
/// cube, the crosspolytope and linear images of polytopes. Returns nullptr for
/// non-polytopal bodies or dimensions above kExactPolytopeDim.
std::shared_ptr<const PolytopeData> polytope_data(const ConvexBody& k);

/// Hölder conjugate exponent, with 1 <-> infinity.
double conjugate_exponent(double p);

/// l_p norm with p = infinity allowed.
double lp_norm(const Vec& x, double p);

}  // namespace polarkit
