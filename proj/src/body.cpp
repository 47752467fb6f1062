#include "polarkit/body.hpp"

#include "polarkit/lp.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace polarkit {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_dim(int dim) {
  if (dim < 1) throw ValidationError("body: dimension must be >= 1");
}

void check_point_list(const std::vector<Vec>& pts, const char* what, const Tolerances& tol) {
  if (pts.empty()) throw ValidationError(std::string(what) + ": empty list");
  const auto n = pts.front().size();
  if (n < 1) throw ValidationError(std::string(what) + ": dimension must be >= 1");
  for (const auto& p : pts) {
    if (p.size() != n) throw ValidationError(std::string(what) + ": inconsistent dimensions");
    if (!p.allFinite()) throw ValidationError(std::string(what) + ": non-finite coordinate");
    if (p.norm() == 0.0) throw ValidationError(std::string(what) + ": zero vector");
  }
  // origin symmetry: every entry has its negative in the list
  for (const auto& p : pts) {
    const bool paired = std::any_of(pts.begin(), pts.end(), [&](const Vec& q) {
      return (p + q).norm() <= tol.symmetry * std::max(1.0, p.norm());
    });
    if (!paired) {
      throw ValidationError(std::string(what) +
                            ": origin symmetry violated (entry without its negative)");
    }
  }
  Mat m(n, pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) m.col(k) = pts[k];
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(1e-12);
  if (qr.rank() < n) {
    throw ValidationError(std::string(what) +
                          ": origin not interior (entries do not span R^N)");
  }
}

PolytopeData transformed_data(const PolytopeData& d, const Mat& map, const Mat& inverse) {
  PolytopeData out = d;
  const Mat inv_t = inverse.transpose();
  for (auto& v : out.vertices) v = map * v;
  for (auto& f : out.facets) f = inv_t * f;
  return out;
}

std::vector<Vec> unit_pairs(int n) {
  std::vector<Vec> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(Vec::Unit(n, i));
    out.push_back(-Vec::Unit(n, i));
  }
  return out;
}

// Unit cube and crosspolytope tables, built once per dimension.
std::shared_ptr<const PolytopeData> unit_lp_polytope(int n, bool cube) {
  static std::shared_ptr<const PolytopeData> cache[2][kExactPolytopeDim + 1];
  static std::once_flag flags[2][kExactPolytopeDim + 1];
  const int which = cube ? 1 : 0;
  std::call_once(flags[which][n], [&] {
    cache[which][n] = std::make_shared<const PolytopeData>(
        cube ? polytope_from_halfspaces(unit_pairs(n)) : polytope_from_points(unit_pairs(n)));
  });
  return cache[which][n];
}

double hpoly_support_lp(const HPolytope& h, const Vec& x) {
  const auto n = x.size();
  Mat a(h.normals.size(), n);
  for (std::size_t i = 0; i < h.normals.size(); ++i) a.row(i) = h.normals[i].transpose();
  const LpResult r = solve_lp_free(a, Vec::Ones(a.rows()), x);
  if (r.status != LpStatus::optimal) throw NumericError("support: LP failed for H-polytope");
  return r.value;
}

double vpoly_gauge_lp(const VPolytope& v, const Vec& x) {
  const auto n = x.size();
  const auto m = static_cast<Eigen::Index>(v.vertices.size());
  Mat a(2 * n, m);
  for (Eigen::Index k = 0; k < m; ++k) {
    a.block(0, k, n, 1) = v.vertices[k];
    a.block(n, k, n, 1) = -v.vertices[k];
  }
  Vec b(2 * n);
  b << x, -x;
  const LpResult r = solve_lp(a, b, -Vec::Ones(m));
  if (r.status != LpStatus::optimal) throw NumericError("gauge: LP failed for V-polytope");
  return -r.value;
}

}  // namespace

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

double lp_norm(const Vec& x, double p) {
  if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
  if (p == 1.0) return x.cwiseAbs().sum();
  if (p == 2.0) return x.norm();
  const double scale = x.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x[i]) / scale, p);
  return scale * std::pow(s, 1.0 / p);
}

ConvexBody ConvexBody::ball(int dim, double radius) {
  check_dim(dim);
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("ball: radius must be positive");
  return ConvexBody(Ball{dim, radius}, dim);
}

ConvexBody ConvexBody::ellipsoid(const Mat& shape) {
  if (shape.rows() != shape.cols() || shape.rows() < 1) {
    throw ValidationError("ellipsoid: shape matrix must be square N x N with N >= 1");
  }
  if (!shape.allFinite()) throw ValidationError("ellipsoid: non-finite shape entry");
  const double scale = std::max(1.0, shape.cwiseAbs().maxCoeff());
  if ((shape - shape.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ValidationError("ellipsoid: shape matrix is not symmetric");
  }
  const Mat sym = 0.5 * (shape + shape.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("ellipsoid: shape matrix is not positive definite");
  }
  const Vec inv_sqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
  Ellipsoid e;
  e.shape = sym;
  e.inverse = es.eigenvectors() * es.eigenvalues().cwiseInverse().asDiagonal() *
              es.eigenvectors().transpose();
  e.inverse = 0.5 * (e.inverse + e.inverse.transpose()).eval();
  e.factor = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose();
  e.factor_det = inv_sqrt.prod();
  const int n = static_cast<int>(shape.rows());
  return ConvexBody(std::move(e), n);
}

ConvexBody ConvexBody::hpolytope(std::vector<Vec> normals, const Tolerances& tol) {
  check_point_list(normals, "hpolytope normals", tol);
  const int n = static_cast<int>(normals.front().size());
  HPolytope h{std::move(normals), nullptr};
  if (n <= kExactPolytopeDim) {
    h.data = std::make_shared<const PolytopeData>(polytope_from_halfspaces(h.normals, 1e-9));
  }
  return ConvexBody(std::move(h), n);
}

ConvexBody ConvexBody::vpolytope(std::vector<Vec> vertices, const Tolerances& tol) {
  check_point_list(vertices, "vpolytope vertices", tol);
  const int n = static_cast<int>(vertices.front().size());
  VPolytope v{std::move(vertices), nullptr};
  if (n <= kExactPolytopeDim) {
    v.data = std::make_shared<const PolytopeData>(polytope_from_points(v.vertices, 1e-9));
  }
  return ConvexBody(std::move(v), n);
}

ConvexBody ConvexBody::lp_ball(int dim, double p, double radius) {
  check_dim(dim);
  if (!(p >= 1.0)) throw ValidationError("lp_ball: p must lie in [1, inf]");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw ValidationError("lp_ball: radius must be positive");
  return ConvexBody(LpBall{dim, p, radius}, dim);
}

ConvexBody ConvexBody::linear_image(const ConvexBody& base, const Mat& map) {
  const int n = base.dim();
  if (map.rows() != n || map.cols() != n) {
    throw ValidationError("linear_image: map must be N x N with N = body dimension");
  }
  if (!map.allFinite()) throw ValidationError("linear_image: non-finite map entry");
  if (const auto* li = base.as<LinearImage>()) {
    return linear_image(*li->base, Mat(map * li->map));
  }
  Eigen::FullPivLU<Mat> lu(map);
  const double det = lu.determinant();
  const double scale = std::pow(std::max(1e-300, map.cwiseAbs().maxCoeff()), n);
  if (!lu.isInvertible() || std::abs(det) <= 1e-14 * scale) {
    throw ValidationError("linear_image: map is singular");
  }
  LinearImage li{std::make_shared<const ConvexBody>(base), map, lu.inverse(), std::abs(det)};
  return ConvexBody(std::move(li), n);
}

std::string ConvexBody::kind() const {
  return std::visit(overloaded{
                        [](const Ball&) { return std::string("ball"); },
                        [](const Ellipsoid&) { return std::string("ellipsoid"); },
                        [](const HPolytope&) { return std::string("hpolytope"); },
                        [](const VPolytope&) { return std::string("vpolytope"); },
                        [](const LpBall&) { return std::string("lp_ball"); },
                        [](const LinearImage&) { return std::string("linear_image"); },
                    },
                    v_);
}

double support(const ConvexBody& k, const Vec& x) {
  require_dim(x, k.dim(), "support");
  return std::visit(
      overloaded{
          [&](const Ball& b) { return b.radius * x.norm(); },
          [&](const Ellipsoid& e) { return (e.factor * x).norm(); },
          [&](const HPolytope& h) {
            if (!h.data) return hpoly_support_lp(h, x);
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& v : h.data->vertices) best = std::max(best, x.dot(v));
            return best;
          },
          [&](const VPolytope& v) {
            double best = -std::numeric_limits<double>::infinity();
            for (const auto& p : v.vertices) best = std::max(best, x.dot(p));
            return best;
          },
          [&](const LpBall& l) { return l.radius * lp_norm(x, conjugate_exponent(l.p)); },
          [&](const LinearImage& li) { return support(*li.base, li.map.transpose() * x); },
      },
      k.variant());
}

double gauge(const ConvexBody& k, const Vec& x) {
  require_dim(x, k.dim(), "gauge");
  return std::visit(
      overloaded{
          [&](const Ball& b) { return x.norm() / b.radius; },
          [&](const Ellipsoid& e) { return std::sqrt(std::max(0.0, x.dot(e.shape * x))); },
          [&](const HPolytope& h) {
            double best = 0.0;
            for (const auto& a : h.normals) best = std::max(best, a.dot(x));
            return best;
          },
          [&](const VPolytope& v) {
            if (!v.data) return vpoly_gauge_lp(v, x);
            double best = 0.0;
            for (const auto& f : v.data->facets) best = std::max(best, f.dot(x));
            return best;
          },
          [&](const LpBall& l) { return lp_norm(x, l.p) / l.radius; },
          [&](const LinearImage& li) { return gauge(*li.base, li.inverse * x); },
      },
      k.variant());
}

bool contains(const ConvexBody& k, const Vec& x) { return gauge(k, x) <= 1.0 + 1e-12; }

ConvexBody polar(const ConvexBody& k) {
  return std::visit(
      overloaded{
          [&](const Ball& b) { return ConvexBody::ball(b.dim, 1.0 / b.radius); },
          [&](const Ellipsoid& e) { return ConvexBody::ellipsoid(e.inverse); },
          [&](const HPolytope& h) {
            if (!h.data) return ConvexBody::vpolytope(h.normals);
            // facets of the H-description are exactly the extreme points of the polar
            return ConvexBody::vpolytope(h.data->facets);
          },
          [&](const VPolytope& v) { return ConvexBody::hpolytope(v.vertices); },
          [&](const LpBall& l) {
            return ConvexBody::lp_ball(l.dim, conjugate_exponent(l.p), 1.0 / l.radius);
          },
          [&](const LinearImage& li) {
            return ConvexBody::linear_image(polar(*li.base), li.inverse.transpose());
          },
      },
      k.variant());
}

ConvexBody linear_image(const ConvexBody& k, const Mat& map) { return ConvexBody::linear_image(k, map); }

double circumradius_bound(const ConvexBody& k) {
  return std::visit(
      overloaded{
          [&](const Ball& b) { return b.radius; },
          [&](const Ellipsoid& e) {
            Eigen::SelfAdjointEigenSolver<Mat> es(e.inverse);
            return std::sqrt(es.eigenvalues().maxCoeff());
          },
          [&](const HPolytope& h) {
            double r = 0.0;
            if (h.data) {
              for (const auto& v : h.data->vertices) r = std::max(r, v.norm());
              return r;
            }
            for (int i = 0; i < k.dim(); ++i) r = std::max(r, support(k, Vec::Unit(k.dim(), i)));
            return r * std::sqrt(static_cast<double>(k.dim()));
          },
          [&](const VPolytope& v) {
            double r = 0.0;
            for (const auto& p : v.vertices) r = std::max(r, p.norm());
            return r;
          },
          [&](const LpBall& l) {
            const double e = std::isinf(l.p) ? 0.5 : std::max(0.0, 0.5 - 1.0 / l.p);
            return l.radius * std::pow(static_cast<double>(l.dim), e);
          },
          [&](const LinearImage& li) {
            Eigen::JacobiSVD<Mat> svd(li.map);
            return svd.singularValues()[0] * circumradius_bound(*li.base);
          },
      },
      k.variant());
}

std::shared_ptr<const PolytopeData> polytope_data(const ConvexBody& k) {
  if (k.dim() > kExactPolytopeDim) return nullptr;
  return std::visit(
      overloaded{
          [&](const Ball&) -> std::shared_ptr<const PolytopeData> { return nullptr; },
          [&](const Ellipsoid&) -> std::shared_ptr<const PolytopeData> { return nullptr; },
          [&](const HPolytope& h) { return h.data; },
          [&](const VPolytope& v) { return v.data; },
          [&](const LpBall& l) -> std::shared_ptr<const PolytopeData> {
            if (!std::isinf(l.p) && l.p != 1.0) return nullptr;
            auto unit = unit_lp_polytope(l.dim, std::isinf(l.p));
            if (l.radius == 1.0) return unit;
            const Mat s = Mat::Identity(l.dim, l.dim) * l.radius;
            return std::make_shared<const PolytopeData>(transformed_data(*unit, s, s.inverse()));
          },
          [&](const LinearImage& li) -> std::shared_ptr<const PolytopeData> {
            auto base = polytope_data(*li.base);
            if (!base) return nullptr;
            return std::make_shared<const PolytopeData>(transformed_data(*base, li.map, li.inverse));
          },
      },
      k.variant());
}

}  // namespace polarkit
