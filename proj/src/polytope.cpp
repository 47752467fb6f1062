#include "polarkit/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

namespace polarkit {
namespace {

// Zero set of a ray over the processed constraints.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
  bool subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~o.words_[k]) != 0) return false;
    }
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Vec y;
  Bits zero;
};

int matrix_rank(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::ColPivHouseholderQR<Mat> qr(m);
  qr.setThreshold(tol);
  return static_cast<int>(qr.rank());
}

// Vertices of {x : a_i.x <= 1} by the double description method on the
// homogenized cone {(x,t) : t - a_i.x >= 0, t >= 0}.
std::vector<Vec> enumerate_vertices(const std::vector<Vec>& normals, double tol) {
  const int n = static_cast<int>(normals.front().size());
  const int d = n + 1;
  const std::size_t m = normals.size() + 1;

  std::vector<Vec> rows;
  rows.reserve(m);
  {
    Vec r0 = Vec::Zero(d);
    r0[n] = 1.0;
    rows.push_back(r0);
  }
  for (const auto& a : normals) {
    Vec r(d);
    r.head(n) = -a;
    r[n] = 1.0;
    rows.push_back(r / r.norm());
  }

  // Initial basis: greedy rank growth starting from t >= 0.
  std::vector<std::size_t> basis{0};
  Mat stacked = rows[0].transpose();
  for (std::size_t i = 1; i < m && static_cast<int>(basis.size()) < d; ++i) {
    Mat trial(stacked.rows() + 1, d);
    trial << stacked, rows[i].transpose();
    if (matrix_rank(trial, 1e-10) > static_cast<int>(stacked.rows())) {
      stacked = trial;
      basis.push_back(i);
    }
  }
  if (static_cast<int>(basis.size()) < d) {
    throw ValidationError("halfspace normals do not span R^N (body would be unbounded)");
  }

  const Mat inv = stacked.inverse();
  std::vector<Ray> rays;
  for (int k = 0; k < d; ++k) {
    Ray r{inv.col(k).normalized(), Bits(m)};
    for (int j = 0; j < d; ++j) {
      if (j != k) r.zero.set(basis[j]);
    }
    rays.push_back(std::move(r));
  }

  std::vector<char> in_basis(m, 0);
  for (auto b : basis) in_basis[b] = 1;
  const double eps = 1e-10;

  for (std::size_t i = 0; i < m; ++i) {
    if (in_basis[i]) continue;
    const Vec& row = rows[i];
    std::vector<double> s(rays.size());
    std::vector<std::size_t> pos, zer, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      s[k] = row.dot(rays[k].y);
      if (s[k] > eps) pos.push_back(k);
      else if (s[k] < -eps) neg.push_back(k);
      else zer.push_back(k);
    }
    if (neg.empty()) {
      for (auto k : zer) rays[k].zero.set(i);
      continue;
    }
    std::vector<Ray> next;
    next.reserve(pos.size() + zer.size() + pos.size() * neg.size() / 4 + 1);
    for (auto p : pos) {
      for (auto q : neg) {
        Bits common = rays[p].zero & rays[q].zero;
        if (common.count() < d - 2) continue;
        bool adjacent = true;
        for (std::size_t w = 0; w < rays.size() && adjacent; ++w) {
          if (w == p || w == q) continue;
          if (common.subset_of(rays[w].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec y = s[p] * rays[q].y - s[q] * rays[p].y;
        const double len = y.norm();
        if (len < 1e-300) continue;
        Ray r{y / len, common};
        r.zero.set(i);
        next.push_back(std::move(r));
      }
    }
    for (auto k : pos) next.push_back(std::move(rays[k]));
    for (auto k : zer) {
      rays[k].zero.set(i);
      next.push_back(std::move(rays[k]));
    }
    rays = std::move(next);
  }

  std::vector<Vec> vertices;
  for (const auto& r : rays) {
    const double t = r.y[n];
    if (t <= eps) {
      throw ValidationError("halfspace normals do not positively span R^N (body would be unbounded)");
    }
    Vec v = r.y.head(n) / t;
    const bool dup = std::any_of(vertices.begin(), vertices.end(), [&](const Vec& u) {
      return (u - v).norm() <= tol * std::max(1.0, v.norm());
    });
    if (!dup) vertices.push_back(std::move(v));
  }
  return vertices;
}

class FaceVolume {
 public:
  explicit FaceVolume(const PolytopeData& p) : p_(p) {}

  double full() {
    double total = 0.0;
    for (std::size_t f = 0; f < p_.facets.size(); ++f) {
      total += face(p_.facet_vertices[f], p_.dim - 1) / p_.facets[f].norm();
    }
    return total / p_.dim;
  }

  std::vector<std::vector<Vec>> simplices() {
    std::vector<std::vector<Vec>> out;
    const Vec origin = Vec::Zero(p_.dim);
    for (const auto& fv : p_.facet_vertices) {
      for (auto& s : triangulate(fv, p_.dim - 1)) {
        s.insert(s.begin(), origin);
        out.push_back(std::move(s));
      }
    }
    return out;
  }

 private:
  std::vector<Vec> points(const std::vector<int>& idx) const {
    std::vector<Vec> pts;
    pts.reserve(idx.size());
    for (int i : idx) pts.push_back(p_.vertices[i]);
    return pts;
  }

  Vec centroid(const std::vector<int>& idx) const {
    Vec c = Vec::Zero(p_.dim);
    for (int i : idx) c += p_.vertices[i];
    return c / static_cast<double>(idx.size());
  }

  // Facets (as vertex sets) of a face of dimension d >= 2.
  std::vector<std::vector<int>> subfaces(const std::vector<int>& S, int d) const {
    std::vector<std::vector<int>> out;
    for (const auto& T : p_.facet_vertices) {
      std::vector<int> G;
      std::set_intersection(S.begin(), S.end(), T.begin(), T.end(), std::back_inserter(G));
      if (G.size() < static_cast<std::size_t>(d) || G.size() == S.size()) continue;
      if (affine_dimension(points(G)) != d - 1) continue;
      if (std::find(out.begin(), out.end(), G) == out.end()) out.push_back(std::move(G));
    }
    return out;
  }

  static double simplex_volume(const std::vector<Vec>& pts) {
    const int d = static_cast<int>(pts.size()) - 1;
    Mat e(pts[0].size(), d);
    for (int k = 0; k < d; ++k) e.col(k) = pts[k + 1] - pts[0];
    const double gram = (e.transpose() * e).determinant();
    return std::sqrt(std::max(gram, 0.0)) / std::tgamma(d + 1.0);
  }

  static double distance_to_affine_hull(const Vec& c, const std::vector<Vec>& pts) {
    Vec diff = c - pts[0];
    if (pts.size() == 1) return diff.norm();
    Mat e(pts[0].size(), pts.size() - 1);
    for (std::size_t k = 1; k < pts.size(); ++k) e.col(k - 1) = pts[k] - pts[0];
    Eigen::ColPivHouseholderQR<Mat> qr(e);
    qr.setThreshold(1e-9);
    const auto r = qr.rank();
    const Mat q = qr.householderQ() * Mat::Identity(e.rows(), r);
    return (diff - q * (q.transpose() * diff)).norm();
  }

  double face(const std::vector<int>& S, int d) {
    if (d == 0) return 1.0;
    if (auto it = memo_.find(S); it != memo_.end()) return it->second;
    double v = 0.0;
    auto pts = points(S);
    if (static_cast<int>(S.size()) == d + 1) {
      v = simplex_volume(pts);
    } else if (d == 1) {
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) v = std::max(v, (pts[a] - pts[b]).norm());
    } else {
      const Vec c = centroid(S);
      for (const auto& G : subfaces(S, d)) {
        v += distance_to_affine_hull(c, points(G)) * face(G, d - 1);
      }
      v /= d;
    }
    memo_.emplace(S, v);
    return v;
  }

  std::vector<std::vector<Vec>> triangulate(const std::vector<int>& S, int d) {
    std::vector<std::vector<Vec>> out;
    auto pts = points(S);
    if (d == 0) {
      out.push_back({pts.front()});
    } else if (static_cast<int>(S.size()) == d + 1) {
      out.push_back(pts);
    } else if (d == 1) {
      std::size_t ia = 0, ib = 1;
      double best = -1.0;
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
          if ((pts[a] - pts[b]).norm() > best) {
            best = (pts[a] - pts[b]).norm();
            ia = a;
            ib = b;
          }
      out.push_back({pts[ia], pts[ib]});
    } else {
      const Vec c = centroid(S);
      for (const auto& G : subfaces(S, d)) {
        for (auto& s : triangulate(G, d - 1)) {
          s.push_back(c);
          out.push_back(std::move(s));
        }
      }
    }
    return out;
  }

  const PolytopeData& p_;
  std::map<std::vector<int>, double> memo_;
};

}  // namespace

int affine_dimension(const std::vector<Vec>& pts, double tol) {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  Mat e(pts[0].size(), pts.size() - 1);
  for (std::size_t k = 1; k < pts.size(); ++k) e.col(k - 1) = pts[k] - pts[0];
  double scale = 0.0;
  for (const auto& p : pts) scale = std::max(scale, p.norm());
  return matrix_rank(e, tol * std::max(1.0, scale));
}

PolytopeData polytope_from_halfspaces(const std::vector<Vec>& normals, double tol) {
  if (normals.empty()) throw ValidationError("polytope: empty normal list");
  const int n = static_cast<int>(normals.front().size());
  for (const auto& a : normals) require_dim(a, n, "polytope normal");

  PolytopeData out;
  out.dim = n;
  out.vertices = enumerate_vertices(normals, tol);

  std::vector<std::vector<int>> seen;
  for (const auto& a : normals) {
    std::vector<int> tight;
    for (std::size_t v = 0; v < out.vertices.size(); ++v) {
      const double s = a.dot(out.vertices[v]);
      if (s > 1.0 + 1e-7) throw NumericError("polytope: vertex enumeration violated a constraint");
      if (std::abs(s - 1.0) <= tol) tight.push_back(static_cast<int>(v));
    }
    if (static_cast<int>(tight.size()) < n) continue;
    if (std::find(seen.begin(), seen.end(), tight) != seen.end()) continue;
    Mat m(n, tight.size());
    for (std::size_t k = 0; k < tight.size(); ++k) m.col(k) = out.vertices[tight[k]];
    if (matrix_rank(m, 1e-9 * std::max(1.0, m.norm())) < n) continue;
    seen.push_back(tight);
    out.facets.push_back(a);
    out.facet_vertices.push_back(std::move(tight));
  }
  return out;
}

PolytopeData polytope_from_points(const std::vector<Vec>& points, double tol) {
  PolytopeData dual = polytope_from_halfspaces(points, tol);
  PolytopeData out;
  out.dim = dual.dim;
  out.vertices = dual.facets;
  out.facets = dual.vertices;
  out.facet_vertices.assign(out.facets.size(), {});
  for (std::size_t i = 0; i < dual.facet_vertices.size(); ++i) {
    for (int j : dual.facet_vertices[i]) out.facet_vertices[j].push_back(static_cast<int>(i));
  }
  return out;
}

double polytope_volume(const PolytopeData& p) {
  FaceVolume fv(p);
  return fv.full();
}

std::vector<std::vector<Vec>> polytope_simplices(const PolytopeData& p) {
  FaceVolume fv(p);
  return fv.simplices();
}

}  // namespace polarkit
