#include "polarkit/lp.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace polarkit {
namespace {

constexpr double kEps = 1e-9;
using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class Tableau {
 public:
  Tableau(const Mat& A, const Vec& b, const Vec& c)
      : m_(static_cast<int>(b.size())), n_(static_cast<int>(c.size())),
        nonbasic_(n_ + 1), basic_(m_), d_(RowMat::Zero(m_ + 2, n_ + 2)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_(i, j) = A(i, j);
      basic_[i] = n_ + i;
      d_(i, n_) = -1.0;
      d_(i, n_ + 1) = b[i];
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_(m_, j) = -c[j];
    }
    nonbasic_[n_] = -1;
    d_(m_ + 1, n_) = 1.0;
  }

  LpResult solve(long max_pivots) {
    max_pivots_ = max_pivots;
    LpResult res;
    int r = 0;
    for (int i = 1; i < m_; ++i)
      if (d_(i, n_ + 1) < d_(r, n_ + 1)) r = i;
    if (m_ > 0 && d_(r, n_ + 1) < -kEps) {
      pivot(r, n_);
      const int phase1 = run(2);
      if (phase1 == 2) {
        res.status = LpStatus::iteration_limit;
        return res;
      }
      if (phase1 == 1 || d_(m_ + 1, n_ + 1) < -kEps) {
        res.status = LpStatus::infeasible;
        return res;
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j)
          if (less(d_(i, j), nonbasic_[j], d_(i, s), nonbasic_[s])) s = j;
        pivot(i, s);
      }
    }
    const int phase2 = run(1);
    res.x = Vec::Zero(n_);
    for (int i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < n_) res.x[basic_[i]] = d_(i, n_ + 1);
    res.duals = Vec::Zero(m_);
    for (int j = 0; j <= n_; ++j)
      if (nonbasic_[j] >= n_) res.duals[nonbasic_[j] - n_] = d_(m_, j);
    if (phase2 == 2) {
      res.status = LpStatus::iteration_limit;
    } else if (phase2 == 1) {
      res.status = LpStatus::unbounded;
      res.value = std::numeric_limits<double>::infinity();
    } else {
      res.status = LpStatus::optimal;
      res.value = d_(m_, n_ + 1);
    }
    return res;
  }

 private:
  static bool less(double a, int ia, double b, int ib) {
    return a < b || (a == b && ia < ib);
  }

  void pivot(int r, int s) {
    const double inv = 1.0 / d_(r, s);
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_(i, s)) <= kEps * 1e-3) continue;
      const double f = d_(i, s) * inv;
      d_.row(i) -= f * d_.row(r);
      d_(i, s) = d_(r, s) * f;
    }
    for (int j = 0; j < n_ + 2; ++j)
      if (j != s) d_(r, j) *= inv;
    for (int i = 0; i < m_ + 2; ++i)
      if (i != r) d_(i, s) *= -inv;
    d_(r, s) = inv;
    std::swap(basic_[r], nonbasic_[s]);
    ++pivots_;
  }

  // 0 = optimal, 1 = unbounded, 2 = pivot limit.
  int run(int phase) {
    const int x = m_ + phase - 1;
    for (;;) {
      if (pivots_ >= max_pivots_) return 2;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (s == -1 || less(d_(x, j), nonbasic_[j], d_(x, s), nonbasic_[s])) s = j;
      }
      if (d_(x, s) >= -kEps) return 0;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_(i, s) <= kEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = d_(i, n_ + 1) / d_(i, s);
        const double rhs = d_(r, n_ + 1) / d_(r, s);
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return 1;
      pivot(r, s);
    }
  }

  int m_, n_;
  std::vector<int> nonbasic_, basic_;
  RowMat d_;
  long pivots_ = 0;
  long max_pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const Mat& A, const Vec& b, const Vec& c, long max_pivots) {
  if (A.rows() != b.size() || A.cols() != c.size()) {
    throw ValidationError("solve_lp: inconsistent problem dimensions");
  }
  Tableau t(A, b, c);
  return t.solve(max_pivots);
}

LpResult solve_lp_free(const Mat& A, const Vec& b, const Vec& c, long max_pivots) {
  const auto n = A.cols();
  Mat split(A.rows(), 2 * n);
  split << A, -A;
  Vec cs(2 * n);
  cs << c, -c;
  LpResult r = solve_lp(split, b, cs, max_pivots);
  if (r.x.size() == 2 * n) r.x = Vec(r.x.head(n) - r.x.tail(n));
  return r;
}

}  // namespace polarkit
