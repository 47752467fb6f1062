#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace polarkit {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

/// Raised when an input violates a documented invariant (bad body, bad
/// direction, dimension mismatch). The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation cannot complete (LP failure, root finding,
/// unsupported dimension). The CLI maps it to exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Tolerances {
  double geometric = 1e-10;  // membership, incidence, pruning
  double symmetry = 1e-12;   // +/- pairing of vertices and normals
  double unit_norm = 1e-12;  // Direction normalization
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

inline void require_dim(const Vec& x, int n, const char* what) {
  if (x.size() != n) {
    throw ValidationError(std::string(what) + ": dimension mismatch (expected " +
                          std::to_string(n) + ", got " + std::to_string(x.size()) + ")");
  }
}

/// Unit vector in R^N, validated at construction.
class Direction {
 public:
  explicit Direction(Vec theta, double tol = default_tolerances().unit_norm)
      : theta_(std::move(theta)) {
    if (theta_.size() < 1) throw ValidationError("Direction: empty vector");
    if (std::abs(theta_.norm() - 1.0) > tol) {
      throw ValidationError("Direction: theta must have Euclidean norm 1 (got " +
                            std::to_string(theta_.norm()) + ")");
    }
  }

  static Direction normalized(const Vec& v) {
    const double n = v.norm();
    if (!(n > 0.0)) throw ValidationError("Direction: zero vector");
    return Direction(v / n, 1e-9);
  }

  const Vec& vec() const { return theta_; }
  int dim() const { return static_cast<int>(theta_.size()); }

 private:
  Vec theta_;
};

// sin(pi x) with exact zeros at the integers.
inline double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r == 0.0) return 0.0;
  if (r < -1.0) r += 2.0;
  if (r > 1.0) r -= 2.0;
  if (r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(kPi * r);
}

// Unit-ball volume kappa_N = pi^{N/2} / Gamma(N/2 + 1); kappa_0 = 1.
inline double unit_ball_volume(int n) {
  return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

}  // namespace polarkit
