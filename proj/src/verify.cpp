#include "polarkit/verify.hpp"

#include "polarkit/body_io.hpp"
#include "polarkit/parallel.hpp"
#include "polarkit/radon.hpp"
#include "polarkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

namespace polarkit {
namespace {

bool both_exact(const VolumeProductReport& r) {
  return r.vol_k.method != VolumeMethod::monte_carlo && r.vol_polar.method != VolumeMethod::monte_carlo;
}

Mat random_orthogonal(int n, Rng& rng) {
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<Mat> qr{g};
  return qr.householderQ();
}

std::vector<Vec> symmetric_gaussian(int n, int pairs, Rng& rng) {
  std::vector<Vec> out;
  for (int k = 0; k < pairs; ++k) {
    const Vec v = rng.normal_vec(n);
    out.push_back(v);
    out.push_back(-v);
  }
  return out;
}

HannerNode random_tree(int n, Rng& rng) {
  HannerNode node;
  if (n == 1) return node;
  node.op = rng.uniform() < 0.5 ? HannerNode::Op::product : HannerNode::Op::hull;
  const int a = 1 + static_cast<int>(rng.uniform() * (n - 1));
  node.children.push_back(random_tree(a, rng));
  node.children.push_back(random_tree(n - a, rng));
  return node;
}

ConvexBody make_random(BodyKind kind, int n, int pairs, Rng& rng) {
  switch (kind) {
    case BodyKind::vpolytope: return ConvexBody::vpolytope(symmetric_gaussian(n, pairs, rng));
    case BodyKind::hpolytope: return ConvexBody::hpolytope(symmetric_gaussian(n, pairs, rng));
    case BodyKind::ellipsoid: {
      const Mat q = random_orthogonal(n, rng);
      Vec d(n);
      for (int i = 0; i < n; ++i) d[i] = std::exp(rng.uniform(0.0, std::log(100.0)));
      d[0] = 1.0;  // keeps the condition number at most 100
      return ConvexBody::ellipsoid(q * d.asDiagonal() * q.transpose());
    }
    case BodyKind::lp_ball: {
      double u = 0.5;
      while (std::abs(u - 0.5) < 0.05) u = rng.uniform();
      const double p = u == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / u;
      return ConvexBody::lp_ball(n, p, rng.uniform(0.5, 2.0));
    }
    case BodyKind::hanner: return ConvexBody::vpolytope(hanner_vertices(random_tree(n, rng)));
  }
  throw ValidationError("random_body: unknown kind");
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::equality_candidate: return "equality_candidate";
    case Verdict::violated: return "violated";
  }
  return "unknown";
}

BSReport verify_bs(const ConvexBody& k, const VolumeOptions& opts) {
  const auto vp = volume_product(k, opts);
  BSReport r;
  r.body_hash = body_hash(k);
  r.kind = k.kind();
  r.dim = k.dim();
  r.method = both_exact(vp) ? VolumeMethod::exact : VolumeMethod::monte_carlo;
  r.vol_k = vp.vol_k.value;
  r.vol_polar = vp.vol_polar.value;
  r.product = vp.product;
  r.p_ball = vp.reference_product;
  r.ratio = vp.ratio;
  r.rel_error = vp.rel_error;
  r.margin_std_errors =
      r.rel_error > 0.0 ? (1.0 - r.ratio) / r.rel_error : std::numeric_limits<double>::infinity();
  if (r.method == VolumeMethod::exact) {
    if (r.ratio > 1.0 + 1e-9) {
      r.verdict = Verdict::violated;
    } else if (std::abs(r.ratio - 1.0) < 1e-6) {
      r.verdict = Verdict::equality_candidate;
    }
  } else {
    if (r.ratio > 1.0 + 5.0 * r.rel_error) {
      r.verdict = Verdict::violated;
    } else if (std::abs(r.ratio - 1.0) < 2.0 * r.rel_error) {
      r.verdict = Verdict::equality_candidate;
    }
  }
  return r;
}

std::vector<BSReport> verify_bs_many(const std::vector<ConvexBody>& bodies, const VolumeOptions& opts) {
  std::vector<BSReport> out(bodies.size());
  parallel_for(static_cast<long>(bodies.size()), [&](long i) { out[i] = verify_bs(bodies[i], opts); });
  return out;
}

std::vector<Direction> diagnostic_directions(int n, int n_dirs, std::uint64_t seed) {
  if (n < 1) throw ValidationError("diagnostic_directions: N must be >= 1");
  if (n_dirs < 0) throw ValidationError("diagnostic_directions: n_dirs must be >= 0");
  std::vector<Direction> out;
  if (n == 3) {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n_dirs; ++k) {
      const double z = 1.0 - (2.0 * k + 1.0) / n_dirs;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      Vec v(3);
      v << r * std::cos(golden * k), r * std::sin(golden * k), z;
      out.push_back(Direction::normalized(v));
    }
  } else {
    Rng rng(seed);
    for (int k = 0; k < n_dirs; ++k) out.push_back(Direction(rng.unit_vec(n), 1e-9));
  }
  for (int i = 0; i < n; ++i) out.emplace_back(Vec::Unit(n, i));
  if (n > 1) {
    for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
      Vec v = Vec::Ones(n);
      for (int i = 1; i < n; ++i)
        if (mask >> (i - 1) & 1) v[i] = -1.0;
      out.push_back(Direction::normalized(v));
    }
  }
  return out;
}

EqualityDiagnostics equality_diagnostics(const ConvexBody& k, int n_dirs, int n_t, std::uint64_t seed) {
  if (n_t < 8) throw ValidationError("equality_diagnostics: n_t must be >= 8");
  const int n = k.dim();
  if (n < 2) throw ValidationError("equality_diagnostics: N must be >= 2");
  const auto dirs = diagnostic_directions(n, n_dirs, seed);
  const double vol = volume(k).value;
  const double kn = unit_ball_volume(n);
  const double kn1 = unit_ball_volume(n - 1);

  EqualityDiagnostics out;
  for (int i = 0; i < n_t; ++i) out.t_fractions.push_back(static_cast<double>(i) / (n_t - 1));
  const long nd = static_cast<long>(dirs.size());
  std::vector<double> alpha(nd), resid(nd), support_h(nd);
  std::vector<std::vector<double>> tails(nd);
  parallel_for(nd, [&](long d) {
    const auto prof = radon_profile(k, dirs[d], n_t);
    const double h = prof.h;
    double sr = 0.0;
    double rr = 0.0;
    std::vector<double> ref(prof.t.size());
    for (std::size_t i = 0; i < prof.t.size(); ++i) {
      const double s = std::max(0.0, h * h - prof.t[i] * prof.t[i]);
      ref[i] = vol * kn1 * std::pow(s, 0.5 * (n - 1)) / (kn * std::pow(h, n));
      sr += prof.values[i] * ref[i];
      rr += ref[i] * ref[i];
    }
    const double a = sr / rr;
    double worst = 0.0;
    double smax = 0.0;
    for (std::size_t i = 0; i < prof.t.size(); ++i) {
      worst = std::max(worst, std::abs(prof.values[i] - a * ref[i]));
      smax = std::max(smax, prof.values[i]);
    }
    alpha[d] = a;
    resid[d] = worst / smax;
    support_h[d] = h;
    tails[d] = section_tails(k, dirs[d], out.t_fractions);
  });

  std::vector<double> mean(n_t, 0.0);
  for (const auto& t : tails)
    for (int i = 0; i < n_t; ++i) mean[i] += t[i] / nd;
  const double d0 = 0.5 * vol;
  for (long d = 0; d < nd; ++d) {
    double dev = 0.0;
    for (int i = 0; i < n_t; ++i) dev = std::max(dev, std::abs(tails[d][i] - mean[i]) / d0);
    out.directions.push_back({dirs[d], support_h[d], alpha[d], resid[d], dev});
    out.max_profile_residual = std::max(out.max_profile_residual, resid[d]);
    out.max_alpha_error = std::max(out.max_alpha_error, std::abs(alpha[d] - 1.0));
    out.max_tail_deviation = std::max(out.max_tail_deviation, dev);
  }
  return out;
}

MahlerReport mahler_check(const ConvexBody& k, const VolumeOptions& opts) {
  const auto vp = volume_product(k, opts);
  const int n = k.dim();
  MahlerReport r;
  r.product = vp.product;
  r.bound = std::pow(4.0, n) / std::tgamma(n + 1.0);
  r.slack = r.product - r.bound;
  r.rel_error = vp.rel_error;
  r.exact = both_exact(vp);
  r.flagged = r.exact ? r.slack < -1e-9 * r.bound : r.slack < -5.0 * r.rel_error * r.product;
  return r;
}

std::string to_string(BodyKind k) {
  switch (k) {
    case BodyKind::vpolytope: return "vpolytope";
    case BodyKind::hpolytope: return "hpolytope";
    case BodyKind::ellipsoid: return "ellipsoid";
    case BodyKind::lp_ball: return "lp_ball";
    case BodyKind::hanner: return "hanner";
  }
  return "unknown";
}

BodyKind parse_body_kind(const std::string& s) {
  for (auto k : {BodyKind::vpolytope, BodyKind::hpolytope, BodyKind::ellipsoid, BodyKind::lp_ball, BodyKind::hanner})
    if (to_string(k) == s) return k;
  throw ValidationError("unknown body kind '" + s + "'");
}

int HannerNode::dim() const {
  if (op == Op::segment) return 1;
  int d = 0;
  for (const auto& c : children) d += c.dim();
  return d;
}

std::vector<Vec> hanner_vertices(const HannerNode& node) {
  if (node.op == HannerNode::Op::segment) {
    if (!node.children.empty()) throw ValidationError("hanner: a segment has no children");
    return {Vec::Ones(1), -Vec::Ones(1)};
  }
  if (node.children.size() != 2) throw ValidationError("hanner: sums need two children");
  const auto a = hanner_vertices(node.children[0]);
  const auto b = hanner_vertices(node.children[1]);
  const int na = node.children[0].dim();
  const int nb = node.children[1].dim();
  std::vector<Vec> out;
  if (node.op == HannerNode::Op::product) {
    for (const auto& u : a) {
      for (const auto& v : b) {
        Vec w(na + nb);
        w << u, v;
        out.push_back(w);
      }
    }
  } else {
    for (const auto& u : a) {
      Vec w = Vec::Zero(na + nb);
      w.head(na) = u;
      out.push_back(w);
    }
    for (const auto& v : b) {
      Vec w = Vec::Zero(na + nb);
      w.tail(nb) = v;
      out.push_back(w);
    }
  }
  return out;
}

HannerNode random_hanner_tree(int n, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_hanner_tree: N must be >= 1");
  Rng rng(seed);
  return random_tree(n, rng);
}

HannerNode uniform_hanner_tree(int n, bool product) {
  if (n < 1) throw ValidationError("uniform_hanner_tree: N must be >= 1");
  HannerNode node;
  if (n == 1) return node;
  node.op = product ? HannerNode::Op::product : HannerNode::Op::hull;
  node.children.push_back(uniform_hanner_tree(n - 1, product));
  node.children.emplace_back();
  return node;
}

ConvexBody random_body(BodyKind kind, int n, int size_param, std::uint64_t seed) {
  if (n < 1) throw ValidationError("random_body: N must be >= 1");
  if (size_param < n) throw ValidationError("random_body: size_param must be >= N");
  const int pairs = std::max(n, (size_param + 1) / 2);
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    Rng rng(splitmix64(seed + attempt * 0x9e3779b97f4a7c15ULL));
    try {
      return make_random(kind, n, pairs, rng);
    } catch (const ValidationError&) {
    }
  }
  throw NumericError("random_body: degenerate samples after 16 attempts");
}

std::vector<SweepRow> sweep(const std::string& family, int n, int steps, double p_min, double p_max) {
  if (family != "lp") throw ValidationError("sweep: unknown family '" + family + "'");
  if (steps < 1) throw ValidationError("sweep: steps must be >= 1");
  if (!(p_min >= 1.0) || !(p_max >= p_min)) throw ValidationError("sweep: need 1 <= p_min <= p_max");
  const double u_lo = std::isinf(p_max) ? 0.0 : 1.0 / p_max;
  const double u_hi = 1.0 / p_min;
  std::vector<double> ps(steps);
  for (int s = 0; s < steps; ++s) {
    const double u = steps == 1 ? 0.5 * (u_lo + u_hi) : u_lo + (u_hi - u_lo) * s / (steps - 1);
    ps[s] = u == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / u;
  }
  std::vector<SweepRow> rows(steps);
  parallel_for(steps, [&](long s) {
    rows[s].parameter = ps[s];
    rows[s].report = verify_bs(ConvexBody::lp_ball(n, ps[s]));
  });
  return rows;
}

}  // namespace polarkit
