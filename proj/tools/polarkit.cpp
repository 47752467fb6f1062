#include "polarkit/body_io.hpp"
#include "polarkit/fourier.hpp"
#include "polarkit/measure.hpp"
#include "polarkit/parallel.hpp"
#include "polarkit/radon.hpp"
#include "polarkit/records.hpp"
#include "polarkit/variational.hpp"
#include "polarkit/verify.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <omp.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace polarkit;
using json = nlohmann::ordered_json;

namespace {

enum class Format { human, records, table };

struct RunConfig {
  std::string command;
  std::string type;
  int dim = 2;
  std::vector<std::string> files;
  std::uint64_t seed = 1;
  std::vector<long> grids;
  std::optional<long> dirs;
  std::optional<long> samples;
  std::string format = "human";
  std::string out;
  std::vector<double> theta;
  std::optional<double> rmax;
  std::string family;
  int steps = 21;
  int threads = 0;
  double radius = 1.0;
  std::string p = "2";
  std::optional<int> size;
  int count = 1;
  bool probe = false;
  bool emit_function = false;

  Format fmt() const {
    if (format == "records") return Format::records;
    if (format == "table") return Format::table;
    return Format::human;
  }

  // threads and out are left out: they change where and how fast, never what
  json echo() const {
    json j;
    j["record"] = "config";
    j["command"] = command;
    j["type"] = type;
    j["dim"] = dim;
    j["files"] = files;
    j["seed"] = seed;
    j["grids"] = grids;
    j["dirs"] = dirs ? json(*dirs) : json();
    j["samples"] = samples ? json(*samples) : json();
    j["format"] = format;
    j["theta"] = theta;
    j["rmax"] = rmax ? json(*rmax) : json();
    j["family"] = family;
    j["steps"] = steps;
    j["radius"] = radius;
    j["p"] = p;
    j["size"] = size ? json(*size) : json();
    j["count"] = count;
    j["probe"] = probe;
    j["emit_function"] = emit_function;
    return j;
  }
};

class Output {
 public:
  explicit Output(const RunConfig& c) : fmt_(c.fmt()) {
    const std::string echo = c.echo().dump();
    if (fmt_ == Format::records) {
      out_ << echo << "\n";
    } else {
      out_ << "# config = " << echo << "\n";
    }
  }

  Format fmt() const { return fmt_; }
  std::ostringstream& stream() { return out_; }
  void record(const std::string& r) { out_ << r << "\n"; }
  void table(const CsvTable& t) { out_ << t.str(); }
  std::string str() const { return out_.str(); }

 private:
  Format fmt_;
  std::ostringstream out_;
};

std::string fd(double x) { return format_double(x); }

std::string vec_text(const Vec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) s += (i ? " " : "") + fd(v[i]);
  return s;
}

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw ValidationError("--p: not a number: " + s);
  }
  if (pos != s.size()) throw ValidationError("--p: not a number: " + s);
  return v;
}

bool is_random_kind(const std::string& t) {
  return t == "vpolytope" || t == "hpolytope" || t == "ellipsoid" || t == "hanner" || t == "lp_random";
}

ConvexBody make_body(const RunConfig& c, std::uint64_t seed) {
  const std::string& t = c.type;
  if (t == "ball") return ConvexBody::ball(c.dim, c.radius);
  if (t == "cube") return ConvexBody::cube(c.dim, c.radius);
  if (t == "crosspolytope" || t == "cross") return ConvexBody::cross_polytope(c.dim, c.radius);
  if (t == "lp" || t == "lp_ball") return ConvexBody::lp_ball(c.dim, parse_p(c.p), c.radius);
  if (t == "lp_random") return random_body(BodyKind::lp_ball, c.dim, c.size.value_or(c.dim), seed);
  if (is_random_kind(t)) return random_body(parse_body_kind(t), c.dim, c.size.value_or(2 * c.dim + 2), seed);
  if (t.empty()) throw ValidationError("no body given: use --type or --file");
  throw ValidationError("unknown body type: " + t +
                        " (ball, cube, crosspolytope, lp, vpolytope, hpolytope, ellipsoid, hanner, lp_random)");
}

ConvexBody single_body(const RunConfig& c) {
  if (c.files.size() > 1) throw ValidationError("this command takes one body");
  if (!c.files.empty()) return read_body_file(c.files.front());
  return make_body(c, c.seed);
}

// files, or --count generated bodies with seeds seed, seed + 1, ...
std::vector<ConvexBody> body_list(const RunConfig& c) {
  std::vector<ConvexBody> out;
  if (!c.files.empty()) {
    for (const auto& f : c.files) out.push_back(read_body_file(f));
    return out;
  }
  if (c.count < 1) throw ValidationError("--count must be >= 1");
  const int n = is_random_kind(c.type) ? c.count : 1;
  for (int i = 0; i < n; ++i) out.push_back(make_body(c, c.seed + static_cast<std::uint64_t>(i)));
  return out;
}

VolumeOptions volume_options(const RunConfig& c) {
  VolumeOptions o;
  o.seed = c.seed;
  if (c.samples) {
    if (*c.samples < 1) throw ValidationError("--samples must be >= 1");
    o.mc_samples = *c.samples;
  }
  return o;
}

Vec theta_or_axis(const RunConfig& c, int n) {
  if (c.theta.empty()) return Vec::Unit(n, 0);
  Vec v(static_cast<Eigen::Index>(c.theta.size()));
  for (std::size_t i = 0; i < c.theta.size(); ++i) v[static_cast<Eigen::Index>(i)] = c.theta[i];
  require_dim(v, n, "--theta");
  return v;
}

void body_inspect_table(Output& o, const ConvexBody& k) {
  CsvTable t({"axis", "support"});
  t.comment("body_hash = " + body_hash(k));
  t.comment("support: h_K(e_i) = max of x_i over K");
  for (int i = 0; i < k.dim(); ++i) t.add_row(std::vector<double>{double(i), support(k, Vec::Unit(k.dim(), i))});
  o.table(t);
}

void body_summary(Output& o, const ConvexBody& k) {
  if (o.fmt() == Format::records) {
    o.record(body_record(k));
    return;
  }
  if (o.fmt() == Format::table) {
    body_inspect_table(o, k);
    return;
  }
  auto& s = o.stream();
  s << "kind: " << k.kind() << "\n";
  s << "dim: " << k.dim() << "\n";
  s << "hash: " << body_hash(k) << "\n";
  s << "circumradius bound: " << fd(circumradius_bound(k)) << "\n";
  if (const auto pd = polytope_data(k)) {
    s << "vertices: " << pd->vertices.size() << "\n";
    s << "facets: " << pd->facets.size() << "\n";
  }
  s << format_body(k);
}

void cmd_body_inspect(const RunConfig& c, Output& o) { body_summary(o, single_body(c)); }

void cmd_body_polar(const RunConfig& c, Output& o) {
  const auto kp = polar(single_body(c));
  if (o.fmt() == Format::human) {
    o.stream() << format_body(kp);
    return;
  }
  body_summary(o, kp);
}

void cmd_body_volume(const RunConfig& c, Output& o) {
  const auto k = single_body(c);
  const auto v = volume(k, volume_options(c));
  if (o.fmt() == Format::records) {
    o.record(volume_record(k, v));
  } else if (o.fmt() == Format::table) {
    CsvTable t({"body_hash", "kind", "dim", "method", "volume", "std_error", "seed", "samples"});
    t.comment("volume: Lebesgue measure of K");
    t.add_row(std::vector<std::string>{body_hash(k), k.kind(), std::to_string(k.dim()), to_string(v.method),
                                       fd(v.value), fd(v.std_error), std::to_string(v.seed),
                                       std::to_string(v.sample_count)});
    o.table(t);
  } else {
    o.stream() << "volume: " << fd(v.value) << "\nmethod: " << to_string(v.method)
               << "\nstd_error: " << fd(v.std_error) << "\n";
    if (v.method == VolumeMethod::monte_carlo) {
      o.stream() << "seed: " << v.seed << "\nsamples: " << v.sample_count << "\n";
    }
  }
}

const std::vector<std::string> kBsColumns = {"body_hash", "kind",  "dim",       "method",           "vol_k",
                                             "vol_polar", "product", "ball_product", "ratio",        "rel_error",
                                             "verdict"};

void bs_comments(CsvTable& t) {
  t.comment("product: vol(K) vol(K polar)");
  t.comment("ball_product: vol(B)^2 for the Euclidean unit ball B");
  t.comment("ratio: product / ball_product; at most 1, equal to 1 exactly for ellipsoids");
  t.comment("rel_error: combined relative standard error, 0 for exact volumes");
}

std::vector<std::string> bs_cells(const BSReport& r) {
  return {r.body_hash, r.kind,           std::to_string(r.dim), to_string(r.method),
          fd(r.vol_k), fd(r.vol_polar),  fd(r.product),         fd(r.p_ball),
          fd(r.ratio), fd(r.rel_error),  to_string(r.verdict)};
}

void human_bs(std::ostream& s, const BSReport& r) {
  s << r.body_hash << " " << r.kind << " N=" << r.dim << " ratio=" << fd(r.ratio) << " product=" << fd(r.product)
    << " method=" << to_string(r.method) << " rel_error=" << fd(r.rel_error) << " verdict=" << to_string(r.verdict)
    << "\n";
}

void cmd_verify_bs(const RunConfig& c, Output& o) {
  if (!c.family.empty()) {
    const auto rows = sweep(c.family, c.dim, c.steps);
    if (o.fmt() == Format::records) {
      for (const auto& r : rows) o.record(sweep_record(c.family, r));
    } else if (o.fmt() == Format::table) {
      auto cols = kBsColumns;
      cols.insert(cols.begin(), "p");
      CsvTable t(cols);
      t.comment("family = " + c.family + ", unit l_p balls with 1/p uniform on [0, 1]");
      t.comment("p: exponent of the l_p norm");
      bs_comments(t);
      for (const auto& r : rows) {
        auto cells = bs_cells(r.report);
        cells.insert(cells.begin(), fd(r.parameter));
        t.add_row(cells);
      }
      o.table(t);
    } else {
      for (const auto& r : rows) {
        o.stream() << "p=" << fd(r.parameter) << " ";
        human_bs(o.stream(), r.report);
      }
    }
    return;
  }
  const auto bodies = body_list(c);
  const auto reports = verify_bs_many(bodies, volume_options(c));
  if (o.fmt() == Format::records) {
    for (const auto& r : reports) o.record(bs_record(r));
  } else if (o.fmt() == Format::table) {
    CsvTable t(kBsColumns);
    bs_comments(t);
    for (const auto& r : reports) t.add_row(bs_cells(r));
    o.table(t);
  } else {
    int violated = 0;
    for (const auto& r : reports) {
      human_bs(o.stream(), r);
      violated += r.verdict == Verdict::violated;
    }
    if (reports.size() > 1) o.stream() << "bodies: " << reports.size() << " violations: " << violated << "\n";
  }
}

void cmd_verify_mahler(const RunConfig& c, Output& o) {
  const auto bodies = body_list(c);
  const auto opts = volume_options(c);
  CsvTable t({"body_hash", "kind", "dim", "method", "product", "bound", "slack", "rel_error", "flagged"});
  t.comment("product: vol(K) vol(K polar)");
  t.comment("bound: 4^N / N!, the product of the cube and of every Hanner polytope");
  t.comment("slack: product - bound");
  for (const auto& k : bodies) {
    const auto r = mahler_check(k, opts);
    if (o.fmt() == Format::records) {
      o.record(mahler_record(k, r));
    } else if (o.fmt() == Format::table) {
      t.add_row(std::vector<std::string>{body_hash(k), k.kind(), std::to_string(k.dim()),
                                         r.exact ? "exact" : "monte_carlo", fd(r.product), fd(r.bound), fd(r.slack),
                                         fd(r.rel_error), r.flagged ? "1" : "0"});
    } else {
      o.stream() << body_hash(k) << " " << k.kind() << " N=" << k.dim() << " product=" << fd(r.product)
                 << " bound=" << fd(r.bound) << " slack=" << fd(r.slack) << " method="
                 << (r.exact ? "exact" : "monte_carlo") << (r.flagged ? " FLAGGED" : "") << "\n";
    }
  }
  if (o.fmt() == Format::table) o.table(t);
}

void cmd_verify_equality(const RunConfig& c, Output& o) {
  const auto bodies = body_list(c);
  const int n_dirs = static_cast<int>(c.dirs.value_or(64));
  const int n_t = static_cast<int>(c.samples.value_or(33));
  std::vector<std::string> cols = {"body_hash"};
  const int n = bodies.front().dim();
  for (int i = 0; i < n; ++i) cols.push_back("theta_" + std::to_string(i));
  for (const char* s : {"support", "alpha_hat", "profile_residual", "tail_deviation"}) cols.push_back(s);
  CsvTable t(cols);
  t.comment("support: h_K(theta)");
  t.comment("alpha_hat: least squares scale of the section profile against a ball-shaped profile");
  t.comment("profile_residual: sup |S - alpha_hat S_ball| / sup S");
  t.comment("tail_deviation: max over t of |D(t, theta) - mean over theta| / D(0), D the upper section tail");
  for (const auto& k : bodies) {
    const auto bs = verify_bs(k);
    const auto d = equality_diagnostics(k, n_dirs, n_t, c.seed);
    const auto h = body_hash(k);
    if (o.fmt() == Format::records) {
      o.record(bs_record(bs));
      o.record(equality_record(k, d, n_dirs, c.seed));
      for (const auto& dd : d.directions) o.record(direction_record(h, dd));
    } else if (o.fmt() == Format::table) {
      if (k.dim() != n) throw ValidationError("verify equality: table output needs bodies of one dimension");
      for (const auto& dd : d.directions) {
        std::vector<std::string> row = {h};
        for (int i = 0; i < n; ++i) row.push_back(fd(dd.theta.vec()[i]));
        for (double x : {dd.support, dd.alpha_hat, dd.profile_residual, dd.tail_deviation}) row.push_back(fd(x));
        t.add_row(row);
      }
    } else {
      human_bs(o.stream(), bs);
      o.stream() << "  directions: " << d.directions.size() << "\n  max profile residual: "
                 << fd(d.max_profile_residual) << "\n  max |alpha_hat - 1|: " << fd(d.max_alpha_error)
                 << "\n  max tail deviation: " << fd(d.max_tail_deviation) << "\n";
    }
  }
  if (o.fmt() == Format::table) o.table(t);
}

void human_estimate(std::ostream& s, const ExtremalEstimate& e) {
  s << to_string(e.quantity) << (e.probe ? " probe" : "") << ": upper=" << fd(e.upper);
  if (e.lower) s << " lower=" << fd(*e.lower);
  s << " reference=" << fd(e.conjectured_or_exact) << " certificate=" << to_string(e.certificate);
  if (e.lower_certificate) s << " lower_certificate=" << to_string(*e.lower_certificate);
  s << " seed=" << e.seed << " grid=";
  for (std::size_t i = 0; i < e.grid_spec.size(); ++i) s << (i ? "," : "") << e.grid_spec[i];
  s << "\n";
  for (const auto& [key, val] : e.diagnostics) s << "  " << key << ": " << fd(val) << "\n";
}

void cmd_extremal_rho(const RunConfig& c, Output& o) {
  const auto k = single_body(c);
  const auto h = body_hash(k);
  std::vector<int> grids;
  for (long g : c.grids.empty() ? std::vector<long>{16, 32, 64} : c.grids) {
    if (g < 1 || g > 4096) throw ValidationError("--grids: entries must lie in [1, 4096]");
    grids.push_back(static_cast<int>(g));
  }
  std::vector<ExtremalEstimate> ests;
  for (int g : grids) ests.push_back(rho_solve(k, g, c.seed));
  const auto conv = rho_convergence(k, grids);
  if (o.fmt() == Format::records) {
    for (const auto& e : ests) o.record(extremal_record(h, e));
    o.record(rho_convergence_record(h, conv));
    if (c.emit_function) o.record(bandlimited_record(extremal_rho_function(k, grids.back())));
  } else if (o.fmt() == Format::table) {
    CsvTable t({"grid", "rho", "rho_times_volume", "rel_error"});
    t.comment("body_hash = " + h);
    t.comment("rho: minimal L2 norm squared of a function with spectrum in K and value 1 at the origin");
    t.comment("rho_times_volume: rho vol(K), tends to 1 as the grid is refined");
    t.comment("rel_error: |rho vol(K) - 1|");
    t.comment("fitted_c = " + fd(conv.fitted_c) + " in rel_error ~ fitted_c / grid");
    for (const auto& r : conv.rows) t.add_row(std::vector<double>{double(r.grid), r.value, r.value_times_volume,
                                                                  r.rel_error});
    o.table(t);
  } else {
    for (const auto& e : ests) human_estimate(o.stream(), e);
    o.stream() << "fitted C: " << fd(conv.fitted_c) << "\n";
  }
}

bool unit_radius(const RunConfig& c) { return c.radius == 1.0 && c.files.empty(); }

void cmd_extremal_eta(const RunConfig& c, Output& o) {
  const auto k = single_body(c);
  const auto h = body_hash(k);
  std::vector<ExtremalEstimate> ests;
  std::optional<PoissonWitness> witness;
  if (!c.probe && c.type == "cube" && unit_radius(c)) {
    const long r = c.grids.empty() ? 1000 : c.grids.front();
    ests.push_back(eta_cube_sandwich(c.dim, r));
    witness = eta_lower_poisson(k, AdmissibleFunction::fejer(c.dim), r);
  } else if (!c.probe && c.type == "ball" && unit_radius(c)) {
    ests.push_back(eta_upper_ball(c.dim, c.grids.empty() ? 400 : static_cast<int>(c.grids.front())));
  } else {
    const int m = c.grids.empty() ? 8 : static_cast<int>(c.grids.front());
    ests.push_back(eta_lp_probe(k, m, c.samples.value_or(4096), c.rmax.value_or(0.0), c.seed));
  }
  if (o.fmt() == Format::records) {
    for (const auto& e : ests) o.record(extremal_record(h, e));
    if (witness) o.record(poisson_record(h, *witness));
  } else if (o.fmt() == Format::table) {
    CsvTable t({"quantity", "lower", "upper", "reference", "certificate", "lower_certificate", "probe", "seed"});
    t.comment("body_hash = " + h);
    t.comment("upper, lower: bounds for eta, the least integral of a nonnegative function with spectrum in K "
              "and value 1 at the origin");
    t.comment("reference: known or conjectured value 2^N / vol(K)");
    t.comment("probe = 1 marks a value from finitely many sampled constraints, not a certified bound");
    for (const auto& e : ests) {
      t.add_row(std::vector<std::string>{to_string(e.quantity), e.lower ? fd(*e.lower) : "", fd(e.upper),
                                         fd(e.conjectured_or_exact), to_string(e.certificate),
                                         e.lower_certificate ? to_string(*e.lower_certificate) : "",
                                         e.probe ? "1" : "0", std::to_string(e.seed)});
    }
    o.table(t);
  } else {
    for (const auto& e : ests) human_estimate(o.stream(), e);
    if (witness) {
      o.stream() << "lattice sum: " << fd(witness->lattice_sum) << " (remainder <= " << fd(witness->remainder_bound)
                 << ", radius " << witness->radius << ")\n";
    }
  }
}

void cmd_profile_radon(const RunConfig& c, Output& o) {
  const auto k = single_body(c);
  const Direction theta(theta_or_axis(c, k.dim()));
  const long n = c.samples.value_or(65);
  if (n < 2) throw ValidationError("--samples must be >= 2");
  const auto p = radon_profile(k, theta, static_cast<int>(n));
  const auto h = body_hash(k);
  if (o.fmt() == Format::records) {
    o.record(radon_record(h, p));
  } else if (o.fmt() == Format::table) {
    o.stream() << radon_table(h, p);
  } else {
    o.stream() << "theta: " << vec_text(theta.vec()) << "\nsupport: " << fd(p.h) << "\n";
    for (std::size_t i = 0; i < p.t.size(); ++i) o.stream() << fd(p.t[i]) << " " << fd(p.values[i]) << "\n";
  }
}

void cmd_profile_ft(const RunConfig& c, Output& o) {
  const auto k = single_body(c);
  const Direction theta(theta_or_axis(c, k.dim()));
  const long n = c.samples.value_or(81);
  const double rmax = c.rmax.value_or(4.0);
  if (n < 2) throw ValidationError("--samples must be >= 2");
  if (!(rmax > 0.0) || !std::isfinite(rmax)) throw ValidationError("--rmax must be positive");
  std::vector<double> r(static_cast<std::size_t>(n));
  std::vector<Complex> f(r.size());
  parallel_for(n, [&](long i) {
    r[i] = rmax * static_cast<double>(i) / static_cast<double>(n - 1);
    f[i] = indicator_ft(k, r[i] * theta.vec());
  });
  const auto h = body_hash(k);
  if (o.fmt() == Format::records) {
    json j;
    j["record"] = "ft_samples";
    j["body_hash"] = h;
    j["method"] = "indicator_ft";
    j["theta"] = std::vector<double>(theta.vec().data(), theta.vec().data() + theta.dim());
    j["r"] = r;
    json re = json::array(), im = json::array();
    for (const auto& z : f) {
      re.push_back(z.real());
      im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    o.record(j.dump());
  } else if (o.fmt() == Format::table) {
    CsvTable t({"r", "re", "im"});
    t.comment("body_hash = " + h);
    t.comment("theta = " + vec_text(theta.vec()));
    t.comment("re, im: Fourier transform of the indicator of K, int_K exp(-2 pi i r theta.x) dx");
    for (std::size_t i = 0; i < r.size(); ++i) t.add_row(std::vector<double>{r[i], f[i].real(), f[i].imag()});
    o.table(t);
  } else {
    o.stream() << "theta: " << vec_text(theta.vec()) << "\n";
    for (std::size_t i = 0; i < r.size(); ++i) {
      o.stream() << fd(r[i]) << " " << fd(f[i].real()) << " " << fd(f[i].imag()) << "\n";
    }
  }
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--type", c.type, "ball, cube, crosspolytope, lp, vpolytope, hpolytope, ellipsoid, hanner, lp_random");
  sub->add_option("--dim", c.dim, "dimension N")->check(CLI::Range(1, 64));
  sub->add_option("--file", c.files, "body description file (repeatable)");
  sub->add_option("--seed", c.seed, "64-bit seed");
  sub->add_option("--grids", c.grids, "grid ladder, comma-separated")->delimiter(',');
  sub->add_option("--dirs", c.dirs, "number of sampled directions");
  sub->add_option("--samples", c.samples, "sample count");
  sub->add_option("--format", c.format, "human, records or table")
      ->check(CLI::IsMember({"human", "records", "table"}));
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--theta", c.theta, "direction, comma-separated")->delimiter(',');
  sub->add_option("--rmax", c.rmax, "largest radius or spatial half-width");
  sub->add_option("--family", c.family, "generated family (lp)");
  sub->add_option("--steps", c.steps, "sweep steps")->check(CLI::PositiveNumber);
  sub->add_option("--threads", c.threads, "worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  sub->add_option("--radius", c.radius, "radius or half-width of the closed-form body");
  sub->add_option("--p", c.p, "l_p exponent (number or inf)");
  sub->add_option("--size", c.size, "size parameter of random bodies");
  sub->add_option("--count", c.count, "number of generated bodies");
  sub->add_flag("--probe", c.probe, "use the sampled-constraint LP for eta");
  sub->add_flag("--function", c.emit_function, "also emit the extremal function record");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarkit: volume products, sections and band-limited extremal problems of symmetric convex bodies"};
  app.require_subcommand(1);
  RunConfig cfg;
  using Handler = void (*)(const RunConfig&, Output&);
  Handler handler = nullptr;

  struct Leaf {
    const char* group;
    const char* name;
    const char* help;
    Handler fn;
  };
  const Leaf leaves[] = {
      {"body", "inspect", "body summary", cmd_body_inspect},
      {"body", "polar", "polar body descriptor", cmd_body_polar},
      {"body", "volume", "volume estimate", cmd_body_volume},
      {"verify", "bs", "volume product against the ball", cmd_verify_bs},
      {"verify", "mahler", "volume product against 4^N / N!", cmd_verify_mahler},
      {"verify", "equality", "section profile diagnostics", cmd_verify_equality},
      {"extremal", "rho", "L2 extremal problem over a grid ladder", cmd_extremal_rho},
      {"extremal", "eta", "L1 extremal problem bounds", cmd_extremal_eta},
      {"profile", "radon", "section volume profile", cmd_profile_radon},
      {"profile", "ft", "Fourier transform of the indicator along a ray", cmd_profile_ft},
  };
  std::map<std::string, CLI::App*> groups;
  groups["body"] = app.add_subcommand("body", "convex bodies");
  groups["verify"] = app.add_subcommand("verify", "volume product checks");
  groups["extremal"] = app.add_subcommand("extremal", "band-limited extremal problems");
  groups["profile"] = app.add_subcommand("profile", "plot data");
  for (auto& [name, g] : groups) g->require_subcommand(1);
  for (const auto& leaf : leaves) {
    auto* sub = groups[leaf.group]->add_subcommand(leaf.name, leaf.help);
    add_common(sub, cfg);
    sub->callback([&cfg, &handler, leaf] {
      cfg.command = std::string(leaf.group) + " " + leaf.name;
      handler = leaf.fn;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    Output out(cfg);
    handler(cfg, out);
    if (cfg.out.empty()) {
      std::cout << out.str();
    } else {
      std::ofstream f(cfg.out, std::ios::binary);
      if (!f) throw ValidationError("cannot open output file: " + cfg.out);
      f << out.str();
    }
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
