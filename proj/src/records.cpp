#include "polarkit/records.hpp"

#include "polarkit/body_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <sstream>

namespace polarkit {

using json = nlohmann::ordered_json;

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json vec(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v[i]));
  return a;
}

json reals(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::string line(const json& j) { return j.dump(); }

json estimate_volume(const VolumeEstimate& v) {
  json j;
  j["value"] = num(v.value);
  j["method"] = to_string(v.method);
  j["std_error"] = num(v.std_error);
  j["seed"] = v.seed;
  j["samples"] = v.sample_count;
  return j;
}

}  // namespace

std::string body_record(const ConvexBody& k) {
  json j;
  j["record"] = "body";
  j["body_hash"] = body_hash(k);
  j["kind"] = k.kind();
  j["dim"] = k.dim();
  j["circumradius_bound"] = num(circumradius_bound(k));
  json axes = json::array();
  for (int i = 0; i < k.dim(); ++i) axes.push_back(num(support(k, Vec::Unit(k.dim(), i))));
  j["axis_support"] = axes;
  if (const auto pd = polytope_data(k)) {
    j["vertices"] = pd->vertices.size();
    j["facets"] = pd->facets.size();
  }
  j["descriptor"] = format_body(k);
  return line(j);
}

std::string volume_record(const ConvexBody& k, const VolumeEstimate& v) {
  json j;
  j["record"] = "volume";
  j["body_hash"] = body_hash(k);
  j["kind"] = k.kind();
  j["dim"] = k.dim();
  const json est = estimate_volume(v);
  for (const auto& [key, val] : est.items()) j[key] = val;
  return line(j);
}

std::string bs_record(const BSReport& r) {
  json j;
  j["record"] = "bs";
  j["body_hash"] = r.body_hash;
  j["kind"] = r.kind;
  j["dim"] = r.dim;
  j["method"] = to_string(r.method);
  j["vol_k"] = num(r.vol_k);
  j["vol_polar"] = num(r.vol_polar);
  j["product"] = num(r.product);
  j["ball_product"] = num(r.p_ball);
  j["ratio"] = num(r.ratio);
  j["rel_error"] = num(r.rel_error);
  j["margin_std_errors"] = num(r.margin_std_errors);
  j["verdict"] = to_string(r.verdict);
  return line(j);
}

std::string sweep_record(const std::string& family, const SweepRow& row) {
  json j = json::parse(bs_record(row.report));
  j["record"] = "sweep";
  j["family"] = family;
  j["parameter"] = num(row.parameter);
  return line(j);
}

std::string mahler_record(const ConvexBody& k, const MahlerReport& r) {
  json j;
  j["record"] = "mahler";
  j["body_hash"] = body_hash(k);
  j["kind"] = k.kind();
  j["dim"] = k.dim();
  j["method"] = r.exact ? "exact" : "monte_carlo";
  j["product"] = num(r.product);
  j["bound"] = num(r.bound);
  j["slack"] = num(r.slack);
  j["rel_error"] = num(r.rel_error);
  j["flagged"] = r.flagged;
  return line(j);
}

std::string direction_record(const std::string& body_hash, const DirectionDiagnostics& d) {
  json j;
  j["record"] = "direction";
  j["body_hash"] = body_hash;
  j["theta"] = vec(d.theta.vec());
  j["support"] = num(d.support);
  j["alpha_hat"] = num(d.alpha_hat);
  j["profile_residual"] = num(d.profile_residual);
  j["tail_deviation"] = num(d.tail_deviation);
  return line(j);
}

std::string equality_record(const ConvexBody& k, const EqualityDiagnostics& d, int n_dirs, std::uint64_t seed) {
  json j;
  j["record"] = "equality";
  j["body_hash"] = body_hash(k);
  j["kind"] = k.kind();
  j["dim"] = k.dim();
  j["method"] = "profile_fit";
  j["seed"] = seed;
  j["sampled_directions"] = n_dirs;
  j["directions"] = d.directions.size();
  j["t_samples"] = d.t_fractions.size();
  j["max_profile_residual"] = num(d.max_profile_residual);
  j["max_alpha_error"] = num(d.max_alpha_error);
  j["max_tail_deviation"] = num(d.max_tail_deviation);
  return line(j);
}

std::string extremal_record(const std::string& body_hash, const ExtremalEstimate& e) {
  json j;
  j["record"] = "extremal";
  j["body_hash"] = body_hash;
  j["quantity"] = to_string(e.quantity);
  j["lower"] = e.lower ? num(*e.lower) : json();
  j["upper"] = num(e.upper);
  j["conjectured_or_exact"] = num(e.conjectured_or_exact);
  j["certificate"] = to_string(e.certificate);
  j["lower_certificate"] = e.lower_certificate ? json(to_string(*e.lower_certificate)) : json();
  j["grid_spec"] = e.grid_spec;
  j["seed"] = e.seed;
  j["probe"] = e.probe;
  json diag = json::object();
  for (const auto& [key, val] : e.diagnostics) diag[key] = num(val);
  j["diagnostics"] = diag;
  return line(j);
}

std::string rho_convergence_record(const std::string& body_hash, const RhoConvergence& c) {
  json j;
  j["record"] = "rho_convergence";
  j["body_hash"] = body_hash;
  json rows = json::array();
  for (const auto& r : c.rows) {
    json row;
    row["grid"] = r.grid;
    row["value"] = num(r.value);
    row["value_times_volume"] = num(r.value_times_volume);
    row["rel_error"] = num(r.rel_error);
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["fitted_c"] = num(c.fitted_c);
  return line(j);
}

std::string poisson_record(const std::string& body_hash, const PoissonWitness& w) {
  json j;
  j["record"] = "poisson_witness";
  j["body_hash"] = body_hash;
  j["lattice_sum"] = num(w.lattice_sum);
  j["remainder_bound"] = num(w.remainder_bound);
  j["value_at_zero"] = num(w.value_at_zero);
  j["radius"] = w.radius;
  return line(j);
}

std::string radon_record(const std::string& body_hash, const RadonProfile& p) {
  json j;
  j["record"] = "radon_profile";
  j["body_hash"] = body_hash;
  j["theta"] = vec(p.theta.vec());
  j["support"] = num(p.h);
  j["method"] = p.closed_form ? *p.closed_form : "section_volume";
  j["t"] = reals(p.t);
  j["values"] = reals(p.values);
  return line(j);
}

std::string bandlimited_record(const BandlimitedFunction& f) {
  json j;
  j["record"] = "bandlimited_function";
  j["spectrum_body_hash"] = body_hash(f.spectrum_body);
  j["spectrum_body"] = format_body(f.spectrum_body);
  j["cell_measure"] = num(f.cell_measure);
  j["half_step"] = vec(f.half_step);
  json nodes = json::array();
  for (const auto& v : f.freq_nodes) nodes.push_back(vec(v));
  j["nodes"] = nodes;
  json w = json::array();
  for (const auto& c : f.weights) w.push_back(json::array({num(c.real()), num(c.imag())}));
  j["weights"] = w;
  return line(j);
}

void CsvTable::add_row(const std::vector<double>& row) {
  std::vector<std::string> cells;
  cells.reserve(row.size());
  for (double x : row) cells.push_back(format_double(x));
  add_row(cells);
}

void CsvTable::add_row(const std::vector<std::string>& row) {
  if (row.size() != columns_.size()) throw ValidationError("CsvTable: row width does not match the header");
  rows_.push_back(row);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  for (const auto& c : comments_) out << "# " << c << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << "\n";
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  }
  return out.str();
}

std::string radon_table(const std::string& body_hash, const RadonProfile& p) {
  CsvTable t({"t", "S"});
  std::string th;
  for (Eigen::Index i = 0; i < p.theta.vec().size(); ++i) th += (i ? " " : "") + format_double(p.theta.vec()[i]);
  t.comment("body_hash = " + body_hash);
  t.comment("theta = " + th);
  t.comment("method = " + (p.closed_form ? *p.closed_form : std::string("section_volume")));
  t.comment("t: signed height along theta");
  t.comment("S: (N-1)-volume of the section of K by the hyperplane x.theta = t");
  for (std::size_t i = 0; i < p.t.size(); ++i) t.add_row(std::vector<double>{p.t[i], p.values[i]});
  return t.str();
}

}  // namespace polarkit
