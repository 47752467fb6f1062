#include "polarkit/body_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace polarkit {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, int line) {
  if (tok == "inf" || tok == "+inf" || tok == "infinity") return std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ValidationError("body file line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

Vec parse_vector(const std::string& value, int line) {
  std::istringstream in(value);
  std::vector<double> xs;
  std::string tok;
  while (in >> tok) xs.push_back(parse_double(tok, line));
  if (xs.empty()) throw ValidationError("body file line " + std::to_string(line) + ": empty vector");
  return Eigen::Map<Vec>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

std::string join(const Vec& v) {
  std::string s;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ' ';
    s += format_double(v[i]);
  }
  return s;
}

void emit(const ConvexBody& k, std::ostringstream& out, const std::string& indent) {
  out << indent << "type = " << k.kind() << '\n';
  out << indent << "dimension = " << k.dim() << '\n';
  if (const auto* b = k.as<Ball>()) {
    out << indent << "radius = " << format_double(b->radius) << '\n';
  } else if (const auto* e = k.as<Ellipsoid>()) {
    for (Eigen::Index i = 0; i < e->shape.rows(); ++i)
      out << indent << "row = " << join(e->shape.row(i).transpose()) << '\n';
  } else if (const auto* h = k.as<HPolytope>()) {
    for (const auto& a : h->normals) out << indent << "normal = " << join(a) << '\n';
  } else if (const auto* v = k.as<VPolytope>()) {
    for (const auto& p : v->vertices) out << indent << "vertex = " << join(p) << '\n';
  } else if (const auto* l = k.as<LpBall>()) {
    out << indent << "p = " << format_double(l->p) << '\n';
    out << indent << "radius = " << format_double(l->radius) << '\n';
  } else if (const auto* li = k.as<LinearImage>()) {
    for (Eigen::Index i = 0; i < li->map.rows(); ++i)
      out << indent << "row = " << join(li->map.row(i).transpose()) << '\n';
    out << indent << "begin base\n";
    emit(*li->base, out, indent + "  ");
    out << indent << "end base\n";
  }
}

struct Parser {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  ConvexBody parse_block(bool nested) {
    std::string type;
    int dim = -1;
    double radius = 1.0;
    double p = 2.0;
    bool have_p = false;
    std::vector<Vec> rows;
    std::vector<Vec> normals;
    std::vector<Vec> vertices;
    std::optional<ConvexBody> base;
    bool closed = false;
    while (pos < lines.size()) {
      const int line_no = static_cast<int>(pos) + 1;
      std::string line = lines[pos++];
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line == "begin base") {
        if (base) throw ValidationError("body file line " + std::to_string(line_no) + ": duplicate base");
        base = parse_block(true);
        continue;
      }
      if (line == "end base") {
        if (!nested) throw ValidationError("body file line " + std::to_string(line_no) + ": unmatched 'end base'");
        closed = true;
        break;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ValidationError("body file line " + std::to_string(line_no) + ": expected 'key = value'");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key == "type") {
        type = value;
      } else if (key == "dimension") {
        dim = static_cast<int>(parse_double(value, line_no));
      } else if (key == "radius") {
        radius = parse_double(value, line_no);
      } else if (key == "p") {
        p = parse_double(value, line_no);
        have_p = true;
      } else if (key == "row") {
        rows.push_back(parse_vector(value, line_no));
      } else if (key == "normal") {
        normals.push_back(parse_vector(value, line_no));
      } else if (key == "vertex") {
        vertices.push_back(parse_vector(value, line_no));
      } else {
        throw ValidationError("body file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
      }
    }
    if (nested && !closed) throw ValidationError("body file: missing 'end base'");
    if (type.empty()) throw ValidationError("body file: missing 'type'");
    if (dim < 1) throw ValidationError("body file: missing or invalid 'dimension'");
    auto matrix = [&]() {
      if (static_cast<int>(rows.size()) != dim) {
        throw ValidationError("body file: expected " + std::to_string(dim) + " 'row' lines");
      }
      Mat m(dim, dim);
      for (int i = 0; i < dim; ++i) {
        if (rows[i].size() != dim) throw ValidationError("body file: row length must equal dimension");
        m.row(i) = rows[i].transpose();
      }
      return m;
    };
    auto check_points = [&](const std::vector<Vec>& pts) {
      for (const auto& v : pts)
        if (v.size() != dim) throw ValidationError("body file: point length must equal dimension");
    };
    if (type == "ball") return ConvexBody::ball(dim, radius);
    if (type == "ellipsoid") return ConvexBody::ellipsoid(matrix());
    if (type == "hpolytope") {
      check_points(normals);
      return ConvexBody::hpolytope(normals);
    }
    if (type == "vpolytope") {
      check_points(vertices);
      return ConvexBody::vpolytope(vertices);
    }
    if (type == "lp_ball") {
      if (!have_p) throw ValidationError("body file: lp_ball needs 'p'");
      return ConvexBody::lp_ball(dim, p, radius);
    }
    if (type == "cube") return ConvexBody::cube(dim, radius);
    if (type == "crosspolytope") return ConvexBody::cross_polytope(dim, radius);
    if (type == "linear_image") {
      if (!base) throw ValidationError("body file: linear_image needs a 'begin base' block");
      if (base->dim() != dim) throw ValidationError("body file: base dimension mismatch");
      return ConvexBody::linear_image(*base, matrix());
    }
    throw ValidationError("body file: unknown type '" + type + "'");
  }
};

}  // namespace

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

std::string format_body(const ConvexBody& k) {
  std::ostringstream out;
  emit(k, out, "");
  return out.str();
}

ConvexBody parse_body(const std::string& text) {
  Parser p;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) p.lines.push_back(line);
  return p.parse_block(false);
}

ConvexBody read_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open body file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_body(ss.str());
}

void write_body_file(const ConvexBody& k, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write body file '" + path + "'");
  out << format_body(k);
}

std::string body_hash(const ConvexBody& k) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : format_body(k)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polarkit
