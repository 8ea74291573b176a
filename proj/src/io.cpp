#include "scatlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "scatlab/error.hpp"

namespace scat::io {

namespace {

Json rvec_json(const RVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_to_string(x));
  return out;
}

RVec rvec_from(const Json& j) {
  RVec out;
  for (const auto& x : j) {
    if (x.is_string()) {
      out.push_back(rat_from_string(x.get<std::string>()));
    } else if (x.is_number_integer()) {
      out.emplace_back(x.get<long>());
    } else {
      fail(ErrorCode::ParseError, "expected a rational");
    }
  }
  return out;
}

IVec ivec_from(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "expected an integer list");
  IVec out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(ErrorCode::ParseError, "expected an integer");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

Json to_json(const ExchangeMatrix& b) {
  return {{"n_uf", b.n_uf()}, {"n_total", b.n_total()}, {"rows", b.entries().to_rows()}};
}

ExchangeMatrix matrix_from_json(const Json& j) {
  try {
    auto n_uf = field(j, "n_uf").get<std::size_t>();
    auto n_total = field(j, "n_total").get<std::size_t>();
    std::vector<IVec> rows;
    for (const auto& r : field(j, "rows")) rows.push_back(ivec_from(r));
    return ExchangeMatrix(n_uf, n_total, rows);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const TruncatedSeries& s) {
  Json terms = Json::array();
  for (const auto& [e, c] : s.terms())
    terms.push_back({{"exp", e}, {"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}});
  return {{"order", s.order()}, {"nvars", s.nvars()}, {"terms", terms}};
}

TruncatedSeries series_from_json(const Json& j) {
  try {
    const int order = field(j, "order").get<int>();
    const auto& terms = field(j, "terms");
    std::size_t nvars = j.contains("nvars") ? j.at("nvars").get<std::size_t>() : 0;
    if (!j.contains("nvars") && !terms.empty()) nvars = field(terms[0], "exp").size();
    TruncatedSeries s(nvars, order);
    for (const auto& t : terms) {
      auto e = ivec_from(field(t, "exp"));
      if (e.size() != nvars) fail(ErrorCode::ParseError, "exponent length differs from nvars");
      s.add_term(e, rat_from_string(field(t, "num").get<std::string>() + "/" + field(t, "den").get<std::string>()));
    }
    return s;
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const ScatteringDiagram& d) {
  Json walls = Json::array();
  const auto canon = d.canonical();
  for (const auto& w : canon.walls()) {
    Json gens = Json::array();
    for (const auto& g : w.cone.generators()) gens.push_back(rvec_json(g));
    walls.push_back({{"normal", w.fn.normal()}, {"cone", {{"generators", gens}}}, {"coeffs", rvec_json(w.fn.coeffs())}});
  }
  return {{"order", d.order()}, {"matrix", to_json(d.data().exchange())}, {"walls", walls}};
}

ScatteringDiagram diagram_from_json(const Json& j) {
  try {
    const int order = field(j, "order").get<int>();
    InitialData data(matrix_from_json(field(j, "matrix")));
    ScatteringDiagram d(data, order);
    for (const auto& w : field(j, "walls")) {
      std::vector<RVec> gens;
      for (const auto& g : field(field(w, "cone"), "generators")) gens.push_back(rvec_from(g));
      auto cone = Cone::from_generators(data.n_uf(), gens);
      d.add_wall(make_wall(data, cone, make_wall_function(ivec_from(field(w, "normal")), rvec_from(field(w, "coeffs")), order)));
    }
    return d.canonical();
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const ChamberFan& f, const IntMatrix& b) {
  const InitialData data(ExchangeMatrix::square(b.to_rows()));
  Json out = Json::array();
  for (const auto& c : f.chambers) {
    Json seq = Json::array();
    for (auto k : c.sequence) seq.push_back(k + 1);
    Json gens = Json::array();
    for (const auto& g : c.cone.generators()) gens.push_back(rvec_json(g));
    Json normals = Json::array();
    for (const auto& a : c.cone.facets()) normals.push_back(normal_from_dual(data, a));
    out.push_back({{"sequence", seq}, {"generators", gens}, {"facet_normals", normals}});
  }
  return out;
}

ChamberFan chamber_fan_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "chamber fan must be a list");
  ChamberFan out;
  for (const auto& c : j) {
    Chamber ch;
    for (auto k : ivec_from(field(c, "sequence"))) {
      if (k < 1) fail(ErrorCode::ParseError, "sequence indices are 1-based");
      ch.sequence.push_back(static_cast<std::size_t>(k - 1));
    }
    std::vector<RVec> gens;
    for (const auto& g : field(c, "generators")) gens.push_back(rvec_from(g));
    if (gens.empty()) fail(ErrorCode::ParseError, "chamber without generators");
    ch.cone = Cone::from_generators(gens.front().size(), gens);
    out.chambers.push_back(std::move(ch));
  }
  return out;
}

Json to_json(const Fan& f) {
  const auto& cones = f.cones();
  Json cs = Json::array();
  for (const auto& c : cones) {
    Json gens = Json::array();
    for (const auto& g : c.generators()) gens.push_back(rvec_json(g));
    cs.push_back({{"dimension", c.dimension()}, {"generators", gens}});
  }
  Json edges = Json::array();
  for (std::size_t i = 0; i < cones.size(); ++i)
    for (std::size_t j = 0; j < cones.size(); ++j)
      if (cones[i].dimension() + 1 == cones[j].dimension() && cones[i].is_face_of(cones[j]))
        edges.push_back({i, j});
  return {{"dimension", f.dimension()}, {"cones", cs}, {"edges", edges}};
}

Fan fan_from_json(const Json& j) {
  try {
    const auto dim = field(j, "dimension").get<std::size_t>();
    std::vector<Cone> cones;
    for (const auto& c : field(j, "cones")) {
      std::vector<RVec> gens;
      for (const auto& g : field(c, "generators")) gens.push_back(rvec_from(g));
      cones.push_back(Cone::from_generators(dim, gens));
    }
    return Fan::from_maximal(dim, cones);
  } catch (const Json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
}

Json to_json(const LaurentPolynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p) out.push_back({{"exp", m}, {"coeff", rat_to_string(c)}});
  return out;
}

LaurentPolynomial laurent_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "Laurent polynomial must be a list");
  LaurentPolynomial out;
  for (const auto& t : j) {
    auto& slot = out[ivec_from(field(t, "exp"))];
    slot += rat_from_string(field(t, "coeff").get<std::string>());
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

namespace {

constexpr double kSize = 480, kRadius = 200;

std::string num(double x) {
  std::ostringstream os;
  os.precision(2);
  os << std::fixed << x;
  return os.str();
}

std::string svg_open() {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize << "\" viewBox=\"0 0 "
     << kSize << " " << kSize << "\">\n";
  const double c = kSize / 2;
  os << "  <line x1=\"0\" y1=\"" << c << "\" x2=\"" << kSize << "\" y2=\"" << c << "\" stroke=\"#ccc\"/>\n";
  os << "  <line x1=\"" << c << "\" y1=\"0\" x2=\"" << c << "\" y2=\"" << kSize << "\" stroke=\"#ccc\"/>\n";
  return os.str();
}

// Endpoint of a ray in screen coordinates; y grows downwards.
std::pair<double, double> tip(const RVec& v, double r) {
  double x = v[0].get_d(), y = v[1].get_d();
  double len = std::hypot(x, y);
  return {kSize / 2 + r * x / len, kSize / 2 - r * y / len};
}

std::string ray_line(const RVec& v, const char* colour) {
  auto [x, y] = tip(v, kRadius);
  return "  <line x1=\"" + num(kSize / 2) + "\" y1=\"" + num(kSize / 2) + "\" x2=\"" + num(x) + "\" y2=\"" + num(y) +
         "\" stroke=\"" + colour + "\" stroke-width=\"1.5\"/>\n";
}

std::string label(const WallFunction& fn) {
  std::string n = "(";
  for (std::size_t i = 0; i < fn.normal().size(); ++i) n += (i ? "," : "") + std::to_string(fn.normal()[i]);
  n += ")";
  std::string s = "1";
  std::size_t shown = 0;
  for (std::size_t l = 0; l < fn.coeffs().size() && shown < 2; ++l) {
    const auto& c = fn.coeffs()[l];
    if (c == 0) continue;
    ++shown;
    s += c < 0 ? " - " : " + ";
    Rat a = abs(c);
    if (a != 1) s += a.get_str();
    s += "ζ^" + (l == 0 ? n : std::to_string(l + 1) + n);
  }
  std::size_t nonzero = 0;
  for (const auto& c : fn.coeffs()) nonzero += c != 0;
  if (nonzero > shown) s += " + ...";
  return s;
}

}  // namespace

std::string render_svg(const ScatteringDiagram& d) {
  if (d.rank() != 2) fail(ErrorCode::NotRank2, "rendering needs a rank-2 diagram");
  std::ostringstream os;
  os << svg_open();
  const auto canon = d.canonical();
  for (const auto& w : canon.walls()) {
    std::vector<RVec> dirs = w.cone.rays();
    for (const auto& l : w.cone.lineality()) {
      dirs.push_back(l);
      dirs.push_back(scaled(l, Rat(-1)));
    }
    for (const auto& v : dirs) {
      os << ray_line(v, "#1f4e99");
      auto [x, y] = tip(v, kRadius + 12);
      os << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"10\" text-anchor=\"middle\">" << label(w.fn)
         << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_svg(const Fan& f) {
  if (f.dimension() != 2) fail(ErrorCode::NotRank2, "rendering needs a fan in the plane");
  std::ostringstream os;
  os << svg_open();
  for (const auto& c : f.of_dimension(1)) {
    for (const auto& v : c.rays()) os << ray_line(v, "#99331f");
    for (const auto& l : c.lineality()) {
      os << ray_line(l, "#99331f");
      os << ray_line(scaled(l, Rat(-1)), "#99331f");
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace scat::io
