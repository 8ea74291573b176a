#include "scatlab/diagram.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include "scatlab/parallel.hpp"

namespace scat {

namespace {

bool rvec_less(const RVec& a, const RVec& b) { return lex_less(a, b); }

std::int64_t as_int(const Rat& x, const char* what) {
  if (x.get_den() != 1 || !x.get_num().fits_slong_p())
    fail(ErrorCode::Internal, std::string(what) + " is not a machine integer: " + x.get_str());
  return x.get_num().get_si();
}

RVec unit(std::size_t n, std::size_t i) {
  RVec e(n, Rat(0));
  e[i] = 1;
  return e;
}

// Interval of t in [0, 1] with a + t (b - a) in the cone; empty when lo > hi.
bool segment_meets(const Cone& c, const RVec& a, const RVec& b) {
  Rat lo = 0, hi = 1;
  auto d = sub(b, a);
  auto clip = [&](const Rat& base, const Rat& slope, bool equality) {
    // base + t slope >= 0 (or == 0)
    if (slope == 0) {
      if (equality ? base != 0 : base < 0) lo = 2;
      return;
    }
    Rat t = -base / slope;
    if (equality) {
      lo = std::max(lo, t);
      hi = std::min(hi, t);
    } else if (slope > 0) {
      lo = std::max(lo, t);
    } else {
      hi = std::min(hi, t);
    }
  };
  for (const auto& e : c.equalities()) clip(dot(a, e), dot(d, e), true);
  for (const auto& f : c.facets()) clip(dot(a, f), dot(d, f), false);
  return lo <= hi;
}

struct WallLess {
  bool operator()(const Wall& x, const Wall& y) const {
    if (x.fn.normal() != y.fn.normal()) return x.fn.normal() < y.fn.normal();
    if (!(x.cone == y.cone)) return x.cone < y.cone;
    return x.fn.coeffs() < y.fn.coeffs();
  }
};

}  // namespace

std::string describe(const RVec& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i].get_str();
  out << ")";
  return out.str();
}

Wall make_wall(const InitialData& data, const Cone& cone, const WallFunction& fn) {
  const std::size_t n = data.n_uf();
  if (cone.ambient() != n) fail(ErrorCode::InvalidArgument, "wall cone lives in the wrong space");
  if (fn.normal().size() != n) fail(ErrorCode::InvalidArgument, "wall normal has wrong length");
  if (cone.dimension() + 1 != n) fail(ErrorCode::InvalidArgument, "wall cone must have codimension one");
  auto w = data.dual(fn.normal());
  for (const auto& g : cone.generators())
    if (dot(g, w) != 0) fail(ErrorCode::InvalidArgument, "wall cone is not contained in the normal hyperplane");
  return Wall{cone, fn};
}

ScatteringDiagram::ScatteringDiagram(InitialData data, int order, const std::vector<Wall>& walls)
    : data_(std::move(data)), order_(order) {
  for (const auto& w : walls) add_wall(w);
}

void ScatteringDiagram::add_wall(const Wall& w) {
  auto fn = w.fn.truncated(order_);
  if (fn.is_trivial()) return;
  walls_.push_back(make_wall(data_, w.cone, fn));
}

ScatteringDiagram ScatteringDiagram::truncated(int order) const {
  return ScatteringDiagram(data_, order, walls_);
}

bool ScatteringDiagram::in_support(const RVec& p) const {
  return std::any_of(walls_.begin(), walls_.end(), [&](const Wall& w) { return w.cone.contains(p); });
}

ScatteringDiagram ScatteringDiagram::canonical() const {
  auto out = *this;
  std::sort(out.walls_.begin(), out.walls_.end(), WallLess{});
  return out;
}

ScatteringDiagram initial_diagram(const InitialData& data, int order) {
  ScatteringDiagram d(data, order);
  const std::size_t n = data.n_uf();
  for (std::size_t i = 0; i < n; ++i) {
    NVector e(n, 0);
    e[i] = 1;
    d.add_wall(Wall{Cone::hyperplane(data.dual(e)), make_wall_function(e, {Rat(1)}, order)});
  }
  return d;
}

WallKind classify_wall(const InitialData& data, const Wall& wall) {
  return wall.cone.contains(data.p_star_uf(wall.fn.normal())) ? WallKind::Incoming : WallKind::Outgoing;
}

Automorphism Automorphism::identity(const InitialData& data, int order) {
  Automorphism a;
  for (std::size_t i = 0; i < data.n_uf(); ++i) {
    MVector m(data.n_total(), 0);
    m[i] = 1;
    a.images.push_back({m, TruncatedSeries::one(data.n_uf(), order)});
  }
  return a;
}

bool Automorphism::is_identity() const {
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& m = images[i].prefactor;
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j] != (i == j ? 1 : 0)) return false;
    if (!images[i].series.is_one()) return false;
  }
  return true;
}

LaurentElement apply_crossing(const InitialData& data, const LaurentElement& x, const WallFunction& fn, int sign) {
  const auto& n0 = fn.normal();
  const int order = x.series.order();
  if (fn.order() < order) fail(ErrorCode::OrderMismatch, "wall function known to lower order than the element");
  const auto n0p = data.n_circ_primitive(n0);
  const auto deg = total_degree(n0);
  const std::size_t len = static_cast<std::size_t>(order / deg) + 1;
  Univariate f = fn.univariate();
  f.resize(len, Rat(0));

  std::map<std::int64_t, TruncatedSeries> powers;
  auto power = [&](std::int64_t e) -> const TruncatedSeries& {
    auto it = powers.find(e);
    if (it != powers.end()) return it->second;
    auto g = univariate_pow(f, Int(static_cast<long>(e)));
    TruncatedSeries s(data.n_uf(), order);
    for (std::size_t j = 0; j < g.size(); ++j) {
      Exponent ex(n0);
      for (auto& c : ex) c *= static_cast<std::int64_t>(j);
      s.add_term(ex, g[j]);
    }
    return powers.emplace(e, std::move(s)).first->second;
  };

  const std::int64_t a = sign * as_int(data.pairing(x.prefactor, n0p), "crossing exponent");
  std::map<std::int64_t, TruncatedSeries> parts;
  for (const auto& [e, c] : x.series.terms()) {
    std::int64_t b = sign * as_int(data.omega(e, n0p), "crossing exponent");
    auto [it, inserted] = parts.try_emplace(b, data.n_uf(), order);
    it->second.add_term(e, c);
  }
  TruncatedSeries out(data.n_uf(), order);
  for (const auto& [b, s] : parts) out = out + s * power(a + b);
  return {x.prefactor, out};
}

Automorphism apply_crossing(const InitialData& data, const Automorphism& a, const WallFunction& fn, int sign) {
  Automorphism out;
  for (const auto& img : a.images) out.images.push_back(apply_crossing(data, img, fn, sign));
  return out;
}

LaurentElement cross_wall(const InitialData& data, const MVector& m, const WallFunction& fn, int sign, int order) {
  MVector full(m);
  if (full.size() == data.n_uf()) full.resize(data.n_total(), 0);
  if (full.size() != data.n_total()) fail(ErrorCode::InvalidArgument, "exponent has wrong length");
  return apply_crossing(data, LaurentElement{full, TruncatedSeries::one(data.n_uf(), order)}, fn, sign);
}

std::vector<Crossing> crossings(const ScatteringDiagram& d, const PiecewisePath& path) {
  const auto& vs = path.vertices;
  if (vs.empty()) fail(ErrorCode::InvalidArgument, "empty path");
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    if (vs[i] == vs[i + 1]) fail(ErrorCode::InvalidArgument, "consecutive path vertices coincide");
  const auto& walls = d.walls();
  std::vector<RVec> duals;
  for (const auto& w : walls) duals.push_back(d.data().dual(w.fn.normal()));

  for (std::size_t j = 0; j < walls.size(); ++j)
    for (const auto& v : vs)
      if (walls[j].cone.contains(v)) fail(ErrorCode::NotGeneric, "path vertex " + describe(v) + " lies on a wall");

  std::vector<Crossing> raw;
  for (std::size_t s = 0; s + 1 < vs.size(); ++s) {
    const auto& a = vs[s];
    const auto& b = vs[s + 1];
    for (std::size_t j = 0; j < walls.size(); ++j) {
      Rat sa = dot(a, duals[j]), sb = dot(b, duals[j]);
      if (sa == 0 && sb == 0) {
        if (segment_meets(walls[j].cone, a, b))
          fail(ErrorCode::NotGeneric, "segment from " + describe(a) + " runs inside a wall");
        continue;
      }
      if (sa == 0 || sb == 0 || sign(sa) == sign(sb)) continue;
      Rat t = sa / (sa - sb);
      auto x = add(a, scaled(sub(b, a), t));
      if (walls[j].cone.contains_relint(x)) {
        raw.push_back(Crossing{s, t, walls[j].fn.normal(), sa > 0 ? 1 : -1, {j}});
      } else if (walls[j].cone.contains(x)) {
        fail(ErrorCode::NotGeneric, "path meets the boundary of a wall at " + describe(x));
      }
    }
  }
  std::stable_sort(raw.begin(), raw.end(), [](const Crossing& x, const Crossing& y) {
    return x.segment != y.segment ? x.segment < y.segment : x.time < y.time;
  });
  std::vector<Crossing> out;
  for (auto& c : raw) {
    if (!out.empty() && out.back().segment == c.segment && out.back().time == c.time) {
      if (out.back().normal != c.normal)
        fail(ErrorCode::NotGeneric, "path crosses two non-parallel walls at the same point");
      out.back().walls.push_back(c.walls[0]);
      continue;
    }
    out.push_back(std::move(c));
  }
  return out;
}

Automorphism path_ordered_product(const ScatteringDiagram& d, const PiecewisePath& path) {
  auto result = Automorphism::identity(d.data(), d.order());
  for (const auto& c : crossings(d, path)) {
    auto fn = make_wall_function(c.normal, {}, d.order());
    for (auto j : c.walls) fn = fn * d.walls()[j].fn.truncated(d.order());
    result = apply_crossing(d.data(), result, fn, c.sign);
  }
  return result;
}

LaurentElement path_ordered_product(const ScatteringDiagram& d, const PiecewisePath& path, const LaurentElement& x) {
  auto result = x;
  for (const auto& c : crossings(d, path)) {
    auto fn = make_wall_function(c.normal, {}, d.order());
    for (auto j : c.walls) fn = fn * d.walls()[j].fn.truncated(d.order());
    result = apply_crossing(d.data(), result, fn, c.sign);
  }
  return result;
}

PiecewisePath make_generic_path(const ScatteringDiagram& d, const RVec& p, const RVec& q, std::uint64_t seed) {
  if (d.in_support(p) || d.in_support(q)) fail(ErrorCode::EndpointOnSupport, "path endpoint lies on a wall");
  auto generic = [&](const PiecewisePath& path) {
    try {
      crossings(d, path);
      return true;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGeneric && e.code() != ErrorCode::InvalidArgument) throw;
      return false;
    }
  };
  if (p != q) {
    PiecewisePath direct{{p, q}};
    if (generic(direct)) return direct;
  }
  std::mt19937_64 rng(seed);
  auto random_positive = [&] {
    RVec r;
    for (std::size_t i = 0; i < d.rank(); ++i) {
      auto num = static_cast<long>(1 + rng() % 1000);
      auto den = static_cast<long>(1 + rng() % 97);
      r.push_back(Rat(num) / den);
    }
    return r;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    PiecewisePath path{{p, random_positive(), random_positive(), q}};
    if (generic(path)) return path;
  }
  fail(ErrorCode::BudgetExceeded, "no generic path found after 1000 samples");
}

namespace {

// Directions of codimension-two strata met by the support (rank 3), or the origin (rank 2).
std::vector<RVec> joints(const ScatteringDiagram& d) {
  const std::size_t n = d.rank();
  if (n == 2) return {RVec(2, Rat(0))};
  std::set<RVec, decltype(&rvec_less)> seen(&rvec_less);
  std::vector<RVec> out;
  auto consider = [&](const RVec& u) {
    if (is_zero(u)) return;
    auto p = primitive_direction(u);
    if (seen.count(p) || !d.in_support(p)) return;
    seen.insert(p);
    out.push_back(p);
  };
  const auto& walls = d.walls();
  std::vector<RVec> normals;
  for (const auto& w : walls) normals.push_back(primitive_direction(d.data().dual(w.fn.normal())));
  std::sort(normals.begin(), normals.end(), rvec_less);
  normals.erase(std::unique(normals.begin(), normals.end()), normals.end());
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      auto ns = nullspace({normals[i], normals[j]}, n);
      if (ns.size() != 1) continue;
      consider(ns[0]);
      consider(scaled(ns[0], Rat(-1)));
    }
  for (const auto& w : walls)
    for (const auto& g : w.cone.generators()) consider(g);
  return out;
}

// Loop product around one joint; empty string on success.
std::string check_joint(const ScatteringDiagram& d, const RVec& u, std::uint64_t seed) {
  const std::size_t n = d.rank();
  std::vector<RVec> basis;
  if (is_zero(u)) {
    basis = {unit(n, 0), unit(n, 1)};
  } else {
    basis = nullspace({u}, n);
  }
  std::mt19937_64 rng(seed);
  Rat eps = 1;
  for (int attempt = 0; attempt < 400; ++attempt) {
    Rat d1 = Rat(static_cast<long>(rng() % 89)) / 1009, d2 = Rat(static_cast<long>(rng() % 83)) / 1013;
    auto a = add(basis[0], scaled(basis[1], d1));
    auto b = add(basis[1], scaled(basis[0], d2));
    std::vector<RVec> square;
    for (auto [sa, sb] : {std::pair{1, 1}, {-1, 1}, {-1, -1}, {1, -1}, {1, 1}})
      square.push_back(add(u, scaled(add(scaled(a, Rat(sa)), scaled(b, Rat(sb))), eps)));
    PiecewisePath loop{square};
    std::vector<Crossing> cs;
    try {
      cs = crossings(d, loop);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGeneric) throw;
      if (attempt % 4 == 3) eps /= 2;
      continue;
    }
    bool local = true;
    for (const auto& c : cs)
      for (auto j : c.walls) local = local && d.walls()[j].cone.contains(u);
    if (!local) {
      eps /= 2;
      continue;
    }
    if (path_ordered_product(d, loop).is_identity()) return {};
    return "loop around " + describe(u) + " is not the identity";
  }
  fail(ErrorCode::BudgetExceeded, "could not place a generic loop around " + describe(u));
}

}  // namespace

ConsistencyReport check_consistency(const ScatteringDiagram& d, std::size_t loop_budget) {
  ConsistencyReport report;
  const std::size_t n = d.rank();
  if (n > 3) fail(ErrorCode::RankUnsupported, "consistency check implemented for rank at most 3");
  if (n < 2 || d.walls().empty()) return report;
  auto js = joints(d);
  if (js.size() > loop_budget) fail(ErrorCode::BudgetExceeded, std::to_string(js.size()) + " joints exceed the loop budget");
  std::vector<std::string> results(js.size());
  parallel_for(js.size(), [&](std::size_t i) { results[i] = check_joint(d, js[i], 7919 + i); });
  report.joints_checked = js.size();
  for (auto& r : results)
    if (!r.empty()) report.failures.push_back(std::move(r));
  report.pass = report.failures.empty();
  return report;
}

bool is_general_point(const InitialData& data, const RVec& p) {
  const std::size_t n = data.n_uf();
  if (p.size() != n) fail(ErrorCode::InvalidArgument, "point has wrong dimension");
  if (is_zero(p)) return false;
  RVec pairing(n);
  for (std::size_t i = 0; i < n; ++i) pairing[i] = p[i] / static_cast<long>(data.d()[i]);
  std::vector<RVec> orthant;
  for (std::size_t i = 0; i < n; ++i) orthant.push_back(unit(n, i));
  return Cone::from_constraints(n, orthant, {pairing}).dimension() <= 1;
}

WallFunction f_on_hyperplane(const ScatteringDiagram& d, const NVector& n0, const RVec& p) {
  auto f = make_wall_function(n0, {}, d.order());
  for (const auto& w : d.walls())
    if (w.fn.normal() == n0 && w.cone.contains(p)) f = f * w.fn;
  return f;
}

TruncatedSeries f_general_point(const ScatteringDiagram& d, const RVec& p) {
  if (!is_general_point(d.data(), p)) fail(ErrorCode::NotGeneral, describe(p) + " is not a general point");
  auto s = TruncatedSeries::one(d.rank(), d.order());
  for (const auto& w : d.walls())
    if (w.cone.contains(p)) s = s * w.fn.series();
  return s;
}

namespace {

std::vector<NVector> normals_of(const ScatteringDiagram& d) {
  std::set<NVector> ns;
  for (const auto& w : d.walls()) ns.insert(w.fn.normal());
  return {ns.begin(), ns.end()};
}

std::vector<Cone> hyperplane_cells(const ScatteringDiagram& d, const NVector& n0,
                                   const std::vector<const ScatteringDiagram*>& sources) {
  std::vector<RVec> cuts;
  for (const auto* s : sources)
    for (const auto& w : s->walls())
      if (w.fn.normal() == n0) cuts.insert(cuts.end(), w.cone.facets().begin(), w.cone.facets().end());
  return arrangement_cells(Cone::hyperplane(d.data().dual(n0)), cuts);
}

}  // namespace

bool equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b) {
  if (!(a.data() == b.data())) fail(ErrorCode::InvalidArgument, "diagrams over different initial data");
  if (a.order() != b.order()) fail(ErrorCode::OrderMismatch, "diagrams at different orders");
  std::set<NVector> all;
  for (const auto& n : normals_of(a)) all.insert(n);
  for (const auto& n : normals_of(b)) all.insert(n);
  for (const auto& n0 : all) {
    for (const auto& cell : hyperplane_cells(a, n0, {&a, &b})) {
      auto p = cell.relint_point();
      if (!(f_on_hyperplane(a, n0, p) == f_on_hyperplane(b, n0, p))) return false;
    }
  }
  return true;
}

ScatteringDiagram minimal_support(const ScatteringDiagram& d) {
  if (!check_consistency(d).pass) fail(ErrorCode::Inconsistent, "minimal support needs a consistent diagram");
  ScatteringDiagram out(d.data(), d.order());
  const std::size_t n = d.rank();
  for (const auto& n0 : normals_of(d)) {
    auto cells = hyperplane_cells(d, n0, {&d});
    std::vector<WallFunction> fs;
    for (const auto& c : cells) fs.push_back(f_on_hyperplane(d, n0, c.relint_point()));

    struct Region {
      Cone hull;
      std::vector<std::size_t> members;
    };
    std::vector<Region> regions;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (!fs[i].is_trivial()) regions.push_back({cells[i], {i}});
    bool merged = true;
    while (merged) {
      merged = false;
      for (std::size_t i = 0; i < regions.size() && !merged; ++i) {
        for (std::size_t j = i + 1; j < regions.size() && !merged; ++j) {
          if (!(fs[regions[i].members[0]] == fs[regions[j].members[0]])) continue;
          auto gens = regions[i].hull.generators();
          auto gj = regions[j].hull.generators();
          gens.insert(gens.end(), gj.begin(), gj.end());
          auto hull = Cone::from_generators(n, gens);
          std::vector<std::size_t> members = regions[i].members;
          members.insert(members.end(), regions[j].members.begin(), regions[j].members.end());
          bool exact = true;
          for (std::size_t c = 0; c < cells.size() && exact; ++c) {
            if (std::find(members.begin(), members.end(), c) != members.end()) continue;
            exact = hull.intersect(cells[c]).dimension() + 1 < n;
          }
          if (!exact) continue;
          regions[i] = {hull, members};
          regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(j));
          merged = true;
        }
      }
    }
    for (const auto& r : regions) out.add_wall(Wall{r.hull, fs[r.members[0]]});
  }
  return out.canonical();
}

bool has_minimal_support(const ScatteringDiagram& d) {
  for (const auto& n0 : normals_of(d)) {
    for (const auto& cell : hyperplane_cells(d, n0, {&d})) {
      auto p = cell.relint_point();
      if (!d.in_support(p)) continue;
      bool on_n0_wall = false;
      for (const auto& w : d.walls()) on_n0_wall = on_n0_wall || (w.fn.normal() == n0 && w.cone.contains(p));
      if (on_n0_wall && f_on_hyperplane(d, n0, p).is_trivial()) return false;
    }
  }
  return true;
}

std::map<NVector, std::vector<Cone>> ramparts(const ScatteringDiagram& d) {
  std::map<NVector, std::vector<Cone>> out;
  for (const auto& w : d.walls()) out[w.fn.normal()].push_back(w.cone);
  return out;
}

}  // namespace scat
