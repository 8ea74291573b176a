#include "scatlab/cone.hpp"

#include <algorithm>
#include <set>

#include "scatlab/error.hpp"

namespace scat {

namespace {

struct LexLess {
  bool operator()(const RVec& a, const RVec& b) const { return lex_less(a, b); }
};

using VecSet = std::set<RVec, LexLess>;

std::vector<RVec> identity_basis(std::size_t dim) {
  std::vector<RVec> out;
  for (std::size_t i = 0; i < dim; ++i) {
    RVec e(dim, Rat(0));
    e[i] = 1;
    out.push_back(e);
  }
  return out;
}

RMatrix concat(std::initializer_list<const std::vector<RVec>*> parts) {
  RMatrix m;
  for (const auto* p : parts) m.insert(m.end(), p->begin(), p->end());
  return m;
}

// Calls fn on every k-subset of {0..n-1} until fn returns false.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Orthogonal projection of v onto the complement of span(basis).
RVec project_out(const RVec& v, const std::vector<RVec>& basis) {
  if (basis.empty()) return v;
  const std::size_t l = basis.size();
  // Solve (M M^T) c = M v, then v - M^T c.
  RMatrix aug(l, RVec(l + 1, Rat(0)));
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = 0; j < l; ++j) aug[i][j] = dot(basis[i], basis[j]);
    aug[i][l] = dot(basis[i], v);
  }
  rref(aug, l);
  RVec out(v);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t c = 0; c < v.size(); ++c) out[c] -= aug[i][l] * basis[i][c];
  return out;
}

std::vector<RVec> dedupe_directions(const std::vector<RVec>& vs) {
  VecSet seen;
  std::vector<RVec> out;
  for (const auto& v : vs) {
    if (is_zero(v)) continue;
    auto p = primitive_direction(v);
    if (seen.insert(p).second) out.push_back(p);
  }
  return out;
}

}  // namespace

bool lex_less(const RVec& a, const RVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool operator<(const Cone& a, const Cone& b) {
  if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
  auto cmp = [](const std::vector<RVec>& x, const std::vector<RVec>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), LexLess{});
  };
  if (a.lineality_ != b.lineality_) return cmp(a.lineality_, b.lineality_);
  return cmp(a.rays_, b.rays_);
}

Cone Cone::from_generators(std::size_t dim, const std::vector<RVec>& raw) {
  for (const auto& g : raw)
    if (g.size() != dim) fail(ErrorCode::InvalidArgument, "cone generator has wrong dimension");
  auto gens = dedupe_directions(raw);
  Cone c;
  c.ambient_ = dim;
  c.equalities_ = gens.empty() ? identity_basis(dim) : nullspace(gens, dim);
  const std::size_t r = dim - c.equalities_.size();
  if (r == 0) return c;

  VecSet facets;
  for_each_subset(gens.size(), r - 1, [&](const std::vector<std::size_t>& idx) {
    RMatrix rows(c.equalities_);
    for (auto i : idx) rows.push_back(gens[i]);
    auto ns = nullspace(rows, dim);
    if (ns.size() != 1) return;
    int pos = 0, neg = 0;
    for (const auto& g : gens) {
      int s = sign(dot(g, ns[0]));
      pos += s > 0;
      neg += s < 0;
    }
    if (pos > 0 && neg > 0) return;
    if (pos == 0 && neg == 0) return;
    facets.insert(neg > 0 ? scaled(ns[0], Rat(-1)) : ns[0]);
  });
  c.facets_.assign(facets.begin(), facets.end());

  c.lineality_ = nullspace(concat({&c.equalities_, &c.facets_}), dim);
  const std::size_t pointed_dim = r - c.lineality_.size();
  VecSet rays;
  for (const auto& g : gens) {
    auto p = project_out(g, c.lineality_);
    if (is_zero(p)) continue;
    RMatrix tight;
    for (const auto& a : c.facets_)
      if (dot(g, a) == 0) tight.push_back(a);
    if (rank(tight, dim) + 1 == pointed_dim) rays.insert(primitive_direction(p));
  }
  c.rays_.assign(rays.begin(), rays.end());
  return c;
}

Cone Cone::from_constraints(std::size_t dim, const std::vector<RVec>& ineq_raw, const std::vector<RVec>& eqs) {
  for (const auto& a : ineq_raw)
    if (a.size() != dim) fail(ErrorCode::InvalidArgument, "constraint has wrong dimension");
  for (const auto& a : eqs)
    if (a.size() != dim) fail(ErrorCode::InvalidArgument, "constraint has wrong dimension");
  auto ineqs = dedupe_directions(ineq_raw);
  auto span = eqs.empty() ? identity_basis(dim) : nullspace(eqs, dim);
  auto lin = nullspace(concat({&eqs, &ineqs}), dim);
  const std::size_t p = span.size() - lin.size();
  std::vector<RVec> gens;
  for (const auto& l : lin) {
    gens.push_back(l);
    gens.push_back(scaled(l, Rat(-1)));
  }
  if (p > 0) {
    for_each_subset(ineqs.size(), p - 1, [&](const std::vector<std::size_t>& idx) {
      RMatrix rows = concat({&eqs, &lin});
      for (auto i : idx) rows.push_back(ineqs[i]);
      auto ns = nullspace(rows, dim);
      if (ns.size() != 1) return;
      for (int s : {1, -1}) {
        auto v = scaled(ns[0], Rat(s));
        bool ok = std::all_of(ineqs.begin(), ineqs.end(), [&](const RVec& a) { return dot(v, a) >= 0; });
        if (ok) {
          gens.push_back(v);
          break;
        }
      }
    });
  }
  return from_generators(dim, gens);
}

Cone Cone::whole(std::size_t dim) { return from_constraints(dim, {}, {}); }

Cone Cone::origin(std::size_t dim) { return from_generators(dim, {}); }

Cone Cone::hyperplane(const RVec& normal) { return from_constraints(normal.size(), {}, {normal}); }

Cone Cone::halfspace(const RVec& normal) { return from_constraints(normal.size(), {normal}, {}); }

std::vector<RVec> Cone::generators() const {
  std::vector<RVec> out(rays_);
  for (const auto& l : lineality_) {
    out.push_back(l);
    out.push_back(scaled(l, Rat(-1)));
  }
  return out;
}

bool Cone::contains(const RVec& v) const {
  if (v.size() != ambient_) fail(ErrorCode::InvalidArgument, "point has wrong dimension");
  for (const auto& e : equalities_)
    if (dot(v, e) != 0) return false;
  for (const auto& a : facets_)
    if (dot(v, a) < 0) return false;
  return true;
}

bool Cone::contains_relint(const RVec& v) const {
  if (v.size() != ambient_) fail(ErrorCode::InvalidArgument, "point has wrong dimension");
  for (const auto& e : equalities_)
    if (dot(v, e) != 0) return false;
  for (const auto& a : facets_)
    if (dot(v, a) <= 0) return false;
  return true;
}

bool Cone::contains(const Cone& o) const {
  auto gens = o.generators();
  return std::all_of(gens.begin(), gens.end(), [&](const RVec& g) { return contains(g); });
}

RVec Cone::relint_point() const {
  RVec p(ambient_, Rat(0));
  for (const auto& r : rays_) p = add(p, r);
  return p;
}

Cone Cone::intersect(const Cone& o) const {
  if (o.ambient_ != ambient_) fail(ErrorCode::InvalidArgument, "cones in different ambient spaces");
  return from_constraints(ambient_, concat({&facets_, &o.facets_}), concat({&equalities_, &o.equalities_}));
}

Cone Cone::intersect_hyperplane(const RVec& normal) const {
  auto eqs = equalities_;
  eqs.push_back(normal);
  return from_constraints(ambient_, facets_, eqs);
}

Cone Cone::intersect_halfspace(const RVec& normal) const {
  auto ineqs = facets_;
  ineqs.push_back(normal);
  return from_constraints(ambient_, ineqs, equalities_);
}

bool Cone::is_face_of(const Cone& o) const {
  if (o.ambient_ != ambient_ || !o.contains(*this)) return false;
  auto gens = generators();
  Cone f = o;
  for (const auto& a : o.facets_) {
    bool tight = std::all_of(gens.begin(), gens.end(), [&](const RVec& g) { return dot(g, a) == 0; });
    if (tight) f = f.intersect_hyperplane(a);
  }
  return f == *this;
}

std::vector<Cone> Cone::facet_cones() const {
  std::vector<Cone> out;
  for (const auto& a : facets_) out.push_back(intersect_hyperplane(a));
  return out;
}

std::vector<Cone> Cone::faces() const {
  std::set<Cone> seen{*this};
  std::vector<Cone> order{*this};
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto cur = order[i];
    for (const auto& a : facets_) {
      if (dot(cur.relint_point(), a) == 0) continue;
      auto f = cur.intersect_hyperplane(a);
      if (seen.insert(f).second) order.push_back(f);
    }
  }
  return order;
}

std::vector<Cone> arrangement_cells(const Cone& region, const std::vector<RVec>& hyperplanes) {
  std::vector<Cone> cells{region};
  for (const auto& h : hyperplanes) {
    std::vector<Cone> next;
    for (const auto& c : cells) {
      int pos = 0, neg = 0;
      for (const auto& g : c.generators()) {
        int s = sign(dot(g, h));
        pos += s > 0;
        neg += s < 0;
      }
      if (pos > 0 && neg > 0) {
        next.push_back(c.intersect_halfspace(h));
        next.push_back(c.intersect_halfspace(scaled(h, Rat(-1))));
      } else {
        next.push_back(c);
      }
    }
    cells = std::move(next);
  }
  return cells;
}

}  // namespace scat
