#include "scatlab/theta.hpp"

#include <algorithm>
#include <sstream>

#include "scatlab/error.hpp"
#include "scatlab/parallel.hpp"
#include "scatlab/transport.hpp"

namespace scat {

namespace {

MVector full_exponent(const InitialData& data, const MVector& m) {
  MVector out(m);
  if (out.size() == data.n_uf()) out.resize(data.n_total(), 0);
  if (out.size() != data.n_total()) fail(ErrorCode::InvalidArgument, "exponent has wrong length");
  return out;
}

RVec uf_part(const InitialData& data, const MVector& m) {
  RVec out;
  for (std::size_t i = 0; i < data.n_uf(); ++i) out.emplace_back(static_cast<long>(m[i]));
  return out;
}

MVector shifted(const InitialData& data, const MVector& m0, const NVector& v) {
  auto p = data.p_star(v);
  MVector out(m0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = checked_add(out[i], p[i]);
  return out;
}

void all_exponents(std::size_t n, int k, NVector& cur, std::size_t i, std::vector<NVector>& out) {
  if (i == n) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= k; ++a) {
    cur[i] = a;
    all_exponents(n, k - a, cur, i + 1, out);
  }
  cur[i] = 0;
}

struct Tracer {
  const ScatteringDiagram& d;
  const MVector& m0;
  std::vector<RVec> duals;
  std::vector<BrokenLine>* out;

  // Walks backwards from x along +m_uf; `line` holds segments and bends in reverse order.
  void trace(const RVec& x, const NVector& v, BrokenLine line) {
    const auto& data = d.data();
    const auto m = shifted(data, m0, v);
    const auto u = uf_part(data, m);
    if (is_zero(u)) return;

    std::optional<Rat> tmin;
    std::vector<std::size_t> hit;
    for (std::size_t j = 0; j < d.walls().size(); ++j) {
      Rat du = dot(u, duals[j]);
      if (du == 0) continue;
      Rat t = -dot(x, duals[j]) / du;
      if (t <= 0) continue;
      if (tmin && t > *tmin) continue;
      auto p = add(x, scaled(u, t));
      if (!d.walls()[j].cone.contains(p)) continue;
      if (!tmin || t < *tmin) hit.clear();
      tmin = t;
      hit.push_back(j);
    }
    if (!tmin) {
      if (std::all_of(v.begin(), v.end(), [](auto a) { return a == 0; })) {
        line.segments.push_back({Rat(1), m, v});
        std::reverse(line.segments.begin(), line.segments.end());
        std::reverse(line.bends.begin(), line.bends.end());
        // each later segment holds its bend factor; turn them into running products
        Rat c = 1;
        for (std::size_t i = 0; i < line.segments.size(); ++i) {
          if (i > 0) c *= line.segments[i].coeff;
          line.segments[i].coeff = c;
        }
        out->push_back(std::move(line));
      }
      return;
    }
    const auto p = add(x, scaled(u, *tmin));
    const auto& n0 = d.walls()[hit.front()].fn.normal();
    auto f = make_wall_function(n0, {}, d.order());
    for (auto j : hit) {
      const auto& w = d.walls()[j];
      if (w.fn.normal() != n0) fail(ErrorCode::NonGenericEndpoint, "a broken line meets two non-parallel walls at " + describe(p));
      if (!w.cone.contains_relint(p)) fail(ErrorCode::NonGenericEndpoint, "a broken line meets the boundary of a wall at " + describe(p));
      f = f * w.fn.truncated(d.order());
    }
    // straight through
    trace(p, v, line);

    const auto n0p = data.n_circ_primitive(n0);
    for (std::int64_t a = 1;; ++a) {
      NVector prev(v);
      bool ok = true;
      for (std::size_t i = 0; i < prev.size(); ++i) {
        prev[i] -= a * n0[i];
        ok = ok && prev[i] >= 0;
      }
      if (!ok) break;
      const auto mprev = shifted(data, m0, prev);
      // the sign of n is chosen so that <m, n> > 0, so only the size of the pairing matters
      Rat e = abs(data.pairing(mprev, n0p));
      if (e == 0) continue;
      auto uni = f.univariate();
      uni.resize(static_cast<std::size_t>(a) + 1, Rat(0));
      auto g = univariate_pow(uni, Int(e.get_num()));
      Rat c = g[static_cast<std::size_t>(a)];
      if (c == 0) continue;
      auto next = line;
      // coefficient stored on the later segment is the factor picked up at this bend
      next.segments.push_back({c, m, v});
      next.bends.push_back(p);
      trace(p, prev, std::move(next));
    }
  }
};

}  // namespace

RVec default_basepoint(std::size_t n) {
  static const long primes[] = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049, 1051, 1061};
  RVec q;
  for (std::size_t i = 0; i < n; ++i) q.push_back(Rat(primes[i % 10] + 100 * static_cast<long>(i / 10)) / 1000);
  return q;
}

std::vector<BrokenLine> broken_lines(const ScatteringDiagram& d, const MVector& m0_in, const RVec& q, int k) {
  const auto& data = d.data();
  const auto m0 = full_exponent(data, m0_in);
  if (is_zero(uf_part(data, m0)) && std::all_of(m0.begin(), m0.end(), [](auto a) { return a == 0; }))
    fail(ErrorCode::ZeroExponent, "broken lines need a nonzero exponent");
  if (q.size() != data.n_uf()) fail(ErrorCode::InvalidArgument, "endpoint has wrong length");
  if (k > d.order()) fail(ErrorCode::OrderMismatch, "diagram is known to a lower order");
  std::vector<RVec> duals;
  for (const auto& w : d.walls()) {
    duals.push_back(data.dual(w.fn.normal()));
    if (dot(q, duals.back()) == 0) fail(ErrorCode::NonGenericEndpoint, "endpoint lies on a wall hyperplane");
  }
  if (is_zero(uf_part(data, m0))) {
    BrokenLine line{m0, q, {{Rat(1), m0, NVector(data.n_uf(), 0)}}, {}};
    return {line};
  }

  std::vector<NVector> finals;
  NVector cur(data.n_uf(), 0);
  all_exponents(data.n_uf(), k, cur, 0, finals);
  std::vector<std::vector<BrokenLine>> found(finals.size());
  parallel_for(finals.size(), [&](std::size_t i) {
    Tracer t{d, m0, duals, &found[i]};
    t.trace(q, finals[i], BrokenLine{m0, q, {}, {}});
  });
  std::vector<BrokenLine> out;
  for (auto& f : found) {
    std::sort(f.begin(), f.end(), [](const BrokenLine& a, const BrokenLine& b) {
      return std::lexicographical_compare(a.bends.begin(), a.bends.end(), b.bends.begin(), b.bends.end(), lex_less);
    });
    for (auto& l : f) out.push_back(std::move(l));
  }
  return out;
}

LaurentElement theta_broken(const ScatteringDiagram& d, const MVector& m0, const RVec& q, int k) {
  const auto& data = d.data();
  LaurentElement out{full_exponent(data, m0), TruncatedSeries(data.n_uf(), k)};
  for (const auto& line : broken_lines(d, m0, q, k)) out.series.add_term(line.last().gained, line.last().coeff);
  return out;
}

PiecewisePath chamber_chain_path(const IntMatrix& b, const std::vector<std::size_t>& sequence, const RVec& from,
                                 const RVec& q) {
  PiecewisePath path{{from}};
  auto current = chamber_of(b, sequence);
  for (std::size_t len = sequence.size(); len > 0; --len) {
    auto next = chamber_of(b, {sequence.begin(), sequence.begin() + static_cast<std::ptrdiff_t>(len - 1)});
    auto facet = current.intersect(next);
    if (facet.dimension() + 1 != b.rows()) fail(ErrorCode::Internal, "consecutive chambers are not adjacent");
    const auto c = facet.relint_point();
    const auto da = sub(current.relint_point(), c), db = sub(next.relint_point(), c);
    const auto h = facet.equalities().front();
    for (Rat eps(1, 2);; eps /= 2) {
      auto a = add(c, scaled(da, eps)), bb = add(c, scaled(db, eps));
      Rat sa = dot(a, h), sb = dot(bb, h);
      auto p = add(a, scaled(sub(bb, a), sa / (sa - sb)));
      if (facet.contains_relint(p)) {
        path.vertices.push_back(a);
        path.vertices.push_back(bb);
        break;
      }
    }
    current = std::move(next);
  }
  path.vertices.push_back(q);
  return path;
}

LaurentElement theta_pop(const ExchangeMatrix& b, const MVector& m0_in, std::size_t depth, int k,
                         const std::optional<RVec>& start) {
  const InitialData data(b);
  const auto m0 = full_exponent(data, m0_in);
  const auto point = uf_part(data, m0);
  auto fan = chamber_fan(b.square_block(), depth);
  const Chamber* home = nullptr;
  for (const auto& c : fan.chambers)
    if (c.cone.contains(point)) {
      home = &c;
      break;
    }
  if (!home) fail(ErrorCode::NotInChamberFan, "exponent is not in a chamber found within the depth");
  RVec from = start.value_or(home->cone.relint_point());
  if (!home->cone.contains_relint(from) || home->cone.dimension() != data.n_uf())
    fail(ErrorCode::InvalidArgument, "start point is not interior to the chamber of the exponent");
  const auto q = default_basepoint(data.n_uf());
  auto path = chamber_chain_path(b.square_block(), home->sequence, from, q);
  auto diagram = cluster_subdiagram(b, home->sequence.size(), k);
  LaurentElement x{m0, TruncatedSeries::one(data.n_uf(), k)};
  return path_ordered_product(diagram, path, x);
}

LaurentPolynomial to_laurent(const InitialData& data, const LaurentElement& x) {
  LaurentPolynomial out;
  const auto m0 = full_exponent(data, x.prefactor);
  for (const auto& [v, c] : x.series.terms()) {
    auto& slot = out[shifted(data, m0, v)];
    slot += c;
  }
  std::erase_if(out, [](const auto& e) { return e.second == 0; });
  return out;
}

LaurentPolynomial clear_frozen(const LaurentPolynomial& p, std::size_t n_uf) {
  if (p.empty()) return p;
  MVector shift(p.begin()->first.size(), 0);
  for (const auto& [m, c] : p)
    for (std::size_t i = n_uf; i < m.size(); ++i) shift[i] = std::max(shift[i], -m[i]);
  LaurentPolynomial out;
  for (const auto& [m, c] : p) {
    MVector e(m);
    for (std::size_t i = n_uf; i < e.size(); ++i) e[i] += shift[i];
    out[e] = c;
  }
  return out;
}

LaurentElement clear_frozen(const InitialData& data, const LaurentElement& x) {
  auto poly = to_laurent(data, x);
  auto out = x;
  out.prefactor = full_exponent(data, x.prefactor);
  for (std::size_t i = data.n_uf(); i < data.n_total(); ++i) {
    std::int64_t lowest = 0;
    for (const auto& [m, c] : poly) lowest = std::min(lowest, m[i]);
    out.prefactor[i] -= lowest;
  }
  return out;
}

std::string describe(const LaurentPolynomial& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << rat_to_string(c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] != 0) os << "*z" << i + 1 << (m[i] == 1 ? "" : "^" + std::to_string(m[i]));
  }
  return os.str();
}

}  // namespace scat
