#include "scatlab/transport.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "scatlab/completion.hpp"

namespace scat {

namespace {

std::int64_t pos(std::int64_t x) { return x > 0 ? x : 0; }

RVec unit(std::size_t n, std::size_t i) {
  RVec e(n, Rat(0));
  e[i] = 1;
  return e;
}

}  // namespace

TransportMaps transport_maps(const IntMatrix& b, std::size_t k) {
  const std::size_t n = b.rows();
  if (b.cols() != n) fail(ErrorCode::InvalidArgument, "transport needs the square exchange matrix");
  if (k >= n) fail(ErrorCode::IndexOutOfRange, "transport index out of range");
  TransportMaps t;
  t.k = k;
  t.side_minus = t.side_plus = t.exponent_minus = t.exponent_plus = IntMatrix::identity(n);
  t.side_minus(k, k) = t.side_plus(k, k) = t.exponent_minus(k, k) = t.exponent_plus(k, k) = -1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == k) continue;
    // row k of [-B]_+ and [B]_+, row k of [B^T]_+ and [-B^T]_+
    t.side_minus(k, j) = pos(-b(k, j));
    t.side_plus(k, j) = pos(b(k, j));
    t.exponent_minus(k, j) = pos(b(j, k));
    t.exponent_plus(k, j) = pos(-b(j, k));
  }
  return t;
}

ScatteringDiagram apply_M_k(const ScatteringDiagram& d, std::size_t k) {
  const auto& data = d.data();
  if (k >= data.n_uf()) fail(ErrorCode::IndexOutOfRange, "transport index out of range");
  const std::size_t n = data.n_uf();
  const auto maps = transport_maps(data.exchange().square_block(), k);
  InitialData target(data.exchange().mutated(k));
  ScatteringDiagram out(target, d.order());
  const auto ek = unit(n, k);

  auto transport = [&](const Cone& cone, const WallFunction& fn, bool plus) {
    const auto& side = plus ? maps.side_plus : maps.side_minus;
    const auto& expo = plus ? maps.exponent_plus : maps.exponent_minus;
    std::vector<RVec> gens;
    for (const auto& g : cone.generators()) gens.push_back(side.apply_right(g));
    auto n0 = expo.apply(fn.normal());
    if (!in_n_plus(n0)) fail(ErrorCode::ExponentLeavesCone, "transported normal leaves N^+");
    auto f = make_wall_function(n0, fn.coeffs(), d.order());
    out.add_wall(make_wall(target, Cone::from_generators(n, gens), f));
  };

  for (const auto& w : d.walls()) {
    bool any_pos = false, any_neg = false;
    for (const auto& g : w.cone.generators()) {
      int s = sign(g[k]);
      any_pos = any_pos || s > 0;
      any_neg = any_neg || s < 0;
    }
    if (!any_pos && !any_neg) {
      out.add_wall(make_wall(target, w.cone, w.fn));
      continue;
    }
    if (any_pos && any_neg) {
      auto plus = w.cone.intersect_halfspace(ek), minus = w.cone.intersect_halfspace(scaled(ek, Rat(-1)));
      transport(plus, w.fn, true);
      transport(minus, w.fn, false);
      continue;
    }
    transport(w.cone, w.fn, any_pos);
  }
  return out.canonical();
}

int transport_source_order(const IntMatrix& b, std::size_t k, int order) {
  const auto maps = transport_maps(b, k);
  const std::size_t n = b.rows();
  std::int64_t best = order;
  // enumerate n' in N^+ with |n'| <= order
  std::vector<std::int64_t> v(n, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      if (total_degree(v) == 0) return;
      for (const auto* m : {&maps.exponent_minus, &maps.exponent_plus}) {
        auto img = m->apply(v);
        if (in_n_plus(img)) best = std::max(best, total_degree(img));
      }
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      v[i] = x;
      rec(i + 1, left - x);
    }
    v[i] = 0;
  };
  rec(0, order);
  return static_cast<int>(best);
}

}  // namespace scat

namespace scat {

bool verify_mutation_equiv(const ExchangeMatrix& b, std::size_t k, int order) {
  if (b.n_uf() != 2) fail(ErrorCode::NotRank2, "verify_mutation_equiv computes both sides by rank-2 completion");
  const int source = transport_source_order(b.square_block(), k, order);
  auto moved = apply_M_k(cluster_scatter_rank2(b, source), k).truncated(order);
  auto direct = cluster_scatter_rank2(b.mutated(k), order);
  return equivalent(moved, direct);
}

Cone chamber_of(const IntMatrix& b, const std::vector<std::size_t>& sequence) {
  const std::size_t n = b.rows();
  auto mutated = mutate_matrix(b, sequence);
  std::vector<std::size_t> back(sequence.rbegin(), sequence.rend());
  std::vector<RVec> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(eta(mutated, back, unit(n, i)));
  return Cone::from_generators(n, gens);
}

ChamberFan chamber_fan(const IntMatrix& b, std::size_t depth) {
  const std::size_t n = b.rows();
  if (b.cols() != n) fail(ErrorCode::InvalidArgument, "chamber_fan needs the square exchange matrix");
  ChamberFan fan;
  std::set<Cone> seen;
  fan.chambers.push_back({{}, chamber_of(b, {})});
  seen.insert(fan.chambers[0].cone);
  std::size_t level_begin = 0;
  for (std::size_t level = 0; level <= depth; ++level) {
    const std::size_t level_end = fan.chambers.size();
    std::set<Cone> beyond;
    for (std::size_t c = level_begin; c < level_end; ++c) {
      const auto seq = fan.chambers[c].sequence;
      for (std::size_t k = 0; k < n; ++k) {
        if (!seq.empty() && seq.back() == k) continue;
        auto next = seq;
        next.push_back(k);
        auto cone = chamber_of(b, next);
        if (seen.count(cone)) continue;
        if (level == depth) {
          beyond.insert(cone);
          continue;
        }
        seen.insert(cone);
        fan.chambers.push_back({next, cone});
      }
    }
    if (level == depth) {
      fan.frontier = beyond.size();
      fan.closed = beyond.empty();
      break;
    }
    if (fan.chambers.size() == level_end) {
      fan.closed = true;
      break;
    }
    level_begin = level_end;
  }

  InitialData data(ExchangeMatrix::square(b.to_rows()));
  for (std::size_t i = 0; i < fan.chambers.size(); ++i) {
    for (std::size_t j = i + 1; j < fan.chambers.size(); ++j) {
      auto meet = fan.chambers[i].cone.intersect(fan.chambers[j].cone);
      if (meet.dimension() + 1 != n) continue;
      fan.adjacency.push_back({i, j, normal_from_dual(data, meet.equalities()[0])});
    }
  }
  return fan;
}

NVector normal_from_dual(const InitialData& data, const RVec& a) {
  RVec scaled_up(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) scaled_up[i] = a[i] * static_cast<long>(data.d()[i]);
  auto n = primitive_integer(scaled_up);
  bool nonpositive = std::all_of(n.begin(), n.end(), [](std::int64_t x) { return x <= 0; });
  if (nonpositive)
    for (auto& x : n) x = -x;
  return n;
}

ScatteringDiagram cluster_subdiagram(const ExchangeMatrix& b, std::size_t depth, int order) {
  InitialData data(b);
  auto fan = chamber_fan(b.square_block(), depth);
  ScatteringDiagram d(data, order);
  std::set<Cone> facets;
  for (const auto& c : fan.chambers)
    for (const auto& f : c.cone.facet_cones()) facets.insert(f);
  for (const auto& f : facets) {
    auto n0 = normal_from_dual(data, f.equalities()[0]);
    if (!in_n_plus(n0)) fail(ErrorCode::Internal, "chamber facet normal is not sign-coherent");
    d.add_wall(make_wall(data, f, make_wall_function(n0, {Rat(1)}, order)));
  }
  return d.canonical();
}

}  // namespace scat
