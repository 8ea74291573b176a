#include "scatlab/fans.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

#include "scatlab/error.hpp"
#include "scatlab/parallel.hpp"
#include "scatlab/transport.hpp"

namespace scat {

Fan Fan::from_maximal(std::size_t dim, const std::vector<Cone>& cones) {
  std::set<Cone> all;
  for (const auto& c : cones) {
    if (c.ambient() != dim) fail(ErrorCode::InvalidArgument, "fan cone has the wrong ambient dimension");
    for (auto& f : c.faces()) all.insert(std::move(f));
  }
  Fan out;
  out.dim_ = dim;
  out.cones_.assign(all.begin(), all.end());
  return out;
}

std::vector<Cone> Fan::maximal() const {
  std::vector<Cone> out;
  for (const auto& c : cones_) {
    bool covered = false;
    for (const auto& o : cones_)
      if (o.dimension() > c.dimension() && o.contains(c)) {
        covered = true;
        break;
      }
    if (!covered) out.push_back(c);
  }
  return out;
}

std::vector<Cone> Fan::of_dimension(std::size_t d) const {
  std::vector<Cone> out;
  for (const auto& c : cones_)
    if (c.dimension() == d) out.push_back(c);
  return out;
}

bool Fan::is_complete() const {
  auto max = maximal();
  if (max.empty()) return false;
  std::map<Cone, int> facet_use;
  for (const auto& c : max) {
    if (c.dimension() != dim_) return false;
    for (auto& f : c.facet_cones()) ++facet_use[f];
  }
  return std::all_of(facet_use.begin(), facet_use.end(), [](const auto& e) { return e.second == 2; });
}

FanCheck is_fan(const std::vector<Cone>& cones) {
  FanCheck out;
  std::set<Cone> present(cones.begin(), cones.end());
  for (std::size_t i = 0; i < cones.size(); ++i) {
    for (const auto& f : cones[i].faces()) {
      if (!present.count(f)) return {false, i, std::nullopt, "a face of this cone is missing"};
    }
  }
  // closed under faces, so maximal pairs suffice
  std::vector<std::size_t> max;
  for (std::size_t i = 0; i < cones.size(); ++i) {
    bool covered = false;
    for (std::size_t j = 0; j < cones.size() && !covered; ++j)
      covered = cones[j].dimension() > cones[i].dimension() && cones[j].contains(cones[i]);
    if (!covered) max.push_back(i);
  }
  std::vector<std::optional<std::size_t>> bad(max.size());
  parallel_for(max.size(), [&](std::size_t a) {
    const auto& ca = cones[max[a]];
    for (std::size_t b = a + 1; b < max.size(); ++b) {
      const auto& cb = cones[max[b]];
      auto inter = ca.intersect(cb);
      if (!inter.is_face_of(ca) || !inter.is_face_of(cb)) {
        bad[a] = max[b];
        return;
      }
    }
  });
  for (std::size_t a = 0; a < max.size(); ++a)
    if (bad[a]) return {false, max[a], bad[a], "intersection is not a face of both cones"};
  return out;
}

Fan scat_fan(const ScatteringDiagram& d) {
  const std::size_t n = d.rank();
  if (n > 3) fail(ErrorCode::RankUnsupported, "scattering fans are computed in rank at most 3");
  if (!has_minimal_support(d)) fail(ErrorCode::NotMinimalSupport, "diagram does not have minimal support");
  if (!check_consistency(d).pass) fail(ErrorCode::Inconsistent, "scattering fan needs a consistent diagram");

  std::set<RVec, decltype(&lex_less)> planes(&lex_less);
  for (const auto& w : d.walls()) planes.insert(w.cone.equalities().front());
  auto cells = arrangement_cells(Cone::whole(n), {planes.begin(), planes.end()});

  std::vector<std::size_t> parent(cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      auto inter = cells[i].intersect(cells[j]);
      if (inter.dimension() + 1 != n) continue;
      if (!d.in_support(inter.relint_point())) parent[find(i)] = find(j);
    }
  }
  std::map<std::size_t, std::vector<RVec>> groups;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    auto& g = groups[find(i)];
    for (const auto& v : cells[i].generators()) g.push_back(v);
  }
  std::vector<Cone> max;
  for (const auto& [root, gens] : groups) {
    auto hull = Cone::from_generators(n, gens);
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (find(i) != root && hull.contains_relint(cells[i].relint_point()))
        fail(ErrorCode::Internal, "a complement component of the support is not convex");
    max.push_back(std::move(hull));
  }
  return Fan::from_maximal(n, max);
}

namespace {

// eta on a cell where it is linear: coordinate i of the image is dot(v, cols[i]).
std::vector<RVec> compose(const std::vector<RVec>& cols, const IntMatrix& side) {
  const std::size_t n = cols.size();
  std::vector<RVec> out(n, RVec(cols[0].size(), Rat(0)));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (side(i, j) != 0) out[j] = add(out[j], scaled(cols[i], Rat(side(i, j))));
  return out;
}

void for_each_sequence(std::size_t n, std::size_t len, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> seq;
  std::function<void()> rec = [&] {
    if (seq.size() == len) {
      fn(seq);
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!seq.empty() && seq.back() == k) continue;
      seq.push_back(k);
      rec();
      seq.pop_back();
    }
  };
  rec();
}

std::vector<RVec> identity_cols(std::size_t n) {
  std::vector<RVec> cols(n, RVec(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
  return cols;
}

}  // namespace

Fan mutation_fan(const IntMatrix& b, std::size_t depth) {
  const std::size_t n = b.rows();
  auto cells = arrangement_cells(Cone::whole(n), identity_cols(n));
  for (std::size_t len = 1; len <= depth; ++len) {
    std::vector<std::vector<std::size_t>> seqs;
    for_each_sequence(n, len, [&](const auto& s) { seqs.push_back(s); });
    std::vector<std::vector<Cone>> refined(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) {
      std::vector<Cone> pieces{cells[c]};
      for (const auto& s : seqs) {
        std::vector<Cone> next;
        for (const auto& piece : pieces) {
          auto p = piece.relint_point();
          auto cols = identity_cols(n);
          IntMatrix cur = b;
          for (auto k : s) {
            auto t = transport_maps(cur, k);
            cols = compose(cols, sign(dot(p, cols[k])) < 0 ? t.side_minus : t.side_plus);
            std::size_t one[] = {k};
            cur = mutate_matrix(cur, one);
          }
          for (auto& q : arrangement_cells(piece, cols)) next.push_back(std::move(q));
        }
        pieces = std::move(next);
      }
      refined[c] = std::move(pieces);
    });
    cells.clear();
    for (auto& r : refined)
      for (auto& q : r) cells.push_back(std::move(q));
  }
  return Fan::from_maximal(n, cells);
}

StableMutationFan mutation_fan_stable(const IntMatrix& b, std::size_t max_depth) {
  const std::size_t n = b.rows();
  StableMutationFan out;
  std::size_t unchanged = 0;
  for (std::size_t d = 0; d <= max_depth; ++d) {
    auto fan = mutation_fan(b, d);
    unchanged = (d > 0 && fan == out.fan) ? unchanged + 1 : 0;
    out.fan = std::move(fan);
    out.depth = d;
    if (unchanged >= n) {
      out.stabilized = true;
      out.depth = d - n;
      break;
    }
  }
  return out;
}

BConeAnswer in_b_cone(const Cone& c, const IntMatrix& b, std::size_t depth) {
  const std::size_t n = b.rows();
  struct Node {
    std::vector<std::size_t> seq;
    IntMatrix mat;
    std::vector<RVec> gens;
  };
  std::deque<Node> queue{{{}, b, c.generators()}};
  while (!queue.empty()) {
    auto node = std::move(queue.front());
    queue.pop_front();
    std::vector<int> side(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      bool pos = false, neg = false;
      for (const auto& g : node.gens) {
        pos = pos || sign(g[i]) > 0;
        neg = neg || sign(g[i]) < 0;
      }
      if (pos && neg) return {BConeAnswer::Kind::NoWitness, node.seq, i, node.seq.size()};
      side[i] = pos ? 1 : -1;
    }
    if (node.seq.size() == depth) continue;
    for (std::size_t k = 0; k < n; ++k) {
      if (!node.seq.empty() && node.seq.back() == k) continue;
      auto t = transport_maps(node.mat, k);
      const auto& m = side[k] < 0 ? t.side_minus : t.side_plus;
      Node child{node.seq, {}, {}};
      child.seq.push_back(k);
      std::size_t one[] = {k};
      child.mat = mutate_matrix(node.mat, one);
      for (const auto& g : node.gens) child.gens.push_back(m.apply_right(g));
      queue.push_back(std::move(child));
    }
  }
  BConeAnswer out;
  out.depth = depth;
  // a closed chamber search means finite type, where the chambers and their faces are all the B-cones
  auto chambers = chamber_fan(b, depth);
  if (chambers.closed) {
    for (const auto& ch : chambers.chambers)
      if (ch.cone.contains(c)) {
        out.kind = BConeAnswer::Kind::Yes;
        break;
      }
  }
  return out;
}

RefinementCheck check_refinement(const Fan& fine, const Fan& coarse) {
  if (fine.dimension() != coarse.dimension()) fail(ErrorCode::InvalidArgument, "fans live in different spaces");
  const auto& cones = fine.cones();
  std::vector<char> ok(cones.size(), 0);
  parallel_for(cones.size(), [&](std::size_t i) {
    for (const auto& c : coarse.cones())
      if (c.contains(cones[i])) {
        ok[i] = 1;
        return;
      }
  });
  for (std::size_t i = 0; i < cones.size(); ++i)
    if (!ok[i]) return {false, i};
  return {};
}

}  // namespace scat
