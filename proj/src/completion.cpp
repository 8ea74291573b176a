#include "scatlab/completion.hpp"

#include <algorithm>
#include <sstream>

namespace scat {

namespace {

void require_rank2(const ExchangeMatrix& b) {
  if (b.n_uf() != 2) fail(ErrorCode::NotRank2, "completion is implemented for two unfrozen indices");
}

// The ray in n0^perp that does not contain p*(n0).
RVec outgoing_direction(const InitialData& data, const NVector& n0) {
  auto p = data.p_star_uf(n0);
  if (is_zero(p)) fail(ErrorCode::Internal, "normal in the kernel of p* carries a nonzero correction");
  return primitive_direction(scaled(p, Rat(-1)));
}

// Sign of the crossing when a counterclockwise loop passes the ray r.
int ccw_sign(const RVec& r, const RVec& w) {
  // direction of motion is r rotated by +90 degrees
  Rat s = -r[1] * w[0] + r[0] * w[1];
  return s < 0 ? 1 : -1;
}

struct Completion {
  ScatteringDiagram diagram;
  std::vector<CensusRow> census;
};

Completion complete(const ExchangeMatrix& b, int order) {
  require_rank2(b);
  InitialData data(b);
  auto d = initial_diagram(data, order);
  std::vector<CensusRow> census;
  std::vector<NVector> seen_normals;

  for (int deg = 1; deg <= order; ++deg) {
    auto low = d.truncated(deg);
    auto loop = loop_around_origin(low);
    auto prod = path_ordered_product(low, loop);

    // prod = id + (degree deg terms); collect the coefficient of each exponent in each image
    std::map<Exponent, std::vector<Rat>> delta;
    for (std::size_t i = 0; i < 2; ++i) {
      const auto& img = prod.images[i];
      for (const auto& [e, c] : img.series.terms()) {
        auto t = total_degree(e);
        if (t == 0) continue;
        if (t != deg) fail(ErrorCode::Internal, "loop discrepancy below the current degree");
        auto& v = delta.try_emplace(e, std::vector<Rat>(2, Rat(0))).first->second;
        v[i] = c;
      }
    }

    for (const auto& [n, dv] : delta) {
      const auto g = gcd_of(n);
      NVector n0(n);
      for (auto& x : n0) x /= g;
      auto np = data.n_circ_primitive(n0);
      auto ray = outgoing_direction(data, n0);
      int sigma = ccw_sign(ray, data.dual(n0));
      // dv_i + sigma <f_i, n0'> a = 0 for both i
      std::optional<Rat> a;
      for (std::size_t i = 0; i < 2; ++i) {
        Rat pair = Rat(static_cast<long>(np[i])) / static_cast<long>(data.d()[i]);
        if (pair == 0) {
          if (dv[i] != 0) fail(ErrorCode::Internal, "discrepancy not of wall-crossing form");
          continue;
        }
        Rat cand = -dv[i] / (pair * sigma);
        if (a && *a != cand) fail(ErrorCode::Internal, "discrepancy not of wall-crossing form");
        a = cand;
      }
      if (!a || *a == 0) continue;

      auto cone = Cone::from_generators(2, {ray});
      std::vector<Wall> walls = d.walls();
      auto it = std::find_if(walls.begin(), walls.end(),
                             [&](const Wall& w) { return w.fn.normal() == n0 && w.cone == cone; });
      std::vector<Rat> coeffs;
      if (it != walls.end()) coeffs = it->fn.coeffs();
      std::size_t ell = static_cast<std::size_t>(g);
      coeffs.resize(std::max(coeffs.size(), ell), Rat(0));
      coeffs[ell - 1] += *a;
      auto fn = make_wall_function(n0, coeffs, order);
      bool is_new = std::find(seen_normals.begin(), seen_normals.end(), n0) == seen_normals.end();
      if (is_new) seen_normals.push_back(n0);
      census.push_back(CensusRow{deg, n0, g, *a, is_new});
      if (it != walls.end()) walls.erase(it);
      walls.push_back(Wall{cone, fn});
      d = ScatteringDiagram(data, order, walls);
    }

    auto check = d.truncated(deg);
    if (!path_ordered_product(check, loop_around_origin(check)).is_identity())
      fail(ErrorCode::Internal, "completion failed to cancel the degree " + std::to_string(deg) + " discrepancy");
  }
  return {d.canonical(), census};
}

}  // namespace

PiecewisePath loop_around_origin(const ScatteringDiagram& d, std::uint64_t seed) {
  if (d.rank() != 2) fail(ErrorCode::NotRank2, "loop_around_origin needs rank 2");
  static const long base[8][2] = {{10, 0}, {7, 7}, {0, 10}, {-7, 7}, {-10, 0}, {-7, -7}, {0, -10}, {7, -7}};
  for (std::uint64_t attempt = 0; attempt < 200; ++attempt) {
    PiecewisePath loop;
    for (int j = 0; j < 8; ++j) {
      // small deterministic rotation-like shift keeps the vertices off rational rays of small height
      long s = static_cast<long>((seed + attempt) * 31 + static_cast<std::uint64_t>(j) * 17) % 23 + 1;
      Rat dx = Rat(-base[j][1] * s) / (1000 + 7 * static_cast<long>(attempt));
      Rat dy = Rat(base[j][0] * s) / (1009 + 11 * static_cast<long>(attempt));
      loop.vertices.push_back({Rat(base[j][0]) / 10 + dx / 10, Rat(base[j][1]) / 10 + dy / 10});
    }
    loop.vertices.push_back(loop.vertices.front());
    try {
      crossings(d, loop);
      return loop;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotGeneric) throw;
    }
  }
  fail(ErrorCode::BudgetExceeded, "no generic loop around the origin");
}

ScatteringDiagram cluster_scatter_rank2(const ExchangeMatrix& b, int order) { return complete(b, order).diagram; }

std::vector<CensusRow> wall_census(const ExchangeMatrix& b, int order) { return complete(b, order).census; }

std::string census_tsv(const std::vector<CensusRow>& rows) {
  std::ostringstream out;
  out << "degree\tnormal\tmultiple\tcoefficient\tnew_normal\n";
  for (const auto& r : rows) {
    out << r.degree << "\t";
    for (std::size_t i = 0; i < r.normal.size(); ++i) out << (i ? "," : "") << r.normal[i];
    out << "\t" << r.multiple << "\t" << rat_to_string(r.coefficient) << "\t" << (r.new_normal ? 1 : 0) << "\n";
  }
  return out.str();
}

}  // namespace scat
