#include "doctest.h"

#include <set>

#include "oracles/rank2_factorization.hpp"
#include "scatlab/completion.hpp"
#include "support/fixtures.hpp"

using namespace scat;
using fixtures::rv;

namespace {

std::vector<Wall> added_walls(const ScatteringDiagram& d) {
  std::vector<Wall> out;
  for (const auto& w : d.walls())
    if (w.cone.is_pointed()) out.push_back(w);
  return out;
}

void check_against_oracle(const ExchangeMatrix& b, int order) {
  InitialData data(b);
  auto d = cluster_scatter_rank2(b, order);
  oracle::Rank2Oracle o{data, order};
  auto expected = o.factor();
  auto walls = added_walls(d);
  CHECK(walls.size() == expected.size());
  for (const auto& w : walls) {
    REQUIRE(expected.count(w.fn.normal()) == 1);
    CHECK(w.fn.coeffs() == expected[w.fn.normal()]);
    CHECK(w.cone == Cone::from_generators(2, {o.ray(w.fn.normal())}));
  }
}

}  // namespace

TEST_CASE("zero matrix adds nothing") {
  auto d = cluster_scatter_rank2(ExchangeMatrix::square({{0, 0}, {0, 0}}), 6);
  CHECK(d.walls().size() == 2);
}

TEST_CASE("A2 pentagon") {
  auto d = cluster_scatter_rank2(fixtures::a2(), 8);
  auto walls = added_walls(d);
  REQUIRE(walls.size() == 1);
  CHECK(walls[0].fn.normal() == NVector{1, 1});
  CHECK(walls[0].fn.coeffs() == std::vector<Rat>{1});
  CHECK(walls[0].cone == Cone::from_generators(2, {rv({1, -1})}));
  CHECK(equivalent(d, fixtures::a2_completed(8)));
}

TEST_CASE("B2 and G2") {
  auto b2 = added_walls(cluster_scatter_rank2(fixtures::b2(), 8));
  REQUIRE(b2.size() == 2);
  // normals (1,1) and (2,1): the B2 symmetrizer is d = (2,1)
  std::set<NVector> normals;
  for (const auto& w : b2) {
    normals.insert(w.fn.normal());
    CHECK(w.fn.coeffs() == std::vector<Rat>{1});
  }
  CHECK(normals == std::set<NVector>{{1, 1}, {2, 1}});
  auto g2 = added_walls(cluster_scatter_rank2(fixtures::g2(), 12));
  CHECK(g2.size() == 4);
}

TEST_CASE("completion agrees with the factorization oracle") {
  check_against_oracle(fixtures::a2(), 6);
  check_against_oracle(fixtures::b2(), 7);
  check_against_oracle(fixtures::g2(), 8);
  check_against_oracle(fixtures::kronecker(), 8);
  check_against_oracle(ExchangeMatrix::square({{0, 2}, {-1, 0}}), 7);
  check_against_oracle(ExchangeMatrix::square({{0, 3}, {-3, 0}}), 6);
}

TEST_CASE("completed diagrams are consistent and outgoing") {
  for (const auto& b : {fixtures::a2(), fixtures::b2(), fixtures::g2(), fixtures::kronecker(),
                        ExchangeMatrix::square({{0, -1}, {1, 0}}), ExchangeMatrix::square({{0, -2}, {3, 0}})}) {
    auto d = cluster_scatter_rank2(b, 7);
    CHECK(check_consistency(d).pass);
    for (const auto& w : added_walls(d)) CHECK(classify_wall(d.data(), w) == WallKind::Outgoing);
    CHECK(has_minimal_support(d));
  }
}

TEST_CASE("truncation coherence") {
  for (const auto& b : {fixtures::b2(), fixtures::kronecker()}) {
    auto big = cluster_scatter_rank2(b, 8);
    for (int j = 1; j < 8; ++j) CHECK(equivalent(big.truncated(j), cluster_scatter_rank2(b, j)));
  }
}

TEST_CASE("frozen rows do not change the zeta-exponent functions") {
  auto plain = cluster_scatter_rank2(fixtures::b2(), 6);
  auto framed = cluster_scatter_rank2(fixtures::b2().with_frozen_columns({{1, 0, 2}, {0, 1, -1}}), 6);
  REQUIRE(plain.walls().size() == framed.walls().size());
  for (std::size_t i = 0; i < plain.walls().size(); ++i) CHECK(plain.walls()[i] == framed.walls()[i]);
}

TEST_CASE("census") {
  auto a2 = wall_census(fixtures::a2(), 8);
  REQUIRE(a2.size() == 1);
  CHECK(a2[0].degree == 2);
  auto g2 = wall_census(fixtures::g2(), 12);
  int last = 0;
  for (const auto& r : g2) last = std::max(last, r.degree);
  CHECK(last == 5);
  auto kr = wall_census(fixtures::kronecker(), 10);
  for (const auto& r : kr) {
    if (r.normal == NVector{1, 1}) continue;
    CHECK(std::abs(r.normal[0] - r.normal[1]) == 1);
    CHECK(r.new_normal);
  }
  CHECK(census_tsv(a2) == "degree\tnormal\tmultiple\tcoefficient\tnew_normal\n2\t1,1\t1\t1/1\t1\n");
}

TEST_CASE("non rank-2 input") {
  CHECK_THROWS_AS(cluster_scatter_rank2(fixtures::a3(), 3), Error);
}
