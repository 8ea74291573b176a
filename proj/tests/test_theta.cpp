#include "doctest.h"

#include <random>

#include "oracles/cluster_exchange.hpp"
#include "scatlab/completion.hpp"
#include "scatlab/theta.hpp"
#include "scatlab/transport.hpp"
#include "support/fixtures.hpp"

using namespace scat;
using fixtures::code_of;
using fixtures::rv;

namespace {

oracle::Poly to_oracle(const LaurentPolynomial& p) {
  oracle::Poly out;
  for (const auto& [m, c] : p) out[oracle::Exp(m.begin(), m.end())] = c;
  return out;
}

std::vector<std::vector<long>> rows_of(const ExchangeMatrix& b) {
  std::vector<std::vector<long>> rows(b.n_uf());
  for (std::size_t i = 0; i < b.n_uf(); ++i)
    for (std::size_t j = 0; j < b.n_total(); ++j) rows[i].push_back(b(i, j));
  return rows;
}

MVector to_m(const RVec& v) {
  MVector m;
  for (const auto& x : v) m.push_back(x.get_num().get_si());
  return m;
}

/// Primitive generators of all chamber rays.
std::vector<MVector> chamber_generators(const IntMatrix& b, std::size_t depth) {
  std::set<MVector> out;
  for (const auto& c : chamber_fan(b, depth).chambers)
    for (const auto& r : c.cone.rays()) out.insert(to_m(primitive_direction(r)));
  return {out.begin(), out.end()};
}

oracle::Poly x(std::initializer_list<std::pair<oracle::Exp, long>> terms) {
  oracle::Poly p;
  for (const auto& [e, c] : terms) p[e] = c;
  return p;
}

std::vector<ExchangeMatrix> rank2_finite() {
  return {fixtures::a2(), fixtures::b2(), fixtures::g2(), ExchangeMatrix::square({{0, 2}, {-1, 0}}),
          ExchangeMatrix::square({{0, 3}, {-1, 0}})};
}

}  // namespace

TEST_CASE("exchange oracle") {
  auto vars = oracle::along(rows_of(fixtures::a2()), {0, 1, 0, 1, 0, 1, 0});
  REQUIRE(vars.size() == 7);
  CHECK(vars[0] == x({{{-1, 0}, 1}, {{-1, 1}, 1}}));
  CHECK(vars[1] == x({{{-1, -1}, 1}, {{0, -1}, 1}, {{-1, 0}, 1}}));
  CHECK(vars[2] == x({{{0, -1}, 1}, {{1, -1}, 1}}));
  CHECK(vars[3] == x({{{1, 0}, 1}}));
  CHECK(vars[4] == x({{{0, 1}, 1}}));
  CHECK(vars[5] == vars[0]);
  CHECK(oracle::along(rows_of(fixtures::a2()), {}).empty());
  auto b2 = oracle::all_variables(rows_of(fixtures::b2()), 20);
  CHECK(b2.closed);
  CHECK(b2.clusters == 6);
  CHECK(b2.variables.size() == 6);
  auto a3 = oracle::all_variables(rows_of(fixtures::a3()), 20);
  CHECK(a3.clusters == 14);
  CHECK(a3.variables.size() == 9);
}

TEST_CASE("broken lines: straight line in the chamber of the endpoint") {
  auto d = fixtures::a2_completed(6);
  auto q = default_basepoint(2);
  auto lines = broken_lines(d, {1, 2}, q, 6);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0].bends.empty());
  CHECK(lines[0].last().exponent == MVector{1, 2});
  CHECK(theta_broken(d, {1, 2}, q, 6) == LaurentElement{{1, 2}, TruncatedSeries::one(2, 6)});
}

TEST_CASE("broken lines: antipodal generator of A2") {
  auto d = fixtures::a2_completed(6);
  InitialData data(fixtures::a2());
  auto lines = broken_lines(d, {0, -1}, default_basepoint(2), 6);
  CHECK(lines.size() == 3);
  auto theta = to_laurent(data, theta_broken(d, {0, -1}, default_basepoint(2), 6));
  auto vars = oracle::along(rows_of(fixtures::a2()), {0, 1});
  CHECK(to_oracle(theta) == vars[1]);
}

TEST_CASE("broken lines: errors") {
  auto d = fixtures::a2_completed(4);
  CHECK(code_of([&] { broken_lines(d, {0, 0}, default_basepoint(2), 4); }) == ErrorCode::ZeroExponent);
  CHECK(code_of([&] { broken_lines(d, {1, 0}, rv({0, 1}), 4); }) == ErrorCode::NonGenericEndpoint);
  // the trace of the straight line for m_0 = (-1,-1) from (1,1) runs through the origin
  CHECK(code_of([&] { broken_lines(d, {-1, -1}, rv({1, 1}), 4); }) == ErrorCode::NonGenericEndpoint);
  CHECK(code_of([&] { broken_lines(d, {1, 0}, default_basepoint(2), 5); }) == ErrorCode::OrderMismatch);
}

TEST_CASE("broken line invariants") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coord(-3, 3);
  std::uniform_int_distribution<int> big(1, 997);
  for (const auto& b : {fixtures::a2(), fixtures::b2(), fixtures::g2(), fixtures::kronecker()}) {
    const int k = 6;
    auto d = cluster_scatter_rank2(b, k);
    const auto& data = d.data();
    for (int trial = 0; trial < 12; ++trial) {
      MVector m0{coord(rng), coord(rng)};
      if (m0 == MVector{0, 0}) continue;
      RVec q{Rat(big(rng), 101) * (coord(rng) < 0 ? -1 : 1), Rat(big(rng), 103) * (coord(rng) < 0 ? -1 : 1)};
      std::vector<BrokenLine> lines;
      try {
        lines = broken_lines(d, m0, q, k);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonGenericEndpoint);
        continue;
      }
      for (const auto& l : lines) {
        REQUIRE(l.segments.size() == l.bends.size() + 1);
        CHECK(l.segments.front().coeff == 1);
        CHECK(l.segments.front().exponent == m0);
        CHECK(total_degree(l.last().gained) <= k);
        // each segment moves with velocity -m_uf towards the next corner
        std::vector<RVec> corners = l.bends;
        corners.push_back(l.endpoint);
        for (std::size_t i = 1; i < corners.size(); ++i) {
          auto step = sub(corners[i], corners[i - 1]);
          RVec vel{Rat(-l.segments[i].exponent[0]), Rat(-l.segments[i].exponent[1])};
          auto t = primitive_direction(step);
          CHECK(t == primitive_direction(vel));
        }
        for (std::size_t i = 0; i < l.bends.size(); ++i) {
          CHECK(d.in_support(l.bends[i]));
          const auto& before = l.segments[i];
          const auto& after = l.segments[i + 1];
          auto jump = after.gained;
          for (std::size_t j = 0; j < jump.size(); ++j) jump[j] -= before.gained[j];
          CHECK(total_degree(jump) > 0);
          CHECK(data.pairing(before.exponent, jump) != 0);
        }
      }
    }
  }
}

TEST_CASE("theta functions agree with the exchange oracle") {
  for (const auto& b : {fixtures::a2(), fixtures::b2(), fixtures::g2(), fixtures::a3(),
                        fixtures::a2().with_principal_coefficients(), fixtures::b2().with_principal_coefficients()}) {
    InitialData data(b);
    std::set<oracle::Poly> mine;
    for (const auto& m0 : chamber_generators(b.square_block(), 12)) {
      auto theta = clear_frozen(to_laurent(data, theta_pop(b, m0, 12, 6)), b.n_uf());
      for (const auto& [m, c] : theta) {
        CHECK(c > 0);
        CHECK(c.get_den() == 1);
      }
      mine.insert(to_oracle(theta));
    }
    auto census = oracle::all_variables(rows_of(b), 20);
    REQUIRE(census.closed);
    CHECK(mine == census.variables);
  }
}

TEST_CASE("principal coefficients: the variable across e_1") {
  auto b = fixtures::a2().with_principal_coefficients();
  InitialData data(b);
  auto chamber = chamber_of(b.square_block(), {0});
  MVector m0;
  for (const auto& r : chamber.rays())
    if (r[0] < 0) m0 = to_m(primitive_direction(r));
  auto theta = clear_frozen(to_laurent(data, theta_pop(b, m0, 1, 6)), 2);
  CHECK(to_oracle(theta) == oracle::along(rows_of(b), {0})[0]);
}

TEST_CASE("the exchange convention is not transposed") {
  // for B2 the transposed matrix gives a different set of cluster variables
  auto b = fixtures::b2();
  auto bt = ExchangeMatrix::square({{0, 2}, {-1, 0}});
  InitialData data(b);
  std::set<oracle::Poly> mine;
  for (const auto& m0 : chamber_generators(b.square_block(), 12))
    mine.insert(to_oracle(to_laurent(data, theta_pop(b, m0, 12, 6))));
  CHECK(mine == oracle::all_variables(rows_of(b), 20).variables);
  CHECK(mine != oracle::all_variables(rows_of(bt), 20).variables);
}

TEST_CASE("theta_pop basics") {
  auto b = fixtures::a3();
  CHECK(theta_pop(b, {1, 0, 2}, 4, 5) == LaurentElement{{1, 0, 2}, TruncatedSeries::one(3, 5)});
  CHECK(code_of([&] { theta_pop(fixtures::kronecker(), {1, -1}, 6, 4); }) == ErrorCode::NotInChamberFan);
  // the start point may be any interior point of the chamber
  auto g2 = fixtures::g2();
  for (const auto& ch : chamber_fan(g2.square_block(), 8).chambers) {
    auto rays = ch.cone.rays();
    auto m0 = to_m(primitive_direction(add(rays[0], rays[1])));
    auto base = theta_pop(g2, m0, 8, 8);
    CHECK(theta_pop(g2, m0, 8, 8, add(scaled(rays[0], Rat(3)), rays[1])) == base);
    CHECK(theta_pop(g2, m0, 8, 8, add(rays[0], scaled(rays[1], Rat(5, 2)))) == base);
  }
  CHECK(code_of([&] { theta_pop(g2, {1, 1}, 8, 8, rv({-1, -1})); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("theta_pop is multiplicative inside a chamber") {
  for (const auto& b : {fixtures::b2(), fixtures::g2(), fixtures::a3()}) {
    const std::size_t n = b.n_uf();
    for (const auto& ch : chamber_fan(b.square_block(), 10).chambers) {
      auto rays = ch.cone.rays();
      auto m1 = to_m(primitive_direction(rays[0]));
      auto m2 = to_m(primitive_direction(rays[1 % rays.size()]));
      MVector sum(n);
      for (std::size_t i = 0; i < n; ++i) sum[i] = m1[i] + m2[i];
      auto a = theta_pop(b, m1, 10, 6), c = theta_pop(b, m2, 10, 6);
      auto prod = theta_pop(b, sum, 10, 6);
      CHECK(prod.series == a.series * c.series);
    }
  }
}

TEST_CASE("clear_frozen") {
  LaurentPolynomial positive{{{1, 0, 2}, Rat(1)}, {{-1, 1, 0}, Rat(3)}};
  CHECK(clear_frozen(positive, 2) == positive);
  LaurentPolynomial p{{{0, 0, -2}, Rat(1)}, {{1, 0, -1}, Rat(1)}};
  CHECK(clear_frozen(p, 2) == LaurentPolynomial{{{0, 0, 0}, Rat(1)}, {{1, 0, 1}, Rat(1)}});
  // unfrozen exponents are never shifted
  LaurentPolynomial q{{{-3, 0, 1}, Rat(2)}};
  CHECK(clear_frozen(q, 2) == q);

  auto b = fixtures::a2().with_principal_coefficients();
  InitialData data(b);
  auto plain = theta_pop(b, {0, -1}, 6, 6);
  auto framed = theta_pop(b, {0, -1, 2, -3}, 6, 6);
  CHECK(framed.series == plain.series);
  LaurentPolynomial shifted;
  for (const auto& [m, c] : to_laurent(data, plain)) {
    auto e = m;
    e[2] += 2;
    e[3] -= 3;
    shifted[e] = c;
  }
  CHECK(to_laurent(data, framed) == shifted);
  // clearing only raises frozen exponents, so lowering them first changes nothing
  auto lowered = theta_pop(b, {0, -1, 0, -3}, 6, 6);
  CHECK(clear_frozen(to_laurent(data, lowered), 2) == clear_frozen(to_laurent(data, plain), 2));
  CHECK(clear_frozen(data, framed).series == framed.series);
}

TEST_CASE("broken lines agree with path-ordered products") {
  const int k = 8;
  for (const auto& b : rank2_finite()) {
    auto d = cluster_scatter_rank2(b, k);
    auto q = default_basepoint(2);
    for (long a = -3; a <= 3; ++a)
      for (long c = -3; c <= 3; ++c) {
        if (a == 0 && c == 0) continue;
        CHECK(theta_broken(d, {a, c}, q, k) == theta_pop(b, {a, c}, 12, k));
      }
  }
}

TEST_CASE("Kronecker: broken lines and path-ordered products in depth-3 chambers") {
  const int k = 8;
  auto b = fixtures::kronecker();
  auto d = cluster_scatter_rank2(b, k);
  std::size_t checked = 0;
  for (const auto& ch : chamber_fan(b.square_block(), 3).chambers) {
    if (ch.sequence.size() != 3) continue;
    auto rays = ch.cone.rays();
    for (const auto& m0 : {to_m(primitive_direction(rays[0])), to_m(primitive_direction(add(rays[0], rays[1])))}) {
      CHECK(theta_broken(d, m0, default_basepoint(2), k) == theta_pop(b, m0, 3, k));
      ++checked;
    }
  }
  CHECK(checked == 4);
}

TEST_CASE("change of basepoint") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> c(-997, 997);
  const int k = 6;
  for (const auto& b : rank2_finite()) {
    auto d = cluster_scatter_rank2(b, k);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 4; ++trial) {
      RVec q{Rat(c(rng), 101), Rat(c(rng), 103)}, qq{Rat(c(rng), 107), Rat(c(rng), 109)};
      MVector m0{c(rng) % 3, c(rng) % 3};
      if (m0 == MVector{0, 0}) continue;
      try {
        auto here = theta_broken(d, m0, q, k);
        auto there = theta_broken(d, m0, qq, k);
        auto path = make_generic_path(d, qq, q, static_cast<std::uint64_t>(trial));
        CHECK(path_ordered_product(d, path, there) == here);
        ++done;
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonGenericEndpoint);
      }
    }
    CHECK(done == 4);
  }
}
