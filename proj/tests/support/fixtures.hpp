#pragma once

#include "scatlab/diagram.hpp"
#include "scatlab/error.hpp"

namespace fixtures {

using namespace scat;

inline RVec rv(std::initializer_list<long> xs) {
  RVec r;
  for (auto x : xs) r.emplace_back(x);
  return r;
}

inline ExchangeMatrix a2() { return ExchangeMatrix::square({{0, 1}, {-1, 0}}); }
inline ExchangeMatrix b2() { return ExchangeMatrix::square({{0, 1}, {-2, 0}}); }
inline ExchangeMatrix g2() { return ExchangeMatrix::square({{0, 1}, {-3, 0}}); }
inline ExchangeMatrix kronecker() { return ExchangeMatrix::square({{0, 2}, {-2, 0}}); }
inline ExchangeMatrix a3() { return ExchangeMatrix::square({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}); }
inline ExchangeMatrix markov() { return ExchangeMatrix::square({{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}}); }

/// Code of the Error thrown by fn; Internal when nothing is thrown.
inline ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

/// The consistent A2 diagram written out by hand: two full lines and the ray R(1,-1).
inline ScatteringDiagram a2_completed(int order) {
  InitialData data(a2());
  auto d = initial_diagram(data, order);
  d.add_wall(make_wall(data, Cone::from_generators(2, {rv({1, -1})}), make_wall_function({1, 1}, {Rat(1)}, order)));
  return d;
}

}  // namespace fixtures
