#pragma once

#include <optional>
#include <vector>

#include "scatlab/diagram.hpp"

namespace scat {

/// Linear pieces of the wall transport M_k for a square exchange matrix.
struct TransportMaps {
  std::size_t k = 0;
  /// Right action on V* for walls with <v, e_k> <= 0 (minus) and >= 0 (plus).
  IntMatrix side_minus, side_plus;
  /// Left action on normal vectors.
  IntMatrix exponent_minus, exponent_plus;
};

TransportMaps transport_maps(const IntMatrix& b, std::size_t k);

/// Transport of every wall; the result lives over mu_k of the extended matrix.
ScatteringDiagram apply_M_k(const ScatteringDiagram& d, std::size_t k);

/// Smallest order K such that the completion at order K, transported, is exact to `order`.
int transport_source_order(const IntMatrix& b, std::size_t k, int order);

/// Rank 2: M_k of the completion of b against the completion of mu_k(b).
bool verify_mutation_equiv(const ExchangeMatrix& b, std::size_t k, int order);

struct Chamber {
  std::vector<std::size_t> sequence;
  Cone cone;
};

struct ChamberAdjacency {
  std::size_t a = 0, b = 0;
  /// Normal of the shared facet in N, primitive and in N^+ when sign-coherent.
  NVector normal;
};

struct ChamberFan {
  std::vector<Chamber> chambers;
  std::vector<ChamberAdjacency> adjacency;
  /// True when every single mutation of every chamber is already listed.
  bool closed = false;
  /// Distinct chambers one step beyond the explored depth.
  std::size_t frontier = 0;
};

/// Chamber of a mutation sequence: the preimage of the positive chamber under eta.
Cone chamber_of(const IntMatrix& b, const std::vector<std::size_t>& sequence);

/// BFS over mutation sequences up to the given length.
ChamberFan chamber_fan(const IntMatrix& b, std::size_t depth);

/// Primitive N-vector whose hyperplane is {v . a = 0}, oriented into N^+ when possible.
NVector normal_from_dual(const InitialData& data, const RVec& a);

/// One wall 1 + zeta^{n_0} per distinct facet of the chambers found up to depth.
ScatteringDiagram cluster_subdiagram(const ExchangeMatrix& b, std::size_t depth, int order);

}  // namespace scat
