#pragma once

#include <string>
#include <vector>

#include "scatlab/diagram.hpp"

namespace scat {

/// One coefficient introduced by the completion at a given degree.
struct CensusRow {
  int degree = 0;
  NVector normal;
  /// The correction is a * zeta^{multiple * normal}.
  std::int64_t multiple = 0;
  Rat coefficient;
  /// First time a wall with this normal appears.
  bool new_normal = false;
};

/// Consistent rank-2 diagram at the given order: the two initial lines plus outgoing rays.
/// Accepts frozen columns; the rank refers to the unfrozen part.
ScatteringDiagram cluster_scatter_rank2(const ExchangeMatrix& b, int order);

/// The corrections made by the completion, in order of degree.
std::vector<CensusRow> wall_census(const ExchangeMatrix& b, int order);

/// Tab-separated census with a header line.
std::string census_tsv(const std::vector<CensusRow>& rows);

/// Closed octagon around the origin, generic for the given diagram (rank 2 only).
PiecewisePath loop_around_origin(const ScatteringDiagram& d, std::uint64_t seed = 1);

}  // namespace scat
