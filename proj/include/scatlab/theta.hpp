#pragma once

#include <map>
#include <optional>
#include <vector>

#include "scatlab/diagram.hpp"

namespace scat {

/// Laurent polynomial in z_i over all indices, keyed by exponent in f-coordinates.
using LaurentPolynomial = std::map<MVector, Rat>;

struct BrokenSegment {
  Rat coeff;
  MVector exponent;
  /// zeta-exponent gained so far: exponent = m_0 + p*(gained).
  NVector gained;
};

struct BrokenLine {
  MVector m0;
  RVec endpoint;
  /// Segments from the unbounded one to the one ending at the endpoint.
  std::vector<BrokenSegment> segments;
  /// bends[i] joins segments[i] and segments[i+1].
  std::vector<RVec> bends;

  const BrokenSegment& last() const { return segments.back(); }
};

/// A point of C^+ with large coprime coordinates, used as the default basepoint.
RVec default_basepoint(std::size_t n);

/// All broken lines for m_0 ending at q whose final monomial has zeta-degree <= k.
std::vector<BrokenLine> broken_lines(const ScatteringDiagram& d, const MVector& m0, const RVec& q, int k);

/// z^{m_0} times a series in zeta truncated at degree k.
LaurentElement theta_broken(const ScatteringDiagram& d, const MVector& m0, const RVec& q, int k);

/// Path-ordered product of z^{m_0} from a point of the chamber containing m_0 to the basepoint in C^+,
/// along the chamber chain of the cluster subdiagram. `start` overrides the point inside the chamber.
LaurentElement theta_pop(const ExchangeMatrix& b, const MVector& m0, std::size_t depth, int k,
                         const std::optional<RVec>& start = std::nullopt);

/// Path through chamber interiors from the chamber of `sequence` back to C^+, ending at q.
PiecewisePath chamber_chain_path(const IntMatrix& b, const std::vector<std::size_t>& sequence, const RVec& from,
                                 const RVec& q);

LaurentPolynomial to_laurent(const InitialData& data, const LaurentElement& x);

/// Multiplies by the smallest frozen monomial that leaves no negative frozen exponent.
LaurentPolynomial clear_frozen(const LaurentPolynomial& p, std::size_t n_uf);
LaurentElement clear_frozen(const InitialData& data, const LaurentElement& x);

std::string describe(const LaurentPolynomial& p);

}  // namespace scat
