#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scatlab/cone.hpp"
#include "scatlab/lattice.hpp"
#include "scatlab/series.hpp"

namespace scat {

/// Codimension-one cone in fn.normal()^perp together with its function.
struct Wall {
  Cone cone;
  WallFunction fn;

  friend bool operator==(const Wall&, const Wall&) = default;
};

enum class WallKind { Incoming, Outgoing };

/// Checks that the cone has codimension one and lies in the hyperplane of the function's normal.
Wall make_wall(const InitialData& data, const Cone& cone, const WallFunction& fn);

/// D_k: a finite list of walls whose functions are nontrivial modulo m^{k+1}.
class ScatteringDiagram {
 public:
  ScatteringDiagram() = default;
  ScatteringDiagram(InitialData data, int order) : data_(std::move(data)), order_(order) {}
  ScatteringDiagram(InitialData data, int order, const std::vector<Wall>& walls);

  const InitialData& data() const { return data_; }
  int order() const { return order_; }
  std::size_t rank() const { return data_.n_uf(); }
  const std::vector<Wall>& walls() const { return walls_; }

  /// Truncates the function to the diagram order; drops the wall if it becomes trivial.
  void add_wall(const Wall& w);
  ScatteringDiagram truncated(int order) const;
  bool in_support(const RVec& p) const;
  /// Walls sorted by (normal, cone, coefficients) for stable output.
  ScatteringDiagram canonical() const;

  friend bool operator==(const ScatteringDiagram&, const ScatteringDiagram&) = default;

 private:
  InitialData data_;
  int order_ = 0;
  std::vector<Wall> walls_;
};

/// The walls (e_i^perp, 1 + zeta_i), one per unfrozen index.
ScatteringDiagram initial_diagram(const InitialData& data, int order);

WallKind classify_wall(const InitialData& data, const Wall& wall);

/// Images of z^{f_i}, i unfrozen, which determine an automorphism of the completed ring.
struct Automorphism {
  std::vector<LaurentElement> images;

  static Automorphism identity(const InitialData& data, int order);
  bool is_identity() const;
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
};

/// z^m f^{sign <m, n'_0>} for a wall function f with normal n_0.
LaurentElement cross_wall(const InitialData& data, const MVector& m, const WallFunction& fn, int sign, int order);
/// Applies the crossing automorphism to an arbitrary element z^m s(zeta).
LaurentElement apply_crossing(const InitialData& data, const LaurentElement& x, const WallFunction& fn, int sign);
Automorphism apply_crossing(const InitialData& data, const Automorphism& a, const WallFunction& fn, int sign);

struct PiecewisePath {
  std::vector<RVec> vertices;
};

/// One time-ordered crossing; parallel walls met at the same point are grouped.
struct Crossing {
  std::size_t segment = 0;
  Rat time;
  NVector normal;
  /// +1 when the path moves against the normal, the sign used in the crossing formula.
  int sign = 0;
  std::vector<std::size_t> walls;
};

/// Throws NotGeneric when the path violates one of the genericity conditions.
std::vector<Crossing> crossings(const ScatteringDiagram& d, const PiecewisePath& path);
Automorphism path_ordered_product(const ScatteringDiagram& d, const PiecewisePath& path);
/// The same product applied to a single element z^m s(zeta).
LaurentElement path_ordered_product(const ScatteringDiagram& d, const PiecewisePath& path, const LaurentElement& x);

/// Deterministic in the seed. Returns the direct segment when it is already generic.
PiecewisePath make_generic_path(const ScatteringDiagram& d, const RVec& p, const RVec& q, std::uint64_t seed = 1);

struct ConsistencyReport {
  bool pass = true;
  std::size_t joints_checked = 0;
  /// Human-readable description of each failing joint.
  std::vector<std::string> failures;
};

/// Loops around every codimension-two joint of the wall arrangement. Rank at most 3.
/// Uses SCATLAB_THREADS worker threads when that variable is set.
ConsistencyReport check_consistency(const ScatteringDiagram& d, std::size_t loop_budget = 5000);

/// At most one primitive n_0 in N^+ with p in n_0^perp.
bool is_general_point(const InitialData& data, const RVec& p);
TruncatedSeries f_general_point(const ScatteringDiagram& d, const RVec& p);
/// Product of the functions of walls with normal n0 containing p, as a wall function.
WallFunction f_on_hyperplane(const ScatteringDiagram& d, const NVector& n0, const RVec& p);

bool equivalent(const ScatteringDiagram& a, const ScatteringDiagram& b);
ScatteringDiagram minimal_support(const ScatteringDiagram& d);
bool has_minimal_support(const ScatteringDiagram& d);

std::map<NVector, std::vector<Cone>> ramparts(const ScatteringDiagram& d);

/// "(a, b, ...)" form used in diagnostics.
std::string describe(const RVec& v);

}  // namespace scat
