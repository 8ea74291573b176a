#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scatlab/cone.hpp"
#include "scatlab/diagram.hpp"
#include "scatlab/lattice.hpp"

namespace scat {

/// Finite set of cones closed under faces, sorted and without repeats.
///
/// The smallest cone is the common lineality space, so {V*} is a fan on its own.
class Fan {
 public:
  Fan() = default;
  /// Builds the face closure of the given cones.
  static Fan from_maximal(std::size_t dim, const std::vector<Cone>& cones);

  std::size_t dimension() const { return dim_; }
  const std::vector<Cone>& cones() const { return cones_; }
  /// Cones that are not a proper face of another cone.
  std::vector<Cone> maximal() const;
  /// Cones of the given dimension.
  std::vector<Cone> of_dimension(std::size_t d) const;
  /// Union is V*: all maximal cones are full-dimensional and every facet is shared by two of them.
  bool is_complete() const;

  friend bool operator==(const Fan&, const Fan&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Cone> cones_;
};

struct FanCheck {
  bool ok = true;
  /// Indices into the checked list; for a missing face only `first` is set.
  std::optional<std::size_t> first, second;
  std::string reason;
};

/// Face closure and pairwise face intersection.
FanCheck is_fan(const std::vector<Cone>& cones);

/// Closures of the connected components of the complement of the support, plus their faces.
Fan scat_fan(const ScatteringDiagram& d);

/// Common refinement of the sign fans of eta_seq over all sequences of length <= depth.
Fan mutation_fan(const IntMatrix& b, std::size_t depth);

struct StableMutationFan {
  Fan fan;
  std::size_t depth = 0;
  bool stabilized = false;
};

/// Raises the depth until the maximal cones stay unchanged for n consecutive steps.
StableMutationFan mutation_fan_stable(const IntMatrix& b, std::size_t max_depth);

struct BConeAnswer {
  enum class Kind { Yes, NoWitness, UnknownAtDepth };
  Kind kind = Kind::UnknownAtDepth;
  std::vector<std::size_t> sequence;
  std::size_t coordinate = 0;
  /// Depth through which every sequence was checked.
  std::size_t depth = 0;
};

/// Sign-coherence of eta_seq(c) for all sequences up to depth.
BConeAnswer in_b_cone(const Cone& c, const IntMatrix& b, std::size_t depth);

struct RefinementCheck {
  bool ok = true;
  /// Cone of the finer fan that no coarse cone contains.
  std::optional<std::size_t> witness;
};

RefinementCheck check_refinement(const Fan& fine, const Fan& coarse);

}  // namespace scat
