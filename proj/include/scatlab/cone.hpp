#pragma once

#include <cstddef>
#include <vector>

#include "scatlab/rational.hpp"

namespace scat {

/// Polyhedral rational cone in V*, kept in a canonical double description.
///
/// Inequalities are dot-product normals a with v . a >= 0; equalities are normals b with v . b = 0.
/// Normals are primitive integer vectors, facet normals lie in the linear span of the cone.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::size_t dim, const std::vector<RVec>& gens);
  static Cone from_constraints(std::size_t dim, const std::vector<RVec>& inequalities, const std::vector<RVec>& equalities);
  static Cone whole(std::size_t dim);
  static Cone origin(std::size_t dim);
  static Cone hyperplane(const RVec& normal);
  static Cone halfspace(const RVec& normal);

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return ambient_ - equalities_.size(); }
  /// Canonical basis of the lineality space.
  const std::vector<RVec>& lineality() const { return lineality_; }
  /// Extreme rays of the pointed part, projected orthogonally to the lineality space.
  const std::vector<RVec>& rays() const { return rays_; }
  const std::vector<RVec>& equalities() const { return equalities_; }
  const std::vector<RVec>& facets() const { return facets_; }
  /// Rays plus both signs of each lineality vector; their conic hull is the cone.
  std::vector<RVec> generators() const;
  bool is_pointed() const { return lineality_.empty(); }

  bool contains(const RVec& v) const;
  bool contains_relint(const RVec& v) const;
  bool contains(const Cone& o) const;
  RVec relint_point() const;

  Cone intersect(const Cone& o) const;
  Cone intersect_hyperplane(const RVec& normal) const;
  Cone intersect_halfspace(const RVec& normal) const;
  bool is_face_of(const Cone& o) const;
  /// All nonempty faces including the cone itself, each once.
  std::vector<Cone> faces() const;
  /// Faces of codimension one in the cone.
  std::vector<Cone> facet_cones() const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.ambient_ == b.ambient_ && a.lineality_ == b.lineality_ && a.rays_ == b.rays_;
  }
  friend bool operator<(const Cone& a, const Cone& b);

 private:
  std::size_t ambient_ = 0;
  std::vector<RVec> lineality_;
  std::vector<RVec> rays_;
  std::vector<RVec> equalities_;
  std::vector<RVec> facets_;
};

/// Lexicographic order on rational vectors, used to canonicalize lists.
bool lex_less(const RVec& a, const RVec& b);

/// Cells of the arrangement obtained by cutting `region` with all hyperplanes; full-dimensional
/// relative to `region`, lower-dimensional pieces are not reported.
std::vector<Cone> arrangement_cells(const Cone& region, const std::vector<RVec>& hyperplanes);

}  // namespace scat
