#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "scatlab/lattice.hpp"
#include "scatlab/rational.hpp"

namespace scat {

/// Total degree first, then lexicographic.
struct GradedLex {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Element of Q[[zeta_i : i unfrozen]] / m^{k+1}. Exponents are in the e-basis of N_uf.
class TruncatedSeries {
 public:
  using Terms = std::map<Exponent, Rat, GradedLex>;

  TruncatedSeries() = default;
  TruncatedSeries(std::size_t nvars, int order) : nvars_(nvars), order_(order) {}

  static TruncatedSeries one(std::size_t nvars, int order);
  static TruncatedSeries constant(std::size_t nvars, int order, const Rat& c);
  static TruncatedSeries monomial(const Exponent& e, const Rat& c, int order);

  std::size_t nvars() const { return nvars_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;

  Rat coeff(const Exponent& e) const;
  Rat constant_term() const;
  /// Adds c * zeta^e; drops terms above the order and cancelled terms.
  void add_term(const Exponent& e, const Rat& c);
  /// Terms of total degree exactly d.
  TruncatedSeries degree_part(int d) const;
  /// Smallest total degree of a nonconstant term, or -1.
  int min_positive_degree() const;
  TruncatedSeries truncated(int order) const;

  TruncatedSeries operator+(const TruncatedSeries& o) const;
  TruncatedSeries operator-(const TruncatedSeries& o) const;
  TruncatedSeries operator-() const;
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Rat& c) const;

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

 private:
  void check_compatible(const TruncatedSeries& o) const;

  std::size_t nvars_ = 0;
  int order_ = 0;
  Terms terms_;
};

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b);
/// a^e for any integer e; e < 0 needs a nonzero constant term.
TruncatedSeries series_pow(const TruncatedSeries& a, const Int& e);
inline TruncatedSeries series_pow(const TruncatedSeries& a, long e) { return series_pow(a, Int(e)); }
/// Replaces each zeta^n by zeta^{T n}; T is square of size nvars.
TruncatedSeries substitute(const TruncatedSeries& a, const IntMatrix& t);

/// Univariate truncated power series in t as a dense coefficient list (index = degree).
using Univariate = std::vector<Rat>;
/// f^e truncated to f.size() coefficients; f[0] must be nonzero when e < 0.
Univariate univariate_pow(const Univariate& f, const Int& e);
Univariate univariate_mul(const Univariate& a, const Univariate& b);

/// 1 + sum_l c_l zeta^{l n_0} with n_0 primitive in N^+.
class WallFunction {
 public:
  WallFunction() = default;

  const NVector& normal() const { return normal_; }
  /// coeffs()[l-1] is c_l.
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  int order() const { return order_; }
  /// Largest l with l*deg(n_0) <= order.
  std::size_t max_multiple() const;
  /// Dense univariate form in t = zeta^{n_0}, length max_multiple()+1.
  Univariate univariate() const;
  TruncatedSeries series() const;
  bool is_trivial() const;

  WallFunction truncated(int order) const;
  /// Product of two functions on the same normal.
  WallFunction operator*(const WallFunction& o) const;

  friend bool operator==(const WallFunction&, const WallFunction&) = default;

 private:
  friend WallFunction make_wall_function(const NVector&, const std::vector<Rat>&, int);
  NVector normal_;
  std::vector<Rat> coeffs_;
  int order_ = 0;
};

/// Validates the normal; coefficients beyond the order are dropped, trailing zeros trimmed.
WallFunction make_wall_function(const NVector& n0, const std::vector<Rat>& coeffs, int order);

/// z^m times a series in zeta. The prefactor runs over all indices, the series over unfrozen ones.
struct LaurentElement {
  MVector prefactor;
  TruncatedSeries series;

  friend bool operator==(const LaurentElement&, const LaurentElement&) = default;
};

}  // namespace scat
