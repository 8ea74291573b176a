#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scatlab/error.hpp"
#include "scatlab/rational.hpp"

namespace scat {

/// Dense integer matrix; rows and columns are both indexed from 0.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  explicit IntMatrix(const std::vector<IVec>& rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IVec row(std::size_t i) const;
  std::vector<IVec> to_rows() const;
  IntMatrix transposed() const;
  /// Matrix times column vector.
  IVec apply(const IVec& column) const;
  /// Row vector times matrix (the right action on V*).
  RVec apply_right(const RVec& row) const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Extended exchange matrix: rows indexed by the unfrozen indices, columns by all indices.
/// The unfrozen indices are always 0..n_uf-1.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;
  /// Validates shape and skew-symmetrizability of the square block.
  ExchangeMatrix(std::size_t n_uf, std::size_t n_total, const std::vector<IVec>& rows);
  /// Square exchange matrix with no frozen columns.
  static ExchangeMatrix square(const std::vector<IVec>& rows);

  std::size_t n_uf() const { return entries_.rows(); }
  std::size_t n_total() const { return entries_.cols(); }
  std::size_t n_frozen() const { return n_total() - n_uf(); }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  const IntMatrix& entries() const { return entries_; }
  /// Columns restricted to the unfrozen indices.
  IntMatrix square_block() const;
  bool full_rank() const;

  ExchangeMatrix mutated(std::size_t k) const;
  ExchangeMatrix mutated(std::span<const std::size_t> seq) const;

  /// Same square block with the identity appended as frozen block.
  ExchangeMatrix with_principal_coefficients() const;
  /// Replace all frozen columns.
  ExchangeMatrix with_frozen_columns(const std::vector<IVec>& frozen_rows) const;

  friend bool operator==(const ExchangeMatrix&, const ExchangeMatrix&) = default;
  friend auto operator<=>(const ExchangeMatrix&, const ExchangeMatrix&) = default;

 private:
  explicit ExchangeMatrix(IntMatrix entries) : entries_(std::move(entries)) {}
  IntMatrix entries_;
};

/// Positive integers d with d_i b_ij = -d_j b_ji, minimal on every connected component.
IVec skew_symmetrizer(const IntMatrix& square);

/// Left fold of single-index mutation; every index must be < min(rows, cols).
IntMatrix mutate_matrix(const IntMatrix& a, std::span<const std::size_t> seq);

/// Mutation map on V*: append v as a row below B, mutate along seq, read off the last row.
RVec eta(const IntMatrix& b, std::span<const std::size_t> seq, const RVec& v);

/// Lattice data attached to an extended exchange matrix in the standard basis.
class InitialData {
 public:
  InitialData() = default;
  explicit InitialData(ExchangeMatrix exchange);

  const ExchangeMatrix& exchange() const { return exchange_; }
  std::size_t n_uf() const { return exchange_.n_uf(); }
  std::size_t n_total() const { return exchange_.n_total(); }
  /// Skew-symmetrizer extended by 1 on frozen indices.
  const IVec& d() const { return d_; }

  /// p*(n) in f-coordinates over all indices. Accepts n of length n_uf or n_total.
  MVector p_star(const NVector& n) const;
  /// Unfrozen part of p*(n) as a point of V*.
  RVec p_star_uf(const NVector& n) const;
  /// <m, n> for m in f-coordinates and n in e-coordinates (m of length n_uf or n_total, n of length n_uf).
  Rat pairing(const RVec& m, const NVector& n) const;
  Rat pairing(const MVector& m, const NVector& n) const;
  /// Dual vector w with <v, n> = v . w for v in V*.
  RVec dual(const NVector& n) const;
  /// Smallest positive c with c*n in N°; n'_0 = c * n_0.
  std::int64_t n_circ_factor(const NVector& n) const;
  NVector n_circ_primitive(const NVector& n) const;
  /// <p*(a), b> for a, b in N_uf; always an integer when b is in N°.
  Rat omega(const NVector& a, const NVector& b) const;

  friend bool operator==(const InitialData&, const InitialData&) = default;

 private:
  ExchangeMatrix exchange_;
  IVec d_;
};

bool in_n_plus(const NVector& n);

/// Every 2x2 principal block satisfies b_ij b_ji >= -4.
bool block_criterion(const IntMatrix& b);

/// BFS over the mutation class. Throws BudgetExceeded when the cap is hit without a decision.
bool is_finite_mutation_type(const IntMatrix& b, std::size_t cap = 20000);

}  // namespace scat
