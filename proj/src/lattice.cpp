#include "scatlab/lattice.hpp"

#include <deque>
#include <numeric>
#include <set>

namespace scat {

namespace {

std::int64_t sgn64(std::int64_t x) { return (x > 0) - (x < 0); }

// One step of matrix mutation, generic over the entry type so the same code
// mutates integer matrices and the rational row used by the mutation map.
template <typename T, typename Mul, typename Add>
void mutate_step(std::vector<std::vector<T>>& b, std::size_t k, Mul mul, Add plus) {
  const std::size_t rows = b.size();
  const std::size_t cols = rows ? b[0].size() : 0;
  auto old = b;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (i == k || j == k) {
        b[i][j] = -old[i][j];
        continue;
      }
      T prod = mul(old[i][k], old[k][j]);
      if (prod > 0) {
        b[i][j] = old[k][j] > 0 ? plus(old[i][j], prod) : plus(old[i][j], -prod);
      }
    }
  }
}

void check_index(std::size_t k, std::size_t bound) {
  if (k >= bound) fail(ErrorCode::IndexOutOfRange, "mutation index " + std::to_string(k) + " out of range");
}

}  // namespace

IntMatrix::IntMatrix(const std::vector<IVec>& rows) {
  rows_ = rows.size();
  cols_ = rows.empty() ? 0 : rows[0].size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) fail(ErrorCode::InvalidArgument, "ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IVec IntMatrix::row(std::size_t i) const { return IVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

std::vector<IVec> IntMatrix::to_rows() const {
  std::vector<IVec> out;
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IVec IntMatrix::apply(const IVec& column) const {
  if (column.size() != cols_) fail(ErrorCode::InvalidArgument, "matrix/vector dimension mismatch");
  IVec out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] = checked_add(out[i], checked_mul((*this)(i, j), column[j]));
  return out;
}

RVec IntMatrix::apply_right(const RVec& row) const {
  if (row.size() != rows_) fail(ErrorCode::InvalidArgument, "vector/matrix dimension mismatch");
  RVec out(cols_, Rat(0));
  for (std::size_t i = 0; i < rows_; ++i) {
    if (row[i] == 0) continue;
    for (std::size_t j = 0; j < cols_; ++j) out[j] += row[i] * Rat(static_cast<long>((*this)(i, j)));
  }
  return out;
}

IVec skew_symmetrizer(const IntMatrix& b) {
  const std::size_t n = b.rows();
  if (b.cols() != n) fail(ErrorCode::InvalidArgument, "skew_symmetrizer needs a square matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (b(i, i) != 0) fail(ErrorCode::NotSkewSymmetrizable, "nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto x = b(i, j), y = b(j, i);
      if ((x == 0) != (y == 0) || (x != 0 && sgn64(x) == sgn64(y)))
        fail(ErrorCode::NotSkewSymmetrizable, "sign pattern of entries (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") is not skew");
    }
  }
  std::vector<Rat> d(n, Rat(0));
  IVec out(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (d[root] != 0) continue;
    std::vector<std::size_t> component{root};
    d[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      auto i = queue.front();
      queue.pop_front();
      for (std::size_t j = 0; j < n; ++j) {
        if (b(i, j) == 0) continue;
        // d_i b_ij = -d_j b_ji
        Rat want = d[i] * Rat(static_cast<long>(b(i, j))) / Rat(static_cast<long>(-b(j, i)));
        if (d[j] == 0) {
          d[j] = want;
          component.push_back(j);
          queue.push_back(j);
        } else if (d[j] != want) {
          fail(ErrorCode::NotSkewSymmetrizable, "inconsistent cycle in the sign pattern");
        }
      }
    }
    Int den = 1, g = 0;
    for (auto i : component) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d[i].get_den_mpz_t());
    for (auto i : component) {
      Int v = d[i].get_num() * (den / d[i].get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
    for (auto i : component) {
      Int v = d[i].get_num() * (den / d[i].get_den()) / g;
      if (!v.fits_slong_p()) fail(ErrorCode::BudgetExceeded, "skew-symmetrizer overflow");
      out[i] = v.get_si();
    }
  }
  return out;
}

IntMatrix mutate_matrix(const IntMatrix& a, std::span<const std::size_t> seq) {
  auto rows = a.to_rows();
  const std::size_t bound = std::min(a.rows(), a.cols());
  for (auto k : seq) {
    check_index(k, bound);
    mutate_step(rows, k, [](std::int64_t x, std::int64_t y) { return checked_mul(x, y); },
                [](std::int64_t x, std::int64_t y) { return checked_add(x, y); });
  }
  return IntMatrix(rows);
}

RVec eta(const IntMatrix& b, std::span<const std::size_t> seq, const RVec& v) {
  const std::size_t n = b.rows();
  if (b.cols() != n) fail(ErrorCode::InvalidArgument, "eta needs a square exchange matrix");
  if (v.size() != n) fail(ErrorCode::InvalidArgument, "eta: vector length differs from matrix size");
  std::vector<RVec> aug;
  for (std::size_t i = 0; i < n; ++i) aug.push_back(to_rvec(b.row(i)));
  aug.push_back(v);
  for (auto k : seq) {
    check_index(k, n);
    mutate_step(aug, k, [](const Rat& x, const Rat& y) { return Rat(x * y); },
                [](const Rat& x, const Rat& y) { return Rat(x + y); });
  }
  return aug.back();
}

ExchangeMatrix::ExchangeMatrix(std::size_t n_uf, std::size_t n_total, const std::vector<IVec>& rows) {
  if (n_uf == 0) fail(ErrorCode::InvalidArgument, "exchange matrix needs at least one unfrozen index");
  if (n_total < n_uf) fail(ErrorCode::InvalidArgument, "n_total < n_uf");
  if (rows.size() != n_uf) fail(ErrorCode::InvalidArgument, "exchange matrix must have n_uf rows");
  for (const auto& r : rows)
    if (r.size() != n_total) fail(ErrorCode::InvalidArgument, "exchange matrix rows must have n_total entries");
  entries_ = IntMatrix(rows);
  skew_symmetrizer(square_block());
}

ExchangeMatrix ExchangeMatrix::square(const std::vector<IVec>& rows) { return ExchangeMatrix(rows.size(), rows.size(), rows); }

IntMatrix ExchangeMatrix::square_block() const {
  IntMatrix b(n_uf(), n_uf());
  for (std::size_t i = 0; i < n_uf(); ++i)
    for (std::size_t j = 0; j < n_uf(); ++j) b(i, j) = entries_(i, j);
  return b;
}

bool ExchangeMatrix::full_rank() const {
  RMatrix m;
  for (std::size_t i = 0; i < n_uf(); ++i) m.push_back(to_rvec(entries_.row(i)));
  return rank(m, n_total()) == n_uf();
}

ExchangeMatrix ExchangeMatrix::mutated(std::size_t k) const {
  check_index(k, n_uf());
  std::size_t seq[] = {k};
  return ExchangeMatrix(mutate_matrix(entries_, seq));
}

ExchangeMatrix ExchangeMatrix::mutated(std::span<const std::size_t> seq) const {
  for (auto k : seq) check_index(k, n_uf());
  return ExchangeMatrix(mutate_matrix(entries_, seq));
}

ExchangeMatrix ExchangeMatrix::with_principal_coefficients() const {
  const std::size_t n = n_uf();
  std::vector<IVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    IVec r(2 * n, 0);
    for (std::size_t j = 0; j < n; ++j) r[j] = entries_(i, j);
    r[n + i] = 1;
    rows.push_back(r);
  }
  return ExchangeMatrix(n, 2 * n, rows);
}

ExchangeMatrix ExchangeMatrix::with_frozen_columns(const std::vector<IVec>& frozen_rows) const {
  const std::size_t n = n_uf();
  if (frozen_rows.size() != n) fail(ErrorCode::InvalidArgument, "frozen block must have n_uf rows");
  const std::size_t nf = frozen_rows[0].size();
  std::vector<IVec> rows;
  for (std::size_t i = 0; i < n; ++i) {
    if (frozen_rows[i].size() != nf) fail(ErrorCode::InvalidArgument, "ragged frozen block");
    IVec r;
    for (std::size_t j = 0; j < n; ++j) r.push_back(entries_(i, j));
    r.insert(r.end(), frozen_rows[i].begin(), frozen_rows[i].end());
    rows.push_back(r);
  }
  return ExchangeMatrix(n, n + nf, rows);
}

InitialData::InitialData(ExchangeMatrix exchange) : exchange_(std::move(exchange)) {
  d_ = skew_symmetrizer(exchange_.square_block());
  d_.resize(exchange_.n_total(), 1);
}

MVector InitialData::p_star(const NVector& n) const {
  if (n.size() != n_uf() && n.size() != n_total()) fail(ErrorCode::InvalidArgument, "p_star: wrong vector length");
  for (std::size_t i = n_uf(); i < n.size(); ++i)
    if (n[i] != 0) fail(ErrorCode::UnfrozenOnly, "p_star is defined on N_uf only");
  MVector m(n_total(), 0);
  for (std::size_t i = 0; i < n_uf(); ++i) {
    if (n[i] == 0) continue;
    for (std::size_t j = 0; j < n_total(); ++j) m[j] = checked_add(m[j], checked_mul(n[i], exchange_(i, j)));
  }
  return m;
}

RVec InitialData::p_star_uf(const NVector& n) const {
  auto m = p_star(n);
  m.resize(n_uf());
  return to_rvec(m);
}

Rat InitialData::pairing(const RVec& m, const NVector& n) const {
  Rat s = 0;
  for (std::size_t i = 0; i < n.size() && i < m.size(); ++i)
    if (n[i] != 0) s += m[i] * Rat(static_cast<long>(n[i])) / static_cast<long>(d_[i]);
  return s;
}

Rat InitialData::pairing(const MVector& m, const NVector& n) const {
  Rat s = 0;
  for (std::size_t i = 0; i < n.size() && i < m.size(); ++i)
    if (n[i] != 0 && m[i] != 0) s += Rat(static_cast<long>(checked_mul(m[i], n[i]))) / static_cast<long>(d_[i]);
  return s;
}

RVec InitialData::dual(const NVector& n) const {
  RVec w(n_uf(), Rat(0));
  for (std::size_t i = 0; i < n_uf() && i < n.size(); ++i)
    w[i] = Rat(static_cast<long>(n[i])) / static_cast<long>(d_[i]);
  return w;
}

std::int64_t InitialData::n_circ_factor(const NVector& n) const {
  std::int64_t c = 1;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (n[i] == 0) continue;
    auto a = n[i] < 0 ? -n[i] : n[i];
    c = std::lcm(c, d_[i] / std::gcd(d_[i], a));
  }
  return c;
}

NVector InitialData::n_circ_primitive(const NVector& n) const {
  auto c = n_circ_factor(n);
  NVector out(n);
  for (auto& x : out) x = checked_mul(x, c);
  return out;
}

Rat InitialData::omega(const NVector& a, const NVector& b) const { return pairing(p_star(a), b); }

bool in_n_plus(const NVector& n) {
  bool nonzero = false;
  for (auto x : n) {
    if (x < 0) return false;
    if (x > 0) nonzero = true;
  }
  return nonzero;
}

bool block_criterion(const IntMatrix& b) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = i + 1; j < b.cols(); ++j)
      if (b(i, j) * b(j, i) < -4) return false;
  return true;
}

bool is_finite_mutation_type(const IntMatrix& b, std::size_t cap) {
  if (b.rows() != b.cols()) fail(ErrorCode::InvalidArgument, "is_finite_mutation_type needs a square matrix");
  skew_symmetrizer(b);
  if (b.rows() <= 2) return true;
  std::set<IntMatrix> seen{b};
  std::deque<IntMatrix> queue{b};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (!block_criterion(cur)) return false;
    for (std::size_t k = 0; k < cur.rows(); ++k) {
      std::size_t seq[] = {k};
      auto next = mutate_matrix(cur, seq);
      if (seen.insert(next).second) {
        if (seen.size() > cap) fail(ErrorCode::BudgetExceeded, "mutation class larger than cap");
        queue.push_back(next);
      }
    }
  }
  return true;
}

}  // namespace scat
