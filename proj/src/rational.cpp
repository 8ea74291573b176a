#include "scatlab/rational.hpp"

#include <numeric>
#include <stdexcept>

#include "scatlab/error.hpp"

namespace scat {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSkewSymmetrizable: return "NotSkewSymmetrizable";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnfrozenOnly: return "UnfrozenOnly";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::ExponentLeavesCone: return "ExponentLeavesCone";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotInNPlus: return "NotInNPlus";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::EndpointOnSupport: return "EndpointOnSupport";
    case ErrorCode::NotGeneral: return "NotGeneral";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::NotRank2: return "NotRank2";
    case ErrorCode::NotMinimalSupport: return "NotMinimalSupport";
    case ErrorCode::RankUnsupported: return "RankUnsupported";
    case ErrorCode::NonGenericEndpoint: return "NonGenericEndpoint";
    case ErrorCode::ZeroExponent: return "ZeroExponent";
    case ErrorCode::NotInChamberFan: return "NotInChamberFan";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::BudgetExceeded, "integer overflow in addition");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::BudgetExceeded, "integer overflow in multiplication");
  return r;
}

std::int64_t gcd_of(const IVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

bool is_primitive(const IVec& v) { return gcd_of(v) == 1; }

std::int64_t total_degree(const IVec& v) {
  std::int64_t s = 0;
  for (auto x : v) s += x;
  return s;
}

int sign(const Rat& x) { return sgn(x); }

Rat dot(const RVec& a, const RVec& b) {
  if (a.size() != b.size()) fail(ErrorCode::InvalidArgument, "dot: dimension mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

RVec to_rvec(const IVec& v) {
  RVec r;
  r.reserve(v.size());
  for (auto x : v) r.emplace_back(static_cast<long>(x));
  return r;
}

RVec scaled(const RVec& v, const Rat& s) {
  RVec r(v);
  for (auto& x : r) x *= s;
  return r;
}

RVec add(const RVec& a, const RVec& b) {
  RVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

RVec sub(const RVec& a, const RVec& b) {
  RVec r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

bool is_zero(const RVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RVec primitive_direction(const RVec& v) {
  if (is_zero(v)) fail(ErrorCode::InvalidArgument, "primitive_direction of zero vector");
  Int den_lcm = 1;
  for (const auto& x : v) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
  Int g = 0;
  std::vector<Int> ints;
  ints.reserve(v.size());
  for (const auto& x : v) {
    Int n = x.get_num() * (den_lcm / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    ints.push_back(n);
  }
  RVec r;
  r.reserve(v.size());
  for (auto& n : ints) r.emplace_back(Int(n / g));
  return r;
}

IVec primitive_integer(const RVec& v) {
  IVec r;
  for (const auto& x : primitive_direction(v)) {
    if (!x.get_num().fits_slong_p()) fail(ErrorCode::BudgetExceeded, "coordinate does not fit in 64 bits");
    r.push_back(x.get_num().get_si());
  }
  return r;
}

std::string rat_to_string(const Rat& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

Rat rat_from_string(const std::string& s) {
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "not a rational: '" + s + "'");
  if (r.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::vector<std::size_t> rref(RMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    Rat inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      Rat f = m[r][col];
      for (std::size_t c = 0; c < m[r].size(); ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(RMatrix m, std::size_t ncols) { return rref(m, ncols).size(); }

RMatrix nullspace(const RMatrix& rows, std::size_t ncols) {
  RMatrix m(rows);
  auto pivots = rref(m, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  RMatrix basis;
  for (std::size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    RVec v(ncols, Rat(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(primitive_direction(v));
  }
  return basis;
}

}  // namespace scat
