#include "scatlab/series.hpp"

#include <algorithm>

namespace scat {

bool GradedLex::operator()(const Exponent& a, const Exponent& b) const {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

TruncatedSeries TruncatedSeries::one(std::size_t nvars, int order) { return constant(nvars, order, Rat(1)); }

TruncatedSeries TruncatedSeries::constant(std::size_t nvars, int order, const Rat& c) {
  TruncatedSeries s(nvars, order);
  s.add_term(Exponent(nvars, 0), c);
  return s;
}

TruncatedSeries TruncatedSeries::monomial(const Exponent& e, const Rat& c, int order) {
  TruncatedSeries s(e.size(), order);
  s.add_term(e, c);
  return s;
}

bool TruncatedSeries::is_one() const {
  return terms_.size() == 1 && total_degree(terms_.begin()->first) == 0 && terms_.begin()->second == 1;
}

Rat TruncatedSeries::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

Rat TruncatedSeries::constant_term() const { return coeff(Exponent(nvars_, 0)); }

void TruncatedSeries::add_term(const Exponent& e, const Rat& c) {
  if (e.size() != nvars_) fail(ErrorCode::InvalidArgument, "exponent length differs from series variables");
  for (auto x : e)
    if (x < 0) fail(ErrorCode::ExponentLeavesCone, "negative exponent in a power series");
  if (c == 0 || total_degree(e) > order_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::degree_part(int d) const {
  TruncatedSeries out(nvars_, order_);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) == d) out.terms_.emplace(e, c);
  return out;
}

int TruncatedSeries::min_positive_degree() const {
  for (const auto& [e, c] : terms_) {
    auto d = total_degree(e);
    if (d > 0) return static_cast<int>(d);
  }
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries out(nvars_, order);
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= order) out.terms_.emplace(e, c);
  return out;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& o) const {
  if (order_ != o.order_) fail(ErrorCode::OrderMismatch, "series orders differ");
  if (nvars_ != o.nvars_) fail(ErrorCode::InvalidArgument, "series variable counts differ");
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

TruncatedSeries TruncatedSeries::operator-() const { return scaled(Rat(-1)); }

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const { return *this + (-o); }

TruncatedSeries TruncatedSeries::scaled(const Rat& c) const {
  TruncatedSeries out(nvars_, order_);
  if (c == 0) return out;
  for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
  return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check_compatible(o);
  TruncatedSeries out(nvars_, order_);
  Exponent e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    auto da = total_degree(ea);
    for (const auto& [eb, cb] : o.terms_) {
      // terms are sorted by degree, so the rest of o is too large as well
      if (da + total_degree(eb) > order_) break;
      for (std::size_t i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

namespace {

Rat rat_pow(const Rat& base, const Int& e) {
  if (!e.fits_slong_p()) {
    if (base == 1) return base;
    if (base == -1) return mpz_odd_p(e.get_mpz_t()) ? base : Rat(1);
    fail(ErrorCode::BudgetExceeded, "exponent too large");
  }
  long n = e.get_si();
  unsigned long a = static_cast<unsigned long>(n < 0 ? -n : n);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), a);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), a);
  Rat r(num, den);
  r.canonicalize();
  return n < 0 ? Rat(1 / r) : r;
}

}  // namespace

TruncatedSeries series_pow(const TruncatedSeries& a, const Int& e) {
  const Rat c0 = a.constant_term();
  if (c0 == 0) {
    if (e < 0) fail(ErrorCode::NotInvertible, "negative power of a series with zero constant term");
    if (e == 0) return TruncatedSeries::one(a.nvars(), a.order());
    if (e > a.order()) return TruncatedSeries(a.nvars(), a.order());
    auto out = a;
    for (long i = 1; i < e.get_si(); ++i) out = out * a;
    return out;
  }
  // a = c0 (1 + u) with u in m; (1+u)^e = sum_j binom(e, j) u^j and u^j vanishes for j > order
  auto u = a.scaled(Rat(1) / c0);
  u.add_term(Exponent(a.nvars(), 0), Rat(-1));
  auto out = TruncatedSeries::one(a.nvars(), a.order());
  auto power = out;
  Rat binom = 1;
  for (int j = 1; j <= a.order(); ++j) {
    power = power * u;
    if (power.is_zero()) break;
    binom = binom * Rat(e - (j - 1)) / j;
    out = out + power.scaled(binom);
  }
  return out.scaled(rat_pow(c0, e));
}

TruncatedSeries substitute(const TruncatedSeries& a, const IntMatrix& t) {
  if (t.rows() != a.nvars() || t.cols() != a.nvars()) fail(ErrorCode::InvalidArgument, "substitution matrix has wrong size");
  TruncatedSeries out(a.nvars(), a.order());
  for (const auto& [e, c] : a.terms()) {
    auto img = t.apply(e);
    for (auto x : img)
      if (x < 0) fail(ErrorCode::ExponentLeavesCone, "substituted exponent leaves N^+");
    out.add_term(img, c);
  }
  return out;
}

Univariate univariate_mul(const Univariate& a, const Univariate& b) {
  const std::size_t len = std::min(a.size(), b.size());
  Univariate out(len, Rat(0));
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Univariate univariate_pow(const Univariate& f, const Int& e) {
  const std::size_t len = f.size();
  Univariate g(len, Rat(0));
  if (len == 0) return g;
  if (e == 0) {
    g[0] = 1;
    return g;
  }
  if (f[0] == 0) {
    if (e < 0) fail(ErrorCode::NotInvertible, "negative power of a series with zero constant term");
    g[0] = 1;
    for (Int i = 0; i < e; ++i) {
      g = univariate_mul(g, f);
      bool zero = std::all_of(g.begin(), g.end(), [](const Rat& x) { return x == 0; });
      if (zero) break;
    }
    return g;
  }
  // J.C.P. Miller recurrence for f^e: n f_0 g_n = sum_{j=1}^{n} ((e+1) j - n) f_j g_{n-j}
  g[0] = rat_pow(f[0], e);
  const Rat ep1(e + 1);
  for (std::size_t n = 1; n < len; ++n) {
    Rat s = 0;
    for (std::size_t j = 1; j <= n; ++j)
      if (f[j] != 0) s += (ep1 * static_cast<long>(j) - static_cast<long>(n)) * f[j] * g[n - j];
    g[n] = s / (f[0] * static_cast<long>(n));
  }
  return g;
}

std::size_t WallFunction::max_multiple() const {
  auto deg = total_degree(normal_);
  return deg == 0 ? 0 : static_cast<std::size_t>(order_ / deg);
}

Univariate WallFunction::univariate() const {
  Univariate u(max_multiple() + 1, Rat(0));
  u[0] = 1;
  for (std::size_t l = 0; l < coeffs_.size() && l + 1 < u.size(); ++l) u[l + 1] = coeffs_[l];
  return u;
}

TruncatedSeries WallFunction::series() const {
  auto s = TruncatedSeries::one(normal_.size(), order_);
  for (std::size_t l = 0; l < coeffs_.size(); ++l) {
    Exponent e(normal_);
    for (auto& x : e) x = checked_mul(x, static_cast<std::int64_t>(l + 1));
    s.add_term(e, coeffs_[l]);
  }
  return s;
}

bool WallFunction::is_trivial() const { return coeffs_.empty(); }

WallFunction WallFunction::truncated(int order) const { return make_wall_function(normal_, coeffs_, order); }

WallFunction WallFunction::operator*(const WallFunction& o) const {
  if (normal_ != o.normal_) fail(ErrorCode::InvalidArgument, "wall functions on different normals");
  if (order_ != o.order_) fail(ErrorCode::OrderMismatch, "wall function orders differ");
  auto p = univariate_mul(univariate(), o.univariate());
  return make_wall_function(normal_, std::vector<Rat>(p.begin() + 1, p.end()), order_);
}

WallFunction make_wall_function(const NVector& n0, const std::vector<Rat>& coeffs, int order) {
  if (!in_n_plus(n0)) fail(ErrorCode::NotInNPlus, "wall normal must lie in N^+");
  if (!is_primitive(n0)) fail(ErrorCode::NotPrimitive, "wall normal must be primitive");
  WallFunction f;
  f.normal_ = n0;
  f.order_ = order;
  f.coeffs_ = coeffs;
  f.coeffs_.resize(std::min(coeffs.size(), f.max_multiple()));
  while (!f.coeffs_.empty() && f.coeffs_.back() == 0) f.coeffs_.pop_back();
  return f;
}

}  // namespace scat
