#pragma once

// Cluster variables by the exchange recursion, with its own Laurent arithmetic.
// Shares nothing with the scattering code beyond gmpxx.

#include <gmpxx.h>

#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Exp = std::vector<long>;
using Poly = std::map<Exp, mpq_class>;

inline void add_into(Poly& a, const Exp& e, const mpq_class& c) {
  auto& slot = a[e];
  slot += c;
  if (slot == 0) a.erase(e);
}

inline Poly plus(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [e, c] : b) add_into(out, e, c);
  return out;
}

inline Poly times(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exp e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      add_into(out, e, ca * cb);
    }
  return out;
}

inline Poly one(std::size_t n) { return {{Exp(n, 0), mpq_class(1)}}; }

inline Poly power(const Poly& a, long k) {
  Poly out = one(a.begin()->first.size());
  for (long i = 0; i < k; ++i) out = times(out, a);
  return out;
}

/// Exact quotient in the Laurent ring, by repeated removal of lex-leading terms.
inline Poly divide(Poly a, const Poly& b) {
  const auto& [lb, cb] = *b.rbegin();
  Poly q;
  for (int guard = 0; !a.empty(); ++guard) {
    if (guard > 200000) throw std::runtime_error("division is not exact");
    const auto [la, ca] = *a.rbegin();
    Exp e(la.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = la[i] - lb[i];
    Poly t{{e, ca / cb}};
    add_into(q, e, ca / cb);
    Poly sub = times(t, b);
    for (auto& [se, sc] : sub) add_into(a, se, -sc);
  }
  return q;
}

/// Extended exchange matrix with rows for the mutable indices and columns for all indices.
struct Seed {
  std::vector<std::vector<long>> b;
  std::vector<Poly> x;
};

inline Seed initial_seed(const std::vector<std::vector<long>>& b) {
  Seed s{b, {}};
  const std::size_t n = b.at(0).size();
  for (std::size_t i = 0; i < n; ++i) {
    Exp e(n, 0);
    e[i] = 1;
    s.x.push_back({{e, mpq_class(1)}});
  }
  return s;
}

/// x_k x_k' = prod x_j^{[b_kj]_+} + prod x_j^{[-b_kj]_+}, then the usual matrix mutation.
inline Seed mutate(const Seed& s, std::size_t k) {
  const std::size_t rows = s.b.size(), cols = s.x.size();
  Poly up = one(cols), down = one(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    long v = s.b[k][j];
    if (v > 0) up = times(up, power(s.x[j], v));
    if (v < 0) down = times(down, power(s.x[j], -v));
  }
  Seed out = s;
  out.x[k] = divide(plus(up, down), s.x[k]);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      if (i == k || j == k) {
        out.b[i][j] = -s.b[i][j];
      } else {
        long bik = s.b[i][k], bkj = s.b[k][j];
        out.b[i][j] = s.b[i][j] + (std::labs(bik) * bkj + bik * std::labs(bkj)) / 2;
      }
    }
  return out;
}

/// Mutable cluster variables after each step of the sequence (0-based indices).
inline std::vector<Poly> along(const std::vector<std::vector<long>>& b, const std::vector<std::size_t>& seq) {
  Seed s = initial_seed(b);
  std::vector<Poly> out;
  for (auto k : seq) {
    s = mutate(s, k);
    out.push_back(s.x[k]);
  }
  return out;
}

struct Census {
  std::set<Poly> variables;
  /// Mutable parts of the distinct seeds, in discovery order.
  std::vector<std::vector<Poly>> seeds;
  std::size_t clusters = 0;
  bool closed = false;
};

/// Breadth-first search over seeds; stops when no new cluster appears or after max_depth.
inline Census all_variables(const std::vector<std::vector<long>>& b, std::size_t max_depth) {
  const std::size_t rows = b.size();
  Census out;
  std::set<std::set<Poly>> seen;
  std::deque<std::pair<Seed, std::size_t>> queue{{initial_seed(b), 0}};
  auto key = [rows](const Seed& s) { return std::set<Poly>(s.x.begin(), s.x.begin() + static_cast<long>(rows)); };
  seen.insert(key(queue.front().first));
  out.closed = true;
  while (!queue.empty()) {
    auto [s, depth] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rows; ++i) out.variables.insert(s.x[i]);
    out.seeds.emplace_back(s.x.begin(), s.x.begin() + static_cast<long>(rows));
    for (std::size_t k = 0; k < rows; ++k) {
      Seed t = mutate(s, k);
      if (seen.count(key(t))) continue;
      if (depth == max_depth) {
        out.closed = false;
        continue;
      }
      seen.insert(key(t));
      queue.push_back({t, depth + 1});
    }
  }
  out.clusters = seen.size();
  return out;
}

}  // namespace oracle

namespace oracle {

/// With principal coefficients, the unique term free of frozen variables is x^g.
inline Exp g_vector(const Poly& p, std::size_t n_uf) {
  const Exp* found = nullptr;
  for (const auto& [e, c] : p) {
    bool free = true;
    for (std::size_t i = n_uf; i < e.size(); ++i) free = free && e[i] == 0;
    if (!free) continue;
    if (found) throw std::runtime_error("more than one coefficient-free term");
    found = &e;
  }
  if (!found) throw std::runtime_error("no coefficient-free term");
  return Exp(found->begin(), found->begin() + static_cast<long>(n_uf));
}

}  // namespace oracle
