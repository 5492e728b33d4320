#ifndef BSTRUCT_MAGMA_HPP
#define BSTRUCT_MAGMA_HPP

// Finite magmas on {0..n-1} given by their multiplication table, and the
// b-magma axiom x(yz) = y(xz).  Includes exhaustive enumeration (optionally
// up to isomorphism), automorphism groups and homomorphism checks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "exact.hpp"

namespace bstruct::magma {

struct MagmaTable {
  int n = 0;
  std::vector<int> t;  // row-major: t[x*n + y] = x*y

  MagmaTable() = default;
  MagmaTable(int size, std::vector<int> table) : n(size), t(std::move(table)) {
    if (n <= 0 || static_cast<int>(t.size()) != n * n)
      throw validation_error("magma: table size != n*n");
    for (int v : t)
      if (v < 0 || v >= n) throw validation_error("magma: entry out of range");
  }

  int at(int x, int y) const { return t[static_cast<size_t>(x) * n + y]; }
  int& at(int x, int y) { return t[static_cast<size_t>(x) * n + y]; }

  friend bool operator==(const MagmaTable& a, const MagmaTable& b) {
    return a.n == b.n && a.t == b.t;
  }
  friend bool operator<(const MagmaTable& a, const MagmaTable& b) {
    return a.n != b.n ? a.n < b.n : a.t < b.t;
  }
};

inline bool check_b_axiom(const MagmaTable& m) {
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      for (int z = 0; z < m.n; ++z)
        if (m.at(x, m.at(y, z)) != m.at(y, m.at(x, z))) return false;
  return true;
}

inline bool check_commutative(const MagmaTable& m) {
  for (int x = 0; x < m.n; ++x)
    for (int y = x + 1; y < m.n; ++y)
      if (m.at(x, y) != m.at(y, x)) return false;
  return true;
}

inline bool check_associative(const MagmaTable& m) {
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      for (int z = 0; z < m.n; ++z)
        if (m.at(m.at(x, y), z) != m.at(x, m.at(y, z))) return false;
  return true;
}

// all e with x*e = x for every x
inline std::vector<int> right_units(const MagmaTable& m) {
  std::vector<int> out;
  for (int e = 0; e < m.n; ++e) {
    bool ok = true;
    for (int x = 0; x < m.n && ok; ++x) ok = m.at(x, e) == x;
    if (ok) out.push_back(e);
  }
  return out;
}

// Table relabelled by the permutation p (an isomorphic copy).
inline MagmaTable relabel(const MagmaTable& m, const std::vector<int>& p) {
  if (static_cast<int>(p.size()) != m.n)
    throw validation_error("relabel: permutation size != table size");
  std::vector<int> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= m.n || seen[static_cast<size_t>(v)]++)
      throw validation_error("relabel: not a permutation");
  }
  std::vector<int> inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[static_cast<size_t>(p[i])] = static_cast<int>(i);
  MagmaTable r;
  r.n = m.n;
  r.t.resize(m.t.size());
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      r.at(x, y) = p[static_cast<size_t>(m.at(inv[static_cast<size_t>(x)], inv[static_cast<size_t>(y)]))];
  return r;
}

// Lexicographically least table over all relabelings; canonical form of the
// isomorphism class.
inline MagmaTable canonical_form(const MagmaTable& m) {
  std::vector<int> p(static_cast<size_t>(m.n));
  std::iota(p.begin(), p.end(), 0);
  MagmaTable best = m;
  while (std::next_permutation(p.begin(), p.end())) {
    MagmaTable r = relabel(m, p);
    if (r.t < best.t) best = r;
  }
  return best;
}

inline std::vector<std::vector<int>> automorphisms(const MagmaTable& m) {
  if (m.n > 8)
    throw validation_error("automorphisms: n > 8 not supported (n! scan)");
  std::vector<int> p(static_cast<size_t>(m.n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    for (int x = 0; x < m.n && ok; ++x)
      for (int y = 0; y < m.n && ok; ++y)
        ok = p[static_cast<size_t>(m.at(x, y))] ==
             m.at(p[static_cast<size_t>(x)], p[static_cast<size_t>(y)]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

struct MagmaMap {
  MagmaTable source, target;
  std::vector<int> map;  // value list, one target element per source element
};

inline bool is_homomorphism(const MagmaMap& f) {
  if (static_cast<int>(f.map.size()) != f.source.n)
    throw validation_error("magma map: value list size != source size");
  for (int v : f.map)
    if (v < 0 || v >= f.target.n)
      throw validation_error("magma map: value out of range");
  for (int x = 0; x < f.source.n; ++x)
    for (int y = 0; y < f.source.n; ++y)
      if (f.map[static_cast<size_t>(f.source.at(x, y))] !=
          f.target.at(f.map[static_cast<size_t>(x)], f.map[static_cast<size_t>(y)]))
        return false;
  return true;
}

// Backtracking enumeration of all b-magma tables of size n in lexicographic
// order.  Cells are filled row-major; after each placement every fully
// determined instance of the axiom is checked, which prunes hard enough that
// n = 4 (136528 tables) takes well under a second.
inline std::vector<MagmaTable> enumerate_b_magmas(int n, bool up_to_iso = false) {
  if (n < 1 || n > 5)
    throw validation_error("enumerate_b_magmas: supported range is 1 <= n <= 5");
  std::vector<MagmaTable> out;
  MagmaTable m;
  m.n = n;
  m.t.assign(static_cast<size_t>(n) * n, -1);

  // partial check around the last filled cell: revisit every axiom instance
  // whose four lookups are now all defined
  auto consistent = [&]() {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          int u = m.at(y, z);
          if (u < 0) continue;
          int v = m.at(x, z);
          if (v < 0) continue;
          int a = m.at(x, u);
          if (a < 0) continue;
          int b = m.at(y, v);
          if (b < 0) continue;
          if (a != b) return false;
        }
    return true;
  };

  auto rec = [&](auto&& self, int cell) -> void {
    if (cell == n * n) {
      if (!up_to_iso || canonical_form(m) == m) out.push_back(m);
      return;
    }
    for (int val = 0; val < n; ++val) {
      m.t[static_cast<size_t>(cell)] = val;
      if (consistent()) self(self, cell + 1);
    }
    m.t[static_cast<size_t>(cell)] = -1;
  };
  rec(rec, 0);
  return out;
}

}  // namespace bstruct::magma

#endif
