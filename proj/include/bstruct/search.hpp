#ifndef BSTRUCT_SEARCH_HPP
#define BSTRUCT_SEARCH_HPP

// Exhaustive desk-scale searches: set-theoretic hexagon solutions,
// invertible matrix hexagon solutions over F_2 at dim 2, pre-unital scalar
// pairs, and permutation-type (L, Z) pairs for the L/Z relation.  Every
// emitted solution re-passes the public checker it claims to satisfy, scans
// are partitioned across threads, and result orders are canonical so output
// is independent of the thread count.

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

#include "tensorops.hpp"

namespace bstruct::search {

using tensorops::CheckOptions;
using tensorops::LegOp;

inline int64_t factorial(int n) {
  int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// permutation with the given rank in lexicographic order
inline std::vector<int> unrank_permutation(int n, int64_t rank) {
  std::vector<int> pool(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  int64_t f = factorial(n);
  for (int i = n; i >= 1; --i) {
    f /= i;
    int64_t k = rank / f;
    rank %= f;
    out.push_back(pool[static_cast<size_t>(k)]);
    pool.erase(pool.begin() + k);
  }
  return out;
}

inline LegOp<Fp> perm_to_op(const std::vector<int>& q, const std::vector<int64_t>& legs,
                            int64_t p = 2) {
  int64_t t = tensorops::dim_product(legs);
  if (static_cast<int64_t>(q.size()) != t)
    throw validation_error("perm_to_op: permutation size does not match legs");
  Fp one(1, p);
  LegOp<Fp> op{legs, legs, tensorops::make_mat(t, t, zero_of(one))};
  for (int64_t j = 0; j < t; ++j) op.m.at(q[static_cast<size_t>(j)], j) = one;
  return op;
}

template <class F>
void parallel_ranges(int64_t total, int threads, F&& worker) {
  int nt = std::max(1, threads);
  if (static_cast<int64_t>(nt) > total) nt = static_cast<int>(std::max<int64_t>(total, 1));
  if (nt == 1) {
    worker(0, 0, total);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < nt; ++t)
    pool.emplace_back([&worker, t, nt, total] { worker(t, total * t / nt, total * (t + 1) / nt); });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// set-theoretic hexagon solutions: bijections r of S x S, |S| = n <= 3

struct SetYbeResult {
  int n = 0;
  int64_t candidates_scanned = 0;
  bool exhaustive = true;
  std::vector<std::vector<int>> solutions;  // flat permutations of n^2 points
};

namespace detail {

// B12 B23 B12 = B23 B12 B23 composed as index maps on S^3, rightmost first
inline bool set_hexagon_holds(const std::vector<int>& q, int n) {
  auto step12 = [&](int x, int y, int z, int& a, int& b, int& c) {
    int im = q[static_cast<size_t>(x * n + y)];
    a = im / n;
    b = im % n;
    c = z;
  };
  auto step23 = [&](int x, int y, int z, int& a, int& b, int& c) {
    int im = q[static_cast<size_t>(y * n + z)];
    a = x;
    b = im / n;
    c = im % n;
  };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        int a, b, c, d, e, f;
        step12(x, y, z, a, b, c);
        step23(a, b, c, d, e, f);
        step12(d, e, f, a, b, c);
        int u, v, w, r, s, t;
        step23(x, y, z, u, v, w);
        step12(u, v, w, r, s, t);
        step23(r, s, t, u, v, w);
        if (a != u || b != v || c != w) return false;
      }
  return true;
}

}  // namespace detail

inline SetYbeResult search_settheoretic_ybe(int n, int threads = 1) {
  if (n < 1 || n > 3)
    throw validation_error("ybe-set: exhaustive scan supports only n <= 3");
  int N = n * n;
  int64_t total = factorial(N);
  SetYbeResult res;
  res.n = n;
  res.candidates_scanned = total;
  std::vector<std::vector<std::vector<int>>> found(
      static_cast<size_t>(std::max(1, threads)));
  parallel_ranges(total, threads, [&](int t, int64_t lo, int64_t hi) {
    std::vector<int> q = unrank_permutation(N, lo);
    for (int64_t r = lo; r < hi; ++r) {
      if (detail::set_hexagon_holds(q, n))
        found[static_cast<size_t>(t)].push_back(q);
      std::next_permutation(q.begin(), q.end());
    }
  });
  for (auto& part : found)
    for (auto& q : part) {
      if (!tensorops::check_hexagon(perm_to_op(q, {n, n})).holds)
        throw std::logic_error("ybe-set: set-level scan disagrees with the matrix checker");
      res.solutions.push_back(std::move(q));
    }
  return res;  // ranks scanned in order, so the list is already lexicographic
}

// ---------------------------------------------------------------------------
// invertible hexagon solutions over F_2, dim 2: all 2^16 4x4 matrices

struct MatrixYbeResult {
  int64_t candidates_scanned = 0;
  bool exhaustive = true;
  std::vector<uint32_t> codes;  // bit i*4+j = entry (i, j), ascending
  std::vector<LegOp<Fp>> solutions;
};

inline LegOp<Fp> matrix_code_to_op(uint32_t code) {
  Fp one(1, 2);
  LegOp<Fp> op{{2, 2}, {2, 2}, tensorops::make_mat(4, 4, zero_of(one))};
  for (int64_t i = 0; i < 4; ++i)
    for (int64_t j = 0; j < 4; ++j)
      if (code >> (i * 4 + j) & 1) op.m.at(i, j) = one;
  return op;
}

inline MatrixYbeResult search_matrix_ybe(int threads = 1) {
  MatrixYbeResult res;
  res.candidates_scanned = 1 << 16;
  std::vector<std::vector<uint32_t>> found(static_cast<size_t>(std::max(1, threads)));
  parallel_ranges(res.candidates_scanned, threads, [&](int t, int64_t lo, int64_t hi) {
    for (int64_t code = lo; code < hi; ++code) {
      LegOp<Fp> op = matrix_code_to_op(static_cast<uint32_t>(code));
      if (!tensorops::is_invertible(op)) continue;
      if (tensorops::check_hexagon(op).holds)
        found[static_cast<size_t>(t)].push_back(static_cast<uint32_t>(code));
    }
  });
  for (auto& part : found)
    for (uint32_t code : part) {
      res.codes.push_back(code);
      res.solutions.push_back(matrix_code_to_op(code));
    }
  return res;
}

// ---------------------------------------------------------------------------
// pre-unital scalar pairs over F_p at dim 1

struct PreunitalResult {
  int64_t p = 0;
  int64_t candidates_scanned = 0;
  bool exhaustive = true;
  std::vector<std::pair<int64_t, int64_t>> solutions;  // (B, C) values
};

inline PreunitalResult search_preunital(int64_t p, int threads = 1) {
  if (p < 2 || p > 97 || !is_prime_i64(p))
    throw validation_error("preunital search: p must be a prime <= 97");
  PreunitalResult res;
  res.p = p;
  res.candidates_scanned = (p - 1) * (p - 1);  // invertible scalars only
  std::vector<std::vector<std::pair<int64_t, int64_t>>> found(
      static_cast<size_t>(std::max(1, threads)));
  Fp one(1, p);
  parallel_ranges(res.candidates_scanned, threads, [&](int t, int64_t lo, int64_t hi) {
    for (int64_t k = lo; k < hi; ++k) {
      int64_t bv = 1 + k / (p - 1), cv = 1 + k % (p - 1);
      LegOp<Fp> B{{1, 1}, {1, 1}, tensorops::make_mat(1, 1, zero_of(one))};
      LegOp<Fp> C{{1}, {1}, tensorops::make_mat(1, 1, zero_of(one))};
      B.m.at(0, 0) = Fp(bv, p);
      C.m.at(0, 0) = Fp(cv, p);
      if (tensorops::check_preunital(B, C).holds)
        found[static_cast<size_t>(t)].emplace_back(bv, cv);
    }
  });
  for (auto& part : found)
    for (auto& pr : part) res.solutions.push_back(pr);
  return res;
}

// ---------------------------------------------------------------------------
// permutation-type (L, Z) pairs for the L/Z relation at dims (c, b) <= (2, 2)

struct LzePair {
  std::vector<int> l, z;  // flat permutations of c*c*b and b*b*b points
};

struct LzeResult {
  int c_dim = 0, b_dim = 0;
  int64_t candidates_scanned = 0;  // full pair space (Z perms) x (L perms)
  bool exhaustive = true;
  std::vector<std::vector<int>> z_solutions;  // tetrahedron-passing Z perms
  std::vector<LzePair> solutions;
};

inline LzeResult search_lze(int c_dim, int b_dim, int threads = 1) {
  if (c_dim < 1 || c_dim > 2 || b_dim < 1 || b_dim > 2)
    throw validation_error("lze search: permutation scan supports dims <= 2");
  LzeResult res;
  res.c_dim = c_dim;
  res.b_dim = b_dim;
  int zn = b_dim * b_dim * b_dim, ln = c_dim * c_dim * b_dim;
  int64_t ztotal = factorial(zn), ltotal = factorial(ln);
  res.candidates_scanned = ztotal * ltotal;
  std::vector<int64_t> bleg(3, b_dim);
  std::vector<int64_t> lleg{c_dim, c_dim, b_dim};
  // stage 1: tetrahedron filter on Z (a failing Z excludes all its pairs)
  std::vector<std::vector<std::vector<int>>> zfound(
      static_cast<size_t>(std::max(1, threads)));
  parallel_ranges(ztotal, threads, [&](int t, int64_t lo, int64_t hi) {
    std::vector<int> q = unrank_permutation(zn, lo);
    for (int64_t r = lo; r < hi; ++r) {
      if (tensorops::check_tetrahedron(perm_to_op(q, bleg)).holds)
        zfound[static_cast<size_t>(t)].push_back(q);
      std::next_permutation(q.begin(), q.end());
    }
  });
  for (auto& part : zfound)
    for (auto& q : part) res.z_solutions.push_back(std::move(q));
  // stage 2: scan L permutations against every surviving Z
  for (const auto& zq : res.z_solutions) {
    LegOp<Fp> zop = perm_to_op(zq, bleg);
    std::vector<std::vector<std::vector<int>>> lfound(
        static_cast<size_t>(std::max(1, threads)));
    parallel_ranges(ltotal, threads, [&](int t, int64_t lo, int64_t hi) {
      std::vector<int> q = unrank_permutation(ln, lo);
      for (int64_t r = lo; r < hi; ++r) {
        if (tensorops::check_lze(perm_to_op(q, lleg), zop).holds)
          lfound[static_cast<size_t>(t)].push_back(q);
        std::next_permutation(q.begin(), q.end());
      }
    });
    for (auto& part : lfound)
      for (auto& q : part) res.solutions.push_back({std::move(q), zq});
  }
  return res;
}

}  // namespace bstruct::search

#endif
