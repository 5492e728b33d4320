#ifndef BSTRUCT_COCHAIN_HPP
#define BSTRUCT_COCHAIN_HPP

// Cochains on a finite b-magma A with coefficients in a finitely generated
// abelian group B, the differential
//   d(c)(x1..xn, x) = sum_i (-1)^i [ c(x1..^xi..xn, xi*x) - c(x1..^xi..xn, x) ]
// (degree 1: d(p)(x,y) = p(x) - p(xy) + p(y)), cocycle/coboundary tests,
// cohomology groups via the Smith/Hermite/Howell machinery, coherence checks
// for degree 3 and 4, gauge and functor conditions, and the comparison map
// from classical abelian (associator, braiding) data.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "magma.hpp"
#include "zlinalg.hpp"

namespace bstruct::cochain {

using magma::MagmaMap;
using magma::MagmaTable;
using zlinalg::AbelianGroup;
using zlinalg::GroupElement;
using zlinalg::Mat;

constexpr int64_t kMaxValues = int64_t(1) << 24;  // dense value-table budget

inline int64_t pow_size(int n, int degree) {
  int64_t s = 1;
  for (int i = 0; i < degree; ++i) {
    s *= n;
    if (s > kMaxValues)
      throw validation_error("cochain: |A|^degree exceeds the dense budget");
  }
  return s;
}

struct Cochain {
  MagmaTable A;
  AbelianGroup B;
  int degree = 1;
  std::vector<GroupElement> values;  // |A|^degree, row-major, first argument most significant

  const GroupElement& at(const std::vector<int>& args) const {
    int64_t idx = 0;
    for (int a : args) idx = idx * A.n + a;
    return values[static_cast<size_t>(idx)];
  }
};

inline void validate(const Cochain& c) {
  if (c.degree < 1) throw validation_error("cochain: degree must be >= 1");
  int64_t want = pow_size(c.A.n, c.degree);
  if (static_cast<int64_t>(c.values.size()) != want)
    throw validation_error("cochain: value table size != |A|^degree");
  for (const auto& v : c.values)
    if (v.size() != c.B.rank())
      throw validation_error("cochain: value rank != coefficient rank");
}

inline bool same_shape(const Cochain& x, const Cochain& y) {
  return x.A == y.A && x.B.moduli == y.B.moduli && x.degree == y.degree;
}

inline Cochain zero_cochain(const MagmaTable& A, const AbelianGroup& B, int degree) {
  Cochain c;
  c.A = A;
  c.B = B;
  c.degree = degree;
  c.values.assign(static_cast<size_t>(pow_size(A.n, degree)), zlinalg::zero_element(B));
  return c;
}

inline Cochain cochain_add(const Cochain& x, const Cochain& y) {
  if (!same_shape(x, y)) throw validation_error("cochain: shape mismatch");
  Cochain r = x;
  for (size_t i = 0; i < r.values.size(); ++i)
    r.values[i] = zlinalg::add(r.B, r.values[i], y.values[i]);
  return r;
}

inline Cochain cochain_sub(const Cochain& x, const Cochain& y) {
  if (!same_shape(x, y)) throw validation_error("cochain: shape mismatch");
  Cochain r = x;
  for (size_t i = 0; i < r.values.size(); ++i)
    r.values[i] = zlinalg::sub(r.B, r.values[i], y.values[i]);
  return r;
}

inline Cochain cochain_scale(int64_t k, const Cochain& x) {
  Cochain r = x;
  for (auto& v : r.values) v = zlinalg::scale(r.B, k, v);
  return r;
}

inline bool is_zero_cochain(const Cochain& x) {
  for (const auto& v : x.values)
    if (!zlinalg::is_zero_element(v)) return false;
  return true;
}

// next tuple in row-major order; returns false after the last one
inline bool next_tuple(std::vector<int>& t, int n) {
  for (size_t i = t.size(); i-- > 0;) {
    if (++t[i] < n) return true;
    t[i] = 0;
  }
  return false;
}

inline Cochain differential(const Cochain& c) {
  validate(c);
  int n = c.degree, an = c.A.n;
  Cochain d = zero_cochain(c.A, c.B, n + 1);
  std::vector<int> w(static_cast<size_t>(n) + 1, 0);
  std::vector<int> args(static_cast<size_t>(n), 0);
  size_t idx = 0;
  do {
    GroupElement acc = zlinalg::zero_element(c.B);
    if (n == 1) {
      int x = w[0], y = w[1];
      acc = zlinalg::add(c.B, c.values[static_cast<size_t>(x)], c.values[static_cast<size_t>(y)]);
      acc = zlinalg::sub(c.B, acc, c.values[static_cast<size_t>(c.A.at(x, y))]);
    } else {
      int x = w[static_cast<size_t>(n)];
      for (int i = 1; i <= n; ++i) {
        size_t k = 0;
        for (int j = 0; j < n; ++j)
          if (j != i - 1) args[k++] = w[static_cast<size_t>(j)];
        args[static_cast<size_t>(n) - 1] = c.A.at(w[static_cast<size_t>(i - 1)], x);
        const GroupElement& hit = c.at(args);
        args[static_cast<size_t>(n) - 1] = x;
        const GroupElement& miss = c.at(args);
        GroupElement term = zlinalg::sub(c.B, hit, miss);
        acc = (i % 2) ? zlinalg::sub(c.B, acc, term) : zlinalg::add(c.B, acc, term);
      }
    }
    d.values[idx++] = std::move(acc);
  } while (next_tuple(w, an));
  return d;
}

inline bool is_cocycle(const Cochain& c) { return is_zero_cochain(differential(c)); }

// Integer matrix of d : C^n -> C^(n+1); rows = n-tuples, columns = (n+1)-tuples.
inline Mat<Int> matrix_of_differential(const MagmaTable& A, int n) {
  if (n < 1) throw validation_error("matrix_of_differential: degree must be >= 1");
  int64_t rows = pow_size(A.n, n), cols = pow_size(A.n, n + 1);
  if (rows * cols > kMaxValues)
    throw validation_error("matrix_of_differential: matrix exceeds the dense budget");
  Mat<Int> m(rows, cols);
  std::vector<int> w(static_cast<size_t>(n) + 1, 0);
  std::vector<int> args(static_cast<size_t>(n), 0);
  auto row_index = [&]() {
    int64_t idx = 0;
    for (int a : args) idx = idx * A.n + a;
    return idx;
  };
  int64_t col = 0;
  do {
    if (n == 1) {
      int x = w[0], y = w[1];
      m.at(x, col) += 1;
      m.at(A.at(x, y), col) -= 1;
      m.at(y, col) += 1;
    } else {
      int x = w[static_cast<size_t>(n)];
      for (int i = 1; i <= n; ++i) {
        size_t k = 0;
        for (int j = 0; j < n; ++j)
          if (j != i - 1) args[k++] = w[static_cast<size_t>(j)];
        int sign = (i % 2) ? -1 : 1;
        args[static_cast<size_t>(n) - 1] = A.at(w[static_cast<size_t>(i - 1)], x);
        m.at(row_index(), col) += sign;
        args[static_cast<size_t>(n) - 1] = x;
        m.at(row_index(), col) -= sign;
      }
    }
    ++col;
  } while (next_tuple(w, A.n));
  return m;
}

// d(b) = c for some b of degree n-1?  Solved per cyclic coefficient factor.
inline std::optional<Cochain> is_coboundary(const Cochain& c) {
  validate(c);
  if (c.degree < 2)
    throw validation_error("is_coboundary: the complex starts in degree 1");
  Mat<Int> dm = matrix_of_differential(c.A, c.degree - 1);
  Cochain witness = zero_cochain(c.A, c.B, c.degree - 1);
  for (size_t f = 0; f < c.B.moduli.size(); ++f) {
    int64_t m = c.B.moduli[f];
    if (m > 0) {
      Mat<int64_t> dmod(dm.rows, dm.cols);
      for (size_t i = 0; i < dm.a.size(); ++i)
        dmod.a[i] = mod_reduce(static_cast<int64_t>(dm.a[i]), m);
      std::vector<int64_t> v(c.values.size());
      for (size_t i = 0; i < c.values.size(); ++i) v[i] = c.values[i][f];
      auto x = zlinalg::solve_in_span_mod(dmod, v, m);
      if (!x) return std::nullopt;
      for (size_t i = 0; i < witness.values.size(); ++i) witness.values[i][f] = (*x)[i];
    } else {
      std::vector<Int> v(c.values.size());
      for (size_t i = 0; i < c.values.size(); ++i) v[i] = c.values[i][f];
      auto x = zlinalg::solve_in_span_z(dm, v);
      if (!x) return std::nullopt;
      for (size_t i = 0; i < witness.values.size(); ++i)
        witness.values[i][f] = static_cast<int64_t>((*x)[i]);
    }
  }
  for (auto& v : witness.values) v = zlinalg::reduce(witness.B, v);
  return witness;
}

struct CohomologyResult {
  std::vector<int64_t> invariant_factors;  // ascending divisibility, 0 = Z
  std::vector<Cochain> representatives;    // one cocycle per factor
};

namespace detail {

// kernel and image lattice generators for one cyclic coefficient factor
struct FactorLattices {
  Mat<Int> kernel, image;
};

inline FactorLattices factor_lattices(const MagmaTable& A, int n, int64_t m) {
  Mat<Int> dn = matrix_of_differential(A, n);
  int64_t N = dn.rows, Np = dn.cols;
  FactorLattices fl;
  if (m > 0) {
    // x * dn = 0 mod m: left kernel of [dn ; m*I] projected to the x block
    Mat<Int> stack(N + Np, Np);
    for (int64_t i = 0; i < N; ++i)
      for (int64_t j = 0; j < Np; ++j) stack.at(i, j) = dn.at(i, j);
    for (int64_t i = 0; i < Np; ++i) stack.at(N + i, i) = m;
    Mat<Int> ker = zlinalg::left_kernel(stack);
    fl.kernel = Mat<Int>(ker.rows, N);
    for (int64_t i = 0; i < ker.rows; ++i)
      for (int64_t j = 0; j < N; ++j) fl.kernel.at(i, j) = ker.at(i, j);
  } else {
    fl.kernel = zlinalg::left_kernel(dn);
  }
  fl.image = (n >= 2) ? matrix_of_differential(A, n - 1) : Mat<Int>(0, N);
  return fl;
}

struct Piece {  // one prime-power cyclic summand of one factor's quotient
  int64_t prime_power;
  Cochain gen;
};

}  // namespace detail

inline CohomologyResult cohomology(const MagmaTable& A, const AbelianGroup& B, int n) {
  if (n < 1) throw validation_error("cohomology: degree must be >= 1");
  std::map<int64_t, std::vector<detail::Piece>> pieces_by_prime;
  std::vector<std::pair<int64_t, Cochain>> free_parts;
  int64_t N = pow_size(A.n, n);
  for (size_t f = 0; f < B.moduli.size(); ++f) {
    int64_t m = B.moduli[f];
    detail::FactorLattices fl = detail::factor_lattices(A, n, m);
    AbelianGroup ambient{std::vector<int64_t>(static_cast<size_t>(N), m)};
    zlinalg::QuotientResult q = zlinalg::quotient_invariants(fl.kernel, fl.image, ambient);
    for (size_t i = 0; i < q.invariants.size(); ++i) {
      Cochain rep = zero_cochain(A, B, n);
      for (int64_t j = 0; j < N; ++j) {
        Int v = q.generators.at(static_cast<int64_t>(i), j);
        if (m > 0) v %= m;
        rep.values[static_cast<size_t>(j)][f] = static_cast<int64_t>(v);
      }
      for (auto& v : rep.values) v = zlinalg::reduce(B, v);
      int64_t d = static_cast<int64_t>(q.invariants[i]);
      if (d == 0) {
        free_parts.emplace_back(0, std::move(rep));
        continue;
      }
      // split into prime-power pieces: the p-part of <rep> is generated by (d/p^e)*rep
      int64_t rest = d;
      for (int64_t p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        int64_t pe = 1;
        while (rest % p == 0) { rest /= p; pe *= p; }
        pieces_by_prime[p].push_back({pe, cochain_scale(d / pe, rep)});
      }
      if (rest > 1) pieces_by_prime[rest].push_back({rest, cochain_scale(d / rest, rep)});
    }
  }
  // largest-with-largest regrouping into the invariant factor chain
  size_t slots = 0;
  for (auto& [p, ps] : pieces_by_prime) {
    std::sort(ps.begin(), ps.end(),
              [](const detail::Piece& a, const detail::Piece& b) {
                return a.prime_power > b.prime_power;
              });
    slots = std::max(slots, ps.size());
  }
  CohomologyResult out;
  std::vector<std::pair<int64_t, Cochain>> merged(slots, {1, zero_cochain(A, B, n)});
  for (auto& [p, ps] : pieces_by_prime)
    for (size_t i = 0; i < ps.size(); ++i) {
      merged[i].first *= ps[i].prime_power;
      merged[i].second = cochain_add(merged[i].second, ps[i].gen);
    }
  std::reverse(merged.begin(), merged.end());  // ascending divisibility
  for (auto& fp : free_parts) merged.push_back(std::move(fp));
  for (auto& [d, rep] : merged) {
    out.invariant_factors.push_back(d);
    out.representatives.push_back(std::move(rep));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Coherence and gauge layer (degrees 2..4 on a pointed one-object structure).

// r(y,z,xw) + r(x,z,w) + r(x,y,zw) == r(x,y,w) + r(x,z,yw) + r(y,z,w),
// the associator coherence; identical to d(r) = 0 in degree 3.
inline bool r_coherence_check(const Cochain& r) {
  validate(r);
  if (r.degree != 3) throw validation_error("r_coherence_check: degree must be 3");
  const MagmaTable& A = r.A;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z)
        for (int w = 0; w < A.n; ++w) {
          GroupElement lhs = r.at({y, z, A.at(x, w)});
          lhs = zlinalg::add(r.B, lhs, r.at({x, z, w}));
          lhs = zlinalg::add(r.B, lhs, r.at({x, y, A.at(z, w)}));
          GroupElement rhs = r.at({x, y, w});
          rhs = zlinalg::add(r.B, rhs, r.at({x, z, A.at(y, w)}));
          rhs = zlinalg::add(r.B, rhs, r.at({y, z, w}));
          if (lhs != rhs) return false;
        }
  return true;
}

// r'(x,y,z) = r(x,y,z) + q(x,z) - q(x,yz) + q(y,xz) - q(y,z)  (= r - d(q))
inline Cochain gauge_transform(const Cochain& r, const Cochain& q) {
  validate(r);
  validate(q);
  if (r.degree != 3 || q.degree != 2)
    throw validation_error("gauge_transform: expects degrees (3, 2)");
  if (!(r.A == q.A) || r.B.moduli != q.B.moduli)
    throw validation_error("gauge_transform: mismatched magma or coefficients");
  const MagmaTable& A = r.A;
  Cochain out = r;
  size_t idx = 0;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z) {
        GroupElement v = out.values[idx];
        v = zlinalg::add(out.B, v, q.at({x, z}));
        v = zlinalg::sub(out.B, v, q.at({x, A.at(y, z)}));
        v = zlinalg::add(out.B, v, q.at({y, A.at(x, z)}));
        v = zlinalg::sub(out.B, v, q.at({y, z}));
        out.values[idx++] = v;
      }
  return out;
}

inline Cochain pullback(const Cochain& c, const std::vector<int>& f,
                        const MagmaTable& source) {
  Cochain out = zero_cochain(source, c.B, c.degree);
  std::vector<int> args(static_cast<size_t>(c.degree), 0);
  std::vector<int> img(args);
  size_t idx = 0;
  do {
    for (size_t i = 0; i < args.size(); ++i) img[i] = f[static_cast<size_t>(args[i])];
    out.values[idx++] = c.at(img);
  } while (next_tuple(args, source.n));
  return out;
}

// r'(f(x),f(y),f(z)) + q(y,z) + q(x,yz) == q(x,z) + q(y,xz) + r(x,y,z)
inline bool functor_check(const MagmaMap& f, const Cochain& r,
                          const Cochain& r_prime, const Cochain& q) {
  validate(r);
  validate(r_prime);
  validate(q);
  if (!is_homomorphism(f))
    throw validation_error("functor_check: map is not a homomorphism");
  if (r.degree != 3 || r_prime.degree != 3 || q.degree != 2)
    throw validation_error("functor_check: expects degrees (3, 3, 2)");
  if (!(r.A == f.source) || !(r_prime.A == f.target) || !(q.A == f.source))
    throw validation_error("functor_check: cochains not on the map's magmas");
  if (r.B.moduli != r_prime.B.moduli || r.B.moduli != q.B.moduli)
    throw validation_error("functor_check: coefficient mismatch");
  const MagmaTable& A = f.source;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z) {
        GroupElement lhs = r_prime.at({f.map[static_cast<size_t>(x)],
                                       f.map[static_cast<size_t>(y)],
                                       f.map[static_cast<size_t>(z)]});
        lhs = zlinalg::add(r.B, lhs, q.at({y, z}));
        lhs = zlinalg::add(r.B, lhs, q.at({x, A.at(y, z)}));
        GroupElement rhs = q.at({x, z});
        rhs = zlinalg::add(r.B, rhs, q.at({y, A.at(x, z)}));
        rhs = zlinalg::add(r.B, rhs, r.at({x, y, z}));
        if (lhs != rhs) return false;
      }
  return true;
}

// Find q making (f, q) a functor between the realizations of r and r':
// the condition rearranges to d(q) = r - f*(r').
inline std::optional<Cochain> functor_solve(const MagmaMap& f, const Cochain& r,
                                            const Cochain& r_prime) {
  validate(r);
  validate(r_prime);
  if (!is_homomorphism(f))
    throw validation_error("functor_solve: map is not a homomorphism");
  if (r.degree != 3 || r_prime.degree != 3)
    throw validation_error("functor_solve: expects degree-3 cochains");
  Cochain pulled = pullback(r_prime, f.map, f.source);
  return is_coboundary(cochain_sub(r, pulled));
}

// q(x,y) + p(x) + p(y) == p(xy) + q~(x,y)
inline bool transformation_check(const Cochain& q, const Cochain& q_tilde,
                                 const Cochain& p) {
  validate(q);
  validate(q_tilde);
  validate(p);
  if (q.degree != 2 || q_tilde.degree != 2 || p.degree != 1)
    throw validation_error("transformation_check: expects degrees (2, 2, 1)");
  if (!same_shape(q, q_tilde) || !(p.A == q.A) || p.B.moduli != q.B.moduli)
    throw validation_error("transformation_check: shape mismatch");
  const MagmaTable& A = q.A;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y) {
      GroupElement lhs = q.at({x, y});
      lhs = zlinalg::add(q.B, lhs, p.at({x}));
      lhs = zlinalg::add(q.B, lhs, p.at({y}));
      GroupElement rhs = p.at({A.at(x, y)});
      rhs = zlinalg::add(q.B, rhs, q_tilde.at({x, y}));
      if (lhs != rhs) return false;
    }
  return true;
}

// s(x,y,z,v) + s(x,y,u,zv) + s(y,z,u,xv) + s(x,z,u,v)
//   == s(y,z,u,v) + s(x,z,u,yv) + s(x,y,u,v) + s(x,y,z,uv);
// identical to d(s) = 0 in degree 4.
inline bool s4_coherence_check(const Cochain& s) {
  validate(s);
  if (s.degree != 4) throw validation_error("s4_coherence_check: degree must be 4");
  const MagmaTable& A = s.A;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z)
        for (int u = 0; u < A.n; ++u)
          for (int v = 0; v < A.n; ++v) {
            GroupElement lhs = s.at({x, y, z, v});
            lhs = zlinalg::add(s.B, lhs, s.at({x, y, u, A.at(z, v)}));
            lhs = zlinalg::add(s.B, lhs, s.at({y, z, u, A.at(x, v)}));
            lhs = zlinalg::add(s.B, lhs, s.at({x, z, u, v}));
            GroupElement rhs = s.at({y, z, u, v});
            rhs = zlinalg::add(s.B, rhs, s.at({x, z, u, A.at(y, v)}));
            rhs = zlinalg::add(s.B, rhs, s.at({x, y, u, v}));
            rhs = zlinalg::add(s.B, rhs, s.at({x, y, z, A.at(u, v)}));
            if (lhs != rhs) return false;
          }
  return true;
}

// s' = s + d(r) for some degree-3 r?
inline std::optional<Cochain> bicat_equiv(const Cochain& s, const Cochain& s_prime) {
  validate(s);
  validate(s_prime);
  if (s.degree != 4 || s_prime.degree != 4)
    throw validation_error("bicat_equiv: expects degree-4 cochains");
  return is_coboundary(cochain_sub(s_prime, s));
}

// ---------------------------------------------------------------------------
// Comparison from classical abelian structures: a commutative group table,
// a group-cohomology 3-cocycle a and a braiding 2-cochain c satisfying the
// two hexagon identities map to the degree-3 cocycle
//   b(x,y,z) = a(x,y,z) + c(x,y) - a(y,x,z).

inline bool is_abelian_group_table(const MagmaTable& A) {
  if (!magma::check_commutative(A) || !magma::check_associative(A)) return false;
  int e = -1;
  for (int cand = 0; cand < A.n; ++cand) {
    bool ok = true;
    for (int x = 0; x < A.n && ok; ++x) ok = A.at(x, cand) == x && A.at(cand, x) == x;
    if (ok) { e = cand; break; }
  }
  if (e < 0) return false;
  for (int x = 0; x < A.n; ++x) {
    bool has_inv = false;
    for (int y = 0; y < A.n && !has_inv; ++y) has_inv = A.at(x, y) == e;
    if (!has_inv) return false;
  }
  return true;
}

// group-cohomology 3-cocycle condition plus the two hexagon identities
inline bool abelian_cocycle_check(const Cochain& a, const Cochain& c) {
  validate(a);
  validate(c);
  if (a.degree != 3 || c.degree != 2)
    throw validation_error("abelian_cocycle_check: expects degrees (3, 2)");
  if (!(a.A == c.A) || a.B.moduli != c.B.moduli)
    throw validation_error("abelian_cocycle_check: shape mismatch");
  if (!is_abelian_group_table(a.A))
    throw validation_error("abelian_cocycle_check: table is not a commutative group");
  const MagmaTable& A = a.A;
  const AbelianGroup& B = a.B;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z) {
        for (int w = 0; w < A.n; ++w) {
          // a(y,z,w) - a(xy,z,w) + a(x,yz,w) - a(x,y,zw) + a(x,y,z) = 0
          GroupElement v = a.at({y, z, w});
          v = zlinalg::sub(B, v, a.at({A.at(x, y), z, w}));
          v = zlinalg::add(B, v, a.at({x, A.at(y, z), w}));
          v = zlinalg::sub(B, v, a.at({x, y, A.at(z, w)}));
          v = zlinalg::add(B, v, a.at({x, y, z}));
          if (!zlinalg::is_zero_element(v)) return false;
        }
        // hexagon 1: c(x,yz) - a(y,z,x) = a(x,y,z) + c(x,y) - a(y,x,z) + c(x,z)
        GroupElement lhs = zlinalg::sub(B, c.at({x, A.at(y, z)}), a.at({y, z, x}));
        GroupElement rhs = a.at({x, y, z});
        rhs = zlinalg::add(B, rhs, c.at({x, y}));
        rhs = zlinalg::sub(B, rhs, a.at({y, x, z}));
        rhs = zlinalg::add(B, rhs, c.at({x, z}));
        if (lhs != rhs) return false;
        // hexagon 2: c(xy,z) + a(z,x,y) = -a(x,y,z) + c(y,z) + a(x,z,y) + c(x,z)
        lhs = zlinalg::add(B, c.at({A.at(x, y), z}), a.at({z, x, y}));
        rhs = zlinalg::neg(B, a.at({x, y, z}));
        rhs = zlinalg::add(B, rhs, c.at({y, z}));
        rhs = zlinalg::add(B, rhs, a.at({x, z, y}));
        rhs = zlinalg::add(B, rhs, c.at({x, z}));
        if (lhs != rhs) return false;
      }
  return true;
}

inline Cochain comparison_from_abelian(const Cochain& a, const Cochain& c) {
  validate(a);
  validate(c);
  if (a.degree != 3 || c.degree != 2)
    throw validation_error("comparison_from_abelian: expects degrees (3, 2)");
  if (!(a.A == c.A) || a.B.moduli != c.B.moduli)
    throw validation_error("comparison_from_abelian: shape mismatch");
  if (!is_abelian_group_table(a.A))
    throw validation_error("comparison_from_abelian: table is not a commutative group");
  const MagmaTable& A = a.A;
  Cochain b = zero_cochain(A, a.B, 3);
  size_t idx = 0;
  for (int x = 0; x < A.n; ++x)
    for (int y = 0; y < A.n; ++y)
      for (int z = 0; z < A.n; ++z) {
        GroupElement v = a.at({x, y, z});
        v = zlinalg::add(a.B, v, c.at({x, y}));
        v = zlinalg::sub(a.B, v, a.at({y, x, z}));
        b.values[idx++] = v;
      }
  return b;
}

// ---------------------------------------------------------------------------
// Orbits of H^n under pullback along Aut(A).  Classes are identified by a
// canonical in-coset representative: coordinates reduced against the Howell
// (or Hermite) form of the coboundary-plus-relation span, factor by factor.

struct OrbitResult {
  int64_t class_count = 0;
  std::vector<int64_t> orbit_sizes;         // sorted descending
  std::vector<Cochain> representatives;     // one per orbit, deterministic
};

namespace detail {

struct FactorReducer {
  int64_t m = 0;                 // modulus, 0 = Z
  Mat<int64_t> howell;           // for m > 0
  std::vector<int64_t> pivots;
  Mat<Int> hermite;              // for m = 0

  void reduce(std::vector<int64_t>& v) const {
    if (m > 0) {
      for (int64_t i = 0; i < howell.rows; ++i) {
        int64_t c = pivots[static_cast<size_t>(i)];
        int64_t q = v[static_cast<size_t>(c)] / howell.at(i, c);
        if (q == 0) continue;
        for (int64_t j = 0; j < howell.cols; ++j)
          v[static_cast<size_t>(j)] =
              mod_reduce(v[static_cast<size_t>(j)] - mul_mod(q, howell.at(i, j), m), m);
      }
    } else {
      for (int64_t i = 0; i < hermite.rows; ++i) {
        int64_t c = -1;
        for (int64_t j = 0; j < hermite.cols; ++j)
          if (hermite.at(i, j) != 0) { c = j; break; }
        if (c < 0) continue;
        Int q = zlinalg::floor_div(Int(v[static_cast<size_t>(c)]), hermite.at(i, c));
        if (q == 0) continue;
        for (int64_t j = 0; j < hermite.cols; ++j)
          v[static_cast<size_t>(j)] -= static_cast<int64_t>(q * hermite.at(i, j));
      }
    }
  }
};

}  // namespace detail

inline OrbitResult aut_orbits(const MagmaTable& A, const AbelianGroup& B, int n) {
  CohomologyResult h = cohomology(A, B, n);
  int64_t total = 1;
  for (int64_t d : h.invariant_factors) {
    if (d == 0) throw validation_error("aut_orbits: cohomology group is infinite");
    total *= d;
    if (total > 10000)
      throw validation_error("aut_orbits: more than 10^4 classes");
  }
  // canonical reduction data per coefficient factor
  std::vector<detail::FactorReducer> red(B.moduli.size());
  Mat<Int> cob = (n >= 2) ? matrix_of_differential(A, n - 1)
                          : Mat<Int>(0, pow_size(A.n, n));
  for (size_t f = 0; f < B.moduli.size(); ++f) {
    red[f].m = B.moduli[f];
    if (red[f].m > 0) {
      Mat<int64_t> rows(cob.rows, cob.cols);
      for (size_t i = 0; i < cob.a.size(); ++i)
        rows.a[i] = mod_reduce(static_cast<int64_t>(cob.a[i]), red[f].m);
      auto hw = zlinalg::howell_form_ex(rows, red[f].m);
      red[f].howell = std::move(hw.h);
      red[f].pivots = std::move(hw.pivot_col);
    } else {
      red[f].hermite = zlinalg::hermite_form(cob);
    }
  }
  auto normal_form = [&](const Cochain& c) {
    Cochain nf = c;
    std::vector<int64_t> v(nf.values.size());
    for (size_t f = 0; f < B.moduli.size(); ++f) {
      for (size_t i = 0; i < nf.values.size(); ++i) v[i] = nf.values[i][f];
      red[f].reduce(v);
      for (size_t i = 0; i < nf.values.size(); ++i) nf.values[i][f] = v[i];
    }
    return nf;
  };
  auto key_of = [&](const Cochain& c) {
    std::vector<int64_t> key;
    for (const auto& v : c.values) key.insert(key.end(), v.begin(), v.end());
    return key;
  };

  // enumerate all classes as combinations of the representatives
  std::map<std::vector<int64_t>, int64_t> ids;
  std::vector<Cochain> elems;
  std::vector<int64_t> digits(h.invariant_factors.size(), 0);
  for (;;) {
    Cochain c = zero_cochain(A, B, n);
    for (size_t i = 0; i < digits.size(); ++i)
      if (digits[i])
        c = cochain_add(c, cochain_scale(digits[i], h.representatives[i]));
    Cochain nf = normal_form(c);
    auto key = key_of(nf);
    if (!ids.count(key)) {
      ids[key] = static_cast<int64_t>(elems.size());
      elems.push_back(std::move(nf));
    }
    size_t i = digits.size();
    while (i > 0 && ++digits[i - 1] == h.invariant_factors[i - 1]) digits[--i] = 0;
    if (i == 0) break;
  }
  if (static_cast<int64_t>(elems.size()) != total)
    throw std::logic_error("aut_orbits: representative set is not independent");

  std::vector<std::vector<int>> auts = magma::automorphisms(A);
  // union-find over class ids
  std::vector<int64_t> parent(elems.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int64_t>(i);
  auto find = [&](int64_t x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (size_t e = 0; e < elems.size(); ++e)
    for (const auto& sigma : auts) {
      Cochain moved = normal_form(pullback(elems[e], sigma, A));
      auto it = ids.find(key_of(moved));
      if (it == ids.end())
        throw std::logic_error("aut_orbits: pullback left the class set");
      int64_t a = find(static_cast<int64_t>(e)), b = find(it->second);
      if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::map<int64_t, std::vector<int64_t>> orbits;
  for (size_t e = 0; e < elems.size(); ++e)
    orbits[find(static_cast<int64_t>(e))].push_back(static_cast<int64_t>(e));
  OrbitResult out;
  out.class_count = total;
  for (auto& [root, members] : orbits) {
    out.orbit_sizes.push_back(static_cast<int64_t>(members.size()));
    out.representatives.push_back(elems[static_cast<size_t>(root)]);
  }
  std::sort(out.orbit_sizes.begin(), out.orbit_sizes.end(), std::greater<>());
  return out;
}

}  // namespace bstruct::cochain

#endif
