#ifndef BSTRUCT_ZLINALG_HPP
#define BSTRUCT_ZLINALG_HPP

// Exact linear algebra over Z, Z/m and Q: dense matrices, Smith and Hermite
// normal forms over Z, the Howell form over Z/m (composite m allowed), span
// membership solvers and invariant factors of finite(ly generated) quotients.
// Everything is exact; there is no floating point in this library.

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <vector>

#include "exact.hpp"

namespace bstruct::zlinalg {

using bstruct::Int;

template <class T>
struct Mat {
  int64_t rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int64_t r, int64_t c) : rows(r), cols(c), a(static_cast<size_t>(r * c)) {}
  Mat(int64_t r, int64_t c, T fill)
      : rows(r), cols(c), a(static_cast<size_t>(r * c), fill) {}

  T& at(int64_t i, int64_t j) { return a[static_cast<size_t>(i * cols + j)]; }
  const T& at(int64_t i, int64_t j) const {
    return a[static_cast<size_t>(i * cols + j)];
  }

  static Mat identity(int64_t n) {
    Mat m(n, n);
    for (int64_t i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  friend bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }

  void swap_rows(int64_t i, int64_t j) {
    if (i == j) return;
    for (int64_t k = 0; k < cols; ++k) std::swap(at(i, k), at(j, k));
  }
  void swap_cols(int64_t i, int64_t j) {
    if (i == j) return;
    for (int64_t k = 0; k < rows; ++k) std::swap(at(k, i), at(k, j));
  }
  // row i -= q * row j
  void row_sub(int64_t i, int64_t j, const T& q) {
    for (int64_t k = 0; k < cols; ++k) at(i, k) -= q * at(j, k);
  }
  void col_sub(int64_t i, int64_t j, const T& q) {
    for (int64_t k = 0; k < rows; ++k) at(k, i) -= q * at(k, j);
  }
  void scale_row(int64_t i, const T& c) {
    for (int64_t k = 0; k < cols; ++k) at(i, k) *= c;
  }
};

template <class T>
Mat<T> mat_mul(const Mat<T>& x, const Mat<T>& y) {
  assert(x.cols == y.rows);
  Mat<T> r(x.rows, y.cols);
  for (int64_t i = 0; i < x.rows; ++i)
    for (int64_t k = 0; k < x.cols; ++k) {
      const T& v = x.at(i, k);
      if (is_zero(v)) continue;
      for (int64_t j = 0; j < y.cols; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

template <class T>
Mat<T> vstack(const Mat<T>& x, const Mat<T>& y) {
  assert(x.cols == y.cols || x.rows == 0 || y.rows == 0);
  int64_t c = x.rows ? x.cols : y.cols;
  Mat<T> r(x.rows + y.rows, c);
  std::copy(x.a.begin(), x.a.end(), r.a.begin());
  std::copy(y.a.begin(), y.a.end(), r.a.begin() + x.a.size());
  return r;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

// ---------------------------------------------------------------------------
// Hermite normal form (row style).  H = T * M with T unimodular; pivots are
// positive, entries above a pivot are reduced into [0, pivot), zero rows are
// dropped.  Canonical for the row lattice of M.

struct HermiteResult {
  Mat<Int> h;  // canonical basis of the row lattice, one pivot per row
  Mat<Int> t;  // transform: h = t_nonzero_part * m (rows matching h)
};

inline HermiteResult hermite_form_ex(Mat<Int> m) {
  int64_t rows = m.rows, cols = m.cols;
  Mat<Int> t = Mat<Int>::identity(rows);
  int64_t r = 0;
  for (int64_t c = 0; c < cols && r < rows; ++c) {
    // gcd-combine everything below row r into row r
    for (;;) {
      int64_t piv = -1;
      for (int64_t i = r; i < rows; ++i)
        if (m.at(i, c) != 0 &&
            (piv < 0 || boost::multiprecision::abs(m.at(i, c)) <
                            boost::multiprecision::abs(m.at(piv, c))))
          piv = i;
      if (piv < 0) break;
      m.swap_rows(r, piv);
      t.swap_rows(r, piv);
      bool clean = true;
      for (int64_t i = r + 1; i < rows; ++i) {
        if (m.at(i, c) == 0) continue;
        Int q = m.at(i, c) / m.at(r, c);  // truncated: remainder shrinks
        m.row_sub(i, r, q);
        t.row_sub(i, r, q);
        if (m.at(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (m.at(r, c) == 0) continue;
    if (m.at(r, c) < 0) {
      m.scale_row(r, Int(-1));
      t.scale_row(r, Int(-1));
    }
    for (int64_t i = 0; i < r; ++i) {
      Int q = floor_div(m.at(i, c), m.at(r, c));
      if (q != 0) {
        m.row_sub(i, r, q);
        t.row_sub(i, r, q);
      }
    }
    ++r;
  }
  HermiteResult res;
  res.h = Mat<Int>(r, cols);
  res.t = Mat<Int>(r, rows);
  for (int64_t i = 0; i < r; ++i) {
    for (int64_t j = 0; j < cols; ++j) res.h.at(i, j) = m.at(i, j);
    for (int64_t j = 0; j < rows; ++j) res.t.at(i, j) = t.at(i, j);
  }
  return res;
}

inline Mat<Int> hermite_form(const Mat<Int>& m) { return hermite_form_ex(m).h; }

// ---------------------------------------------------------------------------
// Smith normal form.  u * m * v = d with u, v unimodular and the diagonal of d
// a divisibility chain d1 | d2 | ... (nonnegative).  v_inv tracks the inverse
// of v so callers can change basis back without an extra inversion.

struct SmithResult {
  Mat<Int> u, d, v;
  Mat<Int> v_inv;
};

inline SmithResult smith_normal_form(Mat<Int> m) {
  int64_t rows = m.rows, cols = m.cols;
  SmithResult s;
  s.u = Mat<Int>::identity(rows);
  s.v = Mat<Int>::identity(cols);
  s.v_inv = Mat<Int>::identity(cols);
  int64_t n = std::min(rows, cols);
  for (int64_t t = 0; t < n; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block to (t,t)
      int64_t pi = -1, pj = -1;
      for (int64_t i = t; i < rows; ++i)
        for (int64_t j = t; j < cols; ++j)
          if (m.at(i, j) != 0 &&
              (pi < 0 || boost::multiprecision::abs(m.at(i, j)) <
                             boost::multiprecision::abs(m.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) { pi = pj = -1; break; }
      m.swap_rows(t, pi);
      s.u.swap_rows(t, pi);
      m.swap_cols(t, pj);
      s.v.swap_cols(t, pj);
      s.v_inv.swap_rows(t, pj);

      bool again = false;
      for (int64_t i = t + 1; i < rows; ++i) {
        if (m.at(i, t) == 0) continue;
        Int q = m.at(i, t) / m.at(t, t);
        m.row_sub(i, t, q);
        s.u.row_sub(i, t, q);
        if (m.at(i, t) != 0) again = true;
      }
      for (int64_t j = t + 1; j < cols; ++j) {
        if (m.at(t, j) == 0) continue;
        Int q = m.at(t, j) / m.at(t, t);
        m.col_sub(j, t, q);
        s.v.col_sub(j, t, q);
        // inverse transform: row op on v_inv with opposite sign
        for (int64_t k = 0; k < cols; ++k)
          s.v_inv.at(t, k) += q * s.v_inv.at(j, k);
        if (m.at(t, j) != 0) again = true;
      }
      if (again) continue;

      // enforce divisibility of the trailing block by the pivot
      bool fixed = true;
      for (int64_t i = t + 1; i < rows && fixed; ++i)
        for (int64_t j = t + 1; j < cols && fixed; ++j)
          if (m.at(i, j) % m.at(t, t) != 0) {
            // fold row i into row t and restart the elimination at t
            for (int64_t k = 0; k < cols; ++k) m.at(t, k) += m.at(i, k);
            for (int64_t k = 0; k < rows; ++k) s.u.at(t, k) += s.u.at(i, k);
            fixed = false;
          }
      if (fixed) break;
    }
    if (m.at(t, t) < 0) {
      m.scale_row(t, Int(-1));
      s.u.scale_row(t, Int(-1));
    }
    if (m.at(t, t) == 0) break;  // the trailing block is entirely zero
  }
  s.d = std::move(m);
  return s;
}

inline std::vector<Int> smith_diagonal(const Mat<Int>& d) {
  std::vector<Int> out;
  for (int64_t i = 0; i < std::min(d.rows, d.cols); ++i)
    out.push_back(d.at(i, i));
  return out;
}

// Basis of the left kernel lattice {x : x * m = 0}, as rows.
inline Mat<Int> left_kernel(const Mat<Int>& m) {
  SmithResult s = smith_normal_form(m);
  std::vector<int64_t> idx;
  int64_t n = std::min(m.rows, m.cols);
  for (int64_t i = 0; i < m.rows; ++i)
    if (i >= n || s.d.at(i, i) == 0) idx.push_back(i);
  Mat<Int> k(static_cast<int64_t>(idx.size()), m.rows);
  for (size_t r = 0; r < idx.size(); ++r)
    for (int64_t j = 0; j < m.rows; ++j) k.at(static_cast<int64_t>(r), j) = s.u.at(idx[r], j);
  return k;
}

// ---------------------------------------------------------------------------
// Howell form over Z/m (m >= 1; composite allowed, m = 0 is rejected — use the
// Hermite form over Z instead).  Canonical for the row span as a Z/m-module:
// one pivot per column, pivots divide m, entries above a pivot are reduced
// modulo the pivot, and any span vector supported on columns >= j lies in the
// span of the rows with pivot column >= j (the Howell property, obtained by
// appending annihilator multiples of each new pivot row).

struct HowellResult {
  Mat<int64_t> h;
  Mat<int64_t> t;  // h = t * input (over Z/m)
  std::vector<int64_t> pivot_col;
};

inline HowellResult howell_form_ex(const Mat<int64_t>& input, int64_t m) {
  if (m <= 0) throw validation_error("howell_form: modulus must be positive");
  int64_t cols = input.cols;
  // working rows stay paired with their transform rows
  std::vector<std::vector<int64_t>> w, wt;
  for (int64_t i = 0; i < input.rows; ++i) {
    std::vector<int64_t> r(cols), tr(input.rows, 0);
    for (int64_t j = 0; j < cols; ++j) r[j] = mod_reduce(input.at(i, j), m);
    tr[i] = 1;
    w.push_back(std::move(r));
    wt.push_back(std::move(tr));
  }
  auto combine = [&](std::vector<int64_t>& r1, std::vector<int64_t>& t1,
                     std::vector<int64_t>& r2, std::vector<int64_t>& t2,
                     int64_t c) {
    // unimodular 2x2 op making r2[c] = 0, r1[c] = gcd
    int64_t a = r1[c], b = r2[c], s, t;
    int64_t g = exgcd(a, b, s, t);
    int64_t ag = a / g, bg = b / g;
    auto update = [&](std::vector<int64_t>& x, std::vector<int64_t>& y) {
      for (size_t k = 0; k < x.size(); ++k) {
        int64_t xv = x[k], yv = y[k];
        x[k] = mod_reduce(mul_mod(s, xv, m) + mul_mod(t, yv, m), m);
        y[k] = mod_reduce(mul_mod(ag, yv, m) - mul_mod(bg, xv, m), m);
      }
    };
    update(r1, r2);
    update(t1, t2);
  };

  std::vector<std::vector<int64_t>> hr, ht;
  std::vector<int64_t> pivots;
  for (int64_t c = 0; c < cols; ++c) {
    int64_t lead = -1;
    for (size_t i = 0; i < w.size(); ++i) {
      if (w[i][c] == 0) continue;
      if (lead < 0) {
        lead = static_cast<int64_t>(i);
      } else {
        combine(w[lead], wt[lead], w[i], wt[i], c);
      }
    }
    if (lead < 0) continue;
    std::vector<int64_t> row = std::move(w[lead]);
    std::vector<int64_t> trow = std::move(wt[lead]);
    w.erase(w.begin() + lead);
    wt.erase(wt.begin() + lead);
    // normalise the pivot to gcd(pivot, m) by a unit
    int64_t u = unit_to_gcd(row[c], m);
    for (int64_t k = 0; k < cols; ++k) row[k] = mul_mod(u, row[k], m);
    for (size_t k = 0; k < trow.size(); ++k) trow[k] = mul_mod(u, trow[k], m);
    int64_t piv = row[c];
    // annihilator shadow keeps the Howell property for later columns
    int64_t ann = m / std::gcd(piv, m);
    if (ann != 1) {
      std::vector<int64_t> ar(cols), at(trow.size());
      bool nz = false;
      for (int64_t k = 0; k < cols; ++k) {
        ar[k] = mul_mod(ann, row[k], m);
        nz = nz || ar[k] != 0;
      }
      if (nz) {
        for (size_t k = 0; k < trow.size(); ++k) at[k] = mul_mod(ann, trow[k], m);
        w.push_back(std::move(ar));
        wt.push_back(std::move(at));
      }
    }
    hr.push_back(std::move(row));
    ht.push_back(std::move(trow));
    pivots.push_back(c);
  }
  // reduce entries above each pivot modulo the pivot
  for (size_t k = 0; k < hr.size(); ++k) {
    int64_t c = pivots[k], piv = hr[k][c];
    for (size_t i = 0; i < k; ++i) {
      int64_t q = hr[i][c] / piv;
      if (q == 0) continue;
      for (int64_t j = 0; j < cols; ++j)
        hr[i][j] = mod_reduce(hr[i][j] - mul_mod(q, hr[k][j], m), m);
      for (size_t j = 0; j < ht[i].size(); ++j)
        ht[i][j] = mod_reduce(ht[i][j] - mul_mod(q, ht[k][j], m), m);
    }
  }
  HowellResult res;
  res.h = Mat<int64_t>(static_cast<int64_t>(hr.size()), cols);
  res.t = Mat<int64_t>(static_cast<int64_t>(hr.size()), input.rows);
  for (size_t i = 0; i < hr.size(); ++i) {
    for (int64_t j = 0; j < cols; ++j) res.h.at(static_cast<int64_t>(i), j) = hr[i][j];
    for (int64_t j = 0; j < input.rows; ++j) res.t.at(static_cast<int64_t>(i), j) = ht[i][j];
  }
  res.pivot_col = std::move(pivots);
  return res;
}

inline Mat<int64_t> howell_form(const Mat<int64_t>& m, int64_t modulus) {
  return howell_form_ex(m, modulus).h;
}

// ---------------------------------------------------------------------------
// Span membership: coefficients x with x * m = v, if any.

inline std::optional<std::vector<int64_t>> solve_in_span_mod(
    const Mat<int64_t>& m, const std::vector<int64_t>& v, int64_t modulus) {
  if (static_cast<int64_t>(v.size()) != m.cols)
    throw validation_error("solve_in_span: size mismatch");
  HowellResult hw = howell_form_ex(m, modulus);
  std::vector<int64_t> res(v);
  for (auto& x : res) x = mod_reduce(x, modulus);
  std::vector<int64_t> coef(static_cast<size_t>(hw.h.rows), 0);
  for (int64_t i = 0; i < hw.h.rows; ++i) {
    int64_t c = hw.pivot_col[static_cast<size_t>(i)];
    for (int64_t j = 0; j < c; ++j)
      if (res[static_cast<size_t>(j)] != 0) return std::nullopt;
    int64_t piv = hw.h.at(i, c);
    if (res[static_cast<size_t>(c)] % piv != 0) return std::nullopt;
    int64_t q = res[static_cast<size_t>(c)] / piv;
    coef[static_cast<size_t>(i)] = q;
    for (int64_t j = 0; j < m.cols; ++j)
      res[static_cast<size_t>(j)] =
          mod_reduce(res[static_cast<size_t>(j)] - mul_mod(q, hw.h.at(i, j), modulus), modulus);
  }
  for (int64_t j = 0; j < m.cols; ++j)
    if (res[static_cast<size_t>(j)] != 0) return std::nullopt;
  std::vector<int64_t> x(static_cast<size_t>(m.rows), 0);
  for (int64_t i = 0; i < hw.h.rows; ++i)
    for (int64_t j = 0; j < m.rows; ++j)
      x[static_cast<size_t>(j)] = mod_reduce(
          x[static_cast<size_t>(j)] + mul_mod(coef[static_cast<size_t>(i)], hw.t.at(i, j), modulus),
          modulus);
  return x;
}

inline std::optional<std::vector<Int>> solve_in_span_z(const Mat<Int>& m,
                                                       const std::vector<Int>& v) {
  if (static_cast<int64_t>(v.size()) != m.cols)
    throw validation_error("solve_in_span: size mismatch");
  HermiteResult hf = hermite_form_ex(m);
  std::vector<Int> res(v);
  std::vector<Int> coef(static_cast<size_t>(hf.h.rows), Int(0));
  for (int64_t i = 0; i < hf.h.rows; ++i) {
    int64_t c = -1;
    for (int64_t j = 0; j < hf.h.cols; ++j)
      if (hf.h.at(i, j) != 0) { c = j; break; }
    if (c < 0) continue;
    for (int64_t j = 0; j < c; ++j)
      if (res[static_cast<size_t>(j)] != 0) return std::nullopt;
    if (res[static_cast<size_t>(c)] % hf.h.at(i, c) != 0) return std::nullopt;
    Int q = res[static_cast<size_t>(c)] / hf.h.at(i, c);
    coef[static_cast<size_t>(i)] = q;
    for (int64_t j = 0; j < m.cols; ++j) res[static_cast<size_t>(j)] -= q * hf.h.at(i, j);
  }
  for (auto& x : res)
    if (x != 0) return std::nullopt;
  std::vector<Int> x(static_cast<size_t>(m.rows), Int(0));
  for (int64_t i = 0; i < hf.h.rows; ++i)
    for (int64_t j = 0; j < m.rows; ++j)
      x[static_cast<size_t>(j)] += coef[static_cast<size_t>(i)] * hf.t.at(i, j);
  return x;
}

// Dense exact solve over a field (Fp or Rat): x * m = v.
template <class K>
std::optional<std::vector<K>> solve_in_span_field(const Mat<K>& m,
                                                  const std::vector<K>& v) {
  if (static_cast<int64_t>(v.size()) != m.cols)
    throw validation_error("solve_in_span: size mismatch");
  if (m.rows == 0) {
    for (auto& x : v)
      if (!is_zero(x)) return std::nullopt;
    return std::vector<K>{};
  }
  K one = one_of(m.a[0]), zero = zero_of(m.a[0]);
  // row-reduce [m | I] and then express v greedily
  Mat<K> work(m.rows, m.cols + m.rows, zero);
  for (int64_t i = 0; i < m.rows; ++i) {
    for (int64_t j = 0; j < m.cols; ++j) work.at(i, j) = m.at(i, j);
    work.at(i, m.cols + i) = one;
  }
  int64_t r = 0;
  std::vector<int64_t> pivots;
  for (int64_t c = 0; c < m.cols && r < m.rows; ++c) {
    int64_t piv = -1;
    for (int64_t i = r; i < m.rows; ++i)
      if (!is_zero(work.at(i, c))) { piv = i; break; }
    if (piv < 0) continue;
    work.swap_rows(r, piv);
    K inv = inv_of(work.at(r, c));
    for (int64_t j = 0; j < work.cols; ++j) work.at(r, j) = work.at(r, j) * inv;
    for (int64_t i = 0; i < m.rows; ++i) {
      if (i == r || is_zero(work.at(i, c))) continue;
      K f = work.at(i, c);
      for (int64_t j = 0; j < work.cols; ++j)
        work.at(i, j) = work.at(i, j) - f * work.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  std::vector<K> res(v), coef(static_cast<size_t>(r), zero);
  for (int64_t i = 0; i < r; ++i) {
    int64_t c = pivots[static_cast<size_t>(i)];
    K q = res[static_cast<size_t>(c)];
    if (is_zero(q)) continue;
    coef[static_cast<size_t>(i)] = q;
    for (int64_t j = 0; j < m.cols; ++j)
      res[static_cast<size_t>(j)] = res[static_cast<size_t>(j)] - q * work.at(i, j);
  }
  for (auto& x : res)
    if (!is_zero(x)) return std::nullopt;
  std::vector<K> x(static_cast<size_t>(m.rows), zero);
  for (int64_t i = 0; i < r; ++i)
    for (int64_t j = 0; j < m.rows; ++j)
      x[static_cast<size_t>(j)] =
          x[static_cast<size_t>(j)] + coef[static_cast<size_t>(i)] * work.at(i, m.cols + j);
  return x;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups.  moduli[i] is the order of the i-th
// cyclic factor, 0 meaning Z.  Elements are coordinate vectors reduced into
// [0, m_i) for finite factors.

struct AbelianGroup {
  std::vector<int64_t> moduli;

  size_t rank() const { return moduli.size(); }
  bool finite() const {
    return std::all_of(moduli.begin(), moduli.end(), [](int64_t m) { return m > 0; });
  }
  Int order() const {
    Int n = 1;
    for (int64_t m : moduli) n *= m;
    return n;
  }
};

using GroupElement = std::vector<int64_t>;

inline GroupElement reduce(const AbelianGroup& g, GroupElement e) {
  for (size_t i = 0; i < e.size(); ++i)
    if (g.moduli[i] > 0) e[i] = mod_reduce(e[i], g.moduli[i]);
  return e;
}

inline GroupElement zero_element(const AbelianGroup& g) {
  return GroupElement(g.rank(), 0);
}

inline GroupElement add(const AbelianGroup& g, const GroupElement& x,
                        const GroupElement& y) {
  GroupElement r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return reduce(g, std::move(r));
}

inline GroupElement sub(const AbelianGroup& g, const GroupElement& x,
                        const GroupElement& y) {
  GroupElement r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return reduce(g, std::move(r));
}

inline GroupElement neg(const AbelianGroup& g, const GroupElement& x) {
  GroupElement r(x);
  for (auto& v : r) v = -v;
  return reduce(g, std::move(r));
}

inline GroupElement scale(const AbelianGroup& g, int64_t c, const GroupElement& x) {
  GroupElement r(x);
  for (auto& v : r) v *= c;
  return reduce(g, std::move(r));
}

inline bool is_zero_element(const GroupElement& x) {
  return std::all_of(x.begin(), x.end(), [](int64_t v) { return v == 0; });
}

// ---------------------------------------------------------------------------
// Invariant factors of ker/im inside an ambient product group.  kernel_gens
// and image_gens are rows of ambient coordinates (integers; reduction mod the
// ambient moduli is implicit).  The image must be contained in the kernel —
// a violation is reported loudly since it signals a broken differential.

struct QuotientResult {
  std::vector<Int> invariants;    // divisibility chain, 1s dropped, 0 = Z factor
  Mat<Int> generators;            // one ambient lift per invariant, as rows
};

inline Mat<Int> relation_rows(const AbelianGroup& g) {
  std::vector<std::pair<int64_t, int64_t>> rel;
  for (size_t i = 0; i < g.moduli.size(); ++i)
    if (g.moduli[i] > 0) rel.emplace_back(static_cast<int64_t>(i), g.moduli[i]);
  Mat<Int> r(static_cast<int64_t>(rel.size()), static_cast<int64_t>(g.rank()));
  for (size_t k = 0; k < rel.size(); ++k) r.at(static_cast<int64_t>(k), rel[k].first) = rel[k].second;
  return r;
}

inline QuotientResult quotient_invariants(const Mat<Int>& kernel_gens,
                                          const Mat<Int>& image_gens,
                                          const AbelianGroup& group) {
  int64_t n = static_cast<int64_t>(group.rank());
  if ((kernel_gens.rows && kernel_gens.cols != n) ||
      (image_gens.rows && image_gens.cols != n))
    throw validation_error("quotient_invariants: column count != group rank");
  Mat<Int> rel = relation_rows(group);
  Mat<Int> klat = vstack(kernel_gens, rel);
  Mat<Int> ilat = vstack(image_gens, rel);
  Mat<Int> kb = hermite_form(klat);
  // containment check: every image generator solves in the kernel lattice
  for (int64_t i = 0; i < image_gens.rows; ++i) {
    std::vector<Int> g(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j) g[static_cast<size_t>(j)] = image_gens.at(i, j);
    if (!solve_in_span_z(kb, g))
      throw std::logic_error(
          "quotient_invariants: image generator outside kernel lattice");
  }
  int64_t k = kb.rows;
  // coefficients of the image lattice in the kernel basis
  Mat<Int> c(ilat.rows, k);
  for (int64_t i = 0; i < ilat.rows; ++i) {
    std::vector<Int> g(static_cast<size_t>(n));
    for (int64_t j = 0; j < n; ++j) g[static_cast<size_t>(j)] = ilat.at(i, j);
    auto x = solve_in_span_z(kb, g);
    if (!x) throw std::logic_error("quotient_invariants: containment failure");
    for (int64_t j = 0; j < k; ++j) c.at(i, j) = (*x)[static_cast<size_t>(j)];
  }
  SmithResult s = smith_normal_form(c);
  QuotientResult out;
  std::vector<int64_t> keep;
  int64_t diag = std::min(c.rows, c.cols);
  for (int64_t i = 0; i < k; ++i) {
    Int d = i < diag ? s.d.at(i, i) : Int(0);
    if (d == 1) continue;
    out.invariants.push_back(d);
    keep.push_back(i);
  }
  out.generators = Mat<Int>(static_cast<int64_t>(keep.size()), n);
  for (size_t r = 0; r < keep.size(); ++r) {
    // generator i of the quotient has kernel-basis coordinates v_inv[i]
    for (int64_t j = 0; j < n; ++j) {
      Int acc = 0;
      for (int64_t t = 0; t < k; ++t) acc += s.v_inv.at(keep[r], t) * kb.at(t, j);
      out.generators.at(static_cast<int64_t>(r), j) = acc;
    }
  }
  return out;
}

// Invariant factors of a finite product of cyclic groups given by a list of
// orders (0 = Z).  Prime powers are regrouped largest-with-largest.
inline std::vector<int64_t> invariant_factors_of_product(std::vector<int64_t> orders) {
  std::map<int64_t, std::vector<int64_t>> powers;  // prime -> exponents
  int64_t frees = 0;
  for (int64_t d : orders) {
    if (d == 0) { ++frees; continue; }
    if (d == 1) continue;
    for (int64_t p = 2; p * p <= d; ++p) {
      if (d % p) continue;
      int64_t e = 0;
      while (d % p == 0) { d /= p; ++e; }
      powers[p].push_back(e);
    }
    if (d > 1) powers[d].push_back(1);
  }
  size_t count = 0;
  for (auto& [p, es] : powers) {
    std::sort(es.begin(), es.end(), std::greater<>());
    count = std::max(count, es.size());
  }
  std::vector<int64_t> inv(count, 1);
  for (auto& [p, es] : powers)
    for (size_t i = 0; i < es.size(); ++i) {
      int64_t pk = 1;
      for (int64_t e = 0; e < es[i]; ++e) pk *= p;
      inv[i] *= pk;  // inv[0] is the largest factor
    }
  std::reverse(inv.begin(), inv.end());  // ascending divisibility chain
  for (int64_t i = 0; i < frees; ++i) inv.push_back(0);
  return inv;
}

}  // namespace bstruct::zlinalg

#endif
