#ifndef BSTRUCT_TENSOROPS_HPP
#define BSTRUCT_TENSOROPS_HPP

// Exact leg-indexed operators on tensor products over Q or F_p, and the
// matrix-level coherence equations: pentagon, hexagon, the pre-unital
// triple, the tetrahedron equation, the S/M/L relations and conversions
// between them, braid words, and the 5-leg form of the braiding.
//
// Composition convention everywhere: juxtaposition reads as composition
// with the RIGHTMOST operator acting first.  Placement subscripts cite
// ambient legs in a significant order; descending pairs like B_32 mean the
// flip-conjugated placement (see reversed_pair).
//
// Equations are checked by applying both sides to vectors via index
// arithmetic on sparse supports; the conjugating leg permutations are never
// materialized as matrices.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "zlinalg.hpp"

namespace bstruct::tensorops {

using zlinalg::Mat;

struct FieldSpec {
  bool rational = true;
  int64_t p = 0;  // prime when !rational
};

inline void validate(const FieldSpec& f) {
  if (f.rational) return;
  if (f.p <= 1 || f.p > (int64_t(1) << 31) || !is_prime_i64(f.p))
    throw validation_error("field: characteristic must be a prime <= 2^31");
}

inline int64_t dim_product(const std::vector<int64_t>& legs) {
  int64_t t = 1;
  for (int64_t d : legs) {
    if (d <= 0) throw validation_error("leg dims must be positive");
    t *= d;
    if (t > (int64_t(1) << 40)) throw validation_error("ambient dimension overflow");
  }
  return t;
}

template <class K>
struct LegOp {
  std::vector<int64_t> dom, cod;  // leg dims, left to right
  Mat<K> m;                       // (prod cod) x (prod dom), row-major, leg 1 most significant
};

template <class K>
void validate(const LegOp<K>& op) {
  if (op.dom.empty() || op.cod.empty())
    throw validation_error("operator: empty leg list");
  if (op.m.rows != dim_product(op.cod) || op.m.cols != dim_product(op.dom))
    throw validation_error("operator: matrix shape does not match leg dims");
}

template <class K>
K exemplar(const LegOp<K>& op) {
  return one_of(op.m.a.at(0));
}

template <class K>
Mat<K> make_mat(int64_t rows, int64_t cols, const K& zero) {
  Mat<K> m(rows, cols);
  for (auto& e : m.a) e = zero;
  return m;
}

template <class K>
LegOp<K> identity_op(const std::vector<int64_t>& legs, const K& one) {
  int64_t t = dim_product(legs);
  LegOp<K> op{legs, legs, make_mat(t, t, zero_of(one))};
  for (int64_t i = 0; i < t; ++i) op.m.at(i, i) = one;
  return op;
}

template <class K>
LegOp<K> flip_op(int64_t d1, int64_t d2, const K& one) {
  LegOp<K> op{{d1, d2}, {d2, d1}, make_mat(d1 * d2, d1 * d2, zero_of(one))};
  for (int64_t i = 0; i < d1; ++i)
    for (int64_t j = 0; j < d2; ++j) op.m.at(j * d1 + i, i * d2 + j) = one;
  return op;
}

template <class K>
bool op_equal(const LegOp<K>& a, const LegOp<K>& b) {
  return a.dom == b.dom && a.cod == b.cod && a.m == b.m;
}

// p after q
template <class K>
LegOp<K> compose(const LegOp<K>& p, const LegOp<K>& q) {
  if (p.dom != q.cod)
    throw validation_error("compose: inner leg signatures do not match");
  return LegOp<K>{q.dom, p.cod, zlinalg::mat_mul(p.m, q.m)};
}

template <class K>
std::optional<LegOp<K>> inverse(const LegOp<K>& op) {
  int64_t n = op.m.rows;
  if (n != op.m.cols) throw validation_error("inverse: operator is not square");
  K zero = zero_of(op.m.a.at(0));
  Mat<K> w = make_mat(n, 2 * n, zero);
  for (int64_t i = 0; i < n; ++i) {
    for (int64_t j = 0; j < n; ++j) w.at(i, j) = op.m.at(i, j);
    w.at(i, n + i) = one_of(zero);
  }
  for (int64_t c = 0; c < n; ++c) {
    int64_t piv = -1;
    for (int64_t r = c; r < n; ++r)
      if (!is_zero(w.at(r, c))) { piv = r; break; }
    if (piv < 0) return std::nullopt;
    if (piv != c)
      for (int64_t j = 0; j < 2 * n; ++j) std::swap(w.at(piv, j), w.at(c, j));
    K s = inv_of(w.at(c, c));
    for (int64_t j = 0; j < 2 * n; ++j) w.at(c, j) *= s;
    for (int64_t r = 0; r < n; ++r) {
      if (r == c || is_zero(w.at(r, c))) continue;
      K f = w.at(r, c);
      for (int64_t j = 0; j < 2 * n; ++j) w.at(r, j) -= f * w.at(c, j);
    }
  }
  LegOp<K> res{op.cod, op.dom, make_mat(n, n, zero)};
  for (int64_t i = 0; i < n; ++i)
    for (int64_t j = 0; j < n; ++j) res.m.at(i, j) = w.at(i, n + j);
  return res;
}

template <class K>
bool is_invertible(const LegOp<K>& op) {
  return op.m.rows == op.m.cols && inverse(op).has_value();
}

// ---------------------------------------------------------------------------
// Word engine: a word is a sequence of placed operators in APPLICATION order
// (index 0 acts first).  Each appended stage pre-compiles sparse columns and
// index-translation tables so application is pure integer arithmetic.

template <class K>
using SparseVec = std::map<int64_t, K>;

template <class K>
struct WordStage {
  std::vector<std::vector<std::pair<int64_t, K>>> cols;  // sparse columns of the op
  std::vector<int64_t> in_dims, out_dims;
  std::vector<int64_t> in_strides;
  std::vector<int64_t> keep_in_stride, keep_in_dim, keep_out_stride;  // uncited legs
  std::vector<int64_t> cited_in_stride, cited_in_dim, cited_dom_stride;
  std::vector<int64_t> row_offset;  // op codomain index -> ambient offset
};

template <class K>
struct WordBuilder {
  std::vector<int64_t> start_dims;
  std::vector<int64_t> dims;  // current ambient legs
  std::vector<WordStage<K>> stages;

  explicit WordBuilder(std::vector<int64_t> start)
      : start_dims(start), dims(std::move(start)) {
    dim_product(dims);
  }

  WordBuilder& app(const LegOp<K>& op, const std::vector<int>& pos) {
    validate(op);
    size_t L = dims.size();
    std::vector<bool> cited(L, false);
    if (pos.size() != op.dom.size())
      throw validation_error("placement: arity does not match the cited positions");
    if (op.dom.size() != op.cod.size()) {
      // operators changing the leg count apply only to the full ambient space
      if (pos.size() != L)
        throw validation_error("placement: leg-count-changing operator must cite all legs");
    }
    for (size_t i = 0; i < pos.size(); ++i) {
      if (pos[i] < 1 || pos[i] > static_cast<int>(L))
        throw validation_error("placement: position out of range");
      if (cited[static_cast<size_t>(pos[i] - 1)])
        throw validation_error("placement: repeated position");
      cited[static_cast<size_t>(pos[i] - 1)] = true;
      if (dims[static_cast<size_t>(pos[i] - 1)] != op.dom[i])
        throw validation_error("placement: ambient dim does not match operator leg");
    }
    WordStage<K> st;
    st.in_dims = dims;
    // output legs: cited positions take the op's codomain dims (cited order);
    // a leg-count-changing op replaces the whole leg list
    std::vector<int64_t> out;
    std::vector<int64_t> out_pos_of_cited(pos.size());
    std::vector<int64_t> out_pos_of_in(L, -1);
    if (op.dom.size() == op.cod.size()) {
      out = dims;
      for (size_t i = 0; i < pos.size(); ++i) {
        out[static_cast<size_t>(pos[i] - 1)] = op.cod[i];
        out_pos_of_cited[i] = pos[i] - 1;
      }
      for (size_t l = 0; l < L; ++l) out_pos_of_in[l] = static_cast<int64_t>(l);
    } else {
      out = op.cod;
      for (size_t i = 0; i < pos.size(); ++i) out_pos_of_cited[i] = -1;  // unused
    }
    st.out_dims = out;
    auto strides = [](const std::vector<int64_t>& d) {
      std::vector<int64_t> s(d.size(), 1);
      for (size_t i = d.size(); i-- > 1;) s[i - 1] = s[i] * d[i];
      return s;
    };
    st.in_strides = strides(st.in_dims);
    std::vector<int64_t> out_strides = strides(st.out_dims);
    std::vector<int64_t> dom_strides = strides(op.dom);
    std::vector<int64_t> cod_strides = strides(op.cod);
    for (size_t l = 0; l < L; ++l) {
      if (cited[l]) continue;
      st.keep_in_stride.push_back(st.in_strides[l]);
      st.keep_in_dim.push_back(st.in_dims[l]);
      st.keep_out_stride.push_back(out_strides[static_cast<size_t>(out_pos_of_in[l])]);
    }
    for (size_t i = 0; i < pos.size(); ++i) {
      st.cited_in_stride.push_back(st.in_strides[static_cast<size_t>(pos[i] - 1)]);
      st.cited_in_dim.push_back(st.in_dims[static_cast<size_t>(pos[i] - 1)]);
      st.cited_dom_stride.push_back(dom_strides[i]);
    }
    st.cols.resize(static_cast<size_t>(op.m.cols));
    for (int64_t r = 0; r < op.m.rows; ++r)
      for (int64_t c = 0; c < op.m.cols; ++c)
        if (!is_zero(op.m.at(r, c)))
          st.cols[static_cast<size_t>(c)].emplace_back(r, op.m.at(r, c));
    st.row_offset.resize(static_cast<size_t>(op.m.rows));
    for (int64_t r = 0; r < op.m.rows; ++r) {
      int64_t off = 0;
      for (size_t i = 0; i < op.cod.size(); ++i) {
        int64_t digit = (r / cod_strides[i]) % op.cod[i];
        int64_t out_leg = (op.dom.size() == op.cod.size())
                              ? out_pos_of_cited[i]
                              : static_cast<int64_t>(i);
        off += digit * out_strides[static_cast<size_t>(out_leg)];
      }
      st.row_offset[static_cast<size_t>(r)] = off;
    }
    dims = st.out_dims;
    stages.push_back(std::move(st));
    return *this;
  }

  // t_i: interchange of ambient legs (i, i+1) at their current dims
  WordBuilder& flip(int i, const K& one) {
    if (i < 1 || i + 1 > static_cast<int>(dims.size()))
      throw validation_error("flip: leg index out of range");
    return app(flip_op(dims[static_cast<size_t>(i - 1)], dims[static_cast<size_t>(i)], one),
               {i, i + 1});
  }
};

template <class K>
SparseVec<K> apply_word(const WordBuilder<K>& w, SparseVec<K> v) {
  for (const auto& st : w.stages) {
    SparseVec<K> nv;
    for (const auto& [idx, coef] : v) {
      int64_t base = 0;
      for (size_t l = 0; l < st.keep_in_stride.size(); ++l)
        base += ((idx / st.keep_in_stride[l]) % st.keep_in_dim[l]) * st.keep_out_stride[l];
      int64_t col = 0;
      for (size_t i = 0; i < st.cited_in_stride.size(); ++i)
        col += ((idx / st.cited_in_stride[i]) % st.cited_in_dim[i]) * st.cited_dom_stride[i];
      for (const auto& [row, val] : st.cols[static_cast<size_t>(col)]) {
        K term = coef * val;
        auto [it, fresh] = nv.try_emplace(base + st.row_offset[static_cast<size_t>(row)],
                                          term);
        if (!fresh) it->second += term;
      }
    }
    for (auto it = nv.begin(); it != nv.end();)
      it = is_zero(it->second) ? nv.erase(it) : std::next(it);
    v = std::move(nv);
  }
  return v;
}

// materialize a word as a dense operator (small ambients only)
template <class K>
LegOp<K> materialize(const WordBuilder<K>& w, const K& one) {
  int64_t dt = dim_product(w.start_dims), ct = dim_product(w.dims);
  if (dt > 4096 || ct > 4096)
    throw validation_error("materialize: ambient dimension above 4096");
  LegOp<K> op{w.start_dims, w.dims, make_mat(ct, dt, zero_of(one))};
  for (int64_t j = 0; j < dt; ++j) {
    SparseVec<K> v{{j, one}};
    for (const auto& [i, val] : apply_word(w, std::move(v))) op.m.at(i, j) = val;
  }
  return op;
}

template <class K>
LegOp<K> place(const LegOp<K>& op, const std::vector<int>& pos,
               const std::vector<int64_t>& ambient) {
  WordBuilder<K> w(ambient);
  w.app(op, pos);
  return materialize(w, exemplar(op));
}

// The reversed-subscript convention: P placed at a descending pair (j, i)
// means the flip-conjugated placement.  The word engine realizes it by
// citing legs in the given order; revise here if the reading ever changes.
template <class K>
WordBuilder<K>& place_reversed_pair(WordBuilder<K>& w, const LegOp<K>& op, int j, int i) {
  return w.app(op, {j, i});
}

// ---------------------------------------------------------------------------
// Equation checking

struct CheckOptions {
  enum class Mode { automatic, full, sampled };
  Mode mode = Mode::automatic;
  uint64_t seed = 0;
  int samples = 32;
  int threads = 1;
};

struct CheckOutcome {
  bool holds = true;
  bool exhaustive = true;           // every basis vector was checked
  int64_t ambient_total = 0;
  int64_t vectors_checked = 0;
  std::optional<int64_t> counterexample;  // basis index (exhaustive mode)
  std::string note;
};

inline Fp random_scalar(std::mt19937_64& rng, Fp one) {
  return Fp(static_cast<int64_t>(rng() % static_cast<uint64_t>(one.p)), one.p);
}
inline Rat random_scalar(std::mt19937_64& rng, const Rat&) {
  return Rat(static_cast<int64_t>(rng() % 9) - 4);
}

template <class K>
CheckOutcome check_words_equal(const WordBuilder<K>& lhs, const WordBuilder<K>& rhs,
                               const K& one, const CheckOptions& opts = {}) {
  if (lhs.start_dims != rhs.start_dims)
    throw validation_error("equation: the two sides have different domains");
  if (lhs.dims != rhs.dims)
    throw validation_error("equation: the two sides have different codomains");
  int64_t total = dim_product(lhs.start_dims);
  CheckOutcome out;
  out.ambient_total = total;
  bool full = opts.mode == CheckOptions::Mode::full ||
              (opts.mode == CheckOptions::Mode::automatic && total <= 4096);
  if (full) {
    int nt = std::max(1, opts.threads);
    if (int64_t(nt) > total) nt = static_cast<int>(total);
    std::vector<int64_t> fail(static_cast<size_t>(nt), -1);
    auto run = [&](int t) {
      int64_t lo = total * t / nt, hi = total * (t + 1) / nt;
      for (int64_t e = lo; e < hi; ++e) {
        SparseVec<K> v{{e, one}};
        SparseVec<K> lv = apply_word(lhs, v);
        if (lv != apply_word(rhs, std::move(v))) {
          fail[static_cast<size_t>(t)] = e;
          return;
        }
      }
    };
    if (nt == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < nt; ++t) pool.emplace_back(run, t);
      for (auto& th : pool) th.join();
    }
    out.vectors_checked = total;
    for (int64_t f : fail)
      if (f >= 0 && (!out.counterexample || f < *out.counterexample))
        out.counterexample = f;
    out.holds = !out.counterexample.has_value();
    out.exhaustive = true;
    return out;
  }
  std::mt19937_64 rng(opts.seed);
  out.exhaustive = false;
  out.note = "sampled verification; rerun with full mode for a proof";
  for (int s = 0; s < opts.samples; ++s) {
    SparseVec<K> v;
    for (int64_t i = 0; i < total; ++i) {
      K x = random_scalar(rng, one);
      if (!is_zero(x)) v[i] = x;
    }
    ++out.vectors_checked;
    SparseVec<K> lv = apply_word(lhs, v);
    if (lv != apply_word(rhs, std::move(v))) {
      out.holds = false;
      out.note = "failed on a random vector";
      return out;
    }
  }
  return out;
}

namespace detail {

template <class K>
void require_endo(const LegOp<K>& op, size_t legs, bool equal_dims, const char* what) {
  validate(op);
  if (op.dom != op.cod)
    throw validation_error(std::string(what) + ": operator must be an endomorphism");
  if (op.dom.size() != legs)
    throw validation_error(std::string(what) + ": wrong leg count");
  if (equal_dims)
    for (int64_t d : op.dom)
      if (d != op.dom[0])
        throw validation_error(std::string(what) + ": legs must have equal dims");
}

template <class K>
void require_invertible(const LegOp<K>& op, const char* what) {
  if (!is_invertible(op))
    throw validation_error(std::string(what) + ": operator is singular");
}

inline CheckOutcome merge_outcomes(std::vector<std::pair<std::string, CheckOutcome>> parts) {
  CheckOutcome out;
  for (auto& [name, oc] : parts) {
    out.ambient_total = std::max(out.ambient_total, oc.ambient_total);
    out.vectors_checked += oc.vectors_checked;
    out.exhaustive = out.exhaustive && oc.exhaustive;
    if (!oc.holds && out.holds) {
      out.holds = false;
      out.counterexample = oc.counterexample;
      out.note = name + " failed" + (oc.note.empty() ? "" : ": " + oc.note);
    }
  }
  return out;
}

}  // namespace detail

// Phi12 Phi13 Phi23 = Phi23 Phi12
template <class K>
CheckOutcome check_pentagon(const LegOp<K>& phi, const CheckOptions& opts = {}) {
  detail::require_endo(phi, 2, true, "pentagon");
  detail::require_invertible(phi, "pentagon");
  K one = exemplar(phi);
  std::vector<int64_t> amb{phi.dom[0], phi.dom[0], phi.dom[0]};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(phi, {2, 3}).app(phi, {1, 3}).app(phi, {1, 2});
  rhs.app(phi, {1, 2}).app(phi, {2, 3});
  return check_words_equal(lhs, rhs, one, opts);
}

// B12 B23 B12 = B23 B12 B23
template <class K>
CheckOutcome check_hexagon(const LegOp<K>& b, const CheckOptions& opts = {}) {
  detail::require_endo(b, 2, true, "hexagon");
  detail::require_invertible(b, "hexagon");
  K one = exemplar(b);
  std::vector<int64_t> amb{b.dom[0], b.dom[0], b.dom[0]};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(b, {1, 2}).app(b, {2, 3}).app(b, {1, 2});
  rhs.app(b, {2, 3}).app(b, {1, 2}).app(b, {2, 3});
  return check_words_equal(lhs, rhs, one, opts);
}

// (g tensor g) B = B (g tensor g)
template <class K>
CheckOutcome check_id_bfunctor(const LegOp<K>& g, const LegOp<K>& b,
                               const CheckOptions& opts = {}) {
  detail::require_endo(g, 1, false, "id-functor");
  detail::require_endo(b, 2, true, "id-functor braiding");
  if (g.dom[0] != b.dom[0])
    throw validation_error("id-functor: g and B act on different spaces");
  detail::require_invertible(g, "id-functor");
  K one = exemplar(b);
  std::vector<int64_t> amb{b.dom[0], b.dom[0]};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(b, {1, 2}).app(g, {1}).app(g, {2});
  rhs.app(g, {1}).app(g, {2}).app(b, {1, 2});
  return check_words_equal(lhs, rhs, one, opts);
}

// B(1 tensor C)B = (1 tensor C)B(1 tensor C),  B(1 tensor C^2)B = C^2 tensor 1,
// B23 C3 B12 B23 C2 B32 = C1 C2 B32 t23
template <class K>
CheckOutcome check_preunital(const LegOp<K>& b, const LegOp<K>& c,
                             const CheckOptions& opts = {}) {
  detail::require_endo(b, 2, true, "pre-unital braiding");
  detail::require_endo(c, 1, false, "pre-unital C");
  if (b.dom[0] != c.dom[0])
    throw validation_error("pre-unital: B and C act on different spaces");
  detail::require_invertible(b, "pre-unital braiding");
  detail::require_invertible(c, "pre-unital C");
  K one = exemplar(b);
  int64_t d = b.dom[0];
  std::vector<std::pair<std::string, CheckOutcome>> parts;
  {
    std::vector<int64_t> amb{d, d};
    WordBuilder<K> lhs(amb), rhs(amb);
    lhs.app(b, {1, 2}).app(c, {2}).app(b, {1, 2});
    rhs.app(c, {2}).app(b, {1, 2}).app(c, {2});
    parts.emplace_back("identity B(1xC)B = (1xC)B(1xC)",
                       check_words_equal(lhs, rhs, one, opts));
  }
  {
    std::vector<int64_t> amb{d, d};
    WordBuilder<K> lhs(amb), rhs(amb);
    lhs.app(b, {1, 2}).app(c, {2}).app(c, {2}).app(b, {1, 2});
    rhs.app(c, {1}).app(c, {1});
    parts.emplace_back("identity B(1xC^2)B = C^2x1",
                       check_words_equal(lhs, rhs, one, opts));
  }
  {
    std::vector<int64_t> amb{d, d, d};
    WordBuilder<K> lhs(amb), rhs(amb);
    place_reversed_pair(lhs, b, 3, 2);
    lhs.app(c, {2}).app(b, {2, 3}).app(b, {1, 2}).app(c, {3}).app(b, {2, 3});
    rhs.flip(2, one);
    place_reversed_pair(rhs, b, 3, 2);
    rhs.app(c, {2}).app(c, {1});
    parts.emplace_back("identity B23C3B12B23C2B32 = C1C2B32t23",
                       check_words_equal(lhs, rhs, one, opts));
  }
  return detail::merge_outcomes(std::move(parts));
}

// Z124 Z135 Z236 Z456 = Z456 Z236 Z135 Z124
template <class K>
CheckOutcome check_tetrahedron(const LegOp<K>& z, const CheckOptions& opts = {}) {
  detail::require_endo(z, 3, true, "tetrahedron");
  detail::require_invertible(z, "tetrahedron");
  K one = exemplar(z);
  int64_t d = z.dom[0];
  std::vector<int64_t> amb(6, d);
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(z, {4, 5, 6}).app(z, {2, 3, 6}).app(z, {1, 3, 5}).app(z, {1, 2, 4});
  rhs.app(z, {1, 2, 4}).app(z, {1, 3, 5}).app(z, {2, 3, 6}).app(z, {4, 5, 6});
  return check_words_equal(lhs, rhs, one, opts);
}

// t3 S456 S234 (t1 t4) S234 S456 = S123 S345 (t2 t5) S345 S123 t3
template <class K>
CheckOutcome check_s_relation(const LegOp<K>& s, const CheckOptions& opts = {}) {
  detail::require_endo(s, 3, true, "s-relation");
  detail::require_invertible(s, "s-relation");
  K one = exemplar(s);
  int64_t d = s.dom[0];
  std::vector<int64_t> amb(6, d);
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(s, {4, 5, 6}).app(s, {2, 3, 4}).flip(4, one).flip(1, one)
      .app(s, {2, 3, 4}).app(s, {4, 5, 6}).flip(3, one);
  rhs.flip(3, one).app(s, {1, 2, 3}).app(s, {3, 4, 5}).flip(5, one).flip(2, one)
      .app(s, {3, 4, 5}).app(s, {1, 2, 3});
  return check_words_equal(lhs, rhs, one, opts);
}

// S = t1 t2 t1 Z and back; the reversal word is an involution on equal legs
template <class K>
LegOp<K> s_to_z(const LegOp<K>& s) {
  detail::require_endo(s, 3, true, "s_to_z");
  K one = exemplar(s);
  WordBuilder<K> w(s.dom);
  w.app(s, {1, 2, 3}).flip(1, one).flip(2, one).flip(1, one);
  return materialize(w, one);
}

template <class K>
LegOp<K> z_to_s(const LegOp<K>& z) {
  detail::require_endo(z, 3, true, "z_to_s");
  K one = exemplar(z);
  WordBuilder<K> w(z.dom);
  w.app(z, {1, 2, 3}).flip(1, one).flip(2, one).flip(1, one);
  return materialize(w, one);
}

// L124 L135 L236 Z456 = Z456 L236 L135 L124 on legs (c,c,c,b,b,b)
template <class K>
CheckOutcome check_lze(const LegOp<K>& l, const LegOp<K>& z,
                       const CheckOptions& opts = {}) {
  validate(l);
  validate(z);
  detail::require_endo(z, 3, true, "lze Z");
  if (l.dom != l.cod || l.dom.size() != 3 || l.dom[0] != l.dom[1])
    throw validation_error("lze L: legs must be (c, c, b)");
  if (l.dom[2] != z.dom[0])
    throw validation_error("lze: L's third leg must match Z's legs");
  K one = exemplar(l);
  int64_t c = l.dom[0], b = z.dom[0];
  std::vector<int64_t> amb{c, c, c, b, b, b};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(z, {4, 5, 6}).app(l, {2, 3, 6}).app(l, {1, 3, 5}).app(l, {1, 2, 4});
  rhs.app(l, {1, 2, 4}).app(l, {1, 3, 5}).app(l, {2, 3, 6}).app(z, {4, 5, 6});
  return check_words_equal(lhs, rhs, one, opts);
}

// L = t1 t2 t1 M^{-1} with M: (b,c,c) -> (c,c,b);  M = L^{-1} (t1 t2 t1)
template <class K>
LegOp<K> m_to_l(const LegOp<K>& m) {
  validate(m);
  if (m.dom.size() != 3 || m.cod.size() != 3 || m.dom[1] != m.dom[2] ||
      m.cod != std::vector<int64_t>{m.dom[1], m.dom[2], m.dom[0]})
    throw validation_error("m_to_l: M must map (b,c,c) to (c,c,b)");
  auto mi = inverse(m);
  if (!mi) throw validation_error("m_to_l: operator is singular");
  K one = exemplar(m);
  WordBuilder<K> w(m.cod);
  w.app(*mi, {1, 2, 3}).flip(1, one).flip(2, one).flip(1, one);
  return materialize(w, one);
}

template <class K>
LegOp<K> l_to_m(const LegOp<K>& l) {
  validate(l);
  if (l.dom != l.cod || l.dom.size() != 3 || l.dom[0] != l.dom[1])
    throw validation_error("l_to_m: L must be an endomorphism of (c, c, b)");
  auto li = inverse(l);
  if (!li) throw validation_error("l_to_m: operator is singular");
  K one = exemplar(l);
  int64_t c = l.dom[0], b = l.dom[2];
  std::vector<int64_t> dom{b, c, c};
  WordBuilder<K> w(dom);
  w.flip(1, one).flip(2, one).flip(1, one).app(*li, {1, 2, 3});
  return materialize(w, one);
}

// M234 (t1 t4) M234 M456 t3 S123 = S456 t3 M123 M345 (t2 t5) M345
// on domain legs (b,b,b,c,c,c), codomain legs (c,c,c,b,b,b)
template <class K>
CheckOutcome check_m_relation(const LegOp<K>& m, const LegOp<K>& s,
                              const CheckOptions& opts = {}) {
  validate(m);
  detail::require_endo(s, 3, true, "m-relation S");
  if (m.dom.size() != 3 || m.cod.size() != 3 || m.dom[1] != m.dom[2] ||
      m.cod != std::vector<int64_t>{m.dom[1], m.dom[2], m.dom[0]})
    throw validation_error("m-relation: M must map (b,c,c) to (c,c,b)");
  if (m.dom[0] != s.dom[0])
    throw validation_error("m-relation: M's first leg must match S's legs");
  detail::require_invertible(m, "m-relation M");
  K one = exemplar(m);
  int64_t b = m.dom[0], c = m.dom[1];
  std::vector<int64_t> amb{b, b, b, c, c, c};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(s, {1, 2, 3}).flip(3, one).app(m, {4, 5, 6}).app(m, {2, 3, 4})
      .flip(4, one).flip(1, one).app(m, {2, 3, 4});
  rhs.app(m, {3, 4, 5}).flip(5, one).flip(2, one).app(m, {3, 4, 5})
      .app(m, {1, 2, 3}).flip(3, one).app(s, {4, 5, 6});
  return check_words_equal(lhs, rhs, one, opts);
}

// t2 L125 L'345 t2 on (c, c', c, c', b), regrouped to ((cc'), (cc'), b)
template <class K>
LegOp<K> compose_L(const LegOp<K>& l, const LegOp<K>& l2) {
  validate(l);
  validate(l2);
  if (l.dom != l.cod || l.dom.size() != 3 || l.dom[0] != l.dom[1])
    throw validation_error("compose_L: L must be an endomorphism of (c, c, b)");
  if (l2.dom != l2.cod || l2.dom.size() != 3 || l2.dom[0] != l2.dom[1])
    throw validation_error("compose_L: L' must be an endomorphism of (c', c', b)");
  if (l.dom[2] != l2.dom[2])
    throw validation_error("compose_L: the two operators have different b legs");
  K one = exemplar(l);
  int64_t c = l.dom[0], c2 = l2.dom[0], b = l.dom[2];
  std::vector<int64_t> amb{c, c2, c, c2, b};
  WordBuilder<K> w(amb);
  w.flip(2, one).app(l2, {3, 4, 5}).app(l, {1, 2, 5}).flip(2, one);
  LegOp<K> res = materialize(w, one);
  res.dom = {c * c2, c * c2, b};  // flat indices are unchanged by the grouping
  res.cod = res.dom;
  return res;
}

// (f tensor 1) d = d' (1 tensor f tensor f), with d: (c,D,D) -> (D,c'),
// d': (c,D',D') -> (D',c'), f: D -> D'
template <class K>
CheckOutcome check_cl_2morphism(const LegOp<K>& f, const LegOp<K>& d_cell,
                                const LegOp<K>& d_prime_cell,
                                const CheckOptions& opts = {}) {
  validate(f);
  validate(d_cell);
  validate(d_prime_cell);
  if (f.dom.size() != 1 || f.cod.size() != 1)
    throw validation_error("cl-2-morphism: f must be a single-leg map");
  int64_t dd = f.dom[0], dp = f.cod[0];
  if (d_cell.dom.size() != 3 || d_cell.cod.size() != 2 ||
      d_cell.dom[1] != dd || d_cell.dom[2] != dd || d_cell.cod[0] != dd)
    throw validation_error("cl-2-morphism: d must map (c, D, D) to (D, c')");
  if (d_prime_cell.dom.size() != 3 || d_prime_cell.cod.size() != 2 ||
      d_prime_cell.dom[1] != dp || d_prime_cell.dom[2] != dp ||
      d_prime_cell.cod[0] != dp)
    throw validation_error("cl-2-morphism: d' must map (c, D', D') to (D', c')");
  if (d_cell.dom[0] != d_prime_cell.dom[0] || d_cell.cod[1] != d_prime_cell.cod[1])
    throw validation_error("cl-2-morphism: the two cells disagree on c or c'");
  K one = exemplar(f);
  std::vector<int64_t> amb{d_cell.dom[0], dd, dd};
  WordBuilder<K> lhs(amb), rhs(amb);
  lhs.app(d_cell, {1, 2, 3}).app(f, {1});
  rhs.app(f, {2}).app(f, {3}).app(d_prime_cell, {1, 2, 3});
  return check_words_equal(lhs, rhs, one, opts);
}

// generators b_i = B placed at strands (i, i+1) on M^n tensor an inert tail;
// the word is given leftmost-first and composes rightmost-first
template <class K>
LegOp<K> braid_word_eval(const LegOp<K>& b, int n_strands,
                         const std::vector<int>& word, int64_t tail_dim = 1) {
  detail::require_endo(b, 2, true, "braid generator");
  if (n_strands < 2) throw validation_error("braid: need at least two strands");
  if (tail_dim < 1) throw validation_error("braid: tail dim must be positive");
  CheckOptions quick;
  if (!check_hexagon(b, quick).holds)
    throw validation_error("braid: operator does not satisfy the hexagon equation");
  std::optional<LegOp<K>> binv;
  std::vector<int64_t> amb(static_cast<size_t>(n_strands), b.dom[0]);
  amb.push_back(tail_dim);
  WordBuilder<K> w(amb);
  for (size_t k = word.size(); k-- > 0;) {
    int letter = word[k];
    int i = std::abs(letter);
    if (i < 1 || i >= n_strands) throw validation_error("braid: generator out of range");
    if (letter > 0) {
      w.app(b, {i, i + 1});
    } else {
      if (!binv) {
        binv = inverse(b);
        if (!binv) throw validation_error("braid: operator is singular");
      }
      w.app(*binv, {i, i + 1});
    }
  }
  return materialize(w, exemplar(b));
}

// b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1} and b_i b_j = b_j b_i for |i-j| > 1
template <class K>
CheckOutcome check_coxeter(const LegOp<K>& b, int n, const CheckOptions& opts = {}) {
  detail::require_endo(b, 2, true, "coxeter");
  if (n < 2) throw validation_error("coxeter: need at least two strands");
  K one = exemplar(b);
  std::vector<int64_t> amb(static_cast<size_t>(n), b.dom[0]);
  std::vector<std::pair<std::string, CheckOutcome>> parts;
  for (int i = 1; i + 1 <= n - 1; ++i) {
    WordBuilder<K> lhs(amb), rhs(amb);
    lhs.app(b, {i, i + 1}).app(b, {i + 1, i + 2}).app(b, {i, i + 1});
    rhs.app(b, {i + 1, i + 2}).app(b, {i, i + 1}).app(b, {i + 1, i + 2});
    parts.emplace_back("braid relation at strand " + std::to_string(i),
                       check_words_equal(lhs, rhs, one, opts));
  }
  for (int i = 1; i <= n - 1; ++i)
    for (int j = i + 2; j <= n - 1; ++j) {
      WordBuilder<K> lhs(amb), rhs(amb);
      lhs.app(b, {j, j + 1}).app(b, {i, i + 1});
      rhs.app(b, {i, i + 1}).app(b, {j, j + 1});
      parts.emplace_back("commutation at strands " + std::to_string(i) + "," +
                             std::to_string(j),
                         check_words_equal(lhs, rhs, one, opts));
    }
  return detail::merge_outcomes(std::move(parts));
}

// B24 t13 on (u1, m, u2, m, u3), landing in (u2, m, u1, m, u3)
template <class K>
LegOp<K> beta_on_vect(int64_t u1, int64_t u2, int64_t u3, const LegOp<K>& b) {
  detail::require_endo(b, 2, true, "beta_on_vect");
  K one = exemplar(b);
  int64_t md = b.dom[0];
  std::vector<int64_t> amb{u1, md, u2, md, u3};
  WordBuilder<K> w(amb);
  w.app(flip_op(u1, u2, one), {1, 3}).app(b, {2, 4});
  return materialize(w, one);
}

}  // namespace bstruct::tensorops

#endif
