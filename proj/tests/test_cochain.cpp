#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "bstruct/cochain.hpp"

using namespace bstruct;
using namespace bstruct::cochain;
using zlinalg::AbelianGroup;
using zlinalg::GroupElement;

namespace {

MagmaTable xor2() { return MagmaTable(2, {0, 1, 1, 0}); }
MagmaTable z3() { return MagmaTable(3, {0, 1, 2, 1, 2, 0, 2, 0, 1}); }
MagmaTable proj2() { return MagmaTable(2, {0, 1, 0, 1}); }              // xy = y
MagmaTable proj3() { return MagmaTable(3, {0, 1, 2, 0, 1, 2, 0, 1, 2}); }

Cochain random_cochain(std::mt19937_64& rng, const MagmaTable& A, const AbelianGroup& B,
                       int degree) {
  Cochain c = zero_cochain(A, B, degree);
  for (auto& v : c.values)
    for (size_t f = 0; f < B.moduli.size(); ++f) {
      int64_t m = B.moduli[f];
      v[f] = m > 0 ? static_cast<int64_t>(rng() % static_cast<uint64_t>(m))
                   : static_cast<int64_t>(rng() % 9) - 4;
    }
  return c;
}

// every cochain of the given shape, for exhaustive scans over small groups
std::vector<Cochain> all_cochains(const MagmaTable& A, const AbelianGroup& B, int degree) {
  REQUIRE(B.finite());
  std::vector<Cochain> out;
  Cochain c = zero_cochain(A, B, degree);
  size_t slots = c.values.size() * B.moduli.size();
  std::vector<int64_t> digits(slots, 0);
  while (true) {
    for (size_t i = 0; i < c.values.size(); ++i)
      for (size_t f = 0; f < B.moduli.size(); ++f)
        c.values[i][f] = digits[i * B.moduli.size() + f];
    out.push_back(c);
    size_t k = 0;
    while (k < slots && ++digits[k] == B.moduli[k % B.moduli.size()]) digits[k++] = 0;
    if (k == slots) break;
  }
  return out;
}

GroupElement at2(const Cochain& c, int x, int y) { return c.at({x, y}); }

}  // namespace

TEST_CASE("differential squares to zero") {
  std::mt19937_64 rng(21);
  std::vector<AbelianGroup> coeffs{{{2}}, {{4}}, {{6}}, {{0}}, {{2, 3}}};
  for (const auto& A : {xor2(), z3(), proj3()}) {
    for (const auto& B : coeffs) {
      for (int deg = 1; deg <= 4; ++deg) {
        for (int t = 0; t < 10; ++t) {
          Cochain c = random_cochain(rng, A, B, deg);
          REQUIRE(is_zero_cochain(differential(differential(c))));
        }
      }
    }
  }
}

TEST_CASE("degree-1 differential rule") {
  std::mt19937_64 rng(22);
  auto A = z3();
  AbelianGroup B{{6}};
  for (int t = 0; t < 20; ++t) {
    Cochain p = random_cochain(rng, A, B, 1);
    Cochain dp = differential(p);
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y) {
        GroupElement want = zlinalg::reduce(
            B, zlinalg::sub(B, zlinalg::add(B, p.at({x}), p.at({y})), p.at({A.at(x, y)})));
        REQUIRE(dp.at({x, y}) == want);
      }
  }
}

TEST_CASE("degree-2 differential matches its expansion") {
  std::mt19937_64 rng(23);
  for (const auto& A : {xor2(), z3(), proj3()}) {
    AbelianGroup B{{4}};
    for (int t = 0; t < 25; ++t) {
      Cochain q = random_cochain(rng, A, B, 2);
      Cochain dq = differential(q);
      for (int x = 0; x < A.n; ++x)
        for (int y = 0; y < A.n; ++y)
          for (int z = 0; z < A.n; ++z) {
            int64_t v = -q.at({y, A.at(x, z)})[0] + q.at({y, z})[0] +
                        q.at({x, A.at(y, z)})[0] - q.at({x, z})[0];
            REQUIRE(dq.at({x, y, z})[0] == mod_reduce(v, 4));
          }
    }
  }
}

TEST_CASE("degree-3 differential matches its expansion") {
  std::mt19937_64 rng(24);
  for (const auto& A : {xor2(), z3()}) {
    AbelianGroup B{{6}};
    for (int t = 0; t < 15; ++t) {
      Cochain r = random_cochain(rng, A, B, 3);
      Cochain dr = differential(r);
      for (int x = 0; x < A.n; ++x)
        for (int y = 0; y < A.n; ++y)
          for (int z = 0; z < A.n; ++z)
            for (int w = 0; w < A.n; ++w) {
              int64_t v = -r.at({y, z, A.at(x, w)})[0] + r.at({y, z, w})[0] +
                          r.at({x, z, A.at(y, w)})[0] - r.at({x, z, w})[0] -
                          r.at({x, y, A.at(z, w)})[0] + r.at({x, y, w})[0];
              REQUIRE(dr.at({x, y, z, w})[0] == mod_reduce(v, 6));
            }
    }
  }
}

TEST_CASE("degree-4 differential matches its expansion") {
  std::mt19937_64 rng(25);
  auto A = xor2();
  AbelianGroup B{{4}};
  for (int t = 0; t < 15; ++t) {
    Cochain s = random_cochain(rng, A, B, 4);
    Cochain ds = differential(s);
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y)
        for (int z = 0; z < A.n; ++z)
          for (int w = 0; w < A.n; ++w)
            for (int u = 0; u < A.n; ++u) {
              int64_t v = -s.at({y, z, w, A.at(x, u)})[0] + s.at({y, z, w, u})[0] +
                          s.at({x, z, w, A.at(y, u)})[0] - s.at({x, z, w, u})[0] -
                          s.at({x, y, w, A.at(z, u)})[0] + s.at({x, y, w, u})[0] +
                          s.at({x, y, z, A.at(w, u)})[0] - s.at({x, y, z, u})[0];
              REQUIRE(ds.at({x, y, z, w, u})[0] == mod_reduce(v, 4));
            }
  }
}

TEST_CASE("differential matrix rows agree with the functional differential") {
  auto A = z3();
  for (int n = 1; n <= 3; ++n) {
    Mat<Int> D = matrix_of_differential(A, n);
    AbelianGroup B{{5}};
    // basis cochain e_i maps to row i
    for (int64_t i = 0; i < D.rows; ++i) {
      Cochain e = zero_cochain(A, B, n);
      e.values[static_cast<size_t>(i)][0] = 1;
      Cochain de = differential(e);
      for (int64_t j = 0; j < D.cols; ++j)
        REQUIRE(de.values[static_cast<size_t>(j)][0] ==
                mod_reduce(static_cast<int64_t>(D.at(i, j)), 5));
    }
  }
}

TEST_CASE("cohomology of the two-element group with Z/2 coefficients") {
  auto A = xor2();
  AbelianGroup B{{2}};
  REQUIRE(cohomology(A, B, 1).invariant_factors == std::vector<int64_t>{2});
  REQUIRE(cohomology(A, B, 2).invariant_factors == std::vector<int64_t>{2, 2});
  REQUIRE(cohomology(A, B, 3).invariant_factors == std::vector<int64_t>{2, 2, 2, 2});
  REQUIRE(cohomology(A, B, 4).invariant_factors ==
          std::vector<int64_t>(8, 2));
}

TEST_CASE("cohomology representatives generate independent classes") {
  auto A = xor2();
  AbelianGroup B{{2}};
  for (int deg = 1; deg <= 3; ++deg) {
    auto h = cohomology(A, B, deg);
    for (size_t i = 0; i < h.representatives.size(); ++i) {
      const Cochain& rep = h.representatives[i];
      REQUIRE(is_cocycle(rep));
      if (deg >= 2) {
        REQUIRE_FALSE(is_coboundary(rep).has_value());
        // scaling by the invariant factor kills the class
        Cochain scaled = cochain_scale(h.invariant_factors[i], rep);
        REQUIRE(is_coboundary(scaled).has_value());
      }
    }
  }
}

TEST_CASE("exhaustive class count at small degrees") {
  auto A = xor2();
  AbelianGroup B{{2}};
  for (int deg : {2, 3}) {
    auto cands = all_cochains(A, B, deg);
    REQUIRE(cands.size() == (deg == 2 ? 16 : 256));
    int64_t cocycles = 0, coboundaries = 0;
    for (const auto& c : cands) {
      if (!is_cocycle(c)) continue;
      ++cocycles;
      if (is_coboundary(c)) ++coboundaries;
    }
    Int order = 1;
    for (int64_t f : cohomology(A, B, deg).invariant_factors) order *= f;
    REQUIRE(order == Int(cocycles / coboundaries));

    // trivial automorphism group: orbits = classes
    auto orb = aut_orbits(A, B, deg);
    REQUIRE(orb.class_count == cocycles / coboundaries);
    REQUIRE(static_cast<int64_t>(orb.orbit_sizes.size()) == orb.class_count);
  }
}

TEST_CASE("orbit counting under a nontrivial automorphism group") {
  // xy = y on two points: both automorphisms of the table act on classes
  auto A = proj2();
  AbelianGroup B{{2}};
  int deg = 2;
  auto cands = all_cochains(A, B, deg);

  // brute-force class set: cocycles modulo coboundary translation
  std::vector<Cochain> cocycles;
  for (const auto& c : cands)
    if (is_cocycle(c)) cocycles.push_back(c);
  std::set<std::vector<int64_t>> seen;
  std::vector<Cochain> reps;
  auto key = [](const Cochain& c) {
    std::vector<int64_t> k;
    for (const auto& v : c.values) k.insert(k.end(), v.begin(), v.end());
    return k;
  };
  std::vector<Cochain> shifts;
  for (const auto& p : all_cochains(A, B, deg - 1)) shifts.push_back(differential(p));
  for (const auto& z : cocycles) {
    bool fresh = true;
    for (const auto& s : shifts)
      if (seen.count(key(cochain_add(z, s)))) { fresh = false; break; }
    if (fresh) {
      reps.push_back(z);
      seen.insert(key(z));
    }
  }
  // close the seen set so later duplicates are caught
  seen.clear();
  for (const auto& r : reps)
    for (const auto& s : shifts) seen.insert(key(cochain_add(r, s)));
  REQUIRE(seen.size() == cocycles.size());

  // act by table automorphisms on the classes
  auto auts = magma::automorphisms(A);
  REQUIRE(auts.size() == 2);
  std::map<std::vector<int64_t>, size_t> class_of;
  for (size_t i = 0; i < reps.size(); ++i)
    for (const auto& s : shifts) class_of[key(cochain_add(reps[i], s))] = i;
  std::vector<size_t> root(reps.size());
  std::iota(root.begin(), root.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    return root[x] == x ? x : root[x] = find(root[x]);
  };
  for (size_t i = 0; i < reps.size(); ++i)
    for (const auto& f : auts) {
      size_t j = class_of.at(key(pullback(reps[i], f, A)));
      root[find(i)] = find(j);
    }
  std::set<size_t> orbits;
  for (size_t i = 0; i < reps.size(); ++i) orbits.insert(find(i));

  auto got = aut_orbits(A, B, deg);
  REQUIRE(got.class_count == static_cast<int64_t>(reps.size()));
  REQUIRE(got.orbit_sizes.size() == orbits.size());
  for (const auto& rep : got.representatives) REQUIRE(is_cocycle(rep));
}

TEST_CASE("cohomology with other coefficients") {
  REQUIRE(cohomology(z3(), AbelianGroup{{3}}, 1).invariant_factors ==
          std::vector<int64_t>{3});
  auto A = proj3();
  REQUIRE(cohomology(A, AbelianGroup{{4}}, 2).invariant_factors ==
          std::vector<int64_t>(6, 4));
}

TEST_CASE("mixed coefficients merge to the product group") {
  auto A = xor2();
  REQUIRE(cohomology(A, AbelianGroup{{6}}, 1).invariant_factors ==
          std::vector<int64_t>{2});
  REQUIRE(cohomology(A, AbelianGroup{{6}}, 2).invariant_factors ==
          std::vector<int64_t>{2, 6});
  REQUIRE(cohomology(A, AbelianGroup{{6}}, 3).invariant_factors ==
          std::vector<int64_t>{6, 6, 6, 6});

  // componentwise check: merged factors = invariant factors of the product
  for (int deg = 1; deg <= 3; ++deg) {
    std::vector<int64_t> parts;
    for (int64_t m : {2, 3})
      for (int64_t f : cohomology(A, AbelianGroup{{m}}, deg).invariant_factors)
        parts.push_back(f);
    REQUIRE(cohomology(A, AbelianGroup{{6}}, deg).invariant_factors ==
            zlinalg::invariant_factors_of_product(parts));
    // and the same group appears whether 6 is one factor or split in two
    REQUIRE(cohomology(A, AbelianGroup{{2, 3}}, deg).invariant_factors ==
            cohomology(A, AbelianGroup{{6}}, deg).invariant_factors);
  }
}

TEST_CASE("coboundary solver round trips") {
  std::mt19937_64 rng(26);
  for (const auto& B : {AbelianGroup{{4}}, AbelianGroup{{6}}, AbelianGroup{{0}},
                        AbelianGroup{{2, 0}}}) {
    for (const auto& A : {xor2(), z3()}) {
      for (int deg = 2; deg <= 3; ++deg) {
        for (int t = 0; t < 8; ++t) {
          Cochain q = random_cochain(rng, A, B, deg - 1);
          Cochain c = differential(q);
          auto w = is_coboundary(c);
          REQUIRE(w.has_value());
          REQUIRE(differential(*w).values == c.values);
        }
      }
    }
  }
}

TEST_CASE("coboundary solver rejects non-coboundaries and low degrees") {
  auto A = xor2();
  AbelianGroup B{{2}};
  auto h3 = cohomology(A, B, 3);
  REQUIRE_FALSE(is_coboundary(h3.representatives[0]).has_value());
  Cochain p = zero_cochain(A, B, 1);
  REQUIRE_THROWS_AS(is_coboundary(p), validation_error);
}

TEST_CASE("degree-3 coherence is the cocycle condition") {
  auto A = xor2();
  AbelianGroup B{{2}};
  for (const auto& r : all_cochains(A, B, 3))
    REQUIRE(r_coherence_check(r) == is_cocycle(r));

  std::mt19937_64 rng(27);
  AbelianGroup B4{{4}};
  for (int t = 0; t < 50; ++t) {
    Cochain r = random_cochain(rng, z3(), B4, 3);
    REQUIRE(r_coherence_check(r) == is_cocycle(r));
  }
  REQUIRE_THROWS_AS(r_coherence_check(zero_cochain(A, B, 2)), validation_error);
}

TEST_CASE("degree-4 coherence is the cocycle condition") {
  std::mt19937_64 rng(28);
  for (int t = 0; t < 30; ++t) {
    Cochain s = random_cochain(rng, xor2(), AbelianGroup{{4}}, 4);
    REQUIRE(s4_coherence_check(s) == is_cocycle(s));
  }
}

TEST_CASE("gauge transform shifts by an exact coboundary") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 20; ++t) {
    Cochain r = random_cochain(rng, z3(), AbelianGroup{{6}}, 3);
    Cochain q = random_cochain(rng, z3(), AbelianGroup{{6}}, 2);
    Cochain g = gauge_transform(r, q);
    REQUIRE(cochain_sub(g, r).values == cochain_scale(-1, differential(q)).values);
    // gauging preserves coherence
    if (r_coherence_check(r)) REQUIRE(r_coherence_check(g));
  }
}

TEST_CASE("identity with a gauge cochain is a functor onto the gauged target") {
  std::mt19937_64 rng(30);
  auto A = z3();
  magma::MagmaMap id{A, A, {0, 1, 2}};
  for (int t = 0; t < 20; ++t) {
    Cochain r = random_cochain(rng, A, AbelianGroup{{4}}, 3);
    Cochain q = random_cochain(rng, A, AbelianGroup{{4}}, 2);
    Cochain gauged = gauge_transform(r, q);
    REQUIRE(functor_check(id, r, gauged, q));
    // the target is pinned pointwise, so any other target fails
    Cochain other = random_cochain(rng, A, AbelianGroup{{4}}, 3);
    if (other.values != gauged.values) REQUIRE_FALSE(functor_check(id, r, other, q));
  }
}

TEST_CASE("functor_solve finds gauge witnesses and rejects obstructed targets") {
  std::mt19937_64 rng(31);
  auto A = xor2();
  AbelianGroup B{{2}};
  magma::MagmaMap id{A, A, {0, 1}};
  for (int t = 0; t < 10; ++t) {
    Cochain r = random_cochain(rng, A, B, 3);
    Cochain q = random_cochain(rng, A, B, 2);
    Cochain rp = gauge_transform(r, q);
    auto got = functor_solve(id, r, rp);
    REQUIRE(got.has_value());
    REQUIRE(functor_check(id, r, rp, *got));
  }
  // shifting the target by a nontrivial class removes every witness
  Cochain r = zero_cochain(A, B, 3);
  Cochain rp = cohomology(A, B, 3).representatives[0];
  REQUIRE_FALSE(functor_solve(id, r, rp).has_value());

  magma::MagmaMap bad{A, A, {1, 1}};  // f(0+0) = 1 but f(0)+f(0) = 0
  REQUIRE_FALSE(magma::is_homomorphism(bad));
  REQUIRE_THROWS_AS(functor_solve(bad, r, rp), validation_error);
}

TEST_CASE("transformation condition") {
  std::mt19937_64 rng(32);
  auto A = z3();
  AbelianGroup B{{6}};
  for (int t = 0; t < 20; ++t) {
    Cochain q = random_cochain(rng, A, B, 2);
    Cochain p = random_cochain(rng, A, B, 1);
    // q~(x,y) = q(x,y) + p(x) + p(y) - p(xy)
    Cochain qt = q;
    for (int x = 0; x < A.n; ++x)
      for (int y = 0; y < A.n; ++y) {
        size_t idx = static_cast<size_t>(x * A.n + y);
        GroupElement v = qt.values[idx];
        v = zlinalg::add(B, v, p.at({x}));
        v = zlinalg::add(B, v, p.at({y}));
        v = zlinalg::sub(B, v, p.at({A.at(x, y)}));
        qt.values[idx] = zlinalg::reduce(B, v);
      }
    REQUIRE(transformation_check(q, qt, p));
    // any other shift of one slot breaks it
    qt.values[0][0] = mod_reduce(qt.values[0][0] + 1, 6);
    REQUIRE_FALSE(transformation_check(q, qt, p));
  }
}

TEST_CASE("degree-4 classes separate equivalent from inequivalent structures") {
  std::mt19937_64 rng(33);
  auto A = xor2();
  AbelianGroup B{{2}};
  for (int t = 0; t < 10; ++t) {
    Cochain s = random_cochain(rng, A, B, 4);
    Cochain r = random_cochain(rng, A, B, 3);
    Cochain sp = cochain_sub(s, differential(r));
    auto w = bicat_equiv(s, sp);
    REQUIRE(w.has_value());
    REQUIRE(cochain_sub(sp, s).values == differential(*w).values);
  }
  Cochain s = zero_cochain(A, B, 4);
  Cochain sp = cohomology(A, B, 4).representatives[0];
  REQUIRE_FALSE(bicat_equiv(s, sp).has_value());
}

TEST_CASE("abelian cocycle filter and the comparison cochain") {
  auto A = xor2();
  REQUIRE(is_abelian_group_table(A));
  REQUIRE_FALSE(is_abelian_group_table(proj2()));

  for (int64_t mod : {2, 4}) {
    AbelianGroup B{{mod}};
    int64_t pass = 0;
    for (const auto& a : all_cochains(A, B, 3)) {
      for (const auto& c : all_cochains(A, B, 2)) {
        if (!abelian_cocycle_check(a, c)) continue;
        ++pass;
        Cochain b = comparison_from_abelian(a, c);
        REQUIRE(is_cocycle(b));
        // b(x,y,z) = a(x,y,z) + c(x,y) - a(y,x,z), checked pointwise
        for (int x = 0; x < 2; ++x)
          for (int y = 0; y < 2; ++y)
            for (int z = 0; z < 2; ++z) {
              int64_t want = mod_reduce(
                  a.at({x, y, z})[0] + at2(c, x, y)[0] - a.at({y, x, z})[0], mod);
              REQUIRE(b.at({x, y, z})[0] == want);
            }
      }
    }
    // the filter is nonvacuous and leaves a known census at mod 4
    REQUIRE(pass > 0);
    if (mod == 4) REQUIRE(pass == 64);
  }
}

TEST_CASE("abelian coboundary shifts map to exact coboundaries") {
  std::mt19937_64 rng(34);
  auto A = xor2();
  AbelianGroup B{{4}};
  auto add_at = [&](Cochain& c, std::initializer_list<int> args, int64_t v) {
    std::vector<int> t(args);
    size_t idx = 0;
    for (int x : t) idx = idx * static_cast<size_t>(A.n) + static_cast<size_t>(x);
    c.values[idx][0] = mod_reduce(c.values[idx][0] + v, 4);
  };
  for (int t = 0; t < 20; ++t) {
    Cochain a = random_cochain(rng, A, B, 3);
    Cochain c = random_cochain(rng, A, B, 2);
    Cochain g = random_cochain(rng, A, B, 2);

    // group-cohomology shift of the pair (a, c) by g
    Cochain a2 = a;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) {
          int64_t dg = at2(g, y, z)[0] - at2(g, A.at(x, y), z)[0] +
                       at2(g, x, A.at(y, z))[0] - at2(g, x, y)[0];
          add_at(a2, {x, y, z}, dg);
        }
    Cochain c2 = c;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y) add_at(c2, {x, y}, at2(g, x, y)[0] - at2(g, y, x)[0]);

    Cochain diff = cochain_sub(comparison_from_abelian(a2, c2), comparison_from_abelian(a, c));
    REQUIRE(diff.values == differential(g).values);
    REQUIRE(is_coboundary(diff).has_value());
  }
}

TEST_CASE("orbit enumeration refuses unbounded inputs") {
  MagmaTable one(1, {0});
  // every degree-3 cochain on a point is a cocycle and no differentials land there
  REQUIRE(cohomology(one, AbelianGroup{{0}}, 3).invariant_factors ==
          std::vector<int64_t>{0});
  REQUIRE_THROWS_AS(aut_orbits(one, AbelianGroup{{0}}, 3), validation_error);
}
