#ifndef BSTRUCT_EXACT_HPP
#define BSTRUCT_EXACT_HPP

// Exact scalar types shared by the linear-algebra and tensor-operator layers:
// arbitrary-precision integers and rationals (boost::multiprecision) and a
// prime-field element carrying its modulus.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace bstruct {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Bad or out-of-range input (CLI maps this to exit code 2).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

inline int64_t mod_reduce(int64_t v, int64_t m) {
  int64_t r = v % m;
  return r < 0 ? r + m : r;
}

// g = gcd(a,b) >= 0 and s*a + t*b = g
inline int64_t exgcd(int64_t a, int64_t b, int64_t& s, int64_t& t) {
  int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    int64_t q = r0 / r1;
    r0 -= q * r1; std::swap(r0, r1);
    s0 -= q * s1; std::swap(s0, s1);
    t0 -= q * t1; std::swap(t0, t1);
  }
  if (r0 < 0) { r0 = -r0; s0 = -s0; t0 = -t0; }
  s = s0; t = t0;
  return r0;
}

inline int64_t inv_mod(int64_t a, int64_t m) {
  int64_t s, t;
  int64_t g = exgcd(mod_reduce(a, m), m, s, t);
  if (g != 1) throw validation_error("inv_mod: not a unit");
  return mod_reduce(s, m);
}

inline int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  return static_cast<int64_t>(static_cast<__int128>(a) * b % m);
}

// Unit u (mod m) with u*a = gcd(a,m) mod m.  Needed to normalise Howell pivots
// over Z/m with composite m: a and gcd(a,m) generate the same ideal, and some
// unit carries one to the other.  The progression inv(a/d) + k*(m/d) contains
// a unit within d steps (CRT argument), so the scan below terminates.
inline int64_t unit_to_gcd(int64_t a, int64_t m) {
  a = mod_reduce(a, m);
  if (a == 0) return 1;
  int64_t d = std::gcd(a, m);
  int64_t mp = m / d;
  int64_t u0 = (mp == 1) ? 1 : inv_mod(a / d, mp);
  for (int64_t k = 0; k <= d; ++k) {
    int64_t cand = mod_reduce(u0 + k * mp, m);
    if (cand != 0 && std::gcd(cand, m) == 1) return cand;
  }
  throw std::logic_error("unit_to_gcd: no unit found");
}

inline bool is_prime_i64(int64_t p) {
  if (p < 2) return false;
  for (int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Prime-field element; every value carries its modulus so generic matrix and
// tensor code needs no external field context.
struct Fp {
  int64_t v = 0;
  int64_t p = 0;

  Fp() = default;
  Fp(int64_t value, int64_t prime) : p(prime) {
    if (prime <= 0) throw std::logic_error("Fp: nonpositive modulus");
    v = mod_reduce(value, prime);
  }

  // a default-constructed Fp (p = 0, v = 0) acts as a neutral zero so that
  // zero-initialized matrix entries mix safely with any modulus
  friend Fp operator+(Fp a, Fp b) { int64_t m = a.agree(b); return m ? Fp(a.v + b.v, m) : Fp(); }
  friend Fp operator-(Fp a, Fp b) { int64_t m = a.agree(b); return m ? Fp(a.v - b.v, m) : Fp(); }
  friend Fp operator*(Fp a, Fp b) { int64_t m = a.agree(b); return m ? Fp(a.v * b.v, m) : Fp(); }
  friend Fp operator-(Fp a) { return a.p ? Fp(-a.v, a.p) : Fp(); }
  Fp& operator+=(Fp b) { *this = *this + b; return *this; }
  Fp& operator-=(Fp b) { *this = *this - b; return *this; }
  Fp& operator*=(Fp b) { *this = *this * b; return *this; }
  friend bool operator==(Fp a, Fp b) {
    return a.v == b.v && (a.p == b.p || a.p == 0 || b.p == 0);
  }
  friend bool operator!=(Fp a, Fp b) { return !(a == b); }

  Fp inv() const { return Fp(inv_mod(v, p), p); }
  bool is_zero() const { return v == 0; }

  int64_t agree(Fp b) const {
    if (p == b.p) return p;
    if (p == 0) return b.p;
    if (b.p == 0) return p;
    throw std::logic_error("Fp: mixed moduli");
  }
};

inline Fp zero_of(Fp sample) { return sample.p ? Fp(0, sample.p) : Fp(); }
inline Fp one_of(Fp sample) { return Fp(1, sample.p); }
inline bool is_zero(Fp x) { return x.v == 0; }
inline Fp inv_of(Fp x) { return x.inv(); }

inline Rat zero_of(const Rat&) { return Rat(0); }
inline Rat one_of(const Rat&) { return Rat(1); }
inline bool is_zero(const Rat& x) { return x == 0; }
inline Rat inv_of(const Rat& x) {
  if (x == 0) throw validation_error("division by zero");
  return Rat(1) / x;
}

inline bool is_zero(const Int& x) { return x == 0; }
inline bool is_zero(int64_t x) { return x == 0; }

}  // namespace bstruct

#endif
