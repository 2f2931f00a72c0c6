#pragma once

// Exact rational arithmetic and the local number theory of Q:
// p-adic valuations, Legendre and Hilbert symbols, square classes.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "g2tori/errors.hpp"

namespace g2t {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Integer abs_int(const Integer& a) { return a < 0 ? Integer(-a) : a; }

inline Integer gcd_int(Integer a, Integer b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Integer t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer old_r = mod(a, m), r = m, old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = std::move(r);
    r = std::move(t);
    t = old_s - q * s;
    old_s = std::move(s);
    s = std::move(t);
  }
  if (old_r != 1) throw ArgumentError("inverse_mod: not invertible");
  return mod(old_s, m);
}

inline Integer pow_int(const Integer& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

// ---------------------------------------------------------------------------
// Text I/O

inline std::string to_string(const Integer& n) { return n.str(); }

inline std::string to_string(const Rational& q) {
  if (den(q) == 1) return num(q).str();
  return num(q).str() + "/" + den(q).str();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline Integer parse_integer(std::string_view s) {
  s = trim(s);
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ArgumentError("not an integer: '" + std::string(s) + "'");
  Integer n{std::string(s)};
  return neg ? Integer(-n) : n;
}

}  // namespace detail

inline Integer parse_integer(std::string_view s) { return detail::parse_integer(s); }

/// Parses "p/q" or "n".
inline Rational parse_rational(std::string_view s) {
  s = detail::trim(s);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(s));
  Integer p = detail::parse_integer(s.substr(0, slash));
  Integer q = detail::parse_integer(s.substr(slash + 1));
  if (q == 0) throw ArgumentError("zero denominator in '" + std::string(s) + "'");
  return Rational(p, q);
}

// ---------------------------------------------------------------------------
// Primes and factorization

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  static constexpr int kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (int p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  std::mt19937 gen(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 32, gen);
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return mod(v * v + c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd_int(x - y, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Distinct prime divisors of |n| in increasing order; n must be nonzero.
inline std::vector<Integer> prime_divisors(Integer n) {
  if (n == 0) throw ArgumentError("prime_divisors: zero has no factorization");
  n = abs_int(n);
  std::vector<Integer> out;
  for (unsigned p = 2; p < 1000 && Integer(p) * p <= n; ++p) {
    if (n % p == 0) {
      out.emplace_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) {
    std::vector<Integer> rest;
    detail::factor_into(n, rest);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Distinct primes dividing the numerator or denominator of q (q nonzero).
inline std::vector<Integer> prime_divisors(const Rational& q) {
  auto a = prime_divisors(num(q));
  auto b = prime_divisors(den(q));
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

inline int valuation(Integer n, const Integer& p) {
  if (n == 0) throw ArgumentError("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rational& q, const Integer& p) {
  if (q == 0) throw ArgumentError("valuation of zero");
  return valuation(num(q), p) - valuation(den(q), p);
}

/// q / p^v_p(q).
inline Rational unit_part(const Rational& q, const Integer& p) {
  int v = valuation(q, p);
  Integer pv = pow_int(p, static_cast<unsigned>(v < 0 ? -v : v));
  return v >= 0 ? Rational(q / pv) : Rational(q * pv);
}

inline bool is_square(const Integer& n) {
  if (n < 0) return false;
  Integer r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

inline bool is_square(const Rational& q) { return is_square(num(q)) && is_square(den(q)); }

inline bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  Integer m = abs_int(n);
  for (const Integer& p : prime_divisors(m))
    if (m % (p * p) == 0) return false;
  return true;
}

/// Signed squarefree integer s with q / s a rational square.
inline Integer squarefree_part(const Rational& q) {
  if (q == 0) throw ArgumentError("squarefree_part of zero");
  Integer s = q < 0 ? -1 : 1;
  for (const Integer& p : prime_divisors(q))
    if (valuation(q, p) % 2 != 0) s *= p;
  return s;
}

// ---------------------------------------------------------------------------
// Places

class Place {
 public:
  static Place infinity() { return Place(); }
  static Place prime(Integer p) {
    if (!is_prime(p)) throw ArgumentError("place: " + p.str() + " is not prime");
    Place v;
    v.p_ = std::move(p);
    return v;
  }

  bool is_infinite() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  /// The prime of a finite place; 0 for the real place.
  const Integer& p() const { return p_; }

  std::string to_string() const { return is_infinite() ? "inf" : p_.str(); }
  static Place parse(std::string_view s) {
    s = detail::trim(s);
    if (s == "inf" || s == "oo" || s == "infinity") return infinity();
    return prime(detail::parse_integer(s));
  }

  friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }
  friend bool operator<(const Place& a, const Place& b) { return a.p_ < b.p_; }

 private:
  Place() = default;
  Integer p_ = 0;
};

// ---------------------------------------------------------------------------
// Symbols

namespace detail {

inline int legendre_unchecked(const Integer& a, const Integer& p) {
  Integer r = mod(a, p);
  if (r == 0) return 0;
  Integer e = boost::multiprecision::powm(r, Integer((p - 1) / 2), p);
  return e == 1 ? 1 : -1;
}

}  // namespace detail

/// (a / p) for an odd prime p.
inline int legendre_symbol(const Integer& a, const Integer& p) {
  if (p == 2 || !is_prime(p)) throw ArgumentError("legendre_symbol: " + p.str() + " is not an odd prime");
  return detail::legendre_unchecked(a, p);
}

/// Smallest positive quadratic non-residue modulo an odd prime p.
inline Integer smallest_nonresidue(const Integer& p) {
  for (Integer n = 2;; ++n)
    if (detail::legendre_unchecked(n, p) == -1) return n;
}

namespace detail {

// Local data of a nonzero element of Q_p up to squares: its valuation and
// its unit part reduced mod p (odd p) or mod 8 (p = 2).
struct LocalUnit {
  int valuation = 0;
  Integer unit_residue;
};

inline LocalUnit local_unit(const Rational& a, const Integer& p) {
  LocalUnit out;
  out.valuation = valuation(a, p);
  Rational u = unit_part(a, p);
  Integer m = p == 2 ? Integer(8) : p;
  out.unit_residue = mod(num(u) * inverse_mod(den(u), m), m);
  return out;
}

inline int unit_legendre(const Integer& residue, const Integer& p) { return legendre_unchecked(residue, p); }

inline int sign_power(long long e) { return (e % 2 == 0) ? 1 : -1; }

/// Hilbert symbol from local data (a = p^alpha u, b = p^beta v).
inline int hilbert_local(const LocalUnit& a, const LocalUnit& b, const Integer& p) {
  const long long alpha = a.valuation, beta = b.valuation;
  if (p == 2) {
    auto eps = [](const Integer& u) { return static_cast<long long>(((u - 1) / 2) % 2); };
    auto omega = [](const Integer& u) { return static_cast<long long>(((u * u - 1) / 8) % 2); };
    long long e = eps(a.unit_residue) * eps(b.unit_residue) + alpha * omega(b.unit_residue) +
                  beta * omega(a.unit_residue);
    return sign_power(e);
  }
  long long eps_p = static_cast<long long>(((p - 1) / 2) % 2);
  int s = sign_power(alpha * beta * eps_p);
  if (beta % 2 != 0) s *= unit_legendre(a.unit_residue, p);
  if (alpha % 2 != 0) s *= unit_legendre(b.unit_residue, p);
  return s;
}

}  // namespace detail

/// (a, b)_v: +1 iff z^2 = a x^2 + b y^2 has a nontrivial solution over Q_v.
inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
  if (a == 0 || b == 0) throw ArgumentError("hilbert_symbol: arguments must be nonzero");
  if (v.is_infinite()) return (a < 0 && b < 0) ? -1 : 1;
  return detail::hilbert_local(detail::local_unit(a, v.p()), detail::local_unit(b, v.p()), v.p());
}

/// Places where some symbol (a, b)_v can be nontrivial: infinity, 2, and primes of a and b.
inline std::vector<Place> relevant_places(const std::vector<Rational>& values) {
  std::vector<Integer> primes{2};
  for (const Rational& q : values) {
    auto ps = prime_divisors(q);
    primes.insert(primes.end(), ps.begin(), ps.end());
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out{Place::infinity()};
  for (auto& p : primes) out.push_back(Place::prime(p));
  return out;
}

// ---------------------------------------------------------------------------
// Square classes

struct SquareClass {
  Place place = Place::infinity();
  Integer representative = 1;

  std::string to_string() const { return representative.str(); }
  friend bool operator==(const SquareClass& a, const SquareClass& b) {
    return a.place == b.place && a.representative == b.representative;
  }
};

/// Canonical representative of a (Q_v^x)^2:
///   inf: +1 or -1;  odd p: 1, u, p, u*p (u the least non-residue);
///   p = 2: one of +-1, +-2, +-5, +-10.
inline SquareClass square_class(const Rational& a, const Place& v) {
  if (a == 0) throw ArgumentError("square_class of zero");
  SquareClass out;
  out.place = v;
  if (v.is_infinite()) {
    out.representative = a > 0 ? 1 : -1;
    return out;
  }
  const Integer& p = v.p();
  auto lu = detail::local_unit(a, p);
  Integer unit;
  if (p == 2) {
    static const int kUnitRep[8] = {0, 1, 0, -5, 0, 5, 0, -1};
    unit = kUnitRep[static_cast<int>(lu.unit_residue)];
  } else {
    unit = detail::unit_legendre(lu.unit_residue, p) == 1 ? Integer(1) : smallest_nonresidue(p);
  }
  out.representative = (lu.valuation % 2 != 0) ? Integer(unit * p) : unit;
  return out;
}

inline bool is_local_square(const Rational& a, const Place& v) { return square_class(a, v).representative == 1; }

/// All canonical square-class representatives of Q_v^x in canonical order.
inline std::vector<Integer> square_class_representatives(const Place& v) {
  if (v.is_infinite()) return {1, -1};
  const Integer& p = v.p();
  if (p == 2) return {1, -1, 2, -2, 5, -5, 10, -10};
  Integer u = smallest_nonresidue(p);
  return {1, u, p, u * p};
}

}  // namespace g2t
