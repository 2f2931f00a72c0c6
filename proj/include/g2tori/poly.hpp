#pragma once

// Univariate polynomials over Q, real root isolation, and root finding
// modulo p and in Z_p.

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "g2tori/arith.hpp"
#include "g2tori/linalg.hpp"

namespace g2t {

/// Dense polynomial in t; coefficient i multiplies t^i. Always trimmed.
class Poly {
 public:
  Poly() = default;
  Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(const Rational& constant) : c_{constant} { trim(); }
  Poly(int constant) : Poly(Rational(constant)) {}

  static Poly t() { return Poly(std::vector<Rational>{0, 1}); }
  static Poly monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_integral() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return den(q) == 1; });
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& a) { return Poly() - a; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rational> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const {
    std::vector<Rational> v;
    for (std::size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * static_cast<int>(i));
    return Poly(std::move(v));
  }

  /// this(g(t)).
  Poly compose(const Poly& g) const {
    Poly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Poly(*it);
    return acc;
  }

  Poly monic() const {
    if (is_zero()) return *this;
    Rational l = lead();
    std::vector<Rational> v = c_;
    for (auto& x : v) x /= l;
    return Poly(std::move(v));
  }

  std::string to_string(char var = 't') const {
    if (c_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& a = c_[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      Rational mag = a < 0 ? Rational(-a) : a;
      if (out.empty())
        out += a < 0 ? "-" : "";
      else
        out += a < 0 ? " - " : " + ";
      if (i == 0 || mag != 1) out += g2t::to_string(mag) + (i == 0 ? "" : "*");
      if (i >= 1) out += var;
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

inline Poly operator*(const Rational& s, const Poly& p) { return Poly(s) * p; }

struct PolyDivision {
  Poly quotient, remainder;
};

inline PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw ArgumentError("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {Poly(), a};
  std::vector<Rational> q(static_cast<std::size_t>(a.degree() - db + 1));
  const Rational lb = b.lead();
  for (int k = a.degree() - db; k >= 0; --k) {
    Rational f = r[static_cast<std::size_t>(k + db)] / lb;
    q[static_cast<std::size_t>(k)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k + j)] -= f * b.coeffs()[static_cast<std::size_t>(j)];
  }
  return {Poly(std::move(q)), Poly(std::move(r))};
}

inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

/// Monic gcd (zero if both are zero).
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Inverse of a modulo f, if gcd(a, f) = 1.
inline std::optional<Poly> inverse_mod(const Poly& a, const Poly& f) {
  Poly r0 = f, r1 = a % f, s0 = Poly(), s1 = Poly(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    Poly s = s0 - q * s1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (r0.degree() != 0) return std::nullopt;
  return (Rational(1) / r0.lead()) * s0 % f;
}

/// Determinant of the Sylvester matrix; for monic f equals prod_{f(r)=0} g(r).
inline Rational resultant(const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const int m = f.degree(), n = g.degree();
  if (m == 0 && n == 0) return 1;
  const std::size_t size = static_cast<std::size_t>(m + n);
  Matrix s(size, size);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) s(i, i + j) = f.coeff(static_cast<std::size_t>(m - j));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) s(n + i, i + j) = g.coeff(static_cast<std::size_t>(n - j));
  return determinant(s);
}

/// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lead(f).
inline Rational discriminant(const Poly& f) {
  const int n = f.degree();
  if (n < 1) throw ArgumentError("discriminant of a constant polynomial");
  if (n == 1) return 1;
  Rational r = resultant(f, f.derivative()) / f.lead();
  return ((n * (n - 1) / 2) % 2 == 0) ? r : Rational(-r);
}

/// Power sums p_0..p_{count-1} of the roots of a monic f (Newton's identities).
inline std::vector<Rational> power_sums(const Poly& f, std::size_t count) {
  if (!f.is_monic()) throw ArgumentError("power_sums: polynomial must be monic");
  const int n = f.degree();
  // e_k with f = t^n - e_1 t^{n-1} + e_2 t^{n-2} - ...
  auto e = [&](int k) -> Rational {
    if (k > n) return 0;
    Rational a = f.coeff(static_cast<std::size_t>(n - k));
    return (k % 2 == 0) ? a : Rational(-a);
  };
  std::vector<Rational> p(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int kk = static_cast<int>(k);
    if (k == 0) {
      p[0] = n;
      continue;
    }
    Rational acc = 0;
    for (int i = 1; i < kk && i <= n; ++i) acc += ((i - 1) % 2 == 0 ? 1 : -1) * e(i) * p[k - static_cast<std::size_t>(i)];
    if (kk <= n) acc += ((kk - 1) % 2 == 0 ? 1 : -1) * kk * e(kk);
    p[k] = acc;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Parsing: sums of terms, products, parentheses and ^ with integer exponents.

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ArgumentError("cannot parse polynomial '" + std::string(s_) + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  bool at_factor_start() {
    skip();
    return i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == 't' ||
                              s_[i_] == 'x' || s_[i_] == '(');
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    for (;;) {
      bool neg = false;
      if (eat('-'))
        neg = true;
      else if (!eat('+') && !first)
        break;
      Poly t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        Poly d = power();
        if (d.degree() != 0) fail("division by a non-constant");
        acc = (Rational(1) / d.lead()) * acc;
      } else if (at_factor_start()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  Poly power() {
    Poly base = atom();
    if (!eat('^')) return base;
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("exponent must be a non-negative integer");
    int e = std::stoi(std::string(s_.substr(start, i_ - start)));
    if (e > 64) fail("exponent too large");
    Poly out(1);
    for (int k = 0; k < e; ++k) out = out * base;
    return out;
  }

  Poly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (c == 't' || c == 'x') {
      ++i_;
      return Poly::t();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Poly(Rational(Integer(std::string(s_.substr(start, i_ - start)))));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses expressions such as "t^3 - 3*t - 1", "(t-1)(t+2)" or "1/2 + 3/4*t".
inline Poly parse_poly(std::string_view s) { return detail::PolyParser(s).parse(); }

// ---------------------------------------------------------------------------
// Real roots via Sturm sequences

inline std::vector<Poly> sturm_sequence(const Poly& f) {
  std::vector<Poly> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    Poly r = seq[seq.size() - 2] % seq.back();
    seq.push_back(-r);
  }
  seq.pop_back();
  return seq;
}

namespace detail {

inline int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

inline int sign_changes(const std::vector<int>& signs) {
  int changes = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int variations_at(const std::vector<Poly>& seq, const Rational& x) {
  std::vector<int> s;
  for (const auto& p : seq) s.push_back(sign_of(p(x)));
  return sign_changes(s);
}

/// Sign changes at -infinity (at_plus = false) or +infinity.
inline int variations_at_infinity(const std::vector<Poly>& seq, bool at_plus) {
  std::vector<int> s;
  for (const auto& p : seq) {
    int sg = sign_of(p.lead());
    if (!at_plus && p.degree() % 2 != 0) sg = -sg;
    s.push_back(sg);
  }
  return sign_changes(s);
}

inline Poly squarefree(const Poly& f) { return divmod(f, gcd(f, f.derivative())).quotient; }

}  // namespace detail

/// Number of distinct real roots.
inline int count_real_roots(const Poly& f) {
  if (f.degree() < 1) return 0;
  auto seq = sturm_sequence(detail::squarefree(f));
  return detail::variations_at_infinity(seq, false) - detail::variations_at_infinity(seq, true);
}

/// Distinct roots in (a, b]; a and b must not be roots.
inline int count_real_roots(const Poly& f, const Rational& a, const Rational& b) {
  if (f.degree() < 1) return 0;
  auto seq = sturm_sequence(detail::squarefree(f));
  return detail::variations_at(seq, a) - detail::variations_at(seq, b);
}

/// Interval (lo, hi) containing exactly one root, or lo == hi an exact rational root.
struct RootInterval {
  Rational lo, hi;
};

/// Isolating intervals for the distinct real roots of f, in increasing order.
inline std::vector<RootInterval> isolate_real_roots(const Poly& f) {
  std::vector<RootInterval> out;
  if (f.degree() < 1) return out;
  Poly g = detail::squarefree(f);
  auto seq = sturm_sequence(g);
  Rational bound = 1;
  for (int i = 0; i < g.degree(); ++i) {
    Rational a = g.coeff(static_cast<std::size_t>(i)) / g.lead();
    bound = std::max(bound, Rational(1 + (a < 0 ? Rational(-a) : a)));
  }
  std::vector<RootInterval> work{{-bound, bound}};
  while (!work.empty()) {
    RootInterval iv = work.back();
    work.pop_back();
    int n = detail::variations_at(seq, iv.lo) - detail::variations_at(seq, iv.hi);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back(iv);
      continue;
    }
    Rational mid = (iv.lo + iv.hi) / 2;
    if (g(mid) == 0) {
      out.push_back({mid, mid});
      Rational eps = (iv.hi - iv.lo) / 4;
      while (g(mid - eps) == 0 || g(mid + eps) == 0 ||
             count_real_roots(g, mid - eps, mid + eps) != 1)
        eps /= 2;
      work.push_back({iv.lo, mid - eps});
      work.push_back({mid + eps, iv.hi});
    } else {
      work.push_back({iv.lo, mid});
      work.push_back({mid, iv.hi});
    }
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

/// Halves an isolating interval of a root of f.
inline RootInterval refine(const Poly& f, RootInterval iv) {
  if (iv.lo == iv.hi) return iv;
  Rational mid = (iv.lo + iv.hi) / 2;
  if (f(mid) == 0) return {mid, mid};
  if (detail::sign_of(f(iv.lo)) != detail::sign_of(f(mid)) || count_real_roots(f, iv.lo, mid) == 1)
    return {iv.lo, mid};
  return {mid, iv.hi};
}

/// Sign of mu at the root of f isolated by iv; mu must not vanish there.
inline int sign_at_root(const Poly& f, RootInterval iv, const Poly& mu) {
  if (mu.is_zero()) throw ArgumentError("sign_at_root: zero polynomial");
  Poly g = detail::squarefree(f);
  for (int guard = 0; guard < 4096; ++guard) {
    if (iv.lo == iv.hi) {
      Rational v = mu(iv.lo);
      if (v == 0) throw ArgumentError("sign_at_root: polynomial vanishes at the root");
      return detail::sign_of(v);
    }
    Rational a = mu(iv.lo), b = mu(iv.hi);
    if (a != 0 && b != 0 && detail::sign_of(a) == detail::sign_of(b) &&
        (mu.degree() < 1 || count_real_roots(mu, iv.lo, iv.hi) == 0))
      return detail::sign_of(a);
    iv = refine(g, iv);
  }
  throw std::logic_error("sign_at_root: refinement did not terminate");
}

/// Rational roots of a polynomial with rational coefficients, increasing, without multiplicity.
inline std::vector<Rational> rational_roots(const Poly& f) {
  std::vector<Rational> out;
  if (f.degree() < 1) return out;
  // Scale to an integer polynomial; a rational root p/q has q | lead, so q * root is an
  // integer root of the monic transform lead^{n-1} f(t / lead).
  Poly m = f.monic();
  Integer common = 1;
  for (const auto& c : m.coeffs()) common = boost::multiprecision::lcm(common, den(c));
  const int n = m.degree();
  // g(t) = common^n m(t / common) is monic with integer coefficients.
  std::vector<Rational> gc(static_cast<std::size_t>(n + 1));
  Integer pw = 1;
  for (int i = n; i >= 0; --i) {
    gc[static_cast<std::size_t>(i)] = m.coeff(static_cast<std::size_t>(i)) * Rational(pw);
    pw *= common;
  }
  Poly g(std::move(gc));
  for (auto iv : isolate_real_roots(g)) {
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo / Rational(common));
      continue;
    }
    while (iv.hi - iv.lo >= 1 && iv.lo != iv.hi) iv = refine(g, iv);
    if (iv.lo == iv.hi) {
      out.push_back(iv.lo / Rational(common));
      continue;
    }
    // An integer root inside (lo, hi) must be the unique integer in a width < 1 interval.
    Integer k = num(iv.hi) / den(iv.hi);
    if (Rational(k) > iv.hi) k -= 1;
    while (Rational(k) > iv.lo) {
      if (g(Rational(k)) == 0) out.push_back(Rational(k) / Rational(common));
      k -= 1;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Integer polynomials modulo p and p-adic roots

namespace detail {

using IntPoly = std::vector<Integer>;  // coefficient i multiplies t^i

inline void trim_int(IntPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline IntPoly to_int_poly(const Poly& f) {
  if (!f.is_integral()) throw ArgumentError("polynomial has non-integral coefficients");
  IntPoly out;
  for (const auto& c : f.coeffs()) out.push_back(num(c));
  return out;
}

inline IntPoly reduce(IntPoly a, const Integer& m) {
  for (auto& x : a) x = mod(x, m);
  trim_int(a);
  return a;
}

inline Integer eval_mod(const IntPoly& a, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = mod(acc * x + *it, m);
  return acc;
}

inline IntPoly derivative(const IntPoly& a) {
  IntPoly d;
  for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<int>(i));
  trim_int(d);
  return d;
}

inline IntPoly mul_mod(const IntPoly& a, const IntPoly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  IntPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return reduce(std::move(c), p);
}

/// Remainder of a by b over F_p (b nonzero mod p).
inline IntPoly rem_mod(IntPoly a, IntPoly b, const Integer& p) {
  a = reduce(std::move(a), p);
  b = reduce(std::move(b), p);
  if (b.empty()) throw ArgumentError("polynomial division by zero mod p");
  Integer inv = inverse_mod(b.back(), p);
  while (a.size() >= b.size()) {
    Integer f = mod(a.back() * inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = mod(a[shift + j] - f * b[j], p);
    trim_int(a);
  }
  return a;
}

inline IntPoly gcd_mod(IntPoly a, IntPoly b, const Integer& p) {
  a = reduce(std::move(a), p);
  b = reduce(std::move(b), p);
  while (!b.empty()) {
    IntPoly r = rem_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Integer inv = inverse_mod(a.back(), p);
    for (auto& x : a) x = mod(x * inv, p);
  }
  return a;
}

/// base^e mod (f, p).
inline IntPoly pow_mod(IntPoly base, Integer e, const IntPoly& f, const Integer& p) {
  IntPoly result{1};
  base = rem_mod(std::move(base), f, p);
  while (e > 0) {
    if (e % 2 == 1) result = rem_mod(mul_mod(result, base, p), f, p);
    base = rem_mod(mul_mod(base, base, p), f, p);
    e /= 2;
  }
  return result;
}

inline void split_roots(const IntPoly& h, const Integer& p, std::vector<Integer>& out, unsigned seed) {
  if (h.size() <= 1) return;
  if (h.size() == 2) {
    out.push_back(mod(-h[0] * inverse_mod(h[1], p), p));
    return;
  }
  // h splits into distinct linear factors; gcd with (t + a)^{(p-1)/2} - 1 separates them.
  for (Integer a = seed;; ++a) {
    IntPoly w = pow_mod(IntPoly{a, 1}, (p - 1) / 2, h, p);
    if (w.empty()) w = {0};
    w[0] = mod(w[0] - 1, p);
    trim_int(w);
    IntPoly g = gcd_mod(h, w, p);
    if (g.size() > 1 && g.size() < h.size()) {
      // h / g by exact division over F_p
      IntPoly q;
      {
        IntPoly a2 = h;
        Integer inv = inverse_mod(g.back(), p);
        q.assign(h.size() - g.size() + 1, 0);
        while (a2.size() >= g.size()) {
          Integer f = mod(a2.back() * inv, p);
          std::size_t shift = a2.size() - g.size();
          q[shift] = f;
          for (std::size_t j = 0; j < g.size(); ++j) a2[shift + j] = mod(a2[shift + j] - f * g[j], p);
          trim_int(a2);
          if (a2.size() < g.size()) break;
        }
      }
      split_roots(g, p, out, seed + 1);
      split_roots(q, p, out, seed + 1);
      return;
    }
  }
}

}  // namespace detail

/// Distinct roots in F_p of an integer polynomial that is nonzero mod p, increasing.
inline std::vector<Integer> roots_mod_p(const Poly& f, const Integer& p) {
  auto a = detail::reduce(detail::to_int_poly(f), p);
  if (a.empty()) throw ArgumentError("roots_mod_p: polynomial vanishes mod p");
  std::vector<Integer> out;
  if (p < 4096) {
    for (Integer x = 0; x < p; ++x)
      if (detail::eval_mod(a, x, p) == 0) out.push_back(x);
    return out;
  }
  // gcd(a, t^p - t) collects the distinct roots.
  detail::IntPoly tp = detail::pow_mod({0, 1}, p, a, p);
  tp.resize(std::max<std::size_t>(tp.size(), 2));
  tp[1] = mod(tp[1] - 1, p);
  detail::trim_int(tp);
  detail::IntPoly h = detail::gcd_mod(a, tp, p);
  if (h.size() > 1 && h[0] == 0) {
    out.push_back(0);
    h.erase(h.begin());
  }
  detail::split_roots(h, p, out, 1);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// g(a + p y) as a polynomial in y.
inline IntPoly shift_scale(const IntPoly& g, const Integer& a, const Integer& p) {
  IntPoly acc;
  for (auto it = g.rbegin(); it != g.rend(); ++it) {
    // acc = acc * (a + p y) + c
    IntPoly next(acc.size() + 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i] += acc[i] * a;
      next[i + 1] += acc[i] * p;
    }
    next[0] += *it;
    acc = std::move(next);
  }
  trim_int(acc);
  return acc;
}

inline Integer newton_lift(const IntPoly& g, Integer y, const Integer& p, const Integer& modulus) {
  IntPoly dg = derivative(g);
  for (int iter = 0; iter < 256; ++iter) {
    Integer val = eval_mod(g, y, modulus);
    if (val == 0) return y;
    Integer d = eval_mod(dg, y, modulus);
    y = mod(y - val * inverse_mod(d, modulus), modulus);
  }
  throw PrecisionExhausted("newton_lift: did not converge", p.str());
}

inline void padic_roots_rec(const IntPoly& g, const Integer& p, const Integer& modulus, int depth, int max_depth,
                            std::vector<Integer>& out) {
  IntPoly gp = reduce(g, p);
  if (gp.size() <= 1) return;  // nonzero constant mod p: no roots
  IntPoly dg = derivative(g);
  for (Integer a = 0; a < p; ++a) {
    if (eval_mod(gp, a, p) != 0) continue;
    if (eval_mod(dg, a, p) != 0) {
      out.push_back(newton_lift(g, a, p, modulus));
      continue;
    }
    if (depth >= max_depth)
      throw PrecisionExhausted("p-adic root separation exceeded depth " + std::to_string(max_depth), p.str());
    IntPoly h = shift_scale(g, a, p);
    int c = -1;
    for (const auto& x : h)
      if (x != 0) {
        int v = valuation(x, p);
        c = (c < 0 || v < c) ? v : c;
      }
    Integer pc = pow_int(p, static_cast<unsigned>(c));
    for (auto& x : h) x /= pc;
    std::vector<Integer> ys;
    padic_roots_rec(h, p, modulus, depth + 1, max_depth, ys);
    for (const auto& y : ys) out.push_back(mod(a + p * y, modulus));
  }
}

}  // namespace detail

inline constexpr int kDefaultHenselDepth = 64;

/// Roots in Z_p of a monic integer polynomial, reduced mod p^precision, increasing.
/// Multiple roots mod p are separated by recursive rescaling; more than max_depth
/// rescalings raise PrecisionExhausted.
inline std::vector<Integer> padic_roots(const Poly& f, const Integer& p, unsigned precision,
                                        int max_depth = kDefaultHenselDepth) {
  if (!f.is_monic() || !f.is_integral()) throw ArgumentError("padic_roots: polynomial must be monic integral");
  if (p > 4096) {
    // Large primes: a root mod p is simple unless p | disc, in which case the recursive
    // search below still applies but enumerating F_p would be too slow.
    auto g = detail::to_int_poly(f);
    auto dg = detail::derivative(g);
    Integer modulus = pow_int(p, precision);
    std::vector<Integer> out;
    for (const auto& a : roots_mod_p(f, p)) {
      if (detail::eval_mod(dg, a, p) == 0)
        throw PrecisionExhausted("padic_roots: multiple root modulo a large prime", p.str());
      out.push_back(detail::newton_lift(g, a, p, modulus));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Integer> out;
  detail::padic_roots_rec(detail::to_int_poly(f), p, pow_int(p, precision), 0, max_depth, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace g2t
