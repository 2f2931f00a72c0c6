#pragma once

// Reference computations used to cross-check the library. Each one works from
// definitions (solubility searches, cofactor expansion, explicit group actions)
// and shares no code path with the routine it checks.

#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <vector>

#include "g2tori/g2tori.hpp"

// Readable failure messages for the library's value types.
namespace g2t {

inline void PrintTo(const Matrix& m, std::ostream* os) {
  *os << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    *os << (r ? "; " : "");
    for (std::size_t c = 0; c < m.cols(); ++c) *os << (c ? " " : "") << to_string(m(r, c));
  }
  *os << "]";
}
inline void PrintTo(const OctonionMap& m, std::ostream* os) { PrintTo(m.matrix(), os); }
inline void PrintTo(const Poly& p, std::ostream* os) { *os << p.to_string(); }
inline void PrintTo(const CDElement& x, std::ostream* os) { *os << x.to_string(); }
inline void PrintTo(const AxValue& a, std::ostream* os) { *os << a.to_string(); }
inline void PrintTo(const EtaleElement& e, std::ostream* os) {
  *os << "(";
  for (std::size_t i = 0; i < e.parts.size(); ++i) *os << (i ? ", " : "") << e.parts[i].to_string();
  *os << ")";
}
inline void PrintTo(const CubicEtale& e, std::ostream* os) { *os << e.to_string(); }

}  // namespace g2t

namespace oracle {

using g2t::Integer;
using g2t::Rational;

inline std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int val64(std::int64_t n, std::int64_t p, int cap) {
  if (n == 0) return cap;
  int v = 0;
  while (n % p == 0 && v < cap) {
    n /= p;
    ++v;
  }
  return v;
}

/// (a, b)_p for nonzero integers by searching for a primitive solution of
/// z^2 = a x^2 + b y^2 modulo p^k that Hensel's lemma lifts.
inline int hilbert_brute(Integer a, Integer b, std::int64_t p) {
  const Integer pp(p * p);
  while (a % pp == 0) a /= pp;
  while (b % pp == 0) b /= pp;
  const int k = p == 2 ? 6 : 3;
  const std::int64_t m = ipow(p, k);
  const std::int64_t am = static_cast<std::int64_t>(g2t::mod(a, Integer(m)));
  const std::int64_t bm = static_cast<std::int64_t>(g2t::mod(b, Integer(m)));
  const int va = g2t::valuation(a, Integer(p)), vb = g2t::valuation(b, Integer(p));
  const int v2 = p == 2 ? 1 : 0;
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y)
      for (std::int64_t z = 0; z < m; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        std::int64_t q = (z * z - am * x % m * x - bm * y % m * y) % m;
        if (q != 0) continue;
        int e = std::min({v2 + val64(z, p, k), v2 + va + val64(x, p, k), v2 + vb + val64(y, p, k)});
        if (2 * e + 1 <= k) return 1;
      }
  return -1;
}

/// Integer with the same square class as q (numerator times denominator).
inline Integer integral_class(const Rational& q) { return g2t::num(q) * g2t::den(q); }

inline int hilbert_brute(const Rational& a, const Rational& b, std::int64_t p) {
  return hilbert_brute(integral_class(a), integral_class(b), p);
}

/// prod_{i<j} (a_i, a_j)_p.
inline int hasse_product(const std::vector<Rational>& diag, std::int64_t p) {
  int h = 1;
  for (std::size_t i = 0; i < diag.size(); ++i)
    for (std::size_t j = i + 1; j < diag.size(); ++j) h *= hilbert_brute(diag[i], diag[j], p);
  return h;
}

/// Determinant by cofactor expansion along the first row.
inline Rational det_cofactor(const g2t::Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational acc = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    g2t::Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    Rational term = m(0, j) * det_cofactor(minor);
    acc += (j % 2 == 0) ? term : Rational(-term);
  }
  return acc;
}

/// Rational square test by exact integer square roots of numerator and denominator.
inline bool is_rational_square(const Rational& q) {
  if (q < 0) return false;
  Integer n = g2t::num(q), d = g2t::den(q);
  Integer rn = boost::multiprecision::sqrt(n), rd = boost::multiprecision::sqrt(d);
  return rn * rn == n && rd * rd == d;
}

/// Roots of an integral polynomial modulo p by trying every residue.
inline std::vector<std::int64_t> roots_exhaustive(const g2t::Poly& f, std::int64_t p) {
  std::vector<std::int64_t> out;
  for (std::int64_t r = 0; r < p; ++r) {
    Rational v = f(Rational(r));
    if (g2t::mod(g2t::num(v), Integer(p)) == 0) out.push_back(r);
  }
  return out;
}

/// Companion matrix of a monic g: multiplication by t on the power basis.
inline g2t::Matrix companion(const g2t::Poly& g) {
  const auto n = static_cast<std::size_t>(g.degree());
  g2t::Matrix m(n, n);
  for (std::size_t i = 1; i < n; ++i) m(i, i - 1) = 1;
  for (std::size_t i = 0; i < n; ++i) m(i, n - 1) = -g.coeff(i);
  return m;
}

inline g2t::Matrix eval_at(const g2t::Poly& mu, const g2t::Matrix& t) {
  g2t::Matrix acc(t.rows(), t.cols());
  g2t::Matrix pw = g2t::Matrix::identity(t.rows());
  for (const auto& c : mu.coeffs()) {
    acc = acc + c * pw;
    pw = pw * t;
  }
  return acc;
}

inline Rational trace(const g2t::Matrix& m) {
  Rational s = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) s += m(i, i);
  return s;
}

/// Multiplication by lambda on E, block diagonal over the components.
inline g2t::Matrix multiplication_matrix(const g2t::CubicEtale& e, const g2t::EtaleElement& lambda) {
  g2t::Matrix m(3, 3);
  std::size_t off = 0;
  for (std::size_t c = 0; c < e.size(); ++c) {
    g2t::Matrix l = eval_at(lambda.parts[c], companion(e.components()[c]));
    for (std::size_t i = 0; i < l.rows(); ++i)
      for (std::size_t j = 0; j < l.cols(); ++j) m(off + i, off + j) = l(i, j);
    off += l.rows();
  }
  return m;
}

/// Whether every eigenvalue of lambda is real and positive, from the characteristic
/// polynomial s^3 - a s^2 + b s - c (Descartes) and the real-root count of each component.
inline bool totally_positive(const g2t::CubicEtale& e, const g2t::EtaleElement& lambda) {
  for (const auto& g : e.components())
    if (g2t::count_real_roots(g) != g.degree()) return false;
  g2t::Matrix m = multiplication_matrix(e, lambda);
  Rational b = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) + m(1, 1) * m(2, 2) -
               m(1, 2) * m(2, 1);
  return trace(m) > 0 && b > 0 && det_cofactor(m) > 0;
}

/// (a, b)_p for odd p from the valuation/unit decomposition and Euler's criterion.
inline int hilbert_odd(const Integer& a, const Integer& b, std::int64_t p) {
  const Integer P(p);
  auto split = [&](Integer n) {
    int v = 0;
    while (n % P == 0) {
      n /= P;
      ++v;
    }
    return std::make_pair(v, n);
  };
  auto euler = [&](const Integer& u) {
    Integer r = boost::multiprecision::powm(g2t::mod(u, P), Integer((p - 1) / 2), P);
    return r == 1 ? 1 : -1;
  };
  auto [alpha, u] = split(a);
  auto [beta, w] = split(b);
  int s = (alpha % 2 && beta % 2 && p % 4 == 3) ? -1 : 1;
  if (beta % 2) s *= euler(u);
  if (alpha % 2) s *= euler(w);
  return s;
}

inline int hilbert_odd(const Rational& a, const Rational& b, std::int64_t p) {
  return hilbert_odd(integral_class(a), integral_class(b), p);
}

/// Roots of a monic integral polynomial in Z / p^k, lifted digit by digit from the roots mod p.
inline std::vector<Integer> roots_mod_power(const g2t::Poly& f, std::int64_t p, int k) {
  std::vector<Integer> cur{0};
  Integer m = 1;
  for (int j = 1; j <= k; ++j) {
    Integer next_m = m * p;
    std::vector<Integer> next;
    for (const auto& r : cur)
      for (std::int64_t c = 0; c < p; ++c) {
        Integer x = r + m * c;
        if (g2t::mod(g2t::num(f(Rational(x))), next_m) == 0) next.push_back(x);
      }
    cur = std::move(next);
    m = next_m;
  }
  return cur;
}

/// Local symbols (N_{F_w/Q_p}(mu), d)_p over the places w of E above an odd prime p at
/// which every component is unramified or has no root. Linear places are read off roots
/// in Z / p^k; the remaining place of a component absorbs the rest of its global norm.
inline std::vector<int> local_classes(const g2t::QuadraticEtale& a, const g2t::CubicEtale& e,
                                      const g2t::EtaleElement& lambda, std::int64_t p) {
  const int k = 10;
  const Rational d(a.d());
  std::vector<int> out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const g2t::Poly& g = e.components()[i];
    const g2t::Poly& mu = lambda.parts[i];
    int rest = hilbert_odd(g2t::resultant(g, mu), d, p);
    if (g.degree() == 1) {
      out.push_back(rest);
      continue;
    }
    const auto roots = roots_mod_power(g, p, k);
    // Roots of multiplicity one mod p lift uniquely, so p^k-roots above distinct residues are the Z_p roots.
    std::set<Integer> residues;
    for (const auto& r : roots) residues.insert(g2t::mod(r, Integer(p)));
    if (roots.size() != residues.size()) throw std::logic_error("local_classes: ramified component");
    for (const auto& r : roots) {
      Rational value = mu(Rational(r));
      if (g2t::valuation(g2t::num(value), Integer(p)) >= k - 2) throw std::logic_error("local_classes: precision");
      const int sym = hilbert_odd(value, d, p);
      out.push_back(sym);
      rest *= sym;
    }
    if (static_cast<int>(roots.size()) < g.degree()) out.push_back(rest);
  }
  return out;
}

struct OrbitCount {
  int kernel = 0;
  int orbits = 0;
};

/// Kernel of E_p^x / N -> Q_p^x / N_{A_p} and its Aut(E)-orbits, by sampling global
/// elements, recording their local class vectors, and joining the vectors related by
/// each automorphism.
inline OrbitCount orbit_bruteforce(const g2t::QuadraticEtale& a, const g2t::CubicEtale& e, std::int64_t p) {
  using g2t::Poly;
  std::vector<std::vector<Poly>> choices;
  for (const auto& g : e.components()) {
    std::vector<Poly> c;
    for (int n = -12; n <= 12; ++n)
      if (n != 0) c.push_back(Poly(Rational(n)));
    if (g.degree() > 1)
      for (int c0 = -3; c0 <= 3; ++c0)
        for (int c1 = -3; c1 <= 3; ++c1)
          for (int c2 = g.degree() > 2 ? -2 : 0; c2 <= (g.degree() > 2 ? 2 : 0); ++c2)
            if (c1 != 0 || c2 != 0) c.push_back(Poly(std::vector<Rational>{c0, c1, c2}));
    // Elements vanishing mod p at one or two chosen roots, to reach odd valuations at single places.
    if (g.degree() > 1)
      for (std::int64_t r1 = 0; r1 < p; ++r1) {
        c.push_back(Poly(std::vector<Rational>{Rational(-r1), 1}));
        for (std::int64_t r2 = r1; r2 < p; ++r2)
          c.push_back(Poly(std::vector<Rational>{Rational(r1 * r2), Rational(-r1 - r2), 1}));
      }
    choices.push_back(std::move(c));
  }
  const auto auts = g2t::automorphisms(e);
  const Rational d(a.d());
  std::set<std::vector<int>> kernel;
  std::map<std::vector<int>, std::vector<int>> parent;
  auto find = [&](std::vector<int> x) {
    while (parent.at(x) != x) x = parent.at(x);
    return x;
  };
  auto add = [&](const std::vector<int>& s) {
    if (!parent.count(s)) parent[s] = s;
    kernel.insert(s);
  };
  std::vector<std::size_t> idx(choices.size(), 0);
  for (;;) {
    std::vector<Poly> parts;
    bool ok = true;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      parts.push_back(choices[i][idx[i]]);
      if (g2t::resultant(e.components()[i], parts.back() % e.components()[i]) == 0) ok = false;
    }
    if (ok) {
      auto lambda = e.element(parts);
      if (hilbert_odd(g2t::norm_E(e, lambda), d, p) == 1) {
        auto s = local_classes(a, e, lambda, p);
        add(s);
        for (const auto& w : auts) {
          auto t = local_classes(a, e, g2t::apply(e, w, lambda), p);
          add(t);
          auto rs = find(s), rt = find(t);
          if (rs != rt) parent[rs] = rt;
        }
      }
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  std::set<std::vector<int>> roots;
  for (const auto& s : kernel) roots.insert(find(s));
  return {static_cast<int>(kernel.size()), static_cast<int>(roots.size())};
}

/// Deterministic source of small rationals for randomized batteries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational rational(int bound = 5) {
    int n = integer(-bound, bound);
    int d = integer(1, 3);
    return Rational(n, d);
  }

  Rational nonzero(int bound = 5) {
    for (;;) {
      Rational r = rational(bound);
      if (r != 0) return r;
    }
  }

  g2t::CDElement element(const g2t::CDAlgebra& alg, int bound = 3) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < alg.dimension(); ++i) c.push_back(rational(bound));
    return alg.element(std::move(c));
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace oracle
