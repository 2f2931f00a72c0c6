#pragma once

// Quadratic and cubic etale algebras over Q: automorphisms, discriminants,
// norms, scaled trace forms, real and p-adic splitting, and local norm symbols.
//
// A cubic etale algebra is a product of fields Q[t]/(g_i) with monic integral
// irreducible g_i of total degree 3. Components are kept sorted by degree, then
// by coefficient vector (constant term first).

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "g2tori/arith.hpp"
#include "g2tori/linalg.hpp"
#include "g2tori/poly.hpp"

namespace g2t {

/// Q(sqrt d) for squarefree d; d = 1 is the split algebra Q x Q.
class QuadraticEtale {
 public:
  explicit QuadraticEtale(Integer d) : d_(std::move(d)) {
    if (d_ == 0 || !is_squarefree(d_)) throw ArgumentError("quadratic etale algebra needs squarefree d, got " + d_.str());
  }
  const Integer& d() const { return d_; }
  bool is_split() const { return d_ == 1; }
  /// Imaginary at the real place.
  bool is_cm() const { return d_ < 0; }
  bool is_split_at(const Place& v) const { return v.is_infinite() ? d_ > 0 : is_local_square(Rational(d_), v); }
  friend bool operator==(const QuadraticEtale& a, const QuadraticEtale& b) = default;

 private:
  Integer d_;
};

namespace detail {

inline bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

inline void require_monic_integral(const Poly& g) {
  if (g.degree() < 1 || !g.is_monic() || !g.is_integral())
    throw ArgumentError("etale component must be a monic integral polynomial: " + g.to_string());
}

}  // namespace detail

struct EtaleElement {
  std::vector<Poly> parts;  // one residue per component, reduced modulo it
  friend bool operator==(const EtaleElement& a, const EtaleElement& b) = default;
};

class CubicEtale {
 public:
  explicit CubicEtale(std::vector<Poly> components) {
    int total = 0;
    for (const auto& g : components) {
      detail::require_monic_integral(g);
      total += g.degree();
      if (g.degree() == 2 && is_square(discriminant(g)))
        throw ArgumentError("quadratic component is reducible: " + g.to_string());
      if (g.degree() == 3 && !rational_roots(g).empty())
        throw ArgumentError("cubic component is reducible: " + g.to_string());
      if (g.degree() > 3) throw ArgumentError("component degree exceeds 3: " + g.to_string());
    }
    if (total != 3) throw ArgumentError("component degrees must sum to 3");
    std::sort(components.begin(), components.end(), detail::poly_less);
    comps_ = std::move(components);
  }

  /// Positions of the given components after canonical sorting: result[k] is the input index
  /// of sorted component k.
  static std::vector<std::size_t> sorting_permutation(const std::vector<Poly>& components) {
    std::vector<std::size_t> idx(components.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return detail::poly_less(components[a], components[b]); });
    return idx;
  }

  /// Q[t]/(f) for a monic integral separable cubic f, split into its irreducible factors.
  static CubicEtale from_polynomial(const Poly& f) {
    detail::require_monic_integral(f);
    if (f.degree() != 3) throw ArgumentError("expected a cubic polynomial: " + f.to_string());
    if (discriminant(f) == 0) throw ArgumentError("polynomial is not separable: " + f.to_string());
    std::vector<Poly> comps;
    Poly rest = f;
    for (const auto& r : rational_roots(f)) {
      Poly lin(std::vector<Rational>{-r, 1});
      comps.push_back(lin);
      rest = divmod(rest, lin).quotient;
    }
    if (rest.degree() > 0) comps.push_back(rest);
    return CubicEtale(std::move(comps));
  }

  const std::vector<Poly>& components() const { return comps_; }
  std::size_t size() const { return comps_.size(); }
  friend bool operator==(const CubicEtale& a, const CubicEtale& b) = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < comps_.size(); ++i) s += (i ? ", " : "") + comps_[i].to_string();
    return "[" + s + "]";
  }

  /// Reduces each part modulo its component; throws if the element is not invertible.
  EtaleElement element(std::vector<Poly> parts) const {
    if (parts.size() != comps_.size()) throw ArgumentError("element needs one part per component");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      parts[i] = parts[i] % comps_[i];
      if (resultant(comps_[i], parts[i]) == 0)
        throw ArgumentError("element is not invertible in component " + comps_[i].to_string());
    }
    return EtaleElement{std::move(parts)};
  }

  /// Image of a polynomial in Q[t]/(prod g_i).
  EtaleElement element_from_poly(const Poly& p) const { return element(std::vector<Poly>(comps_.size(), p)); }

  EtaleElement scalar(const Rational& c) const { return element(std::vector<Poly>(comps_.size(), Poly(c))); }

 private:
  std::vector<Poly> comps_;
};

inline EtaleElement multiply(const CubicEtale& e, const EtaleElement& a, const EtaleElement& b) {
  std::vector<Poly> parts;
  for (std::size_t i = 0; i < e.size(); ++i) parts.push_back(a.parts[i] * b.parts[i] % e.components()[i]);
  return e.element(std::move(parts));
}

inline EtaleElement inverse(const CubicEtale& e, const EtaleElement& a) {
  std::vector<Poly> parts;
  for (std::size_t i = 0; i < e.size(); ++i) parts.push_back(*inverse_mod(a.parts[i], e.components()[i]));
  return e.element(std::move(parts));
}

/// N_{F/Q}(mu) = Res(g, mu) for monic g.
inline Rational component_norm(const Poly& g, const Poly& mu) { return resultant(g, mu); }

inline Rational norm_E(const CubicEtale& e, const EtaleElement& lambda) {
  Rational n = 1;
  for (std::size_t i = 0; i < e.size(); ++i) n *= component_norm(e.components()[i], lambda.parts[i]);
  return n;
}

/// Squarefree representative of delta_{E/Q}, the product of the component discriminants.
inline Integer discriminant_E(const CubicEtale& e) {
  Rational d = 1;
  for (const auto& g : e.components()) d *= discriminant(g);
  return squarefree_part(d);
}

// ---------------------------------------------------------------------------
// Automorphisms

enum class AutGroup { S3, C3, C2, trivial };

inline std::string to_string(AutGroup g) {
  switch (g) {
    case AutGroup::S3: return "S3";
    case AutGroup::C3: return "C3";
    case AutGroup::C2: return "C2";
    case AutGroup::trivial: return "1";
  }
  return "?";
}

inline AutGroup aut_group(const CubicEtale& e) {
  if (e.size() == 3) return AutGroup::S3;
  if (e.size() == 2) return AutGroup::C2;
  return is_square(discriminant(e.components()[0])) ? AutGroup::C3 : AutGroup::trivial;
}

/// w(lambda)_i = lambda_{source[i]}(image[i]) reduced modulo component i.
struct EtaleAutomorphism {
  std::vector<std::size_t> source;
  std::vector<Poly> image;
};

inline EtaleElement apply(const CubicEtale& e, const EtaleAutomorphism& w, const EtaleElement& lambda) {
  std::vector<Poly> parts;
  for (std::size_t i = 0; i < e.size(); ++i)
    parts.push_back(lambda.parts[w.source[i]].compose(w.image[i]) % e.components()[i]);
  return e.element(std::move(parts));
}

/// The generator of a cyclic cubic field sent to another root:
/// theta' = (-a2 - theta + sqrt(D) / f'(theta)) / 2.
inline Poly cyclic_generator_image(const Poly& f) {
  Rational disc = discriminant(f);
  Rational root = Rational(boost::multiprecision::sqrt(num(disc)), boost::multiprecision::sqrt(den(disc)));
  auto inv = inverse_mod(f.derivative(), f);
  if (!inv) throw std::logic_error("f' is not invertible modulo f");
  Poly img = Rational(1, 2) * (Poly(-f.coeff(2)) - Poly::t() + root * *inv) % f;
  if (!(f.compose(img) % f).is_zero())
    throw std::logic_error("cyclic automorphism does not map roots to roots");
  return img;
}

/// All elements of Aut_Q(E), identity first.
inline std::vector<EtaleAutomorphism> automorphisms(const CubicEtale& e) {
  std::vector<EtaleAutomorphism> out;
  const auto& c = e.components();
  switch (aut_group(e)) {
    case AutGroup::S3: {
      std::vector<std::size_t> perm{0, 1, 2};
      do out.push_back({perm, {Poly::t(), Poly::t(), Poly::t()}});
      while (std::next_permutation(perm.begin(), perm.end()));
      break;
    }
    case AutGroup::C2: {
      out.push_back({{0, 1}, {Poly::t(), Poly::t()}});
      out.push_back({{0, 1}, {Poly::t(), Poly(-c[1].coeff(1)) - Poly::t()}});
      break;
    }
    case AutGroup::C3: {
      Poly s1 = cyclic_generator_image(c[0]);
      Poly s2 = s1.compose(s1) % c[0];
      out.push_back({{0}, {Poly::t()}});
      out.push_back({{0}, {s1}});
      out.push_back({{0}, {s2}});
      break;
    }
    case AutGroup::trivial:
      out.push_back({{0}, {Poly::t()}});
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Trace form and real places

/// Gram of (a, b) -> Tr_{E/Q}(lambda a b): idempotent basis on linear components,
/// power basis 1, t, t^2 on field components.
inline Matrix trace_gram(const CubicEtale& e, const EtaleElement& lambda) {
  Matrix g(3, 3);
  std::size_t offset = 0;
  for (std::size_t c = 0; c < e.size(); ++c) {
    const Poly& comp = e.components()[c];
    const auto n = static_cast<std::size_t>(comp.degree());
    auto ps = power_sums(comp, 2 * n + 1);
    const Poly& mu = lambda.parts[c];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational tr = 0;
        for (std::size_t m = 0; m < mu.coeffs().size(); ++m) tr += mu.coeffs()[m] * ps[i + j + m];
        g(offset + i, offset + j) = tr;
      }
    offset += n;
  }
  return g;
}

struct RealData {
  int real_embeddings = 0;
  bool totally_real = false;
};

inline RealData real_data(const CubicEtale& e) {
  RealData r;
  for (const auto& g : e.components()) r.real_embeddings += count_real_roots(g);
  r.totally_real = r.real_embeddings == 3;
  return r;
}

/// Signs of lambda at the real embeddings, by component and then by increasing root.
inline std::vector<int> real_signs(const CubicEtale& e, const EtaleElement& lambda) {
  std::vector<int> out;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (const auto& iv : isolate_real_roots(e.components()[i]))
      out.push_back(sign_at_root(e.components()[i], iv, lambda.parts[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Norms from quadratic algebras

/// c in N_{A/Q}(A^x), by the Hasse norm theorem: (c, d)_v = 1 at every place.
inline bool is_norm_from_A(const Rational& c, const QuadraticEtale& a) {
  if (c == 0) throw ArgumentError("is_norm_from_A: c must be nonzero");
  if (a.is_split()) return true;
  for (const Place& v : relevant_places({c, Rational(a.d())}))
    if (hilbert_symbol(c, Rational(a.d()), v) != 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Local structure at a prime

/// A place of E above p: the p-adic factor of one component.
struct LocalPlace {
  std::size_t component = 0;
  int degree = 1;
  std::optional<Integer> root;  // for degree-1 factors of nonlinear components, mod p^precision
  Rational local_disc = 1;      // for degree-2 factors: Q_p(sqrt(local_disc)) is the factor
};

struct LocalStructure {
  Integer p;
  unsigned precision = 0;
  std::vector<LocalPlace> places;
};

struct LocalOptions {
  int max_depth = kDefaultHenselDepth;
  bool force_padic = false;  // use Hensel lifting even when p does not divide disc(E)
};

namespace detail {

inline bool divides_disc(const CubicEtale& e, const Integer& p) {
  for (const auto& g : e.components()) {
    Rational d = discriminant(g);
    if (d != 1 && num(d) % p == 0) return true;
  }
  return false;
}

inline std::size_t count_roots(const Poly& g, const Integer& p, const LocalOptions& opt) {
  bool unramified = num(discriminant(g)) % p != 0;
  if (unramified && !opt.force_padic) return roots_mod_p(g, p).size();
  return padic_roots(g, p, 4, opt.max_depth).size();
}

}  // namespace detail

/// Factorization of each component over Q_p. Roots are carried only when precision > 0.
inline LocalStructure local_structure(const CubicEtale& e, const Integer& p, unsigned precision,
                                      const LocalOptions& opt = {}) {
  if (!is_prime(p)) throw ArgumentError("local_structure: " + p.str() + " is not prime");
  LocalStructure out{p, precision, {}};
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Poly& g = e.components()[i];
    if (g.degree() == 1) {
      out.places.push_back({i, 1, std::nullopt, 1});
      continue;
    }
    std::vector<Integer> roots;
    std::size_t nroots;
    if (precision > 0) {
      roots = padic_roots(g, p, precision, opt.max_depth);
      nroots = roots.size();
    } else {
      nroots = detail::count_roots(g, p, opt);
    }
    auto add_roots = [&] {
      if (precision > 0)
        for (const auto& r : roots) out.places.push_back({i, 1, r, 1});
      else
        for (std::size_t k = 0; k < nroots; ++k) out.places.push_back({i, 1, std::nullopt, 1});
    };
    if (g.degree() == 2) {
      if (nroots == 2)
        add_roots();
      else
        out.places.push_back({i, 2, std::nullopt, discriminant(g)});
    } else if (nroots == 3) {
      add_roots();
    } else if (nroots == 1) {
      // disc(f) = disc(quadratic factor) * (value at the root)^2
      add_roots();
      out.places.push_back({i, 2, std::nullopt, discriminant(g)});
    } else {
      out.places.push_back({i, 3, std::nullopt, 1});
    }
  }
  return out;
}

struct LocalSplitting {
  std::vector<int> degrees;  // sorted local factor degrees
  bool ramified = false;     // p divides some component discriminant

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < degrees.size(); ++i) s += (i ? "+" : "") + std::to_string(degrees[i]);
    return s;
  }
  friend bool operator==(const LocalSplitting& a, const LocalSplitting& b) = default;
};

/// Degree pattern of E tensor Q_p: "1+1+1", "1+2" or "3".
inline LocalSplitting local_splitting(const CubicEtale& e, const Integer& p, const LocalOptions& opt = {}) {
  LocalSplitting s;
  for (const auto& pl : local_structure(e, p, 0, opt).places) s.degrees.push_back(pl.degree);
  std::sort(s.degrees.begin(), s.degrees.end());
  s.ramified = detail::divides_disc(e, p);
  return s;
}

namespace detail {

/// Valuation and unit residue of mu(r) for a p-adic root r known modulo p^precision;
/// nullopt when the precision does not determine them.
inline std::optional<LocalUnit> local_unit_at_root(const Poly& mu, const Integer& r, const Integer& p,
                                                   unsigned precision) {
  Integer common = 1;
  for (const auto& c : mu.coeffs()) common = boost::multiprecision::lcm(common, den(c));
  Integer modulus = pow_int(p, precision);
  Integer acc = 0;
  for (auto it = mu.coeffs().rbegin(); it != mu.coeffs().rend(); ++it)
    acc = mod(acc * r + num(*it * Rational(common)), modulus);
  if (acc == 0) return std::nullopt;
  int v = valuation(acc, p);
  if (v + 4 > static_cast<int>(precision)) return std::nullopt;
  Integer unit = acc / pow_int(p, static_cast<unsigned>(v));
  Integer m = p == 2 ? Integer(8) : p;
  int vc = valuation(common, p);
  Integer cunit = common / pow_int(p, static_cast<unsigned>(vc));
  return LocalUnit{v - vc, mod(unit * inverse_mod(cunit, m), m)};
}

inline int symbol_with(const LocalUnit& a, const Rational& d, const Integer& p) {
  return hilbert_local(a, local_unit(d, p), p);
}

}  // namespace detail

/// Class of mu (the part of lambda on the place's component) in
/// F_w^x / N(F_w tensor A_p), as +1 (trivial) or -1. Requires a structure with roots.
inline int local_norm_symbol(const CubicEtale& e, const QuadraticEtale& a, const EtaleElement& lambda,
                             const LocalStructure& ls, const LocalPlace& w) {
  const Integer& p = ls.p;
  const Place v = Place::prime(p);
  const Rational d(a.d());
  if (a.is_split() || is_local_square(d, v)) return 1;
  const Poly& g = e.components()[w.component];
  const Poly& mu = lambda.parts[w.component];
  if (g.degree() == 1) return hilbert_symbol(mu(-g.coeff(0)), d, v);
  if (w.degree == 1) {
    auto lu = detail::local_unit_at_root(mu, *w.root, p, ls.precision);
    if (!lu) throw PrecisionExhausted("insufficient p-adic precision at a root", p.str());
    return detail::symbol_with(*lu, d, p);
  }
  Rational nf = component_norm(g, mu);
  if (w.degree == 3) return hilbert_symbol(nf, d, v);
  // Degree-2 factor: trivial when it is isomorphic to A_p.
  if (square_class(w.local_disc, v) == square_class(d, v)) return 1;
  if (g.degree() == 2) return hilbert_symbol(nf, d, v);
  // Cubic with pattern 1+2: the quadratic factor's norm is N(mu) / mu(r).
  for (const auto& other : ls.places)
    if (other.component == w.component && other.degree == 1) {
      auto lu = detail::local_unit_at_root(mu, *other.root, p, ls.precision);
      if (!lu) throw PrecisionExhausted("insufficient p-adic precision at a root", p.str());
      return hilbert_symbol(nf, d, v) * detail::symbol_with(*lu, d, p);
    }
  throw std::logic_error("local_norm_symbol: missing degree-1 factor");
}

/// Local symbols at every place of E above p, raising precision until all are determined.
inline std::vector<int> local_norm_symbols(const CubicEtale& e, const QuadraticEtale& a, const EtaleElement& lambda,
                                           const Integer& p, const LocalOptions& opt = {}) {
  for (unsigned precision = 48; precision <= 1536; precision *= 2) {
    LocalStructure ls = local_structure(e, p, precision, opt);
    try {
      std::vector<int> out;
      for (const auto& w : ls.places) out.push_back(local_norm_symbol(e, a, lambda, ls, w));
      return out;
    } catch (const PrecisionExhausted&) {
      continue;
    }
  }
  throw PrecisionExhausted("local_norm_symbols: precision cap reached", p.str());
}

/// Primes where the class of lambda in E^x / N(E tensor A) can be nontrivial.
inline std::vector<Integer> norm_relevant_primes(const CubicEtale& e, const QuadraticEtale& a,
                                                 const EtaleElement& lambda) {
  std::vector<Integer> ps{2};
  auto add = [&](const Rational& q) {
    if (q == 0) return;
    auto more = prime_divisors(q);
    ps.insert(ps.end(), more.begin(), more.end());
  };
  add(Rational(a.d()));
  for (std::size_t i = 0; i < e.size(); ++i) {
    add(discriminant(e.components()[i]));
    add(component_norm(e.components()[i], lambda.parts[i]));
    for (const auto& c : lambda.parts[i].coeffs()) add(Rational(den(c)));
  }
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  return ps;
}

/// lambda in N_{E tensor A / E}((E tensor A)^x), decided componentwise by the Hasse norm
/// theorem for the quadratic extensions F(sqrt d) / F.
inline bool is_norm_from_EA(const CubicEtale& e, const QuadraticEtale& a, const EtaleElement& lambda,
                            const LocalOptions& opt = {}) {
  if (a.is_split()) return true;
  // Components containing sqrt(d) split A and are skipped.
  std::vector<bool> skip(e.size(), false);
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Poly& g = e.components()[i];
    if (g.degree() == 2 && is_square(discriminant(g) / Rational(a.d()))) skip[i] = true;
  }
  if (a.d() < 0) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (skip[i]) continue;
      const Poly& g = e.components()[i];
      for (const auto& iv : isolate_real_roots(g))
        if (sign_at_root(g, iv, lambda.parts[i]) < 0) return false;
    }
  }
  for (const Integer& p : norm_relevant_primes(e, a, lambda)) {
    LocalStructure shape = local_structure(e, p, 0, opt);
    auto symbols = local_norm_symbols(e, a, lambda, p, opt);
    for (std::size_t k = 0; k < symbols.size(); ++k)
      if (!skip[shape.places[k].component] && symbols[k] != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Local kernel of N_{E/Q}: E_p^x / N -> Q_p^x / N_{A_p}

/// Order of the kernel at p. Each place w of E above p contributes F_w^x / N(F_w A_p),
/// of order 2 unless A_p splits over F_w; the norm map onto Z/2 is then surjective.
inline int kernel_local_size(const QuadraticEtale& a, const CubicEtale& e, const Integer& p,
                             const LocalOptions& opt = {}) {
  const Place v = Place::prime(p);
  if (a.is_split_at(v)) return 1;
  int order = 1;
  for (const auto& w : local_structure(e, p, 0, opt).places) {
    bool trivial = w.degree == 2 && square_class(w.local_disc, v) == square_class(Rational(a.d()), v);
    if (!trivial) order *= 2;
  }
  return order == 1 ? 1 : order / 2;
}

}  // namespace g2t
