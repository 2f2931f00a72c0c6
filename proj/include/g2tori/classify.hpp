#pragma once

// Isomorphism classes of Cayley-Dickson algebras over C, R, Q_p and Q, and the
// embedding test for quadratic etale algebras in a rank-8 algebra.
//
// A CD algebra is determined by its rank and the isometry class of its norm form,
// so classes are counted by enumerating parameter lists drawn from square-class
// representatives and grouping them by norm-form equivalence.

#include <string>
#include <vector>

#include "g2tori/arith.hpp"
#include "g2tori/cd.hpp"
#include "g2tori/quadform.hpp"

namespace g2t {

class FieldDescriptor {
 public:
  enum class Kind { complex, real, padic, rational };

  static FieldDescriptor complex() { return FieldDescriptor(Kind::complex, 0); }
  static FieldDescriptor real() { return FieldDescriptor(Kind::real, 0); }
  static FieldDescriptor rational() { return FieldDescriptor(Kind::rational, 0); }
  static FieldDescriptor padic(const Integer& p) {
    if (!is_prime(p)) throw ArgumentError("p-adic field needs a prime, got " + p.str());
    return FieldDescriptor(Kind::padic, p);
  }

  /// "c", "r", "q", or "q<p>" such as "q5".
  static FieldDescriptor parse(const std::string& s) {
    if (s == "c" || s == "C") return complex();
    if (s == "r" || s == "R") return real();
    if (s == "q" || s == "Q") return rational();
    if (s.size() > 1 && (s[0] == 'q' || s[0] == 'Q')) return padic(parse_integer(s.substr(1)));
    throw ArgumentError("unknown field '" + s + "' (expected c, r, q or q<p>)");
  }

  Kind kind() const { return kind_; }
  const Integer& p() const { return p_; }

  std::string to_string() const {
    switch (kind_) {
      case Kind::complex: return "C";
      case Kind::real: return "R";
      case Kind::rational: return "Q";
      case Kind::padic: return "Q" + p_.str();
    }
    return "?";
  }

 private:
  FieldDescriptor(Kind k, Integer p) : kind_(k), p_(std::move(p)) {}
  Kind kind_;
  Integer p_;
};

inline bool cd_isomorphic(const CDAlgebra& a, const CDAlgebra& b, const FieldDescriptor& field) {
  if (a.rank() != b.rank()) return false;
  switch (field.kind()) {
    case FieldDescriptor::Kind::complex:
      return true;
    case FieldDescriptor::Kind::real:
      return signature(norm_form(a)) == signature(norm_form(b));
    case FieldDescriptor::Kind::padic:
      return equivalent(norm_form(a), norm_form(b), Place::prime(field.p()));
    case FieldDescriptor::Kind::rational:
      return equivalent(norm_form(a), norm_form(b), global);
  }
  return false;
}

/// 2^{1+e+f}: rank-2 classes over a local field of residue characteristic 2 with
/// ramification index e and residue degree f over Q_2.
inline Integer dyadic_rank2_count(unsigned e, unsigned f) { return pow_int(Integer(2), 1 + e + f); }

struct CDClassCount {
  std::size_t count = 0;
  std::vector<std::vector<Rational>> representatives;
};

namespace detail {

inline unsigned rank_exponent(std::size_t rank) {
  switch (rank) {
    case 2: return 1;
    case 4: return 2;
    case 8: return 3;
    default: throw ArgumentError("rank must be 2, 4 or 8");
  }
}

/// Candidate parameter values: one per square class (negated, so that rank-2
/// representatives read delta in {-1, -u, -p, -up}), or a small box over Q.
inline std::vector<Rational> candidate_values(const FieldDescriptor& field) {
  std::vector<Rational> out;
  switch (field.kind()) {
    case FieldDescriptor::Kind::complex:
      return {-1};
    case FieldDescriptor::Kind::real:
      return {-1, 1};
    case FieldDescriptor::Kind::padic:
      for (const auto& r : square_class_representatives(Place::prime(field.p()))) out.push_back(Rational(-r));
      return out;
    case FieldDescriptor::Kind::rational:
      return {-1, 1, -2, 2, -3, 3};
  }
  return out;
}

}  // namespace detail

/// Classes of CD algebras of the given rank, found by exhaustive grouping of candidate
/// parameter lists. Over Q only rank 8 is supported (finitely many classes).
inline CDClassCount count_cd_classes(const FieldDescriptor& field, std::size_t rank) {
  const unsigned n = detail::rank_exponent(rank);
  if (field.kind() == FieldDescriptor::Kind::rational && rank != 8)
    throw ArgumentError("over Q only rank 8 has finitely many classes");
  const auto values = detail::candidate_values(field);

  CDClassCount out;
  std::vector<CDAlgebra> reps;
  std::vector<std::size_t> idx(n, 0);
  for (;;) {
    std::vector<Rational> params;
    for (auto i : idx) params.push_back(values[i]);
    CDAlgebra cand(params);
    bool fresh = true;
    for (const auto& r : reps)
      if (cd_isomorphic(r, cand, field)) {
        fresh = false;
        break;
      }
    if (fresh) {
      reps.push_back(cand);
      out.representatives.push_back(params);
    }
    std::size_t k = 0;
    while (k < n && ++idx[k] == values.size()) idx[k++] = 0;
    if (k == n) break;
  }
  out.count = reps.size();
  return out;
}

/// Whether Q(sqrt d) embeds in the rank-8 algebra O: some traceless v has v^2 = d s^2,
/// i.e. the traceless norm form represents -d. Decided place by place; the rank-7 form is
/// universal at every finite place, so only the real place can obstruct.
inline bool embeds_quadratic(const Integer& d, const CDAlgebra& o) {
  if (d == 0 || !is_squarefree(d)) throw ArgumentError("embeds_quadratic: d must be squarefree and nonzero");
  if (o.rank() != 8) throw ArgumentError("embeds_quadratic: algebra must have rank 8");
  QuadraticSpace q = norm_form(o, NormRestriction::traceless);
  std::vector<Rational> values = diagonalize(q).diagonal;
  values.push_back(Rational(d));
  for (const Place& v : relevant_places(values))
    if (!represents(q, Rational(-d), v)) return false;
  return true;
}

/// Definite at the real place: the norm form is positive definite.
inline bool is_definite(const CDAlgebra& o) {
  auto [pos, neg] = signature(norm_form(o));
  return neg == 0;
}

}  // namespace g2t
