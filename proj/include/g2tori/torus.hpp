#pragma once

// Maximal tori of Aut(O) through their data (A, E, lambda): validation against the
// discriminant, real-place and kernel conditions, renormalization, equivalence of
// data, local orbit counts, and the explicit torus Phi(A_x^1 x A_x^1) for E = Q^3.
//
// Normalizations: under `thm` the Hermitian form Tr(lambda x sigma(y)) must have
// discriminant N(lambda) delta_E in N_A; under `cor` lambda itself lies in the kernel
// of N_{E/Q} into Q^x / N_A. Multiplying lambda by delta_E converts between them.

#include <optional>
#include <string>
#include <vector>

#include "g2tori/cd.hpp"
#include "g2tori/classify.hpp"
#include "g2tori/etale.hpp"
#include "g2tori/g2.hpp"

namespace g2t {

enum class Normalization { thm, cor };

inline std::string to_string(Normalization n) { return n == Normalization::thm ? "thm" : "cor"; }

inline Normalization parse_normalization(const std::string& s) {
  if (s == "thm") return Normalization::thm;
  if (s == "cor") return Normalization::cor;
  throw ArgumentError("normalization must be 'thm' or 'cor', got '" + s + "'");
}

struct TorusDatum {
  CDAlgebra octonions;
  QuadraticEtale a;
  CubicEtale e;
  EtaleElement lambda;
  Normalization normalization = Normalization::thm;
};

struct Condition {
  std::string name;  // embeds, discriminant, kernel, real-places
  bool passed = false;
  std::string detail;
};

enum class VerdictStatus { accepted, rejected, indeterminate };

inline std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::accepted: return "accepted";
    case VerdictStatus::rejected: return "rejected";
    case VerdictStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

struct Verdict {
  VerdictStatus status = VerdictStatus::rejected;
  std::vector<Condition> reasons;
  std::string indeterminate_prime;  // set when status is indeterminate

  bool accepted() const { return status == VerdictStatus::accepted; }
};

/// Which bullet of the real-place case analysis a datum falls under.
enum class RealPlaceCase { definite, cm_totally_real, cm_not_totally_real, a_totally_real };

inline std::string to_string(RealPlaceCase c) {
  switch (c) {
    case RealPlaceCase::definite: return "definite";
    case RealPlaceCase::cm_totally_real: return "indefinite, A CM, E totally real";
    case RealPlaceCase::cm_not_totally_real: return "indefinite, A CM, E not totally real";
    case RealPlaceCase::a_totally_real: return "indefinite, A totally real";
  }
  return "?";
}

inline RealPlaceCase real_place_case(const TorusDatum& t) {
  if (is_definite(t.octonions)) return RealPlaceCase::definite;
  if (!t.a.is_cm()) return RealPlaceCase::a_totally_real;
  return real_data(t.e).totally_real ? RealPlaceCase::cm_totally_real : RealPlaceCase::cm_not_totally_real;
}

namespace detail {

inline std::string signs_to_string(const std::vector<int>& s) {
  std::string out;
  for (int v : s) out += v > 0 ? '+' : '-';
  return out;
}

inline Condition real_places_condition(const TorusDatum& t) {
  const auto signs = real_signs(t.e, t.lambda);
  const bool totally_real = real_data(t.e).totally_real;
  int positive = 0;
  for (int s : signs) positive += s > 0 ? 1 : 0;
  Condition c{"real-places", false, ""};
  switch (real_place_case(t)) {
    case RealPlaceCase::definite:
      c.passed = t.a.is_cm() && totally_real && positive == 3;
      c.detail = "O definite: need A CM, E totally real, lambda totally positive; signs " + signs_to_string(signs);
      break;
    case RealPlaceCase::cm_totally_real:
      c.passed = positive == 1;
      c.detail = "O split, A CM, E totally real: need exactly one positive sign; signs " + signs_to_string(signs);
      break;
    case RealPlaceCase::cm_not_totally_real: {
      const int want = t.normalization == Normalization::thm ? -1 : 1;
      c.passed = signs.size() == 1 && signs[0] == want;
      c.detail = std::string("O split, A CM, E not totally real: need lambda ") + (want < 0 ? "negative" : "positive") +
                 " at the real place; signs " + signs_to_string(signs);
      break;
    }
    case RealPlaceCase::a_totally_real:
      c.passed = true;
      c.detail = "A totally real: no sign condition";
      break;
  }
  return c;
}

}  // namespace detail

inline Verdict validate(const TorusDatum& t) {
  Verdict v;
  try {
    const bool emb = embeds_quadratic(t.a.d(), t.octonions);
    v.reasons.push_back({"embeds", emb, "Q(sqrt " + t.a.d().str() + (emb ? ") embeds" : ") does not embed")});
    const Rational n = norm_E(t.e, t.lambda);
    const Integer delta = discriminant_E(t.e);
    if (t.normalization == Normalization::thm) {
      const Rational disc = n * Rational(delta);
      const bool ok = is_norm_from_A(disc, t.a);
      v.reasons.push_back({"discriminant", ok,
                           "N(lambda) delta_E = " + to_string(disc) + (ok ? " is" : " is not") + " a norm from A"});
    } else {
      const bool ok = is_norm_from_A(n, t.a);
      v.reasons.push_back(
          {"kernel", ok, "N(lambda) = " + to_string(n) + (ok ? " is" : " is not") + " a norm from A"});
    }
    v.reasons.push_back(detail::real_places_condition(t));
  } catch (const PrecisionExhausted& ex) {
    v.status = VerdictStatus::indeterminate;
    v.indeterminate_prime = ex.prime();
    v.reasons.push_back({"indeterminate", false, ex.what()});
    return v;
  } catch (const Indeterminate& ex) {
    v.status = VerdictStatus::indeterminate;
    v.reasons.push_back({"indeterminate", false, ex.what()});
    return v;
  }
  bool all = true;
  for (const auto& c : v.reasons) all = all && c.passed;
  v.status = all ? VerdictStatus::accepted : VerdictStatus::rejected;
  return v;
}

/// lambda -> delta_E lambda with the normalization tag swapped. Applying it twice multiplies
/// lambda by delta_E^2, a norm from E tensor A, so the class is unchanged.
inline TorusDatum normalize(const TorusDatum& t) {
  TorusDatum out = t;
  const Rational delta(discriminant_E(t.e));
  out.lambda = multiply(t.e, t.lambda, t.e.scalar(delta));
  out.normalization = t.normalization == Normalization::thm ? Normalization::cor : Normalization::thm;
  return out;
}

namespace detail {

/// Witnesses that two cubic fields are not isomorphic: discriminants in different square
/// classes, or different splitting at a small prime unramified in both.
inline bool cubic_fields_differ(const Poly& g1, const Poly& g2) {
  const Rational d1 = discriminant(g1), d2 = discriminant(g2);
  if (!is_square(d1 / d2)) return true;
  for (int p = 2; p < 500; ++p) {
    if (!is_prime(Integer(p)) || num(d1) % p == 0 || num(d2) % p == 0) continue;
    if (roots_mod_p(g1, p).size() != roots_mod_p(g2, p).size()) return true;
  }
  return false;
}

/// Isomorphism E1 -> E2 transporting elements, when one is found: components of equal
/// degree are matched in order; quadratic fields are matched through the ratio of their
/// discriminants; cubic fields must be given by the same polynomial unless shown to differ.
inline std::optional<EtaleAutomorphism> etale_isomorphism(const CubicEtale& e1, const CubicEtale& e2) {
  if (e1.size() != e2.size()) return std::nullopt;
  EtaleAutomorphism w;
  for (std::size_t i = 0; i < e1.size(); ++i) {
    const Poly& g1 = e1.components()[i];
    const Poly& g2 = e2.components()[i];
    if (g1.degree() != g2.degree()) return std::nullopt;
    w.source.push_back(i);
    if (g1.degree() == 1) {
      w.image.push_back(Poly::t());
    } else if (g1.degree() == 2) {
      // theta_2 = (-b2 + q (2 theta_1 + b1)) / 2 with q^2 = D2 / D1.
      Rational ratio = discriminant(g2) / discriminant(g1);
      if (!is_square(ratio)) return std::nullopt;
      Rational q(boost::multiprecision::sqrt(num(ratio)), boost::multiprecision::sqrt(den(ratio)));
      w.image.push_back(Rational(1, 2) * (Poly(-g2.coeff(1)) + q * (Rational(2) * Poly::t() + Poly(g1.coeff(1)))));
    } else {
      if (!(g1 == g2)) {
        if (cubic_fields_differ(g1, g2)) return std::nullopt;
        throw Indeterminate("cubic fields given by different polynomials are not compared");
      }
      w.image.push_back(Poly::t());
    }
  }
  return w;
}

}  // namespace detail

/// Whether two data describe the same conjugacy class: same A, isomorphic E, and
/// lambda_1 / w(lambda_2) in N_{E tensor A / E} for some w in Aut(E).
inline bool equivalent(const TorusDatum& t1, const TorusDatum& t2, const LocalOptions& opt = {}) {
  if (!(t1.a == t2.a)) return false;
  auto iso = detail::etale_isomorphism(t1.e, t2.e);
  if (!iso) return false;
  const CubicEtale& e = t1.e;
  // Bring both into the same normalization before comparing classes.
  TorusDatum s2 = t2;
  if (t2.normalization != t1.normalization) s2 = normalize(t2);
  // Transport lambda_2 into E_1: component i of E_1 receives lambda_2 composed with the map
  // sending the generator of E_2's component to an expression in E_1's generator.
  std::vector<Poly> moved;
  for (std::size_t i = 0; i < e.size(); ++i)
    moved.push_back(s2.lambda.parts[i].compose(iso->image[i]) % e.components()[i]);
  EtaleElement l2 = e.element(std::move(moved));
  EtaleElement inv1 = inverse(e, t1.lambda);
  for (const auto& w : automorphisms(e)) {
    EtaleElement ratio = multiply(e, inv1, apply(e, w, l2));
    if (is_norm_from_EA(e, t1.a, ratio, opt)) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Local orbit counts

struct OrbitTable {
  int kernel_size = 1;
  int orbit_count = 1;
};

/// Kernel size and number of Aut(E)-orbits on it at p, by the case analysis on Aut(E)
/// and the splitting of E at p.
inline OrbitTable orbit_table(const QuadraticEtale& a, const CubicEtale& e, const Integer& p,
                              const LocalOptions& opt = {}) {
  const int kernel = kernel_local_size(a, e, p, opt);
  if (kernel == 1) return {1, 1};
  const std::string pattern = local_splitting(e, p, opt).to_string();
  switch (aut_group(e)) {
    case AutGroup::S3:
    case AutGroup::C3:
      // Trivial element and one orbit of the three non-trivial ones.
      if (pattern != "1+1+1") break;
      return {kernel, 2};
    case AutGroup::C2:
      // The swap fixes one of the three non-trivial elements of the split kernel.
      if (pattern == "1+1+1") return {kernel, 3};
      return {kernel, kernel};
    case AutGroup::trivial:
      return {kernel, kernel};
  }
  throw std::logic_error("orbit_table: unexpected splitting " + pattern + " for Aut = " + to_string(aut_group(e)));
}

// ---------------------------------------------------------------------------
// The split torus

/// Phi restricted to E = Q^3: the point (a, b) of (A^1)^2 is the element
/// (a, b, sigma(a) sigma(b)) of E tensor A = A^3.
class SplitTorus {
 public:
  SplitTorus(SubalgebraFrame frame, const QuadraticEtale& a, const CubicEtale& e) : frame_(std::move(frame)) {
    detail::require_full_frame(frame_);
    frame_subalgebra(frame_);
    if (aut_group(e) != AutGroup::S3) throw UnsupportedError("explicit tori are realized only for E = Q^3");
    nx_ = norm(frame_.x);
    if (squarefree_part(-nx_) != a.d()) throw PreconditionError("A is not the subalgebra A_x of the frame");
  }

  const Rational& norm_x() const { return nx_; }
  OctonionMap point(const AxValue& a, const AxValue& b) const { return phi(frame_, a, b); }

  std::vector<AxValue> coordinates(const AxValue& a, const AxValue& b) const {
    return {a, b, ax_multiply(ax_conjugate(a), ax_conjugate(b), nx_)};
  }

  /// x sigma(x) = 1 coordinatewise and the product of the coordinates is 1.
  bool satisfies_torus_equations(const std::vector<AxValue>& c) const {
    for (const auto& v : c)
      if (!(ax_multiply(v, ax_conjugate(v), nx_) == AxValue{1, 0})) return false;
    return ax_multiply(ax_multiply(c[0], c[1], nx_), c[2], nx_) == AxValue{1, 0};
  }

 private:
  SubalgebraFrame frame_;
  Rational nx_;
};

}  // namespace g2t
