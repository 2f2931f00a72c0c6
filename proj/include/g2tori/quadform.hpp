#pragma once

// Nondegenerate quadratic spaces over Q and their local invariants.
//
// Hasse invariant convention: for a diagonalization <a_1, ..., a_n>,
//   hasse_invariant(Q, v) = prod_{i<j} (a_i, a_j)_v.

#include <utility>
#include <vector>

#include "g2tori/arith.hpp"
#include "g2tori/linalg.hpp"

namespace g2t {

/// Tag selecting global (over Q) rather than local behaviour.
struct Global {};
inline constexpr Global global{};

class QuadraticSpace {
 public:
  /// gram must be symmetric and nonsingular; throws SingularFormError otherwise.
  explicit QuadraticSpace(Matrix gram) : gram_(std::move(gram)) {
    if (!gram_.is_symmetric()) throw ArgumentError("gram matrix is not symmetric");
    det_ = determinant(gram_);
    if (det_ == 0) throw SingularFormError("gram matrix is singular");
  }

  static QuadraticSpace diagonal(const std::vector<Rational>& entries) {
    return QuadraticSpace(Matrix::diagonal(entries));
  }

  std::size_t dimension() const { return gram_.rows(); }
  const Matrix& gram() const { return gram_; }
  const Rational& determinant_value() const { return det_; }

  /// Q(v) = v^T G v.
  Rational evaluate(std::span<const Rational> v) const {
    auto gv = gram_.apply(v);
    Rational acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * gv[i];
    return acc;
  }

 private:
  Matrix gram_;
  Rational det_;
};

struct Diagonalization {
  std::vector<Rational> diagonal;
  Matrix basis;  // columns: new basis vectors; basis^T * gram * basis = diag(diagonal)
};

/// Symmetric Gaussian elimination; the congruence witness is checked before returning.
inline Diagonalization diagonalize(const QuadraticSpace& q) {
  const std::size_t n = q.dimension();
  Matrix w = q.gram();
  Matrix b = Matrix::identity(n);

  auto swap_index = [&](std::size_t i, std::size_t j) {
    for (std::size_t t = 0; t < n; ++t) std::swap(w(i, t), w(j, t));
    for (std::size_t t = 0; t < n; ++t) std::swap(w(t, i), w(t, j));
    for (std::size_t t = 0; t < n; ++t) std::swap(b(t, i), b(t, j));
  };
  // basis vector i += f * basis vector j
  auto add_multiple = [&](std::size_t i, std::size_t j, const Rational& f) {
    for (std::size_t t = 0; t < n; ++t) w(i, t) += f * w(j, t);
    for (std::size_t t = 0; t < n; ++t) w(t, i) += f * w(t, j);
    for (std::size_t t = 0; t < n; ++t) b(t, i) += f * b(t, j);
  };

  for (std::size_t k = 0; k < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && w(j, j) == 0) ++j;
      if (j < n) {
        swap_index(k, j);
      } else {
        j = k + 1;
        while (j < n && w(k, j) == 0) ++j;
        if (j == n) throw SingularFormError("diagonalize: singular gram matrix");
        add_multiple(k, j, 1);
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      add_multiple(i, k, -w(i, k) / w(k, k));
    }
  }

  Diagonalization out;
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(w(i, i));
  out.basis = std::move(b);
  if (out.basis.transpose() * q.gram() * out.basis != Matrix::diagonal(out.diagonal))
    throw std::logic_error("diagonalize: congruence witness failed verification");
  return out;
}

namespace detail {

inline Rational product(const std::vector<Rational>& xs) {
  Rational p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

inline int hasse_of_diagonal(const std::vector<Rational>& a, const Place& v) {
  int h = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) h *= hilbert_symbol(a[i], a[j], v);
  return h;
}

inline std::pair<int, int> signature_of_diagonal(const std::vector<Rational>& a) {
  int pos = 0, neg = 0;
  for (const auto& x : a) (x > 0 ? pos : neg)++;
  return {pos, neg};
}

/// Serre's local isotropy criteria on a diagonal form.
inline bool isotropic_diagonal(const std::vector<Rational>& a, const Place& v) {
  if (v.is_infinite()) {
    auto [pos, neg] = signature_of_diagonal(a);
    return pos > 0 && neg > 0;
  }
  const Rational d = product(a);
  const int eps = hasse_of_diagonal(a, v);
  switch (a.size()) {
    case 0:
    case 1:
      return false;
    case 2:
      return is_local_square(-d, v);
    case 3:
      return eps == hilbert_symbol(-1, -d, v);
    case 4:
      return !is_local_square(d, v) || eps == hilbert_symbol(-1, -1, v);
    default:
      return true;
  }
}

}  // namespace detail

inline SquareClass discriminant(const QuadraticSpace& q, const Place& v) {
  return square_class(q.determinant_value(), v);
}

/// Global discriminant as the signed squarefree representative of det(gram).
inline Integer discriminant(const QuadraticSpace& q, Global) { return squarefree_part(q.determinant_value()); }

inline int hasse_invariant(const QuadraticSpace& q, const Place& v) {
  return detail::hasse_of_diagonal(diagonalize(q).diagonal, v);
}

inline std::pair<int, int> signature(const QuadraticSpace& q) {
  return detail::signature_of_diagonal(diagonalize(q).diagonal);
}

inline bool is_isotropic(const QuadraticSpace& q, const Place& v) {
  return detail::isotropic_diagonal(diagonalize(q).diagonal, v);
}

inline bool equivalent(const QuadraticSpace& a, const QuadraticSpace& b, const Place& v) {
  if (a.dimension() != b.dimension()) return false;
  auto da = diagonalize(a).diagonal, db = diagonalize(b).diagonal;
  if (v.is_infinite()) return detail::signature_of_diagonal(da) == detail::signature_of_diagonal(db);
  return square_class(a.determinant_value(), v) == square_class(b.determinant_value(), v) &&
         detail::hasse_of_diagonal(da, v) == detail::hasse_of_diagonal(db, v);
}

/// Finite places at which two forms can differ: 2 and every prime appearing in
/// either diagonalization (a superset of the primes of 2 det(a) det(b) for integral forms).
inline std::vector<Place> relevant_places(const QuadraticSpace& a, const QuadraticSpace& b) {
  auto da = diagonalize(a).diagonal, db = diagonalize(b).diagonal;
  da.insert(da.end(), db.begin(), db.end());
  return relevant_places(da);
}

/// Hasse-Minkowski: equivalence at infinity and at every relevant prime.
inline bool equivalent(const QuadraticSpace& a, const QuadraticSpace& b, Global) {
  if (a.dimension() != b.dimension()) return false;
  if (!is_square(a.determinant_value() / b.determinant_value())) return false;
  for (const Place& v : relevant_places(a, b))
    if (!equivalent(a, b, v)) return false;
  return true;
}

/// Whether q represents c over Q_v, decided as isotropy of q + <-c>.
inline bool represents(const QuadraticSpace& q, const Rational& c, const Place& v) {
  if (c == 0) throw ArgumentError("represents: c must be nonzero");
  auto a = diagonalize(q).diagonal;
  a.push_back(-c);
  return detail::isotropic_diagonal(a, v);
}

}  // namespace g2t
