#pragma once

// Cayley-Dickson algebras over Q of rank 1, 2, 4 and 8.
//
// B = A + A with
//   [x1, x2] [y1, y2] = [x1 y1 + delta s(y2) x2,  y2 x1 + x2 s(y1)],
//   s([x1, x2]) = [s(x1), -x2].
// Basis index bit j is set iff the j-th doubling contributes its generator,
// so e_1, e_2, e_4 are the generators and e_3 = e_1 e_2, e_5 = e_1 e_4, ...

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "g2tori/arith.hpp"
#include "g2tori/linalg.hpp"
#include "g2tori/quadform.hpp"

namespace g2t {

namespace detail {

inline std::vector<Rational> cd_conjugate_coords(std::vector<Rational> x) {
  for (std::size_t i = 1; i < x.size(); ++i) x[i] = -x[i];
  return x;
}

/// Product straight from the doubling formula; used to build and audit the cached table.
inline std::vector<Rational> cd_recursive_multiply(std::span<const Rational> x, std::span<const Rational> y,
                                                   std::span<const Rational> params) {
  if (params.empty()) return {x[0] * y[0]};
  const std::size_t half = x.size() / 2;
  const Rational& delta = params.back();
  auto sub = params.first(params.size() - 1);
  auto x1 = x.first(half), x2 = x.subspan(half), y1 = y.first(half), y2 = y.subspan(half);
  auto cy1 = cd_conjugate_coords({y1.begin(), y1.end()});
  auto cy2 = cd_conjugate_coords({y2.begin(), y2.end()});

  auto a = cd_recursive_multiply(x1, y1, sub);
  auto b = cd_recursive_multiply(cy2, x2, sub);
  auto c = cd_recursive_multiply(y2, x1, sub);
  auto d = cd_recursive_multiply(x2, cy1, sub);
  std::vector<Rational> out(x.size());
  for (std::size_t i = 0; i < half; ++i) {
    out[i] = a[i] + delta * b[i];
    out[half + i] = c[i] + d[i];
  }
  return out;
}

struct CDTable {
  std::vector<Rational> params;
  std::size_t dim = 1;
  // e_i e_j = coeff[i][j] * e_{index[i][j]}
  std::vector<std::vector<Rational>> coeff;
  std::vector<std::vector<std::size_t>> index;
  std::vector<Rational> basis_norm;  // N(e_i)
};

}  // namespace detail

class CDElement;

/// Immutable handle to a Cayley-Dickson algebra with memoized structure constants.
class CDAlgebra {
 public:
  /// params = (delta_1, ..., delta_n), n <= 3, all nonzero.
  explicit CDAlgebra(std::vector<Rational> params) {
    if (params.size() > 3) throw UnsupportedError("Cayley-Dickson rank above 8 is not supported");
    for (const auto& d : params)
      if (d == 0) throw ArgumentError("Cayley-Dickson parameter must be nonzero");
    auto t = std::make_shared<detail::CDTable>();
    t->params = std::move(params);
    t->dim = std::size_t{1} << t->params.size();
    const std::size_t n = t->dim;
    t->coeff.assign(n, std::vector<Rational>(n));
    t->index.assign(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> ei(n), ej(n);
        ei[i] = 1;
        ej[j] = 1;
        auto prod = detail::cd_recursive_multiply(ei, ej, t->params);
        std::size_t hits = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (prod[k] != 0) {
            t->coeff[i][j] = prod[k];
            t->index[i][j] = k;
            ++hits;
          }
        if (hits != 1) throw std::logic_error("basis product is not a monomial");
      }
    t->basis_norm.resize(n);
    // N(e_i) = e_i s(e_i); s(e_i) = -e_i for i > 0.
    for (std::size_t i = 0; i < n; ++i)
      t->basis_norm[i] = i == 0 ? Rational(1) : Rational(-t->coeff[i][i]);
    table_ = std::move(t);
  }

  /// Standard definite octonions, parameters (-1, -1, -1).
  static CDAlgebra octonions() { return CDAlgebra({-1, -1, -1}); }
  /// Split octonions, parameters (1, -1, -1).
  static CDAlgebra split_octonions() { return CDAlgebra({1, -1, -1}); }

  std::size_t dimension() const { return table_->dim; }
  std::size_t rank() const { return table_->dim; }
  const std::vector<Rational>& params() const { return table_->params; }
  const Rational& structure_coefficient(std::size_t i, std::size_t j) const { return table_->coeff[i][j]; }
  std::size_t structure_index(std::size_t i, std::size_t j) const { return table_->index[i][j]; }
  const Rational& basis_norm(std::size_t i) const { return table_->basis_norm[i]; }

  CDElement zero() const;
  CDElement one() const;
  CDElement basis(std::size_t i) const;
  CDElement element(std::vector<Rational> coords) const;
  CDElement scalar(const Rational& c) const;

  friend bool operator==(const CDAlgebra& a, const CDAlgebra& b) {
    return a.table_ == b.table_ || a.table_->params == b.table_->params;
  }

  std::string describe() const {
    std::string s = "(";
    for (std::size_t i = 0; i < params().size(); ++i) s += (i ? "," : "") + to_string(params()[i]);
    return s + ")";
  }

 private:
  std::shared_ptr<const detail::CDTable> table_;
};

class CDElement {
 public:
  CDElement(CDAlgebra algebra, std::vector<Rational> coords) : alg_(std::move(algebra)), c_(std::move(coords)) {
    if (c_.size() != alg_.dimension()) throw ArgumentError("element has wrong number of coordinates");
  }

  const CDAlgebra& algebra() const { return alg_; }
  const std::vector<Rational>& coords() const { return c_; }
  const Rational& operator[](std::size_t i) const { return c_[i]; }
  std::size_t size() const { return c_.size(); }

  const Rational& scalar_part() const { return c_[0]; }
  bool is_scalar() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  bool is_zero() const { return is_scalar() && c_[0] == 0; }

  friend CDElement operator+(const CDElement& a, const CDElement& b) {
    check_same(a, b);
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c_[i];
    return {a.alg_, std::move(c)};
  }
  friend CDElement operator-(const CDElement& a, const CDElement& b) {
    check_same(a, b);
    auto c = a.c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c_[i];
    return {a.alg_, std::move(c)};
  }
  friend CDElement operator-(const CDElement& a) {
    auto c = a.c_;
    for (auto& x : c) x = -x;
    return {a.alg_, std::move(c)};
  }
  friend CDElement operator*(const Rational& s, const CDElement& a) {
    auto c = a.c_;
    for (auto& x : c) x *= s;
    return {a.alg_, std::move(c)};
  }
  friend CDElement operator*(const CDElement& a, const CDElement& b) {
    check_same(a, b);
    const CDAlgebra& alg = a.alg_;
    const std::size_t n = alg.dimension();
    std::vector<Rational> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b.c_[j] == 0) continue;
        c[alg.structure_index(i, j)] += alg.structure_coefficient(i, j) * a.c_[i] * b.c_[j];
      }
    }
    return {alg, std::move(c)};
  }
  friend bool operator==(const CDElement& a, const CDElement& b) { return a.alg_ == b.alg_ && a.c_ == b.c_; }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < c_.size(); ++i) s += (i ? "," : "") + g2t::to_string(c_[i]);
    return s + "]";
  }

 private:
  static void check_same(const CDElement& a, const CDElement& b) {
    if (!(a.alg_ == b.alg_)) throw ArgumentError("elements belong to different algebras");
  }

  CDAlgebra alg_;
  std::vector<Rational> c_;
};

inline CDElement CDAlgebra::zero() const { return {*this, std::vector<Rational>(dimension())}; }
inline CDElement CDAlgebra::one() const { return basis(0); }
inline CDElement CDAlgebra::basis(std::size_t i) const {
  if (i >= dimension()) throw ArgumentError("basis index out of range");
  std::vector<Rational> c(dimension());
  c[i] = 1;
  return {*this, std::move(c)};
}
inline CDElement CDAlgebra::element(std::vector<Rational> coords) const { return {*this, std::move(coords)}; }
inline CDElement CDAlgebra::scalar(const Rational& s) const {
  std::vector<Rational> c(dimension());
  c[0] = s;
  return {*this, std::move(c)};
}

inline CDElement multiply(const CDElement& a, const CDElement& b) { return a * b; }

inline CDElement conjugate(const CDElement& a) {
  return {a.algebra(), detail::cd_conjugate_coords(a.coords())};
}

/// N(a) = a s(a), which always lies in Q 1.
inline Rational norm(const CDElement& a) {
  CDElement p = a * conjugate(a);
  if (!p.is_scalar()) throw std::logic_error("norm: a s(a) is not a scalar");
  return p.scalar_part();
}

/// (a, b) = 1/2 (a s(b) + b s(a)), via the diagonal Gram matrix of the standard basis.
inline Rational bilinear(const CDElement& a, const CDElement& b) {
  if (!(a.algebra() == b.algebra())) throw ArgumentError("elements belong to different algebras");
  Rational acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i] * a.algebra().basis_norm(i);
  return acc;
}

inline CDElement inverse(const CDElement& a) {
  Rational n = norm(a);
  if (n == 0) throw IsotropicElementError("inverse: element " + a.to_string() + " has norm zero");
  return Rational(1 / n) * conjugate(a);
}

// ---------------------------------------------------------------------------
// Structural predicates, checked exhaustively on the basis.

inline bool is_commutative(const CDAlgebra& b) {
  for (std::size_t i = 0; i < b.dimension(); ++i)
    for (std::size_t j = i + 1; j < b.dimension(); ++j)
      if (b.basis(i) * b.basis(j) != b.basis(j) * b.basis(i)) return false;
  return true;
}

inline bool is_associative(const CDAlgebra& b) {
  const std::size_t n = b.dimension();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        auto ei = b.basis(i), ej = b.basis(j), ek = b.basis(k);
        if ((ei * ej) * ek != ei * (ej * ek)) return false;
      }
  return true;
}

/// x(xy) = (xx)y and (yx)x = y(xx) for x ranging over basis vectors and sums of two
/// basis vectors, y over the basis. Alternativity is not linear in x, so the sums matter.
inline bool is_alternative(const CDAlgebra& b) {
  const std::size_t n = b.dimension();
  std::vector<CDElement> xs;
  for (std::size_t i = 0; i < n; ++i) {
    xs.push_back(b.basis(i));
    for (std::size_t j = i + 1; j < n; ++j) xs.push_back(b.basis(i) + b.basis(j));
  }
  for (const auto& x : xs) {
    CDElement xx = x * x;
    for (std::size_t k = 0; k < n; ++k) {
      auto y = b.basis(k);
      if (x * (x * y) != xx * y) return false;
      if ((y * x) * x != y * xx) return false;
    }
  }
  return true;
}

enum class NormRestriction { all, traceless };

/// Gram matrix of the polarized norm in the standard basis (basis 1..n-1 when traceless).
inline QuadraticSpace norm_form(const CDAlgebra& b, NormRestriction restrict = NormRestriction::all) {
  const std::size_t start = restrict == NormRestriction::traceless ? 1 : 0;
  const std::size_t n = b.dimension() - start;
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = bilinear(b.basis(i + start), b.basis(j + start));
  return QuadraticSpace(std::move(g));
}

// ---------------------------------------------------------------------------
// Generated subalgebras A_x, A_{x,y}, A_{x,y,z}.

struct SubalgebraFrame {
  CDElement x;
  std::optional<CDElement> y;
  std::optional<CDElement> z;
};

struct FrameData {
  std::vector<CDElement> ax_basis;        // {1, x}
  std::vector<CDElement> axy_basis;       // {1, x, y, xy}                       (y given)
  std::vector<CDElement> ax_perp_basis;   // {y, xy, z, xz, yz, x(yz)} truncated to what is given
  std::vector<CDElement> axy_perp_basis;  // {z, xz, yz, x(yz)}                   (z given)
  std::vector<CDElement> derived_basis;   // {1, x, y, xy, z, xz, yz, x(yz)}     truncated
};

namespace detail {

inline void require_orthogonal(const CDElement& v, const CDElement& w, const std::string& vn, const std::string& wn) {
  if (bilinear(v, w) != 0) throw PreconditionError("frame: " + vn + " is not orthogonal to " + wn);
}

inline void require_nonisotropic(const CDElement& v, const std::string& vn) {
  if (norm(v) == 0) throw PreconditionError("frame: N(" + vn + ") is zero");
}

}  // namespace detail

/// Validates the frame and returns the bases it induces.
inline FrameData frame_subalgebra(const SubalgebraFrame& f) {
  const CDAlgebra& alg = f.x.algebra();
  const CDElement one = alg.one();
  const CDElement& x = f.x;
  detail::require_orthogonal(x, one, "x", "1");
  detail::require_nonisotropic(x, "x");
  if (!(x * x == alg.scalar(-norm(x)))) throw std::logic_error("frame: x^2 != -N(x)");

  FrameData out;
  out.ax_basis = {one, x};
  out.derived_basis = {one, x};
  if (!f.y) {
    if (f.z) throw PreconditionError("frame: z given without y");
    return out;
  }
  const CDElement& y = *f.y;
  detail::require_orthogonal(y, one, "y", "1");
  detail::require_orthogonal(y, x, "y", "x");
  detail::require_nonisotropic(y, "y");
  const CDElement xy = x * y;
  if (!(xy == -(y * x))) throw std::logic_error("frame: xy != -yx");
  out.axy_basis = {one, x, y, xy};
  out.ax_perp_basis = {y, xy};
  out.derived_basis.insert(out.derived_basis.end(), {y, xy});
  if (!f.z) return out;

  const CDElement& z = *f.z;
  detail::require_orthogonal(z, one, "z", "1");
  detail::require_orthogonal(z, x, "z", "x");
  detail::require_orthogonal(z, y, "z", "y");
  detail::require_orthogonal(z, xy, "z", "xy");
  detail::require_nonisotropic(z, "z");
  const CDElement xz = x * z, yz = y * z, x_yz = x * yz;
  out.axy_perp_basis = {z, xz, yz, x_yz};
  out.ax_perp_basis.insert(out.ax_perp_basis.end(), {z, xz, yz, x_yz});
  out.derived_basis.insert(out.derived_basis.end(), {z, xz, yz, x_yz});
  return out;
}

// ---------------------------------------------------------------------------
// Values s + t x in A_x, where x^2 = -N(x).

struct AxValue {
  Rational s = 0, t = 0;

  friend AxValue operator+(const AxValue& a, const AxValue& b) { return {a.s + b.s, a.t + b.t}; }
  friend AxValue operator-(const AxValue& a, const AxValue& b) { return {a.s - b.s, a.t - b.t}; }
  friend bool operator==(const AxValue& a, const AxValue& b) = default;
  std::string to_string() const { return "(" + g2t::to_string(s) + "," + g2t::to_string(t) + ")"; }
};

inline AxValue ax_conjugate(const AxValue& a) { return {a.s, -a.t}; }

/// (s1 + t1 x)(s2 + t2 x) with x^2 = -nx.
inline AxValue ax_multiply(const AxValue& a, const AxValue& b, const Rational& nx) {
  return {a.s * b.s - nx * a.t * b.t, a.s * b.t + a.t * b.s};
}

inline Rational ax_norm(const AxValue& a, const Rational& nx) { return a.s * a.s + nx * a.t * a.t; }

inline AxValue ax_inverse(const AxValue& a, const Rational& nx) {
  Rational n = ax_norm(a, nx);
  if (n == 0) throw IsotropicElementError("A_x element has norm zero");
  return {a.s / n, -a.t / n};
}

inline CDElement ax_to_element(const AxValue& a, const CDElement& x) {
  return x.algebra().scalar(a.s) + a.t * x;
}

/// (e_1, e_2, e_4) truncated to the rank of the algebra.
inline SubalgebraFrame standard_frame(const CDAlgebra& b) {
  if (b.dimension() < 2) throw ArgumentError("standard_frame: algebra has no traceless part");
  SubalgebraFrame f{b.basis(1), std::nullopt, std::nullopt};
  if (b.dimension() >= 4) f.y = b.basis(2);
  if (b.dimension() >= 8) f.z = b.basis(4);
  return f;
}

}  // namespace g2t
