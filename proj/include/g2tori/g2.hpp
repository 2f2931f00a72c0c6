#pragma once

// Automorphisms and derivations of rank-8 Cayley-Dickson algebras.
//
// Maps are 8x8 rational matrices acting on coordinate columns in the standard basis.
// For a frame (x, y, z) the derived basis is {1, x, y, xy, z, xz, yz, x(yz)}, split
// into the blocks <1,x> + <y,xy> + <z,xz> + <yz,x(yz)>.

#include <optional>
#include <utility>
#include <vector>

#include "g2tori/cd.hpp"
#include "g2tori/linalg.hpp"

namespace g2t {

class OctonionMap {
 public:
  OctonionMap() = default;
  explicit OctonionMap(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw ArgumentError("octonion map must be square");
  }
  static OctonionMap identity(std::size_t n = 8) { return OctonionMap(Matrix::identity(n)); }

  const Matrix& matrix() const { return m_; }
  CDElement apply(const CDElement& v) const { return v.algebra().element(m_.apply(v.coords())); }
  CDElement operator()(const CDElement& v) const { return apply(v); }

  friend OctonionMap operator*(const OctonionMap& a, const OctonionMap& b) { return OctonionMap(a.m_ * b.m_); }
  friend bool operator==(const OctonionMap& a, const OctonionMap& b) = default;

  OctonionMap inverse() const {
    auto inv = g2t::inverse(m_);
    if (!inv) throw ArgumentError("octonion map is not invertible");
    return OctonionMap(std::move(*inv));
  }

 private:
  Matrix m_;
};

inline bool is_automorphism(const OctonionMap& m, const CDAlgebra& o) {
  if (m.matrix().rows() != o.dimension()) return false;
  if (!(m(o.one()) == o.one())) return false;
  std::vector<CDElement> images;
  for (std::size_t i = 0; i < o.dimension(); ++i) images.push_back(m(o.basis(i)));
  for (std::size_t i = 0; i < o.dimension(); ++i)
    for (std::size_t j = 0; j < o.dimension(); ++j)
      if (!(m(o.basis(i) * o.basis(j)) == images[i] * images[j])) return false;
  return true;
}

/// M^T G M = G for the Gram matrix G of the norm form.
inline bool preserves_norm(const OctonionMap& m, const CDAlgebra& o) {
  const Matrix g = norm_form(o).gram();
  return m.matrix().transpose() * g * m.matrix() == g;
}

namespace detail {

inline Matrix coords_as_columns(const std::vector<CDElement>& vs) {
  std::vector<std::vector<Rational>> cols;
  for (const auto& v : vs) cols.push_back(v.coords());
  return Matrix::from_columns(cols);
}

/// The linear map sending each source vector to the corresponding target.
inline OctonionMap map_basis(const std::vector<CDElement>& source, const std::vector<CDElement>& target) {
  auto inv = inverse(coords_as_columns(source));
  if (!inv) throw PreconditionError("frame vectors are linearly dependent");
  return OctonionMap(coords_as_columns(target) * *inv);
}

inline void require_full_frame(const SubalgebraFrame& f) {
  if (f.x.algebra().rank() != 8) throw ArgumentError("frame must live in a rank-8 algebra");
  if (!f.y || !f.z) throw PreconditionError("frame needs x, y and z");
}

}  // namespace detail

/// The automorphism with x -> x', y -> y', z -> z'.
inline OctonionMap automorphism_from_triple(const SubalgebraFrame& frame, const SubalgebraFrame& images) {
  detail::require_full_frame(frame);
  detail::require_full_frame(images);
  FrameData src = frame_subalgebra(frame);
  FrameData dst = frame_subalgebra(images);
  if (norm(frame.x) != norm(images.x)) throw PreconditionError("automorphism_from_triple: N(x) != N(x')");
  if (norm(*frame.y) != norm(*images.y)) throw PreconditionError("automorphism_from_triple: N(y) != N(y')");
  if (norm(*frame.z) != norm(*images.z)) throw PreconditionError("automorphism_from_triple: N(z) != N(z')");
  return detail::map_basis(src.derived_basis, dst.derived_basis);
}

// ---------------------------------------------------------------------------
// The torus A_x^1 x A_x^1

/// a(t) = (1 - N t^2) / (1 + N t^2) + (2t / (1 + N t^2)) x, a norm-one point of A_x.
inline AxValue torus_point(const Rational& nx, const Rational& t) {
  Rational denom = 1 + nx * t * t;
  if (denom == 0) throw ArgumentError("torus_point: 1 + N(x) t^2 vanishes");
  return {(1 - nx * t * t) / denom, 2 * t / denom};
}

namespace detail {

/// Left multiplication by (m0, m1, m2, m3) on the four blocks of the derived basis.
inline OctonionMap blockwise_left_multiplication(const SubalgebraFrame& frame, const std::vector<CDElement>& mult) {
  FrameData fd = frame_subalgebra(frame);
  const auto& b = fd.derived_basis;
  std::vector<CDElement> images;
  for (std::size_t k = 0; k < b.size(); ++k) images.push_back(mult[k / 2] * b[k]);
  return map_basis(b, images);
}

}  // namespace detail

/// Phi(a, b): multiplication by 1, a, b, sigma(a) sigma(b) on the four blocks.
inline OctonionMap phi(const SubalgebraFrame& frame, const AxValue& a, const AxValue& b) {
  detail::require_full_frame(frame);
  const Rational nx = norm(frame.x);
  if (ax_norm(a, nx) != 1 || ax_norm(b, nx) != 1) throw PreconditionError("phi: parameters must have norm one");
  const CDElement& x = frame.x;
  AxValue c = ax_multiply(ax_conjugate(a), ax_conjugate(b), nx);
  return detail::blockwise_left_multiplication(
      frame, {x.algebra().one(), ax_to_element(a, x), ax_to_element(b, x), ax_to_element(c, x)});
}

/// Derivatives of t -> Phi(a(t), 1) and t -> Phi(1, a(t)) at t = 0.
inline std::pair<Matrix, Matrix> torus_generators(const SubalgebraFrame& frame) {
  detail::require_full_frame(frame);
  const CDElement& x = frame.x;
  const CDElement zero = x.algebra().zero();
  const CDElement two_x = Rational(2) * x;
  auto g1 = detail::blockwise_left_multiplication(frame, {zero, two_x, zero, -two_x});
  auto g2 = detail::blockwise_left_multiplication(frame, {zero, zero, two_x, -two_x});
  return {g1.matrix(), g2.matrix()};
}

/// v -> a v on A_x^perp and the identity on A_x.
inline OctonionMap left_mult_map(const SubalgebraFrame& frame, const AxValue& a) {
  detail::require_full_frame(frame);
  if (ax_norm(a, norm(frame.x)) != 1) throw PreconditionError("left_mult_map: a must have norm one");
  CDElement ae = ax_to_element(a, frame.x);
  return detail::blockwise_left_multiplication(frame, {frame.x.algebra().one(), ae, ae, ae});
}

/// The order-2 automorphism x -> -x fixing y and z.
inline OctonionMap outer_element(const SubalgebraFrame& frame) {
  detail::require_full_frame(frame);
  SubalgebraFrame images{-frame.x, frame.y, frame.z};
  return automorphism_from_triple(frame, images);
}

// ---------------------------------------------------------------------------
// Derivations

struct DerivationAlgebra {
  std::size_t dimension = 0;
  std::vector<Matrix> basis;
};

/// Solves D(1) = 0 and D(e_i e_j) = D(e_i) e_j + e_i D(e_j) for the 64 entries of D.
inline DerivationAlgebra derivation_algebra(const CDAlgebra& o) {
  const std::size_t n = o.dimension();
  const std::size_t unknowns = n * n;  // D(r, c) at index r * n + c
  auto var = [n](std::size_t r, std::size_t c) { return r * n + c; };
  std::vector<std::vector<Rational>> rows;
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<Rational> row(unknowns);
    row[var(r, 0)] = 1;
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // e_i e_j = c e_k, so D(e_i e_j) = c D(e_k) = c sum_r D(r, k) e_r.
      // D(e_i) e_j = sum_m D(m, i) e_m e_j;  e_i D(e_j) = sum_m D(m, j) e_i e_m.
      std::vector<std::vector<Rational>> eq(n, std::vector<Rational>(unknowns));
      const std::size_t k = o.structure_index(i, j);
      const Rational& c = o.structure_coefficient(i, j);
      for (std::size_t r = 0; r < n; ++r) eq[r][var(r, k)] += c;
      for (std::size_t m = 0; m < n; ++m) {
        eq[o.structure_index(m, j)][var(m, i)] -= o.structure_coefficient(m, j);
        eq[o.structure_index(i, m)][var(m, j)] -= o.structure_coefficient(i, m);
      }
      for (auto& row : eq) rows.push_back(std::move(row));
    }
  DerivationAlgebra out;
  for (const auto& v : nullspace(Matrix::from_rows(rows))) {
    Matrix d(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) d(r, c) = v[var(r, c)];
    out.basis.push_back(std::move(d));
  }
  out.dimension = out.basis.size();
  return out;
}

/// D(ab) = D(a) b + a D(b) on all basis pairs.
inline bool is_derivation(const Matrix& d, const CDAlgebra& o) {
  OctonionMap m(d);
  for (std::size_t i = 0; i < o.dimension(); ++i)
    for (std::size_t j = 0; j < o.dimension(); ++j) {
      auto ei = o.basis(i), ej = o.basis(j);
      if (!(m(ei * ej) == m(ei) * ej + ei * m(ej))) return false;
    }
  return true;
}

/// Dimension of {sum c_k D_k : it commutes with every matrix in elements}.
inline std::size_t centralizer_dimension(const std::vector<Matrix>& basis, const std::vector<Matrix>& elements) {
  if (basis.empty()) return 0;
  const std::size_t n = basis.front().rows();
  std::vector<std::vector<Rational>> rows;
  std::vector<std::vector<Matrix>> brackets;
  for (const auto& m : elements) {
    std::vector<Matrix> br;
    for (const auto& d : basis) br.push_back(d * m - m * d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<Rational> row;
        for (const auto& b : br) row.push_back(b(r, c));
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return basis.size();
  return basis.size() - rank(Matrix::from_rows(rows));
}

struct StabilizerDims {
  std::size_t stabilizer = 0;
  std::size_t orbit = 0;
};

/// Dimensions of {D : D x = 0} and of {D x : D in Der}.
inline StabilizerDims stabilizer_dims(const CDAlgebra& o, const CDElement& x) {
  if (bilinear(x, o.one()) != 0) throw PreconditionError("stabilizer_dims: x is not traceless");
  if (norm(x) == 0) throw PreconditionError("stabilizer_dims: N(x) is zero");
  DerivationAlgebra der = derivation_algebra(o);
  std::vector<std::vector<Rational>> images;
  for (const auto& d : der.basis) images.push_back(d.apply(x.coords()));
  std::size_t orbit = rank(Matrix::from_rows(images));
  return {der.dimension - orbit, orbit};
}

/// Dimension of the centralizer in Der(O) of the torus Phi(A_x^1 x A_x^1), tested against
/// the two infinitesimal generators and Phi at the sampled parameters t.
inline std::size_t torus_rank(const SubalgebraFrame& frame, const std::vector<Rational>& samples = {1, 2, Rational(1, 3)}) {
  detail::require_full_frame(frame);
  const CDAlgebra& o = frame.x.algebra();
  const Rational nx = norm(frame.x);
  auto [g1, g2] = torus_generators(frame);
  std::vector<Matrix> elements{g1, g2};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Rational& s = samples[i];
    const Rational& t = samples[(i + 1) % samples.size()];
    if (1 + nx * s * s == 0 || 1 + nx * t * t == 0) continue;
    elements.push_back(phi(frame, torus_point(nx, s), torus_point(nx, t)).matrix());
  }
  return centralizer_dimension(derivation_algebra(o).basis, elements);
}

// ---------------------------------------------------------------------------
// Transitivity on elements of fixed norm

namespace detail {

/// Integer combinations of the basis vectors with coefficients in [-bound, bound],
/// ordered by height.
inline std::vector<CDElement> small_combinations(const std::vector<CDElement>& basis, int bound) {
  std::vector<CDElement> out;
  const CDAlgebra& alg = basis.front().algebra();
  for (int h = 1; h <= bound; ++h) {
    std::vector<int> c(basis.size(), -h);
    for (;;) {
      int height = 0;
      for (int v : c) height = std::max(height, v < 0 ? -v : v);
      if (height == h) {
        CDElement e = alg.zero();
        for (std::size_t i = 0; i < basis.size(); ++i)
          if (c[i] != 0) e = e + Rational(c[i]) * basis[i];
        out.push_back(e);
      }
      std::size_t k = 0;
      while (k < c.size() && ++c[k] > h) c[k++] = -h;
      if (k == c.size()) break;
    }
  }
  return out;
}

/// Basis of the orthogonal complement of the given vectors.
inline std::vector<CDElement> orthogonal_complement(const CDAlgebra& alg, const std::vector<CDElement>& vs) {
  Matrix m(vs.size(), alg.dimension());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < alg.dimension(); ++j) m(i, j) = bilinear(vs[i], alg.basis(j));
  std::vector<CDElement> out;
  for (auto& v : nullspace(m)) out.push_back(alg.element(std::move(v)));
  return out;
}

/// Non-isotropic u in the span of basis with N(u) = target, by scaling a small
/// combination whose norm lies in the square class of target.
inline std::optional<CDElement> find_with_norm(const std::vector<CDElement>& basis, const Rational& target, int bound) {
  for (const auto& u : small_combinations(basis, bound)) {
    Rational n = norm(u);
    if (n == 0) continue;
    Rational ratio = target / n;
    if (is_square(ratio)) {
      Rational s(boost::multiprecision::sqrt(num(ratio)), boost::multiprecision::sqrt(den(ratio)));
      return s * u;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// An automorphism with v -> w for traceless v, w of equal nonzero norm, found by completing
/// both to frames inside a bounded search box. nullopt if the box is too small.
inline std::optional<OctonionMap> transport(const CDElement& v, const CDElement& w, int bound = 2) {
  const CDAlgebra& o = v.algebra();
  if (o.rank() != 8) throw ArgumentError("transport: algebra must have rank 8");
  if (bilinear(v, o.one()) != 0 || bilinear(w, o.one()) != 0) throw PreconditionError("transport: not traceless");
  if (norm(v) == 0 || norm(v) != norm(w)) throw PreconditionError("transport: norms differ or vanish");

  auto perp_v = detail::orthogonal_complement(o, {o.one(), v});
  auto perp_w = detail::orthogonal_complement(o, {o.one(), w});
  for (const auto& y : detail::small_combinations(perp_v, bound)) {
    Rational ny = norm(y);
    if (ny == 0) continue;
    auto y2 = detail::find_with_norm(perp_w, ny, bound);
    if (!y2) continue;
    auto qv = detail::orthogonal_complement(o, {o.one(), v, y, v * y});
    auto qw = detail::orthogonal_complement(o, {o.one(), w, *y2, w * *y2});
    for (const auto& z : detail::small_combinations(qv, bound)) {
      Rational nz = norm(z);
      if (nz == 0) continue;
      auto z2 = detail::find_with_norm(qw, nz, bound);
      if (!z2) continue;
      return automorphism_from_triple({v, y, z}, {w, *y2, *z2});
    }
  }
  return std::nullopt;
}

}  // namespace g2t
