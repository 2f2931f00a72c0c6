#pragma once

// The A_x-module A_x^perp of a CD algebra and the forms it carries:
//   H(y, z) = 1/2 (y, z) + (2x)^{-1} (xy, z)     Hermitian, A_x-valued
//   S(y, z) = (xy, z)                            alternating
//   Pi(a, b) = 1/2 (w - proj_{A_x} w), w = ab - ba
//   T(a, b, c) = H(c, Pi(a, b))
// with (2x)^{-1} = -x / (2 N(x)).

#include <functional>
#include <string>
#include <vector>

#include "g2tori/cd.hpp"
#include "g2tori/linalg.hpp"

namespace g2t {

class HermitianContext {
 public:
  HermitianContext(CDAlgebra algebra, CDElement x) : alg_(std::move(algebra)), x_(std::move(x)) {
    if (!(x_.algebra() == alg_)) throw ArgumentError("x does not belong to the algebra");
    if (bilinear(x_, alg_.one()) != 0) throw PreconditionError("hermitian context: x is not orthogonal to 1");
    nx_ = norm(x_);
    if (nx_ == 0) throw PreconditionError("hermitian context: N(x) is zero");
    // A_x^perp as the kernel of v -> ((v, 1), (v, x)).
    const std::size_t n = alg_.dimension();
    Matrix m(2, n);
    for (std::size_t j = 0; j < n; ++j) {
      m(0, j) = bilinear(alg_.one(), alg_.basis(j));
      m(1, j) = bilinear(x_, alg_.basis(j));
    }
    for (auto& v : nullspace(m)) perp_basis_.push_back(alg_.element(std::move(v)));
  }

  const CDAlgebra& algebra() const { return alg_; }
  const CDElement& x() const { return x_; }
  const Rational& norm_x() const { return nx_; }
  const std::vector<CDElement>& perp_basis() const { return perp_basis_; }

  bool in_perp(const CDElement& v) const { return bilinear(v, alg_.one()) == 0 && bilinear(v, x_) == 0; }

  CDElement to_element(const AxValue& a) const { return ax_to_element(a, x_); }
  AxValue multiply(const AxValue& a, const AxValue& b) const { return ax_multiply(a, b, nx_); }

  /// Orthogonal projection onto A_x = span{1, x}.
  AxValue project(const CDElement& w) const {
    return {bilinear(w, alg_.one()), bilinear(w, x_) / nx_};
  }

  CDElement module_action(const AxValue& a, const CDElement& v) const {
    require_perp(v, "module_action");
    return to_element(a) * v;
  }

  AxValue hermitian_H(const CDElement& y, const CDElement& z) const {
    require_perp(y, "hermitian_H");
    require_perp(z, "hermitian_H");
    return hermitian_formula(y, z);
  }

  /// The defining formula of H evaluated on arbitrary elements, without the A_x^perp check.
  AxValue hermitian_formula(const CDElement& y, const CDElement& z) const {
    return {bilinear(y, z) / 2, -bilinear(x_ * y, z) / (2 * nx_)};
  }

  Rational alternating_S(const CDElement& y, const CDElement& z) const { return bilinear(x_ * y, z); }

  CDElement cross_Pi(const CDElement& a, const CDElement& b) const {
    require_perp(a, "cross_Pi");
    require_perp(b, "cross_Pi");
    CDElement w = a * b - b * a;
    return Rational(1, 2) * (w - to_element(project(w)));
  }

  AxValue trilinear_T(const CDElement& a, const CDElement& b, const CDElement& c) const {
    return hermitian_H(c, cross_Pi(a, b));
  }

 private:
  void require_perp(const CDElement& v, const char* op) const {
    if (!in_perp(v)) throw PreconditionError(std::string(op) + ": argument is not in the orthogonal complement of A_x");
  }

  CDAlgebra alg_;
  CDElement x_;
  Rational nx_;
  std::vector<CDElement> perp_basis_;
};

/// Outcome of one identity checked over a finite family of arguments.
struct LawCheck {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

struct StructureReport {
  std::vector<LawCheck> laws;
  bool passed() const {
    for (const auto& l : laws)
      if (!l.passed()) return false;
    return true;
  }
};

/// Every identity of the A_x-module layer on the derived basis {y, xy, z, xz, yz, x(yz)}
/// of the frame. Needs a full frame (x, y, z) in a rank-8 algebra.
inline StructureReport check_structures(const SubalgebraFrame& frame) {
  FrameData fd = frame_subalgebra(frame);
  if (!frame.z) throw PreconditionError("check_structures: frame needs x, y and z");
  const CDElement& x = frame.x;
  const CDAlgebra& alg = x.algebra();
  HermitianContext ctx(alg, x);
  const auto& basis = fd.ax_perp_basis;
  const CDElement& y = *frame.y;
  const CDElement& z = *frame.z;
  const AxValue one_ax{1, 0}, x_ax{0, 1};
  const AxValue sigma_x{0, -1};

  StructureReport rep;
  auto law = [&](std::string name, const std::function<void(LawCheck&)>& body) {
    LawCheck c{std::move(name), 0, 0};
    body(c);
    rep.laws.push_back(c);
  };
  auto expect = [](LawCheck& c, bool ok) {
    ++c.cases;
    if (!ok) ++c.failures;
  };

  law("module action stays in the complement", [&](LawCheck& c) {
    for (const auto& v : basis)
      for (const auto& a : {one_ax, x_ax, AxValue{2, -3}}) expect(c, ctx.in_perp(ctx.module_action(a, v)));
  });
  law("module action is associative", [&](LawCheck& c) {
    const std::vector<AxValue> as{one_ax, x_ax, AxValue{1, 1}, AxValue{-2, 3}};
    for (const auto& v : basis)
      for (const auto& a1 : as)
        for (const auto& a2 : as)
          expect(c, ctx.module_action(ctx.multiply(a1, a2), v) == ctx.module_action(a1, ctx.module_action(a2, v)));
  });
  law("(ay, z) = (y, sigma(a) z)", [&](LawCheck& c) {
    for (const auto& a : {one_ax, x_ax})
      for (const auto& u : basis)
        for (const auto& v : basis)
          expect(c, bilinear(ctx.module_action(a, u), v) == bilinear(u, ctx.module_action(ax_conjugate(a), v)));
  });
  law("H conjugate symmetric", [&](LawCheck& c) {
    for (const auto& u : basis)
      for (const auto& v : basis) expect(c, ctx.hermitian_H(u, v) == ax_conjugate(ctx.hermitian_H(v, u)));
  });
  law("H(xy, z) = x H(y, z)", [&](LawCheck& c) {
    for (const auto& u : basis)
      for (const auto& v : basis)
        expect(c, ctx.hermitian_H(x * u, v) == ctx.multiply(x_ax, ctx.hermitian_H(u, v)));
  });
  law("(y, z) = Tr H(y, z)", [&](LawCheck& c) {
    for (const auto& u : basis)
      for (const auto& v : basis) expect(c, bilinear(u, v) == 2 * ctx.hermitian_H(u, v).s);
  });
  law("S alternating", [&](LawCheck& c) {
    for (std::size_t i = 0; i < alg.dimension(); ++i) {
      expect(c, ctx.alternating_S(alg.basis(i), alg.basis(i)) == 0);
      for (std::size_t j = 0; j < alg.dimension(); ++j)
        expect(c, ctx.alternating_S(alg.basis(i), alg.basis(j)) == -ctx.alternating_S(alg.basis(j), alg.basis(i)));
    }
  });
  law("Pi lands in the complement", [&](LawCheck& c) {
    for (const auto& u : basis)
      for (const auto& v : basis) expect(c, ctx.in_perp(ctx.cross_Pi(u, v)));
  });
  law("Pi alternating", [&](LawCheck& c) {
    for (const auto& u : basis) {
      expect(c, ctx.cross_Pi(u, u).is_zero());
      for (const auto& v : basis) expect(c, ctx.cross_Pi(u, v) == -ctx.cross_Pi(v, u));
    }
  });
  law("Pi(xa, b) = sigma(x) Pi(a, b)", [&](LawCheck& c) {
    for (const auto& u : basis)
      for (const auto& v : basis)
        expect(c, ctx.cross_Pi(x * u, v) == ctx.module_action(sigma_x, ctx.cross_Pi(u, v)));
  });
  law("Pi(y, xy) = 0 and Pi(y, z) = yz", [&](LawCheck& c) {
    expect(c, ctx.cross_Pi(y, x * y).is_zero());
    expect(c, ctx.cross_Pi(y, z) == y * z);
  });
  law("T alternating", [&](LawCheck& c) {
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& d : basis) {
          AxValue t = ctx.trilinear_T(a, b, d);
          expect(c, ctx.trilinear_T(b, a, d) == AxValue{-t.s, -t.t});
          expect(c, ctx.trilinear_T(a, d, b) == AxValue{-t.s, -t.t});
          if (a == b || b == d || a == d) expect(c, t == AxValue{});
        }
  });
  law("T(a, b, xc) = x T(a, b, c)", [&](LawCheck& c) {
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& d : basis)
          expect(c, ctx.trilinear_T(a, b, x * d) == ctx.multiply(x_ax, ctx.trilinear_T(a, b, d)));
  });
  law("T(a, b, c) = 1/2 H(c, ab - ba)", [&](LawCheck& c) {
    for (const auto& a : basis)
      for (const auto& b : basis)
        for (const auto& d : basis) {
          AxValue h = ctx.hermitian_formula(d, a * b - b * a);
          expect(c, ctx.trilinear_T(a, b, d) == AxValue{h.s / 2, h.t / 2});
        }
  });
  return rep;
}

}  // namespace g2t
