#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace g2t;

namespace {

using Vec = std::vector<Rational>;

Vec conj_ref(const Vec& x) {
  Vec out(x.size());
  out[0] = x[0];
  for (std::size_t i = 1; i < x.size(); ++i) out[i] = -x[i];
  return out;
}

// Direct transcription of [x1,x2][y1,y2] = [x1 y1 + d s(y2) x2, y2 x1 + x2 s(y1)].
Vec mul_ref(const Vec& x, const Vec& y, const std::vector<Rational>& params) {
  if (x.size() == 1) return {x[0] * y[0]};
  const std::size_t h = x.size() / 2;
  const Rational d = params[params.size() - 1];
  const std::vector<Rational> inner(params.begin(), params.end() - 1);
  Vec x1(x.begin(), x.begin() + h), x2(x.begin() + h, x.end());
  Vec y1(y.begin(), y.begin() + h), y2(y.begin() + h, y.end());
  Vec a = mul_ref(x1, y1, inner), b = mul_ref(conj_ref(y2), x2, inner);
  Vec c = mul_ref(y2, x1, inner), e = mul_ref(x2, conj_ref(y1), inner);
  Vec out(x.size());
  for (std::size_t i = 0; i < h; ++i) {
    out[i] = a[i] + d * b[i];
    out[h + i] = c[i] + e[i];
  }
  return out;
}

const std::vector<std::vector<Rational>> kSamples[3] = {
    {{-1}, {1}, {2}, {-3}, {5}, {Rational(1, 2)}},
    {{-1, -1}, {1, -1}, {-1, 2}, {3, -5}, {-2, -3}, {1, 1}},
    {{-1, -1, -1}, {1, -1, -1}, {-1, -1, 2}, {-2, 3, -5}, {1, 1, 1}, {-3, -3, 7}},
};

}  // namespace

TEST(Construction, SpecExamples) {
  CDAlgebra q({});
  EXPECT_EQ(q.dimension(), 1u);
  EXPECT_EQ(conjugate(q.scalar(3)), q.scalar(3));

  CDAlgebra h({-1, -1});
  auto x = h.basis(1), y = h.basis(2);
  EXPECT_EQ(x * x, h.scalar(-1));
  EXPECT_EQ(y * y, h.scalar(-1));
  EXPECT_EQ(x * y, -(y * x));
  EXPECT_EQ(x * y, h.basis(3));

  CDAlgebra o = CDAlgebra::octonions();
  EXPECT_EQ(norm_form(o).gram(), Matrix::identity(8));
  EXPECT_EQ(norm_form(o, NormRestriction::traceless).gram(), Matrix::identity(7));
  EXPECT_EQ(signature(norm_form(CDAlgebra::split_octonions())), std::make_pair(4, 4));
  auto ox = o.basis(1), oy = o.basis(2), oz = o.basis(4);
  EXPECT_EQ((ox * oy) * oz, -(ox * (oy * oz)));

  EXPECT_THROW(CDAlgebra({-1, -1, -1, -1}), UnsupportedError);
  EXPECT_THROW(CDAlgebra({-1, 0}), ArgumentError);
}

TEST(Multiplication, MatchesRecursiveFormula) {
  oracle::Sampler s(1);
  for (const auto& rank_samples : kSamples)
    for (const auto& params : rank_samples) {
      CDAlgebra alg(params);
      for (std::size_t i = 0; i < alg.dimension(); ++i)
        for (std::size_t j = 0; j < alg.dimension(); ++j)
          EXPECT_EQ((alg.basis(i) * alg.basis(j)).coords(),
                    mul_ref(alg.basis(i).coords(), alg.basis(j).coords(), params));
      for (int k = 0; k < 20; ++k) {
        auto a = s.element(alg), b = s.element(alg);
        EXPECT_EQ((a * b).coords(), mul_ref(a.coords(), b.coords(), params));
      }
    }
}

TEST(Arithmetic, SpecExamples) {
  CDAlgebra o = CDAlgebra::octonions();
  auto b = o.basis(5);
  EXPECT_EQ(o.one() * b, b);
  EXPECT_EQ(conjugate(o.one()), o.one());
  EXPECT_EQ(norm(o.one()), 1);
  CDElement sum = o.zero();
  for (std::size_t i = 0; i < 8; ++i) sum = sum + o.basis(i);
  EXPECT_EQ(norm(sum), 8);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j)
      if (i != j) {
        EXPECT_EQ(bilinear(o.basis(i), o.basis(j)), 0);
      }

  CDAlgebra h({-1, -1});
  EXPECT_EQ(inverse(h.one()), h.one());
  EXPECT_EQ(inverse(h.basis(1)), -h.basis(1));
  CDAlgebra split({1});
  EXPECT_THROW(inverse(split.one() + split.basis(1)), IsotropicElementError);
}

TEST(Predicates, SpecExamples) {
  CDAlgebra c({-1});
  EXPECT_TRUE(is_commutative(c));
  EXPECT_TRUE(is_associative(c));
  CDAlgebra h({-1, -1});
  EXPECT_FALSE(is_commutative(h));
  EXPECT_TRUE(is_associative(h));
  CDAlgebra o = CDAlgebra::octonions();
  EXPECT_FALSE(is_associative(o));
  EXPECT_TRUE(is_alternative(o));
}

TEST(Predicates, HoldAcrossParameterSamples) {
  for (const auto& params : kSamples[0]) {
    CDAlgebra a(params);
    EXPECT_TRUE(is_commutative(a));
    EXPECT_TRUE(is_associative(a));
  }
  for (const auto& params : kSamples[1]) {
    CDAlgebra a(params);
    EXPECT_FALSE(is_commutative(a));
    EXPECT_TRUE(is_associative(a));
  }
  for (const auto& params : kSamples[2]) {
    CDAlgebra a(params);
    EXPECT_TRUE(is_alternative(a));
    EXPECT_FALSE(is_associative(a));
  }
}

TEST(NormLaws, MultiplicativeAndInvolutive) {
  oracle::Sampler s(99);
  for (const auto& rank_samples : kSamples)
    for (const auto& params : rank_samples) {
      CDAlgebra alg(params);
      for (std::size_t i = 0; i < alg.dimension(); ++i)
        for (std::size_t j = 0; j < alg.dimension(); ++j) {
          auto a = alg.basis(i), b = alg.basis(j);
          EXPECT_EQ(norm(a * b), norm(a) * norm(b));
          EXPECT_EQ(conjugate(a * b), conjugate(b) * conjugate(a));
        }
      for (int k = 0; k < 100; ++k) {
        auto a = s.element(alg), b = s.element(alg);
        EXPECT_EQ(norm(a * b), norm(a) * norm(b));
        EXPECT_EQ(conjugate(conjugate(a)), a);
        EXPECT_EQ(conjugate(a * b), conjugate(b) * conjugate(a));
        EXPECT_EQ(a * conjugate(a), alg.scalar(norm(a)));
        EXPECT_EQ(a + conjugate(a), alg.scalar(2 * a.scalar_part()));
        EXPECT_EQ(2 * bilinear(a, b), norm(a + b) - norm(a) - norm(b));
        if (norm(a) != 0) {
          EXPECT_EQ(a * inverse(a), alg.one());
        }
      }
    }
}

TEST(Frames, SpecExamples) {
  CDAlgebra o = CDAlgebra::octonions();
  auto f = standard_frame(o);
  auto fd = frame_subalgebra(f);
  for (std::size_t i = 0; i < 8; ++i) {
    CDElement v = fd.derived_basis[i];
    bool is_basis = false;
    for (std::size_t j = 0; j < 8; ++j) is_basis = is_basis || v == o.basis(j) || v == -o.basis(j);
    EXPECT_TRUE(is_basis);
  }
  auto x = o.basis(1) + o.basis(2);
  EXPECT_EQ(x * x, o.scalar(-2));
  auto fd2 = frame_subalgebra({x, o.basis(4), std::nullopt});
  EXPECT_EQ(fd2.axy_basis.size(), 4u);
  EXPECT_THROW(frame_subalgebra({o.basis(1), o.basis(1) + o.basis(2), std::nullopt}), PreconditionError);
  EXPECT_THROW(frame_subalgebra({o.basis(1), o.basis(2), o.basis(3)}), PreconditionError);
  EXPECT_THROW(frame_subalgebra({o.one(), std::nullopt, std::nullopt}), PreconditionError);
}

TEST(Frames, DerivedBasisIsOrthogonalInBothClasses) {
  for (const auto& o : {CDAlgebra::octonions(), CDAlgebra::split_octonions()}) {
    auto fd = frame_subalgebra(standard_frame(o));
    const auto& b = fd.derived_basis;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        if (i != j) {
          EXPECT_EQ(bilinear(b[i], b[j]), 0);
        }
  }
}

TEST(AxArithmetic, AgreesWithEmbeddedElements) {
  CDAlgebra o = CDAlgebra::split_octonions();
  auto x = o.basis(2) + o.basis(4);  // N(x) = 2
  oracle::Sampler s(4);
  Rational nx = norm(x);
  for (int k = 0; k < 30; ++k) {
    AxValue a{s.rational(), s.rational()}, b{s.rational(), s.rational()};
    EXPECT_EQ(ax_to_element(ax_multiply(a, b, nx), x), ax_to_element(a, x) * ax_to_element(b, x));
    EXPECT_EQ(ax_to_element(ax_conjugate(a), x), conjugate(ax_to_element(a, x)));
    EXPECT_EQ(ax_norm(a, nx), norm(ax_to_element(a, x)));
  }
}
