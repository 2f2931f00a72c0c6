#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace g2t;

namespace {

QuadraticSpace gram(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Rational>> r;
  for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
  return QuadraticSpace(Matrix::from_rows(r));
}

QuadraticSpace diag(const std::vector<Rational>& d) { return QuadraticSpace::diagonal(d); }

/// A random unimodular-ish change of basis: upper unitriangular times a permutation.
Matrix random_basis_change(oracle::Sampler& s, std::size_t n) {
  Matrix m = Matrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m(i, j) = s.integer(-2, 2);
  std::size_t a = static_cast<std::size_t>(s.integer(0, static_cast<int>(n) - 1));
  std::size_t b = static_cast<std::size_t>(s.integer(0, static_cast<int>(n) - 1));
  Matrix p = Matrix::identity(n);
  p(a, a) = 0;
  p(b, b) = 0;
  p(a, b) = 1;
  p(b, a) = 1;
  if (a == b) p = Matrix::identity(n);
  return m * p;
}

}  // namespace

TEST(Diagonalize, SpecExamples) {
  EXPECT_EQ(diagonalize(diag({1, 1, 1})).diagonal, (std::vector<Rational>{1, 1, 1}));
  auto h = diagonalize(gram({{0, 1}, {1, 0}})).diagonal;
  EXPECT_EQ(squarefree_part(h[0] * h[1]), -1);
  auto g = gram({{3, 0, 6}, {0, 6, 3}, {6, 3, 18}});
  auto d = diagonalize(g).diagonal;
  EXPECT_EQ(oracle::det_cofactor(g.gram()), 81);
  EXPECT_TRUE(oracle::is_rational_square(d[0] * d[1] * d[2] / 81));
  EXPECT_THROW(QuadraticSpace(Matrix::from_rows({{1, 1}, {1, 1}})), SingularFormError);
  EXPECT_THROW(QuadraticSpace(Matrix::from_rows({{1, 2}, {0, 1}})), ArgumentError);
}

TEST(Diagonalize, WitnessAndDeterminantOnRandomForms) {
  oracle::Sampler s(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = static_cast<std::size_t>(s.integer(1, 5));
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = s.rational(4);
    if (oracle::det_cofactor(m) == 0) continue;
    QuadraticSpace q(m);
    auto dg = diagonalize(q);
    EXPECT_EQ(dg.basis.transpose() * m * dg.basis, Matrix::diagonal(dg.diagonal));
    EXPECT_EQ(q.determinant_value(), oracle::det_cofactor(m));
    Rational prod = 1;
    for (const auto& x : dg.diagonal) prod *= x;
    EXPECT_TRUE(oracle::is_rational_square(prod / q.determinant_value()));
  }
}

TEST(Discriminant, SpecExamples) {
  EXPECT_EQ(discriminant(QuadraticSpace(Matrix::identity(8)), global), 1);
  EXPECT_EQ(discriminant(norm_form(CDAlgebra::octonions()), global), 1);
  EXPECT_EQ(discriminant(gram({{0, 1}, {1, 0}}), global), -1);
  EXPECT_EQ(discriminant(gram({{0, 1}, {1, 0}}), Place::prime(3)).representative, 2);
}

TEST(Hasse, SpecExamples) {
  for (int p : {2, 3, 5, 7}) EXPECT_EQ(hasse_invariant(QuadraticSpace(Matrix::identity(5)), Place::prime(p)), 1);
  EXPECT_EQ(hasse_invariant(diag({-1, -1}), Place::prime(2)), -1);
  std::vector<Rational> ones(8, 1), minus(8, -1);
  EXPECT_EQ(hasse_invariant(diag(ones), Place::prime(2)), oracle::hasse_product(ones, 2));
  EXPECT_EQ(hasse_invariant(diag(minus), Place::prime(2)), oracle::hasse_product(minus, 2));
}

TEST(Hasse, MatchesSymbolProductOracle) {
  oracle::Sampler s(5);
  const std::vector<int> box{-3, -2, -1, 1, 2, 3};
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = static_cast<std::size_t>(s.integer(1, 4));
    std::vector<Rational> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(box[static_cast<std::size_t>(s.integer(0, 5))]);
    for (int p : {2, 3, 5}) EXPECT_EQ(hasse_invariant(diag(d), Place::prime(p)), oracle::hasse_product(d, p));
  }
}

TEST(Invariants, StableUnderBasisChange) {
  oracle::Sampler s(8);
  const std::vector<int> box{-3, -2, -1, 1, 2, 3, 5, 6};
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = static_cast<std::size_t>(s.integer(2, 5));
    std::vector<Rational> d;
    for (std::size_t i = 0; i < n; ++i) d.push_back(box[static_cast<std::size_t>(s.integer(0, 7))]);
    QuadraticSpace q = diag(d);
    Matrix c = random_basis_change(s, n);
    QuadraticSpace r(c.transpose() * q.gram() * c);
    EXPECT_EQ(signature(q), signature(r));
    EXPECT_EQ(discriminant(q, global), discriminant(r, global));
    for (int p : {2, 3, 5, 7}) {
      EXPECT_EQ(hasse_invariant(q, Place::prime(p)), hasse_invariant(r, Place::prime(p)));
      EXPECT_EQ(is_isotropic(q, Place::prime(p)), is_isotropic(r, Place::prime(p)));
    }
    EXPECT_TRUE(equivalent(q, r, global));
  }
}

TEST(Signature, SpecExamples) {
  EXPECT_EQ(signature(QuadraticSpace(Matrix::identity(8))), std::make_pair(8, 0));
  EXPECT_EQ(signature(norm_form(CDAlgebra::split_octonions())), std::make_pair(4, 4));
  EXPECT_EQ(signature(gram({{3, 0, 6}, {0, 6, 3}, {6, 3, 18}})), std::make_pair(3, 0));
}

TEST(Equivalence, SpecExamples) {
  auto q = gram({{2, 1}, {1, 3}});
  EXPECT_TRUE(equivalent(q, q, global));
  EXPECT_FALSE(equivalent(QuadraticSpace(Matrix::identity(8)), norm_form(CDAlgebra::split_octonions()), global));
  EXPECT_TRUE(equivalent(diag({1, 1}), diag({2, 2}), global));
  EXPECT_FALSE(equivalent(diag({1, 1}), diag({3, 3}), global));
  EXPECT_FALSE(equivalent(diag({1, 1}), diag({1, 1, 1}), global));
}

TEST(Isotropy, TernaryFormsMatchSymbolCriterion) {
  // <a, b, c> is isotropic over Q_p iff (-ac, -bc)_p = 1.
  const std::vector<int> box{-3, -2, -1, 1, 2, 3, 6};
  for (int a : box)
    for (int b : box)
      for (int c : box)
        for (int p : {2, 3}) {
          bool want = oracle::hilbert_brute(Rational(-a * c), Rational(-b * c), p) == 1;
          EXPECT_EQ(is_isotropic(diag({a, b, c}), Place::prime(p)), want) << a << " " << b << " " << c << " @" << p;
        }
}

TEST(Represents, SpecExamples) {
  std::vector<Rational> seven{1, 1, 1, 1, 1, 1, 1};
  for (int p : {2, 3, 5})
    for (int c : {-7, -1, 1, 3})
      EXPECT_TRUE(represents(diag(seven), c, Place::prime(p)));
  EXPECT_FALSE(represents(diag(seven), -1, Place::infinity()));
  EXPECT_TRUE(represents(diag({1, 1}), 2, Place::infinity()));
  EXPECT_THROW(represents(diag({1, 1}), 0, Place::infinity()), ArgumentError);
}

TEST(Represents, ExplicitVectorsAreRepresentedEverywhere) {
  oracle::Sampler s(13);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> d{s.nonzero(3), s.nonzero(3), s.nonzero(3)};
    std::vector<Rational> v{s.integer(-3, 3), s.integer(-3, 3), s.integer(-3, 3)};
    QuadraticSpace q = diag(d);
    Rational c = q.evaluate(v);
    if (c == 0) continue;
    for (const auto& place : relevant_places({d[0], d[1], d[2], c})) EXPECT_TRUE(represents(q, c, place));
  }
}
