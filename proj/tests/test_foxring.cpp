#include "nilpal/foxring.hpp"
#include "nilpal/expr.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilpal;

namespace {
using R = RingElemModR;
Word w(const char* s, int n) { return parse_word(s, n); }
}  // namespace

TEST(FoxRing, Embedding) {
  R x1 = embed(Word::generator(2, 1));
  EXPECT_EQ(x1.constant_term(), 1);
  EXPECT_EQ(x1.linear(1), 1);
  EXPECT_TRUE(x1.quadratic_is_zero());
  R inv = embed(Word::generator(2, 1, -1));
  EXPECT_EQ(inv.linear(1), -1);
  EXPECT_EQ(inv.quadratic(1, 1), 1);
  // commutators become 1 since R kills [Delta, Delta]
  EXPECT_EQ(embed(w("[x1,x2]", 2)), R::constant(2, 1));
}

TEST(FoxRing, Multiplication) {
  R a = R::x_minus_one(2, 1), b = R::x_minus_one(2, 2);
  EXPECT_EQ(a * b, R::monomial(2, 1, 2));
  EXPECT_EQ(a * b, b * a);
  EXPECT_TRUE((a * b * a).is_zero());
  EXPECT_EQ(render_residue(R::monomial(3, 2, 1, 3) - R::monomial(3, 3, 3)), "(1,2): 3, (3,3): -1");
  EXPECT_EQ(render_residue(R(2)), "0");
}

TEST(FoxRing, DerivativeExamples) {
  EXPECT_EQ(fox_derivative(Word::generator(2, 1), 1), R::constant(2, 1));
  EXPECT_EQ(fox_derivative(w("[x1,x2,x3]", 3), 1), R::monomial(3, 2, 3));
  EXPECT_EQ(fox_derivative(w("[x1,x2,x1]", 2), 1), R::monomial(2, 1, 2));
}

// Fundamental formula: w - 1 = sum_j d_j(w) (x_j - 1), and the product rule.
TEST(FoxRing, FundamentalFormulaAndProductRule) {
  std::mt19937_64 rng(11);
  for (int c = 0; c < 200; ++c) {
    int n = 2 + c % 3;
    Word u = oracle::random_word(rng, n, 10), v = oracle::random_word(rng, n, 10);
    R sum(n);
    for (int j = 1; j <= n; ++j) sum = sum + fox_derivative(u, j) * R::x_minus_one(n, j);
    EXPECT_EQ(sum, embed(u) - R::constant(n, 1));
    for (int j = 1; j <= n; ++j)
      EXPECT_EQ(fox_derivative(u * v, j), fox_derivative(u, j) + embed(u) * fox_derivative(v, j));
  }
}

TEST(FoxRing, Table) {
  for (int n : {3, 4}) {
    auto t = check_fox_table(n);
    EXPECT_TRUE(t.passed());
    EXPECT_EQ(t.rows.size(), 8u);
  }
  auto t2 = check_fox_table(2);
  for (const auto& row : t2.rows) EXPECT_EQ(row.failures, 0);
}

TEST(FoxRing, Condition) {
  auto wild = bglm_condition({w("[x1,x2,x1]", 2), Word(2)});
  EXPECT_FALSE(wild.satisfied);
  EXPECT_EQ(wild.residue, R::monomial(2, 1, 2));
  EXPECT_TRUE(bglm_condition({Word(3), Word(3), Word(3)}).satisfied);
  // x1 -> x1 [x2,x3,x1][x2,x3,x3][x2,x3,x2], the distinct-index phi2
  EXPECT_TRUE(bglm_condition({w("[x2,x3,x1][x2,x3,x3][x2,x3,x2]", 3), Word(3), Word(3)}).satisfied);
  EXPECT_THROW(bglm_condition({w("x1", 2), Word(2)}), PreconditionError);
  EXPECT_THROW(bglm_condition({w("[x1,x2]", 2), Word(2)}), PreconditionError);
}
