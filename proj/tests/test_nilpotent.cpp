#include "nilpal/nilpotent.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace nilpal;

namespace {

std::vector<long long> small(const NilElement& g) {
  std::vector<long long> e;
  for (const auto& v : g.exponents()) e.push_back(to_int64(v));
  return e;
}

// Witt's necklace count of basic commutators of weight w on n letters.
long long witt(int n, int w) {
  auto mobius = [](int m) {
    int r = 1;
    for (int p = 2; p * p <= m; ++p)
      if (m % p == 0) {
        m /= p;
        if (m % p == 0) return 0;
        r = -r;
      }
    return m > 1 ? -r : r;
  };
  long long s = 0;
  for (int d = 1; d <= w; ++d)
    if (w % d == 0) {
      long long p = 1;
      for (int t = 0; t < w / d; ++t) p *= n;
      s += mobius(d) * p;
    }
  return s / w;
}

}  // namespace

TEST(HallBasis, SmallCases) {
  auto g = NilpotentGroup::get(2, 3);
  std::vector<std::string> names;
  for (int m = 0; m < g->dimension(); ++m) names.push_back(render(g->basis_element(m)));
  EXPECT_EQ(names, (std::vector<std::string>{"x1", "x2", "[x2,x1]", "[x2,x1,x1]", "[x2,x1,x2]"}));
  EXPECT_EQ(NilpotentGroup::get(3, 2)->dimension(), 6);
  EXPECT_EQ(NilpotentGroup::get(2, 1)->dimension(), 2);
}

TEST(HallBasis, LayerSizesMatchWitt) {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= (n <= 2 ? 6 : 4); ++k) {
      const auto& B = NilpotentGroup::get(n, k)->basis();
      for (int w = 1; w <= k; ++w) EXPECT_EQ(B.layer_size(w), witt(n, w)) << n << " " << k << " " << w;
    }
}

TEST(Collect, Examples) {
  auto g = NilpotentGroup::get(2, 2);
  EXPECT_EQ(render(g->parse("x2 x1")), "x1 * x2 * [x2,x1]");
  EXPECT_EQ(g->parse("[x2,x1]"), g->basis_element(2));
  EXPECT_TRUE(g->parse("x1 x1^-1").is_identity());
  EXPECT_TRUE(g->parse("[x2,x1,x1]").is_identity());
  EXPECT_EQ(g->generator(1) * g->identity(), g->generator(1));
  EXPECT_EQ(commutator(g->generator(2), g->generator(1)), g->basis_element(2));
  EXPECT_EQ(g->basis_element(2).power(-2)[2], -2);
}

TEST(Collect, Bar) {
  auto g2 = NilpotentGroup::get(2, 2);
  EXPECT_EQ(bar(g2->basis_element(2)), g2->basis_element(2).inverse());
  auto g3 = NilpotentGroup::get(2, 3);
  EXPECT_EQ(bar(g3->parse("[x2,x1,x1]")), g3->parse("[x2,x1,x1]"));
  EXPECT_EQ(bar(g3->generator(1)), g3->generator(1));
}

TEST(Collect, Weight) {
  auto g = NilpotentGroup::get(2, 3);
  EXPECT_EQ(g->generator(1).weight(), 1);
  EXPECT_EQ(g->parse("[x2,x1]").weight(), 2);
  EXPECT_EQ(g->identity().weight(), 4);
}

TEST(Collect, W2kExamples) {
  auto g = NilpotentGroup::get(2, 3);
  std::vector<NilElement> y = {g->generator(1), g->generator(2)};
  auto [lhs, rhs] = w2k_sides(y);
  EXPECT_EQ(lhs, rhs);
  EXPECT_EQ(lhs, commutator({y[0], y[1], y[0] * y[1]}));
  std::vector<NilElement> same = {g->generator(1), g->generator(1)};
  EXPECT_TRUE(w2k_sides(same).first.is_identity());
  auto g5 = NilpotentGroup::get(2, 5);
  std::vector<NilElement> y4 = {g5->generator(1), g5->generator(2), g5->generator(1), g5->generator(2)};
  EXPECT_TRUE(verify_w2k(y4));
}

// Collection agrees with the Magnus embedding, which never uses the collector.
TEST(Collect, MagnusOracle) {
  std::mt19937_64 rng(3);
  for (auto [n, k] : {std::pair{2, 4}, {3, 3}, {3, 4}, {4, 3}}) {
    auto g = NilpotentGroup::get(n, k);
    for (int c = 0; c < 150; ++c) {
      Word w = oracle::random_word(rng, n, 16);
      EXPECT_EQ(oracle::MagnusSeries::of_word(w, k), oracle::series_of_normal_form(g->basis(), small(g->collect(w)), k))
          << render(w);
    }
  }
}

TEST(Collect, HomomorphismAndGroupLaws) {
  std::mt19937_64 rng(4);
  auto g = NilpotentGroup::get(3, 4);
  for (int c = 0; c < 100; ++c) {
    Word u = oracle::random_word(rng, 3, 10), v = oracle::random_word(rng, 3, 10), t = oracle::random_word(rng, 3, 6);
    NilElement a = g->collect(u), b = g->collect(v), d = g->collect(t);
    EXPECT_EQ(g->collect(u * v), a * b);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ(a.power(3) * a.power(-5), a.power(-2));
  }
}

TEST(Collect, BarIsAnInvolutiveAntihomomorphism) {
  std::mt19937_64 rng(5);
  auto g = NilpotentGroup::get(3, 4);
  for (int c = 0; c < 100; ++c) {
    Word u = oracle::random_word(rng, 3, 10), v = oracle::random_word(rng, 3, 10);
    NilElement a = g->collect(u), b = g->collect(v);
    EXPECT_EQ(bar(a * b), bar(b) * bar(a));
    EXPECT_EQ(bar(bar(a)), a);
    // bar is the reversal of any representing word
    EXPECT_EQ(bar(a), g->collect(u.reversed()));
  }
}

// [x, yz] = [x,z][x,y]^z and [xy, z] = [x,z]^y [y,z] hold in any group.
TEST(Collect, CommutatorIdentities) {
  std::mt19937_64 rng(6);
  auto g = NilpotentGroup::get(2, 5);
  for (int c = 0; c < 60; ++c) {
    NilElement x = g->collect(oracle::random_word(rng, 2, 6)), y = g->collect(oracle::random_word(rng, 2, 6)),
               z = g->collect(oracle::random_word(rng, 2, 6));
    EXPECT_EQ(commutator(x, y * z), commutator(x, z) * z.inverse() * commutator(x, y) * z);
    EXPECT_EQ(commutator(x * y, z), y.inverse() * commutator(x, z) * y * commutator(y, z));
  }
}

// The top layer is central and multilinear in the entries of a commutator.
TEST(Collect, TopLayerMultilinear) {
  auto g = NilpotentGroup::get(3, 3);
  auto x = [&](int i) { return g->generator(i); };
  EXPECT_EQ(commutator({x(1) * x(2), x(3), x(1)}), commutator({x(1), x(3), x(1)}) * commutator({x(2), x(3), x(1)}));
  EXPECT_EQ(commutator({x(2), x(1).power(3), x(3)}), commutator({x(2), x(1), x(3)}).power(3));
}

TEST(Collect, Substitute) {
  auto g = NilpotentGroup::get(2, 3);
  std::vector<NilElement> im = {g->generator(2), g->generator(1)};
  EXPECT_EQ(substitute(g->parse("[x2,x1,x1]"), im), g->parse("[x1,x2,x2]"));
  EXPECT_EQ(g->collect(to_word(g->parse("x2 x1 [x1,x2,x2]^-3"))), g->parse("x2 x1 [x1,x2,x2]^-3"));
}

TEST(Collect, RenderRoundTrip) {
  std::mt19937_64 rng(7);
  auto g = NilpotentGroup::get(3, 3);
  for (int c = 0; c < 50; ++c) {
    NilElement a = g->collect(oracle::random_word(rng, 3, 12));
    EXPECT_EQ(g->parse(render(a)), a);
  }
}
