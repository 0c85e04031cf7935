#pragma once

// Deterministic verification suites over the identities the library relies
// on. Each suite returns counts and a sorted list of failure details.

#include "nilpal/autos.hpp"
#include "nilpal/central.hpp"
#include "nilpal/foxring.hpp"
#include "nilpal/nilpotent.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilpal {

struct SuiteParams {
  int rank = 3;
  int step = 3;
  std::uint64_t seed = 1;
  int cases = 100;
};

struct SuiteReport {
  std::string suite;
  long long cases = 0;
  long long failures = 0;
  std::vector<std::pair<std::string, std::string>> facts;  // extra key/value lines, fixed order
  std::vector<std::string> details;                        // failure descriptions, sorted
  bool passed() const { return failures == 0 && cases > 0; }

  void fail(std::string what) {
    ++failures;
    details.push_back(std::move(what));
  }
  void check(bool ok, const std::function<std::string()>& what) {
    ++cases;
    if (!ok) fail(what());
  }
};

class SuiteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Word random_word(std::mt19937_64& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(1, n), sgn(0, 1);
  std::vector<Letter> ls;
  int L = len(rng);
  for (int t = 0; t < L; ++t) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
  return Word(n, ls);
}

inline NilElement random_element(const GroupPtr& g, std::mt19937_64& rng, int max_len = 8) {
  return g->collect(random_word(rng, g->rank(), max_len));
}

/// A random elementary palindromic automorphism with its witnesses.
inline std::pair<Endo, std::vector<NilElement>> random_elementary_palindromic(const GroupPtr& g, std::mt19937_64& rng,
                                                                              int max_len = 6) {
  std::vector<NilElement> q;
  for (int i = 0; i < g->rank(); ++i) q.push_back(random_element(g, rng, max_len));
  return {palindromic_endo(g, q), q};
}

namespace suites {

inline std::string join_indices(const std::vector<int>& v) {
  std::string s;
  for (int i : v) s += (s.empty() ? "" : ",") + std::string("x") + std::to_string(i);
  return s;
}

inline void lemma25(SuiteReport& r, const SuiteParams& p) {
  if (p.rank < 1 || p.step < 1) throw SuiteError("lemma2.5 needs rank >= 1 and step >= 1");
  for (int len = 1; len <= p.step; ++len) {
    auto g = NilpotentGroup::get(p.rank, len);
    std::vector<int> idx(len, 1);
    for (;;) {
      std::vector<NilElement> y;
      for (int i : idx) y.push_back(g->generator(i));
      NilElement z = commutator(std::span<const NilElement>(y));
      r.check(bar(z) == z.power(len % 2 == 1 ? 1 : -1), [&] { return "[" + join_indices(idx) + "]"; });
      int t = len - 1;
      while (t >= 0 && idx[t] == p.rank) idx[t--] = 1;
      if (t < 0) break;
      ++idx[t];
    }
  }
}

inline void prop28(SuiteReport& r, const SuiteParams& p) {
  if (p.step < 3 || p.step % 2 == 0) throw SuiteError("prop2.8 needs an odd step >= 3");
  auto g = NilpotentGroup::get(p.rank, p.step);
  int len = p.step - 1;
  auto run = [&](const std::vector<int>& idx) {
    std::vector<NilElement> y;
    for (int i : idx) y.push_back(g->generator(i));
    r.check(verify_w2k(y), [&] { return "y = (" + join_indices(idx) + ")"; });
  };
  if (len == 2) {
    for (int a = 1; a <= p.rank; ++a)
      for (int b = 1; b <= p.rank; ++b) run({a, b});
  } else {
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> gen(1, p.rank);
    for (int c = 0; c < p.cases; ++c) {
      std::vector<int> idx(len);
      for (auto& i : idx) i = gen(rng);
      run(idx);
    }
  }
}

inline void jacobi(SuiteReport& r, const SuiteParams& p) {
  if (p.rank < 3) throw SuiteError("jacobi needs rank >= 3");
  auto g = NilpotentGroup::get(p.rank, 3);
  auto x = [&](int i) { return g->generator(i); };
  for (int k = 1; k <= p.rank; ++k)
    for (int i = 1; i <= p.rank; ++i)
      for (int a = 1; a <= p.rank; ++a) {
        if (k == i || i == a || k == a) continue;
        NilElement prod = commutator({x(k), x(i), x(a)}) * commutator({x(i), x(a), x(k)}) * commutator({x(a), x(k), x(i)});
        r.check(prod.is_identity(), [&] { return "(" + join_indices({k, i, a}) + ")"; });
      }
}

inline void lemma42(SuiteReport& r, const SuiteParams& p) {
  if (p.rank < 2) throw SuiteError("lemma4.2 needs rank >= 2");
  auto g = NilpotentGroup::get(p.rank, 3);
  auto x = [&](int i) { return g->generator(i); };
  std::mt19937_64 rng(p.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int c = 0; c < p.cases; ++c) {
    NilElement y = random_element(g, rng, 8);
    NilElement u = g->identity(), rhs = y;
    for (int a = 1; a <= p.rank; ++a)
      for (int b = 1; b < a; ++b) {
        int pab = coef(rng);
        u *= commutator(x(a), x(b)).power(pab);
        rhs *= (commutator({x(a), x(b), y}) * commutator({x(a), x(b), x(b)}) * commutator({x(a), x(b), x(a)})).power(pab);
      }
    r.check(u * y * bar(u) == rhs, [&] { return "x = " + render(y) + ", u = " + render(u); });
  }
}

inline void foxtable(SuiteReport& r, const SuiteParams& p) {
  auto t = check_fox_table(p.rank);
  int row = 0;
  for (const auto& rr : t.rows) {
    ++row;
    r.facts.push_back({"row" + std::to_string(row), rr.formula + " assignments=" + std::to_string(rr.assignments) +
                                                        " failures=" + std::to_string(rr.failures)});
    r.cases += rr.assignments;
    if (rr.failures) {
      r.failures += rr.failures;
      r.details.push_back(rr.formula + ": " + rr.first_failure);
    }
  }
}

inline void lemma53(SuiteReport& r, const SuiteParams& p) {
  if (p.rank < 2) throw SuiteError("lemma5.3 needs rank >= 2");
  auto g = NilpotentGroup::get(p.rank, 3);
  for (int a = 1; a <= p.rank; ++a)
    for (int b = 1; b <= p.rank; ++b)
      for (int i = 1; i <= p.rank; ++i) {
        if (a == b) continue;
        auto t = tameness_necessary(make_generator(GeneratorSymbol::phi2(a, b, i), g));
        bool expect = i != a && i != b;
        std::string name = "phi2(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(i) + ")";
        r.check(t.satisfied == expect, [&] { return name + ": condition " + (t.satisfied ? "holds" : "fails"); });
        if (a == i) {
          RingElemModR want = RingElemModR::monomial(p.rank, i, b, 2) + RingElemModR::monomial(p.rank, b, b, 1);
          r.check(t.residue == want, [&] { return name + ": residue " + render_residue(t.residue); });
        }
        if (expect)
          r.check(verify_tame_factorization(TameFactorization::PhiDistinct, p.rank, a, b, i).passed(),
                  [&] { return name + ": explicit factorization"; });
      }
}

inline void lemma54(SuiteReport& r, const SuiteParams& p) {
  if (p.rank < 2) throw SuiteError("lemma5.4 needs rank >= 2");
  auto g = NilpotentGroup::get(p.rank, 3);
  long long literal_disagreements = 0, nielsen = 0;
  for (int a = 1; a <= p.rank; ++a)
    for (int b = 1; b <= p.rank; ++b)
      for (int c = 1; c <= p.rank; ++c)
        for (int i = 1; i <= p.rank; ++i) {
          if (a == b) continue;
          auto t = tameness_necessary(make_generator(GeneratorSymbol::phi3(a, b, c, i), g));
          bool expect = i != a && i != b;
          std::string name = "phi3(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ";" +
                             std::to_string(i) + ")";
          r.check(t.satisfied == expect, [&] { return name + ": condition " + (t.satisfied ? "holds" : "fails"); });
          bool distinct4 = c != a && c != b && c != i && expect;
          bool centre = c == i && expect;
          if (expect != (distinct4 || centre)) {
            // i outside {a, b, c}: x_i -> x_i [x_a,x_b,x_c]^2 is a Nielsen move
            ++literal_disagreements;
            if (i != c) ++nielsen;
          }
          if (centre)
            r.check(verify_tame_factorization(TameFactorization::PhiCentreSquared, p.rank, a, b, i).passed(),
                    [&] { return name + ": explicit factorization"; });
        }
  r.facts.push_back({"pairwise_distinct_reading_disagreements", std::to_string(literal_disagreements)});
  r.facts.push_back({"of_which_nielsen_moves", std::to_string(nielsen)});
}

inline void thm58n2(SuiteReport& r, const SuiteParams&) {
  auto g = NilpotentGroup::get(2, 3);
  Endo e = make_endo(g, std::vector<Word>{parse_word("x1 [x2,x1,x1]^2", 2), parse_word("x2 [x2,x1,x2]^2", 2)});
  Endo inner = make_generator(GeneratorSymbol::inner("[x1,x2]^2"), g);
  r.check(e == inner, [] { return "generator differs from conjugation by [x1,x2]^2"; });
  r.check(decompose_central(e).residual_trivial, [] { return "generator is not central palindromic"; });
  r.check(tameness_necessary(e).satisfied, [] { return "generator fails the tameness condition"; });
  auto d = decompose_bglm(e);
  r.check(d.residual_trivial && d.factors.size() == 1 && d.factors[0] == GeneratorSymbol::inner("[x1,x2]^2"),
          [&] { return "decomposition " + render(d.factors); });
  r.facts.push_back({"generator", "x1 -> " + render(e.image(1)) + "; x2 -> " + render(e.image(2))});
}

inline void prop31(SuiteReport& r, const SuiteParams& p) {
  auto g = NilpotentGroup::get(p.rank, 2);
  std::mt19937_64 rng(p.seed);
  for (int c = 0; c < p.cases; ++c) {
    // witnesses with equal abelianizations but unrelated commutator parts
    std::vector<NilElement> q1, q2;
    for (int i = 0; i < p.rank; ++i) {
      NilElement q = random_element(g, rng, 8);
      q1.push_back(q);
      q2.push_back(q * commutator(random_element(g, rng, 6), random_element(g, rng, 6)).power(1 + c % 3));
    }
    Endo e1 = palindromic_endo(g, q1), e2 = palindromic_endo(g, q2);
    r.check(e1.matrix() == e2.matrix() && e1 == e2, [&] { return "witnesses " + render(q1[0]) + " vs " + render(q2[0]); });
  }
}

inline void prop33(SuiteReport& r, const SuiteParams& p) {
  auto g = NilpotentGroup::get(p.rank, 2);
  const auto& B = g->basis();
  int d = B.layer_size(2);
  for (int i = 1; i <= p.rank; ++i) {
    IntVector e(d, -3);
    for (;;) {
      if (!is_zero(e)) {
        IntVector v = g->identity_vector();
        for (int t = 0; t < d; ++t) v[B.begin(2) + t] = e[t];
        NilElement target = g->generator(i) * g->element(v);
        r.check(!solve_conjugator(target, i, 1), [&] { return "x" + std::to_string(i) + " * " + render(g->element(v)); });
      }
      int t = d - 1;
      while (t >= 0 && e[t] == 3) e[t--] = -3;
      if (t < 0) break;
      ++e[t];
    }
  }
}

}  // namespace suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma2.5", "prop2.8",  "jacobi",    "lemma4.2", "foxtable",
                                                 "lemma5.3", "lemma5.4", "thm5.8-n2", "prop3.1",  "prop3.3"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteParams& p) {
  static const std::map<std::string, std::function<void(SuiteReport&, const SuiteParams&)>> table = {
      {"lemma2.5", suites::lemma25}, {"prop2.8", suites::prop28},   {"jacobi", suites::jacobi},
      {"lemma4.2", suites::lemma42}, {"foxtable", suites::foxtable}, {"lemma5.3", suites::lemma53},
      {"lemma5.4", suites::lemma54}, {"thm5.8-n2", suites::thm58n2}, {"prop3.1", suites::prop31},
      {"prop3.3", suites::prop33}};
  auto it = table.find(name);
  if (it == table.end()) throw SuiteError("unknown suite '" + name + "'");
  if (p.rank < 1) throw SuiteError("rank must be positive");
  SuiteReport r;
  r.suite = name;
  it->second(r, p);
  std::sort(r.details.begin(), r.details.end());
  return r;
}

}  // namespace nilpal
