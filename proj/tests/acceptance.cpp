// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "nilpal/autofile.hpp"
#include "nilpal/autos.hpp"
#include "nilpal/central.hpp"
#include "nilpal/foxring.hpp"
#include "nilpal/verify.hpp"
#include "oracle.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace nilpal;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    } else if (!cond) {
      ok = false;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

bool suite_passes(Outcome& o, const std::string& name, int rank, int step, int cases = 100, std::uint64_t seed = 1) {
  SuiteReport r = run_suite(name, {rank, step, seed, cases});
  o.require(r.passed(), name + " n=" + std::to_string(rank) + " k=" + std::to_string(step) + ": " +
                            std::to_string(r.failures) + " failures" + (r.details.empty() ? "" : ", first " + r.details[0]));
  return r.passed();
}

Outcome bar_of_commutators() {
  Outcome o;
  long long total = 0;
  for (int n = 1; n <= 3; ++n) {
    SuiteReport r = run_suite("lemma2.5", {n, 5, 1, 1});
    o.require(r.passed(), "n=" + std::to_string(n) + ": " + std::to_string(r.failures) + " failures");
    total += r.cases;
  }
  o.note(std::to_string(total) + " generator tuples");
  return o;
}

Outcome w2k_identities() {
  Outcome o;
  long long total = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int k : {3, 5}) {
      SuiteReport r = run_suite("prop2.8", {n, k, 7, 100});
      o.require(r.passed(), "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": " + std::to_string(r.failures) + " failures");
      total += r.cases;
    }
  }
  o.note(std::to_string(total) + " tuples");
  return o;
}

Outcome palindromic_inverse() {
  Outcome o;
  std::mt19937_64 rng(2024);
  int tested = 0, skipped = 0, factors = 0;
  for (int round = 0; tested < 240; ++round) {
    int n = 2 + round % 3, k = 1 + (round / 3) % 3;
    auto g = NilpotentGroup::get(n, k);
    auto [e, q] = random_elementary_palindromic(g, rng, 5);
    if (!is_automorphism(e)) {
      ++skipped;
      continue;
    }
    ++tested;
    InverseTrace t = inverse_trace(e);
    std::string tag = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " case " + std::to_string(tested);
    o.require(t.palindromic, tag + ": palindromic algorithm not used");
    o.require(compose(e, t.inverse).is_identity() && compose(t.inverse, e).is_identity(), tag + ": round trip");
    o.require(t.factors.size() == t.factor_witnesses.size(), tag + ": witnesses missing");
    Endo chain = Endo::identity(g);
    for (std::size_t f = 0; f < t.factors.size(); ++f) {
      ++factors;
      o.require(palindromic_endo(g, t.factor_witnesses[f]) == t.factors[f], tag + ": factor witnesses disagree");
      o.require(elementary_witnesses(t.factors[f]).has_value(), tag + ": factor not elementary palindromic");
      chain = compose(chain, t.factors[f]);
    }
    o.require(chain == t.inverse, tag + ": factors do not compose to the inverse");
  }
  o.note(std::to_string(tested) + " automorphisms, " + std::to_string(factors) + " factors, " + std::to_string(skipped) +
         " non-invertible samples skipped");
  return o;
}

Outcome parity_and_level_two() {
  Outcome o;
  std::mt19937_64 rng(99);
  int tested = 0;
  for (int round = 0; round < 1200; ++round) {
    int n = 1 + round % 4, k = 1 + (round / 4) % 3;
    auto g = NilpotentGroup::get(n, k);
    auto [e, q] = random_elementary_palindromic(g, rng, 6);
    if (!is_automorphism(e)) continue;
    Classification c = classify(e);
    ++tested;
    o.require(c.parity, "parity fails for witnesses " + render(q[0]));
    o.require(c.is_elementary_palindromic, "constructed automorphism not recognised, first witness " + render(q[0]));
  }
  for (int n = 2; n <= 4; ++n) {
    suite_passes(o, "prop3.1", n, 2, 100, 5);
    suite_passes(o, "prop3.3", n, 2);
  }
  o.note(std::to_string(tested) + " parity checks");
  return o;
}

Outcome fox_table() {
  Outcome o;
  for (int n : {3, 4}) suite_passes(o, "foxtable", n, 3);
  auto r = bglm_condition({parse_word("[x1,x2,x1]", 2), Word(2)});
  o.require(!r.satisfied, "wild example satisfies the condition");
  o.require(r.residue == RingElemModR::monomial(2, 1, 2, 1), "wild example residue " + render_residue(r.residue));
  o.note("wild example residue " + render_residue(r.residue));
  return o;
}

Outcome tameness_patterns() {
  Outcome o;
  for (int n = 2; n <= 4; ++n) {
    suite_passes(o, "lemma5.3", n, 3);
    suite_passes(o, "lemma5.4", n, 3);
  }
  for (int n = 3; n <= 4; ++n) {
    o.require(verify_tame_factorization(TameFactorization::PhiDistinct, n, 2, 3, 1).passed(), "phi2 factorization");
    o.require(verify_tame_factorization(TameFactorization::PhiCentreSquared, n, 2, 3, 1).passed(), "phi3 factorization");
    o.require(verify_tame_factorization(TameFactorization::InnerSquare, n, 2, 3, 1).passed(), "inner factorization");
  }
  return o;
}

Outcome central_decomposition() {
  Outcome o;
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> expo(-3, 3), len(1, 5);
  int tested = 0;
  for (int n : {2, 3}) {
    auto g = NilpotentGroup::get(n, 3);
    std::vector<GeneratorSymbol> pool;
    for (int i = 1; i <= n; ++i)
      for (const auto& s : h_lattice(g, i).symbols) pool.push_back(s);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int c = 0; c < 120; ++c) {
      std::vector<GeneratorSymbol> prod;
      for (int t = len(rng); t > 0; --t) {
        auto s = pool[pick(rng)];
        s.exponent = expo(rng);
        if (s.exponent != 0) prod.push_back(s);
      }
      Endo e = compose_symbols(prod, g);
      Decomposition d = decompose_central(e);
      ++tested;
      o.require(d.residual_trivial && compose_symbols(d.factors, g) == e, "round trip of " + render(prod));
    }
  }
  std::string qs;
  const long long expected[] = {1, 5, 14};
  for (int n = 2; n <= 4; ++n) {
    long long from_snf = quotient_rank_from_snf(n);
    o.require(from_snf == quotient_rank_q(n) && from_snf == expected[n - 2],
              "n=" + std::to_string(n) + ": q=" + std::to_string(from_snf));
    qs += (qs.empty() ? "" : ",") + std::to_string(from_snf);
  }
  o.note(std::to_string(tested) + " round trips, q=" + qs);
  return o;
}

Outcome tame_subgroup() {
  Outcome o;
  suite_passes(o, "thm5.8-n2", 2, 3);
  auto g2 = NilpotentGroup::get(2, 3);
  Endo single = make_endo(g2, std::vector<Word>{parse_word("x1 [x2,x1,x1]^2", 2), parse_word("x2 [x2,x1,x2]^2", 2)});
  o.require(single == make_generator(GeneratorSymbol::inner("[x1,x2]^2"), g2), "n=2 generator is not the inner automorphism");

  auto g = NilpotentGroup::get(3, 3);
  auto gens = bglm_generators(3);
  std::mt19937_64 rng(58);
  std::uniform_int_distribution<int> expo(-2, 2), len(1, 4);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  int tested = 0;
  for (int c = 0; c < 120; ++c) {
    std::vector<GeneratorSymbol> prod;
    for (int t = len(rng); t > 0; --t) {
      const auto& gen = gens[pick(rng)];
      int m = expo(rng);
      for (auto s : gen.parts) {
        s.exponent *= m;
        prod.push_back(s);
      }
    }
    Endo e = compose_symbols(prod, g);
    Decomposition d = decompose_bglm(e);
    ++tested;
    o.require(d.residual_trivial && compose_symbols(d.factors, g) == e, "round trip of " + render(prod));
  }
  o.note(std::to_string(tested) + " round trips at n=3 over " + std::to_string(gens.size()) + " relabeled generators");
  return o;
}

Outcome parity_of_central() {
  Outcome o;
  // N_{2,2}: every witness pair with exponents in [-2,2]
  auto g = NilpotentGroup::get(2, 2);
  int d = g->dimension();
  std::vector<NilElement> all;
  IntVector v(d, -2);
  for (;;) {
    all.push_back(g->element(v));
    int t = d - 1;
    while (t >= 0 && v[t] == 2) v[t--] = -2;
    if (t < 0) break;
    ++v[t];
  }
  long long pairs = 0, central = 0;
  for (const auto& p : all)
    for (const auto& q : all) {
      ++pairs;
      Endo e = palindromic_endo(g, {p, q});
      bool is_central = true;
      for (int i = 1; i <= 2; ++i) is_central = is_central && (g->generator(i).inverse() * e.image(i)).weight() > 1;
      if (!is_central) continue;
      ++central;
      o.require(e.is_identity(), "nontrivial central example with witnesses " + render(p) + ", " + render(q));
    }
  // N_{2,3}: x_i -> x_i c^2 for each weight-three basis element c
  auto g3 = NilpotentGroup::get(2, 3);
  const auto& B = g3->basis();
  int accepted = 0, tried = 0;
  for (int m = B.begin(3); m < B.end(3); ++m)
    for (int i = 1; i <= 2; ++i) {
      std::vector<NilElement> im = {g3->generator(1), g3->generator(2)};
      im[i - 1] = im[i - 1] * g3->basis_element(m).power(2);
      Endo e(g3, im);
      ++tried;
      auto c = classify(e);
      bool ok = c.is_central && c.is_elementary_palindromic && elementary_witnesses(e).has_value();
      accepted += ok;
      o.require(ok, "x" + std::to_string(i) + " -> x" + std::to_string(i) + " " + render(g3->basis_element(m)) + "^2 rejected");
    }
  o.note(std::to_string(pairs) + " witness pairs in N(2,2), " + std::to_string(central) + " central, all trivial; " +
         std::to_string(accepted) + "/" + std::to_string(tried) + " accepted in N(2,3)");
  return o;
}

Outcome matrix_oracle() {
  Outcome o;
  std::mt19937_64 rng(10);
  int tested = 0;
  for (int k = 1; k <= 3; ++k) {
    auto g = NilpotentGroup::get(2, k);
    oracle::UnitriangularRep rep(2, k);
    for (int c = 0; c < 1000; ++c) {
      Word w = oracle::random_word(rng, 2, 20);
      NilElement x = g->collect(w);
      std::vector<long long> e;
      for (const auto& v : x.exponents()) e.push_back(to_int64(v));
      ++tested;
      o.require(rep.of_word(w) == rep.of_normal_form(g->basis(), e), "k=" + std::to_string(k) + " word " + render(w));
    }
  }
  o.note(std::to_string(tested) + " words");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {"bar reverses commutators with sign (-1)^(k+1)", bar_of_commutators},
      {"w2 and w4 identities", w2k_identities},
      {"palindromic inverse round trip with palindromic factors", palindromic_inverse},
      {"parity criterion and the step-two palindromic facts", parity_and_level_two},
      {"Fox table and wild example", fox_table},
      {"tameness classification of phi2 and phi3", tameness_patterns},
      {"central decomposition and residue group rank", central_decomposition},
      {"tame subgroup generators and decomposition", tame_subgroup},
      {"no central palindromic automorphisms in even step", parity_of_central},
      {"collector against unitriangular matrices", matrix_oracle},
  };
  int failed = 0, idx = 0;
  for (const auto& [name, run] : criteria) {
    ++idx;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %s (%.1fs)%s%s\n", o.ok ? "PASS" : "FAIL", idx, name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    failed += !o.ok;
  }
  return failed == 0 ? 0 : 1;
}
