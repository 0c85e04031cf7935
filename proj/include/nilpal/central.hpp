#pragma once

// Central automorphisms of N_{n,3}: x_i -> x_i c_i with c_i in gamma_3. They
// commute and compose by adding the c_i, so decompositions reduce to integer
// lattice membership in the weight-three layer.

#include "nilpal/autos.hpp"
#include "nilpal/foxring.hpp"
#include "nilpal/lattice.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilpal {

inline void require_step3(const NilpotentGroup& G) {
  if (G.step() != 3) throw StepUnsupported("this operation needs step 3");
}

/// Weight-3 coordinates of x_i^-1 x_i^e for each i, when every one lies in gamma_3.
inline std::optional<std::vector<IntVector>> central_part(const Endo& e) {
  require_step3(e.G());
  std::vector<IntVector> out;
  for (int i = 1; i <= e.rank(); ++i) {
    NilElement c = e.G().generator(i).inverse() * e.image(i);
    if (c.weight() < 3) return std::nullopt;
    out.push_back(c.layer(3));
  }
  return out;
}

inline Endo central_endo(const GroupPtr& g, const std::vector<IntVector>& parts) {
  require_step3(*g);
  const auto& B = g->basis();
  std::vector<NilElement> c;
  for (const auto& p : parts) {
    IntVector v = g->identity_vector();
    for (int m = B.begin(3); m < B.end(3); ++m) v[m] = p.at(m - B.begin(3));
    c.push_back(g->element(std::move(v)));
  }
  return translation_endo(g, c);
}

/// Generators of the lattice H for target index i: the phi2 rows
/// [x_a,x_b,x_i][x_a,x_b,x_b][x_a,x_b,x_a] (b < a) followed by the doubled
/// weight-3 basis elements [x_a,x_b,x_c]^2 (b < a, b <= c), with their symbols.
struct HLattice {
  IntMatrix rows;
  std::vector<GeneratorSymbol> symbols;
};

inline HLattice h_lattice(const GroupPtr& g, int i) {
  require_step3(*g);
  const auto& B = g->basis();
  int n = g->rank();
  HLattice h;
  auto x = [&](int j) { return g->generator(j); };
  for (int a = 1; a <= n; ++a)
    for (int b = 1; b < a; ++b) {
      h.rows.push_back((commutator({x(a), x(b), x(i)}) * commutator({x(a), x(b), x(b)}) * commutator({x(a), x(b), x(a)})).layer(3));
      h.symbols.push_back(GeneratorSymbol::phi2(a, b, i));
    }
  for (int m = B.begin(3); m < B.end(3); ++m) {
    const auto& c = B[m];
    const auto& left = B[c.left];
    IntVector row(B.layer_size(3), 0);
    row[m - B.begin(3)] = 2;
    h.rows.push_back(std::move(row));
    h.symbols.push_back(GeneratorSymbol::phi3(B[left.left].generator, B[left.right].generator, B[c.right].generator, i));
  }
  return h;
}

/// n(n^2-1)/3 - n(n-1)/2.
inline long long quotient_rank_q(int n) {
  if (n < 2) throw std::invalid_argument("quotient rank needs n >= 2");
  long long N = n;
  return N * (N * N - 1) / 3 - N * (N - 1) / 2;
}

/// Smith invariants of the H-lattice inside the weight-3 layer, for target index i.
inline IntVector h_lattice_invariants(int n, int i = 1) {
  auto h = h_lattice(NilpotentGroup::get(n, 3), i);
  return lattice::smith_invariants(h.rows);
}

/// The number of invariant factors equal to 2 (the quotient is (Z/2)^that),
/// or -1 if the quotient is not an elementary abelian 2-group of full rank.
inline long long quotient_rank_from_snf(int n, int i = 1) {
  auto g = NilpotentGroup::get(n, 3);
  auto d = h_lattice_invariants(n, i);
  if (static_cast<int>(d.size()) != g->basis().layer_size(3)) return -1;
  long long twos = 0;
  for (const auto& x : d) {
    if (x == 2)
      ++twos;
    else if (x != 1)
      return -1;
  }
  return twos;
}

namespace detail {
inline bool symbol_less(const GeneratorSymbol& a, const GeneratorSymbol& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  return a.indices < b.indices;
}

inline std::string render_layer3(const GroupPtr& g, const IntVector& v) {
  IntVector full = g->identity_vector();
  const auto& B = g->basis();
  for (int m = B.begin(3); m < B.end(3); ++m) full[m] = v[m - B.begin(3)];
  return render(g->element(std::move(full)));
}
}  // namespace detail

/// Factors phi2(a,b;i) (b < a) and phi3(a,b,c;i) (b < a, b <= c) whose
/// composition is e. On failure residual_trivial is false and the diagnostics
/// carry the residue of each offending x_i modulo H.
inline Decomposition decompose_central(const Endo& e) {
  require_step3(e.G());
  const auto& g = e.group();
  Decomposition d;
  auto parts = central_part(e);
  if (!parts) {
    d.residual_trivial = false;
    d.diagnostics.push_back("not central: some x_i^-1 x_i^e lies outside gamma_3");
    return d;
  }
  for (int i = 1; i <= e.rank(); ++i) {
    const IntVector& target = (*parts)[i - 1];
    if (is_zero(target)) continue;
    auto h = h_lattice(g, i);
    auto sol = lattice::solve(h.rows, target);
    if (!sol) {
      d.residual_trivial = false;
      IntVector res = lattice::reduce(lattice::hermite(h.rows, target.size()), target);
      for (auto& r : res) r = ((r % 2) + 2) % 2;
      d.diagnostics.push_back("x" + std::to_string(i) + ": residue " + detail::render_layer3(g, res) +
                              " is nonzero modulo H");
      continue;
    }
    for (std::size_t r = 0; r < sol->size(); ++r)
      if ((*sol)[r] != 0) {
        GeneratorSymbol s = h.symbols[r];
        s.exponent = (*sol)[r];
        d.factors.push_back(s);
      }
  }
  if (!d.residual_trivial) {
    d.factors.clear();
    return d;
  }
  std::stable_sort(d.factors.begin(), d.factors.end(), detail::symbol_less);
  if (!(compose_symbols(d.factors, g) == e)) throw std::logic_error("central decomposition does not reproduce the input");
  return d;
}

// ---------------------------------------------------------------------------
// The necessary condition for tameness

struct TameCheck {
  bool satisfied = false;
  RingElemModR residue;
};

/// Evaluates sum_i d_i(w_i) mod R for x_i^e = x_i w_i, using a free lift of
/// each w_i, and confirms that a second, different lift gives the same residue.
inline TameCheck tameness_necessary(const Endo& e) {
  require_step3(e.G());
  const auto& g = e.group();
  int n = e.rank();
  if (!central_part(e)) throw std::invalid_argument("not central: the tameness condition needs x_i^-1 x_i^e in gamma_3");
  std::vector<Word> lift, other;
  for (int i = 1; i <= n; ++i) {
    Word w = to_word(g->generator(i).inverse() * e.image(i));
    lift.push_back(w);
    // same element of N_{n,3}, different word in F_n: conjugate (w is central)
    // and append a weight-four commutator
    Word x1 = Word::generator(n, 1);
    Word alt = x1.inverse() * w * x1;
    if (n >= 2) {
      Word x2 = Word::generator(n, 2);
      alt = alt * commutator(commutator(commutator(x1, x2), x2), x1);
    }
    other.push_back(alt);
  }
  auto r1 = bglm_condition(lift);
  auto r2 = bglm_condition(other);
  if (!(r1.residue == r2.residue)) throw std::logic_error("tameness residue depends on the chosen lift");
  return {r1.satisfied, r1.residue};
}

/// Explains a failed tameness condition: diagonal coefficients (x_a-1)^2 and
/// off-diagonal coefficients (x_a-1)(x_b-1), a != b.
inline std::vector<std::string> tameness_diagnostics(const RingElemModR& residue) {
  std::vector<std::string> out;
  bool diag = false, off = false;
  for (const auto& [ij, c] : residue.quadratic_terms()) (ij.first == ij.second ? diag : off) = true;
  if (diag) out.push_back("diagonal condition fails: some (x_a-1)^2 coefficient is nonzero");
  if (off) out.push_back("off-diagonal condition fails: some (x_a-1)(x_b-1) coefficient is nonzero");
  return out;
}

// ---------------------------------------------------------------------------
// The subgroup cut out by the tameness condition

/// One generator of the subgroup of central palindromic automorphisms that
/// satisfy the tameness condition: a product of named factors.
struct BglmGenerator {
  std::string name;
  std::vector<GeneratorSymbol> parts;
};

/// The generator list, closed under relabeling by every permutation of 1..n.
/// For n = 2 it is the single automorphism inner([x1,x2]^2).
inline std::vector<BglmGenerator> bglm_generators(int n) {
  using S = GeneratorSymbol;
  std::vector<BglmGenerator> out;
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (n == 2) {
    out.push_back({"inner([x1,x2]^2)", {S::inner("[x1,x2]^2")}});
    return out;
  }
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::map<std::string, bool> seen;
  auto add = [&](std::string name, std::vector<S> parts) {
    std::string key = render(parts);
    if (seen.count(key)) return;
    seen[key] = true;
    out.push_back({std::move(name), std::move(parts)});
  };
  do {
    auto s = [&](int i) { return p[i - 1]; };
    std::string tag = "sigma(";
    for (int i = 0; i < n; ++i) tag += (i ? " " : "") + std::to_string(p[i]);
    tag += ")";
    add("phi2(2,3;1)^" + tag, {S::phi2(s(2), s(3), s(1))});
    if (n >= 4) add("phi3(2,3,4;1)^" + tag, {S::phi3(s(2), s(3), s(4), s(1))});
    add("phi3(2,3,1;1)^" + tag, {S::phi3(s(2), s(3), s(1), s(1))});
    add("[psi(1;2) psi(1;3)^-1]^" + tag, {S::psi(s(1), s(2)), S::psi(s(1), s(3), -1)});
    add("[phi3(1,2,3;1) phi3(3,2,2;2)]^" + tag, {S::phi3(s(1), s(2), s(3), s(1)), S::phi3(s(3), s(2), s(2), s(2))});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

namespace detail {
inline IntVector flatten(const std::vector<IntVector>& parts) {
  IntVector v;
  for (const auto& p : parts) v.insert(v.end(), p.begin(), p.end());
  return v;
}
}  // namespace detail

/// Writes e as a product of the generators above. Preconditions (central,
/// palindromic, tameness condition) are checked and reported in diagnostics.
inline Decomposition decompose_bglm(const Endo& e) {
  require_step3(e.G());
  const auto& g = e.group();
  int n = e.rank();
  if (n < 2) throw std::invalid_argument("need n >= 2");
  Decomposition d;
  auto parts = central_part(e);
  if (!parts) {
    d.residual_trivial = false;
    d.diagnostics.push_back("not central: some x_i^-1 x_i^e lies outside gamma_3");
    return d;
  }
  auto central = decompose_central(e);
  if (!central.residual_trivial) {
    d.residual_trivial = false;
    d.diagnostics.push_back("not central palindromic");
    for (auto& s : central.diagnostics) d.diagnostics.push_back(s);
    return d;
  }
  auto tame = tameness_necessary(e);
  if (!tame.satisfied) {
    d.residual_trivial = false;
    d.diagnostics.push_back("tameness condition fails with residue " + render_residue(tame.residue));
    for (auto& s : tameness_diagnostics(tame.residue)) d.diagnostics.push_back(s);
    return d;
  }
  auto gens = bglm_generators(n);
  IntMatrix rows;
  for (const auto& gen : gens) rows.push_back(detail::flatten(*central_part(compose_symbols(gen.parts, g))));
  auto sol = lattice::solve(rows, detail::flatten(*parts));
  if (!sol) {
    d.residual_trivial = false;
    d.diagnostics.push_back("not in the subgroup generated by the listed automorphisms");
    return d;
  }
  for (std::size_t r = 0; r < gens.size(); ++r) {
    if ((*sol)[r] == 0) continue;
    for (auto s : gens[r].parts) {
      s.exponent *= (*sol)[r];
      d.factors.push_back(s);
    }
  }
  if (!(compose_symbols(d.factors, g) == e)) throw std::logic_error("tame-subgroup decomposition does not reproduce the input");
  return d;
}

// ---------------------------------------------------------------------------
// Explicit tame factorizations

enum class TameFactorization {
  Identity,
  PhiDistinct,       // phi2(a,b;i), a, b, i pairwise distinct
  PhiCentreSquared,  // phi3(a,b,i;i), a, b, i pairwise distinct
  InnerSquare,       // x_i -> x_i [x_a,x_b,x_i]^2 == x_i^{[x_b,x_a]^2}, i not in {a, b}
};

struct FactorizationCheck {
  bool chain_equal = false;  // every displayed step collects to the generator's image
  bool shape_ok = false;     // the last step is u x_i v with u, v free of x_i
  std::vector<std::string> steps;
  bool passed() const { return chain_equal && shape_ok; }
};

/// Checks in N_{n,3} that the free-group expressions exhibiting the image of
/// x_i as u x_i v (a Nielsen move) agree with the generator's defining image.
inline FactorizationCheck verify_tame_factorization(TameFactorization which, int n, int a = 2, int b = 3, int i = 1) {
  auto g = NilpotentGroup::get(n, 3);
  auto x = [&](int j) { return Word::generator(n, j); };
  auto xa = x(a), xb = x(b), xi = x(i);
  auto comm = [](std::initializer_list<Word> ws) {
    auto it = ws.begin();
    Word acc = *it++;
    for (; it != ws.end(); ++it) acc = commutator(acc, *it);
    return acc;
  };
  FactorizationCheck out;
  std::vector<Word> chain;
  Word u(n), v(n);
  if (which != TameFactorization::Identity && (a == b || a == i || b == i))
    throw std::invalid_argument("the factorization needs pairwise distinct indices");
  switch (which) {
    case TameFactorization::Identity:
      chain = {xi, xi};
      v = Word(n);
      break;
    case TameFactorization::PhiDistinct: {
      Word tail = comm({xa, xb, xb * xa});
      chain = {xi * comm({xa, xb, xi}) * comm({xa, xb, xb}) * comm({xa, xb, xa}),
               xi * comm({xa, xb.inverse(), xi.inverse()}) * tail,
               comm({xa, xb.inverse(), xi.inverse()}) * xi * tail,
               comm({xa, xb.inverse()}).inverse() * xi * comm({xa, xb.inverse()}) * tail};
      u = comm({xa, xb.inverse()}).inverse();
      v = comm({xa, xb.inverse()}) * tail;
      break;
    }
    case TameFactorization::PhiCentreSquared: {
      Word c = comm({xa * xa, xb.inverse()});
      chain = {xi * comm({xa, xb, xi}) * comm({xa, xb, xi}), xi * commutator(c, xi.inverse()),
               commutator(c, xi.inverse()) * xi, c.inverse() * xi * c};
      u = c.inverse();
      v = c;
      break;
    }
    case TameFactorization::InnerSquare: {
      Word c = comm({xb, xa});
      chain = {xi * comm({xa, xb, xi}) * comm({xa, xb, xi}), c.inverse() * c.inverse() * xi * c * c};
      u = c.inverse() * c.inverse();
      v = c * c;
      break;
    }
  }
  NilElement first = g->collect(chain.front());
  out.chain_equal = true;
  for (const auto& w : chain) {
    out.steps.push_back(render(w));
    if (!(g->collect(w) == first)) out.chain_equal = false;
  }
  auto free_of = [&](const Word& w) {
    for (const auto& l : w.letters())
      if (l.index == i) return false;
    return true;
  };
  out.shape_ok = free_of(u) && free_of(v) && u * xi * v == chain.back();
  return out;
}

}  // namespace nilpal
