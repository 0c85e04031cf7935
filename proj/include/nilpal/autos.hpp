#pragma once

// Endomorphisms of N_{n,k}, the named generator families, composition and
// inversion, and the palindromicity decision procedures (complete for k <= 3).
// Maps act on the right and compose left to right: in compose(a, b), a acts first.

#include "nilpal/expr.hpp"
#include "nilpal/integer.hpp"
#include "nilpal/lattice.hpp"
#include "nilpal/nilpotent.hpp"
#include "nilpal/words.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nilpal {

class NotAnAutomorphism : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a palindromicity question is asked outside the decidable range (k > 3).
class Undecided : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class StepUnsupported : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class Endo {
 public:
  Endo(GroupPtr g, std::vector<NilElement> images) : group_(std::move(g)), images_(std::move(images)) {
    if (static_cast<int>(images_.size()) != group_->rank()) throw RankError("need one image per generator");
    int n = group_->rank();
    matrix_.assign(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) {
      if (!images_[i].group() || !images_[i].G().same_as(*group_)) throw BasisMismatch("image lives in a different group");
      matrix_[i] = images_[i].abelianization();
    }
  }

  static Endo identity(const GroupPtr& g) {
    std::vector<NilElement> im;
    for (int i = 1; i <= g->rank(); ++i) im.push_back(g->generator(i));
    return Endo(g, std::move(im));
  }

  const GroupPtr& group() const { return group_; }
  const NilpotentGroup& G() const { return *group_; }
  int rank() const { return group_->rank(); }
  int step() const { return group_->step(); }
  const std::vector<NilElement>& images() const { return images_; }
  /// Image of x_i (1-based).
  const NilElement& image(int i) const { return images_.at(i - 1); }
  /// Abelianization [e]: row i holds the exponents of x_1..x_n in the image of x_i.
  const IntMatrix& matrix() const { return matrix_; }

  bool is_identity() const {
    for (int i = 1; i <= rank(); ++i)
      if (!(image(i) == group_->generator(i))) return false;
    return true;
  }

  bool operator==(const Endo& o) const {
    if (!G().same_as(o.G())) throw BasisMismatch("endomorphisms of different groups");
    return images_ == o.images_;
  }

 private:
  GroupPtr group_;
  std::vector<NilElement> images_;
  IntMatrix matrix_;
};

inline Endo make_endo(const GroupPtr& g, std::vector<NilElement> images) { return Endo(g, std::move(images)); }

inline Endo make_endo(const GroupPtr& g, const std::vector<Word>& images) {
  std::vector<NilElement> im;
  for (const auto& w : images) {
    if (w.rank() != g->rank()) throw RankError("word rank does not match the group");
    im.push_back(g->collect(w));
  }
  return Endo(g, std::move(im));
}

inline NilElement apply(const Endo& e, const NilElement& g) {
  if (!g.G().same_as(e.G())) throw BasisMismatch("element and endomorphism live in different groups");
  return substitute(g, e.images());
}

/// First a, then b.
inline Endo compose(const Endo& a, const Endo& b) {
  if (!a.G().same_as(b.G())) throw BasisMismatch("endomorphisms of different groups");
  std::vector<NilElement> im;
  for (const auto& p : a.images()) im.push_back(apply(b, p));
  return Endo(a.group(), std::move(im));
}

inline bool is_automorphism(const Endo& e) {
  Integer d = lattice::determinant(e.matrix());
  return d == 1 || d == -1;
}

/// The endomorphism x_i -> x_1^{M_i1} ... x_n^{M_in}.
inline Endo linear_endo(const GroupPtr& g, const IntMatrix& M) {
  std::vector<NilElement> im;
  for (int i = 0; i < g->rank(); ++i) {
    IntVector v = g->identity_vector();
    for (int j = 0; j < g->rank(); ++j) v[j] = M.at(i).at(j);
    im.push_back(g->element(std::move(v)));
  }
  return Endo(g, std::move(im));
}

/// x_i -> bar(q_i) x_i q_i.
inline Endo palindromic_endo(const GroupPtr& g, const std::vector<NilElement>& witnesses) {
  if (static_cast<int>(witnesses.size()) != g->rank()) throw RankError("need one witness per generator");
  std::vector<NilElement> im;
  for (int i = 1; i <= g->rank(); ++i) im.push_back(bar(witnesses[i - 1]) * g->generator(i) * witnesses[i - 1]);
  return Endo(g, std::move(im));
}

/// x_i -> x_i c_i.
inline Endo translation_endo(const GroupPtr& g, const std::vector<NilElement>& c) {
  if (static_cast<int>(c.size()) != g->rank()) throw RankError("need one element per generator");
  std::vector<NilElement> im;
  for (int i = 1; i <= g->rank(); ++i) im.push_back(g->generator(i) * c[i - 1]);
  return Endo(g, std::move(im));
}

// ---------------------------------------------------------------------------
// Palindromic witnesses

/// q with weight(q) >= min_weight and bar(q) x_i q == g, or nullopt if none exists.
/// Complete for k <= 3. min_weight = k+1 asks for q = 1.
inline std::optional<NilElement> solve_conjugator(const NilElement& g, int i, int min_weight = 1) {
  const auto& G = g.G();
  const auto& B = G.basis();
  int n = G.rank(), k = G.step();
  if (k > 3) throw StepUnsupported("palindromic witnesses are only decided for step <= 3");
  if (i < 1 || i > n) throw RankError("generator index out of range");
  if (min_weight < 1 || min_weight > k + 1) throw std::invalid_argument("minimum weight out of range");
  NilElement xi = G.generator(i);
  if (min_weight == k + 1) {
    if (g == xi) return G.identity();
    return std::nullopt;
  }

  // weight 1: ab(g) = 2 ab(q) + e_i
  IntVector ab = g.abelianization();
  ab[i - 1] -= 1;
  IntVector a(n, 0);
  for (int j = 0; j < n; ++j) {
    if (ab[j] % 2 != 0) return std::nullopt;
    a[j] = ab[j] / 2;
  }
  if (min_weight >= 2 && !is_zero(a)) return std::nullopt;
  IntVector lin = G.identity_vector();
  for (int j = 0; j < n; ++j) lin[j] = a[j];
  NilElement q = G.element(std::move(lin));
  NilElement h = bar(q) * xi * q;
  if (k == 1) return q;

  // weight 2 is forced: bar(s) h s == h modulo gamma_3 for every s in gamma_2
  NilElement r = h.inverse() * g;
  if (r.weight() < 3) return std::nullopt;
  if (k == 2) return q;

  // weight 3: r = prod_c (h^-1 bar(c) h c)^{p_c} * s3^2, with c over the weight-2 basis
  IntMatrix gens;
  std::vector<int> from;
  if (min_weight <= 2) {
    for (int c = B.begin(2); c < B.end(2); ++c) {
      NilElement bc = G.basis_element(c);
      gens.push_back((h.inverse() * bar(bc) * h * bc).layer(3));
      from.push_back(c);
    }
  }
  for (int m = B.begin(3); m < B.end(3); ++m) {
    IntVector row(B.layer_size(3), 0);
    row[m - B.begin(3)] = 2;
    gens.push_back(std::move(row));
    from.push_back(m);
  }
  auto sol = lattice::solve(gens, r.layer(3));
  if (!sol) return std::nullopt;
  IntVector s = G.identity_vector();
  for (std::size_t t = 0; t < from.size(); ++t) s[from[t]] += (*sol)[t];
  q = q * G.element(std::move(s));
  if (!(bar(q) * xi * q == g)) throw std::logic_error("palindromic witness failed verification");
  return q;
}

/// Witnesses q_i with x_i^e = bar(q_i) x_i q_i, each of weight >= min_weight.
inline std::optional<std::vector<NilElement>> elementary_witnesses(const Endo& e, int min_weight = 1) {
  std::vector<NilElement> q;
  for (int i = 1; i <= e.rank(); ++i) {
    auto w = solve_conjugator(e.image(i), i, min_weight);
    if (!w) return std::nullopt;
    q.push_back(*w);
  }
  return q;
}

/// Largest l such that every witness can be taken in gamma_l; k+1 for the
/// identity, 0 if e is not elementary palindromic.
inline int pi_level(const Endo& e) {
  int level = e.step() + 1;
  for (int i = 1; i <= e.rank(); ++i) {
    int best = 0;
    for (int l = e.step() + 1; l >= 1; --l)
      if (solve_conjugator(e.image(i), i, l)) {
        best = l;
        break;
      }
    level = std::min(level, best);
  }
  return level;
}

/// The form w x_i bar(w) is the same as bar(q) x_i q with q = bar(w).
inline NilElement witness_from_left_form(const NilElement& w) { return bar(w); }

// ---------------------------------------------------------------------------
// Inverse

struct InverseTrace {
  Endo inverse;
  /// The successive factors; inverse == compose(factors[0], factors[1], ...).
  std::vector<Endo> factors;
  /// For the palindromic algorithm, the witnesses of each factor.
  std::vector<std::vector<NilElement>> factor_witnesses;
  bool palindromic = false;
};

inline void require_automorphism(const Endo& e) {
  if (!is_automorphism(e)) throw NotAnAutomorphism("abelianization is not invertible over the integers");
}

/// Lifts the inverse layer by layer: first undo the abelianization, then
/// kill the residues x_i^-1 x_i^theta one lower-central layer at a time.
inline InverseTrace general_inverse(const Endo& e) {
  require_automorphism(e);
  const auto& g = e.group();
  InverseTrace out{Endo::identity(g), {}, {}, false};
  auto Minv = lattice::inverse(e.matrix());
  if (!Minv) throw std::logic_error("unimodular matrix without integer inverse");
  Endo psi = linear_endo(g, *Minv);
  Endo theta = compose(e, psi);
  if (!psi.is_identity()) out.factors.push_back(psi);
  for (int guard = 0; !theta.is_identity(); ++guard) {
    if (guard > e.step()) throw std::logic_error("layer lifting did not terminate");
    std::vector<NilElement> c;
    for (int i = 1; i <= e.rank(); ++i) c.push_back((g->generator(i).inverse() * theta.image(i)).inverse());
    psi = translation_endo(g, c);
    theta = compose(theta, psi);
    out.factors.push_back(psi);
  }
  for (const auto& f : out.factors) out.inverse = compose(out.inverse, f);
  return out;
}

/// The inverse of x_i -> bar(q_i) x_i q_i as a product of elementary palindromic factors.
inline InverseTrace palindromic_inverse(const Endo& e, const std::vector<NilElement>& q) {
  require_automorphism(e);
  const auto& g = e.group();
  int n = e.rank();
  if (!(palindromic_endo(g, q) == e)) throw std::invalid_argument("witnesses do not describe the automorphism");
  InverseTrace out{Endo::identity(g), {}, {}, true};
  auto Minv = lattice::inverse(e.matrix());
  if (!Minv) throw std::logic_error("unimodular matrix without integer inverse");

  // [e]^-1 = 2 beta + I; the first factor has witnesses x_1^{beta_i1} ... x_n^{beta_in}
  std::vector<NilElement> p;
  for (int i = 0; i < n; ++i) {
    IntVector v = g->identity_vector();
    for (int j = 0; j < n; ++j) {
      Integer d = (*Minv)[i][j] - (i == j ? 1 : 0);
      if (d % 2 != 0) throw std::logic_error("inverse matrix is not the identity mod 2");
      v[j] = d / 2;
    }
    p.push_back(g->element(std::move(v)));
  }
  Endo psi = palindromic_endo(g, p);
  Endo phi = compose(e, psi);
  std::vector<NilElement> r;
  for (int i = 0; i < n; ++i) r.push_back(p[i] * apply(psi, q[i]));
  out.factors.push_back(psi);
  out.factor_witnesses.push_back(p);

  auto trivial = [](const std::vector<NilElement>& v) {
    return std::all_of(v.begin(), v.end(), [](const NilElement& x) { return x.is_identity(); });
  };
  for (int guard = 0; !trivial(r); ++guard) {
    if (guard > e.step()) throw std::logic_error("palindromic inverse did not terminate");
    if (!(palindromic_endo(g, r) == phi)) throw std::logic_error("lost track of the palindromic witnesses");
    std::vector<NilElement> rinv;
    for (const auto& x : r) rinv.push_back(x.inverse());
    psi = palindromic_endo(g, rinv);
    for (int i = 0; i < n; ++i) r[i] = rinv[i] * apply(psi, r[i]);
    phi = compose(phi, psi);
    out.factors.push_back(psi);
    out.factor_witnesses.push_back(rinv);
  }
  if (!phi.is_identity()) throw std::logic_error("palindromic inverse left a nontrivial residue");
  for (const auto& f : out.factors) out.inverse = compose(out.inverse, f);
  return out;
}

/// Uses the palindromic algorithm when e is elementary palindromic and k <= 3.
inline InverseTrace inverse_trace(const Endo& e) {
  require_automorphism(e);
  if (e.step() <= 3)
    if (auto q = elementary_witnesses(e)) return palindromic_inverse(e, *q);
  return general_inverse(e);
}

inline Endo inverse(const Endo& e) { return inverse_trace(e).inverse; }

inline Endo power(const Endo& e, const Integer& m) {
  Endo base = m < 0 ? inverse(e) : e;
  Integer k = abs(m);
  Endo acc = Endo::identity(e.group());
  while (k > 0) {
    if (k % 2 == 1) acc = compose(acc, base);
    k /= 2;
    if (k > 0) base = compose(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Named generators

struct GeneratorSymbol {
  enum class Kind { Mu, T, Alpha, Sigma, Phi2, Phi3, Psi, Inner };

  Kind kind = Kind::T;
  // mu: (i, j); t: (i); alpha: (j); sigma: the images sigma(1..n);
  // phi2: (a, b, i); phi3: (a, b, c, i); psi: (a, i)
  std::vector<int> indices;
  std::string element;  // inner: the conjugating element as text
  Integer exponent = 1;

  static GeneratorSymbol mu(int i, int j, Integer e = 1) { return {Kind::Mu, {i, j}, {}, std::move(e)}; }
  static GeneratorSymbol t(int i, Integer e = 1) { return {Kind::T, {i}, {}, std::move(e)}; }
  static GeneratorSymbol alpha(int j, Integer e = 1) { return {Kind::Alpha, {j}, {}, std::move(e)}; }
  static GeneratorSymbol sigma(std::vector<int> p, Integer e = 1) { return {Kind::Sigma, std::move(p), {}, std::move(e)}; }
  static GeneratorSymbol phi2(int a, int b, int i, Integer e = 1) { return {Kind::Phi2, {a, b, i}, {}, std::move(e)}; }
  static GeneratorSymbol phi3(int a, int b, int c, int i, Integer e = 1) {
    return {Kind::Phi3, {a, b, c, i}, {}, std::move(e)};
  }
  static GeneratorSymbol psi(int a, int i, Integer e = 1) { return {Kind::Psi, {a, i}, {}, std::move(e)}; }
  static GeneratorSymbol inner(std::string g, Integer e = 1) { return {Kind::Inner, {}, std::move(g), std::move(e)}; }

  bool operator==(const GeneratorSymbol& o) const {
    return kind == o.kind && indices == o.indices && element == o.element && exponent == o.exponent;
  }
};

inline std::string render(const GeneratorSymbol& s) {
  auto join = [&](std::size_t from, std::size_t to, const char* sep) {
    std::string r;
    for (std::size_t t = from; t < to; ++t) {
      if (t > from) r += sep;
      r += std::to_string(s.indices[t]);
    }
    return r;
  };
  std::string out;
  switch (s.kind) {
    case GeneratorSymbol::Kind::Mu: out = "mu(" + join(0, 2, ",") + ")"; break;
    case GeneratorSymbol::Kind::T: out = "t(" + join(0, 1, ",") + ")"; break;
    case GeneratorSymbol::Kind::Alpha: out = "alpha(" + join(0, 1, ",") + ")"; break;
    case GeneratorSymbol::Kind::Sigma: out = "sigma(" + join(0, s.indices.size(), " ") + ")"; break;
    case GeneratorSymbol::Kind::Phi2: out = "phi2(" + join(0, 2, ",") + ";" + join(2, 3, ",") + ")"; break;
    case GeneratorSymbol::Kind::Phi3: out = "phi3(" + join(0, 3, ",") + ";" + join(3, 4, ",") + ")"; break;
    case GeneratorSymbol::Kind::Psi: out = "psi(" + join(0, 1, ",") + ";" + join(1, 2, ",") + ")"; break;
    case GeneratorSymbol::Kind::Inner: out = "inner(" + s.element + ")"; break;
  }
  if (s.exponent != 1) out += "^" + s.exponent.str();
  return out;
}

class SymbolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline GeneratorSymbol parse_generator(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  std::string_view t = trim(text);
  auto open = t.find('(');
  if (open == std::string_view::npos) throw SymbolError("expected '(' in generator symbol '" + std::string(t) + "'");
  std::string name(trim(t.substr(0, open)));
  int depth = 0;
  std::size_t close = std::string_view::npos;
  for (std::size_t p = open; p < t.size(); ++p) {
    if (t[p] == '(' || t[p] == '[') ++depth;
    if (t[p] == ')' || t[p] == ']') --depth;
    if (depth == 0) {
      close = p;
      break;
    }
  }
  if (close == std::string_view::npos || t[close] != ')') throw SymbolError("unbalanced parentheses in '" + std::string(t) + "'");
  std::string_view args = t.substr(open + 1, close - open - 1);
  std::string_view rest = trim(t.substr(close + 1));
  GeneratorSymbol s;
  if (!rest.empty()) {
    if (rest.front() != '^') throw SymbolError("unexpected text after generator symbol: '" + std::string(rest) + "'");
    std::string ex(trim(rest.substr(1)));
    if (ex.empty() || !(std::isdigit(static_cast<unsigned char>(ex.back()))))
      throw SymbolError("bad exponent '" + ex + "'");
    try {
      s.exponent = Integer(ex);
    } catch (const std::exception&) {
      throw SymbolError("bad exponent '" + ex + "'");
    }
  }
  auto ints = [&](std::string_view v, char sep) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&]() {
      std::string c(trim(cur));
      if (!c.empty()) {
        if (!std::all_of(c.begin(), c.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
          throw SymbolError("bad index '" + c + "'");
        out.push_back(std::stoi(c));
      } else if (sep != ' ') {
        throw SymbolError("empty index");
      }
      cur.clear();
    };
    for (char ch : v) {
      if (ch == sep || (sep == ' ' && std::isspace(static_cast<unsigned char>(ch))))
        flush();
      else
        cur += ch;
    }
    flush();
    return out;
  };
  auto split_semicolon = [&](std::size_t before, std::size_t after) {
    auto semi = args.find(';');
    if (semi == std::string_view::npos) throw SymbolError(name + " needs ';' before the target index");
    auto l = ints(args.substr(0, semi), ',');
    auto r = ints(args.substr(semi + 1), ',');
    if (l.size() != before || r.size() != after) throw SymbolError("wrong number of indices for " + name);
    l.insert(l.end(), r.begin(), r.end());
    return l;
  };
  auto plain = [&](std::size_t count) {
    auto v = ints(args, ',');
    if (v.size() != count) throw SymbolError("wrong number of indices for " + name);
    return v;
  };
  if (name == "mu") {
    s.kind = GeneratorSymbol::Kind::Mu;
    s.indices = plain(2);
  } else if (name == "t") {
    s.kind = GeneratorSymbol::Kind::T;
    s.indices = plain(1);
  } else if (name == "alpha") {
    s.kind = GeneratorSymbol::Kind::Alpha;
    s.indices = plain(1);
  } else if (name == "sigma") {
    s.kind = GeneratorSymbol::Kind::Sigma;
    s.indices = ints(args, ' ');
  } else if (name == "phi2") {
    s.kind = GeneratorSymbol::Kind::Phi2;
    s.indices = split_semicolon(2, 1);
  } else if (name == "phi3") {
    s.kind = GeneratorSymbol::Kind::Phi3;
    s.indices = split_semicolon(3, 1);
  } else if (name == "psi") {
    s.kind = GeneratorSymbol::Kind::Psi;
    s.indices = split_semicolon(1, 1);
  } else if (name == "inner") {
    s.kind = GeneratorSymbol::Kind::Inner;
    s.element = std::string(trim(args));
    if (s.element.empty()) throw SymbolError("inner() needs an element");
  } else {
    throw SymbolError("unknown generator '" + name + "'");
  }
  return s;
}

/// The automorphism named by a symbol (including its exponent).
inline Endo make_generator(const GeneratorSymbol& s, const GroupPtr& g) {
  int n = g->rank();
  auto check = [&](int i) {
    if (i < 1 || i > n) throw RankError("generator index " + std::to_string(i) + " out of range for rank " + std::to_string(n));
  };
  for (int i : s.indices) check(i);
  std::vector<NilElement> im;
  for (int i = 1; i <= n; ++i) im.push_back(g->generator(i));
  auto x = [&](int i) { return g->generator(i); };
  const auto& v = s.indices;
  switch (s.kind) {
    case GeneratorSymbol::Kind::Mu:
      if (v[0] == v[1]) throw std::invalid_argument("mu needs i != j");
      im[v[0] - 1] = x(v[1]) * x(v[0]) * x(v[1]);
      break;
    case GeneratorSymbol::Kind::T:
      im[v[0] - 1] = x(v[0]).inverse();
      break;
    case GeneratorSymbol::Kind::Alpha:
      check(v[0] + 1);
      std::swap(im[v[0] - 1], im[v[0]]);
      break;
    case GeneratorSymbol::Kind::Sigma: {
      if (static_cast<int>(v.size()) != n) throw std::invalid_argument("sigma needs a permutation of 1.." + std::to_string(n));
      std::vector<int> sorted = v;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < n; ++i)
        if (sorted[i] != i + 1) throw std::invalid_argument("sigma needs a permutation of 1.." + std::to_string(n));
      for (int i = 0; i < n; ++i) im[i] = x(v[i]);
      break;
    }
    case GeneratorSymbol::Kind::Phi2: {
      int a = v[0], b = v[1], i = v[2];
      if (a == b) throw std::invalid_argument("phi2 needs a != b");
      im[i - 1] = x(i) * commutator({x(a), x(b), x(i)}) * commutator({x(a), x(b), x(b)}) * commutator({x(a), x(b), x(a)});
      break;
    }
    case GeneratorSymbol::Kind::Phi3: {
      int a = v[0], b = v[1], c = v[2], i = v[3];
      if (a == b) throw std::invalid_argument("phi3 needs a != b");
      im[i - 1] = x(i) * commutator({x(a), x(b), x(c)}).power(2);
      break;
    }
    case GeneratorSymbol::Kind::Psi: {
      int a = v[0], i = v[1];
      if (a == i) throw std::invalid_argument("psi needs a != i");
      im[i - 1] = x(i) * commutator({x(a), x(i), x(a)});
      break;
    }
    case GeneratorSymbol::Kind::Inner: {
      NilElement c = g->parse(s.element);
      for (auto& y : im) y = c.inverse() * y * c;
      break;
    }
  }
  return power(Endo(g, std::move(im)), s.exponent);
}

/// Composition of the factors, left to right.
inline Endo compose_symbols(const std::vector<GeneratorSymbol>& factors, const GroupPtr& g) {
  Endo acc = Endo::identity(g);
  for (const auto& s : factors) acc = compose(acc, make_generator(s, g));
  return acc;
}

struct Decomposition {
  std::vector<GeneratorSymbol> factors;
  bool residual_trivial = true;
  std::vector<std::string> diagnostics;
};

inline std::string render(const std::vector<GeneratorSymbol>& factors) {
  std::string out;
  for (const auto& s : factors) {
    if (!out.empty()) out += " ";
    out += render(s);
  }
  return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------
// Classification

struct Classification {
  bool is_ia = false;
  bool is_central = false;
  bool parity = false;  // [e] == I mod 2
  /// false for k > 3, where the palindromic flags below are not computed
  bool palindromic_decided = false;
  bool is_elementary_palindromic = false;
  bool is_palindromic = false;
  int pi_level = 0;
  std::vector<NilElement> witnesses;              // when elementary palindromic
  std::optional<std::vector<int>> permutation;    // sigma with e = eps * sigma when palindromic
  std::vector<std::string> diagnostics;
};

/// sigma (as images of 1..n) when the mod-2 reduction of M is a permutation matrix.
inline std::optional<std::vector<int>> mod2_permutation(const IntMatrix& M) {
  int n = static_cast<int>(M.size());
  std::vector<int> sigma(n, 0);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    int col = -1;
    for (int j = 0; j < n; ++j)
      if (M[i][j] % 2 != 0) {
        if (col >= 0) return std::nullopt;
        col = j;
      }
    if (col < 0 || used[col]) return std::nullopt;
    used[col] = true;
    sigma[i] = col + 1;
  }
  return sigma;
}

inline Classification classify(const Endo& e) {
  require_automorphism(e);
  const auto& g = e.group();
  int n = e.rank(), k = e.step();
  Classification c;
  c.is_ia = e.matrix() == identity_matrix(n);
  c.is_central = true;
  for (int i = 1; i <= n; ++i)
    if ((g->generator(i).inverse() * e.image(i)).weight() < k) c.is_central = false;
  c.parity = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if ((e.matrix()[i][j] - (i == j ? 1 : 0)) % 2 != 0) c.parity = false;
  if (k > 3) {
    c.diagnostics.push_back("undecided: palindromicity is only decided for step <= 3");
    return c;
  }
  c.palindromic_decided = true;
  if (auto q = elementary_witnesses(e)) {
    c.is_elementary_palindromic = true;
    c.witnesses = *q;
    c.pi_level = pi_level(e);
    for (int i = 1; i <= n; ++i)
      if (e.matrix()[i - 1][i - 1] < 0)
        c.diagnostics.push_back("x" + std::to_string(i) + " has negative diagonal entry " +
                                e.matrix()[i - 1][i - 1].str() + "; accepted through the witness " + render(c.witnesses[i - 1]));
  } else if (c.parity) {
    for (int i = 1; i <= n; ++i)
      if (!solve_conjugator(e.image(i), i))
        c.diagnostics.push_back("x" + std::to_string(i) +
                                ": parity criterion holds but the commutator part is not of palindromic shape");
  }
  if (auto sigma = mod2_permutation(e.matrix())) {
    IntMatrix P(n, IntVector(n, 0));
    for (int i = 0; i < n; ++i) P[i][(*sigma)[i] - 1] = 1;
    auto Pinv = lattice::inverse(P);
    Endo eps = compose(e, linear_endo(g, *Pinv));
    if (elementary_witnesses(eps)) {
      c.is_palindromic = true;
      c.permutation = *sigma;
    }
  }
  return c;
}

}  // namespace nilpal
