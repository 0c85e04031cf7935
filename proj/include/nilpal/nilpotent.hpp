#pragma once

#include "nilpal/expr.hpp"
#include "nilpal/hall_basis.hpp"
#include "nilpal/integer.hpp"
#include "nilpal/words.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilpal {

class NilElement;

class BasisMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The free nilpotent group N_{n,k} with its Hall basis and collector.
///
/// Elements are exponent vectors over the Hall basis, read as the ordered
/// product of basis powers. Products are formed by collection from the left:
/// multiplying a collected word by b_i^s moves b_i^s past the tail of larger
/// basis elements, replacing each b_m by its conjugate b_m^{b_i^s}. Those
/// conjugates are tabulated once at construction and only read afterwards.
class NilpotentGroup : public std::enable_shared_from_this<NilpotentGroup> {
  struct Private {};

 public:
  /// Sparse tail t with b_j^{b_i^s} = b_j * t; entries sorted by position.
  using Tail = std::vector<std::pair<int, Integer>>;

  NilpotentGroup(Private, int rank, int step) : basis_(rank, step) { build(); }

  static std::shared_ptr<const NilpotentGroup> create(int rank, int step) {
    return std::make_shared<const NilpotentGroup>(Private{}, rank, step);
  }

  /// Shared instance per (rank, step).
  static std::shared_ptr<const NilpotentGroup> get(int rank, int step) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const NilpotentGroup>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{rank, step}];
    if (!slot) slot = create(rank, step);
    return slot;
  }

  const HallBasis& basis() const { return basis_; }
  int rank() const { return basis_.rank(); }
  int step() const { return basis_.step(); }
  int dimension() const { return basis_.size(); }

  bool same_as(const NilpotentGroup& o) const { return rank() == o.rank() && step() == o.step(); }

  // Raw arithmetic on exponent vectors.

  IntVector identity_vector() const { return IntVector(dimension(), 0); }

  /// e := e * b_i^t
  void multiply_basis_power(IntVector& e, int i, const Integer& t) const {
    if (t == 0) return;
    if (tail_commutes(e, i)) {
      e[i] += t;
      return;
    }
    int s = t > 0 ? 1 : -1;
    for (Integer c = abs(t); c > 0; --c) multiply_letter(e, i, s);
  }

  IntVector multiply(const IntVector& a, const IntVector& b) const {
    IntVector r = a;
    for (int m = 0; m < dimension(); ++m)
      if (b[m] != 0) multiply_basis_power(r, m, b[m]);
    return r;
  }

  IntVector inverse(const IntVector& a) const {
    IntVector r = identity_vector();
    for (int m = dimension() - 1; m >= 0; --m)
      if (a[m] != 0) multiply_basis_power(r, m, -a[m]);
    return r;
  }

  IntVector power(const IntVector& a, Integer e) const {
    IntVector base = e < 0 ? inverse(a) : a;
    e = abs(e);
    IntVector r = identity_vector();
    while (e > 0) {
      if ((e & 1) != 0) r = multiply(r, base);
      e >>= 1;
      if (e > 0) base = multiply(base, base);
    }
    return r;
  }

  IntVector commutator(const IntVector& a, const IntVector& b) const {
    return multiply(multiply(inverse(a), inverse(b)), multiply(a, b));
  }

  IntVector collect_vector(const Word& w) const {
    if (w.rank() != rank()) throw RankError("word rank does not match the group rank");
    IntVector e = identity_vector();
    for (const auto& l : w.letters()) multiply_basis_power(e, l.index - 1, l.sign);
    return e;
  }

  /// Image of the basis element at position m under x_i -> x_i^-1.
  const IntVector& inverted_generators_image(int m) const { return iota_[m]; }

  /// b_j^{b_i^s} for j > i as a full exponent vector.
  IntVector conjugate_of_basis(int j, int i, int s) const {
    IntVector e = identity_vector();
    e[j] = 1;
    if (!commutes(j, i))
      for (const auto& [m, c] : tail(j, i, s)) e[m] += c;
    return e;
  }

  // Element-level API (defined after NilElement).
  NilElement identity() const;
  NilElement generator(int i) const;
  NilElement basis_element(int m) const;
  NilElement element(IntVector exponents) const;
  NilElement collect(const Word& w) const;
  NilElement parse(std::string_view text) const;

 private:
  bool commutes(int m, int i) const { return basis_.weight(m) + basis_.weight(i) > step(); }

  bool tail_commutes(const IntVector& e, int i) const {
    for (int m = i + 1; m < dimension(); ++m)
      if (e[m] != 0 && !commutes(m, i)) return false;
    return true;
  }

  const Tail& tail(int j, int i, int s) const { return table_[index(j, i, s)]; }
  std::size_t index(int j, int i, int s) const {
    return (static_cast<std::size_t>(j) * dimension() + i) * 2 + (s > 0 ? 0 : 1);
  }

  /// e := e * b_i^s, s = +-1.
  void multiply_letter(IntVector& e, int i, int s) const {
    std::vector<std::pair<int, Integer>> suffix;
    for (int m = i + 1; m < dimension(); ++m)
      if (e[m] != 0) {
        suffix.emplace_back(m, std::move(e[m]));
        e[m] = 0;
      }
    e[i] += s;
    for (const auto& [m, em] : suffix) {
      if (commutes(m, i)) {
        multiply_basis_power(e, m, em);
        continue;
      }
      const Tail& t = tail(m, i, s);
      if (em > 0) {
        for (Integer c = em; c > 0; --c) {
          multiply_basis_power(e, m, 1);
          for (const auto& [l, cl] : t) multiply_basis_power(e, l, cl);
        }
      } else {
        for (Integer c = -em; c > 0; --c) {
          for (auto it = t.rbegin(); it != t.rend(); ++it) multiply_basis_power(e, it->first, -it->second);
          multiply_basis_power(e, m, -1);
        }
      }
    }
  }

  static Tail to_tail(const IntVector& v, int skip) {
    Tail t;
    for (int m = 0; m < static_cast<int>(v.size()); ++m)
      if (m != skip && v[m] != 0) t.emplace_back(m, v[m]);
    return t;
  }

  // Conjugation table. Rows are filled for decreasing i, so every product
  // formed while filling row i only involves letters beyond i, whose
  // relations are complete.
  void build() {
    int N = dimension();
    table_.assign(static_cast<std::size_t>(N) * N * 2, {});
    state_.assign(table_.size(), 0);
    for (int i = N - 1; i >= 0; --i)
      for (int j = i + 1; j < N; ++j)
        if (!commutes(j, i))
          for (int s : {1, -1}) fill(j, i, s);
    iota_.resize(N);
    for (int m = 0; m < N; ++m) {
      const auto& c = basis_[m];
      if (c.is_generator()) {
        iota_[m] = identity_vector();
        iota_[m][m] = -1;
      } else {
        iota_[m] = commutator(iota_[c.left], iota_[c.right]);
      }
    }
    state_.clear();
  }

  IntVector full_conjugate(int j, int i, int s) {
    if (!commutes(j, i)) fill(j, i, s);
    return conjugate_of_basis(j, i, s);
  }

  void fill(int j, int i, int s) {
    std::size_t idx = index(j, i, s);
    if (state_[idx] == 2) return;
    if (state_[idx] == 1) throw std::logic_error("cyclic dependency in conjugation table");
    state_[idx] = 1;
    auto p = basis_.find_pair(j, i);
    if (p) {
      if (s > 0) {
        // b_j^{b_i} = b_j [b_j, b_i]
        table_[idx] = {{*p, Integer(1)}};
      } else {
        // b_j^{b_i^-1} = b_j d with d^{b_i} = [b_j,b_i]^-1, so d = ((b_p)^{b_i^-1})^-1.
        IntVector d = inverse(full_conjugate(*p, i, -1));
        table_[idx] = to_tail(d, -1);
      }
    } else {
      // b_j = [u, v] with v > i; conjugation is an automorphism.
      const auto& c = basis_[j];
      if (c.is_generator() || c.right <= i) throw std::logic_error("unexpected non-basic pair");
      IntVector u = full_conjugate(c.left, i, s);
      IntVector v = full_conjugate(c.right, i, s);
      IntVector r = commutator(u, v);
      for (int m = 0; m < j; ++m)
        if (r[m] != 0) throw std::logic_error("conjugate has unexpected leading term");
      if (r[j] != 1) throw std::logic_error("conjugate has unexpected leading exponent");
      table_[idx] = to_tail(r, j);
    }
    state_[idx] = 2;
  }

  HallBasis basis_;
  std::vector<Tail> table_;
  std::vector<char> state_;
  std::vector<IntVector> iota_;
};

using GroupPtr = std::shared_ptr<const NilpotentGroup>;

/// Element of N_{n,k} in Hall normal form.
class NilElement {
 public:
  NilElement() = default;
  NilElement(GroupPtr g, IntVector e) : group_(std::move(g)), exps_(std::move(e)) {
    if (!group_) throw std::invalid_argument("element without a group");
    if (static_cast<int>(exps_.size()) != group_->dimension())
      throw BasisMismatch("exponent vector length does not match the Hall basis");
  }

  const GroupPtr& group() const { return group_; }
  const NilpotentGroup& G() const { return *group_; }
  const IntVector& exponents() const { return exps_; }
  const Integer& operator[](int m) const { return exps_[m]; }

  bool is_identity() const { return is_zero(exps_); }

  /// Largest l with the element in gamma_l; the identity reports step + 1.
  int weight() const {
    for (int m = 0; m < static_cast<int>(exps_.size()); ++m)
      if (exps_[m] != 0) return group_->basis().weight(m);
    return group_->step() + 1;
  }

  /// Exponents of x_1..x_n (the abelianization).
  IntVector abelianization() const { return IntVector(exps_.begin(), exps_.begin() + group_->rank()); }

  /// Coordinates of the weight-w layer.
  IntVector layer(int w) const {
    const auto& B = group_->basis();
    return IntVector(exps_.begin() + B.begin(w), exps_.begin() + B.end(w));
  }

  NilElement inverse() const { return {group_, group_->inverse(exps_)}; }
  NilElement power(const Integer& e) const { return {group_, group_->power(exps_, e)}; }

  friend NilElement operator*(const NilElement& a, const NilElement& b) {
    a.check(b);
    return {a.group_, a.group_->multiply(a.exps_, b.exps_)};
  }
  NilElement& operator*=(const NilElement& b) { return *this = *this * b; }

  bool operator==(const NilElement& o) const {
    check(o);
    return exps_ == o.exps_;
  }

  void check(const NilElement& o) const {
    if (!group_ || !o.group_ || !(group_ == o.group_ || group_->same_as(*o.group_)))
      throw BasisMismatch("elements belong to different groups");
  }

 private:
  GroupPtr group_;
  IntVector exps_;
};

inline NilElement NilpotentGroup::identity() const { return {shared_from_this(), identity_vector()}; }
inline NilElement NilpotentGroup::basis_element(int m) const {
  IntVector e = identity_vector();
  e.at(m) = 1;
  return {shared_from_this(), std::move(e)};
}
inline NilElement NilpotentGroup::generator(int i) const {
  if (i < 1 || i > rank()) throw RankError("generator index out of range");
  return basis_element(i - 1);
}
inline NilElement NilpotentGroup::element(IntVector exponents) const {
  return {shared_from_this(), std::move(exponents)};
}
inline NilElement NilpotentGroup::collect(const Word& w) const { return {shared_from_this(), collect_vector(w)}; }

inline NilElement multiply(const NilElement& a, const NilElement& b) { return a * b; }
inline NilElement invert(const NilElement& a) { return a.inverse(); }
inline NilElement power(const NilElement& a, const Integer& m) { return a.power(m); }
inline NilElement commutator(const NilElement& a, const NilElement& b) {
  a.check(b);
  return a.group()->element(a.G().commutator(a.exponents(), b.exponents()));
}
/// Left-normed [g_1, ..., g_m].
inline NilElement commutator(std::span<const NilElement> gs) {
  if (gs.empty()) throw std::invalid_argument("empty commutator");
  NilElement acc = gs[0];
  for (std::size_t i = 1; i < gs.size(); ++i) acc = commutator(acc, gs[i]);
  return acc;
}
inline NilElement commutator(std::initializer_list<NilElement> gs) {
  return commutator(std::span<const NilElement>(gs.begin(), gs.size()));
}

inline NilElement collect(const Word& w, const GroupPtr& g) { return g->collect(w); }
inline int weight(const NilElement& g) { return g.weight(); }

/// Image of g under the endomorphism that sends x_i to images[i-1].
inline NilElement substitute(const NilElement& g, std::span<const NilElement> images) {
  const auto& G = g.G();
  if (static_cast<int>(images.size()) != G.rank()) throw RankError("wrong number of generator images");
  for (const auto& im : images) g.check(im);
  const auto& B = G.basis();
  std::vector<IntVector> img(B.size());
  IntVector r = G.identity_vector();
  for (int m = 0; m < B.size(); ++m) {
    const auto& c = B[m];
    // brackets need their constituents even when their own exponent is zero
    img[m] = c.is_generator() ? images[c.generator - 1].exponents() : G.commutator(img[c.left], img[c.right]);
  }
  for (int m = 0; m < B.size(); ++m)
    if (g[m] != 0) r = G.multiply(r, G.power(img[m], g[m]));
  return g.group()->element(std::move(r));
}

/// The anti-automorphism induced by reading words backwards:
/// bar(g) = (g^iota)^-1 where iota inverts every generator.
inline NilElement bar(const NilElement& g) {
  const auto& G = g.G();
  IntVector r = G.identity_vector();
  for (int m = 0; m < G.dimension(); ++m)
    if (g[m] != 0) r = G.multiply(r, G.power(G.inverted_generators_image(m), g[m]));
  return g.group()->element(G.inverse(r));
}

/// Canonical rendering, e.g. "x1^2 * x2 * [x2,x1]^-1"; "1" for the identity.
inline std::string render(const NilElement& g) {
  const auto& B = g.G().basis();
  std::string out;
  for (int m = 0; m < B.size(); ++m) {
    if (g[m] == 0) continue;
    if (!out.empty()) out += " * ";
    out += B.name(m);
    if (g[m] != 1) out += "^" + g[m].str();
  }
  return out.empty() ? "1" : out;
}

/// A reduced word representing g: the ordered product of expanded basis powers.
inline Word to_word(const NilElement& g) {
  const auto& B = g.G().basis();
  Word w(B.rank());
  for (int m = 0; m < B.size(); ++m)
    if (g[m] != 0) w *= B.word(m).power(static_cast<long long>(to_int64(g[m])));
  return w;
}

namespace detail {
struct NilOps {
  const NilpotentGroup& G;
  NilElement identity() const { return G.identity(); }
  NilElement generator(int i) const { return G.generator(i); }
  NilElement multiply(const NilElement& a, const NilElement& b) const { return a * b; }
  NilElement inverse(const NilElement& a) const { return a.inverse(); }
  NilElement power(const NilElement& a, const Integer& e) const { return a.power(e); }
};
}  // namespace detail

inline NilElement NilpotentGroup::parse(std::string_view text) const {
  Expr e = parse_expr(text, rank());
  detail::NilOps ops{*this};
  return evaluate(e, ops);
}

/// Both sides of [y_1..y_2m] * bar([y_1..y_2m]) = w_2m, where
/// w_2 = [y_1, y_2, y_1 y_2] and
/// w_{2m+2} = [w_2m, y_{2m+1}, y_{2m+2}] [y_1, ..., y_{2m+1}, y_{2m+1} y_{2m+2}, y_{2m+2}].
/// The group must have step 2m+1.
inline std::pair<NilElement, NilElement> w2k_sides(std::span<const NilElement> y) {
  if (y.size() < 2 || y.size() % 2 != 0) throw std::invalid_argument("need an even number (>= 2) of elements");
  const auto& G = y[0].G();
  int m = static_cast<int>(y.size()) / 2;
  if (G.step() != 2 * m + 1)
    throw std::invalid_argument("identity requires step " + std::to_string(2 * m + 1));
  NilElement z = commutator(y);
  NilElement lhs = z * bar(z);
  NilElement w = commutator({y[0], y[1], y[0] * y[1]});
  for (int t = 1; t < m; ++t) {
    const NilElement& a = y[2 * t];
    const NilElement& b = y[2 * t + 1];
    std::vector<NilElement> args(y.begin(), y.begin() + 2 * t + 1);
    args.push_back(a * b);
    args.push_back(b);
    w = commutator({w, a, b}) * commutator(args);
  }
  return {lhs, w};
}

inline bool verify_w2k(std::span<const NilElement> y) {
  auto [lhs, rhs] = w2k_sides(y);
  return lhs == rhs;
}

}  // namespace nilpal
