#pragma once

// The quotient ZF_n / R with R = [Delta, Delta] + Delta^3, where Delta is the
// augmentation ideal. Modulo R the ring is commutative and truncated at
// degree three, so every element is a + sum_i b_i X_i + sum_{i<=j} c_ij X_i X_j
// with X_i = x_i - 1. Fox derivatives are evaluated directly in this quotient.

#include "nilpal/integer.hpp"
#include "nilpal/nilpotent.hpp"
#include "nilpal/words.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilpal {

class RingElemModR {
 public:
  explicit RingElemModR(int n = 1) : n_(n), linear_(n, 0), quad_(n * (n + 1) / 2, 0) {
    if (n < 1) throw std::invalid_argument("ring needs at least one generator");
  }

  static RingElemModR constant(int n, const Integer& c) {
    RingElemModR r(n);
    r.constant_ = c;
    return r;
  }
  /// X_i = x_i - 1 (1-based index)
  static RingElemModR x_minus_one(int n, int i) {
    RingElemModR r(n);
    r.linear_.at(i - 1) = 1;
    return r;
  }
  /// c * X_i X_j
  static RingElemModR monomial(int n, int i, int j, const Integer& c = 1) {
    RingElemModR r(n);
    r.quadratic(i, j) = c;
    return r;
  }

  int rank() const { return n_; }
  const Integer& constant_term() const { return constant_; }
  Integer& constant_term() { return constant_; }
  const Integer& linear(int i) const { return linear_.at(i - 1); }
  Integer& linear(int i) { return linear_.at(i - 1); }
  /// Coefficient of the unordered monomial X_i X_j (i, j 1-based, any order).
  const Integer& quadratic(int i, int j) const { return quad_.at(slot(i, j)); }
  Integer& quadratic(int i, int j) { return quad_.at(slot(i, j)); }

  /// Symmetric n x n view of the quadratic part.
  IntMatrix quadratic_matrix() const {
    IntMatrix m(n_, IntVector(n_, 0));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) m[i - 1][j - 1] = quadratic(i, j);
    return m;
  }

  bool is_zero() const { return constant_ == 0 && nilpal::is_zero(linear_) && nilpal::is_zero(quad_); }
  bool quadratic_is_zero() const { return nilpal::is_zero(quad_); }

  RingElemModR& operator+=(const RingElemModR& o) {
    check(o);
    constant_ += o.constant_;
    for (int i = 0; i < n_; ++i) linear_[i] += o.linear_[i];
    for (std::size_t t = 0; t < quad_.size(); ++t) quad_[t] += o.quad_[t];
    return *this;
  }
  friend RingElemModR operator+(RingElemModR a, const RingElemModR& b) { return a += b; }
  RingElemModR operator-() const { return copy_negated(*this); }
  RingElemModR& operator-=(const RingElemModR& o) { return *this += copy_negated(o); }
  friend RingElemModR operator-(RingElemModR a, const RingElemModR& b) { return a -= b; }

  friend RingElemModR operator*(const RingElemModR& a, const RingElemModR& b) {
    a.check(b);
    int n = a.n_;
    RingElemModR r(n);
    r.constant_ = a.constant_ * b.constant_;
    for (int i = 0; i < n; ++i) r.linear_[i] = a.constant_ * b.linear_[i] + b.constant_ * a.linear_[i];
    for (std::size_t t = 0; t < r.quad_.size(); ++t) r.quad_[t] = a.constant_ * b.quad_[t] + b.constant_ * a.quad_[t];
    for (int i = 1; i <= n; ++i) {
      if (a.linear(i) == 0) continue;
      for (int j = 1; j <= n; ++j) r.quadratic(i, j) += a.linear(i) * b.linear(j);
    }
    return r;
  }
  RingElemModR& operator*=(const RingElemModR& o) { return *this = *this * o; }

  bool operator==(const RingElemModR& o) const {
    check(o);
    return constant_ == o.constant_ && linear_ == o.linear_ && quad_ == o.quad_;
  }

  /// Nonzero quadratic coefficients as ((i, j), c) with i <= j, in lexicographic order.
  std::vector<std::pair<std::pair<int, int>, Integer>> quadratic_terms() const {
    std::vector<std::pair<std::pair<int, int>, Integer>> out;
    for (int i = 1; i <= n_; ++i)
      for (int j = i; j <= n_; ++j)
        if (quadratic(i, j) != 0) out.push_back({{i, j}, quadratic(i, j)});
    return out;
  }

  void check(const RingElemModR& o) const {
    if (o.n_ != n_) throw std::invalid_argument("ring elements of different rank");
  }

 private:
  static RingElemModR copy_negated(const RingElemModR& o) {
    RingElemModR r = o;
    r.constant_ = -r.constant_;
    for (auto& x : r.linear_) x = -x;
    for (auto& x : r.quad_) x = -x;
    return r;
  }

  std::size_t slot(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_) throw std::out_of_range("ring index out of range");
    if (i > j) std::swap(i, j);
    // row-major upper triangle
    int a = i - 1, b = j - 1;
    return static_cast<std::size_t>(a * n_ - a * (a - 1) / 2 + (b - a));
  }

  int n_;
  Integer constant_ = 0;
  IntVector linear_;
  IntVector quad_;
};

inline RingElemModR add(const RingElemModR& a, const RingElemModR& b) { return a + b; }
inline RingElemModR negate(const RingElemModR& a) { return -a; }
inline RingElemModR mul(const RingElemModR& a, const RingElemModR& b) { return a * b; }

/// Residue report: "(i,j): c" per nonzero quadratic coefficient, or "0".
inline std::string render_residue(const RingElemModR& r) {
  std::string out;
  for (const auto& [ij, c] : r.quadratic_terms()) {
    if (!out.empty()) out += ", ";
    out += "(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + "): " + c.str();
  }
  return out.empty() ? "0" : out;
}

/// Image of a single letter: x_i -> 1 + X_i, x_i^-1 -> 1 - X_i + X_i^2.
inline RingElemModR embed(const Letter& l, int n) {
  RingElemModR r = RingElemModR::constant(n, 1);
  r.linear(l.index) = l.sign;
  if (l.sign < 0) r.quadratic(l.index, l.index) = 1;
  return r;
}

inline RingElemModR embed(const Word& w) {
  RingElemModR r = RingElemModR::constant(w.rank(), 1);
  for (const auto& l : w.letters()) r *= embed(l, w.rank());
  return r;
}

/// Fox derivative d_j(w) modulo R, folded left to right with
/// d(uv) = d(u) + u d(v) and d(x_j^-1) = -x_j^-1.
inline RingElemModR fox_derivative(const Word& w, int j) {
  int n = w.rank();
  if (j < 1 || j > n) throw std::out_of_range("Fox derivative index out of range");
  RingElemModR prefix = RingElemModR::constant(n, 1);
  RingElemModR d(n);
  for (const auto& l : w.letters()) {
    RingElemModR e = embed(l, n);
    if (l.index == j) {
      if (l.sign > 0)
        d += prefix;
      else
        d -= prefix * e;
    }
    prefix *= e;
  }
  return d;
}

/// One row of the table of derivatives of weight-three brackets.
struct FoxTableRow {
  std::string formula;    // e.g. "d_i [x_i,x_a,x_b] = (x_a-1)(x_b-1)"
  int assignments = 0;    // admissible pairwise-distinct index assignments tried
  int failures = 0;
  std::string first_failure;
};

struct FoxTableReport {
  int rank = 0;
  std::vector<FoxTableRow> rows;
  bool passed() const {
    for (const auto& r : rows)
      if (r.failures != 0) return false;
    return true;
  }
};

/// Checks the eight congruences for d_i of [x_p, x_q, x_r] with p, q, r drawn
/// from {i, a, b, c}, over every assignment of pairwise-distinct indices.
inline FoxTableReport check_fox_table(int n) {
  struct Spec {
    const char* formula;
    // letters: 0 = i, 1 = a, 2 = b, 3 = c
    int p, q, r;
    int sign;   // expected = sign * X_u X_v, or 0
    int u, v;
  };
  static const Spec specs[] = {
      {"d_i [x_a,x_b,x_c] = 0", 1, 2, 3, 0, 0, 0},
      {"d_i [x_a,x_b,x_i] = 0", 1, 2, 0, 0, 0, 0},
      {"d_i [x_i,x_a,x_b] = (x_a-1)(x_b-1)", 0, 1, 2, 1, 1, 2},
      {"d_i [x_a,x_i,x_b] = -(x_a-1)(x_b-1)", 1, 0, 2, -1, 1, 2},
      {"d_i [x_i,x_a,x_i] = (x_i-1)(x_a-1)", 0, 1, 0, 1, 0, 1},
      {"d_i [x_a,x_i,x_i] = -(x_i-1)(x_a-1)", 1, 0, 0, -1, 0, 1},
      {"d_i [x_i,x_a,x_a] = (x_a-1)^2", 0, 1, 1, 1, 1, 1},
      {"d_i [x_a,x_i,x_a] = -(x_a-1)^2", 1, 0, 1, -1, 1, 1},
  };
  FoxTableReport report;
  report.rank = n;
  for (const auto& s : specs) {
    FoxTableRow row;
    row.formula = s.formula;
    int letters = 1 + std::max({s.p, s.q, s.r});
    std::vector<int> idx(letters, 1);
    // enumerate assignments of pairwise-distinct indices to the letters in use
    auto next = [&]() {
      for (int t = letters - 1; t >= 0; --t) {
        if (idx[t] < n) {
          ++idx[t];
          return true;
        }
        idx[t] = 1;
      }
      return false;
    };
    do {
      bool distinct = true;
      for (int a = 0; a < letters; ++a)
        for (int b = a + 1; b < letters; ++b)
          if (idx[a] == idx[b]) distinct = false;
      if (!distinct) continue;
      ++row.assignments;
      Word xp = Word::generator(n, idx[s.p]), xq = Word::generator(n, idx[s.q]), xr = Word::generator(n, idx[s.r]);
      Word w = commutator(commutator(xp, xq), xr);
      RingElemModR got = fox_derivative(w, idx[0]);
      RingElemModR want(n);
      if (s.sign != 0) want = RingElemModR::monomial(n, idx[s.u], idx[s.v], s.sign);
      if (!(got == want)) {
        if (row.failures++ == 0) row.first_failure = render_residue(got - want);
      }
    } while (next());
    report.rows.push_back(std::move(row));
  }
  return report;
}

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct BglmResult {
  bool satisfied = false;
  RingElemModR residue;  // sum_i d_i(w_i) modulo R
};

/// True iff w is trivial in N_{n,2}, i.e. w lies in gamma_3 of the free group.
inline bool in_gamma3(const Word& w) {
  if (w.rank() < 2) return w.empty();
  return NilpotentGroup::get(w.rank(), 2)->collect(w).is_identity();
}

/// The necessary condition for tameness of x_i -> x_i w_i (w_i in gamma_3):
/// d_1 w_1 + ... + d_n w_n == 0 modulo R.
inline BglmResult bglm_condition(const std::vector<Word>& w) {
  if (w.empty()) throw std::invalid_argument("need one word per generator");
  int n = w[0].rank();
  if (static_cast<int>(w.size()) != n) throw RankError("need exactly one word per generator");
  BglmResult out{false, RingElemModR(n)};
  for (int i = 1; i <= n; ++i) {
    if (w[i - 1].rank() != n) throw RankError("word rank mismatch");
    if (!in_gamma3(w[i - 1]))
      throw PreconditionError("w_" + std::to_string(i) + " does not lie in gamma_3 of the free group");
    out.residue += fox_derivative(w[i - 1], i);
  }
  if (out.residue.constant_term() != 0)
    throw std::logic_error("constant part of the BGLM sum should vanish on gamma_3");
  for (int i = 1; i <= n; ++i)
    if (out.residue.linear(i) != 0) throw std::logic_error("linear part of the BGLM sum should vanish on gamma_3");
  out.satisfied = out.residue.quadratic_is_zero();
  return out;
}

}  // namespace nilpal
