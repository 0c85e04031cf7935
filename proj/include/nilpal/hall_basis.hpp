#pragma once

#include "nilpal/words.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilpal {

/// A basic commutator: either a generator x_generator or the bracket of two
/// earlier basis elements (positions in the basis, 0-based).
struct BasicCommutator {
  int generator = 0;  // 1..n for generators, 0 for brackets
  int left = -1;
  int right = -1;
  int weight = 1;

  bool is_generator() const { return generator != 0; }
};

/// Witt's formula: rank of the weight-w layer of the free Lie ring on n generators.
inline long long witt_number(int n, int w) {
  auto mobius = [](int d) {
    int result = 1;
    for (int p = 2; p * p <= d; ++p) {
      if (d % p == 0) {
        d /= p;
        if (d % p == 0) return 0;
        result = -result;
      }
    }
    if (d > 1) result = -result;
    return result;
  };
  auto ipow = [](long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
  };
  long long sum = 0;
  for (int d = 1; d <= w; ++d)
    if (w % d == 0) sum += mobius(d) * ipow(n, w / d);
  return sum / w;
}

/// Hall basis of basic commutators of weight at most `step`, ordered by weight and
/// then lexicographically by (left, right). With this order [x_a,x_b] is basic
/// exactly when a > b, and [x_a,x_b,x_c] exactly when a > b and c >= b.
class HallBasis {
 public:
  HallBasis(int rank, int step) : rank_(rank), step_(step) {
    if (rank < 1) throw std::invalid_argument("rank must be at least 1");
    if (step < 1) throw std::invalid_argument("step must be at least 1");
    weight_begin_.push_back(0);  // weight 0 is empty
    weight_begin_.push_back(0);
    for (int i = 1; i <= rank; ++i) elems_.push_back({i, -1, -1, 1});
    weight_begin_.push_back(static_cast<int>(elems_.size()));
    for (int w = 2; w <= step; ++w) {
      int end_prev = weight_begin_[w];
      for (int a = 0; a < end_prev; ++a) {
        int wb = w - elems_[a].weight;
        if (wb < 1 || wb >= w) continue;
        for (int b = weight_begin_[wb]; b < weight_begin_[wb + 1]; ++b) {
          if (!(a > b)) continue;
          if (!elems_[a].is_generator() && elems_[a].right > b) continue;
          pair_index_[{a, b}] = static_cast<int>(elems_.size());
          elems_.push_back({0, a, b, w});
        }
      }
      weight_begin_.push_back(static_cast<int>(elems_.size()));
      if (static_cast<long long>(elems_.size()) - weight_begin_[w] != witt_number(rank, w))
        throw std::logic_error("Hall basis count disagrees with Witt's formula");
    }
  }

  int rank() const { return rank_; }
  int step() const { return step_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const BasicCommutator& operator[](int m) const { return elems_.at(m); }
  const std::vector<BasicCommutator>& elements() const { return elems_; }

  int weight(int m) const { return elems_[m].weight; }
  /// First position of weight w; positions of weight w are [begin(w), end(w)).
  int begin(int w) const { return weight_begin_.at(w); }
  int end(int w) const { return weight_begin_.at(w + 1); }
  int layer_size(int w) const { return end(w) - begin(w); }

  /// Position of the basic commutator [left, right], if that pair is basic and fits.
  std::optional<int> find_pair(int left, int right) const {
    auto it = pair_index_.find({left, right});
    if (it == pair_index_.end()) return std::nullopt;
    return it->second;
  }

  /// Position of [x_a, x_b, x_c, ...] given by generator indices, when that
  /// left-normed bracket is itself a basis element.
  std::optional<int> find(const std::vector<int>& generators) const {
    if (generators.empty()) return std::nullopt;
    int cur = generators[0] - 1;
    if (cur < 0 || cur >= rank_) return std::nullopt;
    for (std::size_t t = 1; t < generators.size(); ++t) {
      int g = generators[t] - 1;
      if (g < 0 || g >= rank_) return std::nullopt;
      auto p = find_pair(cur, g);
      if (!p) return std::nullopt;
      cur = *p;
    }
    return cur;
  }

  /// Left-normed rendering, e.g. "x2", "[x2,x1]", "[x2,x1,x1]", "[x3,x2,[x2,x1]]".
  std::string name(int m) const {
    const auto& c = elems_.at(m);
    if (c.is_generator()) return "x" + std::to_string(c.generator);
    return "[" + flat(m) + "]";
  }

  /// The basis element written out as a reduced word in the generators.
  Word word(int m) const {
    const auto& c = elems_.at(m);
    if (c.is_generator()) return Word::generator(rank_, c.generator);
    return commutator(word(c.left), word(c.right));
  }

 private:
  std::string flat(int m) const {
    const auto& c = elems_[m];
    if (c.is_generator()) return "x" + std::to_string(c.generator);
    return flat(c.left) + "," + name(c.right);
  }

  int rank_;
  int step_;
  std::vector<BasicCommutator> elems_;
  std::vector<int> weight_begin_;
  std::map<std::pair<int, int>, int> pair_index_;
};

inline HallBasis hall_basis(int n, int k) { return HallBasis(n, k); }

}  // namespace nilpal
