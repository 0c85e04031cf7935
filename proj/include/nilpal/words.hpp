#pragma once

#include <algorithm>
#include <compare>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilpal {

/// A generator x_index raised to sign (+1 or -1).
struct Letter {
  int index = 1;
  int sign = 1;

  Letter inverse() const { return {index, -sign}; }
  bool cancels(const Letter& o) const { return index == o.index && sign == -o.sign; }
  auto operator<=>(const Letter&) const = default;
};

class RankError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Freely reduced word in the free group of the given rank.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {
    if (rank < 1) throw RankError("rank must be positive");
  }
  /// Reduces the letters; throws RankError when an index exceeds the rank.
  Word(int rank, const std::vector<Letter>& letters) : Word(rank) {
    for (const auto& l : letters) push_back(l);
  }

  static Word generator(int rank, int index, int sign = 1) {
    return Word(rank, {Letter{index, sign}});
  }

  int rank() const { return rank_; }
  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  /// Appends one letter with free cancellation.
  void push_back(const Letter& l) {
    if (l.index < 1 || l.index > rank_)
      throw RankError("generator x" + std::to_string(l.index) + " exceeds rank " +
                      std::to_string(rank_));
    if (l.sign != 1 && l.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    if (!letters_.empty() && letters_.back().cancels(l))
      letters_.pop_back();
    else
      letters_.push_back(l);
  }

  Word inverse() const {
    Word w(rank_);
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
    return w;
  }

  /// Literal reversal; signs are kept, and the result is still reduced.
  Word reversed() const {
    Word w(rank_);
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    return w;
  }

  bool is_palindrome() const { return std::equal(letters_.begin(), letters_.end(), letters_.rbegin()); }

  Word& operator*=(const Word& o) {
    check_rank(o);
    for (const auto& l : o.letters_) push_back(l);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word power(long long e) const {
    Word base = e < 0 ? inverse() : *this;
    Word out(rank_);
    for (long long i = 0; i < (e < 0 ? -e : e); ++i) out *= base;
    return out;
  }

  bool operator==(const Word& o) const = default;

 private:
  void check_rank(const Word& o) const {
    if (o.rank_ != rank_) throw RankError("rank mismatch between words");
  }

  int rank_ = 1;
  std::vector<Letter> letters_;
};

inline Word reduce(int rank, const std::vector<Letter>& letters) { return Word(rank, letters); }
inline Word reverse_word(const Word& w) { return w.reversed(); }
inline bool is_word_palindrome(const Word& w) { return w.is_palindrome(); }
inline Word invert_word(const Word& w) { return w.inverse(); }
inline Word concat(const Word& u, const Word& v) { return u * v; }

/// Group commutator [u,v] = u^-1 v^-1 u v.
inline Word commutator(const Word& u, const Word& v) { return u.inverse() * v.inverse() * u * v; }

/// Canonical rendering: runs of equal letters collapse into powers, "1" for the empty word.
inline std::string render(const Word& w) {
  const auto& ls = w.letters();
  if (ls.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < ls.size();) {
    std::size_t j = i;
    while (j < ls.size() && ls[j] == ls[i]) ++j;
    long long e = static_cast<long long>(j - i) * ls[i].sign;
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(ls[i].index);
    if (e != 1) out += '^' + std::to_string(e);
    i = j;
  }
  return out;
}

}  // namespace nilpal
