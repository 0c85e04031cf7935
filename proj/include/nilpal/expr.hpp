#pragma once

// Textual grammar shared by words, group elements and automorphism files:
//
//   expr  := term (('*' | whitespace)? term)*
//   term  := atom ('^' integer)?
//   atom  := 'x' digits | '1' | '(' expr ')' | '[' expr (',' expr)+ ']'
//
// A generator exponent must be nonzero. Commutators are left-normed with
// [g,h] = g^-1 h^-1 g h.

#include "nilpal/integer.hpp"
#include "nilpal/words.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilpal {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Rank };

  ParseError(Kind kind, std::size_t position, const std::string& message)
      : std::runtime_error((kind == Kind::Rank ? "rank error at position " : "syntax error at position ") +
                           std::to_string(position) + ": " + message),
        kind_(kind),
        position_(position) {}

  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

struct Expr {
  enum class Kind { One, Generator, Product, Power, Commutator };

  Kind kind = Kind::One;
  int index = 0;          // Generator
  Integer exponent = 1;   // Power
  std::vector<Expr> args; // Product, Power (one child), Commutator

  static Expr one() { return {}; }
  static Expr generator(int i) {
    Expr e;
    e.kind = Kind::Generator;
    e.index = i;
    return e;
  }
};

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, int rank) : text_(text), rank_(rank) {}

  Expr parse() {
    skip_ws();
    if (at_end()) fail("empty expression");
    Expr e = product();
    skip_ws();
    if (!at_end()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return e;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(ParseError::Kind::Syntax, pos_, msg);
  }

  bool starts_atom() const {
    char c = peek();
    return c == 'x' || c == '1' || c == '(' || c == '[';
  }

  Expr product() {
    std::vector<Expr> factors;
    factors.push_back(term());
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        if (!starts_atom()) fail("expected a factor after '*'");
        factors.push_back(term());
      } else if (starts_atom()) {
        factors.push_back(term());
      } else {
        break;
      }
    }
    if (factors.size() == 1) return std::move(factors.front());
    Expr e;
    e.kind = Expr::Kind::Product;
    e.args = std::move(factors);
    return e;
  }

  Integer integer() {
    std::size_t start = pos_;
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = peek() == '-';
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) {
      pos_ = start;
      fail("expected an integer exponent");
    }
    Integer v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return neg ? Integer(-v) : v;
  }

  Expr term() {
    bool is_generator = peek() == 'x';
    Expr base = atom();
    skip_ws();
    if (peek() != '^') return base;
    ++pos_;
    skip_ws();
    std::size_t exp_pos = pos_;
    Integer e = integer();
    if (is_generator && e == 0) {
      pos_ = exp_pos;
      fail("generator exponent must be nonzero");
    }
    Expr p;
    p.kind = Expr::Kind::Power;
    p.exponent = e;
    p.args.push_back(std::move(base));
    return p;
  }

  Expr atom() {
    skip_ws();
    char c = peek();
    if (c == 'x') {
      std::size_t start = pos_;
      ++pos_;
      if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected generator index after 'x'");
      long long idx = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        idx = idx * 10 + (text_[pos_] - '0');
        if (idx > 1'000'000) fail("generator index too large");
        ++pos_;
      }
      if (idx < 1) {
        pos_ = start;
        fail("generator index must be positive");
      }
      if (rank_ > 0 && idx > rank_)
        throw ParseError(ParseError::Kind::Rank, start,
                         "x" + std::to_string(idx) + " exceeds rank " + std::to_string(rank_));
      return Expr::generator(static_cast<int>(idx));
    }
    if (c == '1') {
      ++pos_;
      if (std::isdigit(static_cast<unsigned char>(peek()))) fail("unexpected number");
      return Expr::one();
    }
    if (c == '(') {
      ++pos_;
      skip_ws();
      Expr inner = product();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Expr e;
      e.kind = Expr::Kind::Commutator;
      for (;;) {
        skip_ws();
        if (!starts_atom()) fail("expected a commutator argument");
        e.args.push_back(product());
        skip_ws();
        if (peek() == ',') {
          ++pos_;
          continue;
        }
        if (peek() == ']') {
          ++pos_;
          break;
        }
        fail("expected ',' or ']'");
      }
      if (e.args.size() < 2) fail("a commutator needs at least two arguments");
      return e;
    }
    if (at_end()) fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  int rank_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses an expression. When rank > 0, generator indices above it are rejected.
inline Expr parse_expr(std::string_view text, int rank = 0) { return detail::ExprParser(text, rank).parse(); }

/// Evaluates an expression in any group described by `ops`, which must provide
/// identity(), generator(int), multiply(a,b), inverse(a) and power(a, Integer).
template <class Ops>
auto evaluate(const Expr& e, Ops& ops) -> decltype(ops.identity()) {
  switch (e.kind) {
    case Expr::Kind::One:
      return ops.identity();
    case Expr::Kind::Generator:
      return ops.generator(e.index);
    case Expr::Kind::Product: {
      auto acc = evaluate(e.args.front(), ops);
      for (std::size_t i = 1; i < e.args.size(); ++i) acc = ops.multiply(acc, evaluate(e.args[i], ops));
      return acc;
    }
    case Expr::Kind::Power:
      return ops.power(evaluate(e.args.front(), ops), e.exponent);
    case Expr::Kind::Commutator: {
      auto acc = evaluate(e.args.front(), ops);
      for (std::size_t i = 1; i < e.args.size(); ++i) {
        auto h = evaluate(e.args[i], ops);
        acc = ops.multiply(ops.multiply(ops.inverse(acc), ops.inverse(h)), ops.multiply(acc, h));
      }
      return acc;
    }
  }
  return ops.identity();
}

namespace detail {

struct WordOps {
  int rank;
  Word identity() const { return Word(rank); }
  Word generator(int i) const { return Word::generator(rank, i); }
  Word multiply(const Word& a, const Word& b) const { return a * b; }
  Word inverse(const Word& a) const { return a.inverse(); }
  Word power(const Word& a, const Integer& e) const {
    if (abs(e) > 10'000'000) throw std::overflow_error("word exponent too large to expand");
    return a.power(static_cast<long long>(e));
  }
};

}  // namespace detail

/// Parses text in the word grammar and returns the freely reduced word.
inline Word parse_word(std::string_view text, int rank) {
  Expr e = parse_expr(text, rank);
  detail::WordOps ops{rank};
  return evaluate(e, ops);
}

}  // namespace nilpal
