#pragma once

// Text format for automorphisms: one line "x<i> -> <expr>" per generator,
// '#' starts a comment, generators without a line map to themselves.

#include "nilpal/autos.hpp"
#include "nilpal/expr.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilpal {

class AutoFileError : public std::invalid_argument {
 public:
  AutoFileError(int line, const std::string& msg)
      : std::invalid_argument("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

inline Endo parse_automorphism(std::string_view text, const GroupPtr& g) {
  int n = g->rank();
  std::vector<NilElement> images;
  std::vector<bool> seen(n, false);
  for (int i = 1; i <= n; ++i) images.push_back(g->generator(i));
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw AutoFileError(lineno, "expected 'x<i> -> <expr>'");
    std::string lhs = line.substr(0, arrow);
    auto l0 = lhs.find_first_not_of(" \t");
    auto l1 = lhs.find_last_not_of(" \t");
    lhs = (l0 == std::string::npos) ? "" : lhs.substr(l0, l1 - l0 + 1);
    if (lhs.size() < 2 || lhs[0] != 'x' ||
        !std::all_of(lhs.begin() + 1, lhs.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw AutoFileError(lineno, "left side must be a generator x<i>, got '" + lhs + "'");
    int i = 0;
    try {
      i = std::stoi(lhs.substr(1));
    } catch (const std::exception&) {
      throw AutoFileError(lineno, "generator index too large");
    }
    if (i < 1 || i > n) throw AutoFileError(lineno, "generator " + lhs + " out of range for rank " + std::to_string(n));
    if (seen[i - 1]) throw AutoFileError(lineno, "duplicate image for " + lhs);
    seen[i - 1] = true;
    try {
      images[i - 1] = g->parse(line.substr(arrow + 2));
    } catch (const ParseError& err) {
      throw AutoFileError(lineno, err.what());
    }
  }
  return Endo(g, std::move(images));
}

inline std::string render_automorphism(const Endo& e) {
  std::string out;
  for (int i = 1; i <= e.rank(); ++i) out += "x" + std::to_string(i) + " -> " + render(e.image(i)) + "\n";
  return out;
}

}  // namespace nilpal
