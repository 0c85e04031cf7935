#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilpal {

/// Exact integer used for every exponent and coefficient in the library.
using Integer = boost::multiprecision::cpp_int;

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

inline std::string to_string(const Integer& v) { return v.str(); }

inline int sign(const Integer& v) { return v.sign(); }

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

/// Floor division for exact integers (cpp_int truncates toward zero).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

/// Converts to a machine integer, throwing when the value does not fit.
inline std::int64_t to_int64(const Integer& v) {
  if (v > Integer(INT64_MAX) || v < Integer(INT64_MIN))
    throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
  return static_cast<std::int64_t>(v);
}

inline IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Row-convention matrix product.
inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  if (a.empty()) return {};
  std::size_t n = a.size(), inner = b.size(), m = b.empty() ? 0 : b[0].size();
  if (a[0].size() != inner) throw std::invalid_argument("matrix dimension mismatch");
  IntMatrix c(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < inner; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

}  // namespace nilpal
