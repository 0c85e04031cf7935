#pragma once

// Test-only oracles, independent of the collector:
//  * MagnusSeries: the truncated Magnus embedding x_i -> 1 + X_i into the
//    free associative ring modulo monomials of degree > k. It is faithful on
//    N_{n,k}, so two group elements are equal iff their series agree.
//  * unitriangular_matrix: the same representation written as the integer
//    matrix of right multiplication on the monomial basis.

#include "nilpal/hall_basis.hpp"
#include "nilpal/words.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

class MagnusSeries {
 public:
  MagnusSeries(int n, int k) : n_(n), k_(k) {
    offset_.push_back(0);
    long long p = 1;
    for (int d = 0; d <= k; ++d) {
      offset_.push_back(offset_.back() + p);
      p *= n;
    }
    coef_.assign(offset_.back(), 0);
    coef_[0] = 1;
  }

  static MagnusSeries generator(int n, int k, int i, int sign) {
    MagnusSeries s(n, k);
    // (1 + X)^-1 = 1 - X + X^2 - ...
    if (sign > 0) {
      s.coef_[s.offset_[1] + (i - 1)] = 1;
    } else {
      long long mono = 0;
      for (int d = 1; d <= k; ++d) {
        mono = mono * n + (i - 1);
        s.coef_[s.offset_[d] + mono] = (d % 2 == 1) ? -1 : 1;
      }
    }
    return s;
  }

  static MagnusSeries of_word(const nilpal::Word& w, int k) {
    MagnusSeries s(w.rank(), k);
    for (const auto& l : w.letters()) s = s * generator(w.rank(), k, l.index, l.sign);
    return s;
  }

  int size() const { return static_cast<int>(coef_.size()); }
  long long operator[](int idx) const { return coef_[idx]; }

  friend MagnusSeries operator*(const MagnusSeries& a, const MagnusSeries& b) {
    MagnusSeries r(a.n_, a.k_);
    r.coef_[0] = 0;
    for (int da = 0; da <= a.k_; ++da) {
      long long wa = a.offset_[da + 1] - a.offset_[da];
      for (long long ma = 0; ma < wa; ++ma) {
        long long ca = a.coef_[a.offset_[da] + ma];
        if (ca == 0) continue;
        for (int db = 0; da + db <= a.k_; ++db) {
          long long wb = b.offset_[db + 1] - b.offset_[db];
          long long shift = 1;
          for (int t = 0; t < db; ++t) shift *= a.n_;
          for (long long mb = 0; mb < wb; ++mb) {
            long long cb = b.coef_[b.offset_[db] + mb];
            if (cb == 0) continue;
            r.coef_[r.offset_[da + db] + ma * shift + mb] += ca * cb;
          }
        }
      }
    }
    return r;
  }

  bool operator==(const MagnusSeries& o) const { return coef_ == o.coef_; }

  /// Matrix of right multiplication by this series on the monomial basis.
  std::vector<std::vector<long long>> right_multiplication_matrix() const {
    int N = size();
    std::vector<std::vector<long long>> m(N, std::vector<long long>(N, 0));
    for (int row = 0; row < N; ++row) {
      MagnusSeries e(n_, k_);
      e.coef_[0] = 0;
      e.coef_[row] = 1;
      MagnusSeries p = e * (*this);
      for (int col = 0; col < N; ++col) m[row][col] = p.coef_[col];
    }
    return m;
  }

 private:
  int n_, k_;
  std::vector<long long> offset_;
  std::vector<long long> coef_;
};

using Matrix = std::vector<std::vector<long long>>;

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  std::size_t n = a.size();
  Matrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

inline bool is_unitriangular(const Matrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (m[i][j] != (i == j ? 1 : 0)) return false;
  return true;
}

/// Faithful unitriangular representation of N_{n,k} (matrices with
/// entries above the diagonal, since multiplication raises degree).
class UnitriangularRep {
 public:
  UnitriangularRep(int n, int k) : n_(n), k_(k) {
    for (int i = 1; i <= n; ++i) {
      gen_.push_back(MagnusSeries::generator(n, k, i, 1).right_multiplication_matrix());
      inv_.push_back(MagnusSeries::generator(n, k, i, -1).right_multiplication_matrix());
    }
  }

  Matrix identity() const {
    Matrix m(gen_[0].size(), std::vector<long long>(gen_[0].size(), 0));
    for (std::size_t i = 0; i < m.size(); ++i) m[i][i] = 1;
    return m;
  }

  Matrix of_word(const nilpal::Word& w) const {
    Matrix m = identity();
    for (const auto& l : w.letters()) m = matmul(m, l.sign > 0 ? gen_[l.index - 1] : inv_[l.index - 1]);
    return m;
  }

  /// Matrix of the ordered product of Hall basis powers with the given exponents.
  Matrix of_normal_form(const nilpal::HallBasis& B, const std::vector<long long>& e) const {
    std::vector<Matrix> pos(B.size()), neg(B.size());
    for (int m = 0; m < B.size(); ++m) {
      const auto& c = B[m];
      if (c.is_generator()) {
        pos[m] = gen_[c.generator - 1];
        neg[m] = inv_[c.generator - 1];
      } else {
        pos[m] = matmul(matmul(neg[c.left], neg[c.right]), matmul(pos[c.left], pos[c.right]));
        neg[m] = matmul(matmul(neg[c.right], neg[c.left]), matmul(pos[c.right], pos[c.left]));
      }
    }
    Matrix r = identity();
    for (int m = 0; m < B.size(); ++m)
      for (long long t = 0; t < (e[m] < 0 ? -e[m] : e[m]); ++t) r = matmul(r, e[m] > 0 ? pos[m] : neg[m]);
    return r;
  }

 private:
  int n_, k_;
  std::vector<Matrix> gen_, inv_;
};

/// Series of the ordered product of Hall basis powers.
inline MagnusSeries series_of_normal_form(const nilpal::HallBasis& B, const std::vector<long long>& e, int k) {
  int n = B.rank();
  std::vector<MagnusSeries> pos, neg;
  for (int m = 0; m < B.size(); ++m) {
    const auto& c = B[m];
    if (c.is_generator()) {
      pos.push_back(MagnusSeries::generator(n, k, c.generator, 1));
      neg.push_back(MagnusSeries::generator(n, k, c.generator, -1));
    } else {
      pos.push_back((neg[c.left] * neg[c.right]) * (pos[c.left] * pos[c.right]));
      neg.push_back((neg[c.right] * neg[c.left]) * (pos[c.right] * pos[c.left]));
    }
  }
  MagnusSeries r(n, k);
  for (int m = 0; m < B.size(); ++m)
    for (long long t = 0; t < (e[m] < 0 ? -e[m] : e[m]); ++t) r = r * (e[m] > 0 ? pos[m] : neg[m]);
  return r;
}

inline nilpal::Word random_word(std::mt19937_64& rng, int n, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(1, n), sgn(0, 1);
  std::vector<nilpal::Letter> ls;
  int L = len(rng);
  for (int t = 0; t < L; ++t) ls.push_back({gen(rng), sgn(rng) ? 1 : -1});
  return nilpal::Word(n, ls);
}

}  // namespace oracle
