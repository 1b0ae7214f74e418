#pragma once

// Small dense-matrix oracles shared by the unit and acceptance tests.

#include <cstdint>
#include <random>
#include <vector>

#include "qperiod/quiver.hpp"

namespace testsupport {

using Dense = std::vector<std::vector<long>>;

inline Dense zeros(std::size_t n) { return Dense(n, std::vector<long>(n, 0)); }

inline Dense identity(std::size_t n) {
  Dense d = zeros(n);
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

inline Dense mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c = zeros(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (a[i][k] != 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Dense transpose(const Dense& a) {
  Dense t = zeros(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline Dense sub(const Dense& a, const Dense& b) {
  Dense c = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
  return c;
}

inline Dense power(const Dense& a, unsigned p) {
  Dense r = identity(a.size());
  for (unsigned i = 0; i < p; ++i) r = mul(r, a);
  return r;
}

/// Columns: tau e_j = e_{j+1} for j < n, tau e_n = -e_1.
inline Dense tau_matrix(std::size_t n) {
  Dense t = zeros(n);
  for (std::size_t j = 0; j + 1 < n; ++j) t[j + 1][j] = 1;
  t[0][n - 1] = -1;
  return t;
}

/// Cyclic permutation matrix rho e_j = e_{j+1 mod n}.
inline Dense rho_matrix(std::size_t n) {
  Dense t = zeros(n);
  for (std::size_t j = 0; j < n; ++j) t[(j + 1) % n][j] = 1;
  return t;
}

inline qperiod::ExchangeMatrix to_matrix(const Dense& d) {
  std::vector<std::vector<qperiod::BigInt>> rows;
  for (const auto& r : d) {
    rows.emplace_back();
    for (long v : r) rows.back().emplace_back(v);
  }
  return qperiod::ExchangeMatrix::from_rows(d.size(), 0, rows);
}

inline Dense to_dense(const qperiod::ExchangeMatrix& b) {
  Dense d = zeros(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) d[i][j] = b(i + 1, j + 1).get_si();
  return d;
}

inline qperiod::ExchangeMatrix random_skew(std::mt19937& rng, std::size_t n, std::size_t frozen,
                                           int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  qperiod::ExchangeMatrix b(n, frozen);
  for (std::size_t i = 1; i <= n + frozen; ++i)
    for (std::size_t j = i + 1; j <= n + frozen; ++j)
      if (!(i > n && j > n)) b.set(i, j, qperiod::BigInt(dist(rng)));
  return b;
}

inline std::vector<qperiod::BigInt> random_palindrome(std::mt19937& rng, std::size_t N, int lo,
                                                      int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  std::vector<qperiod::BigInt> w(N - 1);
  for (std::size_t r = 1; 2 * r <= N; ++r) {
    qperiod::BigInt v(dist(rng));
    w[r - 1] = v;
    w[N - r - 1] = v;
  }
  return w;
}

}  // namespace testsupport
