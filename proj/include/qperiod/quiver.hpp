#pragma once

// Exchange matrices and Fomin-Zelevinsky mutation.
//
// Vertices are 1-based. Vertices 1..n are mutable, n+1..n+frozen are frozen.
// Entry (i,j) counts arrows i->j minus arrows j->i.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperiod/exact.hpp"

namespace qperiod {

/// Raised for results that are mathematically "no" rather than malformed
/// input: not period one, not sink type, failed verification and so on.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ExchangeMatrix {
 public:
  ExchangeMatrix() : ExchangeMatrix(1, 0) {}

  /// Zero matrix with n mutable and `frozen` frozen vertices.
  explicit ExchangeMatrix(std::size_t n, std::size_t frozen = 0)
      : n_(n), frozen_(frozen), b_((n + frozen) * (n + frozen)) {
    if (n == 0) throw std::invalid_argument("exchange matrix needs at least one mutable vertex");
  }

  /// Validates skew-symmetry and the zero frozen-frozen block.
  static ExchangeMatrix from_rows(std::size_t n, std::size_t frozen,
                                  const std::vector<std::vector<BigInt>>& rows) {
    ExchangeMatrix m(n, frozen);
    const std::size_t s = n + frozen;
    if (rows.size() != s) throw std::invalid_argument("matrix must have n+frozen rows");
    for (std::size_t i = 0; i < s; ++i) {
      if (rows[i].size() != s) throw std::invalid_argument("matrix must be square");
      for (std::size_t j = 0; j < s; ++j) m.b_[i * s + j] = rows[i][j];
    }
    m.validate();
    return m;
  }

  static ExchangeMatrix from_rows(std::size_t n, std::size_t frozen,
                                  std::initializer_list<std::initializer_list<long>> rows) {
    std::vector<std::vector<BigInt>> r;
    for (const auto& row : rows) {
      r.emplace_back();
      for (long v : row) r.back().emplace_back(v);
    }
    return from_rows(n, frozen, r);
  }

  /// Square matrix with no frozen vertices.
  static ExchangeMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    return from_rows(rows.size(), 0, rows);
  }

  std::size_t n() const { return n_; }
  std::size_t frozen() const { return frozen_; }
  std::size_t size() const { return n_ + frozen_; }
  bool is_frozen(std::size_t v) const { return v > n_; }

  const BigInt& operator()(std::size_t i, std::size_t j) const { return b_[idx(i, j)]; }

  /// Sets b_ij = v and b_ji = -v.
  void set(std::size_t i, std::size_t j, const BigInt& v) {
    if (i == j && v != 0) throw std::invalid_argument("diagonal entries must be zero");
    if (is_frozen(i) && is_frozen(j) && v != 0)
      throw std::invalid_argument("frozen-frozen entries must be zero");
    b_[idx(i, j)] = v;
    b_[idx(j, i)] = -v;
  }

  std::vector<std::vector<BigInt>> rows() const {
    std::vector<std::vector<BigInt>> r(size(), std::vector<BigInt>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) r[i][j] = b_[i * size() + j];
    return r;
  }

  /// The n x n block on mutable vertices.
  ExchangeMatrix mutable_block() const {
    ExchangeMatrix m(n_, 0);
    for (std::size_t i = 1; i <= n_; ++i)
      for (std::size_t j = 1; j <= n_; ++j) m.b_[m.idx(i, j)] = (*this)(i, j);
    return m;
  }

  /// Same mutable block with `rows` appended as frozen vertices; each row has
  /// length n and gives b_{n+i, j}.
  ExchangeMatrix with_frozen_rows(const std::vector<std::vector<BigInt>>& frozen_rows) const {
    ExchangeMatrix m(n_, frozen_rows.size());
    for (std::size_t i = 1; i <= n_; ++i)
      for (std::size_t j = 1; j <= n_; ++j) m.b_[m.idx(i, j)] = (*this)(i, j);
    for (std::size_t r = 0; r < frozen_rows.size(); ++r) {
      if (frozen_rows[r].size() != n_) throw std::invalid_argument("frozen row must have length n");
      for (std::size_t j = 1; j <= n_; ++j) m.set(n_ + r + 1, j, frozen_rows[r][j - 1]);
    }
    return m;
  }

  bool is_zero() const {
    for (const auto& v : b_)
      if (v != 0) return false;
    return true;
  }

  friend bool operator==(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    return a.n_ == b.n_ && a.frozen_ == b.frozen_ && a.b_ == b.b_;
  }

  friend ExchangeMatrix operator+(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    a.check_shape(b);
    ExchangeMatrix m(a);
    for (std::size_t i = 0; i < m.b_.size(); ++i) m.b_[i] += b.b_[i];
    return m;
  }
  friend ExchangeMatrix operator-(const ExchangeMatrix& a, const ExchangeMatrix& b) {
    a.check_shape(b);
    ExchangeMatrix m(a);
    for (std::size_t i = 0; i < m.b_.size(); ++i) m.b_[i] -= b.b_[i];
    return m;
  }
  friend ExchangeMatrix operator*(const BigInt& c, const ExchangeMatrix& a) {
    ExchangeMatrix m(a);
    for (auto& v : m.b_) v *= c;
    return m;
  }
  friend ExchangeMatrix operator*(long c, const ExchangeMatrix& a) { return BigInt(c) * a; }
  friend ExchangeMatrix operator-(const ExchangeMatrix& a) { return -1 * a; }
  ExchangeMatrix& operator+=(const ExchangeMatrix& o) { return *this = *this + o; }

  /// Rows separated by newlines, entries right-aligned.
  std::string to_string() const {
    std::size_t w = 1;
    for (const auto& v : b_) w = std::max(w, v.get_str().size());
    std::ostringstream os;
    for (std::size_t i = 1; i <= size(); ++i) {
      for (std::size_t j = 1; j <= size(); ++j) {
        std::string s = (*this)(i, j).get_str();
        os << (j > 1 ? " " : "") << std::string(w - s.size(), ' ') << s;
      }
      os << '\n';
    }
    return os.str();
  }

 private:
  std::size_t idx(std::size_t i, std::size_t j) const {
    if (i < 1 || j < 1 || i > size() || j > size())
      throw std::out_of_range("matrix index out of range");
    return (i - 1) * size() + (j - 1);
  }

  void check_shape(const ExchangeMatrix& o) const {
    if (n_ != o.n_ || frozen_ != o.frozen_) throw std::invalid_argument("matrix shape mismatch");
  }

  void validate() const {
    for (std::size_t i = 1; i <= size(); ++i) {
      if ((*this)(i, i) != 0) throw std::invalid_argument("diagonal entries must be zero");
      for (std::size_t j = i + 1; j <= size(); ++j) {
        if ((*this)(i, j) != -(*this)(j, i))
          throw std::invalid_argument("matrix is not skew-symmetric at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
        if (is_frozen(i) && is_frozen(j) && (*this)(i, j) != 0)
          throw std::invalid_argument("frozen-frozen entries must be zero");
      }
    }
  }

  std::size_t n_;
  std::size_t frozen_;
  std::vector<BigInt> b_;
};

/// Mutable vertex reached from vertex 1 after `steps` cyclic steps: ((steps) mod n) + 1.
inline std::size_t cyclic_vertex(std::int64_t steps, std::size_t n) {
  auto nn = static_cast<std::int64_t>(n);
  return static_cast<std::size_t>(((steps % nn) + nn) % nn) + 1;
}

inline ExchangeMatrix mutate(const ExchangeMatrix& b, std::size_t k) {
  if (k < 1 || k > b.size()) throw std::out_of_range("mutation vertex out of range");
  if (b.is_frozen(k)) throw std::invalid_argument("cannot mutate at a frozen vertex");
  const std::size_t s = b.size();
  std::vector<std::vector<BigInt>> r = b.rows();
  for (std::size_t i = 1; i <= s; ++i) {
    for (std::size_t j = 1; j <= s; ++j) {
      BigInt& e = r[i - 1][j - 1];
      if (i == k || j == k) {
        e = -b(i, j);
        continue;
      }
      if (b.is_frozen(i) && b.is_frozen(j)) {
        e = 0;
        continue;
      }
      const BigInt& u = b(i, k);
      const BigInt& v = b(k, j);
      int su = sgn(u), sv = sgn(v);
      if (su != 0 && su == sv) e += su > 0 ? BigInt(u * v) : BigInt(-(u * v));
    }
  }
  return ExchangeMatrix::from_rows(b.n(), b.frozen(), r);
}

/// rho^p B rho^-p: mutable vertex i is relabelled i+p (cyclically); frozen vertices stay put.
inline ExchangeMatrix conjugate_rho(const ExchangeMatrix& b, std::int64_t power) {
  const std::size_t n = b.n(), s = b.size();
  auto pi = [&](std::size_t v) { return v > n ? v : cyclic_vertex(static_cast<std::int64_t>(v) - 1 + power, n); };
  std::vector<std::vector<BigInt>> r(s, std::vector<BigInt>(s));
  for (std::size_t i = 1; i <= s; ++i)
    for (std::size_t j = 1; j <= s; ++j) r[pi(i) - 1][pi(j) - 1] = b(i, j);
  return ExchangeMatrix::from_rows(n, b.frozen(), r);
}

/// tau^p B tau^-p for the skew-rotation tau e_j = e_{j+1} (j<n), tau e_n = -e_1.
inline ExchangeMatrix conjugate_tau(const ExchangeMatrix& b, std::int64_t power) {
  if (b.frozen() != 0) throw std::invalid_argument("tau conjugation requires no frozen vertices");
  const std::size_t n = b.n();
  const auto order = static_cast<std::int64_t>(2 * n);
  std::int64_t p = ((power % order) + order) % order;
  std::vector<std::vector<BigInt>> cur = b.rows(), next(n, std::vector<BigInt>(n));
  for (std::int64_t step = 0; step < p; ++step) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        int sign_ij = ((i == n - 1) != (j == n - 1)) ? -1 : 1;
        BigInt v = cur[i][j];
        if (sign_ij < 0) v = -v;
        next[(i + 1) % n][(j + 1) % n] = v;
      }
    }
    std::swap(cur, next);
  }
  return ExchangeMatrix::from_rows(n, 0, cur);
}

/// Reverses the vertex order 1..n.
inline ExchangeMatrix conjugate_iota(const ExchangeMatrix& b) {
  if (b.frozen() != 0) throw std::invalid_argument("iota conjugation requires no frozen vertices");
  const std::size_t n = b.n();
  std::vector<std::vector<BigInt>> r(n, std::vector<BigInt>(n));
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) r[n - i][n - j] = b(i, j);
  return ExchangeMatrix::from_rows(n, 0, r);
}

inline ExchangeMatrix opposite(const ExchangeMatrix& b) { return -b; }

/// No arrows leave k: every b_ik >= 0.
inline bool is_sink(const ExchangeMatrix& b, std::size_t k) {
  for (std::size_t i = 1; i <= b.size(); ++i)
    if (b(i, k) < 0) return false;
  return true;
}

/// No arrows enter k: every b_ik <= 0.
inline bool is_source(const ExchangeMatrix& b, std::size_t k) {
  for (std::size_t i = 1; i <= b.size(); ++i)
    if (b(i, k) > 0) return false;
  return true;
}

/// Places the mutable block of `small` on vertices offset+1..offset+small.n() of an n-vertex zero matrix.
inline ExchangeMatrix embed(const ExchangeMatrix& small, std::size_t offset, std::size_t n) {
  if (small.frozen() != 0) throw std::invalid_argument("embed expects no frozen vertices");
  if (offset + small.n() > n) throw std::invalid_argument("embedding does not fit");
  ExchangeMatrix m(n, 0);
  for (std::size_t i = 1; i <= small.n(); ++i)
    for (std::size_t j = i + 1; j <= small.n(); ++j) m.set(offset + i, offset + j, small(i, j));
  return m;
}

}  // namespace qperiod
