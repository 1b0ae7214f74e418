#pragma once

// Period-one ice quivers: frozen coefficient rows on a period-one quiver.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperiod/exact.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/quiver.hpp"
#include "qperiod/recurrence.hpp"

namespace qperiod {

/// Row (s*l,...,s*l, 0,...,0, -s*l,...,-s*l) with t leading and t trailing entries.
struct IceRowSpec {
  std::size_t t = 1;
  BigInt l{1};
  int sign = 1;

  std::vector<BigInt> row(std::size_t N) const {
    if (t < 1 || 2 * t > N) throw std::invalid_argument("ice row needs 1 <= t <= N/2");
    std::vector<BigInt> r(N, BigInt(0));
    const BigInt v = sign * l;
    for (std::size_t j = 0; j < t; ++j) {
      r[j] = v;
      r[N - 1 - j] = -v;
    }
    return r;
  }

  friend bool operator==(const IceRowSpec&, const IceRowSpec&) = default;
};

/// Whether weights w = (m_1..m_{N-1}) admit shape (t, sign): s*m_t = -1 (or -2
/// when 2t = N), and s*m_j >= 0 off {t, N-t}.
inline bool ice_shape_admissible(const std::vector<BigInt>& w, std::size_t t, int sign) {
  const std::size_t N = w.size() + 1;
  if (t < 1 || 2 * t > N) return false;
  const BigInt need = 2 * t == N ? -2 : -1;
  if (sign * w[t - 1] != need) return false;
  for (std::size_t j = 1; j < N; ++j)
    if (j != t && j != N - t && sign * w[j - 1] < 0) return false;
  return true;
}

/// Every admissible row shape with magnitude 1..l_max.
inline std::vector<IceRowSpec> ice_rows_enumerate(const std::vector<BigInt>& w, long l_max) {
  require_palindrome(w);
  std::vector<IceRowSpec> out;
  const std::size_t N = w.size() + 1;
  for (std::size_t t = 1; 2 * t <= N; ++t)
    for (int sign : {1, -1})
      if (ice_shape_admissible(w, t, sign))
        for (long l = 1; l <= l_max; ++l) out.push_back(IceRowSpec{t, BigInt(l), sign});
  return out;
}

/// Rows solving mu_1 B = rho B rho^-1 read straight off the mutation rule: the
/// row is forced by its first entry; returns it when consistent.
inline std::optional<std::vector<BigInt>> ice_row_from_first_entry(const ExchangeMatrix& base, const BigInt& b1) {
  const std::size_t N = base.n();
  std::vector<BigInt> r(N);
  r[N - 1] = -b1;
  for (std::size_t j = N; j >= 2; --j) {
    const BigInt& c = base(1, j);
    // mutated entry r_j + (|b1| c + b1 |c|)/2 must equal r_{j-1}
    r[j - 2] = r[j - 1] + BigInt((abs(b1) * c + b1 * abs(c)) / 2);
  }
  if (r[0] != b1) return std::nullopt;
  return r;
}

struct IceVerdict {
  bool valid = true;
  std::optional<std::size_t> row;  // 1-based frozen-row index of the first violation
  std::string reason;
};

namespace detail {

/// Structural explanation for why a single frozen row fails, or nullopt when the
/// row has an admissible shape.
inline std::optional<std::string> ice_structure_problem(const std::vector<BigInt>& w,
                                                        const std::vector<BigInt>& row) {
  const std::size_t N = row.size();
  bool zero = true;
  for (const auto& v : row) zero = zero && v == 0;
  if (zero) return std::nullopt;
  if (row[0] == 0) return "a nonzero frozen row must have a nonzero first entry";
  const int s = sgn(row[0]);
  const BigInt l = abs(row[0]);
  std::size_t t = 0;
  while (t < N && row[t] == row[0]) ++t;
  if (2 * t > N) return "frozen row is not of the form (l,..,l,0,..,0,-l,..,-l)";
  if (row != IceRowSpec{t, l, s}.row(N)) return "frozen row is not of the form (l,..,l,0,..,0,-l,..,-l)";
  if (!ice_shape_admissible(w, t, s)) {
    const int need = s * (2 * t == N ? -2 : -1);
    return "row with t=" + std::to_string(t) + " needs m_" + std::to_string(t) + " = " + std::to_string(need) +
           " and every other weight " + (s > 0 ? "nonnegative" : "nonpositive");
  }
  return std::nullopt;
}

}  // namespace detail

/// Checks mu_1 B = rho B rho^-1 on the full matrix, then cross-checks each
/// frozen row against the structural characterisation. A disagreement between
/// the two is a logic_error.
inline IceVerdict ice_period1_check(const ExchangeMatrix& b) {
  IceVerdict v;
  const auto mb = b.mutable_block();
  if (b.n() < 2 || !has_period(mb, 1)) {
    v.valid = false;
    v.reason = "mutable part is not period one";
    return v;
  }
  const auto w = [&] {
    std::vector<BigInt> m;
    for (std::size_t j = 2; j <= b.n(); ++j) m.push_back(b(j, 1));
    return m;
  }();
  const auto lhs = mutate(b, 1), rhs = conjugate_rho(b, 1);
  for (std::size_t i = 1; i <= b.frozen(); ++i) {
    const std::size_t r = b.n() + i;
    bool ok = true;
    std::vector<BigInt> row;
    for (std::size_t j = 1; j <= b.n(); ++j) {
      ok = ok && lhs(r, j) == rhs(r, j);
      row.push_back(b(r, j));
    }
    auto problem = detail::ice_structure_problem(w, row);
    if (ok != !problem.has_value())
      throw std::logic_error("ice characterisation disagrees with the defining equation at frozen row " +
                             std::to_string(i));
    if (!ok && v.valid) {
      v.valid = false;
      v.row = i;
      v.reason = *problem;
    }
  }
  return v;
}

inline ExchangeMatrix attach_ice_rows(const ExchangeMatrix& base, const std::vector<IceRowSpec>& specs) {
  std::vector<std::vector<BigInt>> rows;
  for (const auto& s : specs) rows.push_back(s.row(base.n()));
  return base.with_frozen_rows(rows);
}

/// Coefficient recurrence of a valid period-one ice quiver.
inline Recurrence parameterized_recurrence(const ExchangeMatrix& b) {
  auto v = ice_period1_check(b);
  if (!v.valid)
    throw DomainError("invalid ice quiver" + (v.row ? " at frozen row " + std::to_string(*v.row) : "") + ": " +
                      v.reason);
  return recurrence_from_period1(b);
}

// ---------------------------------------------------------------------------
// Named parameterized quivers

/// Weights m_r = m_{N-r} = 1, m_s = m_{N-s} = -1, doubled in the middle.
inline std::vector<BigInt> gale_robinson_weights(std::size_t N, std::size_t r, std::size_t s) {
  if (N < 2 || r < 1 || s < 1 || 2 * r > N || 2 * s > N || r == s)
    throw std::invalid_argument("Gale-Robinson needs distinct 1 <= r, s <= N/2");
  std::vector<BigInt> w(N - 1, BigInt(0));
  w[r - 1] += 1;
  w[N - r - 1] += 1;
  w[s - 1] -= 1;
  w[N - s - 1] -= 1;
  return w;
}

inline ExchangeMatrix gale_robinson(std::size_t N, std::size_t r, std::size_t s) {
  return period1_from_weights(gale_robinson_weights(N, r, s));
}

/// Gale-Robinson with one parameter on each monomial.
inline ExchangeMatrix gale_robinson_ice(std::size_t N, std::size_t r, std::size_t s) {
  return attach_ice_rows(gale_robinson(N, r, s), {IceRowSpec{s, BigInt(1), 1}, IceRowSpec{r, BigInt(1), -1}});
}

inline ExchangeMatrix somos4_ice() { return gale_robinson_ice(4, 1, 2); }

inline ExchangeMatrix dana_scott() { return period1_from_weights({1, -1, 1}); }

inline ExchangeMatrix dana_scott_ice() { return attach_ice_rows(dana_scott(), {IceRowSpec{1, BigInt(1), -1}}); }

}  // namespace qperiod
