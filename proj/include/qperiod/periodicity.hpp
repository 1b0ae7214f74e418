#pragma once

// Construction, detection and classification of mutation-periodic quivers.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qperiod/exact.hpp"
#include "qperiod/quiver.hpp"

namespace qperiod {

class NotPeriodOne : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotSinkType : public DomainError {
 public:
  using DomainError::DomainError;
};

/// (x|y| - y|x|)/2.
inline BigInt epsilon(const BigInt& x, const BigInt& y) {
  int sx = sgn(x), sy = sgn(y);
  if (sx == 0 || sy == 0 || sx == sy) return BigInt(0);
  return sx > 0 ? BigInt(x * abs(y)) : BigInt(-(abs(x) * y));
}

inline std::int64_t epsilon(std::int64_t x, std::int64_t y) {
  return to_int64(epsilon(big(x), big(y)));
}

// ---------------------------------------------------------------------------
// Primitives

struct PrimitiveId {
  std::size_t N = 0;
  std::size_t m = 1;  // period
  std::size_t k = 1;
  std::size_t j = 1;  // copy index

  friend bool operator==(const PrimitiveId&, const PrimitiveId&) = default;
  friend auto operator<=>(const PrimitiveId&, const PrimitiveId&) = default;

  /// "B4(1)" for period one, "B6,2(1,2)" otherwise.
  std::string label() const {
    if (m == 1) return "B" + std::to_string(N) + "(" + std::to_string(k) + ")";
    return "B" + std::to_string(N) + "," + std::to_string(m) + "(" + std::to_string(k) + "," +
           std::to_string(j) + ")";
  }
};

/// Empty string when valid, otherwise the reason.
inline std::string primitive_id_problem(const PrimitiveId& id) {
  if (id.N < 2) return "N must be at least 2";
  if (id.m < 1 || id.N % id.m != 0) return "period m must divide N";
  if (id.k < 1 || 2 * id.k > id.N) return "k must lie in 1..floor(N/2)";
  if (id.j < 1 || id.j > id.m) return "copy index j must lie in 1..m";
  if (2 * id.k == id.N && id.N % (2 * id.m) != 0) return "k = N/2 requires 2m | N";
  return {};
}

/// The single arrow N-k+1 -> 1.
inline ExchangeMatrix primitive_seed(std::size_t N, std::size_t k) {
  ExchangeMatrix r(N, 0);
  r.set(N - k + 1, 1, BigInt(1));
  return r;
}

inline ExchangeMatrix primitive(const PrimitiveId& id) {
  if (auto why = primitive_id_problem(id); !why.empty())
    throw std::invalid_argument("invalid primitive " + id.label() + ": " + why);
  const ExchangeMatrix seed = primitive_seed(id.N, id.k);
  const std::size_t orbit = 2 * id.k < id.N ? id.N : id.N / 2;
  ExchangeMatrix sum(id.N, 0);
  for (std::size_t i = 0; i < orbit / id.m; ++i)
    sum += conjugate_tau(seed, static_cast<std::int64_t>(id.m * i));
  return conjugate_tau(sum, static_cast<std::int64_t>(id.j - 1));
}

inline ExchangeMatrix primitive(std::size_t N, std::size_t m, std::size_t k, std::size_t j = 1) {
  return primitive(PrimitiveId{N, m, k, j});
}

/// Every valid primitive with N nodes and period m.
inline std::vector<PrimitiveId> primitive_family(std::size_t N, std::size_t m) {
  std::vector<PrimitiveId> out;
  for (std::size_t k = 1; 2 * k <= N; ++k)
    for (std::size_t j = 1; j <= m; ++j)
      if (PrimitiveId id{N, m, k, j}; primitive_id_problem(id).empty()) out.push_back(id);
  return out;
}

// ---------------------------------------------------------------------------
// Period detection

/// mu_m o ... o mu_1 (B) == rho^m B rho^-m, with mutation vertices taken cyclically.
inline bool has_period(const ExchangeMatrix& b, std::size_t m) {
  ExchangeMatrix cur = b;
  for (std::size_t step = 0; step < m; ++step)
    cur = mutate(cur, cyclic_vertex(static_cast<std::int64_t>(step), b.n()));
  return cur == conjugate_rho(b, static_cast<std::int64_t>(m));
}

/// Smallest period m <= max_m (default 2n), if any.
inline std::optional<std::size_t> detect_period(const ExchangeMatrix& b, std::size_t max_m = 0) {
  if (max_m == 0) max_m = 2 * b.n();
  ExchangeMatrix cur = b;
  for (std::size_t m = 1; m <= max_m; ++m) {
    cur = mutate(cur, cyclic_vertex(static_cast<std::int64_t>(m - 1), b.n()));
    if (cur == conjugate_rho(b, static_cast<std::int64_t>(m))) return m;
  }
  return std::nullopt;
}

/// Q(1), ..., Q(count): Q(i+1) = mu_i Q(i).
inline std::vector<ExchangeMatrix> mutation_chain(const ExchangeMatrix& b, std::size_t count) {
  std::vector<ExchangeMatrix> chain{b};
  while (chain.size() < count)
    chain.push_back(mutate(chain.back(), cyclic_vertex(static_cast<std::int64_t>(chain.size() - 1), b.n())));
  return chain;
}

// ---------------------------------------------------------------------------
// General period-one solution

inline void require_palindrome(const std::vector<BigInt>& w) {
  for (std::size_t r = 0; r < w.size(); ++r)
    if (w[r] != w[w.size() - 1 - r])
      throw std::invalid_argument("period-one weights must be palindromic (m_r = m_{N-r})");
}

/// Weights m_1..m_{N-1}; b_{i1} = m_{i-1} and
/// b_ij = m_{i-j} + sum_{s=1}^{j-1} eps(m_s, m_{i-j+s}) below the diagonal.
inline ExchangeMatrix period1_from_weights(const std::vector<BigInt>& w) {
  require_palindrome(w);
  const std::size_t N = w.size() + 1;
  auto m = [&](std::size_t i) -> const BigInt& { return w[i - 1]; };
  ExchangeMatrix b(N, 0);
  for (std::size_t j = 1; j < N; ++j) {
    for (std::size_t i = j + 1; i <= N; ++i) {
      BigInt v = m(i - j);
      for (std::size_t s = 1; s < j; ++s) v += epsilon(m(s), m(i - j + s));
      b.set(i, j, v);
    }
  }
  return b;
}

inline ExchangeMatrix period1_from_weights(std::initializer_list<long> w) {
  std::vector<BigInt> v;
  for (long x : w) v.emplace_back(x);
  return period1_from_weights(v);
}

/// levels[0] holds m_1..m_r (r = floor(N/2)) on B_N^(1..r); levels[k] holds
/// eps(m_k, m_{k+1})..eps(m_k, m_r) on B_{N-2k}^(1..r-k), placed on vertices k+1..N-k.
struct Period1Decomposition {
  std::size_t N = 0;
  std::vector<std::vector<BigInt>> levels;

  ExchangeMatrix reconstruct() const {
    ExchangeMatrix b(N, 0);
    for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
      const std::size_t sub = N - 2 * lvl;
      for (std::size_t i = 0; i < levels[lvl].size(); ++i) {
        if (levels[lvl][i] == 0) continue;
        b += embed(levels[lvl][i] * primitive(sub, 1, i + 1), lvl, N);
      }
    }
    return b;
  }

  /// e.g. "B4(1):1 B4(2):-2 | B2(1):2"; zero coefficients and empty levels are omitted.
  std::string to_string() const {
    std::vector<std::string> parts;
    for (std::size_t lvl = 0; lvl < levels.size(); ++lvl) {
      std::string s;
      for (std::size_t i = 0; i < levels[lvl].size(); ++i) {
        if (levels[lvl][i] == 0) continue;
        if (!s.empty()) s += ' ';
        s += PrimitiveId{N - 2 * lvl, 1, i + 1, 1}.label() + ":" + levels[lvl][i].get_str();
      }
      if (!s.empty()) parts.push_back(s);
    }
    if (parts.empty()) return "0";
    std::string out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) out += " | " + parts[i];
    return out;
  }
};

inline Period1Decomposition decompose_period1(const ExchangeMatrix& b) {
  if (b.frozen() != 0) throw std::invalid_argument("decomposition expects no frozen vertices");
  const std::size_t N = b.n();
  Period1Decomposition d;
  d.N = N;
  if (N < 2) {
    if (!b.is_zero()) throw NotPeriodOne("matrix is not period one");
    return d;
  }
  const std::size_t r = N / 2;
  std::vector<BigInt> m(N);  // m[1..N-1]
  for (std::size_t i = 1; i < N; ++i) m[i] = b(i + 1, 1);
  d.levels.emplace_back(m.begin() + 1, m.begin() + 1 + static_cast<std::ptrdiff_t>(r));
  for (std::size_t k = 1; k + 1 <= r; ++k) {
    std::vector<BigInt> level;
    for (std::size_t i = k + 1; i <= r; ++i) level.push_back(epsilon(m[k], m[i]));
    d.levels.push_back(std::move(level));
  }
  if (d.reconstruct() != b) throw NotPeriodOne("matrix is not a period-one quiver");
  return d;
}

// ---------------------------------------------------------------------------
// Period-two families

struct Period2Pair {
  ExchangeMatrix b1;
  ExchangeMatrix b2;
  bool strict = true;  // false when the pair degenerates to period one
};

/// Four nodes, m1 > 0, m2 < 0, m3 >= 0; strict iff m1 != m3.
inline Period2Pair period2_four_node(long m1, long m2, long m3) {
  if (!(m1 > 0 && m2 < 0 && m3 >= 0))
    throw std::invalid_argument("four-node family needs m1 > 0, m2 < 0, m3 >= 0");
  const long p = m1 * m2 - m3, q = m2 * m3 - m1;
  Period2Pair out{
      ExchangeMatrix::from_rows({{0, -m1, -m2, -m3}, {m1, 0, p, -m2}, {m2, -p, 0, -m1}, {m3, m2, m1, 0}}),
      ExchangeMatrix::from_rows({{0, m1, m2, m3}, {-m1, 0, -m3, -m2}, {-m2, m3, 0, q}, {-m3, m2, -q, 0}}),
      m1 != m3};
  return out;
}

enum class FiveNodeCase { PP, PNP, PNN };

/// PP: (m1, m4) with m1, m4 > 0, m1 != m4.
/// PNP: (m1) with m1 > 0.
/// PNN: (m1, m2) with m2 <= -2 and m1^2 (m2+1) > m2, so that m4 = m1(m2+1) < 0 and
/// m3 = m2 - m1 m4 < 0. B2 is computed by mutation.
inline Period2Pair period2_five_node(FiveNodeCase c, const std::vector<long>& params) {
  switch (c) {
    case FiveNodeCase::PP: {
      if (params.size() != 2) throw std::invalid_argument("PP case takes (m1, m4)");
      const long a = params[0], d = params[1];
      if (!(a > 0 && d > 0 && a != d)) throw std::invalid_argument("PP case needs m1, m4 > 0 and m1 != m4");
      return {ExchangeMatrix::from_rows({{0, -a, 1, 1, -d},
                                         {a, 0, -a - d, 1 - a, 1},
                                         {-1, a + d, 0, -a - d, 1},
                                         {-1, a - 1, a + d, 0, -a},
                                         {d, -1, -1, a, 0}}),
              ExchangeMatrix::from_rows({{0, a, -1, -1, d},
                                         {-a, 0, -d, 1, 1},
                                         {1, d, 0, -a - d, 1 - d},
                                         {1, -1, a + d, 0, -a - d},
                                         {-d, -1, d - 1, a + d, 0}}),
              true};
    }
    case FiveNodeCase::PNP: {
      if (params.size() != 1) throw std::invalid_argument("PNP case takes (m1)");
      const long a = params[0];
      if (a <= 0) throw std::invalid_argument("PNP case needs m1 > 0");
      return {ExchangeMatrix::from_rows({{0, -a, -1, -a - 1, 1},
                                         {a, 0, 1, -a - 1, -a - 1},
                                         {1, -1, 0, 1, -1},
                                         {a + 1, a + 1, -1, 0, -a},
                                         {-1, a + 1, 1, a, 0}}),
              ExchangeMatrix::from_rows({{0, a, 1, a + 1, -1},
                                         {-a, 0, 1, -a - 1, -1},
                                         {-1, -1, 0, 1, 0},
                                         {-a - 1, a + 1, -1, 0, 1},
                                         {1, 1, 0, -1, 0}}),
              true};
    }
    case FiveNodeCase::PNN: {
      if (params.size() != 2) throw std::invalid_argument("PNN case takes (m1, m2)");
      const long a = params[0], m2 = params[1];
      if (!(a > 0 && m2 <= -2 && a * a * (m2 + 1) > m2))
        throw std::invalid_argument("PNN case needs m1 > 0, m2 <= -2 and m1^2 < m2/(m2+1)");
      const long m4 = a * (m2 + 1), m3 = m2 - a * m4;
      auto b1 = ExchangeMatrix::from_rows({{0, -a, -m2, -m3, -m4},
                                           {a, 0, -a, m3 * (a - 1), -m3},
                                           {m2, a, 0, -a, -m2},
                                           {m3, -m3 * (a - 1), a, 0, -a},
                                           {m4, m3, m2, a, 0}});
      return {b1, mutate(b1, 1), true};
    }
  }
  throw std::invalid_argument("unknown five-node case");
}

/// Integer points (m1, m2, m4) in the box |m_i| <= bound with m1 > 0, m4 < 0,
/// m2 < 0, m2 - m1 m4 > 0 and (m2 - m1 m4)(m2 + m4) + m1(m2 + 1) - m4 = 0.
/// Only the box is searched; an empty result says nothing beyond it.
inline std::vector<std::array<long, 3>> pnn_positive_discriminant_search(long bound) {
  std::vector<std::array<long, 3>> hits;
  for (long m1 = 1; m1 <= bound; ++m1)
    for (long m2 = -bound; m2 < 0; ++m2)
      for (long m4 = -bound; m4 < 0; ++m4) {
        const long d = m2 - m1 * m4;
        if (d > 0 && d * (m2 + m4) + m1 * (m2 + 1) - m4 == 0) hits.push_back({m1, m2, m4});
      }
  return hits;
}

/// The three-cycle of double arrows.
inline ExchangeMatrix three_cycle_double() {
  return ExchangeMatrix::from_rows({{0, -2, 2}, {2, 0, -2}, {-2, 2, 0}});
}

/// Weights m = (m_1, m_2, ..., m_{N-2}, mbar_1); sigma swaps the first and last.
struct SigmaFamilySpec {
  std::vector<BigInt> m;

  std::size_t N() const { return m.size() + 1; }

  static SigmaFamilySpec from(std::initializer_list<long> w) {
    SigmaFamilySpec s;
    for (long x : w) s.m.emplace_back(x);
    return s;
  }

  std::string problem() const {
    const std::size_t n = N();
    if (n < 4) return "sigma family needs N >= 4";
    if (m.front() < 0 || m.back() < 0) return "m_1 and mbar_1 must be nonnegative";
    if (m.front() == m.back()) return "m_1 must differ from mbar_1";
    for (std::size_t r = 2; r <= n - 2; ++r) {
      if (m[r - 1] != m[n - r - 1]) return "interior weights must satisfy m_r = m_{N-r}";
      if (r % 2 == 1 && r + 3 <= n && m[r - 1] < 0)
        return "m_r must be nonnegative for odd r with 3 <= r <= N-3";
    }
    if (n % 2 == 1 && m[1] != -1) return "odd N requires m_2 = -1";
    return {};
  }
};

struct SigmaPair {
  ExchangeMatrix b;        // B(m)
  ExchangeMatrix b_sigma;  // B(sigma m)
};

/// Builds B(m) and B(sigma m) together from b_ij = sigma(b_{i-1,j-1}) + eps(m_{j-1}, m_{i-1}),
/// then checks mu_1 B(m) = rho B(sigma m) rho^-1.
inline SigmaPair period2_sigma_family(const SigmaFamilySpec& spec) {
  if (auto why = spec.problem(); !why.empty()) throw std::invalid_argument(why);
  const std::size_t N = spec.N();
  std::vector<BigInt> w = spec.m, ws = spec.m;
  std::swap(ws.front(), ws.back());
  ExchangeMatrix a(N, 0), as(N, 0);
  for (std::size_t i = 2; i <= N; ++i) {
    a.set(i, 1, w[i - 2]);
    as.set(i, 1, ws[i - 2]);
  }
  for (std::size_t j = 2; j < N; ++j) {
    for (std::size_t i = j + 1; i <= N; ++i) {
      BigInt v = as(i - 1, j - 1) + epsilon(w[j - 2], w[i - 2]);
      BigInt vs = a(i - 1, j - 1) + epsilon(ws[j - 2], ws[i - 2]);
      a.set(i, j, v);
      as.set(i, j, vs);
    }
  }
  if (mutate(a, 1) != conjugate_rho(as, 1))
    throw DomainError("sigma-family construction failed its defining identity");
  return {a, as};
}

// ---------------------------------------------------------------------------
// Sink-type classification

struct SinkTerm {
  PrimitiveId id;
  BigInt coeff;
};

struct SinkTypeDecomposition {
  std::size_t N = 0;
  std::size_t m = 1;
  std::vector<SinkTerm> terms;  // every family member, zeros included
  bool degenerate = false;      // coefficients equal across copies: not strictly period m

  std::string to_string() const {
    std::string s;
    for (const auto& t : terms) {
      if (t.coeff == 0) continue;
      if (!s.empty()) s += ' ';
      s += t.id.label() + ":" + t.coeff.get_str();
    }
    return s.empty() ? "0" : s;
  }
};

/// The period-m sink-type basis: B_{N,m}^(k,j), with the k = N/2 copies taken
/// at period m/2 when 2m does not divide N.
inline std::vector<PrimitiveId> sink_type_family(std::size_t N, std::size_t m) {
  if (m < 1 || N % m != 0) throw NotSinkType("no strictly period-m sink-type quivers: m does not divide N");
  std::vector<PrimitiveId> out;
  for (std::size_t k = 1; 2 * k <= N; ++k) {
    if (2 * k == N && N % (2 * m) != 0) {
      for (std::size_t j = 1; j <= m / 2; ++j) out.push_back({N, m / 2, k, j});
    } else {
      for (std::size_t j = 1; j <= m; ++j) out.push_back({N, m, k, j});
    }
  }
  return out;
}

inline SinkTypeDecomposition sink_type_decompose(const ExchangeMatrix& b, std::size_t m) {
  if (b.frozen() != 0) throw std::invalid_argument("sink-type classification expects no frozen vertices");
  if (m < 1) throw std::invalid_argument("period must be at least 1");
  const std::size_t N = b.n();
  SinkTypeDecomposition d;
  d.N = N;
  d.m = m;
  ExchangeMatrix residual = b;
  for (const auto& id : sink_type_family(N, m)) {
    const ExchangeMatrix p = primitive(id);
    BigInt coeff;
    bool found = false;
    for (std::size_t j = 1; j <= N && !found; ++j)
      for (std::size_t i = j + 1; i <= N && !found; ++i)
        if (p(i, j) != 0) {
          if (!mpz_divisible_p(b(i, j).get_mpz_t(), p(i, j).get_mpz_t()))
            throw NotSinkType("entry not a multiple of " + id.label());
          coeff = b(i, j) / p(i, j);
          found = true;
        }
    if (coeff < 0) throw NotSinkType("negative coefficient on " + id.label());
    residual = residual - coeff * p;
    d.terms.push_back({id, coeff});
  }
  if (!residual.is_zero()) throw NotSinkType("matrix is not a combination of period-" + std::to_string(m) + " primitives");
  auto chain = mutation_chain(b, m);
  for (std::size_t i = 1; i <= m; ++i)
    if (!is_sink(chain[i - 1], cyclic_vertex(static_cast<std::int64_t>(i) - 1, N)))
      throw NotSinkType("node " + std::to_string(i) + " of Q(" + std::to_string(i) + ") is not a sink");
  if (!has_period(b, m)) throw NotSinkType("matrix does not have period " + std::to_string(m));

  std::map<std::size_t, std::vector<BigInt>> by_k;
  for (const auto& t : d.terms) {
    if (N % 2 == 0 && 2 * t.id.k == N && N % (2 * m) != 0) continue;
    by_k[t.id.k].push_back(t.coeff);
  }
  d.degenerate = m > 1;
  for (const auto& [k, cs] : by_k)
    for (const auto& c : cs)
      if (c != cs.front()) d.degenerate = false;
  return d;
}

/// Q(1) + rho^-1 Q(2) + ... + rho^{-m+1} Q(m) for a period-m sink-type quiver.
inline ExchangeMatrix fold_to_period1(const ExchangeMatrix& b, std::size_t m) {
  sink_type_decompose(b, m);
  auto chain = mutation_chain(b, m);
  ExchangeMatrix sum(b.n(), 0);
  for (std::size_t j = 0; j < m; ++j) sum += conjugate_rho(chain[j], -static_cast<std::int64_t>(j));
  return sum;
}

}  // namespace qperiod
