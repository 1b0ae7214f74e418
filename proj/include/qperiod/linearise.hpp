#pragma once

// First integrals, linearisation and Pell solutions for the primitive
// recurrences x_n x_{n+N} = x_{n+k} x_{n+N-k} + 1.

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qperiod/exact.hpp"
#include "qperiod/laurent.hpp"
#include "qperiod/quiver.hpp"
#include "qperiod/recurrence.hpp"

namespace qperiod {

/// c_1..c_{N-k}, extended periodically.
struct CValues {
  std::size_t N = 0;
  std::size_t k = 0;
  std::vector<BigRational> c;

  std::size_t period() const { return c.size(); }
  /// 1-based periodic access.
  const BigRational& at(std::size_t n) const { return c[(n - 1) % c.size()]; }
};

/// J_{n,k} = (x_n + x_{n+2k}) / x_{n+k} for n = 1..len-2k; 1-based result index n-1.
inline std::vector<BigRational> j_sequence(const std::vector<BigRational>& x, std::size_t k) {
  if (k < 1 || x.size() <= 2 * k) throw std::invalid_argument("run too short for J values");
  std::vector<BigRational> j;
  for (std::size_t n = 1; n + 2 * k <= x.size(); ++n) {
    const BigRational& den = x[n + k - 1];
    if (den == 0) throw DomainError("zero denominator x_" + std::to_string(n + k) + " in J");
    j.push_back((x[n - 1] + x[n + 2 * k - 1]) / den);
  }
  return j;
}

/// c_i = J_{i,k}; throws unless J has period N-k on the whole window.
inline CValues j_values(const std::vector<BigRational>& x, std::size_t N, std::size_t k) {
  if (k < 1 || 2 * k > N) throw std::invalid_argument("need 1 <= k <= N/2");
  if (x.size() < N + 2 * k) throw std::invalid_argument("run needs at least N+2k terms");
  auto j = j_sequence(x, k);
  const std::size_t p = N - k;
  for (std::size_t i = p; i < j.size(); ++i)
    if (j[i] != j[i - p])
      throw DomainError("J values are not periodic at n=" + std::to_string(i + 1) +
                        "; the run does not come from the primitive recurrence");
  return CValues{N, k, std::vector<BigRational>(j.begin(), j.begin() + static_cast<std::ptrdiff_t>(p))};
}

/// K_p^{(n)} = sum_{i<N-k} prod_{q<p} J_{n+i+q,k}.
inline BigRational first_integral_K(const std::vector<BigRational>& x, std::size_t N, std::size_t k,
                                    std::size_t p, std::size_t n) {
  if (k < 1 || 2 * k > N) throw std::invalid_argument("need 1 <= k <= N/2");
  if (p < 1 || p > N - k) throw std::invalid_argument("need 1 <= p <= N-k");
  if (n < 1) throw std::invalid_argument("n is 1-based");
  auto j = j_sequence(x, k);
  const std::size_t last = n + (N - k - 1) + (p - 1);  // largest J index used
  if (last > j.size()) throw std::invalid_argument("window too short for K_p at this n");
  BigRational sum(0);
  for (std::size_t i = 0; i < N - k; ++i) {
    BigRational alpha(1);
    for (std::size_t q = 0; q < p; ++q) alpha *= j[n + i + q - 1];
    sum += alpha;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Parity-restricted sums

enum class Parity { Odd, Even, Alt };

/// Ring traits so the same sums run on rationals and on symbolic c-variables.
template <class T>
struct RingOps {
  static T zero(const T&) { return T(0); }
  static T one(const T&) { return T(1); }
};

template <>
struct RingOps<LaurentPolynomial> {
  static LaurentPolynomial zero(const LaurentPolynomial& p) { return LaurentPolynomial(p.num_vars()); }
  static LaurentPolynomial one(const LaurentPolynomial& p) {
    return LaurentPolynomial::constant(p.num_vars(), BigInt(1));
  }
};

/// t^n_{k,parity} over c_1..c_n (c[0] = c_1): sums of c_{i_1}...c_{i_k} with
/// i_1 < ... < i_k <= n of alternating parity, i_1 odd (Odd), even (Even) or
/// either (Alt). t_{0,alt} = 2. Dynamic programme over (position, terms used).
template <class T>
T t_sum(const std::vector<T>& c, std::size_t n, std::size_t k, Parity parity) {
  if (c.empty()) throw std::invalid_argument("t-sum needs at least one c value");
  if (n > c.size()) throw std::invalid_argument("t-sum range exceeds c");
  if (parity == Parity::Alt) {
    if (k == 0) return RingOps<T>::one(c[0]) + RingOps<T>::one(c[0]);
    return t_sum(c, n, k, Parity::Odd) + t_sum(c, n, k, Parity::Even);
  }
  const std::size_t first = parity == Parity::Odd ? 1 : 0;  // parity of i_1
  std::vector<T> f(k + 1, RingOps<T>::zero(c[0]));
  f[0] = RingOps<T>::one(c[0]);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = k; j >= 1; --j)
      // position j needs parity first ^ (j-1)
      if (i % 2 == (first + j - 1) % 2) f[j] = f[j] + f[j - 1] * c[i - 1];
  return f[k];
}

/// S_{N,1} from c_1..c_{N-1} via the alternating-parity closed form.
template <class T>
T s_closed_form(const std::vector<T>& c) {
  const std::size_t N = c.size() + 1;
  if (N < 2) throw std::invalid_argument("S needs N >= 2");
  T s = RingOps<T>::zero(c[0]);
  if (N % 2 == 0) {
    const std::size_t r = N / 2;
    for (std::size_t q = 0; q < r; ++q) {
      T t = t_sum(c, 2 * r - 1, 2 * q + 1, Parity::Alt);
      s = q % 2 == 0 ? T(s + t) : T(s - t);
    }
    return (r - 1) % 2 == 0 ? s : T(-s);
  }
  const std::size_t r = (N + 1) / 2;
  for (std::size_t q = 0; q < r; ++q) {
    T t = t_sum(c, 2 * r - 2, 2 * q, Parity::Alt);
    s = q % 2 == 0 ? T(s + t) : T(s - t);
  }
  return (r - 1) % 2 == 0 ? s : T(-s);
}

/// Symbolic S_{N,1} as a polynomial in c_1..c_{N-1}.
inline LaurentPolynomial s_polynomial(std::size_t N) {
  if (N < 2) throw std::invalid_argument("S needs N >= 2");
  std::vector<LaurentPolynomial> c;
  for (std::size_t i = 0; i + 1 < N; ++i) c.push_back(LaurentPolynomial::variable(N - 1, i));
  return s_closed_form(c);
}

// ---------------------------------------------------------------------------
// a_n / b_n

struct ABSequences {
  std::size_t N = 0;
  std::vector<BigRational> a;  // a_0..a_{N-1}
  std::vector<BigRational> b;  // b_{N-1}..b_{2N-2}; b[i] = b_{N-1+i}

  const BigRational& b_at(std::size_t n) const { return b[n - (N - 1)]; }
  /// (-1)^{N-2} (a_{N-2} + c_{N-1} a_{N-1} + b_N); N >= 2.
  BigRational s_from_recursions(const CValues& c) const {
    BigRational s = a[N - 2] + c.at(N - 1) * a[N - 1] + b_at(N);
    return N % 2 == 0 ? s : BigRational(-s);
  }
};

/// Closed form of a_n from the parity-restricted sums over c_1..c_{n-1}.
inline BigRational a_closed_form(const CValues& c, std::size_t n) {
  if (n == 0) return BigRational(0);
  std::vector<BigRational> cv;
  for (std::size_t i = 1; i <= n; ++i) cv.push_back(c.at(i));
  BigRational s(0);
  if (n % 2 == 0) {
    const std::size_t r = n / 2;
    for (std::size_t q = 0; q < r; ++q) {
      auto t = t_sum(cv, 2 * r - 1, 2 * q + 1, Parity::Odd);
      s += q % 2 == 0 ? t : BigRational(-t);
    }
    return r % 2 == 0 ? s : BigRational(-s);
  }
  const std::size_t r = (n + 1) / 2;
  for (std::size_t q = 0; q < r; ++q) {
    auto t = t_sum(cv, 2 * r - 2, 2 * q, Parity::Odd);
    s += q % 2 == 0 ? t : BigRational(-t);
  }
  return (r - 1) % 2 == 0 ? s : BigRational(-s);
}

/// Both recursions, checked against the closed form, a_{N-1} = b_{N-1}, and
/// the S value of the two formulas. Throws std::logic_error on disagreement.
inline ABSequences a_b_sequences(const CValues& c) {
  if (c.k != 1) throw std::invalid_argument("a/b sequences need k = 1");
  const std::size_t N = c.N;
  if (N < 2) throw std::invalid_argument("a/b sequences need N >= 2");
  ABSequences ab;
  ab.N = N;
  ab.a.assign(N, BigRational(0));
  ab.a[1] = 1;
  for (std::size_t n = 2; n < N; ++n) ab.a[n] = -ab.a[n - 2] - c.at(n - 1) * ab.a[n - 1];
  ab.b.assign(N, BigRational(0));  // b_{N-1}..b_{2N-2}
  auto bref = [&](std::size_t n) -> BigRational& { return ab.b[n - (N - 1)]; };
  bref(2 * N - 3) = 1;
  for (std::size_t n = 2 * N - 3; n-- > N - 1;) bref(n) = -bref(n + 2) - c.at(n + 1) * bref(n + 1);
  for (std::size_t n = 0; n < N; ++n)
    if (a_closed_form(c, n) != ab.a[n])
      throw std::logic_error("a_" + std::to_string(n) + " closed form disagrees with its recursion");
  if (ab.a[N - 1] != ab.b_at(N - 1)) throw std::logic_error("a_{N-1} != b_{N-1}");
  std::vector<BigRational> cv;
  for (std::size_t i = 1; i < N; ++i) cv.push_back(c.at(i));
  if (ab.s_from_recursions(c) != s_closed_form(cv))
    throw std::logic_error("S from the recursions disagrees with the closed form");
  return ab;
}

/// d_j = c_{((j-1)k mod (N-k)) + 1} for j = 1..N-k; requires gcd(N,k) = 1.
inline std::vector<BigRational> reduce_c(const CValues& c) {
  if (std::gcd(c.N, c.k) != 1) throw std::invalid_argument("k-reduction needs gcd(N,k) = 1");
  const std::size_t p = c.N - c.k;
  std::vector<BigRational> d;
  std::vector<bool> seen(p, false);
  for (std::size_t j = 1; j <= p; ++j) {
    std::size_t idx = ((j - 1) * c.k) % p;
    if (seen[idx]) throw std::logic_error("k-reduction does not visit every c value");
    seen[idx] = true;
    d.push_back(c.c[idx]);
  }
  return d;
}

/// S_{N,k}: the closed form directly for k = 1, else S_{N-k+1,1}(d).
inline BigRational s_coefficient(const CValues& c) {
  if (c.c.size() != c.N - c.k) throw std::invalid_argument("c must have N-k entries");
  if (c.k == 1) return s_closed_form(c.c);
  return s_closed_form(reduce_c(c));
}

// ---------------------------------------------------------------------------
// Linear relation

struct LinearisationCertificate {
  std::size_t N = 0;
  std::size_t k = 0;
  std::optional<CValues> c;          // absent when the run decouples
  std::optional<BigRational> S;
  std::size_t window_begin = 0;      // verified n range, inclusive, 1-based
  std::size_t window_end = 0;
  std::vector<LinearisationCertificate> subsystems;  // gcd(N,k) copies, indexed by residue
};

namespace detail {

inline LinearisationCertificate coprime_certificate(const std::vector<BigRational>& x, std::size_t N,
                                                    std::size_t k, std::size_t window) {
  const std::size_t gap = k * (N - k);
  if (x.size() < window + 2 * gap || x.size() < N + 2 * k)
    throw std::invalid_argument("run too short for the requested window");
  LinearisationCertificate cert;
  cert.N = N;
  cert.k = k;
  cert.c = j_values(x, N, k);
  cert.S = s_coefficient(*cert.c);
  cert.window_begin = 1;
  cert.window_end = window;
  for (std::size_t n = 1; n <= window; ++n)
    if (x[n - 1] + x[n + 2 * gap - 1] != *cert.S * x[n + gap - 1])
      throw DomainError("linear relation fails at n=" + std::to_string(n));
  return cert;
}

}  // namespace detail

/// Verifies x_n + x_{n+2k(N-k)} = S x_{n+k(N-k)} for n = 1..window. When
/// gcd(N,k) = g > 1 the run is split into its g residue classes first.
inline LinearisationCertificate linear_relation_check(const std::vector<BigRational>& x, std::size_t N,
                                                      std::size_t k, std::size_t window = 20) {
  if (k < 1 || 2 * k > N) throw std::invalid_argument("need 1 <= k <= N/2");
  if (window < 1) throw std::invalid_argument("window must be positive");
  const std::size_t g = std::gcd(N, k);
  if (g == 1) return detail::coprime_certificate(x, N, k, window);
  LinearisationCertificate cert;
  cert.N = N;
  cert.k = k;
  cert.window_begin = 1;
  cert.window_end = window;
  for (std::size_t r = 0; r < g; ++r) {
    std::vector<BigRational> y;
    for (std::size_t i = r; i < x.size(); i += g) y.push_back(x[i]);
    cert.subsystems.push_back(detail::coprime_certificate(y, N / g, k / g, window));
  }
  return cert;
}

/// Run length that covers a window for linear_relation_check.
inline std::size_t linearisation_run_length(std::size_t N, std::size_t k, std::size_t window) {
  const std::size_t g = std::gcd(N, k), n = N / g, kk = k / g;
  return g * (window + 2 * kk * (n - kk) + n + 2 * kk);
}

// ---------------------------------------------------------------------------
// Pell

struct PellWitness {
  std::size_t N = 0;
  bool odd = false;
  std::size_t r = 0;
  BigInt D;
  BigInt target;
  std::pair<BigInt, BigInt> seed;               // m = 0
  std::vector<std::pair<BigInt, BigInt>> pairs;  // m = 1..count
};

/// Pell pairs read off the ones-run of x_n x_{n+N} = x_{n+1} x_{n+N-1} + 1.
/// Every admissible choice of t (and t) is computed and must agree.
inline PellWitness pell_solutions(std::size_t N, std::size_t count) {
  if (N < 2) throw std::invalid_argument("Pell extraction needs N >= 2");
  const std::size_t len = (N - 1) * count + N + 2;
  auto run = iterate_ones(primitive_recurrence(N, 1), len).terms;
  auto x = [&](std::size_t n) -> BigInt {
    const BigRational& v = run.at(n - 1);
    if (!is_integer(v)) throw std::logic_error("ones-run is not integral");
    return v.get_num();
  };
  PellWitness w;
  w.N = N;
  w.odd = N % 2 == 1;
  w.r = w.odd ? (N + 1) / 2 : N / 2;
  const BigInt r(static_cast<long>(w.r));
  w.D = w.odd ? BigInt(r * r - 1) : BigInt((2 * r + 1) * (2 * r + 1) - 4);
  w.target = w.odd ? 1 : 4;
  for (std::size_t m = 0; m <= count; ++m) {
    const std::size_t base = (N - 1) * m;
    std::optional<BigInt> a, b;
    if (w.odd) {
      a = x(base + w.r);
    } else {
      for (std::size_t t = 1; t <= w.r; ++t) {
        BigInt v = x(base + t) + x(base + N + 1 - t);
        if (a && *a != v) throw DomainError("a_m depends on t at m=" + std::to_string(m));
        a = v;
      }
    }
    for (std::size_t t = 1; t + 1 <= N; ++t) {
      BigInt v = x(base + t + 1) - x(base + t);
      if (b && *b != v) throw DomainError("b_m depends on t at m=" + std::to_string(m));
      b = v;
    }
    if (*a * *a - w.D * *b * *b != w.target)
      throw DomainError("Pell identity fails at m=" + std::to_string(m));
    if (m == 0)
      w.seed = {*a, *b};
    else
      w.pairs.emplace_back(*a, *b);
  }
  return w;
}

}  // namespace qperiod
