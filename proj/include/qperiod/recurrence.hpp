#pragma once

// Exchange recurrences read off period-1 and period-2 quivers, exact
// iteration over the rationals, and symbolic Laurent verification.
//
// Everything runs on a single z-sequence: step l (1-based) replaces z_l by
//   z_{l+N} = F_p(z_{l+1}, ..., z_{l+N-1}) / z_l,   p = (l-1) mod (#phases).
// A period-one recurrence has one phase; a period-two pair has two, with the
// interleaving x_n = z_{2n-1}, y_n = z_{2n}.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qperiod/exact.hpp"
#include "qperiod/laurent.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/quiver.hpp"

namespace qperiod {

class ZeroDivisorError : public DomainError {
 public:
  ZeroDivisorError(std::size_t index)
      : DomainError("zero divisor while computing term " + std::to_string(index)), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// scalar * prod_i y_i^params[i] * prod_d z_{l+d}^vars[d-1].
struct ExchangeMonomial {
  BigInt scalar{1};
  std::vector<unsigned> vars;    // offsets 1..N-1
  std::vector<unsigned> params;  // frozen parameters 1..M

  friend bool operator==(const ExchangeMonomial&, const ExchangeMonomial&) = default;
};

/// z_l * z_{l+N} = monomials[0] + monomials[1].
/// The monomials come from the positive and negative entries of a matrix
/// column; they are stored in a canonical order (lexicographically larger
/// offset exponents first), so a quiver and its opposite give equal templates.
struct ExchangeTemplate {
  std::array<ExchangeMonomial, 2> monomials;

  void canonicalize() {
    const auto& a = monomials[0];
    const auto& b = monomials[1];
    bool swap = false;
    if (a.vars != b.vars) {
      swap = a.vars < b.vars;
    } else if (a.params != b.params) {
      swap = a.params < b.params;
    } else {
      swap = a.scalar < b.scalar;
    }
    if (swap) std::swap(monomials[0], monomials[1]);
  }

  friend bool operator==(const ExchangeTemplate&, const ExchangeTemplate&) = default;
};

struct Recurrence {
  std::size_t order = 0;
  std::size_t num_params = 0;
  std::vector<ExchangeTemplate> phases;

  bool is_pair() const { return phases.size() == 2; }

  void validate() const {
    if (order < 2) throw std::invalid_argument("recurrence order must be at least 2");
    if (phases.empty()) throw std::invalid_argument("recurrence needs at least one phase");
    for (const auto& ph : phases)
      for (const auto& m : ph.monomials) {
        if (m.vars.size() != order - 1) throw std::invalid_argument("monomial must cover offsets 1..N-1");
        if (m.params.size() != num_params) throw std::invalid_argument("parameter exponent count mismatch");
        if (m.scalar == 0) throw std::invalid_argument("monomial scalar must be nonzero");
      }
  }

  friend bool operator==(const Recurrence&, const Recurrence&) = default;

  /// e.g. `x_n*x_{n+4} = x_{n+1}*x_{n+3} + x_{n+2}^2`; pairs give one line per phase
  /// in x/y notation.
  std::string render() const;
};

namespace detail {

inline std::string subscript(const std::string& base, std::size_t shift) {
  return shift == 0 ? base + "_n" : base + "_{n+" + std::to_string(shift) + "}";
}

/// Name of z_{l+d} when z_l is the phase-p variable in a sequence with `phases` phases.
inline std::string z_name(std::size_t phases, std::size_t p, std::size_t d) {
  if (phases == 1) return subscript("x", d);
  // l = 2n-1 for p = 0 (z_l = x_n), l = 2n for p = 1 (z_l = y_n).
  const std::size_t pos = p + d;  // parity of l+d relative to x_n's slot
  return pos % 2 == 0 ? subscript("x", (p + d) / 2) : subscript("y", (p + d - 1) / 2);
}

inline std::string param_name(std::size_t i, std::size_t m) {
  return m == 1 ? "y" : "y" + std::to_string(i + 1);
}

inline std::string render_factor(const std::string& name, unsigned e) {
  return e == 1 ? name : name + "^" + std::to_string(e);
}

inline std::string render_monomial(const ExchangeMonomial& m, std::size_t phases, std::size_t p,
                                   std::size_t num_params) {
  std::vector<std::string> factors;
  if (m.scalar != 1) factors.push_back(m.scalar.get_str());
  for (std::size_t i = 0; i < m.params.size(); ++i)
    if (m.params[i] != 0) factors.push_back(render_factor(param_name(i, num_params), m.params[i]));
  for (std::size_t d = 1; d <= m.vars.size(); ++d)
    if (m.vars[d - 1] != 0) factors.push_back(render_factor(z_name(phases, p, d), m.vars[d - 1]));
  if (factors.empty()) return "1";
  std::string s = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) s += "*" + factors[i];
  return s;
}

}  // namespace detail

inline std::string Recurrence::render() const {
  std::string out;
  for (std::size_t p = 0; p < phases.size(); ++p) {
    if (p > 0) out += "\n";
    out += detail::z_name(phases.size(), p, 0) + "*" + detail::z_name(phases.size(), p, order) + " = " +
           detail::render_monomial(phases[p].monomials[0], phases.size(), p, num_params) + " + " +
           detail::render_monomial(phases[p].monomials[1], phases.size(), p, num_params);
  }
  return out;
}

/// Exchange template for mutating vertex v of b: mutable neighbour u sits at
/// offset (u - v) mod n; frozen vertex n+i contributes parameter i.
inline ExchangeTemplate template_from_column(const ExchangeMatrix& b, std::size_t v) {
  const std::size_t n = b.n();
  ExchangeTemplate t;
  for (auto& m : t.monomials) {
    m.vars.assign(n - 1, 0);
    m.params.assign(b.frozen(), 0);
  }
  for (std::size_t i = 1; i <= b.size(); ++i) {
    if (i == v) continue;
    const BigInt& e = b(i, v);
    if (e == 0) continue;
    auto& mono = t.monomials[e > 0 ? 0 : 1];
    unsigned mag = static_cast<unsigned>(to_int(abs(e)));
    if (b.is_frozen(i)) {
      mono.params[i - n - 1] = mag;
    } else {
      std::size_t d = (i + n - v) % n;
      mono.vars[d - 1] = mag;
    }
  }
  t.canonicalize();
  return t;
}

/// Period-one recurrence from column 1. The mutable block must satisfy mu_1 B = rho B rho^-1;
/// frozen rows become parameters.
inline Recurrence recurrence_from_period1(const ExchangeMatrix& b) {
  if (b.n() < 2) throw std::invalid_argument("recurrence needs at least two mutable vertices");
  if (!has_period(b.mutable_block(), 1)) throw NotPeriodOne("quiver is not period one");
  Recurrence r{b.n(), b.frozen(), {template_from_column(b, 1)}};
  r.validate();
  return r;
}

/// Alternating pair: F0 from column 1 of B(1), F1 from column 2 of B(2) = mu_1 B(1).
/// Period-one quivers are accepted too; both phases then agree up to relabelling.
inline Recurrence recurrence_from_period2(const ExchangeMatrix& b) {
  if (b.n() < 2) throw std::invalid_argument("recurrence needs at least two mutable vertices");
  if (!has_period(b.mutable_block(), 2)) throw DomainError("quiver is not period two");
  Recurrence r{b.n(), b.frozen(), {template_from_column(b, 1), template_from_column(mutate(b, 1), 2)}};
  r.validate();
  return r;
}

/// The single recurrence for period-one quivers, the alternating pair for period two.
inline Recurrence recurrence_for(const ExchangeMatrix& b) {
  auto p = detect_period(b.mutable_block(), 2);
  if (!p) throw DomainError("quiver has neither period one nor period two");
  return *p == 1 ? recurrence_from_period1(b) : recurrence_from_period2(b);
}

/// x_n x_{n+N} = x_{n+k} x_{n+N-k} + 1.
inline Recurrence primitive_recurrence(std::size_t N, std::size_t k) {
  if (N < 2 || k < 1 || 2 * k > N) throw std::invalid_argument("primitive recurrence needs 1 <= k <= N/2");
  Recurrence r;
  r.order = N;
  ExchangeTemplate t;
  for (auto& m : t.monomials) m.vars.assign(N - 1, 0);
  t.monomials[0].vars[k - 1] += 1;
  t.monomials[0].vars[N - k - 1] += 1;
  t.canonicalize();
  r.phases.push_back(t);
  r.validate();
  return r;
}

/// Period-one recurrence built directly from two offset monomials.
inline Recurrence make_recurrence(std::size_t N, ExchangeMonomial a, ExchangeMonomial b,
                                  std::size_t num_params = 0) {
  Recurrence r{N, num_params, {ExchangeTemplate{{std::move(a), std::move(b)}}}};
  r.phases[0].canonicalize();
  r.validate();
  return r;
}

/// x_n x_{n+4} = 2 x_{n+1} x_{n+3} + x_{n+2}: not modelled by a quiver, not Laurent.
inline Recurrence non_laurent_example() {
  return make_recurrence(4, ExchangeMonomial{BigInt(2), {1, 0, 1}, {}},
                         ExchangeMonomial{BigInt(1), {0, 1, 0}, {}});
}

// ---------------------------------------------------------------------------
// Exact iteration

struct SequenceRun {
  std::vector<BigRational> terms;
  std::size_t integral_prefix = 0;

  /// Period-two interleaving: x_n = z_{2n-1}.
  std::vector<BigRational> x_terms() const { return every_other(0); }
  std::vector<BigRational> y_terms() const { return every_other(1); }

 private:
  std::vector<BigRational> every_other(std::size_t start) const {
    std::vector<BigRational> out;
    for (std::size_t i = start; i < terms.size(); i += 2) out.push_back(terms[i]);
    return out;
  }
};

namespace detail {

/// F_p on z_{l+1..l+N-1} with Laurent-polynomial values; `l0` = l-1.
inline LaurentPolynomial exchange_numerator(const ExchangeTemplate& t, const std::vector<LaurentPolynomial>& z,
                                            std::size_t l0, const std::vector<LaurentPolynomial>& params) {
  const std::size_t nv = z[l0].num_vars();
  LaurentPolynomial sum(nv);
  for (const auto& m : t.monomials) {
    LaurentPolynomial v = LaurentPolynomial::constant(nv, m.scalar);
    for (std::size_t i = 0; i < m.params.size(); ++i)
      if (m.params[i] != 0) v *= pow(params[i], m.params[i]);
    for (std::size_t d = 1; d <= m.vars.size(); ++d)
      if (m.vars[d - 1] != 0) v *= pow(z[l0 + d], m.vars[d - 1]);
    sum += v;
  }
  return sum;
}

}  // namespace detail

/// First `count` terms z_1, z_2, ... from N initial values.
inline SequenceRun iterate(const Recurrence& rec, const std::vector<BigRational>& init,
                           const std::vector<BigRational>& params, std::size_t count) {
  rec.validate();
  const std::size_t N = rec.order;
  if (init.size() != N) throw std::invalid_argument("need exactly N initial values");
  if (params.size() != rec.num_params) throw std::invalid_argument("parameter count mismatch");
  SequenceRun run;
  run.terms.assign(init.begin(), init.begin() + static_cast<std::ptrdiff_t>(std::min(count, N)));
  std::vector<BigRational> z = init;
  for (std::size_t l0 = 0; z.size() < count; ++l0) {
    const auto& phase = rec.phases[l0 % rec.phases.size()];
    if (z[l0] == 0) throw ZeroDivisorError(l0 + N + 1);
    BigRational num(0);
    for (const auto& m : phase.monomials) {
      BigRational v(m.scalar);
      for (std::size_t i = 0; i < m.params.size(); ++i)
        if (m.params[i] != 0) v *= detail::pow_rational(params[i], m.params[i]);
      for (std::size_t d = 1; d < N; ++d)
        if (m.vars[d - 1] != 0) v *= detail::pow_rational(z[l0 + d], m.vars[d - 1]);
      num += v;
    }
    z.push_back(num / z[l0]);
  }
  run.terms = std::vector<BigRational>(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(count));
  while (run.integral_prefix < run.terms.size() && is_integer(run.terms[run.integral_prefix]))
    ++run.integral_prefix;
  return run;
}

inline SequenceRun iterate_ones(const Recurrence& rec, std::size_t count) {
  return iterate(rec, std::vector<BigRational>(rec.order, BigRational(1)),
                 std::vector<BigRational>(rec.num_params, BigRational(1)), count);
}

/// Oracle: raw cluster-seed mutation at vertices 1, 2, 3, ... of the evolving matrix.
/// Frozen vertices carry the parameter values.
inline std::vector<BigRational> cluster_sequence(const ExchangeMatrix& b0, const std::vector<BigRational>& init,
                                                 const std::vector<BigRational>& params, std::size_t count) {
  const std::size_t n = b0.n();
  if (init.size() != n || params.size() != b0.frozen()) throw std::invalid_argument("seed size mismatch");
  std::vector<BigRational> cluster = init, out = init;
  ExchangeMatrix b = b0;
  for (std::size_t step = 0; out.size() < count; ++step) {
    const std::size_t k = step % n + 1;
    BigRational in(1), outm(1);
    for (std::size_t i = 1; i <= b.size(); ++i) {
      if (i == k || b(i, k) == 0) continue;
      const BigRational& val = b.is_frozen(i) ? params[i - n - 1] : cluster[i - 1];
      auto e = to_int64(abs(b(i, k)));
      (b(i, k) > 0 ? in : outm) *= detail::pow_rational(val, e);
    }
    if (cluster[k - 1] == 0) throw ZeroDivisorError(out.size() + 1);
    cluster[k - 1] = (in + outm) / cluster[k - 1];
    out.push_back(cluster[k - 1]);
    b = mutate(b, k);
  }
  out.resize(count);
  return out;
}

// ---------------------------------------------------------------------------
// Symbolic Laurent check

struct LaurentCheckResult {
  std::vector<LaurentPolynomial> variables;  // z_1..z_N, then each verified new variable
  std::optional<std::size_t> failed_step;    // 1-based new-variable index
  std::size_t order = 0;
  std::size_t num_params = 0;

  bool ok() const { return !failed_step.has_value(); }
  /// Sequence index of the failing term (N + step).
  std::optional<std::size_t> failed_index() const {
    if (!failed_step) return std::nullopt;
    return order + *failed_step;
  }

  /// x1..xN for the initial cluster, then y1..yM (y alone when M = 1).
  std::vector<std::string> variable_names() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= order; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 0; i < num_params; ++i) names.push_back(detail::param_name(i, num_params));
    return names;
  }
};

/// Maintains each new variable as a Laurent polynomial in the N initial
/// variables and M parameters, each obtained by exact division. Stops at the
/// first step with no Laurent quotient.
inline LaurentCheckResult laurent_check(const Recurrence& rec, std::size_t steps = 8) {
  rec.validate();
  if (steps < 1) throw std::invalid_argument("laurent check needs at least one step");
  const std::size_t N = rec.order, M = rec.num_params, nv = N + M;
  LaurentCheckResult res;
  res.order = N;
  res.num_params = M;
  for (std::size_t i = 0; i < N; ++i) res.variables.push_back(LaurentPolynomial::variable(nv, i));
  std::vector<LaurentPolynomial> params;
  for (std::size_t i = 0; i < M; ++i) params.push_back(LaurentPolynomial::variable(nv, N + i));
  for (std::size_t s = 1; s <= steps; ++s) {
    const std::size_t l0 = s - 1;
    const auto& phase = rec.phases[l0 % rec.phases.size()];
    LaurentPolynomial num = detail::exchange_numerator(phase, res.variables, l0, params);
    auto q = lp_exact_divide(num, res.variables[l0]);
    if (!q) {
      res.failed_step = s;
      return res;
    }
    res.variables.push_back(std::move(*q));
  }
  return res;
}

// ---------------------------------------------------------------------------
// Decoupling for gcd(N, k) > 1

struct DecouplingReport {
  std::size_t copies = 0;          // g = gcd(N, k)
  std::size_t sub_order = 0;       // N / g
  std::size_t sub_k = 0;           // k / g
  std::vector<BigRational> terms;  // the full run from ones
  std::vector<BigRational> sub_terms;
  bool ok = false;
};

/// Checks that the ones-run of the (N, k) primitive recurrence is g interleaved
/// copies of the (N/g, k/g) ones-run.
inline DecouplingReport decoupling_check(std::size_t N, std::size_t k, std::size_t count) {
  const std::size_t g = std::gcd(N, k);
  if (g <= 1) throw std::invalid_argument("decoupling needs gcd(N, k) > 1");
  DecouplingReport rep;
  rep.copies = g;
  rep.sub_order = N / g;
  rep.sub_k = k / g;
  rep.terms = iterate_ones(primitive_recurrence(N, k), count).terms;
  rep.sub_terms = iterate_ones(primitive_recurrence(rep.sub_order, rep.sub_k), (count + g - 1) / g).terms;
  rep.ok = true;
  for (std::size_t i = 0; i < count; ++i)
    if (rep.terms[i] != rep.sub_terms[i / g]) rep.ok = false;
  return rep;
}

}  // namespace qperiod
