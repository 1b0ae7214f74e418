#pragma once

// Sparse multivariate Laurent polynomials with integer coefficients.
//
// Terms are kept in a flat vector sorted strictly descending in graded
// lexicographic order (x1 > x2 > ... within a degree), with no zero
// coefficients, so structural equality is polynomial equality.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qperiod/exact.hpp"

namespace qperiod {

using Exponent = std::vector<std::int32_t>;

namespace detail {

inline std::int64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::int64_t{0});
}

// <0 when a comes before b in descending graded-lex order.
inline int grlex_compare_desc(const Exponent& a, const Exponent& b) {
  auto da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  return 0;
}

struct GrlexDescending {
  bool operator()(const Exponent& a, const Exponent& b) const {
    return grlex_compare_desc(a, b) < 0;
  }
};

inline BigRational pow_rational(const BigRational& base, std::int64_t e) {
  if (e == 0) return BigRational(1);
  if (e < 0) {
    if (base == 0) throw std::domain_error("negative power of zero");
    return pow_rational(BigRational(1) / base, -e);
  }
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  return make_rational(num, den);
}

}  // namespace detail

struct Term {
  Exponent exponent;
  BigInt coeff;

  friend bool operator==(const Term&, const Term&) = default;
};

class LaurentPolynomial {
 public:
  explicit LaurentPolynomial(std::size_t num_vars = 0) : num_vars_(num_vars) {}

  static LaurentPolynomial constant(std::size_t num_vars, const BigInt& c) {
    LaurentPolynomial p(num_vars);
    if (c != 0) p.terms_.push_back({Exponent(num_vars, 0), c});
    return p;
  }

  /// x_{index+1}^power; index is 0-based.
  static LaurentPolynomial variable(std::size_t num_vars, std::size_t index,
                                    std::int32_t power = 1) {
    if (index >= num_vars) throw std::out_of_range("variable index out of range");
    Exponent e(num_vars, 0);
    e[index] = power;
    return monomial(std::move(e), BigInt(1));
  }

  static LaurentPolynomial monomial(Exponent e, const BigInt& c) {
    LaurentPolynomial p(e.size());
    if (c != 0) p.terms_.push_back({std::move(e), c});
    return p;
  }

  /// Builds a polynomial from unsorted terms, merging duplicates.
  static LaurentPolynomial from_terms(std::size_t num_vars, std::vector<Term> terms) {
    for (const auto& t : terms)
      if (t.exponent.size() != num_vars)
        throw std::invalid_argument("exponent length does not match variable count");
    LaurentPolynomial p(num_vars);
    p.terms_ = normalize(std::move(terms));
    return p;
  }

  std::size_t num_vars() const { return num_vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  const Term& leading_term() const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    return terms_.front();
  }

  /// Componentwise minimum exponent; the denominator is x^{-min} when negative.
  Exponent min_exponents() const {
    if (terms_.empty()) return Exponent(num_vars_, 0);
    Exponent m = terms_.front().exponent;
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < num_vars_; ++i) m[i] = std::min(m[i], t.exponent[i]);
    return m;
  }

  LaurentPolynomial shifted(const Exponent& by) const {
    check_vars(by.size());
    LaurentPolynomial p(*this);
    for (auto& t : p.terms_)
      for (std::size_t i = 0; i < num_vars_; ++i) t.exponent[i] += by[i];
    return p;  // a uniform shift preserves graded-lex order
  }

  template <class T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != num_vars_) throw std::invalid_argument("evaluation point has wrong length");
    T sum(0);
    for (const auto& t : terms_) {
      T v(t.coeff);
      for (std::size_t i = 0; i < num_vars_; ++i)
        if (t.exponent[i] != 0) v *= detail::pow_rational(point[i], t.exponent[i]);
      sum += v;
    }
    return sum;
  }

  BigRational evaluate(const std::vector<BigRational>& point) const {
    return evaluate<BigRational>(std::span<const BigRational>(point));
  }

  /// Renders e.g. `x1^-1*x2*x4 + x1^-1*x3^2`; names default to x1..xn.
  std::string to_string(const std::vector<std::string>& names = {}) const {
    if (terms_.empty()) return "0";
    auto name = [&](std::size_t i) {
      return i < names.size() ? names[i] : "x" + std::to_string(i + 1);
    };
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      BigInt mag = abs(t.coeff);
      if (first) {
        if (t.coeff < 0) out += "-";
      } else {
        out += t.coeff < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < num_vars_; ++i) {
        if (t.exponent[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += name(i);
        if (t.exponent[i] != 1) mono += "^" + std::to_string(t.exponent[i]);
      }
      if (mono.empty()) {
        out += mag.get_str();
      } else {
        if (mag != 1) out += mag.get_str() + "*";
        out += mono;
      }
    }
    return out;
  }

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
  }

  friend LaurentPolynomial operator+(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return merge(a, b, 1);
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    return merge(a, b, -1);
  }
  friend LaurentPolynomial operator-(const LaurentPolynomial& a) {
    LaurentPolynomial p(a);
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const BigInt& c) {
    if (c == 0) return LaurentPolynomial(a.num_vars_);
    LaurentPolynomial p(a);
    for (auto& t : p.terms_) t.coeff *= c;
    return p;
  }

  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    a.check_vars(b.num_vars_);
    LaurentPolynomial p(a.num_vars_);
    if (a.is_zero() || b.is_zero()) return p;
    if (a.is_monomial() || b.is_monomial()) {
      const auto& mono = a.is_monomial() ? a : b;
      const auto& other = a.is_monomial() ? b : a;
      p = other.shifted(mono.terms_.front().exponent);
      for (auto& t : p.terms_) t.coeff *= mono.terms_.front().coeff;
      return p;
    }
    std::vector<Term> prods;
    prods.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        Exponent e(a.num_vars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.exponent[i] + t.exponent[i];
        prods.push_back({std::move(e), s.coeff * t.coeff});
      }
    }
    p.terms_ = normalize(std::move(prods));
    return p;
  }

  LaurentPolynomial& operator+=(const LaurentPolynomial& o) { return *this = *this + o; }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return *this = *this - o; }
  LaurentPolynomial& operator*=(const LaurentPolynomial& o) { return *this = *this * o; }

 private:
  void check_vars(std::size_t n) const {
    if (n != num_vars_) throw std::invalid_argument("variable-count mismatch");
  }

  static std::vector<Term> normalize(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
      return detail::grlex_compare_desc(x.exponent, y.exponent) < 0;
    });
    std::vector<Term> out;
    out.reserve(terms.size());
    for (auto& t : terms) {
      if (!out.empty() && out.back().exponent == t.exponent) {
        out.back().coeff += t.coeff;
      } else {
        if (!out.empty() && out.back().coeff == 0) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    return out;
  }

  static LaurentPolynomial merge(const LaurentPolynomial& a, const LaurentPolynomial& b,
                                 int sign_b) {
    a.check_vars(b.num_vars_);
    LaurentPolynomial p(a.num_vars_);
    p.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size()   ? 1
              : j == b.size() ? -1
                              : detail::grlex_compare_desc(a.terms_[i].exponent, b.terms_[j].exponent);
      if (c < 0) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (c > 0) {
        Term t = b.terms_[j++];
        if (sign_b < 0) t.coeff = -t.coeff;
        p.terms_.push_back(std::move(t));
      } else {
        BigInt s = sign_b < 0 ? BigInt(a.terms_[i].coeff - b.terms_[j].coeff)
                              : BigInt(a.terms_[i].coeff + b.terms_[j].coeff);
        if (s != 0) p.terms_.push_back({a.terms_[i].exponent, std::move(s)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  std::size_t num_vars_;
  std::vector<Term> terms_;
};

inline LaurentPolynomial pow(const LaurentPolynomial& base, unsigned exponent) {
  LaurentPolynomial result = LaurentPolynomial::constant(base.num_vars(), BigInt(1));
  LaurentPolynomial sq = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= sq;
    exponent >>= 1;
    if (exponent != 0) sq = sq * sq;
  }
  return result;
}

inline LaurentPolynomial lp_add(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  return a + b;
}

inline LaurentPolynomial lp_mul(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  return a * b;
}

/// Exact division in Z[x1^±1, ..., xn^±1].
///
/// Both operands are shifted by their componentwise minimum exponent, which
/// leaves polynomials free of monomial factors; a Laurent quotient exists
/// exactly when the shifted divisor divides the shifted dividend in Z[x].
/// That is decided by graded-lex long division demanding a zero remainder.
/// Returns nullopt when no quotient exists; throws on a zero divisor.
inline std::optional<LaurentPolynomial> lp_exact_divide(const LaurentPolynomial& a,
                                                        const LaurentPolynomial& b) {
  if (b.is_zero()) throw std::domain_error("Laurent division by zero");
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("variable-count mismatch");
  const std::size_t n = a.num_vars();
  if (a.is_zero()) return LaurentPolynomial(n);

  Exponent ma = a.min_exponents(), mb = b.min_exponents();
  Exponent neg_ma(n), neg_mb(n), shift(n);
  for (std::size_t i = 0; i < n; ++i) {
    neg_ma[i] = -ma[i];
    neg_mb[i] = -mb[i];
    shift[i] = ma[i] - mb[i];
  }
  if (b.is_monomial()) {
    const Term& t = b.leading_term();
    LaurentPolynomial q(n);
    std::vector<Term> terms;
    terms.reserve(a.size());
    for (const auto& s : a.terms()) {
      if (!mpz_divisible_p(s.coeff.get_mpz_t(), t.coeff.get_mpz_t())) return std::nullopt;
      Exponent e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = s.exponent[i] - t.exponent[i];
      terms.push_back({std::move(e), BigInt(s.coeff / t.coeff)});
    }
    return LaurentPolynomial::from_terms(n, std::move(terms));
  }

  const LaurentPolynomial divisor = b.shifted(neg_mb);
  const Term& lead = divisor.leading_term();

  std::map<Exponent, BigInt, detail::GrlexDescending> rem;
  for (const auto& t : a.terms()) {
    Exponent e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = t.exponent[i] + neg_ma[i];
    rem.emplace(std::move(e), t.coeff);
  }

  std::vector<Term> quotient;
  Exponent e(n);
  while (!rem.empty()) {
    auto top = rem.begin();
    Exponent d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = top->first[i] - lead.exponent[i];
      if (d[i] < 0) return std::nullopt;  // leading term lands in the remainder
    }
    if (!mpz_divisible_p(top->second.get_mpz_t(), lead.coeff.get_mpz_t())) return std::nullopt;
    BigInt qc = top->second / lead.coeff;
    for (const auto& t : divisor.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = t.exponent[i] + d[i];
      auto it = rem.find(e);
      if (it == rem.end()) {
        rem.emplace(e, -(qc * t.coeff));
      } else {
        it->second -= qc * t.coeff;
        if (it->second == 0) rem.erase(it);
      }
    }
    quotient.push_back({std::move(d), std::move(qc)});
  }
  for (auto& t : quotient)
    for (std::size_t i = 0; i < n; ++i) t.exponent[i] += shift[i];
  return LaurentPolynomial::from_terms(n, std::move(quotient));
}

}  // namespace qperiod
