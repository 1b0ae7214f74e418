#pragma once

// Arbitrary-precision scalars shared by every module.
//
// BigInt and BigRational are GMP's C++ classes. mpq_class keeps itself in
// lowest terms with a positive denominator as long as values are built
// through the helpers below (or through arithmetic, which GMP canonicalizes).

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qperiod {

using BigInt = mpz_class;
using BigRational = mpq_class;

inline BigRational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

inline std::string to_string(const BigInt& z) { return z.get_str(); }

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const BigRational& q) {
  return is_integer(q) ? q.get_num().get_str() : q.get_str();
}

inline BigInt parse_bigint(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  BigInt z;
  if (s.empty() || z.set_str(s, 10) != 0)
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return z;
}

/// Accepts "p", "p/q" and "-p/q".
inline BigRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return BigRational(parse_bigint(text));
  return make_rational(parse_bigint(text.substr(0, slash)),
                       parse_bigint(text.substr(slash + 1)));
}

static_assert(sizeof(long) == sizeof(std::int64_t), "GMP long conversions assume LP64");

inline bool fits_int64(const BigInt& z) { return z.fits_slong_p(); }

inline std::int64_t to_int64(const BigInt& z) {
  if (!fits_int64(z)) throw std::overflow_error("integer exceeds 64 bits: " + z.get_str());
  return z.get_si();
}

inline int to_int(const BigInt& z) {
  if (!z.fits_sint_p()) throw std::overflow_error("integer exceeds int range: " + z.get_str());
  return static_cast<int>(z.get_si());
}

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

inline int sign(const BigInt& z) { return sgn(z); }

}  // namespace qperiod
