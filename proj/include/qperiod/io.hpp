#pragma once

// JSON encodings. Integers that fit in int64 are JSON numbers, larger ones
// decimal strings; rationals are always strings ("p/q" or "p").

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qperiod/exact.hpp"
#include "qperiod/ice.hpp"
#include "qperiod/linearise.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/quiver.hpp"
#include "qperiod/recurrence.hpp"

namespace qperiod {

using json = nlohmann::json;

/// Malformed request or file: bad JSON, wrong field types, invalid matrix.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

inline json to_json(const BigInt& z) {
  if (fits_int64(z)) return to_int64(z);
  return z.get_str();
}

inline json to_json(const BigRational& q) { return to_string(q); }

inline BigInt bigint_from_json(const json& j, const std::string& what = "integer") {
  try {
    if (j.is_number_integer()) {
      if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
      return big(j.get<std::int64_t>());
    }
    if (j.is_string()) return parse_bigint(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw InputError(what + ": " + e.what());
  }
  throw InputError(what + " must be an integer or a decimal string");
}

inline BigRational rational_from_json(const json& j, const std::string& what = "value") {
  if (j.is_number_integer()) return BigRational(bigint_from_json(j, what));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InputError(what + ": " + e.what());
    }
  }
  throw InputError(what + " must be an integer or a rational string");
}

inline std::vector<BigRational> rationals_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + " must be an array");
  std::vector<BigRational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v, what));
  return out;
}

inline json to_json(const std::vector<BigRational>& v) {
  json a = json::array();
  for (const auto& q : v) a.push_back(to_string(q));
  return a;
}

inline json to_json(const std::vector<BigInt>& v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

// ---------------------------------------------------------------------------
// Quiver format: {"n", "frozen", "b"}; b is the full square matrix, row-major.

inline json to_json(const ExchangeMatrix& b) {
  json rows = json::array();
  for (const auto& r : b.rows()) rows.push_back(to_json(r));
  return json{{"n", b.n()}, {"frozen", b.frozen()}, {"b", rows}};
}

inline std::size_t size_from_json(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) throw InputError(what + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

/// Accepts a quiver object, or a bare matrix (taken as having no frozen vertices).
inline ExchangeMatrix quiver_from_json(const json& j) {
  const json* rows = &j;
  std::optional<std::size_t> n;
  std::size_t frozen = 0;
  if (j.is_object()) {
    if (!j.contains("b")) throw InputError("quiver object needs a \"b\" matrix");
    rows = &j.at("b");
    if (j.contains("n")) n = size_from_json(j.at("n"), "n");
    if (j.contains("frozen")) frozen = size_from_json(j.at("frozen"), "frozen");
  }
  if (!rows->is_array()) throw InputError("\"b\" must be an array of rows");
  std::vector<std::vector<BigInt>> m;
  for (const auto& r : *rows) {
    if (!r.is_array()) throw InputError("each row of \"b\" must be an array");
    m.emplace_back();
    for (const auto& v : r) m.back().push_back(bigint_from_json(v, "matrix entry"));
  }
  if (m.size() <= frozen) throw InputError("matrix must have more rows than frozen vertices");
  if (!n) n = m.size() - frozen;
  if (*n + frozen != m.size()) throw InputError("n + frozen must equal the number of rows");
  try {
    return ExchangeMatrix::from_rows(*n, frozen, m);
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("invalid exchange matrix: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Results

inline json to_json(const Period1Decomposition& d) {
  json levels = json::array();
  for (const auto& l : d.levels) levels.push_back(to_json(l));
  return json{{"N", d.N}, {"levels", levels}, {"text", d.to_string()}};
}

inline json to_json(const SinkTypeDecomposition& d) {
  json terms = json::array();
  for (const auto& t : d.terms) terms.push_back(json{{"label", t.id.label()}, {"coeff", to_json(t.coeff)}});
  return json{{"N", d.N}, {"m", d.m}, {"terms", terms}, {"degenerate", d.degenerate}, {"text", d.to_string()}};
}

inline json to_json(const Recurrence& r) {
  return json{{"order", r.order}, {"params", r.num_params}, {"period", r.phases.size()}, {"text", r.render()}};
}

inline json to_json(const SequenceRun& run) {
  return json{{"terms", to_json(run.terms)}, {"integral_prefix", run.integral_prefix}};
}

/// Denominator monomial of a Laurent polynomial, e.g. "x1^2*x3"; "1" if none.
inline std::string denominator_string(const LaurentPolynomial& p, const std::vector<std::string>& names) {
  const auto e = p.min_exponents();
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] >= 0) continue;
    if (!out.empty()) out += '*';
    out += names[i];
    if (e[i] < -1) out += '^' + std::to_string(-e[i]);
  }
  return out.empty() ? "1" : out;
}

inline json to_json(const LaurentCheckResult& res) {
  const auto names = res.variable_names();
  json vars = json::array(), dens = json::array();
  for (std::size_t i = res.order; i < res.variables.size(); ++i) {
    vars.push_back(res.variables[i].to_string(names));
    dens.push_back(denominator_string(res.variables[i], names));
  }
  json out{{"ok", res.ok()}, {"variables", vars}, {"denominators", dens}, {"steps", res.variables.size() - res.order}};
  out["failed_index"] = res.failed_index() ? json(*res.failed_index()) : json(nullptr);
  return out;
}

inline json to_json(const DecouplingReport& r) {
  return json{{"copies", r.copies},
              {"sub_order", r.sub_order},
              {"sub_k", r.sub_k},
              {"terms", to_json(r.terms)},
              {"sub_terms", to_json(r.sub_terms)},
              {"ok", r.ok}};
}

inline json to_json(const CValues& c) { return json{{"N", c.N}, {"k", c.k}, {"c", to_json(c.c)}}; }

inline json to_json(const LinearisationCertificate& cert) {
  json out{{"N", cert.N}, {"k", cert.k}, {"window", json::array({cert.window_begin, cert.window_end})}};
  out["c"] = cert.c ? to_json(cert.c->c) : json(nullptr);
  out["S"] = cert.S ? to_json(*cert.S) : json(nullptr);
  json subs = json::array();
  for (const auto& s : cert.subsystems) subs.push_back(to_json(s));
  out["subsystems"] = subs;
  return out;
}

inline json to_json(const PellWitness& w) {
  json pairs = json::array();
  for (const auto& [a, b] : w.pairs) pairs.push_back(json{{"a", to_json(a)}, {"b", to_json(b)}});
  return json{{"N", w.N},
              {"D", to_json(w.D)},
              {"target", to_json(w.target)},
              {"seed", json{{"a", to_json(w.seed.first)}, {"b", to_json(w.seed.second)}}},
              {"pairs", pairs}};
}

inline json to_json(const IceVerdict& v) {
  json out{{"valid", v.valid}, {"reason", v.reason}};
  out["row"] = v.row ? json(*v.row) : json(nullptr);
  return out;
}

inline json ice_row_json(const IceRowSpec& s, std::size_t N) {
  return json{{"t", s.t}, {"l", to_json(s.l)}, {"sign", s.sign}, {"row", to_json(s.row(N))}};
}

}  // namespace qperiod
