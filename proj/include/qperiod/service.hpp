#pragma once

// Stateless JSON handlers and their HTTP routes.

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "httplib.h"

#include "qperiod/io.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/presets.hpp"
#include "qperiod/quiver.hpp"
#include "qperiod/recurrence.hpp"

namespace qperiod {

struct ApiResponse {
  int status = 200;
  json body;

  std::string text() const { return body.dump(); }
};

namespace api {

constexpr std::size_t kMaxTerms = 10000;

inline const json& field(const json& req, const char* name) {
  if (!req.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return req.at(name);
}

inline std::size_t size_field(const json& req, const char* name, std::size_t fallback) {
  if (!req.contains(name)) return fallback;
  return size_from_json(req.at(name), name);
}

/// The quiver of a request: "b" as a bare matrix (with optional "frozen") or a
/// quiver object, "quiver" as a quiver object, or "preset" by name.
inline ExchangeMatrix request_quiver(const json& req) {
  if (!req.is_object()) throw InputError("request body must be a JSON object");
  if (req.contains("quiver")) return quiver_from_json(req.at("quiver"));
  if (req.contains("b")) {
    const json& b = req.at("b");
    if (b.is_object()) return quiver_from_json(b);
    json q{{"b", b}};
    if (req.contains("frozen")) q["frozen"] = req.at("frozen");
    return quiver_from_json(q);
  }
  if (req.contains("preset")) {
    if (!req.at("preset").is_string()) throw InputError("\"preset\" must be a string");
    try {
      return preset(req.at("preset").get<std::string>());
    } catch (const UnknownPreset& e) {
      throw InputError(e.what());
    }
  }
  throw InputError("request needs \"b\", \"quiver\" or \"preset\"");
}

inline json presets() {
  json names = json::array();
  for (const auto& n : preset_names()) names.push_back(n);
  return json{{"presets", names}};
}

inline json mutate(const json& req) {
  const auto b = request_quiver(req);
  const json& k = field(req, "k");
  ExchangeMatrix out = b;
  if (k.is_array()) {
    for (const auto& v : k) out = qperiod::mutate(out, size_from_json(v, "k"));
  } else {
    out = qperiod::mutate(out, size_from_json(k, "k"));
  }
  return to_json(out);
}

inline json period(const json& req) {
  const auto b = request_quiver(req);
  const auto p = detect_period(b.mutable_block(), size_field(req, "max", 0));
  return json{{"period", p ? json(*p) : json(nullptr)}};
}

inline json sequence(const json& req) {
  const auto b = request_quiver(req);
  const std::size_t count = size_field(req, "terms", 12);
  if (count > kMaxTerms) throw InputError("at most " + std::to_string(kMaxTerms) + " terms");
  const auto rec = recurrence_for(b);
  auto init = req.contains("init") ? rationals_from_json(req.at("init"), "init")
                                   : std::vector<BigRational>(rec.order, BigRational(1));
  auto params = req.contains("params") ? rationals_from_json(req.at("params"), "params")
                                       : std::vector<BigRational>(rec.num_params, BigRational(1));
  return to_json(iterate(rec, init, params, count));
}

inline json decompose(const json& req) {
  const auto b = request_quiver(req);
  const std::size_t m = size_field(req, "m", 1);
  if (m == 1) return to_json(decompose_period1(b));
  return to_json(sink_type_decompose(b, m));
}

inline json recurrence(const json& req) { return to_json(recurrence_for(request_quiver(req))); }

/// Runs a handler on a raw body: 400 for malformed input, 422 for requests the
/// mathematics rejects.
inline ApiResponse call(const std::function<json(const json&)>& handler, const std::string& body) {
  auto error = [](int status, const std::string& msg) { return ApiResponse{status, json{{"error", msg}}}; };
  try {
    const json req = body.empty() ? json::object() : parse_json(body);
    return ApiResponse{200, handler(req)};
  } catch (const InputError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, e.what());
  } catch (const DomainError& e) {
    return error(422, e.what());
  } catch (const std::invalid_argument& e) {
    return error(422, e.what());
  } catch (const std::out_of_range& e) {
    return error(422, e.what());
  }
}

}  // namespace api

/// Server with every /api route installed; not yet bound.
inline std::unique_ptr<httplib::Server> make_server() {
  auto srv = std::make_unique<httplib::Server>();
  auto reply = [](httplib::Response& res, const ApiResponse& r) {
    res.status = r.status;
    res.set_content(r.text(), "application/json");
  };
  srv->Get("/api/presets", [reply](const httplib::Request&, httplib::Response& res) {
    reply(res, ApiResponse{200, api::presets()});
  });
  const std::pair<const char*, json (*)(const json&)> posts[] = {
      {"/api/mutate", api::mutate},       {"/api/period", api::period},
      {"/api/sequence", api::sequence},   {"/api/decompose", api::decompose},
      {"/api/recurrence", api::recurrence}};
  for (const auto& [path, fn] : posts) {
    auto handler = fn;
    srv->Post(path, [reply, handler](const httplib::Request& req, httplib::Response& res) {
      reply(res, api::call(handler, req.body));
    });
  }
  return srv;
}

/// Blocks until the server stops. Returns false when the port cannot be bound.
inline bool serve(int port, const std::string& host = "127.0.0.1") { return make_server()->listen(host, port); }

}  // namespace qperiod
