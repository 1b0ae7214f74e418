#pragma once

// Command-line front end. Exit status: 0 success, 1 domain error, 2 usage error.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qperiod/ice.hpp"
#include "qperiod/io.hpp"
#include "qperiod/linearise.hpp"
#include "qperiod/periodicity.hpp"
#include "qperiod/presets.hpp"
#include "qperiod/recurrence.hpp"
#include "qperiod/service.hpp"

namespace qperiod {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace cli {

inline constexpr int kOk = 0, kDomain = 1, kUsage = 2;

struct Source {
  std::string input;
  std::string preset;
  std::vector<std::size_t> primitive;  // N,k
  bool non_laurent = false;
};

inline void add_quiver_source(CLI::App* sub, Source& s) {
  auto* i = sub->add_option("-i,--input", s.input, "Quiver JSON file {\"n\",\"frozen\",\"b\"}, 0-indexed rows");
  auto* p = sub->add_option("--preset", s.preset, "Named quiver (see GET /api/presets)");
  i->excludes(p);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline ExchangeMatrix load_quiver(const Source& s) {
  if (!s.input.empty()) return quiver_from_json(parse_json(read_file(s.input)));
  if (!s.preset.empty()) {
    try {
      return preset(s.preset);
    } catch (const UnknownPreset& e) {
      throw UsageError(e.what());
    }
  }
  throw UsageError("give a quiver with -i FILE or --preset NAME");
}

/// The request body the HTTP service would receive for this quiver.
inline json quiver_request(const ExchangeMatrix& b) { return json{{"b", to_json(b)}}; }

inline Recurrence load_recurrence(const Source& s) {
  if (!s.primitive.empty()) {
    if (s.primitive.size() != 2) throw UsageError("--primitive takes N,k");
    return primitive_recurrence(s.primitive[0], s.primitive[1]);
  }
  if (s.non_laurent) return non_laurent_example();
  return recurrence_for(load_quiver(s));
}

inline std::vector<BigRational> parse_rationals(const std::vector<std::string>& v) {
  std::vector<BigRational> out;
  for (const auto& s : v) {
    try {
      out.push_back(parse_rational(s));
    } catch (const std::invalid_argument& e) {
      throw UsageError("not a rational number: " + s);
    }
  }
  return out;
}

inline std::vector<BigInt> to_bigints(const std::vector<long>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

class Cli {
 public:
  Cli(std::ostream& out, std::ostream& err) : out_(out), err_(err) { build(); }

  int run(int argc, const char* const* argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out_ << deepest()->help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out_ << app_.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      err_ << "error: " << e.what() << "\n\n" << deepest()->help();
      return kUsage;
    }
    if (!action_) {
      err_ << deepest()->help();
      return kUsage;
    }
    try {
      return action_();
    } catch (const UsageError& e) {
      err_ << "error: " << e.what() << "\n\n" << deepest()->help();
      return kUsage;
    } catch (const InputError& e) {
      err_ << "error: " << e.what() << '\n';
      return kUsage;
    } catch (const DomainError& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomain;
    } catch (const std::invalid_argument& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomain;
    } catch (const std::out_of_range& e) {
      err_ << "error: " << e.what() << '\n';
      return kDomain;
    }
  }

 private:
  CLI::App* deepest() {
    CLI::App* cur = &app_;
    for (bool descended = true; descended;) {
      descended = false;
      for (auto* s : cur->get_subcommands()) {
        cur = s;
        descended = true;
        break;
      }
    }
    return cur;
  }

  void print(const json& j) { out_ << j.dump() << '\n'; }

  void emit_quiver(const ExchangeMatrix& b) {
    if (output_.empty()) {
      print(to_json(b));
      return;
    }
    std::ofstream f(output_);
    if (!f) throw InputError("cannot write " + output_);
    f << to_json(b).dump() << '\n';
  }

  template <class F>
  void on(CLI::App* sub, F f) {
    sub->callback([this, f] { action_ = f; });
  }

  void add_json(CLI::App* sub) { sub->add_flag("--json", json_, "Print the JSON payload the HTTP service returns"); }
  void add_output(CLI::App* sub) { sub->add_option("-o,--output", output_, "Write the quiver JSON here instead of stdout"); }

  void build() {
    app_.require_subcommand(1);
    build_quiver();
    build_seq();
    build_lin();
    build_pell();
    build_ice();
    build_serve();
  }

  void build_quiver() {
    auto* q = app_.add_subcommand("quiver", "Exchange matrices: mutation, periods, decompositions");
    q->require_subcommand(1);

    auto* mut = q->add_subcommand("mutate", "Mutate at the given vertices in order (1-based)");
    add_quiver_source(mut, src_);
    mut->add_option("-k,--vertex", vertices_, "Vertex, repeatable or comma separated")->required()->delimiter(',');
    add_output(mut);
    on(mut, [this] {
      auto b = load_quiver(src_);
      for (auto k : vertices_) b = mutate(b, k);
      emit_quiver(b);
      return kOk;
    });

    auto* per = q->add_subcommand("period", "Smallest mutation period of the mutable part, or none");
    add_quiver_source(per, src_);
    per->add_option("--max", max_, "Largest period tried (default 2n)");
    add_json(per);
    on(per, [this] {
      auto req = quiver_request(load_quiver(src_));
      if (max_) req["max"] = max_;
      const json res = api::period(req);
      if (json_)
        print(res);
      else
        out_ << (res["period"].is_null() ? std::string("none") : std::to_string(res["period"].get<std::size_t>()))
             << '\n';
      return kOk;
    });

    auto* prim = q->add_subcommand("primitive", "Primitive quiver B_{N,m}^(k,j)");
    prim->add_option("-N", N_, "Number of vertices")->required();
    prim->add_option("-m,--period", m_, "Period, dividing N")->capture_default_str();
    prim->add_option("-k", k_, "Arrow span")->required();
    prim->add_option("-j,--copy", j_, "Copy index 1..m")->capture_default_str();
    add_output(prim);
    on(prim, [this] {
      emit_quiver(primitive(PrimitiveId{N_, m_, k_, j_}));
      return kOk;
    });

    auto* p1 = q->add_subcommand("period1", "Period-one quiver from palindromic weights m_1..m_{N-1}");
    p1->add_option("-w,--weights", weights_, "Comma separated; use --weights=-1,... for a leading minus")
        ->required()
        ->delimiter(',');
    add_output(p1);
    on(p1, [this] {
      emit_quiver(period1_from_weights(to_bigints(weights_)));
      return kOk;
    });

    auto* dec = q->add_subcommand("decompose", "Primitive layers of a period-one quiver, or sink-type terms for -m > 1");
    add_quiver_source(dec, src_);
    dec->add_option("-m,--period", m_, "Period")->capture_default_str();
    add_json(dec);
    on(dec, [this] {
      auto req = quiver_request(load_quiver(src_));
      req["m"] = m_;
      const json res = api::decompose(req);
      if (json_)
        print(res);
      else
        out_ << res["text"].get<std::string>() << '\n';
      return kOk;
    });

    auto* fold = q->add_subcommand("fold", "Period-one quiver folded from a sink-type period-m quiver");
    add_quiver_source(fold, src_);
    fold->add_option("-m,--period", m_, "Period")->required();
    add_output(fold);
    on(fold, [this] {
      emit_quiver(fold_to_period1(load_quiver(src_), m_));
      return kOk;
    });

    auto* opp = q->add_subcommand("opposite", "Reverse every arrow");
    add_quiver_source(opp, src_);
    add_output(opp);
    on(opp, [this] {
      emit_quiver(opposite(load_quiver(src_)));
      return kOk;
    });
  }

  void add_recurrence_source(CLI::App* sub) {
    add_quiver_source(sub, src_);
    sub->add_option("--primitive", src_.primitive, "x_n x_{n+N} = x_{n+k} x_{n+N-k} + 1, given as N,k")
        ->delimiter(',')
        ->expected(2);
    sub->add_flag("--non-laurent", src_.non_laurent, "x_n x_{n+4} = 2 x_{n+1} x_{n+3} + x_{n+2}");
  }

  void build_seq() {
    auto* s = app_.add_subcommand("seq", "Recurrences of period-one and period-two quivers");
    s->require_subcommand(1);

    auto* run = s->add_subcommand(
        "run",
        "Exact terms z_1, z_2, ... from N initial values (default all ones). A period-two quiver gives the "
        "alternating pair with x_n = z_{2n-1}, y_n = z_{2n}; for odd N the value after the N supplied ones is "
        "produced by the boundary relation, which is the first step of the pair.");
    add_recurrence_source(run);
    run->add_option("-t,--terms", terms_, "Number of terms")->capture_default_str();
    run->add_option("--init", init_, "Initial values, comma separated rationals")->delimiter(',');
    run->add_option("--params", params_, "Frozen parameter values")->delimiter(',');
    add_json(run);
    on(run, [this] {
      if (src_.primitive.empty() && !src_.non_laurent && json_) {
        auto req = quiver_request(load_quiver(src_));
        req["terms"] = terms_;
        if (!init_.empty()) req["init"] = init_;
        if (!params_.empty()) req["params"] = params_;
        print(api::sequence(req));
        return kOk;
      }
      const auto rec = load_recurrence(src_);
      auto init = init_.empty() ? std::vector<BigRational>(rec.order, BigRational(1)) : parse_rationals(init_);
      auto params =
          params_.empty() ? std::vector<BigRational>(rec.num_params, BigRational(1)) : parse_rationals(params_);
      const auto res = iterate(rec, init, params, terms_);
      if (json_) {
        print(to_json(res));
      } else {
        for (const auto& t : res.terms) out_ << to_string(t) << '\n';
      }
      return kOk;
    });

    auto* lau = s->add_subcommand("laurent", "Each new variable as a Laurent polynomial in x1..xN and parameters");
    add_recurrence_source(lau);
    lau->add_option("--steps", steps_, "New variables to compute")->capture_default_str();
    add_json(lau);
    on(lau, [this] {
      const auto res = laurent_check(load_recurrence(src_), steps_);
      if (json_) {
        print(to_json(res));
      } else {
        const auto names = res.variable_names();
        for (std::size_t i = res.order; i < res.variables.size(); ++i)
          out_ << 'x' << i + 1 << " = " << res.variables[i].to_string(names) << '\n';
        if (!res.ok())
          out_ << "no Laurent-polynomial representation at term " << *res.failed_index() << '\n';
      }
      return res.ok() ? kOk : kDomain;
    });

    auto* dec = s->add_subcommand("decouple", "Ones-run for gcd(N,k) > 1 as interleaved copies of the reduced run");
    dec->add_option("-N", N_, "Order")->required();
    dec->add_option("-k", k_, "Offset")->required();
    dec->add_option("-t,--terms", terms_, "Number of terms")->capture_default_str();
    add_json(dec);
    on(dec, [this] {
      const auto rep = decoupling_check(N_, k_, terms_);
      if (json_) {
        print(to_json(rep));
      } else {
        out_ << "(" << N_ << "," << k_ << ") = " << rep.copies << " interleaved copies of (" << rep.sub_order << ","
             << rep.sub_k << "): " << (rep.ok ? "ok" : "mismatch") << '\n';
      }
      return rep.ok ? kOk : kDomain;
    });
  }

  void build_lin() {
    auto* l = app_.add_subcommand("lin", "Linear relations of primitive recurrences");
    l->require_subcommand(1);

    auto* chk = l->add_subcommand("check", "Certificate for x_n + x_{n+2k(N-k)} = S x_{n+k(N-k)}");
    chk->add_option("-N", N_, "Order")->required();
    chk->add_option("-k", k_, "Offset")->capture_default_str();
    chk->add_option("--window", window_, "Number of consecutive n checked")->capture_default_str();
    chk->add_option("--init", init_, "Initial values x_1..x_N (default ones)")->delimiter(',');
    on(chk, [this] {
      const auto rec = primitive_recurrence(N_, k_);
      auto init = init_.empty() ? std::vector<BigRational>(N_, BigRational(1)) : parse_rationals(init_);
      const auto run = iterate(rec, init, {}, linearisation_run_length(N_, k_, window_));
      print(to_json(linear_relation_check(run.terms, N_, k_, window_)));
      return kOk;
    });

    auto* s = l->add_subcommand("s", "S symbolically in c_1..c_{N-1} (k = 1), or its value at given c");
    s->add_option("-N", N_, "Order")->required();
    s->add_option("-k", k_, "Offset")->capture_default_str();
    s->add_option("-c", init_, "c_1..c_{N-k}, comma separated rationals")->delimiter(',');
    add_json(s);
    on(s, [this] {
      std::string text;
      if (init_.empty()) {
        if (k_ != 1) throw UsageError("symbolic S is available for k = 1; give -c values otherwise");
        std::vector<std::string> names;
        for (std::size_t i = 1; i < N_; ++i) names.push_back("c" + std::to_string(i));
        text = s_polynomial(N_).to_string(names);
      } else {
        text = to_string(s_coefficient(CValues{N_, k_, parse_rationals(init_)}));
      }
      if (json_)
        print(json{{"S", text}});
      else
        out_ << text << '\n';
      return kOk;
    });
  }

  void build_pell() {
    auto* p = app_.add_subcommand("pell", "Pell solutions read off the all-ones run of the k = 1 primitive recurrence");
    p->add_option("-N", N_, "Order")->required();
    p->add_option("--count", count_, "Number of solutions after the seed")->capture_default_str();
    add_json(p);
    on(p, [this] {
      const auto w = pell_solutions(N_, count_);
      if (json_) {
        print(to_json(w));
        return kOk;
      }
      out_ << "a^2 - " << w.D.get_str() << " b^2 = " << w.target.get_str() << '\n';
      out_ << 0 << ' ' << w.seed.first.get_str() << ' ' << w.seed.second.get_str() << '\n';
      for (std::size_t m = 0; m < w.pairs.size(); ++m)
        out_ << m + 1 << ' ' << w.pairs[m].first.get_str() << ' ' << w.pairs[m].second.get_str() << '\n';
      return kOk;
    });
  }

  void build_ice() {
    auto* i = app_.add_subcommand("ice", "Frozen coefficient rows on period-one quivers");
    i->require_subcommand(1);

    auto* chk = i->add_subcommand("check", "Whether the frozen rows keep the quiver period one");
    add_quiver_source(chk, src_);
    add_json(chk);
    on(chk, [this] {
      const auto v = ice_period1_check(load_quiver(src_));
      if (json_) {
        print(to_json(v));
      } else if (v.valid) {
        out_ << "valid\n";
      } else {
        out_ << "invalid" << (v.row ? " at frozen row " + std::to_string(*v.row) : "") << ": " << v.reason << '\n';
      }
      return v.valid ? kOk : kDomain;
    });

    auto* rows = i->add_subcommand("rows", "Every admissible frozen row for the given weights");
    rows->add_option("-w,--weights", weights_, "Palindromic m_1..m_{N-1}; use --weights=-1,... for a leading minus")
        ->required()
        ->delimiter(',');
    rows->add_option("--lmax", lmax_, "Largest row magnitude")->capture_default_str();
    add_json(rows);
    on(rows, [this] {
      const auto w = to_bigints(weights_);
      const auto specs = ice_rows_enumerate(w, lmax_);
      const std::size_t N = w.size() + 1;
      if (json_) {
        json a = json::array();
        for (const auto& s : specs) a.push_back(ice_row_json(s, N));
        print(a);
      } else {
        for (const auto& s : specs) out_ << to_json(s.row(N)).dump() << '\n';
      }
      return kOk;
    });

    auto* rec = i->add_subcommand("recur", "Recurrence with coefficients of a valid ice quiver");
    add_quiver_source(rec, src_);
    add_json(rec);
    on(rec, [this] {
      const auto r = parameterized_recurrence(load_quiver(src_));
      if (json_)
        print(to_json(r));
      else
        out_ << r.render() << '\n';
      return kOk;
    });
  }

  void build_serve() {
    auto* s = app_.add_subcommand("serve", "JSON HTTP service under /api");
    s->add_option("--port", port_, "Port")->capture_default_str();
    s->add_option("--host", host_, "Bind address")->capture_default_str();
    on(s, [this] {
      err_ << "listening on http://" << host_ << ':' << port_ << '\n';
      if (!serve(port_, host_)) throw DomainError("cannot bind " + host_ + ":" + std::to_string(port_));
      return kOk;
    });
  }

  std::ostream& out_;
  std::ostream& err_;
  CLI::App app_{"Mutation-periodic quivers and their recurrences", "qperiod"};
  std::function<int()> action_;

  Source src_;
  std::string output_;
  bool json_ = false;
  std::vector<std::size_t> vertices_;
  std::vector<long> weights_;
  std::vector<std::string> init_, params_;
  std::size_t max_ = 0, N_ = 0, m_ = 1, k_ = 1, j_ = 1, terms_ = 12, steps_ = 8, window_ = 20, count_ = 15;
  long lmax_ = 1;
  int port_ = 8080;
  std::string host_ = "127.0.0.1";
};

}  // namespace cli

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  cli::Cli c(out, err);
  return c.run(argc, argv);
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qperiod"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qperiod
