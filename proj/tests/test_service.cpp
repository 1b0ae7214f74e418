#include <gtest/gtest.h>

#include <sstream>
#include <thread>

#include "qperiod/cli.hpp"
#include "qperiod/service.hpp"

using namespace qperiod;

namespace {

class Http : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    server_ = make_server().release();
    port_ = server_->bind_to_any_port("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = new std::thread([] { server_->listen_after_bind(); });
    server_->wait_until_ready();
  }

  static void TearDownTestSuite() {
    server_->stop();
    thread_->join();
    delete thread_;
    delete server_;
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

  ApiResponse post(const std::string& path, const std::string& body) const {
    auto res = client().Post(path, body, "application/json");
    if (!res) return ApiResponse{-1, json(nullptr)};
    return ApiResponse{res->status, json::parse(res->body)};
  }

  std::string post_raw(const std::string& path, const std::string& body) const {
    auto res = client().Post(path, body, "application/json");
    return res ? res->body : std::string();
  }

  static httplib::Server* server_;
  static std::thread* thread_;
  static int port_;
};

httplib::Server* Http::server_ = nullptr;
std::thread* Http::thread_ = nullptr;
int Http::port_ = 0;

std::string body_for(const ExchangeMatrix& b) { return json{{"b", to_json(b).at("b")}}.dump(); }

std::string cli_out(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  run_cli(args, out, err);
  return out.str();
}

}  // namespace

TEST(Api, MutateSomos4IsRotation) {
  const auto b = preset("somos4");
  auto r = api::call(api::mutate, json{{"b", to_json(b).at("b")}, {"k", 1}}.dump());
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(quiver_from_json(r.body), conjugate_rho(b, 1));
}

TEST(Api, ErrorStatuses) {
  EXPECT_EQ(api::call(api::period, "{\"b\": [[0,1],").status, 400);
  EXPECT_EQ(api::call(api::period, R"({"b": [[0,1],[1,0]]})").status, 400);
  EXPECT_EQ(api::call(api::period, R"({"k": 1})").status, 400);
  EXPECT_EQ(api::call(api::period, R"({"b": "x"})").status, 400);
  EXPECT_EQ(api::call(api::period, R"({"preset": "nope"})").status, 400);
  EXPECT_EQ(api::call(api::mutate, R"({"preset": "somos4"})").status, 400);
  EXPECT_EQ(api::call(api::mutate, R"({"preset": "somos4", "k": 7})").status, 422);
  EXPECT_EQ(api::call(api::decompose, R"({"preset": "three_cycle_double"})").status, 422);
  EXPECT_EQ(api::call(api::recurrence, R"({"b": [[0,2,0],[-2,0,1],[0,-1,0]]})").status, 422);
  EXPECT_EQ(api::call(api::sequence, R"({"preset": "somos4", "terms": 100000})").status, 400);
  auto r = api::call(api::sequence, R"({"preset": "somos4", "init": [0,1,1,1]})");
  EXPECT_EQ(r.status, 422);
  EXPECT_TRUE(r.body.contains("error"));
}

TEST(Api, MatchesLibrary) {
  const auto b = preset("somos5");
  EXPECT_EQ(api::call(api::recurrence, body_for(b)).body.dump(), to_json(recurrence_from_period1(b)).dump());
  EXPECT_EQ(api::call(api::decompose, body_for(b)).body.dump(), to_json(decompose_period1(b)).dump());
  EXPECT_EQ(api::call(api::sequence, R"({"preset":"somos5","terms":20})").body.dump(),
            to_json(iterate_ones(recurrence_from_period1(b), 20)).dump());
  const auto ice = preset("somos4_ice");
  auto r = api::call(api::sequence, json{{"quiver", to_json(ice)}, {"terms", 6}, {"params", {"2", "3"}}}.dump());
  EXPECT_EQ(r.body.dump(), to_json(iterate(recurrence_from_period1(ice), std::vector<BigRational>(4, BigRational(1)),
                                           {BigRational(2), BigRational(3)}, 6))
                               .dump());
  EXPECT_EQ(api::call(api::recurrence, R"({"preset":"somos4"})").body["text"],
            "x_n*x_{n+4} = x_{n+1}*x_{n+3} + x_{n+2}^2");
}

TEST_F(Http, Presets) {
  auto res = client().Get("/api/presets");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  auto names = json::parse(res->body).at("presets");
  EXPECT_NE(std::find(names.begin(), names.end(), "dP3"), names.end());
  EXPECT_EQ(res->body, api::presets().dump());
}

TEST_F(Http, PeriodOfThreeCycleDouble) {
  auto r = post("/api/period", body_for(preset("three_cycle_double")));
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body, json::parse(R"({"period": 2})"));
  EXPECT_EQ(post("/api/period", R"({"preset":"hirzebruch0","max":1})").body, json::parse(R"({"period": null})"));
}

TEST_F(Http, MutateAndInvolution) {
  const auto b = preset("somos4");
  auto once = post("/api/mutate", json{{"b", to_json(b).at("b")}, {"k", 1}}.dump());
  ASSERT_EQ(once.status, 200);
  EXPECT_EQ(quiver_from_json(once.body), conjugate_rho(b, 1));
  auto twice = post("/api/mutate", json{{"b", once.body.at("b")}, {"k", 1}}.dump());
  EXPECT_EQ(quiver_from_json(twice.body), b);
  auto list = post("/api/mutate", json{{"preset", "somos4"}, {"k", {1, 1}}}.dump());
  EXPECT_EQ(quiver_from_json(list.body), b);
}

TEST_F(Http, SequenceTermsAreStrings) {
  auto r = post("/api/sequence", R"({"preset":"somos4","terms":12})");
  ASSERT_EQ(r.status, 200);
  EXPECT_EQ(r.body["terms"].back(), "8209");
  EXPECT_EQ(r.body["integral_prefix"], 12);
  auto big = post("/api/sequence", R"({"preset":"somos4","terms":40})");
  for (const auto& t : big.body["terms"]) EXPECT_TRUE(t.is_string());
}

TEST_F(Http, DecomposeAndRecurrence) {
  auto d = post("/api/decompose", body_for(preset("somos4")));
  EXPECT_EQ(d.body["text"], "B4(1):1 B4(2):-2 | B2(1):2");
  auto err = post("/api/decompose", body_for(preset("three_cycle_double")));
  EXPECT_EQ(err.status, 422);
  EXPECT_TRUE(err.body.contains("error"));
  auto rec = post("/api/recurrence", R"({"preset":"dana_scott_ice"})");
  EXPECT_EQ(rec.body["text"], "x_n*x_{n+4} = x_{n+1}*x_{n+3} + y*x_{n+2}");
  EXPECT_EQ(rec.body["period"], 1);
  auto pair = post("/api/recurrence", R"({"preset":"hirzebruch0"})");
  EXPECT_EQ(pair.body["period"], 2);
}

TEST_F(Http, MalformedBodies) {
  auto r = post("/api/mutate", "not json");
  EXPECT_EQ(r.status, 400);
  EXPECT_TRUE(r.body.contains("error"));
  EXPECT_EQ(post("/api/period", R"({"b":[[0,1],[1,0]]})").status, 400);
}

// CLI --json, HTTP and direct library calls agree on the bytes.
TEST_F(Http, CliAgreesByteForByte) {
  const std::string data = QPERIOD_DATA_DIR;
  const auto s4 = preset("somos4");
  EXPECT_EQ(cli_out({"quiver", "period", "-i", data + "/somos4.json", "--json"}),
            post_raw("/api/period", body_for(s4)) + "\n");
  EXPECT_EQ(cli_out({"quiver", "decompose", "--preset", "somos4", "--json"}),
            post_raw("/api/decompose", body_for(s4)) + "\n");
  EXPECT_EQ(cli_out({"seq", "run", "--preset", "somos4", "--terms", "15", "--json"}),
            post_raw("/api/sequence", R"({"preset":"somos4","terms":15})") + "\n");
  EXPECT_EQ(cli_out({"quiver", "mutate", "--preset", "somos4", "-k", "1"}),
            post_raw("/api/mutate", R"({"preset":"somos4","k":1})") + "\n");
  EXPECT_EQ(cli_out({"quiver", "mutate", "--preset", "somos4", "-k", "1"}), to_json(mutate(s4, 1)).dump() + "\n");
  EXPECT_EQ(cli_out({"ice", "recur", "--preset", "somos4_ice", "--json"}),
            post_raw("/api/recurrence", R"({"preset":"somos4_ice"})") + "\n");
}

TEST_F(Http, StatelessUnderConcurrency) {
  const std::vector<std::pair<std::string, std::string>> reqs = {
      {"/api/period", R"({"preset":"dP3"})"},
      {"/api/sequence", R"({"preset":"somos5","terms":25})"},
      {"/api/mutate", R"({"preset":"hirzebruch0","k":2})"},
      {"/api/decompose", R"({"preset":"somos5"})"}};
  std::vector<std::string> expected;
  for (const auto& [p, b] : reqs) expected.push_back(post_raw(p, b));
  std::vector<std::thread> threads;
  std::vector<std::vector<std::string>> got(4);
  for (std::size_t t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (std::size_t i = 0; i < reqs.size(); ++i) {
        const auto& [p, b] = reqs[(i + t) % reqs.size()];
        got[t].push_back(post_raw(p, b));
      }
    });
  for (auto& th : threads) th.join();
  for (std::size_t t = 0; t < 4; ++t)
    for (std::size_t i = 0; i < reqs.size(); ++i) EXPECT_EQ(got[t][i], expected[(i + t) % reqs.size()]);
}
