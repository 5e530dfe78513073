#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "tacler/adapter.hpp"
#include "tacler/curriculum.hpp"
#include "tacler/eval.hpp"

using namespace tacler;
using nlohmann::json;

namespace {

// In-process stub endpoint. Answers every prompt with n completions whose
// text boxes the digit sum it finds in the prompt.
class StubServer {
  public:
    explicit StubServer(std::function<void(const httplib::Request&, httplib::Response&)> h) {
        server_.Post("/generate", std::move(h));
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~StubServer() {
        server_.stop();
        thread_.join();
    }
    AdapterConfig config() const {
        AdapterConfig cfg;
        cfg.url = "http://127.0.0.1:" + std::to_string(port_) + "/generate";
        cfg.timeout_ms = 2000;
        cfg.max_retries = 2;
        return cfg;
    }

  private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

json parse_body(const httplib::Request& req) { return json::parse(req.body); }

void answer_with(httplib::Response& res, int n, const std::string& text, int tokens,
                 bool finished) {
    json out = json::array();
    for (int i = 0; i < n; ++i)
        out.push_back({{"text", text}, {"token_count", tokens}, {"finished", finished}});
    res.set_content(out.dump(), "application/json");
}

}  // namespace

TEST_CASE("request carries the evaluation sampling shape") {
    json seen;
    StubServer server([&seen](const httplib::Request& req, httplib::Response& res) {
        seen = parse_body(req);
        answer_with(res, seen.at("n").get<int>(), "\\boxed{7}", 12, true);
    });
    GenerateRequest req;
    req.prompt_text = "3 + 4 mod 10 = ?";
    req.n = 16;
    req.temperature = 0.6;
    req.top_p = 0.95;
    auto out = adapter_generate(server.config(), req);
    REQUIRE(out.size() == 16);
    CHECK(seen.at("prompt") == "3 + 4 mod 10 = ?");
    CHECK(seen.at("n") == 16);
    CHECK(seen.at("temperature") == doctest::Approx(0.6));
    CHECK(seen.at("top_p") == doctest::Approx(0.95));
    CHECK(seen.at("greedy") == false);
    CHECK(out[0].text == "\\boxed{7}");
    CHECK(out[0].finished);
}

TEST_CASE("categorization request shape: n=1 greedy") {
    json seen;
    StubServer server([&seen](const httplib::Request& req, httplib::Response& res) {
        seen = parse_body(req);
        answer_with(res, 1, "\\boxed{0}", 5, true);
    });
    GenerateRequest req;
    req.n = 1;
    req.greedy = true;
    auto out = adapter_generate(server.config(), req);
    REQUIRE(out.size() == 1);
    CHECK(seen.at("n") == 1);
    CHECK(seen.at("greedy") == true);
}

TEST_CASE("wrong completion count is a schema mismatch") {
    StubServer server([](const httplib::Request&, httplib::Response& res) {
        answer_with(res, 3, "x", 1, true);
    });
    GenerateRequest req;
    req.n = 4;
    try {
        adapter_generate(server.config(), req);
        FAIL("expected TransportError");
    } catch (const TransportError& e) {
        CHECK(e.kind == TransportErrorKind::SchemaMismatch);
    }
}

TEST_CASE("4xx is never retried; 5xx is retried up to the bound") {
    std::atomic<int> hits{0};
    StubServer server([&hits](const httplib::Request&, httplib::Response& res) {
        ++hits;
        res.status = 400;
    });
    GenerateRequest req;
    auto cfg = server.config();
    try {
        adapter_generate(cfg, req);
        FAIL("expected TransportError");
    } catch (const TransportError& e) {
        CHECK(e.kind == TransportErrorKind::HttpStatus);
    }
    CHECK(hits.load() == 1);

    std::atomic<int> hits5{0};
    StubServer flaky([&hits5](const httplib::Request& rq, httplib::Response& res) {
        if (++hits5 < 3) {
            res.status = 503;
            return;
        }
        answer_with(res, parse_body(rq).at("n").get<int>(), "\\boxed{1}", 2, true);
    });
    auto out = adapter_generate(flaky.config(), req);  // succeeds on 3rd attempt
    CHECK(out.size() == 1);
    CHECK(hits5.load() == 3);
}

TEST_CASE("connection failure is a connection-kind error") {
    AdapterConfig cfg;
    cfg.url = "http://127.0.0.1:9/generate";  // discard port, nothing listens
    cfg.timeout_ms = 200;
    cfg.max_retries = 0;
    try {
        adapter_generate(cfg, GenerateRequest{});
        FAIL("expected TransportError");
    } catch (const TransportError& e) {
        CHECK(e.kind == TransportErrorKind::Connection);
    }
}

TEST_CASE("adapter-backed categorization and evaluation") {
    // answers with the correct boxed sum for even-indexed calls, a wrong
    // answer otherwise; never truncates
    std::atomic<int> calls{0};
    StubServer server([&calls](const httplib::Request& rq, httplib::Response& res) {
        auto body = parse_body(rq);
        bool ok = calls++ % 2 == 0;
        answer_with(res, body.at("n").get<int>(),
                    ok ? "thinking... \\boxed{7}" : "\\boxed{99}", 20, true);
    });

    ProblemSet problems;
    for (int i = 0; i < 4; ++i) {
        ProblemRecord p;
        p.id = "p" + std::to_string(i);
        p.operands = {3, 4};
        p.difficulty = 2;
        p.answer = "7";
        problems.problems.push_back(p);
    }

    auto report = categorize_dataset(server.config(), problems, default_templates(), 64);
    CHECK(report.counts.g1 == 2);
    CHECK(report.counts.g2 == 2);
    CHECK(report.counts.g3 == 0);

    calls = 0;
    DecodeConfig dc;
    dc.max_new_tokens = 64;
    auto eval_report =
        evaluate(server.config(), problems, ReasoningMode::NoThinking, 2, dc,
                 default_templates());
    CHECK(eval_report.per_problem.size() == 4);
    CHECK(eval_report.accuracy == doctest::Approx(0.5));
}

TEST_CASE("truncated completions are G3") {
    StubServer server([](const httplib::Request& rq, httplib::Response& res) {
        answer_with(res, parse_body(rq).at("n").get<int>(), "partial \\boxed{7}", 64, false);
    });
    ProblemSet problems;
    ProblemRecord p;
    p.id = "p0";
    p.operands = {3, 4};
    p.difficulty = 2;
    p.answer = "7";
    problems.problems.push_back(p);
    auto report = categorize_dataset(server.config(), problems, default_templates(), 64);
    CHECK(report.counts.g3 == 1);  // truncation dominates the boxed answer
}
