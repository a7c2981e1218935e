#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <thread>

#include "httplib.h"

#include "hanabench/errors.hpp"
#include "hanabench/llm_client.hpp"

using namespace hanabench;

TEST_CASE("model config parses and validates") {
    const auto j = nlohmann::json::parse(R"({
        "provider_url": "https://api.example.com/v1",
        "model_name": "test-model",
        "max_tokens": 512,
        "api_key_env": "EXAMPLE_KEY"
    })");
    const ModelConfig c = ModelConfig::from_json(j);
    CHECK(c.provider_url == "https://api.example.com/v1");
    CHECK(c.model_name == "test-model");
    CHECK(c.temperature == doctest::Approx(0.7));  // default
    CHECK(c.max_tokens == 512);

    auto bad_temp = j;
    bad_temp["temperature"] = -1.0;
    CHECK_THROWS_AS(ModelConfig::from_json(bad_temp), ConfigError);
    auto bad_rate = j;
    bad_rate["rate_limit_per_min"] = 0;
    CHECK_THROWS_AS(ModelConfig::from_json(bad_rate), ConfigError);

    const ModelConfig back = ModelConfig::from_json(c.to_json());
    CHECK(back.to_json() == c.to_json());
}

TEST_CASE("mock client replies from key, queue, or handler") {
    MockChatClient client;
    client.add_keyed("ping", "pong");
    client.enqueue("first");
    client.enqueue("second");

    ModelConfig config;
    CHECK(client.complete(config, {{"user", "ping"}}).text == "pong");
    CHECK(client.complete(config, {{"user", "anything"}}).text == "first");
    CHECK(client.complete(config, {{"user", "anything"}}).text == "second");
    CHECK_THROWS_AS(client.complete(config, {{"user", "anything"}}), ProviderError);
    CHECK_THROWS_AS(client.complete(config, {}), ProviderError);

    MockChatClient scripted([](const std::vector<ChatMessage>& m) {
        return "echo: " + m.back().content;
    });
    CHECK(scripted.complete(config, {{"user", "hi"}}).text == "echo: hi");
}

TEST_CASE("token budget halts once the cap is crossed") {
    auto budget = std::make_shared<TokenBudget>(20);
    MockChatClient client;
    client.attach_budget(budget);
    client.enqueue(std::string(100, 'x'));  // ~25 completion tokens
    client.enqueue("small");

    ModelConfig config;
    CHECK_THROWS_AS(
        {
            client.complete(config, {{"user", "0123456789012345"}});
            client.complete(config, {{"user", "0123456789012345"}});
        },
        BudgetExceeded);
    CHECK(budget->used() > 20);

    TokenBudget unlimited(0);
    unlimited.charge(Usage{1000000, 1000000});
    CHECK_NOTHROW(unlimited.check());
}

TEST_CASE("rate limiter never exceeds its per-minute window") {
    double now = 0.0;
    std::vector<double> sleeps;
    RateLimiter limiter(
        5.0, [&now]() { return now; },
        [&](double s) {
            sleeps.push_back(s);
            now += s;
        });

    for (int i = 0; i < 23; ++i) {
        limiter.acquire();
        now += 1.0;  // one request per simulated second
    }

    // audit: every sliding 60s window holds at most 5 acquisitions
    const auto& times = limiter.acquire_times();
    REQUIRE(times.size() == 23);
    for (std::size_t i = 0; i < times.size(); ++i) {
        int in_window = 0;
        for (std::size_t k = 0; k <= i; ++k) {
            if (times[k] > times[i] - 60.0) ++in_window;
        }
        CHECK(in_window <= 5);
    }
    CHECK_FALSE(sleeps.empty());  // it had to wait at some point
    for (std::size_t i = 1; i < times.size(); ++i) CHECK(times[i] >= times[i - 1]);
}

TEST_CASE("rate limiter is waited on from many threads without bursting") {
    double now = 0.0;
    std::mutex clock_mutex;
    RateLimiter limiter(
        10.0,
        [&]() {
            std::lock_guard lock(clock_mutex);
            return now;
        },
        [&](double s) {
            std::lock_guard lock(clock_mutex);
            now += s;
        });

    std::vector<std::thread> threads;
    for (int t = 0; t < 4; ++t) {
        threads.emplace_back([&]() {
            for (int i = 0; i < 10; ++i) limiter.acquire();
        });
    }
    for (auto& t : threads) t.join();

    const auto& times = limiter.acquire_times();
    REQUIRE(times.size() == 40);
    for (std::size_t i = 0; i < times.size(); ++i) {
        int in_window = 0;
        for (double other : times) {
            if (other > times[i] - 60.0 && other <= times[i]) ++in_window;
        }
        CHECK(in_window <= 10);
    }
}

namespace {

struct TestServer {
    httplib::Server server;
    std::thread thread;
    int port = 0;

    explicit TestServer(httplib::Server::Handler handler) {
        server.Post("/v1/chat/completions", std::move(handler));
        port = server.bind_to_any_port("127.0.0.1");
        thread = std::thread([this]() { server.listen_after_bind(); });
        server.wait_until_ready();
    }
    ~TestServer() {
        server.stop();
        thread.join();
    }

    ModelConfig config() const {
        ModelConfig c;
        c.provider_url = "http://127.0.0.1:" + std::to_string(port) + "/v1";
        c.model_name = "served-model";
        c.max_retries = 3;
        c.backoff_ms = 5;
        c.request_timeout_s = 5.0;
        return c;
    }
};

nlohmann::json completion_body(const std::string& text) {
    return {{"choices", {{{"message", {{"role", "assistant"}, {"content", text}}}}}},
            {"usage", {{"prompt_tokens", 12}, {"completion_tokens", 7}}}};
}

}  // namespace

TEST_CASE("http client round-trips an openai-style completion") {
    std::atomic<int> hits{0};
    nlohmann::json seen_body;
    std::mutex body_mutex;
    TestServer server([&](const httplib::Request& req, httplib::Response& res) {
        hits += 1;
        {
            std::lock_guard lock(body_mutex);
            seen_body = nlohmann::json::parse(req.body);
        }
        res.set_content(completion_body("hello from server").dump(), "application/json");
    });

    HttpChatClient client(nullptr, nullptr, nullptr);
    const Completion out =
        client.complete(server.config(), {{"system", "be brief"}, {"user", "hi"}});
    CHECK(out.text == "hello from server");
    CHECK(out.usage.prompt_tokens == 12);
    CHECK(out.usage.completion_tokens == 7);
    CHECK(out.retry_count == 0);
    CHECK(hits == 1);
    CHECK(seen_body["model"] == "served-model");
    CHECK(seen_body["messages"].size() == 2);
    CHECK(seen_body["messages"][1]["content"] == "hi");
    CHECK(seen_body["temperature"] == doctest::Approx(0.7));
}

TEST_CASE("429 then 200 costs exactly one retry") {
    std::atomic<int> hits{0};
    TestServer server([&](const httplib::Request&, httplib::Response& res) {
        if (hits.fetch_add(1) == 0) {
            res.status = 429;
            res.set_content("slow down", "text/plain");
            return;
        }
        res.set_content(completion_body("recovered").dump(), "application/json");
    });

    auto log = std::make_shared<CallLog>();
    HttpChatClient client(nullptr, nullptr, log);
    const Completion out = client.complete(server.config(), {{"user", "hi"}});
    CHECK(out.text == "recovered");
    CHECK(out.retry_count == 1);
    CHECK(hits == 2);
    REQUIRE(log->entries().size() == 1);
    CHECK(log->entries()[0].retry_count == 1);
}

TEST_CASE("5xx exhaustion raises ProviderError") {
    TestServer server([&](const httplib::Request&, httplib::Response& res) {
        res.status = 500;
    });
    auto config = server.config();
    config.max_retries = 2;
    HttpChatClient client(nullptr, nullptr, nullptr);
    CHECK_THROWS_AS(client.complete(config, {{"user", "hi"}}), ProviderError);
}

TEST_CASE("401 raises AuthError without retrying") {
    std::atomic<int> hits{0};
    TestServer server([&](const httplib::Request&, httplib::Response& res) {
        hits += 1;
        res.status = 401;
    });
    HttpChatClient client(nullptr, nullptr, nullptr);
    CHECK_THROWS_AS(client.complete(server.config(), {{"user", "hi"}}), AuthError);
    CHECK(hits == 1);
}

TEST_CASE("api key is sent as a bearer header when configured") {
    std::string auth_header;
    std::mutex header_mutex;
    TestServer server([&](const httplib::Request& req, httplib::Response& res) {
        {
            std::lock_guard lock(header_mutex);
            auth_header = req.get_header_value("Authorization");
        }
        res.set_content(completion_body("ok").dump(), "application/json");
    });

    setenv("HANABENCH_TEST_KEY", "sk-test-123", 1);
    auto config = server.config();
    config.api_key_env = "HANABENCH_TEST_KEY";
    HttpChatClient client(nullptr, nullptr, nullptr);
    client.complete(config, {{"user", "hi"}});
    CHECK(auth_header == "Bearer sk-test-123");
}

TEST_CASE("call log truncates payload excerpts") {
    CallLog log(10);
    log.record(CallLogEntry{0, "m", 1.0, {}, 0, std::string(50, 'a'), std::string(3, 'b')});
    REQUIRE(log.entries().size() == 1);
    CHECK(log.entries()[0].request_excerpt == std::string(10, 'a') + "...");
    CHECK(log.entries()[0].response_excerpt == "bbb");
}
