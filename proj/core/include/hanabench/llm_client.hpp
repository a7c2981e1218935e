#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace hanabench {

struct ChatMessage {
    std::string role;  // "system" | "user" | "assistant"
    std::string content;
};

struct ModelConfig {
    std::string provider_url;   // e.g. "https://api.openai.com/v1"
    std::string model_name;
    double temperature = 0.7;
    int max_tokens = 4096;
    double request_timeout_s = 120.0;
    int max_retries = 3;
    double rate_limit_per_min = 60.0;
    std::string api_key_env;    // name of the env var holding the key
    int backoff_ms = 500;       // base delay, doubles per retry

    static ModelConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct Usage {
    std::int64_t prompt_tokens = 0;
    std::int64_t completion_tokens = 0;
    std::int64_t total() const { return prompt_tokens + completion_tokens; }
};

struct Completion {
    std::string text;
    Usage usage;
    int retry_count = 0;
    double latency_ms = 0.0;
};

// Sliding-window limiter shared across parallel games. The clock and sleep
// hooks are injectable so the no-burst invariant can be tested without waiting.
class RateLimiter {
public:
    using Clock = std::function<double()>;              // seconds, monotonic
    using Sleep = std::function<void(double)>;          // seconds

    explicit RateLimiter(double requests_per_minute);
    RateLimiter(double requests_per_minute, Clock clock, Sleep sleep);

    // Blocks until a request slot is free, then claims it.
    void acquire();

    const std::vector<double>& acquire_times() const { return times_; }

private:
    double per_minute_;
    Clock clock_;
    Sleep sleep_;
    std::mutex mutex_;
    std::deque<double> window_;
    std::vector<double> times_;  // audit trail
};

// Global token cap for a run. Zero means unlimited.
class TokenBudget {
public:
    explicit TokenBudget(std::int64_t cap = 0) : cap_(cap) {}

    void charge(const Usage& usage);  // throws BudgetExceeded past the cap
    void check() const;
    std::int64_t used() const { return used_.load(); }
    std::int64_t cap() const { return cap_; }

private:
    std::int64_t cap_;
    std::atomic<std::int64_t> used_{0};
};

struct CallLogEntry {
    double timestamp_s = 0.0;
    std::string model;
    double latency_ms = 0.0;
    Usage usage;
    int retry_count = 0;
    std::string request_excerpt;
    std::string response_excerpt;
};

// Thread-safe request/response log; optionally mirrored to a JSONL file.
class CallLog {
public:
    explicit CallLog(std::size_t excerpt_limit = 400) : excerpt_limit_(excerpt_limit) {}

    void open_file(const std::string& path);
    void record(CallLogEntry entry);
    std::vector<CallLogEntry> entries() const;

private:
    std::size_t excerpt_limit_;
    mutable std::mutex mutex_;
    std::vector<CallLogEntry> entries_;
    std::unique_ptr<std::ostream> file_;
};

class ChatClient {
public:
    virtual ~ChatClient() = default;
    // Returns assistant text. Transient failures (timeouts, 5xx, 429) are
    // retried with exponential backoff up to config.max_retries.
    virtual Completion complete(const ModelConfig& config,
                                const std::vector<ChatMessage>& messages) = 0;
};

// OpenAI-style chat-completions client over HTTP.
class HttpChatClient : public ChatClient {
public:
    HttpChatClient(std::shared_ptr<RateLimiter> limiter, std::shared_ptr<TokenBudget> budget,
                   std::shared_ptr<CallLog> log);

    Completion complete(const ModelConfig& config,
                        const std::vector<ChatMessage>& messages) override;

private:
    std::shared_ptr<RateLimiter> limiter_;
    std::shared_ptr<TokenBudget> budget_;
    std::shared_ptr<CallLog> log_;
};

// Deterministic stand-in for tests and offline runs. Replies come from, in
// priority order: a handler function, a keyed canned map, or a FIFO queue.
class MockChatClient : public ChatClient {
public:
    using Handler = std::function<std::string(const std::vector<ChatMessage>&)>;

    MockChatClient() = default;
    explicit MockChatClient(Handler handler) : handler_(std::move(handler)) {}

    void set_handler(Handler handler) { handler_ = std::move(handler); }
    void enqueue(std::string reply);
    // Canned reply for any conversation whose final user message hashes to key.
    void add_keyed(const std::string& message, std::string reply);

    void attach_budget(std::shared_ptr<TokenBudget> budget) { budget_ = std::move(budget); }
    void attach_log(std::shared_ptr<CallLog> log) { log_ = std::move(log); }

    int calls() const { return calls_; }

    Completion complete(const ModelConfig& config,
                        const std::vector<ChatMessage>& messages) override;

private:
    Handler handler_;
    std::mutex mutex_;
    std::deque<std::string> queue_;
    std::unordered_map<std::uint64_t, std::string> keyed_;
    std::shared_ptr<TokenBudget> budget_;
    std::shared_ptr<CallLog> log_;
    std::atomic<int> calls_{0};
};

// FNV-1a, used for canned-reply keys and transcript state digests.
std::uint64_t fnv1a(std::string_view data);

}  // namespace hanabench
