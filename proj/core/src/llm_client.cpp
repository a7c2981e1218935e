#include "hanabench/llm_client.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <thread>

#include "httplib.h"

#include "hanabench/errors.hpp"

namespace hanabench {

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

ModelConfig ModelConfig::from_json(const nlohmann::json& j) {
    ModelConfig c;
    c.provider_url = j.value("provider_url", "");
    c.model_name = j.value("model_name", "");
    c.temperature = j.value("temperature", 0.7);
    c.max_tokens = j.value("max_tokens", 4096);
    c.request_timeout_s = j.value("request_timeout_s", 120.0);
    c.max_retries = j.value("max_retries", 3);
    c.rate_limit_per_min = j.value("rate_limit_per_min", 60.0);
    c.api_key_env = j.value("api_key_env", "");
    c.backoff_ms = j.value("backoff_ms", 500);
    if (c.temperature < 0) throw ConfigError("temperature must be >= 0");
    if (c.rate_limit_per_min <= 0) throw ConfigError("rate limit must be > 0");
    return c;
}

nlohmann::json ModelConfig::to_json() const {
    return nlohmann::json{{"provider_url", provider_url},
                          {"model_name", model_name},
                          {"temperature", temperature},
                          {"max_tokens", max_tokens},
                          {"request_timeout_s", request_timeout_s},
                          {"max_retries", max_retries},
                          {"rate_limit_per_min", rate_limit_per_min},
                          {"api_key_env", api_key_env},
                          {"backoff_ms", backoff_ms}};
}

namespace {

double steady_seconds() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

void real_sleep(double seconds) {
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

std::string truncate(const std::string& s, std::size_t limit) {
    if (s.size() <= limit) return s;
    return s.substr(0, limit) + "...";
}

}  // namespace

RateLimiter::RateLimiter(double requests_per_minute)
    : RateLimiter(requests_per_minute, steady_seconds, real_sleep) {}

RateLimiter::RateLimiter(double requests_per_minute, Clock clock, Sleep sleep)
    : per_minute_(requests_per_minute), clock_(std::move(clock)), sleep_(std::move(sleep)) {
    if (per_minute_ <= 0) throw ConfigError("rate limit must be > 0");
}

void RateLimiter::acquire() {
    std::unique_lock lock(mutex_);
    for (;;) {
        const double now = clock_();
        while (!window_.empty() && window_.front() <= now - 60.0) {
            window_.pop_front();
        }
        if (window_.size() < static_cast<std::size_t>(per_minute_)) {
            window_.push_back(now);
            times_.push_back(now);
            return;
        }
        const double wait = window_.front() + 60.0 - now;
        lock.unlock();
        sleep_(wait > 0 ? wait : 0.001);
        lock.lock();
    }
}

void TokenBudget::charge(const Usage& usage) {
    used_ += usage.total();
    check();
}

void TokenBudget::check() const {
    if (cap_ > 0 && used_.load() > cap_) {
        throw BudgetExceeded("token budget of " + std::to_string(cap_) +
                             " exceeded (used " + std::to_string(used_.load()) + ")");
    }
}

void CallLog::open_file(const std::string& path) {
    std::lock_guard lock(mutex_);
    file_ = std::make_unique<std::ofstream>(path, std::ios::app);
}

void CallLog::record(CallLogEntry entry) {
    std::lock_guard lock(mutex_);
    entry.request_excerpt = truncate(entry.request_excerpt, excerpt_limit_);
    entry.response_excerpt = truncate(entry.response_excerpt, excerpt_limit_);
    if (file_) {
        nlohmann::json j{{"ts", entry.timestamp_s},
                         {"model", entry.model},
                         {"latency_ms", entry.latency_ms},
                         {"prompt_tokens", entry.usage.prompt_tokens},
                         {"completion_tokens", entry.usage.completion_tokens},
                         {"retries", entry.retry_count},
                         {"request", entry.request_excerpt},
                         {"response", entry.response_excerpt}};
        *file_ << j.dump() << "\n";
        file_->flush();
    }
    entries_.push_back(std::move(entry));
}

std::vector<CallLogEntry> CallLog::entries() const {
    std::lock_guard lock(mutex_);
    return entries_;
}

HttpChatClient::HttpChatClient(std::shared_ptr<RateLimiter> limiter,
                               std::shared_ptr<TokenBudget> budget,
                               std::shared_ptr<CallLog> log)
    : limiter_(std::move(limiter)), budget_(std::move(budget)), log_(std::move(log)) {}

namespace {

struct ParsedUrl {
    std::string base;        // scheme://host[:port]
    std::string path_prefix; // e.g. "/v1"
};

ParsedUrl split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("provider_url must include a scheme: " + url);
    }
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, ""};
    std::string prefix = url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {url.substr(0, path_start), prefix};
}

}  // namespace

Completion HttpChatClient::complete(const ModelConfig& config,
                                    const std::vector<ChatMessage>& messages) {
    if (messages.empty()) throw ProviderError("empty message list");
    if (budget_) budget_->check();

    nlohmann::json body;
    body["model"] = config.model_name;
    body["temperature"] = config.temperature;
    if (config.max_tokens > 0) body["max_tokens"] = config.max_tokens;
    auto& array = body["messages"] = nlohmann::json::array();
    for (const ChatMessage& m : messages) {
        array.push_back({{"role", m.role}, {"content", m.content}});
    }
    const std::string payload = body.dump();

    std::string api_key;
    if (!config.api_key_env.empty()) {
        if (const char* env = std::getenv(config.api_key_env.c_str())) {
            api_key = env;
        }
    }

    const ParsedUrl url = split_url(config.provider_url);
    httplib::Client client(url.base);
    client.set_connection_timeout(std::chrono::duration<double>(config.request_timeout_s));
    client.set_read_timeout(std::chrono::duration<double>(config.request_timeout_s));
    client.set_write_timeout(std::chrono::duration<double>(config.request_timeout_s));
    httplib::Headers headers;
    if (!api_key.empty()) headers.emplace("Authorization", "Bearer " + api_key);

    std::string last_error;
    for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
        if (attempt > 0) {
            real_sleep(config.backoff_ms / 1000.0 * static_cast<double>(1 << (attempt - 1)));
        }
        if (limiter_) limiter_->acquire();
        const double start = steady_seconds();
        auto res = client.Post(url.path_prefix + "/chat/completions", headers, payload,
                               "application/json");
        const double latency_ms = (steady_seconds() - start) * 1000.0;

        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("provider returned " + std::to_string(res->status) +
                            " (check " + config.api_key_env + ")");
        }
        if (res->status == 429 || res->status >= 500) {
            last_error = "status " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw ProviderError("provider returned " + std::to_string(res->status) + ": " +
                                truncate(res->body, 200));
        }

        nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
            throw ProviderError("malformed provider response: " + truncate(res->body, 200));
        }
        Completion out;
        out.text = reply["choices"][0]["message"].value("content", "");
        if (reply.contains("usage")) {
            out.usage.prompt_tokens = reply["usage"].value("prompt_tokens", 0);
            out.usage.completion_tokens = reply["usage"].value("completion_tokens", 0);
        } else {
            out.usage.prompt_tokens = static_cast<std::int64_t>(payload.size() / 4);
            out.usage.completion_tokens = static_cast<std::int64_t>(out.text.size() / 4);
        }
        out.retry_count = attempt;
        out.latency_ms = latency_ms;
        if (budget_) budget_->charge(out.usage);
        if (log_) {
            log_->record(CallLogEntry{steady_seconds(), config.model_name, latency_ms,
                                      out.usage, attempt, messages.back().content, out.text});
        }
        return out;
    }
    throw ProviderError("request failed after " + std::to_string(config.max_retries + 1) +
                        " attempts: " + last_error);
}

void MockChatClient::enqueue(std::string reply) {
    std::lock_guard lock(mutex_);
    queue_.push_back(std::move(reply));
}

void MockChatClient::add_keyed(const std::string& message, std::string reply) {
    std::lock_guard lock(mutex_);
    keyed_[fnv1a(message)] = std::move(reply);
}

Completion MockChatClient::complete(const ModelConfig& config,
                                    const std::vector<ChatMessage>& messages) {
    if (messages.empty()) throw ProviderError("empty message list");
    if (budget_) budget_->check();
    calls_ += 1;

    std::string text;
    if (handler_) {
        text = handler_(messages);
    } else {
        std::lock_guard lock(mutex_);
        auto it = keyed_.find(fnv1a(messages.back().content));
        if (it != keyed_.end()) {
            text = it->second;
        } else if (!queue_.empty()) {
            text = std::move(queue_.front());
            queue_.pop_front();
        } else {
            throw ProviderError("mock client has no reply configured");
        }
    }

    Completion out;
    out.text = std::move(text);
    out.usage.prompt_tokens = static_cast<std::int64_t>(messages.back().content.size() / 4);
    out.usage.completion_tokens = static_cast<std::int64_t>(out.text.size() / 4);
    if (budget_) budget_->charge(out.usage);
    if (log_) {
        log_->record(CallLogEntry{0.0, config.model_name, 0.0, out.usage, 0,
                                  messages.back().content, out.text});
    }
    return out;
}

}  // namespace hanabench
