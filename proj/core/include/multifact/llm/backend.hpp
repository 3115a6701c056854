#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "multifact/llm/templates.hpp"

namespace multifact::llm {

enum class BackendKind { http_chat, mock };

BackendKind parse_backend_kind(const std::string& s);
std::string to_string(BackendKind kind);

struct BackendSpec {
    BackendKind kind = BackendKind::mock;
    std::string model_id = "mock-v1";
    std::string endpoint_url;          // http_chat only
    std::string credentials_env_var;   // http_chat only; never inline secrets
    int max_retries = 3;
    double timeout_seconds = 60.0;
    double requests_per_second = 0.0;  // 0 = unlimited

    // Mock knobs: the synthetic biography carries this many true / false
    // claims, or a refusal when mock_refuse is set.
    int mock_true_claims = 3;
    int mock_false_claims = 2;
    bool mock_refuse = false;
};

struct CompletionRequest {
    std::string prompt;
    double temperature = 1.0;
    int max_tokens = 1024;
    std::int64_t seed = 0;  // mock only
};

struct CompletionResult {
    std::string text;
    bool from_cache = false;
};

// Uniform completion access for all four LLM roles. Responses are cached
// on disk keyed by (model_id, prompt hash, temperature, seed); cache hits
// bypass the network entirely, which makes the cache the resumability
// substrate for the whole pipeline.
class Gateway {
public:
    // call_budget caps uncached completions; 0 means unlimited.
    Gateway(std::string cache_dir, const TemplateRegistry* registry, long call_budget = 0);

    // Throws BackendUnavailable after retries, AuthError, BudgetExceeded.
    CompletionResult complete(const BackendSpec& backend, const CompletionRequest& request);

    // Pure function of (template kind inferred from the prompt, seed, mock
    // knobs). Usable without a cache directory.
    std::string mock_complete(const BackendSpec& backend, const CompletionRequest& request) const;

    long network_calls() const { return network_calls_.load(); }

private:
    std::string cache_key(const BackendSpec& backend, const CompletionRequest& request) const;
    std::string http_complete(const BackendSpec& backend, const CompletionRequest& request);
    void throttle(const BackendSpec& backend);

    std::string cache_dir_;
    const TemplateRegistry* registry_;
    long call_budget_;
    std::atomic<long> uncached_calls_{0};
    std::atomic<long> network_calls_{0};

    std::mutex throttle_mutex_;
    std::map<std::string, std::chrono::steady_clock::time_point> next_allowed_;
};

}  // namespace multifact::llm
