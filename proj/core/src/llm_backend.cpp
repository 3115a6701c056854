#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "multifact/llm/backend.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include <httplib.h>
#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/hash.hpp"
#include "multifact/mock_corpus.hpp"

namespace multifact::llm {

namespace fs = std::filesystem;
using nlohmann::json;

BackendKind parse_backend_kind(const std::string& s) {
    if (s == "http_chat") return BackendKind::http_chat;
    if (s == "mock") return BackendKind::mock;
    throw Error("unknown backend kind: " + s);
}

std::string to_string(BackendKind kind) {
    return kind == BackendKind::http_chat ? "http_chat" : "mock";
}

Gateway::Gateway(std::string cache_dir, const TemplateRegistry* registry, long call_budget)
    : cache_dir_(std::move(cache_dir)), registry_(registry), call_budget_(call_budget) {
    if (!cache_dir_.empty()) fs::create_directories(cache_dir_);
}

std::string Gateway::cache_key(const BackendSpec& backend, const CompletionRequest& request) const {
    std::ostringstream key;
    key << backend.model_id << '\x1f' << hex64(fnv1a64(request.prompt)) << '\x1f'
        << request.temperature << '\x1f' << request.seed;
    return hex64(fnv1a64(key.str()));
}

CompletionResult Gateway::complete(const BackendSpec& backend, const CompletionRequest& request) {
    if (request.temperature < 0) throw Error("temperature must be >= 0");
    if (backend.model_id.empty()) throw Error("backend model_id must be non-empty");

    fs::path cache_file;
    if (!cache_dir_.empty()) {
        cache_file = fs::path(cache_dir_) / (cache_key(backend, request) + ".json");
        if (fs::exists(cache_file)) {
            std::ifstream in(cache_file, std::ios::binary);
            std::ostringstream body;
            body << in.rdbuf();
            json j = json::parse(body.str());
            if (j.at("prompt").get<std::string>() == request.prompt) {
                return {j.at("response").get<std::string>(), true};
            }
            // hash collision: fall through and recompute
        }
    }

    if (call_budget_ > 0 && uncached_calls_.fetch_add(1) + 1 > call_budget_) {
        throw BudgetExceeded(call_budget_);
    }

    std::string text;
    if (backend.kind == BackendKind::mock) {
        text = mock_complete(backend, request);
    } else {
        throttle(backend);
        text = http_complete(backend, request);
    }

    if (!cache_file.empty()) {
        // Full request/response pair kept for audit.
        json j{{"model_id", backend.model_id},
               {"prompt", request.prompt},
               {"temperature", request.temperature},
               {"seed", request.seed},
               {"response", text}};
        fs::path tmp = cache_file;
        tmp += ".tmp." + std::to_string(static_cast<long>(::getpid()));
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << j.dump();
        }
        fs::rename(tmp, cache_file);
    }
    return {text, false};
}

void Gateway::throttle(const BackendSpec& backend) {
    if (backend.requests_per_second <= 0) return;
    auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / backend.requests_per_second));
    std::chrono::steady_clock::time_point wait_until;
    {
        std::lock_guard lock(throttle_mutex_);
        auto now = std::chrono::steady_clock::now();
        auto& next = next_allowed_[backend.model_id];
        if (next < now) next = now;
        wait_until = next;
        next += interval;
    }
    std::this_thread::sleep_until(wait_until);
}

std::string Gateway::http_complete(const BackendSpec& backend, const CompletionRequest& request) {
    // Chat-completions wire format: {model, messages, temperature} in,
    // first choice's message content out.
    auto scheme_end = backend.endpoint_url.find("://");
    if (scheme_end == std::string::npos) {
        throw Error("endpoint_url must include a scheme: " + backend.endpoint_url);
    }
    std::string scheme = backend.endpoint_url.substr(0, scheme_end);
    std::string rest = backend.endpoint_url.substr(scheme_end + 3);
    auto slash = rest.find('/');
    std::string host = slash == std::string::npos ? rest : rest.substr(0, slash);
    std::string path = slash == std::string::npos ? "/" : rest.substr(slash);

    json body{{"model", backend.model_id},
              {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
              {"temperature", request.temperature},
              {"max_tokens", request.max_tokens}};

    httplib::Headers headers;
    if (!backend.credentials_env_var.empty()) {
        const char* key = std::getenv(backend.credentials_env_var.c_str());
        if (!key) {
            throw AuthError("credentials env var not set: " + backend.credentials_env_var);
        }
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }

    double backoff = 0.5;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= backend.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
            backoff *= 2.0;
        }
        network_calls_.fetch_add(1);
        httplib::Result res;
        if (scheme == "https") {
            httplib::SSLClient client(host);
            client.set_read_timeout(std::chrono::duration<double>(backend.timeout_seconds));
            res = client.Post(path, headers, body.dump(), "application/json");
        } else {
            httplib::Client client(host);
            client.set_read_timeout(std::chrono::duration<double>(backend.timeout_seconds));
            res = client.Post(path, headers, body.dump(), "application/json");
        }
        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403) {
            throw AuthError("backend rejected credentials (HTTP " + std::to_string(res->status) +
                            ")");
        }
        if (res->status >= 500 || res->status == 429) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw BackendUnavailable("backend returned HTTP " + std::to_string(res->status) +
                                     ": " + res->body);
        }
        json reply = json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
    }
    throw BackendUnavailable("backend unreachable after retries (" + last_error + ")");
}

std::string Gateway::mock_complete(const BackendSpec& backend,
                                   const CompletionRequest& request) const {
    if (backend.kind != BackendKind::mock) throw Error("mock_complete requires a mock backend");
    if (!registry_) throw Error("mock backend needs a template registry to infer prompt kind");

    auto match = registry_->match(request.prompt);
    if (!match) {
        // Unrecognized prompt: echo, so ad-hoc probing stays harmless.
        return request.prompt;
    }
    switch (match->template_id) {
        case TemplateId::verify: {
            const std::string& claim = match->bindings.at("claim");
            const std::string& evidence = match->bindings.at("evidence");
            return evidence.find(claim) != std::string::npos ? "Supported" : "NotSupported";
        }
        case TemplateId::decompose:
            // One fact per input sentence.
            return match->bindings.at("sentence");
        case TemplateId::translate:
            return match->bindings.at("text");
        case TemplateId::biography: {
            if (backend.mock_refuse) return mock_corpus::refusal_text();
            int t = std::min(backend.mock_true_claims, mock_corpus::kMaxTrueClaims);
            int f = backend.mock_false_claims;
            std::string out;
            for (int i = 0; i < t; ++i) {
                if (!out.empty()) out.push_back(' ');
                out += mock_corpus::true_claim(i);
            }
            for (int j = 0; j < f; ++j) {
                if (!out.empty()) out.push_back(' ');
                out += mock_corpus::false_claim(j);
            }
            return out;
        }
    }
    return request.prompt;
}

}  // namespace multifact::llm
