#include "multifact/pipeline/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/hash.hpp"

namespace multifact::pipeline {

using nlohmann::json;

namespace {

json backend_to_json(const llm::BackendSpec& b) {
    return json{{"kind", llm::to_string(b.kind)},
                {"model_id", b.model_id},
                {"endpoint_url", b.endpoint_url},
                {"credentials_env_var", b.credentials_env_var},
                {"max_retries", b.max_retries},
                {"timeout_seconds", b.timeout_seconds},
                {"requests_per_second", b.requests_per_second},
                {"mock_true_claims", b.mock_true_claims},
                {"mock_false_claims", b.mock_false_claims},
                {"mock_refuse", b.mock_refuse}};
}

llm::BackendSpec backend_from_json(const json& j) {
    llm::BackendSpec b;
    b.kind = llm::parse_backend_kind(j.at("kind").get<std::string>());
    b.model_id = j.at("model_id").get<std::string>();
    b.endpoint_url = j.value("endpoint_url", std::string{});
    b.credentials_env_var = j.value("credentials_env_var", std::string{});
    b.max_retries = j.value("max_retries", 3);
    b.timeout_seconds = j.value("timeout_seconds", 60.0);
    b.requests_per_second = j.value("requests_per_second", 0.0);
    b.mock_true_claims = j.value("mock_true_claims", 3);
    b.mock_false_claims = j.value("mock_false_claims", 2);
    b.mock_refuse = j.value("mock_refuse", false);
    if (b.model_id.empty()) throw Error("config: backend model_id must be non-empty");
    return b;
}

}  // namespace

RunConfig RunConfig::from_json(const std::string& body) {
    json j = json::parse(body);
    RunConfig c;

    const auto& jb = j.at("backends");
    c.backends.generation = backend_from_json(jb.at("generation"));
    c.backends.translation = backend_from_json(jb.at("translation"));
    c.backends.decomposition = backend_from_json(jb.at("decomposition"));
    c.backends.verification = backend_from_json(jb.at("verification"));

    if (j.contains("knowledge")) {
        const auto& jk = j["knowledge"];
        c.knowledge.window = jk.value("window", c.knowledge.window);
        c.knowledge.stride = jk.value("stride", c.knowledge.stride);
        c.knowledge.top_k = jk.value("top_k", c.knowledge.top_k);
        c.knowledge.cache_dir = jk.value("cache_dir", c.knowledge.cache_dir);
        c.knowledge.source = jk.value("source", c.knowledge.source);
    }
    if (c.knowledge.window <= 0 || c.knowledge.stride <= 0 ||
        c.knowledge.stride > c.knowledge.window || c.knowledge.top_k < 1) {
        throw Error("config: invalid knowledge chunking parameters");
    }
    if (c.knowledge.source != "wikipedia" && c.knowledge.source != "synthetic") {
        throw Error("config: knowledge.source must be wikipedia or synthetic");
    }

    if (j.contains("verification")) {
        const auto& jv = j["verification"];
        c.verification.npm_threshold = jv.value("npm_threshold", c.verification.npm_threshold);
        c.verification.ensemble = jv.value("ensemble", c.verification.ensemble);
    }
    if (c.verification.ensemble != "judge_and_lexical" && c.verification.ensemble != "judge_only") {
        throw Error("config: verification.ensemble must be judge_and_lexical or judge_only");
    }

    if (j.contains("run")) {
        const auto& jr = j["run"];
        if (jr.contains("languages")) {
            c.run.languages.clear();
            for (const auto& code : jr["languages"]) {
                c.run.languages.push_back(parse_language(code.get<std::string>()));
            }
        }
        c.run.temperature = jr.value("temperature", c.run.temperature);
        c.run.concurrency = jr.value("concurrency", c.run.concurrency);
        c.run.budget = jr.value("budget", c.run.budget);
        c.run.seed = jr.value("seed", c.run.seed);
        c.run.min_refusal_tokens = jr.value("min_refusal_tokens", c.run.min_refusal_tokens);
        c.run.report_top_k = jr.value("report_top_k", c.run.report_top_k);
    }
    if (c.run.languages.empty()) throw Error("config: run.languages must be non-empty");
    if (c.run.concurrency < 1) throw Error("config: run.concurrency must be >= 1");
    if (c.run.temperature < 0) throw Error("config: run.temperature must be >= 0");

    const auto& jp = j.at("paths");
    c.paths.roster = jp.at("roster").get<std::string>();
    c.paths.templates = jp.at("templates").get<std::string>();
    c.paths.response_cache = jp.value("response_cache", c.paths.response_cache);
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open config file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return from_json(body.str());
}

std::string RunConfig::to_json() const {
    json languages = json::array();
    for (LanguageCode lang : run.languages) languages.push_back(to_string(lang));
    json j{{"backends",
            {{"generation", backend_to_json(backends.generation)},
             {"translation", backend_to_json(backends.translation)},
             {"decomposition", backend_to_json(backends.decomposition)},
             {"verification", backend_to_json(backends.verification)}}},
           {"knowledge",
            {{"window", knowledge.window},
             {"stride", knowledge.stride},
             {"top_k", knowledge.top_k},
             {"cache_dir", knowledge.cache_dir},
             {"source", knowledge.source}}},
           {"verification",
            {{"npm_threshold", verification.npm_threshold}, {"ensemble", verification.ensemble}}},
           {"run",
            {{"languages", std::move(languages)},
             {"temperature", run.temperature},
             {"concurrency", run.concurrency},
             {"budget", run.budget},
             {"seed", run.seed},
             {"min_refusal_tokens", run.min_refusal_tokens},
             {"report_top_k", run.report_top_k}}},
           {"paths",
            {{"roster", paths.roster},
             {"templates", paths.templates},
             {"response_cache", paths.response_cache}}}};
    return j.dump(2);
}

std::string RunConfig::hash() const { return hex64(fnv1a64(to_json())); }

}  // namespace multifact::pipeline
