#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multifact/language.hpp"
#include "multifact/llm/backend.hpp"

namespace multifact::pipeline {

// One structured config file drives a run. Every methodological constant
// (temperature 1.0, NPM threshold 0.3, top-K 20) lives here with its
// default; any stage's backend can be swapped independently.
struct RunConfig {
    struct Backends {
        llm::BackendSpec generation;
        llm::BackendSpec translation;
        llm::BackendSpec decomposition;
        llm::BackendSpec verification;
    } backends;

    struct Knowledge {
        int window = 256;
        int stride = 128;
        int top_k = 5;
        std::string cache_dir = "kb_cache";
        std::string source = "wikipedia";  // "wikipedia" | "synthetic"
    } knowledge;

    struct Verification {
        double npm_threshold = 0.3;
        std::string ensemble = "judge_and_lexical";  // or "judge_only"
    } verification;

    struct Run {
        std::vector<LanguageCode> languages = std::vector<LanguageCode>(kAllLanguages.begin(),
                                                                        kAllLanguages.end());
        double temperature = 1.0;
        int concurrency = 1;
        long budget = 0;  // max uncached completions; 0 = unlimited
        std::int64_t seed = 0;
        int min_refusal_tokens = 5;
        int report_top_k = 20;
    } run;

    struct Paths {
        std::string roster;
        std::string templates;
        std::string response_cache = "llm_cache";
    } paths;

    static RunConfig from_json(const std::string& body);
    static RunConfig load(const std::string& path);
    std::string to_json() const;  // canonical form; round-trips exactly

    // Fingerprint of the canonical serialization; resume runs refuse to
    // continue when it changes (ConfigDrift).
    std::string hash() const;
};

}  // namespace multifact::pipeline
