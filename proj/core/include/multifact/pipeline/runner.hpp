#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multifact/pipeline/config.hpp"
#include "multifact/pipeline/stages.hpp"
#include "multifact/topic.hpp"

namespace multifact::pipeline {

struct RunSummary {
    int units_total = 0;
    int units_completed = 0;  // this invocation, resumed units excluded
    int units_skipped = 0;    // already present on resume
    int units_failed = 0;
};

struct RunOptions {
    std::vector<std::string> topic_filter;  // empty = all roster topics
    int max_units = 0;                      // stop after N completed units; 0 = no limit
    std::function<void(const std::string& topic_id, LanguageCode lang, bool ok)> on_unit;
};

// Evaluates the (topic x language) grid into run_dir:
//   manifest.json, generations.jsonl, translations.jsonl, facts.jsonl,
//   verdicts.jsonl, evaluations.jsonl (+ failures.jsonl on errors).
// All lines for a unit are appended together once the unit completes, so a
// resumed run can skip exactly the units already in evaluations.jsonl.
// Resume refuses with ConfigDrift when the manifest's config hash differs.
RunSummary run_evaluation(const std::vector<Topic>& roster, const RunConfig& config,
                          const std::string& run_dir, const RunOptions& options = {});

// (topic_id, language) pairs already evaluated in a run directory.
std::vector<std::pair<std::string, LanguageCode>> completed_units(const std::string& run_dir);

}  // namespace multifact::pipeline
