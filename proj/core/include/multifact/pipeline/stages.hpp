#pragma once

#include <memory>
#include <string>
#include <vector>

#include "multifact/kb/document.hpp"
#include "multifact/kb/index.hpp"
#include "multifact/llm/backend.hpp"
#include "multifact/pipeline/config.hpp"
#include "multifact/records.hpp"
#include "multifact/topic.hpp"

namespace multifact::pipeline {

// Shared, read-only services for one run. Safe to use from many workers.
struct StageContext {
    const RunConfig* config;
    const llm::TemplateRegistry* templates;
    llm::Gateway* gateway;
    kb::ArticleFetcher* fetcher;
};

// Rule-based segmenter: terminal punctuation plus a small abbreviation
// list, frozen so decomposition granularity is reproducible.
std::vector<std::string> segment_sentences(const std::string& text);

// True iff the text matches a configured refusal marker (substring match
// after ASCII lowercasing) or falls below the minimum token length.
bool detect_refusal(const std::string& text, LanguageCode language, int min_tokens = 5);

GenerationRecord generate_biography(const Topic& topic, LanguageCode language,
                                    const StageContext& ctx);

// language=en is a verbatim passthrough (translator_model_id "identity");
// everything else is one whole-text translation call.
TranslationRecord translate_to_english(const GenerationRecord& record, const StageContext& ctx);

std::vector<AtomicFact> decompose(const std::string& english_text, const StageContext& ctx);

Verdict verify_fact(const AtomicFact& fact, const kb::RetrievalIndex& index,
                    const StageContext& ctx);

// NPM surrogate: fraction of the fact's content tokens present in the best
// retrieved passage.
double lexical_support(const std::string& fact_text, const std::string& passage_text);

struct TopicEvaluation {
    GenerationRecord generation;
    std::optional<TranslationRecord> translation;  // absent on refusal
    std::vector<AtomicFact> facts;
    std::vector<Verdict> verdicts;
    BiographyEvaluation evaluation;
};

// generate -> translate -> decompose -> verify -> score for one grid cell.
TopicEvaluation evaluate_topic(const Topic& topic, LanguageCode language, const StageContext& ctx);

}  // namespace multifact::pipeline
