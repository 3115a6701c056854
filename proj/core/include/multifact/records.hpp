#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "multifact/language.hpp"

namespace multifact {

// Raw model output for one (topic, language) cell of the grid.
struct GenerationRecord {
    std::string topic_id;
    LanguageCode language = LanguageCode::en;
    std::string text;
    std::string model_id;
    double temperature = 1.0;
    bool refusal = false;
    std::int64_t created_at = 0;  // unix seconds
};

struct TranslationRecord {
    std::string topic_id;
    LanguageCode source_language = LanguageCode::en;
    std::string english_text;
    std::string translator_model_id;
};

// One short English declarative claim extracted from a biography.
struct AtomicFact {
    int fact_id = 0;  // contiguous from 0 within a biography
    std::string text;
    int source_sentence_index = 0;
};

enum class VerdictLabel { Supported, NotSupported };

struct Verdict {
    int fact_id = 0;
    VerdictLabel label = VerdictLabel::NotSupported;
    double judge_score = 0.0;    // in [0,1]
    double lexical_score = 0.0;  // in [0,1]
    std::vector<std::string> evidence_passage_ids;
};

// Per-(topic, language) outcome. score is absent when the biography
// produced zero facts (refusal or empty decomposition); such rows are
// excluded from score aggregates and surface in the refusal rate instead.
struct BiographyEvaluation {
    std::string topic_id;
    LanguageCode language = LanguageCode::en;
    std::optional<double> score;
    int n_correct = 0;
    int n_hallucinated = 0;
    bool refusal = false;

    int n_facts() const { return n_correct + n_hallucinated; }
};

std::string to_string(VerdictLabel label);
VerdictLabel parse_verdict_label(const std::string& s);

std::string generation_to_json_line(const GenerationRecord& r);
GenerationRecord generation_from_json_line(const std::string& line);
std::string translation_to_json_line(const TranslationRecord& r);
TranslationRecord translation_from_json_line(const std::string& line);
std::string fact_to_json_line(const std::string& topic_id, LanguageCode lang, const AtomicFact& f);
std::string verdict_to_json_line(const std::string& topic_id, LanguageCode lang, const Verdict& v);
std::string evaluation_to_json_line(const BiographyEvaluation& e);
BiographyEvaluation evaluation_from_json_line(const std::string& line);

}  // namespace multifact
