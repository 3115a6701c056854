#include "multifact/records.hpp"

#include <json.hpp>

#include "multifact/errors.hpp"

namespace multifact {

using nlohmann::json;

std::string to_string(VerdictLabel label) {
    return label == VerdictLabel::Supported ? "Supported" : "NotSupported";
}

VerdictLabel parse_verdict_label(const std::string& s) {
    if (s == "Supported") return VerdictLabel::Supported;
    if (s == "NotSupported") return VerdictLabel::NotSupported;
    throw Error("unknown verdict label: " + s);
}

std::string generation_to_json_line(const GenerationRecord& r) {
    return json{{"topic_id", r.topic_id},
                {"language", to_string(r.language)},
                {"text", r.text},
                {"model_id", r.model_id},
                {"temperature", r.temperature},
                {"refusal", r.refusal},
                {"created_at", r.created_at}}
        .dump();
}

GenerationRecord generation_from_json_line(const std::string& line) {
    json j = json::parse(line);
    GenerationRecord r;
    r.topic_id = j.at("topic_id").get<std::string>();
    r.language = parse_language(j.at("language").get<std::string>());
    r.text = j.at("text").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.temperature = j.at("temperature").get<double>();
    r.refusal = j.at("refusal").get<bool>();
    r.created_at = j.at("created_at").get<std::int64_t>();
    if (r.text.empty() && !r.refusal) throw Error("empty generation text without refusal flag");
    return r;
}

std::string translation_to_json_line(const TranslationRecord& r) {
    return json{{"topic_id", r.topic_id},
                {"language", to_string(r.source_language)},
                {"english_text", r.english_text},
                {"translator_model_id", r.translator_model_id}}
        .dump();
}

TranslationRecord translation_from_json_line(const std::string& line) {
    json j = json::parse(line);
    TranslationRecord r;
    r.topic_id = j.at("topic_id").get<std::string>();
    r.source_language = parse_language(j.at("language").get<std::string>());
    r.english_text = j.at("english_text").get<std::string>();
    r.translator_model_id = j.at("translator_model_id").get<std::string>();
    return r;
}

std::string fact_to_json_line(const std::string& topic_id, LanguageCode lang, const AtomicFact& f) {
    return json{{"topic_id", topic_id},
                {"language", to_string(lang)},
                {"fact_id", f.fact_id},
                {"text", f.text},
                {"source_sentence_index", f.source_sentence_index}}
        .dump();
}

std::string verdict_to_json_line(const std::string& topic_id, LanguageCode lang, const Verdict& v) {
    return json{{"topic_id", topic_id},
                {"language", to_string(lang)},
                {"fact_id", v.fact_id},
                {"label", to_string(v.label)},
                {"judge_score", v.judge_score},
                {"lexical_score", v.lexical_score},
                {"evidence_passage_ids", v.evidence_passage_ids}}
        .dump();
}

std::string evaluation_to_json_line(const BiographyEvaluation& e) {
    json j{{"topic_id", e.topic_id},
           {"language", to_string(e.language)},
           {"score", e.score ? json(*e.score) : json(nullptr)},
           {"n_correct", e.n_correct},
           {"n_hallucinated", e.n_hallucinated},
           {"n_facts", e.n_facts()},
           {"refusal", e.refusal}};
    return j.dump();
}

BiographyEvaluation evaluation_from_json_line(const std::string& line) {
    json j = json::parse(line);
    BiographyEvaluation e;
    e.topic_id = j.at("topic_id").get<std::string>();
    e.language = parse_language(j.at("language").get<std::string>());
    if (!j.at("score").is_null()) e.score = j.at("score").get<double>();
    e.n_correct = j.at("n_correct").get<int>();
    e.n_hallucinated = j.at("n_hallucinated").get<int>();
    e.refusal = j.value("refusal", false);
    return e;
}

}  // namespace multifact
