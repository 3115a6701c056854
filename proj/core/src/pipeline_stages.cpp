#include "multifact/pipeline/stages.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <set>
#include <sstream>

#include "multifact/errors.hpp"
#include "multifact/scoring.hpp"
#include "multifact/tokenize.hpp"

namespace multifact::pipeline {

namespace {

std::int64_t now_unix() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

std::string ascii_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return c < 0x80 ? std::tolower(c) : c; });
    return out;
}

bool is_abbreviation(const std::string& word) {
    static const std::set<std::string> kAbbreviations = {
        "mr.", "mrs.", "ms.", "dr.", "prof.", "st.", "jr.", "sr.",
        "vs.", "e.g.", "i.e.", "etc.", "u.s.", "u.k.", "no.", "gen.", "col."};
    return kAbbreviations.contains(ascii_lower(word));
}

}  // namespace

std::vector<std::string> segment_sentences(const std::string& text) {
    std::vector<std::string> sentences;
    std::string current;
    std::string current_word;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        current.push_back(c);
        if (std::isspace(static_cast<unsigned char>(c))) {
            current_word.clear();
            continue;
        }
        current_word.push_back(c);
        if (c == '.' || c == '!' || c == '?') {
            bool at_end = i + 1 == text.size();
            bool followed_by_space =
                !at_end && std::isspace(static_cast<unsigned char>(text[i + 1]));
            if ((at_end || followed_by_space) && !is_abbreviation(current_word)) {
                // trim surrounding whitespace
                auto begin = current.find_first_not_of(" \t\r\n");
                auto end = current.find_last_not_of(" \t\r\n");
                if (begin != std::string::npos) {
                    sentences.push_back(current.substr(begin, end - begin + 1));
                }
                current.clear();
                current_word.clear();
            }
        }
    }
    auto begin = current.find_first_not_of(" \t\r\n");
    if (begin != std::string::npos) {
        auto end = current.find_last_not_of(" \t\r\n");
        sentences.push_back(current.substr(begin, end - begin + 1));
    }
    return sentences;
}

bool detect_refusal(const std::string& text, LanguageCode language, int min_tokens) {
    // Markers checked in the generation language and in English; models
    // frequently refuse in English regardless of the prompt language.
    static const std::vector<std::string> kEnglishMarkers = {
        "no famous person", "i'm sorry", "i am sorry", "i cannot find", "i can't find",
        "could not find", "do not have information", "don't have information",
        "no widely known", "unable to find"};
    static const std::map<LanguageCode, std::vector<std::string>> kMarkers = {
        {LanguageCode::de, {"keine berühmte person", "es tut mir leid"}},
        {LanguageCode::fr, {"aucune personne célèbre", "je suis désolé"}},
        {LanguageCode::es, {"ninguna persona famosa", "lo siento"}},
        {LanguageCode::ar, {"لا يوجد شخص مشهور", "عذرًا"}},
        {LanguageCode::sw, {"hakuna mtu maarufu", "samahani"}},
        {LanguageCode::zh, {"没有这个名字的名人", "抱歉"}},
        {LanguageCode::ko, {"유명한 사람이 없습니다", "죄송합니다"}},
        {LanguageCode::bn, {"এই নামে কোনো বিখ্যাত ব্যক্তি নেই", "দুঃখিত"}},
    };

    std::istringstream in(text);
    std::string tok;
    int n_tokens = 0;
    while (in >> tok && n_tokens <= min_tokens) ++n_tokens;
    if (n_tokens < min_tokens) return true;

    std::string normalized = ascii_lower(text);
    for (const auto& marker : kEnglishMarkers) {
        if (normalized.find(marker) != std::string::npos) return true;
    }
    if (auto it = kMarkers.find(language); it != kMarkers.end()) {
        for (const auto& marker : it->second) {
            if (normalized.find(marker) != std::string::npos) return true;
        }
    }
    return false;
}

GenerationRecord generate_biography(const Topic& topic, LanguageCode language,
                                    const StageContext& ctx) {
    std::string prompt = ctx.templates->render(llm::TemplateId::biography, language,
                                               {{"name", topic.name_in(language)}});
    llm::CompletionRequest request;
    request.prompt = prompt;
    request.temperature = ctx.config->run.temperature;
    request.seed = ctx.config->run.seed;
    auto result = ctx.gateway->complete(ctx.config->backends.generation, request);

    GenerationRecord record;
    record.topic_id = topic.id;
    record.language = language;
    record.text = result.text;
    record.model_id = ctx.config->backends.generation.model_id;
    record.temperature = request.temperature;
    record.refusal =
        detect_refusal(result.text, language, ctx.config->run.min_refusal_tokens);
    record.created_at = now_unix();
    return record;
}

TranslationRecord translate_to_english(const GenerationRecord& record, const StageContext& ctx) {
    if (record.refusal) throw SkippedRefusal();
    TranslationRecord out;
    out.topic_id = record.topic_id;
    out.source_language = record.language;
    if (record.language == LanguageCode::en) {
        out.english_text = record.text;
        out.translator_model_id = "identity";
        return out;
    }
    std::string prompt = ctx.templates->render(
        llm::TemplateId::translate, LanguageCode::en,
        {{"source_language", language_name(record.language)}, {"text", record.text}});
    llm::CompletionRequest request;
    request.prompt = prompt;
    request.temperature = 0.0;
    request.seed = ctx.config->run.seed;
    out.english_text = ctx.gateway->complete(ctx.config->backends.translation, request).text;
    out.translator_model_id = ctx.config->backends.translation.model_id;
    return out;
}

std::vector<AtomicFact> decompose(const std::string& english_text, const StageContext& ctx) {
    if (english_text.empty()) throw Error("decompose: input text must be non-empty");
    std::vector<AtomicFact> facts;
    auto sentences = segment_sentences(english_text);
    for (std::size_t s = 0; s < sentences.size(); ++s) {
        std::string prompt = ctx.templates->render(llm::TemplateId::decompose, LanguageCode::en,
                                                   {{"sentence", sentences[s]}});
        llm::CompletionRequest request;
        request.prompt = prompt;
        request.temperature = 0.0;
        request.seed = ctx.config->run.seed;
        std::string response =
            ctx.gateway->complete(ctx.config->backends.decomposition, request).text;
        std::istringstream lines(response);
        std::string line;
        while (std::getline(lines, line)) {
            auto begin = line.find_first_not_of(" \t\r-*");
            if (begin == std::string::npos) continue;
            auto end = line.find_last_not_of(" \t\r");
            AtomicFact fact;
            fact.fact_id = static_cast<int>(facts.size());
            fact.text = line.substr(begin, end - begin + 1);
            fact.source_sentence_index = static_cast<int>(s);
            facts.push_back(std::move(fact));
        }
    }
    return facts;
}

double lexical_support(const std::string& fact_text, const std::string& passage_text) {
    auto fact_tokens = content_tokens(fact_text);
    std::set<std::string> unique(fact_tokens.begin(), fact_tokens.end());
    if (unique.empty()) return 0.0;
    auto passage_tokens = tokenize(passage_text);
    std::set<std::string> passage_set(passage_tokens.begin(), passage_tokens.end());
    int overlap = 0;
    for (const auto& t : unique) {
        if (passage_set.contains(t)) ++overlap;
    }
    return static_cast<double>(overlap) / static_cast<double>(unique.size());
}

Verdict verify_fact(const AtomicFact& fact, const kb::RetrievalIndex& index,
                    const StageContext& ctx) {
    auto retrieved = index.retrieve(fact.text, ctx.config->knowledge.top_k);

    std::string evidence;
    for (const auto& [pid, score] : retrieved) {
        if (!evidence.empty()) evidence += "\n";
        evidence += index.passage(pid).text;
    }

    std::string prompt = ctx.templates->render(llm::TemplateId::verify, LanguageCode::en,
                                               {{"evidence", evidence}, {"claim", fact.text}});
    llm::CompletionRequest request;
    request.prompt = prompt;
    request.temperature = 0.0;
    request.seed = ctx.config->run.seed;
    std::string response = ctx.gateway->complete(ctx.config->backends.verification, request).text;

    std::string normalized = ascii_lower(response);
    bool judge_supported = normalized.find("supported") != std::string::npos &&
                           normalized.find("notsupported") == std::string::npos &&
                           normalized.find("not supported") == std::string::npos;

    Verdict verdict;
    verdict.fact_id = fact.fact_id;
    verdict.judge_score = judge_supported ? 1.0 : 0.0;
    verdict.lexical_score =
        retrieved.empty() ? 0.0 : lexical_support(fact.text, index.passage(retrieved[0].first).text);
    for (const auto& [pid, score] : retrieved) verdict.evidence_passage_ids.push_back(pid.to_string());

    bool supported = judge_supported;
    if (ctx.config->verification.ensemble == "judge_and_lexical") {
        supported = supported && verdict.lexical_score >= ctx.config->verification.npm_threshold;
    }
    verdict.label = supported ? VerdictLabel::Supported : VerdictLabel::NotSupported;
    return verdict;
}

TopicEvaluation evaluate_topic(const Topic& topic, LanguageCode language,
                               const StageContext& ctx) {
    TopicEvaluation out;
    out.generation = generate_biography(topic, language, ctx);

    out.evaluation.topic_id = topic.id;
    out.evaluation.language = language;
    out.evaluation.refusal = out.generation.refusal;
    if (out.generation.refusal) return out;

    out.translation = translate_to_english(out.generation, ctx);
    out.facts = decompose(out.translation->english_text, ctx);
    if (out.facts.empty()) return out;

    kb::KnowledgeDocument doc = ctx.fetcher->fetch(topic.wikipedia_title);
    auto index = kb::RetrievalIndex::build(
        kb::chunk_document(doc, ctx.config->knowledge.window, ctx.config->knowledge.stride));

    for (const AtomicFact& fact : out.facts) {
        out.verdicts.push_back(verify_fact(fact, index, ctx));
    }
    auto [correct, hallucinated] = fact_counts(out.verdicts);
    out.evaluation.n_correct = correct;
    out.evaluation.n_hallucinated = hallucinated;
    out.evaluation.score = factscore(out.verdicts);
    return out;
}

}  // namespace multifact::pipeline
