#include "multifact/kb/index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/tokenize.hpp"

namespace multifact::kb {

using nlohmann::json;

std::vector<Passage> chunk_document(const KnowledgeDocument& doc, int window, int stride) {
    if (window <= 0) throw Error("chunk_document: window must be positive");
    if (stride <= 0 || stride > window) throw Error("chunk_document: need 0 < stride <= window");

    std::vector<std::string> tokens;
    {
        std::istringstream in(doc.plain_text);
        std::string tok;
        while (in >> tok) tokens.push_back(tok);
    }

    std::vector<Passage> passages;
    int n = static_cast<int>(tokens.size());
    for (int start = 0; start < n; start += stride) {
        int end = std::min(start + window, n);
        Passage p;
        p.id = {doc.wikipedia_title, static_cast<int>(passages.size())};
        p.token_count = end - start;
        std::string text;
        for (int i = start; i < end; ++i) {
            if (!text.empty()) text.push_back(' ');
            text += tokens[i];
        }
        p.text = std::move(text);
        passages.push_back(std::move(p));
    }
    return passages;
}

RetrievalIndex RetrievalIndex::build(std::vector<Passage> passages) {
    if (passages.empty()) throw EmptyCorpus();
    RetrievalIndex index;
    index.passages_ = std::move(passages);
    index.stats_.n_passages = static_cast<int>(index.passages_.size());

    long total_tokens = 0;
    for (const Passage& p : index.passages_) {
        auto terms = tokenize(p.text);
        total_tokens += static_cast<long>(terms.size());
        std::map<std::string, int> tf;
        for (const auto& t : terms) ++tf[t];
        for (const auto& [term, freq] : tf) {
            index.postings_[term].push_back({p.id, freq});
            ++index.stats_.document_frequency[term];
        }
    }
    index.stats_.avg_passage_length =
        static_cast<double>(total_tokens) / static_cast<double>(index.stats_.n_passages);
    return index;
}

double bm25_score(const std::vector<std::string>& query_terms, const Passage& passage,
                  const CorpusStats& stats) {
    std::map<std::string, int> tf;
    for (const auto& t : tokenize(passage.text)) ++tf[t];
    double passage_len = 0;
    for (const auto& [term, freq] : tf) passage_len += freq;

    double score = 0.0;
    for (const auto& term : query_terms) {
        auto tf_it = tf.find(term);
        if (tf_it == tf.end()) continue;
        auto df_it = stats.document_frequency.find(term);
        int df = df_it == stats.document_frequency.end() ? 0 : df_it->second;
        double idf = std::log((stats.n_passages - df + 0.5) / (df + 0.5) + 1.0);
        double freq = tf_it->second;
        double norm = freq + kBm25K1 * (1.0 - kBm25B + kBm25B * passage_len / stats.avg_passage_length);
        score += idf * freq * (kBm25K1 + 1.0) / norm;
    }
    return score;
}

const Passage& RetrievalIndex::passage(const PassageId& id) const {
    for (const Passage& p : passages_) {
        if (p.id == id) return p;
    }
    throw Error("unknown passage id: " + id.to_string());
}

std::vector<std::pair<PassageId, double>> RetrievalIndex::retrieve(const std::string& query,
                                                                   int k) const {
    if (k < 1) throw Error("retrieve: k must be >= 1");
    if (passages_.empty()) throw EmptyCorpus();

    // Accumulate scores via postings, then pad with zero-score passages so
    // k > number of matching passages still returns min(k, n).
    std::map<PassageId, double> scores;
    std::map<PassageId, double> passage_len;
    std::vector<std::string> query_terms = tokenize(query);

    for (const auto& term : query_terms) {
        auto it = postings_.find(term);
        if (it == postings_.end()) continue;
        int df = stats_.document_frequency.at(term);
        double idf = std::log((stats_.n_passages - df + 0.5) / (df + 0.5) + 1.0);
        for (const Posting& post : it->second) {
            if (!passage_len.contains(post.passage_id)) {
                passage_len[post.passage_id] =
                    static_cast<double>(tokenize(passage(post.passage_id).text).size());
            }
            double freq = post.term_frequency;
            double norm = freq + kBm25K1 * (1.0 - kBm25B +
                                            kBm25B * passage_len[post.passage_id] /
                                                stats_.avg_passage_length);
            scores[post.passage_id] += idf * freq * (kBm25K1 + 1.0) / norm;
        }
    }

    std::vector<std::pair<PassageId, double>> ranked;
    ranked.reserve(passages_.size());
    for (const Passage& p : passages_) {
        auto it = scores.find(p.id);
        ranked.emplace_back(p.id, it == scores.end() ? 0.0 : it->second);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(k);
    return ranked;
}

namespace {
constexpr int kIndexFormatVersion = 1;
}

std::string RetrievalIndex::serialize() const {
    json jpassages = json::array();
    for (const Passage& p : passages_) {
        jpassages.push_back({{"title", p.id.title},
                             {"ordinal", p.id.ordinal},
                             {"text", p.text},
                             {"token_count", p.token_count}});
    }
    json jpostings;
    for (const auto& [term, posts] : postings_) {
        json arr = json::array();
        for (const Posting& post : posts) {
            arr.push_back({{"title", post.passage_id.title},
                           {"ordinal", post.passage_id.ordinal},
                           {"tf", post.term_frequency}});
        }
        jpostings[term] = std::move(arr);
    }
    json j{{"format_version", kIndexFormatVersion},
           {"passages", std::move(jpassages)},
           {"stats",
            {{"n_passages", stats_.n_passages},
             {"avg_passage_length", stats_.avg_passage_length},
             {"document_frequency", stats_.document_frequency}}},
           {"postings", std::move(jpostings)}};
    return j.dump();
}

RetrievalIndex RetrievalIndex::deserialize(const std::string& body) {
    json j = json::parse(body);
    if (j.at("format_version").get<int>() != kIndexFormatVersion) {
        throw Error("unsupported index format version");
    }
    std::vector<Passage> passages;
    for (const auto& jp : j.at("passages")) {
        passages.push_back({{jp.at("title").get<std::string>(), jp.at("ordinal").get<int>()},
                            jp.at("text").get<std::string>(),
                            jp.at("token_count").get<int>()});
    }
    // Rebuild postings from passages; the invariant says this reproduces
    // the serialized ones exactly.
    return RetrievalIndex::build(std::move(passages));
}

}  // namespace multifact::kb
