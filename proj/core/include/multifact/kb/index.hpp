#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "multifact/kb/document.hpp"

namespace multifact::kb {

struct PassageId {
    std::string title;
    int ordinal = 0;

    auto operator<=>(const PassageId&) const = default;
    std::string to_string() const { return title + "#" + std::to_string(ordinal); }
};

struct Passage {
    PassageId id;
    std::string text;
    int token_count = 0;
};

// Sliding whitespace-token windows over the document. Every source token
// lands in at least one passage; the last partial window is kept.
std::vector<Passage> chunk_document(const KnowledgeDocument& doc, int window, int stride);

struct CorpusStats {
    int n_passages = 0;
    double avg_passage_length = 0.0;
    std::map<std::string, int> document_frequency;
};

inline constexpr double kBm25K1 = 1.2;
inline constexpr double kBm25B = 0.75;

struct Posting {
    PassageId passage_id;
    int term_frequency = 0;
};

class RetrievalIndex {
public:
    static RetrievalIndex build(std::vector<Passage> passages);  // throws EmptyCorpus

    // Top-k by BM25 score descending, ties broken by ascending passage id.
    // Result length is min(k, n_passages); zero-score passages pad the tail.
    std::vector<std::pair<PassageId, double>> retrieve(const std::string& query, int k) const;

    const std::vector<Passage>& passages() const { return passages_; }
    const CorpusStats& stats() const { return stats_; }
    const Passage& passage(const PassageId& id) const;

    // Versioned JSON persistence; byte-identical across runs for fixed input.
    std::string serialize() const;
    static RetrievalIndex deserialize(const std::string& body);

private:
    std::vector<Passage> passages_;
    CorpusStats stats_;
    std::map<std::string, std::vector<Posting>> postings_;
};

// Okapi BM25 with k1=1.2, b=0.75 and IDF = ln((N - df + 0.5)/(df + 0.5) + 1),
// summed over the query multiset; terms absent from the passage contribute 0.
double bm25_score(const std::vector<std::string>& query_terms, const Passage& passage,
                  const CorpusStats& stats);

}  // namespace multifact::kb
