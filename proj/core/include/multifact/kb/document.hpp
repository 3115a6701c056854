#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace multifact::kb {

// One English Wikipedia article in plain text, the reference knowledge
// source for every fact about its topic.
struct KnowledgeDocument {
    std::string wikipedia_title;
    std::string revision_id;  // recorded for reproducibility
    std::string plain_text;   // markup-free
    std::int64_t fetched_at = 0;
};

class ArticleFetcher {
public:
    virtual ~ArticleFetcher() = default;
    virtual KnowledgeDocument fetch(const std::string& title) = 0;
};

struct FetchOptions {
    std::string api_host = "en.wikipedia.org";
    int max_retries = 4;
    double initial_backoff_seconds = 0.5;
};

// Live fetch through the MediaWiki extracts API. Transient HTTP failures
// are retried with exponential backoff before surfacing as NetworkError.
class WikipediaFetcher : public ArticleFetcher {
public:
    explicit WikipediaFetcher(FetchOptions options = {});
    KnowledgeDocument fetch(const std::string& title) override;

private:
    FetchOptions options_;
};

// Deterministic articles for mock runs: every article embeds the canonical
// true-claim sentences the mock biography generator emits, so verbatim
// verification closes end to end without a network.
class SyntheticFetcher : public ArticleFetcher {
public:
    KnowledgeDocument fetch(const std::string& title) override;
};

// On-disk cache wrapper. One file per article, filename = percent-encoded
// title; cache hits never touch the inner fetcher.
class CachingFetcher : public ArticleFetcher {
public:
    CachingFetcher(std::string cache_dir, std::shared_ptr<ArticleFetcher> inner);
    KnowledgeDocument fetch(const std::string& title) override;
    bool is_cached(const std::string& title) const;

private:
    std::string cache_path(const std::string& title) const;
    std::string cache_dir_;
    std::shared_ptr<ArticleFetcher> inner_;
};

// Parses the MediaWiki API JSON response into a document. Split out so the
// wire format can be tested without a network.
KnowledgeDocument parse_mediawiki_extract(const std::string& title, const std::string& body);

std::string percent_encode(const std::string& s);

}  // namespace multifact::kb
