#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "multifact/kb/document.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/mock_corpus.hpp"

namespace multifact::kb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::int64_t now_unix() {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

void atomic_write(const fs::path& target, const std::string& body) {
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << body;
    }
    fs::rename(tmp, target);
}

}  // namespace

std::string percent_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        bool safe = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
        if (safe) {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

KnowledgeDocument parse_mediawiki_extract(const std::string& title, const std::string& body) {
    json j = json::parse(body);
    const auto& pages = j.at("query").at("pages");
    for (const auto& [page_id, page] : pages.items()) {
        if (page.contains("missing") || page_id == "-1") throw ArticleNotFound(title);
        KnowledgeDocument doc;
        doc.wikipedia_title = title;
        doc.plain_text = page.at("extract").get<std::string>();
        if (page.contains("revisions") && !page["revisions"].empty()) {
            doc.revision_id = std::to_string(page["revisions"][0].at("revid").get<std::int64_t>());
        }
        doc.fetched_at = now_unix();
        if (doc.plain_text.empty()) throw ArticleNotFound(title);
        return doc;
    }
    throw ArticleNotFound(title);
}

WikipediaFetcher::WikipediaFetcher(FetchOptions options) : options_(std::move(options)) {}

KnowledgeDocument WikipediaFetcher::fetch(const std::string& title) {
    if (title.empty()) throw Error("fetch_article: title must be non-empty");
    std::string path =
        "/w/api.php?action=query&prop=extracts%7Crevisions&explaintext=1&redirects=1"
        "&rvprop=ids&format=json&titles=" +
        percent_encode(title);

    double backoff = options_.initial_backoff_seconds;
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= options_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(backoff));
            backoff *= 2.0;
        }
        httplib::SSLClient client(options_.api_host);
        client.set_follow_location(true);
        auto res = client.Get(path);
        if (!res) {
            last_error = "transport failure: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status >= 500 || res->status == 429) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status != 200) {
            throw NetworkError("Wikipedia API returned HTTP " + std::to_string(res->status) +
                               " for title: " + title);
        }
        return parse_mediawiki_extract(title, res->body);
    }
    throw NetworkError("Wikipedia fetch failed after retries (" + last_error +
                       ") for title: " + title);
}

KnowledgeDocument SyntheticFetcher::fetch(const std::string& title) {
    if (title.empty()) throw Error("fetch_article: title must be non-empty");
    KnowledgeDocument doc;
    doc.wikipedia_title = title;
    doc.revision_id = "synthetic-1";
    doc.plain_text = mock_corpus::synthetic_article(title);
    doc.fetched_at = 0;  // fixed so cached bytes are run-independent
    return doc;
}

CachingFetcher::CachingFetcher(std::string cache_dir, std::shared_ptr<ArticleFetcher> inner)
    : cache_dir_(std::move(cache_dir)), inner_(std::move(inner)) {
    fs::create_directories(cache_dir_);
}

std::string CachingFetcher::cache_path(const std::string& title) const {
    return (fs::path(cache_dir_) / (percent_encode(title) + ".json")).string();
}

bool CachingFetcher::is_cached(const std::string& title) const {
    return fs::exists(cache_path(title));
}

KnowledgeDocument CachingFetcher::fetch(const std::string& title) {
    if (title.empty()) throw Error("fetch_article: title must be non-empty");
    fs::path path = cache_path(title);
    if (fs::exists(path)) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        json j = json::parse(body.str());
        KnowledgeDocument doc;
        doc.wikipedia_title = j.at("wikipedia_title").get<std::string>();
        doc.revision_id = j.at("revision_id").get<std::string>();
        doc.plain_text = j.at("plain_text").get<std::string>();
        doc.fetched_at = j.at("fetched_at").get<std::int64_t>();
        return doc;
    }
    KnowledgeDocument doc = inner_->fetch(title);
    json j{{"wikipedia_title", doc.wikipedia_title},
           {"revision_id", doc.revision_id},
           {"plain_text", doc.plain_text},
           {"fetched_at", doc.fetched_at}};
    atomic_write(path, j.dump());
    return doc;
}

}  // namespace multifact::kb
