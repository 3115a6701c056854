#include "multifact/tokenize.hpp"

#include <cctype>
#include <unordered_set>

namespace multifact {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (c < 0x80) {
            if (std::isalnum(c)) {
                current.push_back(static_cast<char>(std::tolower(c)));
            } else if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(static_cast<char>(c));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

bool is_stopword(std::string_view token) {
    static const std::unordered_set<std::string_view> kStopwords = {
        "a",    "an",   "and",  "are",  "as",   "at",   "be",   "been", "but",
        "by",   "for",  "from", "had",  "has",  "have", "he",   "her",  "his",
        "i",    "in",   "is",   "it",   "its",  "of",   "on",   "or",   "she",
        "that", "the",  "their", "they", "this", "to",   "was",  "were", "which",
        "who",  "will", "with"};
    return kStopwords.contains(token);
}

std::vector<std::string> content_tokens(std::string_view text) {
    std::vector<std::string> result;
    for (auto& tok : tokenize(text)) {
        if (!is_stopword(tok)) result.push_back(std::move(tok));
    }
    return result;
}

}  // namespace multifact
