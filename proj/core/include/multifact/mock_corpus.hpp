#pragma once

#include <string>

namespace multifact::mock_corpus {

// Canonical claim sentences shared by the synthetic article fetcher and
// the mock backend. True claims appear verbatim in every synthetic
// article; false claims never do. Claims are entity-free so a biography
// generated from any prompt language verifies against the same article.

inline constexpr int kMaxTrueClaims = 12;

inline std::string true_claim(int i) {
    return "The leader served in national office during term " + std::to_string(i) + ".";
}

inline std::string false_claim(int i) {
    return "The leader discovered the remote comet catalogued as object " + std::to_string(i) +
           " beyond the outer mountains.";
}

inline std::string refusal_text() {
    return "I'm sorry, but there is no famous person by that name that I can write about.";
}

inline std::string synthetic_article(const std::string& title) {
    std::string text = title + " is the subject of this reference article. ";
    for (int i = 0; i < kMaxTrueClaims; ++i) {
        text += true_claim(i) + " ";
    }
    text += "The record above summarizes the verified public service history.";
    return text;
}

}  // namespace multifact::mock_corpus
