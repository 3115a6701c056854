#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace multifact {

// Deterministic tokenizer shared by the retrieval index and the lexical
// support score: ASCII lowercasing, ASCII punctuation stripped, tokens
// split on whitespace. Non-ASCII UTF-8 bytes pass through unchanged, so
// the same byte input always yields the same tokens. No stemming.
std::vector<std::string> tokenize(std::string_view text);

// tokenize() minus a small English stopword list. Used for the NPM
// surrogate overlap score.
std::vector<std::string> content_tokens(std::string_view text);

bool is_stopword(std::string_view token);

}  // namespace multifact
