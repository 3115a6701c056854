#pragma once

#include <array>
#include <string>
#include <string_view>

namespace multifact {

// The nine evaluation languages. Anything else is rejected at parse time.
enum class LanguageCode { en, de, fr, es, ar, sw, zh, ko, bn };

inline constexpr std::array<LanguageCode, 9> kAllLanguages = {
    LanguageCode::en, LanguageCode::de, LanguageCode::fr,
    LanguageCode::es, LanguageCode::ar, LanguageCode::sw,
    LanguageCode::zh, LanguageCode::ko, LanguageCode::bn};

std::string to_string(LanguageCode lang);
LanguageCode parse_language(std::string_view code);       // throws Error on unknown code
std::string language_name(LanguageCode lang);             // "English", "German", ...

}  // namespace multifact
