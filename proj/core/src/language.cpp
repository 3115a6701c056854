#include "multifact/language.hpp"

#include "multifact/errors.hpp"

namespace multifact {

std::string to_string(LanguageCode lang) {
    switch (lang) {
        case LanguageCode::en: return "en";
        case LanguageCode::de: return "de";
        case LanguageCode::fr: return "fr";
        case LanguageCode::es: return "es";
        case LanguageCode::ar: return "ar";
        case LanguageCode::sw: return "sw";
        case LanguageCode::zh: return "zh";
        case LanguageCode::ko: return "ko";
        case LanguageCode::bn: return "bn";
    }
    throw Error("invalid LanguageCode value");
}

LanguageCode parse_language(std::string_view code) {
    for (LanguageCode lang : kAllLanguages) {
        if (to_string(lang) == code) return lang;
    }
    throw Error("unknown language code: " + std::string(code));
}

std::string language_name(LanguageCode lang) {
    switch (lang) {
        case LanguageCode::en: return "English";
        case LanguageCode::de: return "German";
        case LanguageCode::fr: return "French";
        case LanguageCode::es: return "Spanish";
        case LanguageCode::ar: return "Arabic";
        case LanguageCode::sw: return "Swahili";
        case LanguageCode::zh: return "Chinese";
        case LanguageCode::ko: return "Korean";
        case LanguageCode::bn: return "Bengali";
    }
    throw Error("invalid LanguageCode value");
}

}  // namespace multifact
