#pragma once

#include <map>
#include <string>
#include <vector>

#include "multifact/geo.hpp"
#include "multifact/language.hpp"

namespace multifact {

// One roster entry: a (country, 2015 head-of-state) pair with geographic
// tags and the English Wikipedia title used as the knowledge source.
struct Topic {
    std::string id;           // stable slug, unique within roster
    std::string country;
    std::string leader_name;  // canonical English name
    std::map<LanguageCode, std::string> name_by_language;
    GeoTag geo;
    std::string wikipedia_title;

    const std::string& name_in(LanguageCode lang) const { return name_by_language.at(lang); }
};

// Parses a UTF-8 JSONL roster file, one Topic per line. Enforces id
// uniqueness, all nine languages present, and a non-empty wikipedia_title.
std::vector<Topic> load_roster(const std::string& path);

std::vector<Topic> parse_roster_jsonl(const std::string& jsonl_body);
std::string topic_to_json_line(const Topic& topic);

}  // namespace multifact
