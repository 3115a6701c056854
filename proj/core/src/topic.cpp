#include "multifact/topic.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "multifact/errors.hpp"

namespace multifact {

namespace {

Topic topic_from_json(const nlohmann::json& j) {
    Topic t;
    t.id = j.at("id").get<std::string>();
    t.country = j.at("country").get<std::string>();
    t.leader_name = j.at("leader_name").get<std::string>();
    for (const auto& [code, name] : j.at("name_by_language").items()) {
        t.name_by_language[parse_language(code)] = name.get<std::string>();
    }
    t.geo.continent = parse_continent(j.at("geo").at("continent").get<std::string>());
    t.geo.subregion = j.at("geo").at("subregion").get<std::string>();
    t.wikipedia_title = j.at("wikipedia_title").get<std::string>();

    if (t.id.empty()) throw Error("roster entry with empty id");
    if (t.wikipedia_title.empty()) throw Error("roster entry " + t.id + ": empty wikipedia_title");
    if (t.name_by_language.size() != kAllLanguages.size()) {
        throw Error("roster entry " + t.id + ": name_by_language must cover all nine languages");
    }
    return t;
}

}  // namespace

std::vector<Topic> parse_roster_jsonl(const std::string& jsonl_body) {
    std::vector<Topic> roster;
    std::set<std::string> seen;
    std::istringstream in(jsonl_body);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Topic t = topic_from_json(nlohmann::json::parse(line));
        if (!seen.insert(t.id).second) throw Error("duplicate roster id: " + t.id);
        roster.push_back(std::move(t));
    }
    return roster;
}

std::vector<Topic> load_roster(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open roster file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return parse_roster_jsonl(body.str());
}

std::string topic_to_json_line(const Topic& topic) {
    nlohmann::json names;
    for (const auto& [lang, name] : topic.name_by_language) names[to_string(lang)] = name;
    nlohmann::json j{
        {"id", topic.id},
        {"country", topic.country},
        {"leader_name", topic.leader_name},
        {"name_by_language", names},
        {"geo", {{"continent", to_string(topic.geo.continent)}, {"subregion", topic.geo.subregion}}},
        {"wikipedia_title", topic.wikipedia_title},
    };
    return j.dump();
}

}  // namespace multifact
