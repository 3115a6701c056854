#include "multifact/llm/templates.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "multifact/errors.hpp"
#include "multifact/hash.hpp"

namespace multifact::llm {

using nlohmann::json;

std::string to_string(TemplateId id) {
    switch (id) {
        case TemplateId::biography: return "biography";
        case TemplateId::translate: return "translate";
        case TemplateId::decompose: return "decompose";
        case TemplateId::verify: return "verify";
    }
    throw Error("invalid TemplateId value");
}

TemplateId parse_template_id(const std::string& s) {
    if (s == "biography") return TemplateId::biography;
    if (s == "translate") return TemplateId::translate;
    if (s == "decompose") return TemplateId::decompose;
    if (s == "verify") return TemplateId::verify;
    throw Error("unknown template id: " + s);
}

namespace {

struct Segment {
    bool is_placeholder;
    std::string value;  // literal text or placeholder name
};

// "Write a biography of {name}" -> ["Write a biography of ", {name}]
std::vector<Segment> parse_segments(const std::string& text) {
    std::vector<Segment> segments;
    std::string literal;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '{') {
            auto close = text.find('}', i);
            if (close == std::string::npos) {
                literal.push_back('{');
                continue;
            }
            if (!literal.empty()) segments.push_back({false, literal});
            literal.clear();
            segments.push_back({true, text.substr(i + 1, close - i - 1)});
            i = close;
        } else {
            literal.push_back(text[i]);
        }
    }
    if (!literal.empty()) segments.push_back({false, literal});
    return segments;
}

}  // namespace

TemplateRegistry TemplateRegistry::from_json(const std::string& body) {
    TemplateRegistry registry;
    for (const auto& jt : json::parse(body)) {
        registry.templates_.push_back({parse_template_id(jt.at("template_id").get<std::string>()),
                                       parse_language(jt.at("language").get<std::string>()),
                                       jt.at("text").get<std::string>()});
    }
    return registry;
}

TemplateRegistry TemplateRegistry::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open template file: " + path);
    std::ostringstream body;
    body << in.rdbuf();
    return from_json(body.str());
}

const PromptTemplate& TemplateRegistry::get(TemplateId id, LanguageCode lang) const {
    for (const auto& t : templates_) {
        if (t.template_id == id && t.language == lang) return t;
    }
    throw MissingTemplate(to_string(id) + "/" + multifact::to_string(lang));
}

std::string TemplateRegistry::render(TemplateId id, LanguageCode lang,
                                     const std::map<std::string, std::string>& bindings) const {
    const PromptTemplate& tmpl = get(id, lang);
    std::string out;
    for (const Segment& seg : parse_segments(tmpl.text)) {
        if (!seg.is_placeholder) {
            out += seg.value;
        } else {
            auto it = bindings.find(seg.value);
            if (it == bindings.end()) throw UnboundPlaceholder(seg.value);
            out += it->second;
        }
    }
    return out;
}

std::optional<TemplateMatch> TemplateRegistry::match(const std::string& prompt) const {
    for (const auto& tmpl : templates_) {
        auto segments = parse_segments(tmpl.text);
        std::map<std::string, std::string> bindings;
        std::size_t pos = 0;
        bool ok = true;
        for (std::size_t s = 0; s < segments.size() && ok; ++s) {
            const Segment& seg = segments[s];
            if (!seg.is_placeholder) {
                if (prompt.compare(pos, seg.value.size(), seg.value) != 0) {
                    ok = false;
                } else {
                    pos += seg.value.size();
                }
            } else {
                // Placeholder value extends to the next literal segment, or
                // to end of prompt for a trailing placeholder.
                if (s + 1 < segments.size()) {
                    const std::string& next = segments[s + 1].value;
                    auto found = prompt.find(next, pos);
                    if (found == std::string::npos) {
                        ok = false;
                    } else {
                        bindings[seg.value] = prompt.substr(pos, found - pos);
                        pos = found;
                    }
                } else {
                    bindings[seg.value] = prompt.substr(pos);
                    pos = prompt.size();
                }
            }
        }
        if (ok && pos == prompt.size()) {
            return TemplateMatch{tmpl.template_id, tmpl.language, std::move(bindings)};
        }
    }
    return std::nullopt;
}

std::uint64_t TemplateRegistry::content_hash() const {
    std::string canonical;
    for (const auto& t : templates_) {
        canonical += to_string(t.template_id) + "\x1f" + multifact::to_string(t.language) +
                     "\x1f" + t.text + "\x1e";
    }
    return fnv1a64(canonical);
}

}  // namespace multifact::llm
