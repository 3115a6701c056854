#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "multifact/language.hpp"

namespace multifact::llm {

enum class TemplateId { biography, translate, decompose, verify };

std::string to_string(TemplateId id);
TemplateId parse_template_id(const std::string& s);

// Frozen prompt text with {name}-style placeholders. Non-English biography
// templates are bundled translations reviewed once, not produced at runtime.
struct PromptTemplate {
    TemplateId template_id;
    LanguageCode language;
    std::string text;
};

struct TemplateMatch {
    TemplateId template_id;
    LanguageCode language;
    std::map<std::string, std::string> bindings;
};

class TemplateRegistry {
public:
    // Loads a JSON template file: [{"template_id","language","text"}, ...].
    static TemplateRegistry load(const std::string& path);
    static TemplateRegistry from_json(const std::string& body);

    // Deterministic substitution. Throws MissingTemplate / UnboundPlaceholder;
    // a rendered prompt never contains residual {placeholder} markers.
    std::string render(TemplateId id, LanguageCode lang,
                       const std::map<std::string, std::string>& bindings) const;

    const PromptTemplate& get(TemplateId id, LanguageCode lang) const;

    // Inverse of render: recovers (template, bindings) from a rendered
    // prompt, or nullopt if no template matches. The mock backend uses this
    // to infer the template kind from the prompt alone.
    std::optional<TemplateMatch> match(const std::string& prompt) const;

    // FNV-1a 64 over the canonical serialized form; recorded in run manifests.
    std::uint64_t content_hash() const;

private:
    std::vector<PromptTemplate> templates_;
};

}  // namespace multifact::llm
