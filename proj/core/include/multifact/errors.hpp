#pragma once

#include <stdexcept>
#include <string>

namespace multifact {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// domain-core
struct EmptyFactList : Error {
    EmptyFactList() : Error("factscore over an empty verdict list is undefined") {}
};

// knowledge-store
struct ArticleNotFound : Error {
    explicit ArticleNotFound(const std::string& title)
        : Error("no Wikipedia page for title: " + title) {}
};
struct NetworkError : Error {
    using Error::Error;
};
struct EmptyCorpus : Error {
    EmptyCorpus() : Error("retrieval index has no passages") {}
};

// llm-gateway
struct MissingTemplate : Error {
    explicit MissingTemplate(const std::string& what) : Error("missing template: " + what) {}
};
struct UnboundPlaceholder : Error {
    explicit UnboundPlaceholder(const std::string& name)
        : Error("unbound placeholder: {" + name + "}") {}
};
struct BackendUnavailable : Error {
    using Error::Error;
};
struct AuthError : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    explicit BudgetExceeded(long ceiling)
        : Error("call budget exhausted (ceiling " + std::to_string(ceiling) + ")") {}
};

// pipeline
struct SkippedRefusal : Error {
    SkippedRefusal() : Error("generation was a refusal; nothing to translate") {}
};
struct ConfigDrift : Error {
    using Error::Error;
};

// analytics
struct InsufficientData : Error {
    using Error::Error;
};
struct NoOverlap : Error {
    NoOverlap() : Error("score sets share no ids") {}
};

}  // namespace multifact
