#include "multifact/scoring.hpp"

#include "multifact/errors.hpp"

namespace multifact {

double factscore(std::span<const Verdict> verdicts) {
    if (verdicts.empty()) throw EmptyFactList();
    auto [correct, hallucinated] = fact_counts(verdicts);
    return static_cast<double>(correct) / static_cast<double>(correct + hallucinated);
}

std::pair<int, int> fact_counts(std::span<const Verdict> verdicts) {
    int correct = 0;
    for (const Verdict& v : verdicts) {
        if (v.label == VerdictLabel::Supported) ++correct;
    }
    return {correct, static_cast<int>(verdicts.size()) - correct};
}

}  // namespace multifact
