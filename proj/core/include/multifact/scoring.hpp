#pragma once

#include <span>
#include <utility>

#include "multifact/records.hpp"

namespace multifact {

/// Fraction of verdicts labelled Supported. Throws EmptyFactList on an
/// empty list; callers must treat the score as undefined in that case.
double factscore(std::span<const Verdict> verdicts);

/// (n_correct, n_hallucinated); hallucinated means NotSupported.
std::pair<int, int> fact_counts(std::span<const Verdict> verdicts);

}  // namespace multifact
