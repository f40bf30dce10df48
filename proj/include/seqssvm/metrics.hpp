#pragma once

#include <vector>

#include "seqssvm/types.hpp"

namespace seqssvm {

// Micro-averaged token accuracy: matching positions / total positions.
// Paired lists with matching lengths; an empty corpus counts as 1.0.
double token_accuracy(const std::vector<LabelSeq>& pred, const std::vector<LabelSeq>& gold);

} // namespace seqssvm
