#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqssvm/types.hpp"

namespace seqssvm {

// Token-per-line format: labeled lines are `token<TAB>label`, unlabeled lines
// a bare token; sequences separated by one blank line; trailing blank optional.
enum class ParseMode { labeled, unlabeled };

// Appends parsed sequences to ds. In labeled mode the alphabet accumulates
// labels in first-seen order; a frozen alphabet rejects unknown labels.
void parse_dataset(std::istream& in, ParseMode mode, Dataset& ds);

Dataset load_dataset(const std::string& path, ParseMode mode);

// A TAB on the first token line means labeled.
ParseMode sniff_mode(const std::string& path);

void write_labeled(std::ostream& out, const std::vector<LabeledExample>& examples,
                   const Alphabet& alphabet);
void write_unlabeled(std::ostream& out, const std::vector<Sequence>& sequences);
void write_predictions(std::ostream& out, const std::vector<Sequence>& sequences,
                       const std::vector<LabelSeq>& labels, const Alphabet& alphabet);

void save_labeled(const std::string& path, const std::vector<LabeledExample>& examples,
                  const Alphabet& alphabet);
void save_unlabeled(const std::string& path, const std::vector<Sequence>& sequences);

} // namespace seqssvm
