#pragma once

#include <string>
#include <vector>

#include "seqssvm/types.hpp"

namespace seqssvm {

enum class ConstraintLevel { instance, corpus };
enum class Relation { eq, le, ge };
enum class PenaltyForm { squared, absolute, constant };

// One declarative domain constraint. Built-in feature tags:
//   instance level:
//     label_list_count   (label)       count of maximal runs of the label
//     word_label         (word, label) 1 if every occurrence of the word has
//                                      the label (1 when the word is absent)
//     noncontiguous_labels             count of labels with >= 2 maximal runs
//   corpus level:
//     label_percentage   (label)       100 * label tokens / total tokens
//     nonpunct_transition_fraction     fraction of adjacent label changes
//                                      whose left token is not punctuation
struct ConstraintSpec {
    std::string id;
    ConstraintLevel level = ConstraintLevel::instance;
    std::string feature;
    std::string label;   // label param, where the tag takes one
    std::string word;    // word param for word_label
    int label_index = -1;
    Relation relation = Relation::eq;
    double target = 0.0; // c
    PenaltyForm penalty_form = PenaltyForm::squared;
    double scale = 1.0;  // r > 0
};

// Parses the JSON constraint file and resolves label names against the
// alphabet. Unknown tags or labels -> config_error.
std::vector<ConstraintSpec> parse_constraints(const std::string& json_text, const Alphabet& alphabet);
std::vector<ConstraintSpec> load_constraints(const std::string& path, const Alphabet& alphabet);
std::string constraints_to_json(const std::vector<ConstraintSpec>& specs);

// Instance-level feature value on one labeling.
double eval_feature(const ConstraintSpec& spec, const Sequence& x, const LabelSeq& y);

// Penalty C(value - c): 0 when the relation holds; otherwise r*|value-c|^2,
// r*|value-c|, or the constant r.
double penalty(const ConstraintSpec& spec, double value);

// Sufficient statistics over all current candidate labelings, maintained
// incrementally switch by switch.
class CorpusState {
public:
    CorpusState() = default;
    CorpusState(std::vector<const Sequence*> sequences, std::vector<LabelSeq> labelings,
                int label_count);

    int size() const { return static_cast<int>(sequences_.size()); }
    const Sequence& sequence(int j) const { return *sequences_[j]; }
    const std::vector<LabelSeq>& labelings() const { return labelings_; }
    const LabelSeq& labeling(int j) const { return labelings_[j]; }

    // Applies one accepted switch; revert is the same call with the two
    // labels swapped. old_label must match the current label.
    void apply_switch(int j, int m, int old_label, int new_label);

    long long label_count(int label) const { return label_counts_[label]; }
    long long total_tokens() const { return total_tokens_; }
    long long transitions() const { return transitions_; }
    long long nonpunct_transitions() const { return nonpunct_transitions_; }

    // From-scratch recount; equals the incremental state in tests.
    void rebuild();

private:
    void count_sequence(int j, int sign);

    std::vector<const Sequence*> sequences_;
    std::vector<LabelSeq> labelings_;
    std::vector<long long> label_counts_;
    long long total_tokens_ = 0;
    long long transitions_ = 0;
    long long nonpunct_transitions_ = 0;
};

// Corpus-level feature value from the state's statistics.
// nonpunct_transition_fraction is 0 when there are no transitions;
// label_percentage is 0 on an empty corpus.
double eval_corpus_feature(const ConstraintSpec& spec, const CorpusState& state);

// Sum of instance-level penalties over all labelings plus corpus-level
// penalties of the aggregated statistics.
double total_constraint_penalty(const std::vector<ConstraintSpec>& specs, const CorpusState& state);

// Penalty change if labeling j had component m switched to new_label,
// touching only the affected statistics. new_label must differ from the
// current label.
double delta_penalty(const std::vector<ConstraintSpec>& specs, const CorpusState& state, int j,
                     int m, int new_label);

} // namespace seqssvm
