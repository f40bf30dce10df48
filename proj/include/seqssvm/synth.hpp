#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "seqssvm/types.hpp"

namespace seqssvm {

// First-order Markov chain generator; stands in for external corpora.
struct GeneratorSpec {
    int num_labels = 0;
    int vocab = 0;
    std::vector<std::vector<double>> transition; // K x K, row-stochastic
    std::vector<std::vector<double>> emission;   // K x V, row-stochastic
    int len_min = 1;
    int len_max = 1;
    std::uint64_t seed = 0;

    // Rows must sum to 1 +- 1e-9, len_min <= len_max.
    void validate() const;

    // Diagonal-biased transitions and peaked emissions; learnable but not
    // trivial for mid-range diag/peak values.
    static GeneratorSpec random_peaked(int num_labels, int vocab, int len_min, int len_max,
                                       std::uint64_t seed, double trans_diag, double emit_peak);
};

GeneratorSpec generator_from_json(const std::string& json_text);
GeneratorSpec load_generator_spec(const std::string& path);
std::string generator_to_json(const GeneratorSpec& spec);

// Ground-truth statistics recounted from the unlabeled split's hidden labels;
// used to derive constraint targets the way domain knowledge would.
struct TruthStats {
    std::vector<long long> label_counts;
    long long total_tokens = 0;
    std::vector<double> label_percentage;
    double nonpunct_transition_fraction = 0.0;
};

struct SynthCorpus {
    Dataset data; // labeled + unlabeled splits, shared alphabet
    std::vector<LabeledExample> test;
    TruthStats truth;
};

SynthCorpus generate(const GeneratorSpec& spec, int n_labeled, int n_unlabeled, int n_test);

std::string truth_to_json(const TruthStats& truth, const Alphabet& alphabet);

} // namespace seqssvm
