#include "seqssvm/metrics.hpp"

namespace seqssvm {

double token_accuracy(const std::vector<LabelSeq>& pred, const std::vector<LabelSeq>& gold) {
    if (pred.size() != gold.size()) throw domain_error("prediction/gold sequence count mismatch");
    long long total = 0, correct = 0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        if (pred[i].size() != gold[i].size())
            throw domain_error("prediction/gold length mismatch at sequence " + std::to_string(i));
        for (std::size_t m = 0; m < pred[i].size(); ++m) {
            ++total;
            if (pred[i][m] == gold[i][m]) ++correct;
        }
    }
    return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

} // namespace seqssvm
