#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "seqssvm/sparse.hpp"
#include "seqssvm/types.hpp"

namespace seqssvm {

// Fixed index layout over a frozen attribute vocabulary (size A) and label
// alphabet (size K):
//   emission(attr, label) = attr*K + label
//   transition(prev, cur) = A*K + prev*K + cur
//   start(label)          = A*K + K*K + label
// dimension = A*K + K*K + K.
class FeatureSpace {
public:
    static constexpr const char* kUnknownAttr = "<unk>";

    class Builder {
    public:
        void add(const Sequence& x);
        void add(const Dataset& data); // labeled and unlabeled sequences
        void add_attr(const std::string& attr);
        // Alphabet is frozen inside the returned space.
        FeatureSpace freeze(Alphabet alphabet, bool with_unknown = true) const;

    private:
        std::vector<std::string> attrs_; // first-seen order
        std::unordered_map<std::string, int> index_;
    };

    int attr_count() const { return static_cast<int>(attrs_.size()); }
    int label_count() const { return alphabet_.size(); }
    std::size_t dimension() const;
    bool has_unknown() const { return has_unknown_; }
    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<std::string>& attr_names() const { return attrs_; }

    // Maps unseen attributes to <unk> when present, else throws domain_error.
    int attr_index(const std::string& attr) const;

    std::size_t emission_index(int attr, int label) const;
    std::size_t transition_index(int prev, int cur) const;
    std::size_t start_index(int label) const;

    bool operator==(const FeatureSpace& o) const {
        return attrs_ == o.attrs_ && alphabet_ == o.alphabet_ && has_unknown_ == o.has_unknown_;
    }

private:
    friend class Builder;
    std::vector<std::string> attrs_;
    std::unordered_map<std::string, int> attr_index_;
    Alphabet alphabet_;
    bool has_unknown_ = false;
};

using FeatureSpacePtr = std::shared_ptr<const FeatureSpace>;

SparseVec joint_feature_map(const FeatureSpace& space, const Sequence& x, const LabelSeq& y);

// joint_feature_map(x, y_ref) - joint_feature_map(x, y), computed per position.
SparseVec feature_delta(const FeatureSpace& space, const Sequence& x, const LabelSeq& y_ref,
                        const LabelSeq& y);

} // namespace seqssvm
