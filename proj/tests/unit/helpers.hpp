#pragma once

#include <memory>
#include <string>
#include <vector>

#include "seqssvm/features.hpp"
#include "seqssvm/model.hpp"
#include "seqssvm/rng.hpp"
#include "seqssvm/types.hpp"

namespace testutil {

using namespace seqssvm;

// Frozen space over attrs a0..a{A-1} and labels L0..L{K-1}. Strict by default
// so out-of-vocabulary attributes fail loudly in tests.
inline FeatureSpacePtr make_space(int num_attrs, int num_labels, bool with_unknown = false) {
    FeatureSpace::Builder b;
    for (int i = 0; i < num_attrs; ++i) b.add_attr("a" + std::to_string(i));
    Alphabet al;
    for (int k = 0; k < num_labels; ++k) al.intern("L" + std::to_string(k));
    return std::make_shared<const FeatureSpace>(b.freeze(al, with_unknown));
}

// Token m carries exactly the listed attribute ids (as "a{id}").
inline Sequence attr_sequence(const std::vector<std::vector<int>>& attr_ids) {
    Sequence x;
    for (const auto& ids : attr_ids) {
        Token t;
        t.attrs.reserve(ids.size());
        for (int id : ids) t.attrs.push_back("a" + std::to_string(id));
        t.surface = t.attrs.empty() ? "t" : t.attrs.front();
        x.tokens.push_back(std::move(t));
    }
    return x;
}

inline Sequence random_sequence(int num_attrs, int length, Rng& rng) {
    std::vector<std::vector<int>> ids(static_cast<std::size_t>(length));
    for (auto& token_ids : ids) {
        token_ids.push_back(rng.index(static_cast<std::size_t>(num_attrs)));
        if (num_attrs > 1 && rng.below(2) == 0) {
            int extra = rng.index(static_cast<std::size_t>(num_attrs));
            if (extra != token_ids[0]) token_ids.push_back(extra);
        }
    }
    return attr_sequence(ids);
}

inline LabelSeq random_labels(int num_labels, int length, Rng& rng) {
    LabelSeq y(static_cast<std::size_t>(length));
    for (auto& lab : y) lab = rng.index(static_cast<std::size_t>(num_labels));
    return y;
}

// Weights on a dyadic grid (multiples of 1/8 in [-2,2]): every partial sum in
// both the DP and the brute-force enumeration is exact in double, so scores
// agree bit-for-bit and tie-breaking is genuinely exercised.
inline Model random_model(FeatureSpacePtr space, Rng& rng) {
    Model m(std::move(space));
    for (auto& w : m.weights)
        w = (static_cast<double>(rng.below(33)) - 16.0) / 8.0;
    return m;
}

} // namespace testutil
