#pragma once

#include "seqssvm/model.hpp"
#include "seqssvm/types.hpp"

namespace seqssvm {

struct DecodeResult {
    LabelSeq labels;
    double score = 0.0;
};

// argmax_y w'f(x,y). Ties broken toward the lowest label index at each DP
// backpointer decision and at the final position.
DecodeResult viterbi_argmax(const Model& model, const Sequence& x);
DecodeResult viterbi_argmax(const FeatureSpace& space, const std::vector<double>& w,
                            const Sequence& x);

// argmax_y w'f(x,y) + hamming(y_ref, y), same tie-break rule.
DecodeResult loss_augmented_decode(const Model& model, const Sequence& x, const LabelSeq& y_ref);
DecodeResult loss_augmented_decode(const FeatureSpace& space, const std::vector<double>& w,
                                   const Sequence& x, const LabelSeq& y_ref);

// max(0, [w'f(x,ybar) + hamming(y_star, ybar)] - w'f(x, y_star)) with ybar the
// loss-augmented argmax.
double slack_of(const Model& model, const Sequence& x, const LabelSeq& y_star);
double slack_of(const FeatureSpace& space, const std::vector<double>& w, const Sequence& x,
                const LabelSeq& y_star);

// Exhaustive version of the decoders; y_ref enables the loss-augmented
// objective. Guarded by K^M <= 10^6; ties resolved identically to the DPs.
DecodeResult brute_force_decode(const Model& model, const Sequence& x,
                                const LabelSeq* y_ref = nullptr);

// w'f(x,y).
double score_of(const Model& model, const Sequence& x, const LabelSeq& y);

} // namespace seqssvm
