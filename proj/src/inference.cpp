#include "seqssvm/inference.hpp"

#include <cmath>
#include <limits>

namespace seqssvm {

namespace {

// Shared DP. When y_ref != nullptr each position's score gains 1 for every
// label that disagrees with y_ref (Hamming loss folded into the lattice).
DecodeResult decode(const FeatureSpace& fs, const std::vector<double>& w, const Sequence& x,
                    const LabelSeq* y_ref) {
    const int M = x.length();
    const int K = fs.label_count();
    if (M == 0) throw domain_error("empty sequence");
    if (y_ref && static_cast<int>(y_ref->size()) != M)
        throw domain_error("reference label length mismatch");

    // Per-position emission scores (sum over token attributes).
    std::vector<double> emit(static_cast<std::size_t>(M) * K, 0.0);
    for (int m = 0; m < M; ++m) {
        for (const auto& a : x.tokens[m].attrs) {
            int ai = fs.attr_index(a);
            for (int k = 0; k < K; ++k)
                emit[static_cast<std::size_t>(m) * K + k] += w[fs.emission_index(ai, k)];
        }
        if (y_ref)
            for (int k = 0; k < K; ++k)
                if (k != (*y_ref)[m]) emit[static_cast<std::size_t>(m) * K + k] += 1.0;
    }

    std::vector<double> score(static_cast<std::size_t>(M) * K);
    std::vector<int> back(static_cast<std::size_t>(M) * K, -1);
    for (int k = 0; k < K; ++k) score[k] = w[fs.start_index(k)] + emit[k];
    for (int m = 1; m < M; ++m) {
        for (int k = 0; k < K; ++k) {
            // Strict > keeps the lowest previous label on ties.
            double best = -std::numeric_limits<double>::infinity();
            int arg = -1;
            for (int p = 0; p < K; ++p) {
                double s = score[static_cast<std::size_t>(m - 1) * K + p] +
                           w[fs.transition_index(p, k)];
                if (s > best) {
                    best = s;
                    arg = p;
                }
            }
            score[static_cast<std::size_t>(m) * K + k] =
                best + emit[static_cast<std::size_t>(m) * K + k];
            back[static_cast<std::size_t>(m) * K + k] = arg;
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    int arg = -1;
    for (int k = 0; k < K; ++k) {
        double s = score[static_cast<std::size_t>(M - 1) * K + k];
        if (s > best) {
            best = s;
            arg = k;
        }
    }

    DecodeResult result;
    result.score = best;
    result.labels.resize(M);
    for (int m = M - 1; m >= 0; --m) {
        result.labels[m] = arg;
        if (m > 0) arg = back[static_cast<std::size_t>(m) * K + arg];
    }
    if (!std::isfinite(result.score)) throw numeric_error("non-finite decode score");
    return result;
}

} // namespace

DecodeResult viterbi_argmax(const FeatureSpace& space, const std::vector<double>& w,
                            const Sequence& x) {
    return decode(space, w, x, nullptr);
}

DecodeResult viterbi_argmax(const Model& model, const Sequence& x) {
    return decode(*model.space, model.weights, x, nullptr);
}

DecodeResult loss_augmented_decode(const FeatureSpace& space, const std::vector<double>& w,
                                   const Sequence& x, const LabelSeq& y_ref) {
    return decode(space, w, x, &y_ref);
}

DecodeResult loss_augmented_decode(const Model& model, const Sequence& x, const LabelSeq& y_ref) {
    return decode(*model.space, model.weights, x, &y_ref);
}

double score_of(const Model& model, const Sequence& x, const LabelSeq& y) {
    return dot(model.weights, joint_feature_map(*model.space, x, y));
}

double slack_of(const FeatureSpace& space, const std::vector<double>& w, const Sequence& x,
                const LabelSeq& y_star) {
    auto lad = decode(space, w, x, &y_star);
    double ref = dot(w, joint_feature_map(space, x, y_star));
    return std::max(0.0, lad.score - ref);
}

double slack_of(const Model& model, const Sequence& x, const LabelSeq& y_star) {
    return slack_of(*model.space, model.weights, x, y_star);
}

DecodeResult brute_force_decode(const Model& model, const Sequence& x, const LabelSeq* y_ref) {
    const auto& fs = *model.space;
    const int M = x.length();
    const int K = fs.label_count();
    if (M == 0) throw domain_error("empty sequence");
    if (y_ref && static_cast<int>(y_ref->size()) != M)
        throw domain_error("reference label length mismatch");
    if (std::pow(static_cast<double>(K), M) > 1e6)
        throw capacity_error("label space too large to enumerate");

    // Little-endian odometer (position 0 fastest) with strict-improvement
    // updates: ties resolve to the earliest labeling in this order, which is
    // the labeling the DP tie-break selects.
    LabelSeq y(static_cast<std::size_t>(M), 0);
    DecodeResult best;
    best.score = -std::numeric_limits<double>::infinity();
    while (true) {
        double s = score_of(model, x, y);
        if (y_ref) s += hamming_loss(*y_ref, y);
        if (s > best.score) {
            best.score = s;
            best.labels = y;
        }
        int m = 0;
        while (m < M && y[m] == K - 1) y[m++] = 0;
        if (m == M) break;
        ++y[m];
    }
    return best;
}

} // namespace seqssvm
