#pragma once

#include <cstdint>
#include <vector>

#include "seqssvm/inference.hpp"
#include "seqssvm/model.hpp"
#include "seqssvm/sparse.hpp"
#include "seqssvm/types.hpp"

namespace seqssvm {

struct SolverConfig {
    double C = 1.0;             // per-example cost used by the cold-start wrapper
    double tol = 0.1;           // stop when no violator beats its working-set slack by more
    int max_outer_passes = 50;
    int dual_inner_iters = 10;
    bool record_objectives = true;
};

// tol heuristic when the caller gives none: 0.01 * average sequence length.
double default_tolerance(const std::vector<LabeledExample>& examples);

struct TrainItem {
    const Sequence* x = nullptr;
    LabelSeq y;
    double cost = 1.0; // upper bound on this example's total dual mass
};

struct PassStats {
    int pass = 0;
    double max_violation = 0.0;
    double dual_objective = 0.0;
    double primal_objective = 0.0;
    std::size_t working_set_size = 0;
};

struct SolveReport {
    std::vector<PassStats> passes;
    bool converged = false;
    double final_max_violation = 0.0;
};

// Working-set dual solver for the margin-rescaled chain SVM. One instance can
// be re-solved after set_items(); dual state is retained for items whose
// labels did not change, which is what the alternating outer loop relies on.
class SsvmSolver {
public:
    explicit SsvmSolver(FeatureSpacePtr space);

    // Replaces the training set. Items are matched to previous ones by
    // position; an item whose labels changed has its dual variables dropped.
    void set_items(std::vector<TrainItem> items);

    SolveReport solve(const SolverConfig& cfg);

    Model model() const;
    const std::vector<TrainItem>& items() const { return items_; }
    const std::vector<double>& weights() const { return w_; }

    struct Entry {
        LabelSeq labels;
        double alpha = 0.0;
        SparseVec delta;     // f(x, y_item) - f(x, labels)
        double loss = 0.0;   // hamming(y_item, labels)
        double delta_sq = 0.0;
        int zero_passes = 0;
    };
    const std::vector<std::vector<Entry>>& working_sets() const { return working_sets_; }

    // Sum of alpha*loss - 0.5*||w||^2 over the working set.
    double dual_objective() const;
    // Recomputes w from the working set; the live w must match to ~1e-6.
    std::vector<double> reconstructed_weights() const;

private:
    double working_set_slack(std::size_t i) const;
    void inner_descent(std::size_t i, int rounds);
    bool pairwise_transfer(std::size_t i);
    void prune();

    FeatureSpacePtr space_;
    std::vector<TrainItem> items_;
    std::vector<std::vector<Entry>> working_sets_;
    std::vector<double> alpha_sums_; // per item
    std::vector<double> w_;
    // A cost change moves an item's dual box, leaving retained dual state
    // non-optimal over its own working set; the next solve must re-optimize
    // before the no-new-violator stop test means anything.
    bool box_changed_ = false;
};

// Cold-start solve of the fully supervised problem with uniform per-example
// cost cfg.C.
Model solve_ssvm(const std::vector<LabeledExample>& labeled, FeatureSpacePtr space,
                 const SolverConfig& cfg, SolveReport* report = nullptr);

// 0.5*||w||^2 + per_example_C * sum_i slack_of(model, x_i, y_i).
double primal_objective(const Model& model, const std::vector<LabeledExample>& labeled,
                        double per_example_C);

} // namespace seqssvm
