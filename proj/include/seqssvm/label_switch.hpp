#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "seqssvm/constraints.hpp"
#include "seqssvm/inference.hpp"
#include "seqssvm/model.hpp"

namespace seqssvm {

enum class ComponentOrder { random, sequential };

struct SwitchConfig {
    int maxswitches = 1000;     // committed switches per call; 0 = no switching
    double min_decrease = 1e-8; // stop when a full pass improves by less
    std::uint64_t rng_seed = 0;
    ComponentOrder component_order = ComponentOrder::random;
};

// Candidate labelings for the unlabeled corpus plus the bookkeeping that the
// hill climber keeps consistent: per-example slacks, corpus statistics, and
// the running objective (C_u/u)*sum(xi) + total penalty.
struct MatchState {
    CorpusState corpus;
    std::vector<double> slacks;
    double objective = 0.0;
    int num_switches = 0;
    std::vector<double> committed_objectives; // objective after each accepted switch
};

// Constraint-free initialization: the plain Viterbi labeling.
LabelSeq initial_labeling(const Model& model, const Sequence& x);

using CommitHook = std::function<void(const MatchState& state, int j, int m)>;

// Randomized hill climbing over label components: every component visit
// evaluates all alternative labels by slack + penalty delta and commits the
// best strict improvement. Stops after cfg.maxswitches committed switches or
// a pass with insufficient total decrease.
MatchState constraint_match(const Model& model, double c_u,
                            const std::vector<const Sequence*>& unlabeled,
                            const std::vector<ConstraintSpec>& specs, const SwitchConfig& cfg,
                            const std::vector<LabelSeq>* warm = nullptr,
                            const CommitHook& on_commit = {});

// From-scratch recomputation of the objective tracked in state.objective.
double match_objective(const Model& model, double c_u, const MatchState& state,
                       const std::vector<ConstraintSpec>& specs);

} // namespace seqssvm
