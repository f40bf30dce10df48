#include "seqssvm/label_switch.hpp"

#include <utility>

#include "seqssvm/rng.hpp"

namespace seqssvm {

LabelSeq initial_labeling(const Model& model, const Sequence& x) {
    return viterbi_argmax(model, x).labels;
}

double match_objective(const Model& model, double c_u, const MatchState& state,
                       const std::vector<ConstraintSpec>& specs) {
    const int u = state.corpus.size();
    double obj = total_constraint_penalty(specs, state.corpus);
    if (u > 0) {
        double slack_sum = 0.0;
        for (int j = 0; j < u; ++j)
            slack_sum += slack_of(model, state.corpus.sequence(j), state.corpus.labeling(j));
        obj += c_u / u * slack_sum;
    }
    return obj;
}

MatchState constraint_match(const Model& model, double c_u,
                            const std::vector<const Sequence*>& unlabeled,
                            const std::vector<ConstraintSpec>& specs, const SwitchConfig& cfg,
                            const std::vector<LabelSeq>* warm, const CommitHook& on_commit) {
    if (!(c_u > 0.0)) throw config_error("c_u must be positive");
    if (cfg.maxswitches < 0) throw config_error("maxswitches must be >= 0");
    if (cfg.min_decrease < 0.0) throw config_error("min_decrease must be non-negative");

    const int u = static_cast<int>(unlabeled.size());
    const int K = model.space->label_count();

    std::vector<LabelSeq> init;
    init.reserve(unlabeled.size());
    if (warm) {
        if (static_cast<int>(warm->size()) != u) throw domain_error("warm labeling count mismatch");
        init = *warm;
    } else {
        for (const auto* x : unlabeled) init.push_back(initial_labeling(model, *x));
    }

    MatchState state;
    state.corpus = CorpusState(unlabeled, std::move(init), K);
    state.slacks.resize(static_cast<std::size_t>(u));
    const double per = u > 0 ? c_u / u : 0.0;
    double slack_sum = 0.0;
    for (int j = 0; j < u; ++j) {
        state.slacks[j] = slack_of(model, *unlabeled[j], state.corpus.labeling(j));
        slack_sum += state.slacks[j];
    }
    state.objective = per * slack_sum + total_constraint_penalty(specs, state.corpus);
    if (u == 0 || K < 2) return state;

    std::vector<std::pair<int, int>> components; // (example, position)
    for (int j = 0; j < u; ++j)
        for (int m = 0; m < unlabeled[j]->length(); ++m) components.emplace_back(j, m);

    Rng rng(cfg.rng_seed);
    bool budget_spent = state.num_switches >= cfg.maxswitches;
    while (!budget_spent) {
        const double pass_start = state.objective;
        int commits = 0;
        if (cfg.component_order == ComponentOrder::random) shuffle(components, rng);
        for (const auto& [j, m] : components) {
            if (state.num_switches >= cfg.maxswitches) {
                budget_spent = true;
                break;
            }
            const Sequence& x = *unlabeled[j];
            const int cur = state.corpus.labeling(j)[m];
            double mincost = state.objective;
            int minlabel = cur;
            double minslack = state.slacks[j];
            for (int r = 0; r < K; ++r) {
                if (r == cur) continue;
                double dpen = delta_penalty(specs, state.corpus, j, m, r);
                LabelSeq candidate = state.corpus.labeling(j);
                candidate[m] = r;
                double cand_slack = slack_of(model, x, candidate);
                double obj = state.objective + per * (cand_slack - state.slacks[j]) + dpen;
                if (obj < mincost) {
                    mincost = obj;
                    minlabel = r;
                    minslack = cand_slack;
                }
            }
            if (minlabel != cur) {
                state.corpus.apply_switch(j, m, cur, minlabel);
                state.slacks[j] = minslack;
                state.objective = mincost;
                state.num_switches += 1;
                state.committed_objectives.push_back(mincost);
                ++commits;
                if (on_commit) on_commit(state, j, m);
            }
        }
        if (budget_spent || commits == 0) break;
        if (pass_start - state.objective < cfg.min_decrease) break;
    }
    return state;
}

} // namespace seqssvm
