#include "seqssvm/annealing.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "seqssvm/metrics.hpp"
#include "seqssvm/rng.hpp"

namespace seqssvm {

std::vector<double> default_cu_schedule() {
    return {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1, 1.0};
}

double semisup_objective(const Model& model, const Dataset& data,
                         const std::vector<LabelSeq>& labelings,
                         const std::vector<ConstraintSpec>& specs, double c_l, double c_u) {
    const std::size_t l = data.labeled.size();
    const std::size_t u = data.unlabeled.size();
    if (labelings.size() != u) throw domain_error("labeling count mismatch");
    double nsq = 0.0;
    for (double v : model.weights) nsq += v * v;
    double obj = 0.5 * nsq;
    if (l > 0) {
        double slack = 0.0;
        for (const auto& ex : data.labeled) slack += slack_of(model, ex.x, ex.y);
        obj += c_l / static_cast<double>(l) * slack;
    }
    if (u > 0) {
        double slack = 0.0;
        for (std::size_t j = 0; j < u; ++j)
            slack += slack_of(model, data.unlabeled[j], labelings[j]);
        obj += c_u / static_cast<double>(u) * slack;
    }
    std::vector<const Sequence*> seqs;
    seqs.reserve(u);
    for (const auto& x : data.unlabeled) seqs.push_back(&x);
    CorpusState corpus(std::move(seqs), labelings, model.space->label_count());
    return obj + total_constraint_penalty(specs, corpus);
}

AnnealResult train_semisupervised(const Dataset& data, const std::vector<ConstraintSpec>& specs,
                                  const AnnealConfig& cfg,
                                  const std::vector<LabeledExample>* eval_set,
                                  const TraceSink& sink) {
    if (data.labeled.empty()) throw domain_error("no labeled data");
    if (cfg.schedule.empty()) throw config_error("empty annealing schedule");
    double prev = 0.0;
    for (double c : cfg.schedule) {
        if (!(c > prev)) throw config_error("schedule must be positive and strictly increasing");
        prev = c;
    }
    if (!(cfg.c_l > 0.0)) throw config_error("c_l must be positive");
    if (cfg.maxiter < 1) throw config_error("maxiter must be >= 1");

    const std::size_t l = data.labeled.size();
    const std::size_t u = data.unlabeled.size();
    const double cl_per = cfg.c_l / static_cast<double>(l);

    FeatureSpace::Builder builder;
    builder.add(data);
    auto space = std::make_shared<const FeatureSpace>(builder.freeze(data.alphabet, true));

    std::vector<TrainItem> labeled_items;
    labeled_items.reserve(l);
    for (const auto& ex : data.labeled) labeled_items.push_back({&ex.x, ex.y, cl_per});

    SsvmSolver solver(space);
    solver.set_items(labeled_items);
    solver.solve(cfg.solver_cfg);

    std::vector<const Sequence*> useqs;
    useqs.reserve(u);
    for (const auto& x : data.unlabeled) useqs.push_back(&x);

    auto evaluate = [&](const Model& m) {
        std::vector<LabelSeq> pred, gold;
        pred.reserve(eval_set->size());
        gold.reserve(eval_set->size());
        for (const auto& ex : *eval_set) {
            pred.push_back(viterbi_argmax(m, ex.x).labels);
            gold.push_back(ex.y);
        }
        return token_accuracy(pred, gold);
    };

    AnnealResult result;
    {
        Model initial = solver.model();
        std::vector<LabelSeq> labelings;
        labelings.reserve(u);
        for (const auto* x : useqs) labelings.push_back(initial_labeling(initial, *x));
        result.labelings = std::move(labelings);
    }

    for (std::size_t ci = 0; ci < cfg.schedule.size(); ++ci) {
        const double c_u = cfg.schedule[ci];
        for (int iter = 1; iter <= cfg.maxiter; ++iter) {
            SwitchConfig swc = cfg.switch_cfg;
            swc.rng_seed = mix_seed(cfg.switch_cfg.rng_seed, ci, static_cast<std::uint64_t>(iter));
            Model current = solver.model();
            const std::vector<LabelSeq>* warm = cfg.warm_labelings ? &result.labelings : nullptr;
            MatchState ms = constraint_match(current, c_u, useqs, specs, swc, warm);

            long long changed = 0;
            for (std::size_t j = 0; j < u; ++j)
                changed += static_cast<long long>(
                    hamming_loss(result.labelings[j], ms.corpus.labeling(j)));
            result.labelings = ms.corpus.labelings();

            std::vector<TrainItem> items = labeled_items;
            items.reserve(l + u);
            const double cu_per = u > 0 ? c_u / static_cast<double>(u) : c_u;
            for (std::size_t j = 0; j < u; ++j)
                items.push_back({useqs[j], result.labelings[j], cu_per});
            solver.set_items(std::move(items));
            solver.solve(cfg.solver_cfg);

            TraceRecord rec;
            rec.c_u = c_u;
            rec.iter = iter;
            rec.penalty = total_constraint_penalty(specs, ms.corpus);
            {
                double nsq = 0.0;
                for (double v : solver.weights()) nsq += v * v;
                double obj = 0.5 * nsq;
                double slack = 0.0;
                for (const auto& ex : data.labeled)
                    slack += slack_of(*space, solver.weights(), ex.x, ex.y);
                obj += cl_per * slack;
                slack = 0.0;
                for (std::size_t j = 0; j < u; ++j)
                    slack += slack_of(*space, solver.weights(), *useqs[j], result.labelings[j]);
                obj += (u > 0 ? c_u / static_cast<double>(u) : 0.0) * slack;
                rec.objective = obj + rec.penalty;
            }
            rec.changed = changed;
            if (eval_set) {
                double acc = evaluate(solver.model());
                rec.eval_accuracy = acc;
                if (!result.best_model || acc > result.best_accuracy) {
                    result.best_model = solver.model();
                    result.best_accuracy = acc;
                    result.best_c_u = c_u;
                    result.best_iter = iter;
                }
            }
            result.trace.push_back(rec);
            if (sink) sink(rec);
            if (!std::isfinite(rec.objective))
                throw numeric_error("non-finite semi-supervised objective");
            if (changed == 0) break;
        }
    }
    result.model = solver.model();
    return result;
}

void write_trace_header(std::ostream& out) {
    out << "c_u,iter,objective,penalty,changed,eval_accuracy\n";
}

void write_trace_record(std::ostream& out, const TraceRecord& rec) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%g,%d,%.17g,%.17g,%lld,", rec.c_u, rec.iter, rec.objective,
                  rec.penalty, rec.changed);
    out << buf;
    if (rec.eval_accuracy) {
        std::snprintf(buf, sizeof(buf), "%.6f", *rec.eval_accuracy);
        out << buf;
    }
    out << '\n';
}

void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace) {
    write_trace_header(out);
    for (const auto& rec : trace) write_trace_record(out, rec);
}

} // namespace seqssvm
