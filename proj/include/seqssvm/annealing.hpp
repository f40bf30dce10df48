#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "seqssvm/constraints.hpp"
#include "seqssvm/label_switch.hpp"
#include "seqssvm/solver.hpp"

namespace seqssvm {

std::vector<double> default_cu_schedule();

struct AnnealConfig {
    std::vector<double> schedule = default_cu_schedule(); // strictly increasing, positive
    double c_l = 1.0;
    int maxiter = 1000; // inner alternations per temperature
    SwitchConfig switch_cfg;
    SolverConfig solver_cfg;
    bool warm_labelings = true; // carry candidate labelings across iterations
};

struct TraceRecord {
    double c_u = 0.0;
    int iter = 0;
    double objective = 0.0; // semisup objective after the re-solve
    double penalty = 0.0;
    long long changed = 0;  // label components changed by the matching step
    std::optional<double> eval_accuracy;
};

struct AnnealResult {
    Model model; // model at the end of the schedule
    std::vector<LabelSeq> labelings;
    std::vector<TraceRecord> trace;
    // Best model along the path by eval accuracy, when an eval set was given.
    std::optional<Model> best_model;
    double best_accuracy = 0.0;
    double best_c_u = 0.0;
    int best_iter = 0;
};

using TraceSink = std::function<void(const TraceRecord&)>;

// Alternates constraint matching and re-solving while the unlabeled-data
// weight C_u rises over the schedule. A temperature block ends when no label
// component changes between consecutive iterations or maxiter is reached.
AnnealResult train_semisupervised(const Dataset& data, const std::vector<ConstraintSpec>& specs,
                                  const AnnealConfig& cfg,
                                  const std::vector<LabeledExample>* eval_set = nullptr,
                                  const TraceSink& sink = {});

// 0.5*||w||^2 + (C_l/l)*sum slack_i + (C_u/u)*sum slack_j + total penalty.
double semisup_objective(const Model& model, const Dataset& data,
                         const std::vector<LabelSeq>& labelings,
                         const std::vector<ConstraintSpec>& specs, double c_l, double c_u);

void write_trace_header(std::ostream& out);
void write_trace_record(std::ostream& out, const TraceRecord& rec);
void write_trace(std::ostream& out, const std::vector<TraceRecord>& trace);

} // namespace seqssvm
