#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqssvm/annealing.hpp"
#include "seqssvm/constraints.hpp"
#include "seqssvm/io.hpp"
#include "seqssvm/metrics.hpp"
#include "seqssvm/model.hpp"
#include "seqssvm/parallel.hpp"
#include "seqssvm/solver.hpp"
#include "seqssvm/synth.hpp"

using namespace seqssvm;

namespace {

FeatureSpacePtr build_space(const Dataset& data) {
    FeatureSpace::Builder b;
    b.add(data);
    return std::make_shared<const FeatureSpace>(b.freeze(data.alphabet, true));
}

// Gold-bearing file parsed against an existing label alphabet so indices
// agree with the model that will consume it.
std::vector<LabeledExample> load_labeled_against(const std::string& path,
                                                 const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    Dataset ds;
    ds.alphabet = alphabet;
    ds.alphabet.freeze();
    parse_dataset(in, ParseMode::labeled, ds);
    return std::move(ds.labeled);
}

// A labeled file's alphabet is the labels it happens to exhibit; a small
// split can miss some entirely. A declared list pins the full set (and the
// index order) up front, and stray labels in the file are rejected.
Dataset load_labeled_dataset(const std::string& path, const std::vector<std::string>& labels) {
    if (labels.empty()) return load_dataset(path, ParseMode::labeled);
    Dataset ds;
    ds.alphabet = Alphabet(labels);
    ds.alphabet.freeze();
    ds.labeled = load_labeled_against(path, ds.alphabet);
    return ds;
}

// Token sequences regardless of whether the file carries labels.
std::vector<Sequence> load_sequences(const std::string& path) {
    Dataset ds = load_dataset(path, sniff_mode(path));
    std::vector<Sequence> out = std::move(ds.unlabeled);
    for (auto& ex : ds.labeled) out.push_back(std::move(ex.x));
    return out;
}

std::vector<LabelSeq> predict_all(const Model& model, const std::vector<Sequence>& xs,
                                  int threads) {
    std::vector<LabelSeq> labels(xs.size());
    parallel_for(xs.size(), threads, [&](std::size_t i) {
        labels[i] = viterbi_argmax(model, xs[i]).labels;
    });
    return labels;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    return out;
}

struct TrainSupervisedArgs {
    std::string data, out;
    std::vector<std::string> labels;
    double c = 1.0;
    std::optional<double> tol;
    int max_passes = 50;
};

void run_train_supervised(const TrainSupervisedArgs& a) {
    Dataset ds = load_labeled_dataset(a.data, a.labels);
    SolverConfig cfg;
    cfg.C = a.c;
    cfg.tol = a.tol ? *a.tol : default_tolerance(ds.labeled);
    cfg.max_outer_passes = a.max_passes;
    Model model = solve_ssvm(ds.labeled, build_space(ds), cfg);
    save_model(a.out, model);
}

struct TrainSemisupArgs {
    std::string labeled, unlabeled, constraints, out, trace;
    std::string eval_path;
    std::vector<std::string> labels;
    std::vector<double> schedule;
    double cl = 1.0;
    std::optional<double> tol;
    int max_passes = 50;
    int maxiter = 1000;
    int maxswitches = 1000;
    std::uint64_t seed = 0;
};

void run_train_semisup(const TrainSemisupArgs& a) {
    Dataset ds = load_labeled_dataset(a.labeled, a.labels);
    {
        std::ifstream in(a.unlabeled);
        if (!in) throw error("cannot open '" + a.unlabeled + "'");
        parse_dataset(in, ParseMode::unlabeled, ds);
    }
    auto specs = load_constraints(a.constraints, ds.alphabet);

    AnnealConfig cfg;
    if (!a.schedule.empty()) cfg.schedule = a.schedule;
    cfg.c_l = a.cl;
    cfg.maxiter = a.maxiter;
    cfg.solver_cfg.tol = a.tol ? *a.tol : default_tolerance(ds.labeled);
    cfg.solver_cfg.max_outer_passes = a.max_passes;
    cfg.switch_cfg.maxswitches = a.maxswitches;
    cfg.switch_cfg.rng_seed = a.seed;

    std::vector<LabeledExample> eval_set;
    if (!a.eval_path.empty()) eval_set = load_labeled_against(a.eval_path, ds.alphabet);

    // Stream the trace so an aborted run still leaves the records it earned.
    std::ofstream trace_out = open_out(a.trace);
    write_trace_header(trace_out);
    auto sink = [&](const TraceRecord& rec) {
        write_trace_record(trace_out, rec);
        trace_out.flush();
    };

    auto result = train_semisupervised(ds, specs, cfg, eval_set.empty() ? nullptr : &eval_set,
                                       sink);
    save_model(a.out, result.model);
    if (!eval_set.empty()) {
        if (result.best_model) save_model(a.out + ".best", *result.best_model);
        std::printf("final accuracy: %.6f\n", result.trace.back().eval_accuracy.value_or(0.0));
        std::printf("best accuracy: %.6f\n", result.best_accuracy);
    }
}

struct PredictArgs {
    std::string model, data, out;
    int threads = 1;
};

void run_predict(const PredictArgs& a) {
    Model model = load_model(a.model);
    auto xs = load_sequences(a.data);
    auto labels = predict_all(model, xs, a.threads);
    std::ofstream out = open_out(a.out);
    write_predictions(out, xs, labels, model.space->alphabet());
}

struct EvalArgs {
    std::string model, data;
    int threads = 1;
};

void run_eval(const EvalArgs& a) {
    Model model = load_model(a.model);
    if (sniff_mode(a.data) != ParseMode::labeled)
        throw error("'" + a.data + "' has no gold labels to evaluate against");
    auto examples = load_labeled_against(a.data, model.space->alphabet());
    std::vector<Sequence> xs;
    std::vector<LabelSeq> gold;
    xs.reserve(examples.size());
    for (auto& ex : examples) {
        xs.push_back(std::move(ex.x));
        gold.push_back(std::move(ex.y));
    }
    auto pred = predict_all(model, xs, a.threads);
    std::printf("%.6f\n", token_accuracy(pred, gold));
}

struct GenArgs {
    std::string spec, out_prefix;
    int n_labeled = 5;
    int n_unlabeled = 100;
    int n_test = 200;
};

void run_gen(const GenArgs& a) {
    GeneratorSpec spec = load_generator_spec(a.spec);
    SynthCorpus corpus = generate(spec, a.n_labeled, a.n_unlabeled, a.n_test);
    save_labeled(a.out_prefix + ".labeled", corpus.data.labeled, corpus.data.alphabet);
    save_unlabeled(a.out_prefix + ".unlabeled", corpus.data.unlabeled);
    save_labeled(a.out_prefix + ".test", corpus.test, corpus.data.alphabet);
    std::ofstream truth = open_out(a.out_prefix + ".truth.json");
    truth << truth_to_json(corpus.truth, corpus.data.alphabet);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Margin-based sequence labeling with corpus-constraint training"};
    app.require_subcommand(1);

    TrainSupervisedArgs sup;
    auto* sup_cmd = app.add_subcommand("train-supervised", "Train on labeled sequences only");
    sup_cmd->add_option("--data", sup.data, "labeled dataset file")->required();
    sup_cmd->add_option("--labels", sup.labels,
                        "full label set, comma-separated (default: labels seen in the file)")
        ->delimiter(',');
    sup_cmd->add_option("--c", sup.c, "per-example cost")->check(CLI::PositiveNumber);
    sup_cmd->add_option("--out", sup.out, "model output path")->required();
    sup_cmd->add_option("--tol", sup.tol, "solver tolerance (default 0.01 * avg length)");
    sup_cmd->add_option("--max-passes", sup.max_passes, "solver outer-pass cap");

    TrainSemisupArgs semi;
    auto* semi_cmd =
        app.add_subcommand("train-semisup", "Anneal over unlabeled data under constraints");
    semi_cmd->add_option("--labeled", semi.labeled, "labeled dataset file")->required();
    semi_cmd->add_option("--unlabeled", semi.unlabeled, "unlabeled dataset file")->required();
    semi_cmd->add_option("--constraints", semi.constraints, "constraint config (JSON)")
        ->required();
    semi_cmd->add_option("--labels", semi.labels,
                        "full label set, comma-separated (default: labels seen in the file)")
        ->delimiter(',');
    semi_cmd->add_option("--cl", semi.cl, "labeled-term weight C_l")->check(CLI::PositiveNumber);
    semi_cmd->add_option("--schedule", semi.schedule, "C_u values, low to high")
        ->delimiter(',');
    semi_cmd->add_option("--eval", semi.eval_path, "held-out labeled file; tracks best model");
    semi_cmd->add_option("--out", semi.out, "model output path")->required();
    semi_cmd->add_option("--trace", semi.trace, "trace CSV output path")->required();
    semi_cmd->add_option("--tol", semi.tol, "solver tolerance (default 0.01 * avg length)");
    semi_cmd->add_option("--max-passes", semi.max_passes, "solver outer-pass cap");
    semi_cmd->add_option("--maxiter", semi.maxiter, "alternations per C_u");
    semi_cmd->add_option("--maxswitches", semi.maxswitches, "committed switches per matching");
    semi_cmd->add_option("--seed", semi.seed, "label-switching seed");

    PredictArgs pred;
    auto* pred_cmd = app.add_subcommand("predict", "Write Viterbi labelings");
    pred_cmd->add_option("--model", pred.model, "model file")->required();
    pred_cmd->add_option("--data", pred.data, "input sequences (labels ignored)")->required();
    pred_cmd->add_option("--out", pred.out, "predictions output path")->required();
    pred_cmd->add_option("--threads", pred.threads, "decode threads");

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Print token accuracy on gold data");
    eval_cmd->add_option("--model", ev.model, "model file")->required();
    eval_cmd->add_option("--data", ev.data, "gold labeled file")->required();
    eval_cmd->add_option("--threads", ev.threads, "decode threads");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Sample a synthetic corpus");
    gen_cmd->add_option("--spec", gen.spec, "generator spec (JSON)")->required();
    gen_cmd->add_option("--out-prefix", gen.out_prefix, "output path prefix")->required();
    gen_cmd->add_option("--labeled", gen.n_labeled, "labeled sequences");
    gen_cmd->add_option("--unlabeled", gen.n_unlabeled, "unlabeled sequences");
    gen_cmd->add_option("--test", gen.n_test, "test sequences");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sup_cmd->parsed()) run_train_supervised(sup);
        if (semi_cmd->parsed()) run_train_semisup(semi);
        if (pred_cmd->parsed()) run_predict(pred);
        if (eval_cmd->parsed()) run_eval(ev);
        if (gen_cmd->parsed()) run_gen(gen);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
