#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "seqssvm/annealing.hpp"
#include "seqssvm/constraints.hpp"
#include "seqssvm/inference.hpp"
#include "seqssvm/io.hpp"
#include "seqssvm/metrics.hpp"
#include "seqssvm/model.hpp"
#include "seqssvm/solver.hpp"
#include "seqssvm/synth.hpp"
#include "seqssvm/types.hpp"

namespace py = pybind11;
using namespace seqssvm;

namespace {

// Same space construction as the trainers: every sequence in the dataset,
// with the reserved unknown attribute.
FeatureSpacePtr build_space(const Dataset& data) {
    FeatureSpace::Builder b;
    b.add(data);
    return std::make_shared<const FeatureSpace>(b.freeze(data.alphabet, true));
}

Model py_train_supervised(const Dataset& data, double c, std::optional<double> tol,
                          int max_passes) {
    if (data.labeled.empty()) throw domain_error("no labeled data");
    auto space = build_space(data);
    SolverConfig cfg;
    cfg.C = c;
    cfg.tol = tol ? *tol : default_tolerance(data.labeled);
    cfg.max_outer_passes = max_passes;
    return solve_ssvm(data.labeled, space, cfg);
}

AnnealResult py_train_semisupervised(const Dataset& data, const std::vector<ConstraintSpec>& specs,
                                     const AnnealConfig& cfg,
                                     const std::optional<std::vector<LabeledExample>>& eval_set) {
    return train_semisupervised(data, specs, cfg, eval_set ? &*eval_set : nullptr);
}

std::vector<LabelSeq> py_predict(const Model& model, const std::vector<Sequence>& sequences) {
    std::vector<LabelSeq> out;
    out.reserve(sequences.size());
    for (const auto& x : sequences) out.push_back(viterbi_argmax(model, x).labels);
    return out;
}

std::string py_trace_csv(const std::vector<TraceRecord>& trace) {
    std::ostringstream out;
    write_trace(out, trace);
    return out.str();
}

std::string py_model_string(const Model& model) {
    std::ostringstream out;
    write_model(out, model);
    return out.str();
}

} // namespace

PYBIND11_MODULE(_seqssvm, m) {
    m.doc() = "Chain-structured max-margin sequence labeling with constraint-driven "
              "semi-supervised training";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<config_error>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<capacity_error>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

    py::class_<Alphabet>(m, "Alphabet")
        .def(py::init<>())
        .def(py::init<const std::vector<std::string>&>(), py::arg("labels"))
        .def("intern", &Alphabet::intern, py::arg("name"))
        .def("index_of", &Alphabet::index_of, py::arg("name"))
        .def("name_of", &Alphabet::name_of, py::arg("index"))
        .def("freeze", &Alphabet::freeze)
        .def_property_readonly("frozen", &Alphabet::frozen)
        .def_property_readonly("names", &Alphabet::names)
        .def("__len__", &Alphabet::size)
        .def("__eq__", [](const Alphabet& a, const Alphabet& b) { return a == b; });

    py::class_<Token>(m, "Token")
        .def_readonly("surface", &Token::surface)
        .def_readonly("attrs", &Token::attrs)
        .def_readonly("is_punct", &Token::is_punct)
        .def("__repr__", [](const Token& t) { return "Token(" + t.surface + ")"; });
    m.def("make_token", &make_token, py::arg("surface"));

    py::class_<Sequence>(m, "Sequence")
        .def(py::init<>())
        .def_readonly("tokens", &Sequence::tokens)
        .def("__len__", &Sequence::length)
        .def("__eq__", [](const Sequence& a, const Sequence& b) { return a == b; });
    m.def("make_sequence", &make_sequence, py::arg("surfaces"));

    py::class_<LabeledExample>(m, "LabeledExample")
        .def(py::init<>())
        .def(py::init([](Sequence x, LabelSeq y) {
                 return LabeledExample{std::move(x), std::move(y)};
             }),
             py::arg("x"), py::arg("y"))
        .def_readwrite("x", &LabeledExample::x)
        .def_readwrite("y", &LabeledExample::y);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init<>())
        .def_readwrite("labeled", &Dataset::labeled)
        .def_readwrite("unlabeled", &Dataset::unlabeled)
        .def_readwrite("alphabet", &Dataset::alphabet);

    py::enum_<ParseMode>(m, "ParseMode")
        .value("labeled", ParseMode::labeled)
        .value("unlabeled", ParseMode::unlabeled);
    m.def("load_dataset", &load_dataset, py::arg("path"), py::arg("mode"));
    m.def("sniff_mode", &sniff_mode, py::arg("path"));
    m.def("save_labeled", &save_labeled, py::arg("path"), py::arg("examples"),
          py::arg("alphabet"));
    m.def("save_unlabeled", &save_unlabeled, py::arg("path"), py::arg("sequences"));

    py::class_<Model>(m, "Model")
        .def_property_readonly("weights", [](const Model& m_) { return m_.weights; })
        .def_property_readonly("dimension", [](const Model& m_) { return m_.space->dimension(); })
        .def_property_readonly("attr_names",
                               [](const Model& m_) { return m_.space->attr_names(); })
        .def_property_readonly("labels",
                               [](const Model& m_) { return m_.space->alphabet().names(); })
        .def("save", [](const Model& m_, const std::string& path) { save_model(path, m_); },
             py::arg("path"))
        .def("to_string", &py_model_string)
        .def("predict",
             [](const Model& m_, const Sequence& x) { return viterbi_argmax(m_, x).labels; },
             py::arg("x"));
    m.def("load_model", &load_model, py::arg("path"));

    m.def("viterbi_argmax",
          [](const Model& model, const Sequence& x) {
              auto r = viterbi_argmax(model, x);
              return py::make_tuple(r.labels, r.score);
          },
          py::arg("model"), py::arg("x"), "Returns (labels, score)");
    m.def("score_of", py::overload_cast<const Model&, const Sequence&, const LabelSeq&>(&score_of),
          py::arg("model"), py::arg("x"), py::arg("y"));
    m.def("slack_of", py::overload_cast<const Model&, const Sequence&, const LabelSeq&>(&slack_of),
          py::arg("model"), py::arg("x"), py::arg("y"));
    m.def("predict", &py_predict, py::arg("model"), py::arg("sequences"),
          py::call_guard<py::gil_scoped_release>());
    m.def("hamming_loss", &hamming_loss, py::arg("a"), py::arg("b"));
    m.def("token_accuracy", &token_accuracy, py::arg("pred"), py::arg("gold"));

    py::enum_<ConstraintLevel>(m, "ConstraintLevel")
        .value("instance", ConstraintLevel::instance)
        .value("corpus", ConstraintLevel::corpus);
    py::enum_<Relation>(m, "Relation")
        .value("eq", Relation::eq)
        .value("le", Relation::le)
        .value("ge", Relation::ge);
    py::enum_<PenaltyForm>(m, "PenaltyForm")
        .value("squared", PenaltyForm::squared)
        .value("absolute", PenaltyForm::absolute)
        .value("constant", PenaltyForm::constant);

    py::class_<ConstraintSpec>(m, "ConstraintSpec")
        .def(py::init<>())
        .def_readwrite("id", &ConstraintSpec::id)
        .def_readwrite("level", &ConstraintSpec::level)
        .def_readwrite("feature", &ConstraintSpec::feature)
        .def_readwrite("label", &ConstraintSpec::label)
        .def_readwrite("word", &ConstraintSpec::word)
        .def_readwrite("label_index", &ConstraintSpec::label_index)
        .def_readwrite("relation", &ConstraintSpec::relation)
        .def_readwrite("target", &ConstraintSpec::target)
        .def_readwrite("penalty_form", &ConstraintSpec::penalty_form)
        .def_readwrite("scale", &ConstraintSpec::scale);
    m.def("parse_constraints", &parse_constraints, py::arg("json_text"), py::arg("alphabet"));
    m.def("load_constraints", &load_constraints, py::arg("path"), py::arg("alphabet"));
    m.def("constraints_to_json", &constraints_to_json, py::arg("specs"));
    m.def("constraint_penalty", &penalty, py::arg("spec"), py::arg("value"));

    py::class_<SolverConfig>(m, "SolverConfig")
        .def(py::init<>())
        .def_readwrite("C", &SolverConfig::C)
        .def_readwrite("tol", &SolverConfig::tol)
        .def_readwrite("max_outer_passes", &SolverConfig::max_outer_passes)
        .def_readwrite("dual_inner_iters", &SolverConfig::dual_inner_iters)
        .def_readwrite("record_objectives", &SolverConfig::record_objectives);

    py::enum_<ComponentOrder>(m, "ComponentOrder")
        .value("random", ComponentOrder::random)
        .value("sequential", ComponentOrder::sequential);
    py::class_<SwitchConfig>(m, "SwitchConfig")
        .def(py::init<>())
        .def_readwrite("maxswitches", &SwitchConfig::maxswitches)
        .def_readwrite("min_decrease", &SwitchConfig::min_decrease)
        .def_readwrite("rng_seed", &SwitchConfig::rng_seed)
        .def_readwrite("component_order", &SwitchConfig::component_order);

    py::class_<AnnealConfig>(m, "AnnealConfig")
        .def(py::init<>())
        .def_readwrite("schedule", &AnnealConfig::schedule)
        .def_readwrite("c_l", &AnnealConfig::c_l)
        .def_readwrite("maxiter", &AnnealConfig::maxiter)
        .def_readwrite("switch_cfg", &AnnealConfig::switch_cfg)
        .def_readwrite("solver_cfg", &AnnealConfig::solver_cfg)
        .def_readwrite("warm_labelings", &AnnealConfig::warm_labelings);
    m.def("default_cu_schedule", &default_cu_schedule);

    py::class_<TraceRecord>(m, "TraceRecord")
        .def_readonly("c_u", &TraceRecord::c_u)
        .def_readonly("iter", &TraceRecord::iter)
        .def_readonly("objective", &TraceRecord::objective)
        .def_readonly("penalty", &TraceRecord::penalty)
        .def_readonly("changed", &TraceRecord::changed)
        .def_readonly("eval_accuracy", &TraceRecord::eval_accuracy);
    m.def("trace_to_csv", &py_trace_csv, py::arg("trace"));

    py::class_<AnnealResult>(m, "AnnealResult")
        .def_readonly("model", &AnnealResult::model)
        .def_readonly("labelings", &AnnealResult::labelings)
        .def_readonly("trace", &AnnealResult::trace)
        .def_readonly("best_model", &AnnealResult::best_model)
        .def_readonly("best_accuracy", &AnnealResult::best_accuracy)
        .def_readonly("best_c_u", &AnnealResult::best_c_u)
        .def_readonly("best_iter", &AnnealResult::best_iter);

    m.def("train_supervised", &py_train_supervised, py::arg("data"), py::arg("c"),
          py::arg("tol") = std::nullopt, py::arg("max_passes") = 50,
          py::call_guard<py::gil_scoped_release>());
    m.def("train_semisupervised", &py_train_semisupervised, py::arg("data"), py::arg("specs"),
          py::arg("config") = AnnealConfig{}, py::arg("eval_set") = std::nullopt,
          py::call_guard<py::gil_scoped_release>());
    m.def("default_tolerance", &default_tolerance, py::arg("examples"));

    py::class_<GeneratorSpec>(m, "GeneratorSpec")
        .def(py::init<>())
        .def_readwrite("num_labels", &GeneratorSpec::num_labels)
        .def_readwrite("vocab", &GeneratorSpec::vocab)
        .def_readwrite("transition", &GeneratorSpec::transition)
        .def_readwrite("emission", &GeneratorSpec::emission)
        .def_readwrite("len_min", &GeneratorSpec::len_min)
        .def_readwrite("len_max", &GeneratorSpec::len_max)
        .def_readwrite("seed", &GeneratorSpec::seed)
        .def("validate", &GeneratorSpec::validate)
        .def_static("random_peaked", &GeneratorSpec::random_peaked, py::arg("num_labels"),
                    py::arg("vocab"), py::arg("len_min"), py::arg("len_max"), py::arg("seed"),
                    py::arg("trans_diag"), py::arg("emit_peak"));
    m.def("generator_from_json", &generator_from_json, py::arg("json_text"));
    m.def("generator_to_json", &generator_to_json, py::arg("spec"));
    m.def("load_generator_spec", &load_generator_spec, py::arg("path"));

    py::class_<TruthStats>(m, "TruthStats")
        .def_readonly("label_counts", &TruthStats::label_counts)
        .def_readonly("total_tokens", &TruthStats::total_tokens)
        .def_readonly("label_percentage", &TruthStats::label_percentage)
        .def_readonly("nonpunct_transition_fraction", &TruthStats::nonpunct_transition_fraction);
    py::class_<SynthCorpus>(m, "SynthCorpus")
        .def_readonly("data", &SynthCorpus::data)
        .def_readonly("test", &SynthCorpus::test)
        .def_readonly("truth", &SynthCorpus::truth);
    m.def("generate", &generate, py::arg("spec"), py::arg("n_labeled"), py::arg("n_unlabeled"),
          py::arg("n_test"), py::call_guard<py::gil_scoped_release>());
    m.def("truth_to_json", &truth_to_json, py::arg("truth"), py::arg("alphabet"));
}
