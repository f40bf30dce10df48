#include "seqssvm/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace seqssvm {

namespace {

using nlohmann::json;

bool feature_takes_label(const std::string& tag) {
    return tag == "label_list_count" || tag == "word_label" || tag == "label_percentage";
}

ConstraintLevel level_of_tag(const std::string& tag) {
    if (tag == "label_list_count" || tag == "word_label" || tag == "noncontiguous_labels")
        return ConstraintLevel::instance;
    if (tag == "label_percentage" || tag == "nonpunct_transition_fraction")
        return ConstraintLevel::corpus;
    throw config_error("unknown constraint feature '" + tag + "'");
}

Relation parse_relation(const std::string& s) {
    if (s == "eq") return Relation::eq;
    if (s == "le") return Relation::le;
    if (s == "ge") return Relation::ge;
    throw config_error("unknown relation '" + s + "' (expected eq|le|ge)");
}

PenaltyForm parse_penalty_form(const std::string& s) {
    if (s == "squared") return PenaltyForm::squared;
    if (s == "absolute") return PenaltyForm::absolute;
    if (s == "constant") return PenaltyForm::constant;
    throw config_error("unknown penalty '" + s + "' (expected squared|absolute|constant)");
}

const char* level_name(ConstraintLevel level) {
    return level == ConstraintLevel::instance ? "instance" : "corpus";
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::eq: return "eq";
        case Relation::le: return "le";
        default: return "ge";
    }
}

const char* penalty_name(PenaltyForm p) {
    switch (p) {
        case PenaltyForm::squared: return "squared";
        case PenaltyForm::absolute: return "absolute";
        default: return "constant";
    }
}

// Count of maximal runs of `label` in y.
int run_count(const LabelSeq& y, int label) {
    int runs = 0;
    for (std::size_t m = 0; m < y.size(); ++m)
        if (y[m] == label && (m == 0 || y[m - 1] != label)) ++runs;
    return runs;
}

} // namespace

std::vector<ConstraintSpec> parse_constraints(const std::string& json_text,
                                              const Alphabet& alphabet) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("constraint file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw config_error("constraint file must be a JSON array");

    std::vector<ConstraintSpec> specs;
    for (const auto& rec : doc) {
        if (!rec.is_object()) throw config_error("constraint record must be an object");
        ConstraintSpec spec;
        try {
            spec.id = rec.at("id").get<std::string>();
            spec.feature = rec.at("feature").get<std::string>();
            spec.relation = parse_relation(rec.at("relation").get<std::string>());
            spec.target = rec.at("c").get<double>();
            spec.penalty_form = parse_penalty_form(rec.at("penalty").get<std::string>());
            spec.scale = rec.at("r").get<double>();
            spec.level = level_of_tag(spec.feature);
            if (rec.contains("level") &&
                rec.at("level").get<std::string>() != level_name(spec.level))
                throw config_error("constraint '" + spec.id + "': feature '" + spec.feature +
                                   "' is " + level_name(spec.level) + "-level");
            json params = rec.value("params", json::object());
            if (feature_takes_label(spec.feature)) {
                spec.label = params.at("label").get<std::string>();
                spec.label_index = alphabet.index_of(spec.label);
                if (spec.label_index < 0)
                    throw config_error("constraint '" + spec.id + "': unknown label '" +
                                       spec.label + "'");
            }
            if (spec.feature == "word_label") {
                spec.word = params.at("word").get<std::string>();
                if (spec.word.empty())
                    throw config_error("constraint '" + spec.id + "': empty word");
            }
        } catch (const json::exception& e) {
            throw config_error("bad constraint record" +
                               (spec.id.empty() ? std::string() : " '" + spec.id + "'") + ": " +
                               e.what());
        }
        if (!(spec.scale > 0.0))
            throw config_error("constraint '" + spec.id + "': r must be positive");
        specs.push_back(std::move(spec));
    }
    return specs;
}

std::vector<ConstraintSpec> load_constraints(const std::string& path, const Alphabet& alphabet) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_constraints(ss.str(), alphabet);
}

std::string constraints_to_json(const std::vector<ConstraintSpec>& specs) {
    json doc = json::array();
    for (const auto& spec : specs) {
        json rec{{"id", spec.id},
                 {"level", level_name(spec.level)},
                 {"feature", spec.feature},
                 {"relation", relation_name(spec.relation)},
                 {"c", spec.target},
                 {"penalty", penalty_name(spec.penalty_form)},
                 {"r", spec.scale}};
        json params = json::object();
        if (feature_takes_label(spec.feature)) params["label"] = spec.label;
        if (spec.feature == "word_label") params["word"] = spec.word;
        if (!params.empty()) rec["params"] = params;
        doc.push_back(std::move(rec));
    }
    return doc.dump(2) + "\n";
}

double eval_feature(const ConstraintSpec& spec, const Sequence& x, const LabelSeq& y) {
    if (spec.level != ConstraintLevel::instance)
        throw domain_error("corpus-level constraint evaluated on one instance");
    if (static_cast<int>(y.size()) != x.length()) throw domain_error("labeling length mismatch");
    if (spec.feature == "label_list_count") return run_count(y, spec.label_index);
    if (spec.feature == "word_label") {
        for (int m = 0; m < x.length(); ++m)
            if (x.tokens[m].surface == spec.word && y[m] != spec.label_index) return 0.0;
        return 1.0; // every occurrence matches, vacuously when absent
    }
    if (spec.feature == "noncontiguous_labels") {
        std::vector<int> runs;
        for (int lab : y)
            if (lab >= static_cast<int>(runs.size())) runs.resize(static_cast<std::size_t>(lab) + 1, 0);
        for (std::size_t m = 0; m < y.size(); ++m)
            if (m == 0 || y[m] != y[m - 1]) ++runs[y[m]];
        int count = 0;
        for (int r : runs)
            if (r >= 2) ++count;
        return count;
    }
    throw config_error("unknown constraint feature '" + spec.feature + "'");
}

double penalty(const ConstraintSpec& spec, double value) {
    double diff = value - spec.target;
    bool violated;
    switch (spec.relation) {
        case Relation::eq: violated = diff != 0.0; break;
        case Relation::le: violated = diff > 0.0; break;
        default: violated = diff < 0.0; break;
    }
    if (!violated) return 0.0;
    switch (spec.penalty_form) {
        case PenaltyForm::squared: return spec.scale * diff * diff;
        case PenaltyForm::absolute: return spec.scale * std::abs(diff);
        default: return spec.scale;
    }
}

CorpusState::CorpusState(std::vector<const Sequence*> sequences, std::vector<LabelSeq> labelings,
                         int label_count)
    : sequences_(std::move(sequences)),
      labelings_(std::move(labelings)),
      label_counts_(static_cast<std::size_t>(label_count), 0) {
    if (label_count < 1) throw domain_error("label_count must be >= 1");
    if (sequences_.size() != labelings_.size())
        throw domain_error("sequence/labeling count mismatch");
    for (std::size_t j = 0; j < sequences_.size(); ++j) {
        if (!sequences_[j]) throw domain_error("null sequence");
        if (static_cast<int>(labelings_[j].size()) != sequences_[j]->length())
            throw domain_error("labeling length mismatch");
        for (int lab : labelings_[j])
            if (lab < 0 || lab >= label_count) throw domain_error("label index out of range");
    }
    rebuild();
}

void CorpusState::count_sequence(int j, int sign) {
    const auto& y = labelings_[j];
    const auto& x = *sequences_[j];
    total_tokens_ += sign * static_cast<long long>(y.size());
    for (int lab : y) label_counts_[lab] += sign;
    for (std::size_t m = 1; m < y.size(); ++m) {
        if (y[m - 1] != y[m]) {
            transitions_ += sign;
            if (!x.tokens[m - 1].is_punct) nonpunct_transitions_ += sign;
        }
    }
}

void CorpusState::rebuild() {
    std::fill(label_counts_.begin(), label_counts_.end(), 0LL);
    total_tokens_ = 0;
    transitions_ = 0;
    nonpunct_transitions_ = 0;
    for (int j = 0; j < size(); ++j) count_sequence(j, +1);
}

void CorpusState::apply_switch(int j, int m, int old_label, int new_label) {
    if (j < 0 || j >= size()) throw domain_error("example index out of range");
    auto& y = labelings_[j];
    if (m < 0 || m >= static_cast<int>(y.size())) throw domain_error("position out of range");
    if (y[m] != old_label) throw domain_error("apply_switch: stale old label");
    if (new_label == old_label) throw domain_error("apply_switch: labels are equal");
    if (new_label < 0 || new_label >= static_cast<int>(label_counts_.size()))
        throw domain_error("label index out of range");

    const auto& x = *sequences_[j];
    label_counts_[old_label] -= 1;
    label_counts_[new_label] += 1;
    if (m > 0) {
        int was = y[m - 1] != old_label ? 1 : 0;
        int now = y[m - 1] != new_label ? 1 : 0;
        transitions_ += now - was;
        if (!x.tokens[m - 1].is_punct) nonpunct_transitions_ += now - was;
    }
    if (m + 1 < static_cast<int>(y.size())) {
        int was = old_label != y[m + 1] ? 1 : 0;
        int now = new_label != y[m + 1] ? 1 : 0;
        transitions_ += now - was;
        if (!x.tokens[m].is_punct) nonpunct_transitions_ += now - was;
    }
    y[m] = new_label;
}

double eval_corpus_feature(const ConstraintSpec& spec, const CorpusState& state) {
    if (spec.level != ConstraintLevel::corpus)
        throw domain_error("instance-level constraint evaluated on the corpus");
    if (spec.feature == "label_percentage") {
        if (state.total_tokens() == 0) return 0.0;
        return 100.0 * static_cast<double>(state.label_count(spec.label_index)) /
               static_cast<double>(state.total_tokens());
    }
    if (spec.feature == "nonpunct_transition_fraction") {
        if (state.transitions() == 0) return 0.0;
        return static_cast<double>(state.nonpunct_transitions()) /
               static_cast<double>(state.transitions());
    }
    throw config_error("unknown constraint feature '" + spec.feature + "'");
}

double total_constraint_penalty(const std::vector<ConstraintSpec>& specs,
                                const CorpusState& state) {
    double total = 0.0;
    for (const auto& spec : specs) {
        if (spec.level == ConstraintLevel::instance) {
            for (int j = 0; j < state.size(); ++j)
                total += penalty(spec, eval_feature(spec, state.sequence(j), state.labeling(j)));
        } else {
            total += penalty(spec, eval_corpus_feature(spec, state));
        }
    }
    return total;
}

double delta_penalty(const std::vector<ConstraintSpec>& specs, const CorpusState& state, int j,
                     int m, int new_label) {
    const auto& y = state.labeling(j);
    const int old_label = y[m];
    if (new_label == old_label) throw domain_error("delta_penalty: labels are equal");

    bool any_instance = false;
    for (const auto& spec : specs)
        if (spec.level == ConstraintLevel::instance) any_instance = true;

    double delta = 0.0;
    LabelSeq switched;
    if (any_instance) {
        switched = y;
        switched[m] = new_label;
    }
    for (const auto& spec : specs) {
        if (spec.level == ConstraintLevel::instance) {
            const auto& x = state.sequence(j);
            delta += penalty(spec, eval_feature(spec, x, switched)) -
                     penalty(spec, eval_feature(spec, x, y));
            continue;
        }
        if (spec.feature == "label_percentage") {
            long long count = state.label_count(spec.label_index);
            long long switched_count = count + (new_label == spec.label_index ? 1 : 0) -
                                       (old_label == spec.label_index ? 1 : 0);
            if (switched_count == count) continue;
            double total = static_cast<double>(state.total_tokens());
            delta += penalty(spec, 100.0 * static_cast<double>(switched_count) / total) -
                     penalty(spec, 100.0 * static_cast<double>(count) / total);
        } else { // nonpunct_transition_fraction
            const auto& x = state.sequence(j);
            long long d_trans = 0, d_np = 0;
            if (m > 0) {
                int was = y[m - 1] != old_label ? 1 : 0;
                int now = y[m - 1] != new_label ? 1 : 0;
                d_trans += now - was;
                if (!x.tokens[m - 1].is_punct) d_np += now - was;
            }
            if (m + 1 < static_cast<int>(y.size())) {
                int was = old_label != y[m + 1] ? 1 : 0;
                int now = new_label != y[m + 1] ? 1 : 0;
                d_trans += now - was;
                if (!x.tokens[m].is_punct) d_np += now - was;
            }
            long long trans = state.transitions() + d_trans;
            long long np = state.nonpunct_transitions() + d_np;
            double now_value =
                trans == 0 ? 0.0 : static_cast<double>(np) / static_cast<double>(trans);
            double was_value = eval_corpus_feature(spec, state);
            delta += penalty(spec, now_value) - penalty(spec, was_value);
        }
    }
    return delta;
}

} // namespace seqssvm
