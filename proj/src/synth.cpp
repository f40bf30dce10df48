#include "seqssvm/synth.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seqssvm/rng.hpp"

namespace seqssvm {

namespace {

using nlohmann::json;

void check_stochastic(const std::vector<std::vector<double>>& mat, int rows, int cols,
                      const char* name) {
    if (static_cast<int>(mat.size()) != rows)
        throw domain_error(std::string(name) + " matrix has wrong row count");
    for (const auto& row : mat) {
        if (static_cast<int>(row.size()) != cols)
            throw domain_error(std::string(name) + " matrix has wrong column count");
        double sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0)) throw domain_error(std::string(name) + " matrix has negative entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9)
            throw domain_error(std::string(name) + " matrix row does not sum to 1");
    }
}

} // namespace

void GeneratorSpec::validate() const {
    if (num_labels < 1) throw domain_error("num_labels must be >= 1");
    if (vocab < 1) throw domain_error("vocab must be >= 1");
    if (len_min < 1) throw domain_error("len_min must be >= 1");
    if (len_min > len_max) throw domain_error("len_min must be <= len_max");
    check_stochastic(transition, num_labels, num_labels, "transition");
    check_stochastic(emission, num_labels, vocab, "emission");
}

GeneratorSpec GeneratorSpec::random_peaked(int num_labels, int vocab, int len_min, int len_max,
                                           std::uint64_t seed, double trans_diag,
                                           double emit_peak) {
    if (num_labels < 1) throw domain_error("num_labels must be >= 1");
    if (vocab < num_labels) throw domain_error("vocab must be >= num_labels");
    if (!(trans_diag >= 0.0 && trans_diag <= 1.0)) throw domain_error("trans_diag not in [0,1]");
    if (!(emit_peak >= 0.0 && emit_peak <= 1.0)) throw domain_error("emit_peak not in [0,1]");
    const int K = num_labels, V = vocab;

    GeneratorSpec spec;
    spec.num_labels = K;
    spec.vocab = V;
    spec.len_min = len_min;
    spec.len_max = len_max;
    spec.seed = seed;

    double off = K > 1 ? (1.0 - trans_diag) / (K - 1) : 0.0;
    spec.transition.assign(K, std::vector<double>(K, off));
    for (int k = 0; k < K; ++k) spec.transition[k][k] = K > 1 ? trans_diag : 1.0;

    // Each label prefers its own slice of the vocabulary; the rest of the
    // mass is spread uniformly so labels overlap and the task stays non-trivial.
    spec.emission.assign(K, std::vector<double>(V, 0.0));
    for (int k = 0; k < K; ++k) {
        int lo = k * V / K, hi = (k + 1) * V / K;
        double base = (1.0 - emit_peak) / V;
        for (int v = 0; v < V; ++v) spec.emission[k][v] = base;
        double extra = emit_peak / (hi - lo);
        for (int v = lo; v < hi; ++v) spec.emission[k][v] += extra;
    }
    spec.validate();
    return spec;
}

GeneratorSpec generator_from_json(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("generator spec is not valid JSON: ") + e.what());
    }
    GeneratorSpec spec;
    try {
        spec.num_labels = doc.at("num_labels").get<int>();
        spec.vocab = doc.at("vocab").get<int>();
        spec.transition = doc.at("transition").get<std::vector<std::vector<double>>>();
        spec.emission = doc.at("emission").get<std::vector<std::vector<double>>>();
        spec.len_min = doc.at("len_min").get<int>();
        spec.len_max = doc.at("len_max").get<int>();
        spec.seed = doc.value("seed", std::uint64_t{0});
    } catch (const json::exception& e) {
        throw config_error(std::string("bad generator spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

GeneratorSpec load_generator_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return generator_from_json(ss.str());
}

std::string generator_to_json(const GeneratorSpec& spec) {
    json doc{{"num_labels", spec.num_labels}, {"vocab", spec.vocab},
             {"transition", spec.transition}, {"emission", spec.emission},
             {"len_min", spec.len_min},       {"len_max", spec.len_max},
             {"seed", spec.seed}};
    return doc.dump(2) + "\n";
}

SynthCorpus generate(const GeneratorSpec& spec, int n_labeled, int n_unlabeled, int n_test) {
    spec.validate();
    if (n_labeled < 0 || n_unlabeled < 0 || n_test < 0) throw domain_error("negative split size");
    const int K = spec.num_labels;
    Rng rng(spec.seed);

    // Start labels from the chain's stationary distribution.
    std::vector<double> pi(static_cast<std::size_t>(K), 1.0 / K);
    for (int it = 0; it < 1000; ++it) {
        std::vector<double> next(static_cast<std::size_t>(K), 0.0);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < K; ++j) next[j] += pi[i] * spec.transition[i][j];
        double sum = 0.0;
        for (double p : next) sum += p;
        for (double& p : next) p /= sum;
        pi = std::move(next);
    }

    auto draw = [&rng](const std::vector<double>& p) {
        double r = rng.uniform(), acc = 0.0;
        for (std::size_t i = 0; i + 1 < p.size(); ++i) {
            acc += p[i];
            if (r < acc) return static_cast<int>(i);
        }
        return static_cast<int>(p.size()) - 1;
    };

    SynthCorpus corpus;
    for (int k = 0; k < K; ++k) corpus.data.alphabet.intern("L" + std::to_string(k));

    auto sample_one = [&](Sequence& x, LabelSeq& y) {
        int span = spec.len_max - spec.len_min + 1;
        int M = spec.len_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(span)));
        y.resize(static_cast<std::size_t>(M));
        x.tokens.clear();
        x.tokens.reserve(static_cast<std::size_t>(M));
        for (int m = 0; m < M; ++m) {
            y[m] = m == 0 ? draw(pi) : draw(spec.transition[y[m - 1]]);
            int v = draw(spec.emission[y[m]]);
            x.tokens.push_back(make_token("w" + std::to_string(v)));
        }
    };

    std::vector<LabelSeq> hidden; // true labels of the unlabeled split
    for (int i = 0; i < n_labeled; ++i) {
        LabeledExample ex;
        sample_one(ex.x, ex.y);
        corpus.data.labeled.push_back(std::move(ex));
    }
    for (int j = 0; j < n_unlabeled; ++j) {
        Sequence x;
        LabelSeq y;
        sample_one(x, y);
        corpus.data.unlabeled.push_back(std::move(x));
        hidden.push_back(std::move(y));
    }
    for (int t = 0; t < n_test; ++t) {
        LabeledExample ex;
        sample_one(ex.x, ex.y);
        corpus.test.push_back(std::move(ex));
    }

    TruthStats& truth = corpus.truth;
    truth.label_counts.assign(static_cast<std::size_t>(K), 0);
    long long transitions = 0, nonpunct = 0;
    for (std::size_t j = 0; j < hidden.size(); ++j) {
        const auto& y = hidden[j];
        const auto& x = corpus.data.unlabeled[j];
        truth.total_tokens += static_cast<long long>(y.size());
        for (int lab : y) ++truth.label_counts[lab];
        for (std::size_t m = 1; m < y.size(); ++m) {
            if (y[m - 1] != y[m]) {
                ++transitions;
                if (!x.tokens[m - 1].is_punct) ++nonpunct;
            }
        }
    }
    truth.label_percentage.assign(static_cast<std::size_t>(K), 0.0);
    if (truth.total_tokens > 0)
        for (int k = 0; k < K; ++k)
            truth.label_percentage[k] = 100.0 * static_cast<double>(truth.label_counts[k]) /
                                        static_cast<double>(truth.total_tokens);
    truth.nonpunct_transition_fraction =
        transitions > 0 ? static_cast<double>(nonpunct) / static_cast<double>(transitions) : 0.0;
    return corpus;
}

std::string truth_to_json(const TruthStats& truth, const Alphabet& alphabet) {
    json counts = json::object(), percentages = json::object();
    for (int k = 0; k < alphabet.size(); ++k) {
        counts[alphabet.name_of(k)] = truth.label_counts[k];
        percentages[alphabet.name_of(k)] = truth.label_percentage[k];
    }
    json doc{{"total_tokens", truth.total_tokens},
             {"label_counts", counts},
             {"label_percentage", percentages},
             {"nonpunct_transition_fraction", truth.nonpunct_transition_fraction}};
    return doc.dump(2) + "\n";
}

} // namespace seqssvm
