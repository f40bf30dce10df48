#include "seqssvm/io.hpp"

#include <fstream>
#include <sstream>

namespace seqssvm {

namespace {

void flush_block(std::vector<Token>& tokens, LabelSeq& labels, ParseMode mode, Dataset& ds) {
    if (tokens.empty()) return;
    Sequence x;
    x.tokens = std::move(tokens);
    tokens.clear();
    if (mode == ParseMode::labeled) {
        ds.labeled.push_back({std::move(x), std::move(labels)});
        labels.clear();
    } else {
        ds.unlabeled.push_back(std::move(x));
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    return out;
}

} // namespace

void parse_dataset(std::istream& in, ParseMode mode, Dataset& ds) {
    std::vector<Token> tokens;
    LabelSeq labels;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            flush_block(tokens, labels, mode, ds);
            continue;
        }
        auto tab = line.find('\t');
        if (mode == ParseMode::labeled) {
            if (tab == std::string::npos)
                throw parse_error("expected token<TAB>label", lineno);
            if (line.find('\t', tab + 1) != std::string::npos)
                throw parse_error("too many columns", lineno);
            std::string token = line.substr(0, tab);
            std::string label = line.substr(tab + 1);
            if (token.empty()) throw parse_error("empty token", lineno);
            if (label.empty()) throw parse_error("empty label", lineno);
            tokens.push_back(make_token(token));
            labels.push_back(ds.alphabet.intern(label));
        } else {
            if (tab != std::string::npos)
                throw parse_error("unexpected label column in unlabeled data", lineno);
            tokens.push_back(make_token(line));
        }
    }
    flush_block(tokens, labels, mode, ds);
}

Dataset load_dataset(const std::string& path, ParseMode mode) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    Dataset ds;
    parse_dataset(in, mode, ds);
    return ds;
}

ParseMode sniff_mode(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        return line.find('\t') != std::string::npos ? ParseMode::labeled : ParseMode::unlabeled;
    }
    return ParseMode::unlabeled;
}

void write_labeled(std::ostream& out, const std::vector<LabeledExample>& examples,
                   const Alphabet& alphabet) {
    for (std::size_t i = 0; i < examples.size(); ++i) {
        if (i > 0) out << '\n';
        const auto& [x, y] = examples[i];
        for (int m = 0; m < x.length(); ++m)
            out << x.tokens[m].surface << '\t' << alphabet.name_of(y[m]) << '\n';
    }
}

void write_unlabeled(std::ostream& out, const std::vector<Sequence>& sequences) {
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        if (i > 0) out << '\n';
        for (const auto& t : sequences[i].tokens) out << t.surface << '\n';
    }
}

void write_predictions(std::ostream& out, const std::vector<Sequence>& sequences,
                       const std::vector<LabelSeq>& labels, const Alphabet& alphabet) {
    if (sequences.size() != labels.size())
        throw domain_error("write_predictions: sequence/label count mismatch");
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        if (i > 0) out << '\n';
        const auto& x = sequences[i];
        for (int m = 0; m < x.length(); ++m)
            out << x.tokens[m].surface << '\t' << alphabet.name_of(labels[i][m]) << '\n';
    }
}

void save_labeled(const std::string& path, const std::vector<LabeledExample>& examples,
                  const Alphabet& alphabet) {
    auto out = open_out(path);
    write_labeled(out, examples, alphabet);
}

void save_unlabeled(const std::string& path, const std::vector<Sequence>& sequences) {
    auto out = open_out(path);
    write_unlabeled(out, sequences);
}

} // namespace seqssvm
