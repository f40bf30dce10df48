#include "seqssvm/model.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace seqssvm {

Model::Model(FeatureSpacePtr s, std::vector<double> w) : space(std::move(s)), weights(std::move(w)) {
    if (weights.size() != space->dimension())
        throw domain_error("weight vector does not match feature space dimension");
}

Model make_model(FeatureSpace space) {
    return Model(std::make_shared<const FeatureSpace>(std::move(space)));
}

namespace {

constexpr const char* kMagic = "seqssvm model 1";

std::string fmt_weight(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string expect_line(std::istream& in, std::size_t& lineno) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("unexpected end of model file", lineno + 1);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

long expect_count(const std::string& line, const char* key, std::size_t lineno) {
    std::istringstream ss(line);
    std::string k;
    long n = -1;
    ss >> k >> n;
    if (k != key || n < 0) throw parse_error(std::string("expected '") + key + " <count>'", lineno);
    return n;
}

} // namespace

void write_model(std::ostream& out, const Model& model) {
    const auto& fs = *model.space;
    out << kMagic << '\n';
    out << "labels " << fs.label_count() << '\n';
    for (const auto& name : fs.alphabet().names()) out << name << '\n';
    out << "attrs " << fs.attr_count() << ' ' << (fs.has_unknown() ? 1 : 0) << '\n';
    for (const auto& name : fs.attr_names()) out << name << '\n';
    std::size_t nonzero = 0;
    for (double w : model.weights)
        if (w != 0.0) ++nonzero;
    out << "weights " << model.weights.size() << ' ' << nonzero << '\n';
    for (std::size_t i = 0; i < model.weights.size(); ++i)
        if (model.weights[i] != 0.0) out << i << '\t' << fmt_weight(model.weights[i]) << '\n';
}

void save_model(const std::string& path, const Model& model) {
    std::ofstream out(path);
    if (!out) throw error("cannot write '" + path + "'");
    write_model(out, model);
}

Model read_model(std::istream& in) {
    std::size_t lineno = 0;
    if (expect_line(in, lineno) != kMagic)
        throw parse_error("not a model file (bad header)", lineno);

    long num_labels = expect_count(expect_line(in, lineno), "labels", lineno);
    Alphabet alphabet;
    for (long i = 0; i < num_labels; ++i) alphabet.intern(expect_line(in, lineno));

    std::string attrs_line = expect_line(in, lineno);
    std::istringstream as(attrs_line);
    std::string key;
    long num_attrs = -1;
    int unk_flag = -1;
    as >> key >> num_attrs >> unk_flag;
    if (key != "attrs" || num_attrs < 0 || (unk_flag != 0 && unk_flag != 1))
        throw parse_error("expected 'attrs <count> <unk-flag>'", lineno);

    FeatureSpace::Builder builder;
    bool with_unknown = unk_flag == 1;
    for (long i = 0; i < num_attrs; ++i) {
        std::string name = expect_line(in, lineno);
        if (name.empty()) throw parse_error("empty attribute name", lineno);
        if (with_unknown && i == 0) {
            if (name != FeatureSpace::kUnknownAttr)
                throw parse_error("first attribute must be the unknown slot", lineno);
            continue;
        }
        builder.add_attr(name);
    }
    auto space = std::make_shared<const FeatureSpace>(builder.freeze(alphabet, with_unknown));
    if (space->attr_count() != num_attrs)
        throw parse_error("duplicate attribute names", lineno);

    std::string weights_line = expect_line(in, lineno);
    std::istringstream ws(weights_line);
    long dim = -1, nonzero = -1;
    ws >> key >> dim >> nonzero;
    if (key != "weights" || dim < 0 || nonzero < 0)
        throw parse_error("expected 'weights <dim> <nonzero>'", lineno);
    if (static_cast<std::size_t>(dim) != space->dimension())
        throw parse_error("weight dimension does not match feature space", lineno);

    Model model(space);
    for (long i = 0; i < nonzero; ++i) {
        std::string line = expect_line(in, lineno);
        std::istringstream ls(line);
        long index = -1;
        double value = 0.0;
        ls >> index >> value;
        if (ls.fail() || index < 0 || index >= dim)
            throw parse_error("bad weight line", lineno);
        model.weights[static_cast<std::size_t>(index)] = value;
    }
    return model;
}

Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open '" + path + "'");
    return read_model(in);
}

} // namespace seqssvm
