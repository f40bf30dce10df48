#include "seqssvm/types.hpp"

#include <cctype>

namespace seqssvm {

Alphabet::Alphabet(const std::vector<std::string>& labels) {
    for (const auto& name : labels) intern(name);
}

int Alphabet::intern(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    if (frozen_) throw domain_error("unknown label '" + name + "' (alphabet is frozen)");
    if (name.empty()) throw domain_error("empty label name");
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, id);
    return id;
}

int Alphabet::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int Alphabet::require(const std::string& name) const {
    int id = index_of(name);
    if (id < 0) throw domain_error("unknown label '" + name + "'");
    return id;
}

const std::string& Alphabet::name_of(int index) const {
    if (index < 0 || index >= size()) throw domain_error("label index out of range");
    return names_[static_cast<std::size_t>(index)];
}

namespace {

bool ascii_punct(unsigned char c) { return std::ispunct(c) != 0; }

std::string shape_of(const std::string& s) {
    std::string shape;
    char last = '\0';
    for (unsigned char c : s) {
        char cls;
        if (std::isupper(c))
            cls = 'X';
        else if (std::islower(c))
            cls = 'x';
        else if (std::isdigit(c))
            cls = '9';
        else
            cls = '.';
        if (cls != last) shape.push_back(cls);
        last = cls;
    }
    return shape;
}

} // namespace

Token make_token(const std::string& surface) {
    Token t;
    t.surface = surface;
    std::string lower = surface;
    bool all_punct = !surface.empty();
    bool all_digit = !surface.empty();
    for (auto& c : lower) {
        unsigned char uc = static_cast<unsigned char>(c);
        c = static_cast<char>(std::tolower(uc));
        all_punct = all_punct && ascii_punct(uc);
        all_digit = all_digit && std::isdigit(uc);
    }
    t.is_punct = all_punct;
    t.attrs.push_back("lc=" + lower);
    if (all_punct) t.attrs.push_back("punct");
    if (all_digit) t.attrs.push_back("digit");
    t.attrs.push_back("shape=" + shape_of(surface));
    return t;
}

Sequence make_sequence(const std::vector<std::string>& surfaces) {
    Sequence x;
    x.tokens.reserve(surfaces.size());
    for (const auto& s : surfaces) x.tokens.push_back(make_token(s));
    return x;
}

double hamming_loss(const LabelSeq& a, const LabelSeq& b) {
    if (a.size() != b.size()) throw domain_error("hamming_loss: length mismatch");
    double count = 0.0;
    for (std::size_t m = 0; m < a.size(); ++m)
        if (a[m] != b[m]) count += 1.0;
    return count;
}

} // namespace seqssvm
