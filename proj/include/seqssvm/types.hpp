#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "seqssvm/errors.hpp"

namespace seqssvm {

// Label indices into an Alphabet; paired with a Sequence of the same length.
using LabelSeq = std::vector<int>;

// Ordered set of distinct label names. Index <-> name is a bijection.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(const std::vector<std::string>& labels);

    // Adds the label if absent (rejected once frozen); returns its index.
    int intern(const std::string& name);
    // -1 if absent.
    int index_of(const std::string& name) const;
    // Throws domain_error if absent.
    int require(const std::string& name) const;
    const std::string& name_of(int index) const;
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }

    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    bool frozen_ = false;
};

struct Token {
    std::string surface;
    std::vector<std::string> attrs; // immutable after ingestion
    bool is_punct = false;

    bool operator==(const Token& o) const {
        return surface == o.surface && attrs == o.attrs && is_punct == o.is_punct;
    }
};

// Computes the standard attribute set: lowercased form, punctuation flag,
// digit flag, collapsed character shape.
Token make_token(const std::string& surface);

struct Sequence {
    std::vector<Token> tokens;

    int length() const { return static_cast<int>(tokens.size()); }
    bool operator==(const Sequence& o) const { return tokens == o.tokens; }
};

Sequence make_sequence(const std::vector<std::string>& surfaces);

struct LabeledExample {
    Sequence x;
    LabelSeq y;

    bool operator==(const LabeledExample& o) const { return x == o.x && y == o.y; }
};

struct Dataset {
    std::vector<LabeledExample> labeled;
    std::vector<Sequence> unlabeled;
    Alphabet alphabet;

    bool operator==(const Dataset& o) const {
        return labeled == o.labeled && unlabeled == o.unlabeled && alphabet == o.alphabet;
    }
};

// Count of positions where a and b disagree. Lengths must match.
double hamming_loss(const LabelSeq& a, const LabelSeq& b);

} // namespace seqssvm
