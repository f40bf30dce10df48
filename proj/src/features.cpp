#include "seqssvm/features.hpp"

namespace seqssvm {

void FeatureSpace::Builder::add_attr(const std::string& attr) {
    if (index_.emplace(attr, static_cast<int>(attrs_.size())).second) attrs_.push_back(attr);
}

void FeatureSpace::Builder::add(const Sequence& x) {
    for (const auto& t : x.tokens)
        for (const auto& a : t.attrs) add_attr(a);
}

void FeatureSpace::Builder::add(const Dataset& data) {
    for (const auto& ex : data.labeled) add(ex.x);
    for (const auto& x : data.unlabeled) add(x);
}

FeatureSpace FeatureSpace::Builder::freeze(Alphabet alphabet, bool with_unknown) const {
    if (alphabet.size() == 0) throw domain_error("feature space needs at least one label");
    FeatureSpace fs;
    fs.alphabet_ = std::move(alphabet);
    fs.alphabet_.freeze();
    fs.has_unknown_ = with_unknown;
    if (with_unknown) fs.attrs_.push_back(kUnknownAttr);
    for (const auto& a : attrs_) {
        if (with_unknown && a == kUnknownAttr)
            throw domain_error("attribute name collides with the unknown slot");
        fs.attrs_.push_back(a);
    }
    for (std::size_t i = 0; i < fs.attrs_.size(); ++i)
        fs.attr_index_.emplace(fs.attrs_[i], static_cast<int>(i));
    return fs;
}

std::size_t FeatureSpace::dimension() const {
    auto a = static_cast<std::size_t>(attr_count());
    auto k = static_cast<std::size_t>(label_count());
    return a * k + k * k + k;
}

int FeatureSpace::attr_index(const std::string& attr) const {
    auto it = attr_index_.find(attr);
    if (it != attr_index_.end()) return it->second;
    if (has_unknown_) return 0;
    throw domain_error("unknown attribute '" + attr + "'");
}

std::size_t FeatureSpace::emission_index(int attr, int label) const {
    return static_cast<std::size_t>(attr) * label_count() + label;
}

std::size_t FeatureSpace::transition_index(int prev, int cur) const {
    return static_cast<std::size_t>(attr_count()) * label_count() +
           static_cast<std::size_t>(prev) * label_count() + cur;
}

std::size_t FeatureSpace::start_index(int label) const {
    auto k = static_cast<std::size_t>(label_count());
    return static_cast<std::size_t>(attr_count()) * k + k * k + label;
}

namespace {

void check_pair(const FeatureSpace& fs, const Sequence& x, const LabelSeq& y) {
    if (x.length() == 0) throw domain_error("empty sequence");
    if (static_cast<int>(y.size()) != x.length())
        throw domain_error("label sequence length mismatch");
    for (int lab : y)
        if (lab < 0 || lab >= fs.label_count()) throw domain_error("label index out of range");
}

std::uint32_t idx(std::size_t i) { return static_cast<std::uint32_t>(i); }

} // namespace

SparseVec joint_feature_map(const FeatureSpace& space, const Sequence& x, const LabelSeq& y) {
    check_pair(space, x, y);
    std::vector<SparseVec::Entry> entries;
    const int M = x.length();
    for (int m = 0; m < M; ++m) {
        for (const auto& a : x.tokens[m].attrs)
            entries.emplace_back(idx(space.emission_index(space.attr_index(a), y[m])), 1.0);
        if (m > 0) entries.emplace_back(idx(space.transition_index(y[m - 1], y[m])), 1.0);
    }
    entries.emplace_back(idx(space.start_index(y[0])), 1.0);
    return SparseVec::from_entries(std::move(entries));
}

SparseVec feature_delta(const FeatureSpace& space, const Sequence& x, const LabelSeq& y_ref,
                        const LabelSeq& y) {
    check_pair(space, x, y_ref);
    check_pair(space, x, y);
    std::vector<SparseVec::Entry> entries;
    const int M = x.length();
    for (int m = 0; m < M; ++m) {
        if (y_ref[m] != y[m]) {
            for (const auto& a : x.tokens[m].attrs) {
                int ai = space.attr_index(a);
                entries.emplace_back(idx(space.emission_index(ai, y_ref[m])), 1.0);
                entries.emplace_back(idx(space.emission_index(ai, y[m])), -1.0);
            }
        }
        if (m > 0 && (y_ref[m - 1] != y[m - 1] || y_ref[m] != y[m])) {
            entries.emplace_back(idx(space.transition_index(y_ref[m - 1], y_ref[m])), 1.0);
            entries.emplace_back(idx(space.transition_index(y[m - 1], y[m])), -1.0);
        }
    }
    if (y_ref[0] != y[0]) {
        entries.emplace_back(idx(space.start_index(y_ref[0])), 1.0);
        entries.emplace_back(idx(space.start_index(y[0])), -1.0);
    }
    return SparseVec::from_entries(std::move(entries));
}

} // namespace seqssvm
