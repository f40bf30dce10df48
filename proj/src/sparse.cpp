#include "seqssvm/sparse.hpp"

#include <algorithm>

namespace seqssvm {

SparseVec SparseVec::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec v;
    v.entries_.reserve(entries.size());
    for (const auto& [idx, val] : entries) {
        if (!v.entries_.empty() && v.entries_.back().first == idx)
            v.entries_.back().second += val;
        else
            v.entries_.emplace_back(idx, val);
    }
    std::erase_if(v.entries_, [](const Entry& e) { return e.second == 0.0; });
    return v;
}

double SparseVec::get(std::uint32_t index) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::uint32_t i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : 0.0;
}

double dot(const SparseVec& u, const SparseVec& v) {
    double sum = 0.0;
    auto a = u.entries().begin(), ae = u.entries().end();
    auto b = v.entries().begin(), be = v.entries().end();
    while (a != ae && b != be) {
        if (a->first < b->first)
            ++a;
        else if (b->first < a->first)
            ++b;
        else {
            sum += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return sum;
}

double dot(const std::vector<double>& dense, const SparseVec& v) {
    double sum = 0.0;
    for (const auto& [idx, val] : v.entries()) sum += dense[idx] * val;
    return sum;
}

double norm_sq(const SparseVec& u) {
    double sum = 0.0;
    for (const auto& [idx, val] : u.entries()) sum += val * val;
    return sum;
}

SparseVec axpy(double alpha, const SparseVec& u, const SparseVec& v) {
    SparseVec out;
    out.entries_.reserve(u.size() + v.size());
    auto a = v.entries().begin(), ae = v.entries().end();
    auto b = u.entries().begin(), be = u.entries().end();
    while (a != ae || b != be) {
        SparseVec::Entry e;
        if (b == be || (a != ae && a->first < b->first)) {
            e = *a++;
        } else if (a == ae || b->first < a->first) {
            e = {b->first, alpha * b->second};
            ++b;
        } else {
            e = {a->first, a->second + alpha * b->second};
            ++a;
            ++b;
        }
        if (e.second != 0.0) out.entries_.push_back(e);
    }
    return out;
}

void axpy(double alpha, const SparseVec& u, std::vector<double>& dense) {
    for (const auto& [idx, val] : u.entries()) dense[idx] += alpha * val;
}

SparseVec subtract(const SparseVec& a, const SparseVec& b) { return axpy(-1.0, b, a); }

} // namespace seqssvm
