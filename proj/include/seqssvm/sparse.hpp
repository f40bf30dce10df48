#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace seqssvm {

// Sparse vector with sorted unique indices and no explicit zeros.
class SparseVec {
public:
    using Entry = std::pair<std::uint32_t, double>;

    SparseVec() = default;
    // Accumulates duplicate indices, sorts, drops exact zeros.
    static SparseVec from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    double get(std::uint32_t index) const;

    bool operator==(const SparseVec& o) const { return entries_ == o.entries_; }

private:
    std::vector<Entry> entries_;
    friend SparseVec axpy(double alpha, const SparseVec& u, const SparseVec& v);
};

double dot(const SparseVec& u, const SparseVec& v);
double dot(const std::vector<double>& dense, const SparseVec& v);
// Squared Euclidean norm.
double norm_sq(const SparseVec& u);

// Returns v + alpha*u with exact zeros removed.
SparseVec axpy(double alpha, const SparseVec& u, const SparseVec& v);
// dense += alpha*u.
void axpy(double alpha, const SparseVec& u, std::vector<double>& dense);

SparseVec subtract(const SparseVec& a, const SparseVec& b);

} // namespace seqssvm
