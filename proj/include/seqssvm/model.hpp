#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "seqssvm/features.hpp"

namespace seqssvm {

// Linear chain model: dense weight vector indexed by a frozen FeatureSpace.
struct Model {
    FeatureSpacePtr space;
    std::vector<double> weights;

    Model() = default;
    explicit Model(FeatureSpacePtr s) : space(std::move(s)), weights(space->dimension(), 0.0) {}
    Model(FeatureSpacePtr s, std::vector<double> w);

    double weight(std::size_t index) const { return weights[index]; }
};

Model make_model(FeatureSpace space);

void write_model(std::ostream& out, const Model& model);
void save_model(const std::string& path, const Model& model);
Model read_model(std::istream& in);
Model load_model(const std::string& path);

} // namespace seqssvm
