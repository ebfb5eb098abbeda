#ifndef ASG_SYNTHETIC_HPP
#define ASG_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "asg/embedding.hpp"

namespace asg {

// Gaussian mixture generator for test data. Pure function of its fields:
// the same spec always yields bit-identical output.
struct SyntheticSpec {
    std::uint32_t n_clusters = 1;
    std::uint32_t V = 1;
    std::uint32_t D = 1;
    double spread = 0.0; // within-cluster standard deviation
    std::uint64_t seed = 0;
};

struct SyntheticData {
    EmbeddingMatrix embeddings;        // V x D
    std::vector<std::uint32_t> labels; // cluster index per token
    EmbeddingMatrix centers;           // n_clusters x D
};

// Cluster centers are standard-normal draws; token t belongs to cluster
// t % n_clusters and equals its center plus N(0, spread^2) noise per
// dimension. spread = 0 reproduces the centers exactly.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

} // namespace asg

#endif // ASG_SYNTHETIC_HPP
