#ifndef ASG_KMEANS_HPP
#define ASG_KMEANS_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace asg {

struct PointSet {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::vector<float> data; // n x d row-major

    PointSet() = default;
    PointSet(std::uint32_t n_, std::uint32_t d_)
        : n(n_), d(d_), data(static_cast<std::size_t>(n_) * d_, 0.0f) {}

    std::span<const float> row(std::uint32_t i) const {
        return {data.data() + static_cast<std::size_t>(i) * d, d};
    }
    std::span<float> row(std::uint32_t i) {
        return {data.data() + static_cast<std::size_t>(i) * d, d};
    }
};

struct Centroids {
    std::uint32_t k = 0;
    std::uint32_t d = 0;
    std::vector<float> data; // k x d row-major

    Centroids() = default;
    Centroids(std::uint32_t k_, std::uint32_t d_)
        : k(k_), d(d_), data(static_cast<std::size_t>(k_) * d_, 0.0f) {}

    std::span<const float> row(std::uint32_t j) const {
        return {data.data() + static_cast<std::size_t>(j) * d, d};
    }
    std::span<float> row(std::uint32_t j) {
        return {data.data() + static_cast<std::size_t>(j) * d, d};
    }
};

struct Assignments {
    std::vector<std::uint32_t> index; // per-point centroid index
    double objective = 0.0;           // sum of squared distances
};

struct KmeansParams {
    std::uint32_t k = 1;
    std::uint32_t max_iters = 100;
    double tol = 1e-4; // relative objective-change stopping threshold
    std::uint64_t seed = 0;
};

struct KmeansResult {
    Centroids centroids;
    Assignments assignments;
    std::vector<double> trace; // objective after every assignment pass
    bool degenerate_init = false;
};

// k-means++ seeding. First centroid is a uniform pick; each further centroid
// is drawn with probability proportional to its squared distance to the
// nearest chosen one, so duplicates of chosen points are never selected
// while distinct values remain. If all remaining weights are zero the
// leftover slots are filled by uniform picks (duplicates) and *degenerate
// is set.
Centroids kmeans_pp_init(const PointSet& points, std::uint32_t k, std::uint64_t seed,
                         bool* degenerate = nullptr);

// Nearest-centroid assignment, ties broken by lowest centroid index.
// Distances accumulate in double; the objective is exact over the returned
// assignment. Bit-stable for any thread count.
Assignments assign(const PointSet& points, const Centroids& centroids, int threads = 1);

// Lloyd iterations: assignment / mean update until the relative objective
// decrease drops below params.tol or params.max_iters rounds have run.
// Empty clusters are re-seeded to the point farthest from its assigned
// centroid (lowest point index among maxima; one point per empty cluster).
KmeansResult lloyd(const PointSet& points, Centroids init, const KmeansParams& params,
                   int threads = 1);

// kmeans_pp_init followed by lloyd.
KmeansResult run_kmeans(const PointSet& points, const KmeansParams& params,
                        int threads = 1);

struct ExactKmeansResult {
    Centroids centroids; // one row per non-empty group of the best partition
    Assignments assignments;
};

// Globally optimal oracle: enumerates every partition of n points into at
// most k non-empty groups and returns the one minimizing the k-means
// objective (group means as centroids, objective computed against the
// unrounded double means). Only feasible for n <= 12, k <= 4.
ExactKmeansResult exact_kmeans_small(const PointSet& points, std::uint32_t k);

} // namespace asg

#endif // ASG_KMEANS_HPP
