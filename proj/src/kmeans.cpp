#include "asg/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "asg/errors.hpp"
#include "asg/parallel.hpp"
#include "asg/rng.hpp"

namespace asg {

namespace {

double sq_dist(std::span<const float> a, std::span<const float> b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double diff = static_cast<double>(a[j]) - static_cast<double>(b[j]);
        acc += diff * diff;
    }
    return acc;
}

} // namespace

Centroids kmeans_pp_init(const PointSet& points, std::uint32_t k, std::uint64_t seed,
                         bool* degenerate) {
    if (degenerate) *degenerate = false;
    if (points.n == 0 || points.d == 0)
        throw ValidationError("kmeans++ init on empty point set");
    if (k == 0) throw ValidationError("kmeans++ init needs k >= 1");
    if (k > points.n)
        throw ValidationError("kmeans++ init: k (" + std::to_string(k) +
                              ") exceeds point count (" + std::to_string(points.n) + ")");

    Rng rng(seed);
    Centroids c(k, points.d);
    std::uint32_t first = static_cast<std::uint32_t>(rng.next_index(points.n));
    std::copy_n(points.row(first).data(), points.d, c.row(0).data());

    // min squared distance to any chosen centroid, updated incrementally
    std::vector<double> weight(points.n);
    for (std::uint32_t i = 0; i < points.n; ++i)
        weight[i] = sq_dist(points.row(i), c.row(0));

    for (std::uint32_t j = 1; j < k; ++j) {
        double total = 0.0;
        for (std::uint32_t i = 0; i < points.n; ++i) total += weight[i];

        std::uint32_t pick;
        if (total <= 0.0) {
            // every point coincides with a chosen centroid
            if (degenerate) *degenerate = true;
            pick = static_cast<std::uint32_t>(rng.next_index(points.n));
        } else {
            double r = rng.next_double() * total;
            double cum = 0.0;
            pick = points.n - 1;
            for (std::uint32_t i = 0; i < points.n; ++i) {
                cum += weight[i];
                if (r < cum && weight[i] > 0.0) {
                    pick = i;
                    break;
                }
            }
            // guard against r landing past the last positive weight
            if (weight[pick] == 0.0) {
                for (std::uint32_t i = points.n; i-- > 0;) {
                    if (weight[i] > 0.0) {
                        pick = i;
                        break;
                    }
                }
            }
        }
        std::copy_n(points.row(pick).data(), points.d, c.row(j).data());
        for (std::uint32_t i = 0; i < points.n; ++i) {
            double d2 = sq_dist(points.row(i), c.row(j));
            if (d2 < weight[i]) weight[i] = d2;
        }
    }
    return c;
}

Assignments assign(const PointSet& points, const Centroids& centroids, int threads) {
    if (points.d != centroids.d)
        throw ShapeError("assign: point dimension " + std::to_string(points.d) +
                         " != centroid dimension " + std::to_string(centroids.d));
    if (centroids.k == 0) throw ValidationError("assign: no centroids");

    Assignments out;
    out.index.resize(points.n);
    std::vector<double> chunk_obj(chunk_count(points.n), 0.0);
    for_each_chunk(points.n, threads, [&](std::size_t ci, std::size_t begin, std::size_t end) {
        double obj = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            auto p = points.row(static_cast<std::uint32_t>(i));
            double best = std::numeric_limits<double>::infinity();
            std::uint32_t best_j = 0;
            for (std::uint32_t j = 0; j < centroids.k; ++j) {
                double d2 = sq_dist(p, centroids.row(j));
                if (d2 < best) { // strict: ties stay with the lowest index
                    best = d2;
                    best_j = j;
                }
            }
            out.index[i] = best_j;
            obj += best;
        }
        chunk_obj[ci] = obj;
    });
    double total = 0.0;
    for (double o : chunk_obj) total += o; // fixed chunk order
    out.objective = total;
    return out;
}

namespace {

// Mean update with empty-cluster repair. Repair picks, per empty cluster in
// ascending index order, the not-yet-taken point farthest from the centroid
// it is assigned to (w.r.t. the centroids the assignment was made against),
// lowest point index among maxima.
Centroids update_means(const PointSet& points, const Centroids& old_c,
                       const Assignments& a) {
    const std::uint32_t k = old_c.k;
    const std::uint32_t d = points.d;
    std::vector<double> sums(static_cast<std::size_t>(k) * d, 0.0);
    std::vector<std::uint64_t> counts(k, 0);
    for (std::uint32_t i = 0; i < points.n; ++i) {
        auto p = points.row(i);
        double* s = sums.data() + static_cast<std::size_t>(a.index[i]) * d;
        for (std::uint32_t j = 0; j < d; ++j) s[j] += static_cast<double>(p[j]);
        ++counts[a.index[i]];
    }

    Centroids next(k, d);
    std::vector<bool> taken(points.n, false);
    for (std::uint32_t c = 0; c < k; ++c) {
        if (counts[c] > 0) {
            const double* s = sums.data() + static_cast<std::size_t>(c) * d;
            auto row = next.row(c);
            for (std::uint32_t j = 0; j < d; ++j)
                row[j] = static_cast<float>(s[j] / static_cast<double>(counts[c]));
        } else {
            double best = -1.0;
            std::uint32_t best_i = 0;
            for (std::uint32_t i = 0; i < points.n; ++i) {
                if (taken[i]) continue;
                double d2 = sq_dist(points.row(i), old_c.row(a.index[i]));
                if (d2 > best) {
                    best = d2;
                    best_i = i;
                }
            }
            taken[best_i] = true;
            std::copy_n(points.row(best_i).data(), d, next.row(c).data());
        }
    }
    return next;
}

} // namespace

KmeansResult lloyd(const PointSet& points, Centroids init, const KmeansParams& params,
                   int threads) {
    if (init.d != points.d)
        throw ShapeError("lloyd: init dimension " + std::to_string(init.d) +
                         " != point dimension " + std::to_string(points.d));
    if (params.max_iters == 0) throw ValidationError("lloyd: max_iters must be >= 1");
    if (params.tol < 0.0) throw ValidationError("lloyd: tol must be nonnegative");

    KmeansResult res;
    res.centroids = std::move(init);
    res.assignments = assign(points, res.centroids, threads);
    res.trace.push_back(res.assignments.objective);

    for (std::uint32_t iter = 0; iter < params.max_iters; ++iter) {
        Centroids next = update_means(points, res.centroids, res.assignments);
        Assignments a = assign(points, next, threads);
        res.centroids = std::move(next);
        res.assignments = std::move(a);
        res.trace.push_back(res.assignments.objective);

        double prev = res.trace[res.trace.size() - 2];
        double curr = res.trace.back();
        if (prev <= 0.0) break;
        if ((prev - curr) / prev < params.tol) break;
    }
    return res;
}

KmeansResult run_kmeans(const PointSet& points, const KmeansParams& params, int threads) {
    bool degenerate = false;
    Centroids init = kmeans_pp_init(points, params.k, params.seed, &degenerate);
    KmeansResult res = lloyd(points, std::move(init), params, threads);
    res.degenerate_init = degenerate;
    return res;
}

ExactKmeansResult exact_kmeans_small(const PointSet& points, std::uint32_t k) {
    if (points.n > 12 || k > 4)
        throw ValidationError("exact_kmeans_small: instance too large (n <= 12, k <= 4)");
    if (k == 0) throw ValidationError("exact_kmeans_small: k must be >= 1");

    const std::uint32_t n = points.n;
    const std::uint32_t d = points.d;

    std::vector<std::uint32_t> code(n, 0); // restricted growth string
    std::vector<std::uint32_t> best_code;
    double best_obj = std::numeric_limits<double>::infinity();

    std::vector<double> sums(static_cast<std::size_t>(k) * d);
    std::vector<std::uint32_t> counts(k);

    auto evaluate = [&](std::uint32_t groups) {
        std::fill(sums.begin(), sums.begin() + static_cast<std::size_t>(groups) * d, 0.0);
        std::fill(counts.begin(), counts.begin() + groups, 0u);
        for (std::uint32_t i = 0; i < n; ++i) {
            auto p = points.row(i);
            double* s = sums.data() + static_cast<std::size_t>(code[i]) * d;
            for (std::uint32_t j = 0; j < d; ++j) s[j] += static_cast<double>(p[j]);
            ++counts[code[i]];
        }
        double obj = 0.0;
        for (std::uint32_t i = 0; i < n; ++i) {
            auto p = points.row(i);
            const double* s = sums.data() + static_cast<std::size_t>(code[i]) * d;
            double cnt = static_cast<double>(counts[code[i]]);
            for (std::uint32_t j = 0; j < d; ++j) {
                double diff = static_cast<double>(p[j]) - s[j] / cnt;
                obj += diff * diff;
            }
        }
        if (obj < best_obj) {
            best_obj = obj;
            best_code = code;
        }
    };

    // depth-first enumeration of restricted growth strings with < k blocks
    auto enumerate = [&](auto&& self, std::uint32_t i, std::uint32_t used) -> void {
        if (i == n) {
            evaluate(used);
            return;
        }
        std::uint32_t limit = std::min(used + 1, k);
        for (std::uint32_t g = 0; g < limit; ++g) {
            code[i] = g;
            self(self, i + 1, std::max(used, g + 1));
        }
    };
    enumerate(enumerate, 0, 0);

    std::uint32_t groups = *std::max_element(best_code.begin(), best_code.end()) + 1;
    ExactKmeansResult res;
    res.centroids = Centroids(groups, d);
    std::fill(sums.begin(), sums.begin() + static_cast<std::size_t>(groups) * d, 0.0);
    std::fill(counts.begin(), counts.begin() + groups, 0u);
    for (std::uint32_t i = 0; i < n; ++i) {
        auto p = points.row(i);
        double* s = sums.data() + static_cast<std::size_t>(best_code[i]) * d;
        for (std::uint32_t j = 0; j < d; ++j) s[j] += static_cast<double>(p[j]);
        ++counts[best_code[i]];
    }
    for (std::uint32_t g = 0; g < groups; ++g) {
        auto row = res.centroids.row(g);
        const double* s = sums.data() + static_cast<std::size_t>(g) * d;
        for (std::uint32_t j = 0; j < d; ++j)
            row[j] = static_cast<float>(s[j] / static_cast<double>(counts[g]));
    }
    res.assignments.index = std::move(best_code);
    res.assignments.objective = best_obj;
    return res;
}

} // namespace asg
