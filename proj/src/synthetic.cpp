#include "asg/synthetic.hpp"

#include "asg/errors.hpp"
#include "asg/rng.hpp"

namespace asg {

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
    if (spec.n_clusters == 0 || spec.V == 0 || spec.D == 0)
        throw ValidationError("synthetic spec requires n_clusters, V, D >= 1");
    if (spec.n_clusters > spec.V)
        throw ValidationError("synthetic spec has n_clusters > V");
    if (spec.spread < 0.0)
        throw ValidationError("synthetic spread must be nonnegative");

    Rng rng(spec.seed);
    SyntheticData out;
    out.centers = EmbeddingMatrix(spec.n_clusters, spec.D);
    for (float& v : out.centers.data) v = static_cast<float>(rng.next_gaussian());

    out.embeddings = EmbeddingMatrix(spec.V, spec.D);
    out.labels.resize(spec.V);
    for (std::uint32_t t = 0; t < spec.V; ++t) {
        std::uint32_t c = t % spec.n_clusters;
        out.labels[t] = c;
        auto center = out.centers.row(c);
        auto row = out.embeddings.row(t);
        for (std::uint32_t j = 0; j < spec.D; ++j) {
            double noise = spec.spread * rng.next_gaussian();
            row[j] = static_cast<float>(static_cast<double>(center[j]) + noise);
        }
    }
    return out;
}

} // namespace asg
