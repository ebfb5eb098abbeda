#ifndef ASG_ASG_MODEL_HPP
#define ASG_ASG_MODEL_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "asg/embedding.hpp"
#include "asg/kmeans.hpp"

namespace asg {

enum class CodebookMode : std::uint8_t {
    Separate = 0, // one codebook per segment position
    Shared = 1,   // all segments pooled into one codebook
};

struct AsgConfig {
    std::uint32_t k = 0;       // Concept Vectors per codebook
    std::uint32_t m = 0;       // segment count; D % m == 0
    CodebookMode mode = CodebookMode::Separate;
    std::uint32_t D = 0;
    std::uint32_t V = 0;
    KmeansParams kmeans;       // kmeans.k is overridden by k at train time

    std::uint32_t segment_dim() const { return D / m; }
    std::uint32_t codebook_rows() const {
        return mode == CodebookMode::Separate ? m * k : k;
    }
};

// Concatenated Concept Vector matrix. Separate mode stores the j-th vector
// of segment i's codebook at row i*k + j; Shared mode holds k rows used at
// every segment position.
struct CodebookStore {
    std::uint32_t rows = 0;
    std::uint32_t dim = 0; // D/m
    std::vector<float> data;

    std::span<const float> row(std::uint32_t r) const {
        return {data.data() + static_cast<std::size_t>(r) * dim, dim};
    }
    std::span<float> row(std::uint32_t r) {
        return {data.data() + static_cast<std::size_t>(r) * dim, dim};
    }
};

// V x m table of ConceptIDs. Precomputed, fixed, non-trainable. Separate
// mode stores global row indices (entry (t,i) in [i*k, (i+1)*k)); Shared
// mode stores local indices in [0, k).
struct ConceptIdMap {
    std::uint32_t V = 0;
    std::uint32_t m = 0;
    std::vector<std::uint32_t> table;

    std::uint32_t at(std::uint32_t t, std::uint32_t i) const {
        return table[static_cast<std::size_t>(t) * m + i];
    }
};

struct AsgModel {
    AsgConfig config;
    CodebookStore codebooks;
    ConceptIdMap map;
};

// Per-training-run diagnostics. Not part of the model file.
struct AsgTrainStats {
    std::vector<double> segment_objectives;      // m entries, or 1 in Shared mode
    std::vector<std::vector<double>> traces;     // parallel to segment_objectives
    bool degenerate_init = false;                // any segment hit the kmeans++ warning
};

// Final hidden state of dimension D; segment i is the contiguous slice
// [i*D/m, (i+1)*D/m).
using HiddenState = std::vector<float>;

// Parameter accounting. asg_params is k*D in Separate mode and k*D/m in
// Shared mode; mapping sizes use the theoretical ceil(log2 k)-bit packing
// regardless of the 32-bit on-disk convenience encoding.
struct CompressionReport {
    std::uint64_t original_params = 0; // V*D
    std::uint64_t asg_params = 0;
    double embedding_ratio = 0.0;
    std::uint32_t mapping_bits_per_id = 0;
    std::uint64_t mapping_bytes = 0;
    double mapping_overhead_ratio = 0.0; // vs the 4-byte-float original table
    std::uint64_t eprime_rows = 0;
    std::uint32_t eprime_cols = 0;
};

// Per-segment (or pooled) k-means over the sub-vectors of E, assembling the
// codebook layout above. Deterministic given config.kmeans.seed; segment i
// of a Separate-mode run is seeded with seed + i.
AsgModel train_asg(const EmbeddingMatrix& e, const AsgConfig& config, int threads = 1,
                   AsgTrainStats* stats = nullptr);

// Row t of the ConceptID table.
std::vector<std::uint32_t> concept_ids(const AsgModel& model, std::uint32_t t);

// Concatenation of token t's m Concept Vectors.
std::vector<float> reconstruct(const AsgModel& model, std::uint32_t t);
EmbeddingMatrix reconstruct_all(const AsgModel& model);

// Segmented logit: sum over segments of H_i . u_{t,i}. Equal to the full
// dot product of H with reconstruct(t) up to floating-point tolerance.
double logit(const AsgModel& model, const HiddenState& h, std::uint32_t t);

// Batched logits; precomputes the per-segment dot products of H against
// every codebook row, then gathers through the ConceptID table.
std::vector<double> logits_all(const AsgModel& model, const HiddenState& h);

CompressionReport param_report(const AsgConfig& config);
CompressionReport param_report(const AsgModel& model);

// ASG1 file: magic "ASG1", u16 version=1, u8 mode, u8 reserved=0,
// u32 V, D, k, m, u64 seed, then the codebook floats (row-major,
// (m*k or k) x D/m f32) and the V x m u32 ConceptID table. Little-endian.
void save_model(const AsgModel& model, std::ostream& os);
void save_model(const AsgModel& model, const std::filesystem::path& path);
AsgModel load_model(std::istream& is, const std::string& origin = "<stream>");
AsgModel load_model(const std::filesystem::path& path);

} // namespace asg

#endif // ASG_ASG_MODEL_HPP
