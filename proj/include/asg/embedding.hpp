#ifndef ASG_EMBEDDING_HPP
#define ASG_EMBEDDING_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace asg {

// Dense V x D matrix of token embeddings, row-major f32. All entries must be
// finite; loaders enforce this at the boundary.
struct EmbeddingMatrix {
    std::uint32_t rows = 0; // V
    std::uint32_t cols = 0; // D
    std::vector<float> data;

    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::uint32_t v, std::uint32_t d)
        : rows(v), cols(d), data(static_cast<std::size_t>(v) * d, 0.0f) {}

    std::span<const float> row(std::uint32_t t) const {
        return {data.data() + static_cast<std::size_t>(t) * cols, cols};
    }
    std::span<float> row(std::uint32_t t) {
        return {data.data() + static_cast<std::size_t>(t) * cols, cols};
    }
    std::size_t size() const { return data.size(); }
};

// ASGE file: magic "ASGE", u16 version=1, u16 reserved=0, u32 V, u32 D,
// then V*D little-endian f32 row-major. 16-byte header; no padding.
EmbeddingMatrix load_embeddings(const std::filesystem::path& path);
void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path);

// Convenience importer for tiny hand-written fixtures: one row per line,
// comma-separated decimal reals. Not the canonical format.
EmbeddingMatrix import_csv(const std::filesystem::path& path);

} // namespace asg

#endif // ASG_EMBEDDING_HPP
