#include "asg/asg_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "asg/errors.hpp"
#include "asg/io_util.hpp"

namespace asg {

namespace {

constexpr char kMagic[4] = {'A', 'S', 'G', '1'};
constexpr std::uint16_t kVersion = 1;

void validate_config(const EmbeddingMatrix& e, const AsgConfig& cfg) {
    if (cfg.V != e.rows || cfg.D != e.cols) {
        std::ostringstream msg;
        msg << "config (V=" << cfg.V << ", D=" << cfg.D << ") does not match matrix ("
            << e.rows << "x" << e.cols << ")";
        throw ShapeError(msg.str());
    }
    if (cfg.m == 0) throw ValidationError("segment count m must be >= 1");
    if (cfg.D % cfg.m != 0)
        throw ShapeError("D (" + std::to_string(cfg.D) + ") is not divisible by m (" +
                         std::to_string(cfg.m) + ")");
    if (cfg.k == 0) throw ValidationError("codebook size k must be >= 1");
}

PointSet segment_points(const EmbeddingMatrix& e, std::uint32_t m, std::uint32_t seg) {
    const std::uint32_t sd = e.cols / m;
    PointSet pts(e.rows, sd);
    for (std::uint32_t t = 0; t < e.rows; ++t) {
        const float* src = e.row(t).data() + static_cast<std::size_t>(seg) * sd;
        std::copy_n(src, sd, pts.row(t).data());
    }
    return pts;
}

// Pooled sub-vectors in token-major order: pooled row t*m + i is token t's
// segment i.
PointSet pooled_points(const EmbeddingMatrix& e, std::uint32_t m) {
    const std::uint32_t sd = e.cols / m;
    PointSet pts(e.rows * m, sd);
    for (std::uint32_t t = 0; t < e.rows; ++t) {
        const float* row = e.row(t).data();
        for (std::uint32_t i = 0; i < m; ++i) {
            std::copy_n(row + static_cast<std::size_t>(i) * sd, sd,
                        pts.row(t * m + i).data());
        }
    }
    return pts;
}

void validate_model(const AsgModel& model, const std::string& origin) {
    const AsgConfig& cfg = model.config;
    if (cfg.V == 0 || cfg.D == 0 || cfg.k == 0 || cfg.m == 0)
        throw IoError(origin + ": header fields must be >= 1");
    if (cfg.D % cfg.m != 0)
        throw IoError(origin + ": D is not divisible by m");
    if (model.codebooks.rows != cfg.codebook_rows() ||
        model.codebooks.dim != cfg.segment_dim())
        throw IoError(origin + ": codebook shape inconsistent with header");
    if (model.map.V != cfg.V || model.map.m != cfg.m)
        throw IoError(origin + ": ConceptID table shape inconsistent with header");
    for (float v : model.codebooks.data)
        if (!std::isfinite(v)) throw IoError(origin + ": non-finite codebook entry");
    for (std::uint32_t t = 0; t < cfg.V; ++t) {
        for (std::uint32_t i = 0; i < cfg.m; ++i) {
            std::uint32_t id = model.map.at(t, i);
            bool ok = cfg.mode == CodebookMode::Separate
                          ? (id >= i * cfg.k && id < (i + 1) * cfg.k)
                          : (id < cfg.k);
            if (!ok) {
                std::ostringstream msg;
                msg << origin << ": ConceptID " << id << " out of range for token " << t
                    << ", segment " << i;
                throw IoError(msg.str());
            }
        }
    }
}

} // namespace

AsgModel train_asg(const EmbeddingMatrix& e, const AsgConfig& config, int threads,
                   AsgTrainStats* stats) {
    validate_config(e, config);
    AsgConfig cfg = config;
    cfg.kmeans.k = cfg.k;

    AsgModel model;
    model.config = cfg;
    model.codebooks.rows = cfg.codebook_rows();
    model.codebooks.dim = cfg.segment_dim();
    model.codebooks.data.assign(
        static_cast<std::size_t>(model.codebooks.rows) * model.codebooks.dim, 0.0f);
    model.map.V = cfg.V;
    model.map.m = cfg.m;
    model.map.table.assign(static_cast<std::size_t>(cfg.V) * cfg.m, 0);

    if (stats) {
        stats->segment_objectives.clear();
        stats->traces.clear();
        stats->degenerate_init = false;
    }

    if (cfg.mode == CodebookMode::Separate) {
        for (std::uint32_t i = 0; i < cfg.m; ++i) {
            PointSet pts = segment_points(e, cfg.m, i);
            KmeansParams params = cfg.kmeans;
            params.seed = cfg.kmeans.seed + i;
            KmeansResult r = run_kmeans(pts, params, threads);
            std::copy(r.centroids.data.begin(), r.centroids.data.end(),
                      model.codebooks.data.begin() +
                          static_cast<std::size_t>(i) * cfg.k * model.codebooks.dim);
            for (std::uint32_t t = 0; t < cfg.V; ++t)
                model.map.table[static_cast<std::size_t>(t) * cfg.m + i] =
                    i * cfg.k + r.assignments.index[t];
            if (stats) {
                stats->segment_objectives.push_back(r.assignments.objective);
                stats->traces.push_back(std::move(r.trace));
                stats->degenerate_init |= r.degenerate_init;
            }
        }
    } else {
        PointSet pts = pooled_points(e, cfg.m);
        KmeansResult r = run_kmeans(pts, cfg.kmeans, threads);
        model.codebooks.data = std::move(r.centroids.data);
        for (std::uint32_t t = 0; t < cfg.V; ++t)
            for (std::uint32_t i = 0; i < cfg.m; ++i)
                model.map.table[static_cast<std::size_t>(t) * cfg.m + i] =
                    r.assignments.index[static_cast<std::size_t>(t) * cfg.m + i];
        if (stats) {
            stats->segment_objectives.push_back(r.assignments.objective);
            stats->traces.push_back(std::move(r.trace));
            stats->degenerate_init = r.degenerate_init;
        }
    }
    return model;
}

std::vector<std::uint32_t> concept_ids(const AsgModel& model, std::uint32_t t) {
    if (t >= model.config.V)
        throw ValidationError("token index " + std::to_string(t) + " out of range (V=" +
                              std::to_string(model.config.V) + ")");
    const std::uint32_t m = model.config.m;
    std::vector<std::uint32_t> ids(m);
    for (std::uint32_t i = 0; i < m; ++i) ids[i] = model.map.at(t, i);
    return ids;
}

std::vector<float> reconstruct(const AsgModel& model, std::uint32_t t) {
    if (t >= model.config.V)
        throw ValidationError("token index " + std::to_string(t) + " out of range (V=" +
                              std::to_string(model.config.V) + ")");
    const std::uint32_t m = model.config.m;
    const std::uint32_t sd = model.config.segment_dim();
    std::vector<float> out(model.config.D);
    for (std::uint32_t i = 0; i < m; ++i) {
        auto v = model.codebooks.row(model.map.at(t, i));
        std::copy_n(v.data(), sd, out.data() + static_cast<std::size_t>(i) * sd);
    }
    return out;
}

EmbeddingMatrix reconstruct_all(const AsgModel& model) {
    const std::uint32_t m = model.config.m;
    const std::uint32_t sd = model.config.segment_dim();
    EmbeddingMatrix out(model.config.V, model.config.D);
    for (std::uint32_t t = 0; t < model.config.V; ++t) {
        float* dst = out.row(t).data();
        for (std::uint32_t i = 0; i < m; ++i) {
            auto v = model.codebooks.row(model.map.at(t, i));
            std::copy_n(v.data(), sd, dst + static_cast<std::size_t>(i) * sd);
        }
    }
    return out;
}

double logit(const AsgModel& model, const HiddenState& h, std::uint32_t t) {
    if (h.size() != model.config.D)
        throw ShapeError("hidden state dimension " + std::to_string(h.size()) +
                         " != D (" + std::to_string(model.config.D) + ")");
    if (t >= model.config.V)
        throw ValidationError("token index " + std::to_string(t) + " out of range (V=" +
                              std::to_string(model.config.V) + ")");
    const std::uint32_t m = model.config.m;
    const std::uint32_t sd = model.config.segment_dim();
    double total = 0.0;
    for (std::uint32_t i = 0; i < m; ++i) {
        auto v = model.codebooks.row(model.map.at(t, i));
        const float* hi = h.data() + static_cast<std::size_t>(i) * sd;
        double dot = 0.0;
        for (std::uint32_t j = 0; j < sd; ++j)
            dot += static_cast<double>(hi[j]) * static_cast<double>(v[j]);
        total += dot;
    }
    return total;
}

std::vector<double> logits_all(const AsgModel& model, const HiddenState& h) {
    if (h.size() != model.config.D)
        throw ShapeError("hidden state dimension " + std::to_string(h.size()) +
                         " != D (" + std::to_string(model.config.D) + ")");
    const std::uint32_t m = model.config.m;
    const std::uint32_t k = model.config.k;
    const std::uint32_t sd = model.config.segment_dim();

    // partial[i*k + j] = H_i . (codebook row used by segment i at local index j)
    std::vector<double> partial(static_cast<std::size_t>(m) * k);
    for (std::uint32_t i = 0; i < m; ++i) {
        const float* hi = h.data() + static_cast<std::size_t>(i) * sd;
        for (std::uint32_t j = 0; j < k; ++j) {
            std::uint32_t row =
                model.config.mode == CodebookMode::Separate ? i * k + j : j;
            auto v = model.codebooks.row(row);
            double dot = 0.0;
            for (std::uint32_t c = 0; c < sd; ++c)
                dot += static_cast<double>(hi[c]) * static_cast<double>(v[c]);
            partial[static_cast<std::size_t>(i) * k + j] = dot;
        }
    }

    std::vector<double> out(model.config.V);
    for (std::uint32_t t = 0; t < model.config.V; ++t) {
        double total = 0.0;
        for (std::uint32_t i = 0; i < m; ++i) {
            std::uint32_t id = model.map.at(t, i);
            std::uint32_t local = model.config.mode == CodebookMode::Separate ? id - i * k : id;
            total += partial[static_cast<std::size_t>(i) * k + local];
        }
        out[t] = total;
    }
    return out;
}

CompressionReport param_report(const AsgConfig& config) {
    if (config.V == 0 || config.D == 0 || config.k == 0 || config.m == 0)
        throw ValidationError("param_report requires V, D, k, m >= 1");
    if (config.D % config.m != 0)
        throw ShapeError("D (" + std::to_string(config.D) + ") is not divisible by m (" +
                         std::to_string(config.m) + ")");

    CompressionReport rep;
    rep.original_params = static_cast<std::uint64_t>(config.V) * config.D;
    rep.eprime_cols = config.segment_dim();
    if (config.mode == CodebookMode::Separate) {
        rep.eprime_rows = static_cast<std::uint64_t>(config.m) * config.k;
        rep.asg_params = static_cast<std::uint64_t>(config.k) * config.D;
    } else {
        rep.eprime_rows = config.k;
        rep.asg_params = static_cast<std::uint64_t>(config.k) * config.segment_dim();
    }
    rep.embedding_ratio =
        static_cast<double>(rep.asg_params) / static_cast<double>(rep.original_params);
    rep.mapping_bits_per_id =
        config.k <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(config.k - 1));
    std::uint64_t total_bits = static_cast<std::uint64_t>(config.V) * config.m *
                               rep.mapping_bits_per_id;
    rep.mapping_bytes = (total_bits + 7) / 8;
    rep.mapping_overhead_ratio = static_cast<double>(rep.mapping_bytes) /
                                 (static_cast<double>(rep.original_params) * 4.0);
    return rep;
}

CompressionReport param_report(const AsgModel& model) {
    return param_report(model.config);
}

void save_model(const AsgModel& model, std::ostream& os) {
    io::write_bytes(os, kMagic, 4);
    io::write_u16(os, kVersion);
    io::write_u8(os, static_cast<std::uint8_t>(model.config.mode));
    io::write_u8(os, 0);
    io::write_u32(os, model.config.V);
    io::write_u32(os, model.config.D);
    io::write_u32(os, model.config.k);
    io::write_u32(os, model.config.m);
    io::write_u64(os, model.config.kmeans.seed);
    io::write_f32_array(os, model.codebooks.data);
    io::write_u32_array(os, model.map.table);
}

void save_model(const AsgModel& model, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    save_model(model, os);
    os.flush();
    if (!os) throw IoError("write failed: " + path.string());
}

AsgModel load_model(std::istream& is, const std::string& origin) {
    char magic[4];
    io::read_bytes(is, magic, 4, "ASG1 magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw IoError(origin + ": bad magic, not an ASG1 model file");
    std::uint16_t version = io::read_u16(is, "ASG1 version");
    if (version != kVersion)
        throw IoError(origin + ": unsupported ASG1 version " + std::to_string(version));
    std::uint8_t mode = io::read_u8(is, "ASG1 mode");
    if (mode > 1) throw IoError(origin + ": invalid mode byte");
    std::uint8_t reserved = io::read_u8(is, "ASG1 reserved");
    if (reserved != 0) throw IoError(origin + ": reserved field must be zero");

    AsgModel model;
    model.config.mode = static_cast<CodebookMode>(mode);
    model.config.V = io::read_u32(is, "ASG1 V");
    model.config.D = io::read_u32(is, "ASG1 D");
    model.config.k = io::read_u32(is, "ASG1 k");
    model.config.m = io::read_u32(is, "ASG1 m");
    model.config.kmeans.seed = io::read_u64(is, "ASG1 seed");
    model.config.kmeans.k = model.config.k;

    if (model.config.m == 0 || model.config.D == 0 || model.config.m > model.config.D ||
        model.config.D % model.config.m != 0)
        throw IoError(origin + ": D is not divisible by m");

    model.codebooks.rows = model.config.codebook_rows();
    model.codebooks.dim = model.config.segment_dim();
    model.codebooks.data.resize(static_cast<std::size_t>(model.codebooks.rows) *
                                model.codebooks.dim);
    io::read_f32_array(is, model.codebooks.data, "ASG1 codebook section");

    model.map.V = model.config.V;
    model.map.m = model.config.m;
    model.map.table.resize(static_cast<std::size_t>(model.config.V) * model.config.m);
    io::read_u32_array(is, model.map.table, "ASG1 ConceptID section");
    io::expect_eof(is, "ASG1");

    validate_model(model, origin);
    return model;
}

AsgModel load_model(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open model file: " + path.string());
    return load_model(is, path.string());
}

} // namespace asg
