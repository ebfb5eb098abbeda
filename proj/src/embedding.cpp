#include "asg/embedding.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "asg/errors.hpp"
#include "asg/io_util.hpp"

namespace asg {

namespace {

constexpr char kMagic[4] = {'A', 'S', 'G', 'E'};
constexpr std::uint16_t kVersion = 1;

void check_finite(const EmbeddingMatrix& m, const char* origin) {
    for (std::uint32_t t = 0; t < m.rows; ++t) {
        auto r = m.row(t);
        for (std::uint32_t j = 0; j < m.cols; ++j) {
            if (!std::isfinite(r[j])) {
                std::ostringstream msg;
                msg << origin << ": non-finite entry at row " << t << ", column " << j;
                throw IoError(msg.str());
            }
        }
    }
}

} // namespace

EmbeddingMatrix load_embeddings(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open embedding file: " + path.string());

    char magic[4];
    io::read_bytes(is, magic, 4, "ASGE magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("bad magic in " + path.string() + ": not an ASGE file");
    std::uint16_t version = io::read_u16(is, "ASGE version");
    if (version != kVersion)
        throw IoError("unsupported ASGE version " + std::to_string(version));
    std::uint16_t reserved = io::read_u16(is, "ASGE reserved");
    if (reserved != 0) throw IoError("ASGE reserved field must be zero");

    std::uint32_t v = io::read_u32(is, "ASGE row count");
    std::uint32_t d = io::read_u32(is, "ASGE column count");
    if (v == 0 || d == 0) throw IoError("ASGE dimensions must be at least 1x1");

    EmbeddingMatrix m(v, d);
    io::read_f32_array(is, m.data, "ASGE payload");
    io::expect_eof(is, "ASGE");
    check_finite(m, path.string().c_str());
    return m;
}

void save_embeddings(const EmbeddingMatrix& m, const std::filesystem::path& path) {
    if (m.rows == 0 || m.cols == 0)
        throw ShapeError("cannot save empty embedding matrix");
    if (m.data.size() != static_cast<std::size_t>(m.rows) * m.cols)
        throw ShapeError("embedding matrix data length does not match V*D");

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    io::write_bytes(os, kMagic, 4);
    io::write_u16(os, kVersion);
    io::write_u16(os, 0);
    io::write_u32(os, m.rows);
    io::write_u32(os, m.cols);
    io::write_f32_array(os, m.data);
    os.flush();
    if (!os) throw IoError("write failed: " + path.string());
}

EmbeddingMatrix import_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open CSV file: " + path.string());

    std::vector<float> values;
    std::size_t cols = 0;
    std::size_t line_no = 0;
    std::string line;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t row_cols = 0;
        std::size_t pos = 0;
        while (true) {
            std::size_t comma = line.find(',', pos);
            std::string field = line.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            // tolerate surrounding blanks in hand-written fixtures
            std::size_t b = field.find_first_not_of(" \t");
            std::size_t e = field.find_last_not_of(" \t");
            if (b == std::string::npos)
                throw IoError("CSV: empty field at line " + std::to_string(line_no));
            field = field.substr(b, e - b + 1);

            double parsed = 0.0;
            auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parsed);
            if (ec != std::errc{} || ptr != field.data() + field.size())
                throw IoError("CSV: cannot parse '" + field + "' at line " +
                              std::to_string(line_no));
            float fv = static_cast<float>(parsed);
            if (!std::isfinite(fv))
                throw IoError("CSV: non-finite value at line " + std::to_string(line_no));
            values.push_back(fv);
            ++row_cols;
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cols == 0) {
            cols = row_cols;
        } else if (row_cols != cols) {
            throw IoError("CSV: line " + std::to_string(line_no) + " has " +
                          std::to_string(row_cols) + " fields, expected " +
                          std::to_string(cols));
        }
    }
    if (values.empty()) throw IoError("CSV: no data in " + path.string());

    EmbeddingMatrix m(static_cast<std::uint32_t>(values.size() / cols),
                      static_cast<std::uint32_t>(cols));
    m.data = std::move(values);
    return m;
}

} // namespace asg
