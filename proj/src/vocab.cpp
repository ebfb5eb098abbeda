#include "asg/vocab.hpp"

#include <fstream>
#include <sstream>

#include "asg/errors.hpp"

namespace asg {

namespace {

// Strict UTF-8 validation, including overlong forms and surrogates.
bool valid_utf8(const std::string& s, std::size_t& bad_offset) {
    const auto* p = reinterpret_cast<const unsigned char*>(s.data());
    std::size_t n = s.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = p[i];
        std::size_t len;
        std::uint32_t cp;
        if (c < 0x80) {
            i += 1;
            continue;
        } else if ((c & 0xe0) == 0xc0) {
            len = 2;
            cp = c & 0x1f;
        } else if ((c & 0xf0) == 0xe0) {
            len = 3;
            cp = c & 0x0f;
        } else if ((c & 0xf8) == 0xf0) {
            len = 4;
            cp = c & 0x07;
        } else {
            bad_offset = i;
            return false;
        }
        if (i + len > n) {
            bad_offset = i;
            return false;
        }
        for (std::size_t j = 1; j < len; ++j) {
            if ((p[i + j] & 0xc0) != 0x80) {
                bad_offset = i;
                return false;
            }
            cp = (cp << 6) | (p[i + j] & 0x3f);
        }
        bool overlong = (len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
                        (len == 4 && cp < 0x10000);
        bool surrogate = cp >= 0xd800 && cp <= 0xdfff;
        if (overlong || surrogate || cp > 0x10ffff) {
            bad_offset = i;
            return false;
        }
        i += len;
    }
    return true;
}

} // namespace

std::uint32_t Vocab::index(const std::string& tok) const {
    auto it = lookup.find(tok);
    if (it == lookup.end()) throw ValidationError("unknown token: '" + tok + "'");
    return it->second;
}

Vocab load_vocab(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open vocab file: " + path.string());

    std::ostringstream buf;
    buf << is.rdbuf();
    std::string content = buf.str();

    std::size_t bad = 0;
    if (!valid_utf8(content, bad))
        throw IoError("vocab file is not valid UTF-8 (byte offset " +
                      std::to_string(bad) + ")");

    Vocab v;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < content.size()) {
        ++line_no;
        std::size_t nl = content.find('\n', pos);
        std::string tok = content.substr(
            pos, nl == std::string::npos ? std::string::npos : nl - pos);
        if (tok.empty())
            throw IoError("vocab: empty token at line " + std::to_string(line_no));
        auto [it, inserted] = v.lookup.emplace(tok, static_cast<std::uint32_t>(v.tokens.size()));
        if (!inserted)
            throw IoError("vocab: duplicate token '" + tok + "' at line " +
                          std::to_string(line_no));
        v.tokens.push_back(std::move(tok));
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    if (v.tokens.empty()) throw IoError("vocab file is empty: " + path.string());
    return v;
}

void save_vocab(const Vocab& vocab, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path.string());
    for (const auto& tok : vocab.tokens) os << tok << '\n';
    os.flush();
    if (!os) throw IoError("write failed: " + path.string());
}

} // namespace asg
