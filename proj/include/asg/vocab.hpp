#ifndef ASG_VOCAB_HPP
#define ASG_VOCAB_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace asg {

// Ordered token list with string -> row lookup. Token strings are unique.
struct Vocab {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, std::uint32_t> lookup;

    std::uint32_t size() const { return static_cast<std::uint32_t>(tokens.size()); }
    bool contains(const std::string& tok) const { return lookup.count(tok) != 0; }
    std::uint32_t index(const std::string& tok) const; // throws ValidationError
};

// Vocab file: UTF-8 text, one token per line, LF-terminated. Duplicate and
// empty lines are rejected; a final unterminated line is accepted.
Vocab load_vocab(const std::filesystem::path& path);
void save_vocab(const Vocab& vocab, const std::filesystem::path& path);

} // namespace asg

#endif // ASG_VOCAB_HPP
