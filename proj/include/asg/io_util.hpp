#ifndef ASG_IO_UTIL_HPP
#define ASG_IO_UTIL_HPP

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "asg/errors.hpp"

// Little-endian stream primitives shared by the ASGE/ASG1/ASGS formats.
// Multi-byte values are packed byte-by-byte so the formats stay bit-exact
// on any host; float arrays take a memcpy fast path on little-endian hosts.

namespace asg::io {

inline void write_bytes(std::ostream& os, const void* p, std::size_t n) {
    os.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
    if (!os) throw IoError("write failed");
}

inline void read_bytes(std::istream& is, void* p, std::size_t n, const char* what) {
    is.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(is.gcount()) != n)
        throw IoError(std::string("truncated file: short read of ") + what);
}

inline void write_u8(std::ostream& os, std::uint8_t v) {
    write_bytes(os, &v, 1);
}

inline void write_u16(std::ostream& os, std::uint16_t v) {
    unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>(v >> 8)};
    write_bytes(os, b, 2);
}

inline void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(os, b, 4);
}

inline void write_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    write_bytes(os, b, 8);
}

inline void write_f32(std::ostream& os, float v) {
    write_u32(os, std::bit_cast<std::uint32_t>(v));
}

inline std::uint8_t read_u8(std::istream& is, const char* what) {
    std::uint8_t v;
    read_bytes(is, &v, 1, what);
    return v;
}

inline std::uint16_t read_u16(std::istream& is, const char* what) {
    unsigned char b[2];
    read_bytes(is, b, 2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

inline std::uint32_t read_u32(std::istream& is, const char* what) {
    unsigned char b[4];
    read_bytes(is, b, 4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[i]) << (8 * i);
    return v;
}

inline std::uint64_t read_u64(std::istream& is, const char* what) {
    unsigned char b[8];
    read_bytes(is, b, 8, what);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

inline float read_f32(std::istream& is, const char* what) {
    return std::bit_cast<float>(read_u32(is, what));
}

inline void write_f32_array(std::ostream& os, std::span<const float> a) {
    if constexpr (std::endian::native == std::endian::little) {
        write_bytes(os, a.data(), a.size() * sizeof(float));
    } else {
        for (float v : a) write_f32(os, v);
    }
}

inline void read_f32_array(std::istream& is, std::span<float> a, const char* what) {
    if constexpr (std::endian::native == std::endian::little) {
        read_bytes(is, a.data(), a.size() * sizeof(float), what);
    } else {
        for (float& v : a) v = read_f32(is, what);
    }
}

inline void write_u32_array(std::ostream& os, std::span<const std::uint32_t> a) {
    if constexpr (std::endian::native == std::endian::little) {
        write_bytes(os, a.data(), a.size() * sizeof(std::uint32_t));
    } else {
        for (std::uint32_t v : a) write_u32(os, v);
    }
}

inline void read_u32_array(std::istream& is, std::span<std::uint32_t> a, const char* what) {
    if constexpr (std::endian::native == std::endian::little) {
        read_bytes(is, a.data(), a.size() * sizeof(std::uint32_t), what);
    } else {
        for (std::uint32_t& v : a) v = read_u32(is, what);
    }
}

// Loaders call this after the last expected byte; any trailing payload means
// the file does not match its declared shape.
inline void expect_eof(std::istream& is, const char* format) {
    char c;
    is.read(&c, 1);
    if (!is.eof())
        throw IoError(std::string(format) + ": trailing data after declared payload");
}

} // namespace asg::io

#endif // ASG_IO_UTIL_HPP
