#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "cadence/errors.hpp"

namespace cadence {

// Little-endian byte buffers used by every file format in the project.
// Files are small enough (tens of MB at most) that whole-buffer
// serialization keeps the format code trivial and makes checksums over
// "everything written so far" a one-liner.

class ByteWriter {
public:
    void put_u8(std::uint8_t v) { buf_.push_back(v); }

    void put_u16(std::uint16_t v) { put_le(v); }
    void put_u32(std::uint32_t v) { put_le(v); }
    void put_u64(std::uint64_t v) { put_le(v); }
    void put_i64(std::int64_t v) { put_le(static_cast<std::uint64_t>(v)); }

    void put_f32(float v) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        put_le(bits);
    }

    void put_bytes(const void* data, std::size_t n) {
        const auto* p = static_cast<const std::uint8_t*>(data);
        buf_.insert(buf_.end(), p, p + n);
    }

    void put_magic(const char (&magic)[5]) { put_bytes(magic, 4); }

    void put_string(const std::string& s) {
        put_u32(static_cast<std::uint32_t>(s.size()));
        put_bytes(s.data(), s.size());
    }

    const std::vector<std::uint8_t>& bytes() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    std::size_t size() const { return buf_.size(); }

private:
    template <typename T>
    void put_le(T v) {
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
        }
    }

    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    ByteReader(const std::uint8_t* data, std::size_t size, std::string what)
        : data_(data), size_(size), what_(std::move(what)) {}

    explicit ByteReader(const std::vector<std::uint8_t>& buf, std::string what = "buffer")
        : ByteReader(buf.data(), buf.size(), std::move(what)) {}

    std::uint8_t get_u8() { return take(1)[0]; }

    std::uint16_t get_u16() { return get_le<std::uint16_t>(); }
    std::uint32_t get_u32() { return get_le<std::uint32_t>(); }
    std::uint64_t get_u64() { return get_le<std::uint64_t>(); }
    std::int64_t get_i64() { return static_cast<std::int64_t>(get_le<std::uint64_t>()); }

    float get_f32() {
        std::uint32_t bits = get_le<std::uint32_t>();
        float v;
        std::memcpy(&v, &bits, 4);
        return v;
    }

    void expect_magic(const char (&magic)[5]) {
        const std::uint8_t* p = take(4);
        if (std::memcmp(p, magic, 4) != 0) {
            throw FormatError(what_ + ": bad magic, expected '" + std::string(magic, 4) + "'");
        }
    }

    std::string get_string() {
        std::uint32_t n = get_u32();
        const std::uint8_t* p = take(n);
        return std::string(reinterpret_cast<const char*>(p), n);
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return size_ - pos_; }

    const std::uint8_t* take(std::size_t n) {
        if (n > size_ - pos_) {
            throw FormatError(what_ + ": truncated, needed " + std::to_string(n) +
                              " bytes at offset " + std::to_string(pos_));
        }
        const std::uint8_t* p = data_ + pos_;
        pos_ += n;
        return p;
    }

private:
    template <typename T>
    T get_le() {
        const std::uint8_t* p = take(sizeof(T));
        T v = 0;
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            v |= static_cast<T>(p[i]) << (8 * i);
        }
        return v;
    }

    const std::uint8_t* data_;
    std::size_t size_;
    std::size_t pos_ = 0;
    std::string what_;
};

/// CRC-32 (IEEE 802.3, reflected) over a byte range.
inline std::uint32_t crc32(const std::uint8_t* data, std::size_t n, std::uint32_t seed = 0) {
    static const std::array<std::uint32_t, 256> table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) {
                c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            }
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t c = ~seed;
    for (std::size_t i = 0; i < n; ++i) {
        c = table[(c ^ data[i]) & 0xFF] ^ (c >> 8);
    }
    return ~c;
}

inline std::uint32_t crc32(const std::vector<std::uint8_t>& buf) {
    return crc32(buf.data(), buf.size());
}

/// FNV-1a 64-bit hash, used for provenance checksums.
inline std::uint64_t fnv1a64(const void* data, std::size_t n, std::uint64_t seed = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    std::uint64_t h = seed;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path + "' for reading");
    }
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw IoError("read failure on '" + path + "'");
    }
    return buf;
}

inline void write_file_bytes(const std::string& path, const std::vector<std::uint8_t>& buf) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
    if (!out) {
        throw IoError("write failure on '" + path + "'");
    }
}

inline void write_file_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    out << text;
    if (!out) {
        throw IoError("write failure on '" + path + "'");
    }
}

inline std::string read_file_text(const std::string& path) {
    auto bytes = read_file_bytes(path);
    return std::string(bytes.begin(), bytes.end());
}

} // namespace cadence
