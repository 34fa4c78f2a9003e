#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace uig {

using u128 = unsigned __int128;

inline uint32_t ceil_log2_u64(uint64_t v) {
    if (v <= 1) return 0;
    return 64 - static_cast<uint32_t>(__builtin_clzll(v - 1));
}

inline uint32_t ceil_log2_u128(u128 v) {
    if (v <= 1) return 0;
    --v;
    uint64_t hi = static_cast<uint64_t>(v >> 64);
    if (hi) return 128 - __builtin_clzll(hi);
    return 64 - __builtin_clzll(static_cast<uint64_t>(v));
}

/// Smallest power of two >= w (capped at 64). Entries of that width never
/// straddle a word, so each packed-array read costs exactly one probe.
inline uint32_t word_aligned_width(uint32_t w) {
    if (w == 0) return 0;
    uint32_t a = 1;
    while (a < w) a <<= 1;
    return a > 64 ? 64 : a;
}

/// ceil(sqrt(x)) for 128-bit x.
inline u128 ceil_sqrt_u128(u128 x) {
    if (x <= 1) return x;
    // Newton from a power-of-two overestimate.
    u128 r = u128{1} << ((ceil_log2_u128(x) + 1) / 2);
    while (true) {
        u128 nr = (r + x / r) >> 1;
        if (nr >= r) break;
        r = nr;
    }
    while (r * r < x) ++r;
    while (r > 1 && (r - 1) * (r - 1) >= x) --r;
    return r;
}

/// Counts distinct machine words touched while answering one query.
/// Word identity is (buffer, word index); re-reading a word is free.
class ProbeCounter {
public:
    void touch(const void* buf, uint64_t word) {
        for (size_t i = 0; i < n_; ++i)
            if (seen_[i].first == buf && seen_[i].second == word) return;
        if (n_ < seen_.size()) seen_[n_++] = {buf, word};
        else ++overflow_;  // still counted, identity lost
    }
    uint64_t count() const { return n_ + overflow_; }
    void reset() { n_ = 0; overflow_ = 0; }

    std::vector<std::pair<const void*, uint64_t>> touched() const {
        return {seen_.begin(), seen_.begin() + n_};
    }

private:
    std::array<std::pair<const void*, uint64_t>, 48> seen_{};
    size_t n_ = 0;
    uint64_t overflow_ = 0;
};

/// Append-only bit buffer over 64-bit words. Bit i lives in word i/64 at
/// position i%64; serialization emits bytes little-endian within each word,
/// so bit i of the stream is bit i%8 of byte i/8.
class BitBuf {
public:
    BitBuf() = default;

    uint64_t bit_size() const { return bits_; }
    const std::vector<uint64_t>& words() const { return words_; }

    void append(u128 value, uint32_t width) {
        if (width == 0) return;
        if (width > 128) throw std::invalid_argument("BitBuf::append: width > 128");
        if (width < 128 && (value >> width) != 0)
            throw std::invalid_argument("BitBuf::append: value does not fit width");
        uint64_t pos = bits_;
        bits_ += width;
        words_.resize((bits_ + 63) / 64, 0);
        uint32_t done = 0;
        while (done < width) {
            uint64_t w = (pos + done) / 64;
            uint32_t off = (pos + done) % 64;
            uint32_t take = std::min<uint32_t>(64 - off, width - done);
            uint64_t chunk = static_cast<uint64_t>(value >> done);
            if (take < 64) chunk &= (uint64_t{1} << take) - 1;
            words_[w] |= chunk << off;
            done += take;
        }
    }

    u128 read(uint64_t pos, uint32_t width, ProbeCounter* pc = nullptr) const {
        if (width == 0) return 0;
        if (width > 128) throw std::invalid_argument("BitBuf::read: width > 128");
        if (pos + width > bits_) throw std::out_of_range("BitBuf::read: past end");
        u128 out = 0;
        uint32_t done = 0;
        while (done < width) {
            uint64_t w = (pos + done) / 64;
            uint32_t off = (pos + done) % 64;
            uint32_t take = std::min<uint32_t>(64 - off, width - done);
            if (pc) pc->touch(this, w);
            uint64_t chunk = words_[w] >> off;
            if (take < 64) chunk &= (uint64_t{1} << take) - 1;
            out |= static_cast<u128>(chunk) << done;
            done += take;
        }
        return out;
    }

    uint64_t read64(uint64_t pos, uint32_t width, ProbeCounter* pc = nullptr) const {
        return static_cast<uint64_t>(read(pos, width, pc));
    }

    /// Bytes of the first `bits` bits (little-endian within bytes), zero padded.
    void write_bytes(std::ostream& os, uint64_t from_bit, uint64_t nbits) const {
        uint64_t nbytes = (nbits + 7) / 8;
        for (uint64_t b = 0; b < nbytes; ++b) {
            uint32_t take = static_cast<uint32_t>(std::min<uint64_t>(8, nbits - b * 8));
            uint8_t byte = static_cast<uint8_t>(read64(from_bit + b * 8, take));
            os.put(static_cast<char>(byte));
        }
    }

    void append_bytes(std::istream& is, uint64_t nbits) {
        uint64_t nbytes = (nbits + 7) / 8;
        for (uint64_t b = 0; b < nbytes; ++b) {
            int c = is.get();
            if (c == EOF) throw std::runtime_error("BitBuf::append_bytes: truncated input");
            uint32_t take = static_cast<uint32_t>(std::min<uint64_t>(8, nbits - b * 8));
            append(static_cast<uint64_t>(c) & ((1u << take) - 1), take);
        }
    }

    bool operator==(const BitBuf& o) const = default;

private:
    std::vector<uint64_t> words_;
    uint64_t bits_ = 0;
};

/// Fixed-width packed integer array on top of BitBuf.
class PackedArray {
public:
    PackedArray() = default;
    PackedArray(uint64_t count, uint32_t width) : count_(count), width_(width) {
        for (uint64_t i = 0; i < count; ++i) buf_.append(0, width);
    }
    static PackedArray from_values(const std::vector<uint64_t>& v, uint32_t width) {
        PackedArray a;
        a.count_ = v.size();
        a.width_ = width;
        for (uint64_t x : v) a.buf_.append(x, width);
        return a;
    }

    uint64_t get(uint64_t i, ProbeCounter* pc = nullptr) const {
        return buf_.read64(i * width_, width_, pc);
    }
    uint64_t size() const { return count_; }
    uint32_t width() const { return width_; }
    uint64_t bit_size() const { return buf_.bit_size(); }
    const BitBuf& bits() const { return buf_; }
    BitBuf& bits() { return buf_; }
    void set_shape(uint64_t count, uint32_t width) { count_ = count; width_ = width; }

private:
    BitBuf buf_;
    uint64_t count_ = 0;
    uint32_t width_ = 0;
};

}  // namespace uig
