#pragma once

#include <cstdint>
#include <vector>

#include "uig/bitbuf.hpp"
#include "uig/core.hpp"
#include "uig/spill.hpp"

namespace uig {

/// Constant-time adjacency at log2(n!) + O(sqrt(n) log n) bits.
///
/// Vertices are cut into blocks of B = ceil(sqrt(n)). Vertex i in block k
/// stores v_i = e_i - 1 - (k-1)*B, i.e. the (relative right-endpoint block,
/// offset) pair packed as r*B + o, over the per-block alphabet
/// A_k = (ceil(n/B) - k + 1) * B. Each block is a fixed-alphabet spill code;
/// all block codes live in one shared bit buffer behind a packed offset table.
class AdjCode {
public:
    static constexpr uint64_t kPlainCutoff = 16;

    static AdjCode build(const UniversalRep& rep) {
        require_valid(rep);
        AdjCode c = shell(rep.n);
        if (c.plain()) {
            for (uint64_t i = 1; i <= rep.n; ++i) c.plain_.append(rep.e[i - 1] - 1, c.plain_width_);
            return c;
        }
        std::vector<uint64_t> offsets;
        offsets.reserve(c.n_blocks_);
        std::vector<uint64_t> values;
        for (uint64_t k = 1; k <= c.n_blocks_; ++k) {
            values.clear();
            uint64_t lo = (k - 1) * c.block_size_ + 1;
            for (uint64_t i = lo; i < lo + c.block_count(k); ++i)
                values.push_back(rep.e[i - 1] - 1 - (k - 1) * c.block_size_);
            offsets.push_back(encode_chain_append(c.plans_[k - 1], values, c.body_));
        }
        c.offsets_ = PackedArray::from_values(offsets, word_aligned_width(ceil_log2_u64(c.body_.bit_size() + 1)));
        return c;
    }

    uint64_t n() const { return n_; }
    uint64_t block_size() const { return block_size_; }
    uint64_t n_blocks() const { return n_blocks_; }
    bool plain() const { return n_ < kPlainCutoff; }

    /// Exact e_i in O(1) word probes.
    uint64_t decode_endpoint(uint64_t i, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > n_) throw std::out_of_range("adj: vertex out of range");
        if (plain()) return plain_.read64((i - 1) * plain_width_, plain_width_, pc) + 1;
        uint64_t k = (i + block_size_ - 1) / block_size_;
        uint64_t base = offsets_.get(k - 1, pc);
        ChainView<ConstantUniverse> view{&plans_[k - 1], &body_, base};
        uint64_t v = view.access(i - 1 - (k - 1) * block_size_, pc);
        return (k - 1) * block_size_ + v + 1;
    }

    bool adj(uint64_t i, uint64_t j, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("adj: vertex out of range");
        uint64_t a = std::min(i, j), b = std::max(i, j);
        return decode_endpoint(a, pc) >= b;
    }

    /// Full endpoint decode; reconstructs the representation the code was built from.
    UniversalRep reconstruct() const {
        UniversalRep rep;
        rep.n = n_;
        rep.e.resize(n_);
        for (uint64_t i = 1; i <= n_; ++i) rep.e[i - 1] = decode_endpoint(i);
        return rep;
    }

    /// Accounted storage: header, packed block offsets, and all code bits.
    uint64_t measured_bits() const {
        if (plain()) return 128 + plain_.bit_size();
        return 128 + offsets_.bit_size() + body_.bit_size();
    }

    uint64_t block_alphabet(uint64_t k) const { return (n_blocks_ - k + 1) * block_size_; }
    uint64_t block_count(uint64_t k) const {
        return k < n_blocks_ ? block_size_ : n_ - (n_blocks_ - 1) * block_size_;
    }
    const ChainPlan<ConstantUniverse>& block_plan(uint64_t k) const { return plans_[k - 1]; }
    const BitBuf& body() const { return body_; }
    const BitBuf& plain_bits() const { return plain_; }
    uint32_t plain_width() const { return plain_width_; }

    /// Used by deserialization: derived plans only, bits filled in by the caller.
    static AdjCode shell(uint64_t n) {
        if (n == 0) throw std::invalid_argument("adj: n must be >= 1");
        AdjCode c;
        c.n_ = n;
        if (n < kPlainCutoff) {
            c.plain_width_ = word_aligned_width(ceil_log2_u64(n));
            return c;
        }
        c.block_size_ = static_cast<uint64_t>(ceil_sqrt_u128(n));
        c.n_blocks_ = (n + c.block_size_ - 1) / c.block_size_;
        for (uint64_t k = 1; k <= c.n_blocks_; ++k)
            c.plans_.push_back(make_plan(ConstantUniverse{c.block_alphabet(k), c.block_count(k)}));
        return c;
    }
    BitBuf& mutable_body() { return body_; }
    BitBuf& mutable_plain() { return plain_; }
    void rebuild_offsets() {
        std::vector<uint64_t> offsets;
        uint64_t off = 0;
        for (uint64_t k = 1; k <= n_blocks_; ++k) {
            offsets.push_back(off);
            off += plans_[k - 1].total_bits();
        }
        offsets_ = PackedArray::from_values(offsets, word_aligned_width(ceil_log2_u64(off + 1)));
    }

private:
    uint64_t n_ = 0;
    uint64_t block_size_ = 0;
    uint64_t n_blocks_ = 0;
    std::vector<ChainPlan<ConstantUniverse>> plans_;  // derived from (n, k); never serialized
    BitBuf body_;
    PackedArray offsets_;
    BitBuf plain_;
    uint32_t plain_width_ = 0;
};

inline AdjCode build_adj(const UniversalRep& rep) { return AdjCode::build(rep); }

inline bool adj_query(const AdjCode& code, uint64_t i, uint64_t j, ProbeCounter* pc = nullptr) {
    return code.adj(i, j, pc);
}

inline uint64_t adj_decode_endpoint(const AdjCode& code, uint64_t i, ProbeCounter* pc = nullptr) {
    return code.decode_endpoint(i, pc);
}

}  // namespace uig
