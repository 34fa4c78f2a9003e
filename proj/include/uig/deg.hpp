#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "uig/bitbuf.hpp"
#include "uig/core.hpp"
#include "uig/spill.hpp"

namespace uig {

inline uint64_t ceil_cbrt_u64(uint64_t n) {
    if (n <= 1) return n;
    uint64_t r = static_cast<uint64_t>(std::cbrt(static_cast<double>(n)));
    while (r > 1 && (r - 1) * (r - 1) * (r - 1) >= n) --r;
    while (r * r * r < n) ++r;
    return r;
}

/// Constant-time degree at log2(n!) + O(n^{2/3} log n) bits.
///
/// Vertices are cut into blocks of B3 = ceil(n^{1/3}). For block k,
/// span[k] counts intervals opening before the block and closing after it
/// (shared by every vertex of the block), and b_k counts right endpoints
/// landing inside the block. The remaining neighbor count of vertex i,
/// loc_i = deg(i) - span[k], is below n - (k-1)*B3 + b_k, which fixes the
/// block's local alphabet.
class DegCode {
public:
    static constexpr uint64_t kPlainCutoff = 64;

    static DegCode build(const UniversalRep& rep) {
        require_valid(rep);
        std::vector<uint64_t> degs = all_degrees(rep);
        DegCode c;
        c.n_ = rep.n;
        if (rep.n < kPlainCutoff) {
            c.plain_width_ = word_aligned_width(ceil_log2_u64(rep.n));
            for (uint64_t d : degs) c.plain_.append(d, c.plain_width_);
            return c;
        }
        c.block_size_ = ceil_cbrt_u64(rep.n);
        c.n_blocks_ = (rep.n + c.block_size_ - 1) / c.block_size_;
        const uint64_t B3 = c.block_size_, K = c.n_blocks_;

        std::vector<uint64_t> bcount(K, 0);
        for (uint64_t j = 1; j <= rep.n; ++j) bcount[(rep.e[j - 1] + B3 - 1) / B3 - 1]++;

        // span[k] gets +1 from every j with ceil(j/B3)+1 <= k <= ceil(e_j/B3)-1.
        std::vector<int64_t> diff(K + 2, 0);
        for (uint64_t j = 1; j <= rep.n; ++j) {
            uint64_t lo = (j + B3 - 1) / B3 + 1;
            uint64_t hi = (rep.e[j - 1] + B3 - 1) / B3 - 1;
            if (lo <= hi) {
                diff[lo] += 1;
                diff[hi + 1] -= 1;
            }
        }
        std::vector<uint64_t> span(K, 0);
        int64_t run = 0;
        for (uint64_t k = 1; k <= K; ++k) {
            run += diff[k];
            span[k - 1] = static_cast<uint64_t>(run);
        }

        uint32_t w = word_aligned_width(ceil_log2_u64(rep.n + 1));
        c.span_ = PackedArray::from_values(span, w);
        c.bcount_ = PackedArray::from_values(bcount, w);

        std::vector<uint64_t> offsets;
        offsets.reserve(K);
        std::vector<uint64_t> values;
        for (uint64_t k = 1; k <= K; ++k) {
            uint64_t alphabet = c.block_alphabet(k, bcount[k - 1]);
            c.plans_.push_back(make_plan(ConstantUniverse{alphabet, c.block_count(k)}));
            values.clear();
            uint64_t lo = (k - 1) * B3 + 1;
            for (uint64_t i = lo; i < lo + c.block_count(k); ++i) {
                uint64_t loc = degs[i - 1] - span[k - 1];
                if (degs[i - 1] < span[k - 1] || loc >= alphabet)
                    throw std::logic_error("deg build: local degree outside block alphabet");
                values.push_back(loc);
            }
            offsets.push_back(encode_chain_append(c.plans_.back(), values, c.body_));
        }
        c.offsets_ = PackedArray::from_values(offsets, word_aligned_width(ceil_log2_u64(c.body_.bit_size() + 1)));
        return c;
    }

    uint64_t n() const { return n_; }
    uint64_t block_size() const { return block_size_; }
    uint64_t n_blocks() const { return n_blocks_; }
    bool plain() const { return n_ < kPlainCutoff; }

    uint64_t deg(uint64_t i, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > n_) throw std::out_of_range("deg: vertex out of range");
        if (plain()) return plain_.read64((i - 1) * plain_width_, plain_width_, pc);
        uint64_t k = (i + block_size_ - 1) / block_size_;
        uint64_t sp = span_.get(k - 1, pc);
        uint64_t bk = bcount_.get(k - 1, pc);  // fixes the block alphabet
        if (block_alphabet(k, bk) != plans_[k - 1].universes.sigma)
            throw std::runtime_error("deg: stored block count disagrees with plan");
        uint64_t base = offsets_.get(k - 1, pc);
        ChainView<ConstantUniverse> view{&plans_[k - 1], &body_, base};
        uint64_t loc = view.access(i - 1 - (k - 1) * block_size_, pc);
        return sp + loc;
    }

    UniversalRep reconstruct() const {
        return reconstruct_from_degrees([this](uint64_t i) { return deg(i); }, n_);
    }

    /// Accounted storage: header, span/bcount arrays, packed offsets, code bits.
    uint64_t measured_bits() const {
        if (plain()) return 128 + plain_.bit_size();
        return 128 + span_.bit_size() + bcount_.bit_size() + offsets_.bit_size() + body_.bit_size();
    }

    uint64_t block_alphabet(uint64_t k, uint64_t bk) const { return n_ - (k - 1) * block_size_ + bk; }
    uint64_t block_count(uint64_t k) const {
        return k < n_blocks_ ? block_size_ : n_ - (n_blocks_ - 1) * block_size_;
    }
    const ChainPlan<ConstantUniverse>& block_plan(uint64_t k) const { return plans_[k - 1]; }
    const PackedArray& span_array() const { return span_; }
    const PackedArray& bcount_array() const { return bcount_; }
    const BitBuf& body() const { return body_; }
    const BitBuf& plain_bits() const { return plain_; }
    uint32_t plain_width() const { return plain_width_; }

    /// Deserialization shell: derived sizes; plans need bcount, so the loader
    /// calls derive_plans once the bcount array is read back.
    static DegCode shell(uint64_t n) {
        if (n == 0) throw std::invalid_argument("deg: n must be >= 1");
        DegCode c;
        c.n_ = n;
        if (n < kPlainCutoff) {
            c.plain_width_ = word_aligned_width(ceil_log2_u64(n));
            return c;
        }
        c.block_size_ = ceil_cbrt_u64(n);
        c.n_blocks_ = (n + c.block_size_ - 1) / c.block_size_;
        return c;
    }
    void derive_plans() {
        plans_.clear();
        for (uint64_t k = 1; k <= n_blocks_; ++k)
            plans_.push_back(make_plan(ConstantUniverse{block_alphabet(k, bcount_.get(k - 1)), block_count(k)}));
    }
    void rebuild_offsets() {
        std::vector<uint64_t> offsets;
        uint64_t off = 0;
        for (uint64_t k = 1; k <= n_blocks_; ++k) {
            offsets.push_back(off);
            off += plans_[k - 1].total_bits();
        }
        offsets_ = PackedArray::from_values(offsets, word_aligned_width(ceil_log2_u64(off + 1)));
    }
    BitBuf& mutable_body() { return body_; }
    BitBuf& mutable_plain() { return plain_; }
    PackedArray& mutable_span() { return span_; }
    PackedArray& mutable_bcount() { return bcount_; }

private:
    uint64_t n_ = 0;
    uint64_t block_size_ = 0;
    uint64_t n_blocks_ = 0;
    std::vector<ChainPlan<ConstantUniverse>> plans_;  // derived from (n, bcount)
    PackedArray span_;
    PackedArray bcount_;
    BitBuf body_;
    PackedArray offsets_;
    BitBuf plain_;
    uint32_t plain_width_ = 0;
};

inline DegCode build_deg(const UniversalRep& rep) { return DegCode::build(rep); }

inline uint64_t deg_query(const DegCode& code, uint64_t i, ProbeCounter* pc = nullptr) {
    return code.deg(i, pc);
}

inline UniversalRep deg_reconstruct(const DegCode& code) { return code.reconstruct(); }

}  // namespace uig
