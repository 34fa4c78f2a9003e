#pragma once

#include <cstdint>

#include "uig/bitbuf.hpp"
#include "uig/core.hpp"
#include "uig/spill.hpp"

namespace uig {

/// Cell-probe adjacency structure: the interval lengths x_i = e_i - i live in
/// the universes [n], [n-1], ..., [1] and are stored as one mixed-radix spill
/// chain, at log2(n!) + O(1) data bits and a two-block read per query.
///
/// The group plan is a pure function of n. It is materialized for speed and
/// its size reported separately (meta_bits); probe counts cover data words
/// only. A replay mode answers queries with no materialized plan at all.
class CellProbeCode {
public:
    static CellProbeCode build(const UniversalRep& rep) {
        require_valid(rep);
        CellProbeCode c;
        c.n_ = rep.n;
        std::vector<uint64_t> lengths(rep.n);
        for (uint64_t i = 1; i <= rep.n; ++i) lengths[i - 1] = rep.e[i - 1] - i;
        c.data_ = encode_chain(DecreasingUniverse{rep.n}, lengths);
        return c;
    }

    uint64_t n() const { return n_; }
    uint64_t data_bits() const { return data_.stored_bits(); }

    /// Size of the materialized plan tables the query path indexes into:
    /// per group (element start, bit offset, M, D, S) plus chain header.
    uint64_t meta_bits() const { return data_.n_groups() * (64 + 64 + 16 + 128 + 64) + 192; }

    uint64_t decode_length(uint64_t i, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > n_) throw std::out_of_range("cellprobe: vertex out of range");
        return data_.access(i - 1, pc);
    }

    bool adj(uint64_t i, uint64_t j, ProbeCounter* pc = nullptr) const {
        if (i < 1 || i > n_ || j < 1 || j > n_) throw std::out_of_range("cellprobe: vertex out of range");
        uint64_t a = std::min(i, j), b = std::max(i, j);
        return a + decode_length(a, pc) >= b;
    }

    UniversalRep reconstruct() const {
        UniversalRep rep;
        rep.n = n_;
        rep.e.resize(n_);
        for (uint64_t i = 1; i <= n_; ++i) rep.e[i - 1] = i + decode_length(i);
        return rep;
    }

    const SpillCode<DecreasingUniverse>& data() const { return data_; }

    static CellProbeCode shell(uint64_t n) {
        if (n == 0) throw std::invalid_argument("cellprobe: n must be >= 1");
        CellProbeCode c;
        c.n_ = n;
        c.data_.plan = make_plan(DecreasingUniverse{n});
        return c;
    }
    BitBuf& mutable_bits() { return data_.bits; }

private:
    uint64_t n_ = 0;
    SpillCode<DecreasingUniverse> data_;
};

inline CellProbeCode build_cellprobe(const UniversalRep& rep) { return CellProbeCode::build(rep); }

inline bool cp_adj_query(const CellProbeCode& code, uint64_t i, uint64_t j,
                         ProbeCounter* pc = nullptr) {
    return code.adj(i, j, pc);
}

/// Slower, metadata-free query: rebuilds the plan from n with plain word
/// arithmetic on every call, then reads the same data bits.
inline bool cp_adj_query_replay(uint64_t n, const BitBuf& bits, uint64_t i, uint64_t j,
                                ProbeCounter* pc = nullptr) {
    if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("cellprobe: vertex out of range");
    ChainPlan<DecreasingUniverse> plan = make_plan(DecreasingUniverse{n});
    ChainView<DecreasingUniverse> view{&plan, &bits, 0};
    uint64_t a = std::min(i, j), b = std::max(i, j);
    return a + view.access(a - 1, pc) >= b;
}

}  // namespace uig
