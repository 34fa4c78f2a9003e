#pragma once

#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "uig/bitbuf.hpp"

namespace uig {

/// Parameters of the injective map [X] x [Y] -> [2^M] x [S] with
///   m = y*D + (x div S),  s = x mod S,
/// so y is recoverable from m alone and x from (m, s).
struct SpillParams {
    u128 X = 1;
    uint64_t Y = 1;
    uint32_t M = 0;  // bit width of m
    u128 D = 1;      // payload multiplier, floor(2^M / Y)
    uint64_t S = 1;  // output spill universe, ceil(X / D)

    u128 m_universe() const { return u128{1} << M; }
};

namespace detail {

// Compare M1 + log2(S1) < M2 + log2(S2) exactly, i.e. S1*2^M1 < S2*2^M2.
// Feasible S values stay below 2^63, so a shift gap of 64+ bits decides.
inline bool cost_less(uint32_t m1, u128 s1, uint32_t m2, u128 s2) {
    if (m1 == m2) return s1 < s2;
    if (m1 < m2) {
        uint32_t d = m2 - m1;
        if (d >= 64) return true;
        return s1 < (s2 << d);
    }
    uint32_t d = m1 - m2;
    if (d >= 64) return false;
    return (s1 << d) < s2;
}

}  // namespace detail

/// Chooses (M, D, S) for the pair universe [X] x [Y], minimizing the stored
/// cost M + log2(S) subject to S <= 4*ceil(sqrt(X)) and 2^M <= 4*Y*ceil(sqrt(X)).
inline SpillParams spill_params(u128 X, uint64_t Y) {
    if (X < 1 || Y < 1) throw std::invalid_argument("spill_params: universes must be >= 1");
    if (X > (u128{1} << 122)) throw std::overflow_error("spill_params: X exceeds double-word budget");
    const u128 r = ceil_sqrt_u128(X);
    const u128 s_cap = 4 * r;
    const u128 m_cap = 4 * static_cast<u128>(Y) * r;  // <= 2^130? Y<=2^64-1,r<=2^61 -> <=2^127
    bool have = false;
    uint32_t best_m = 0;
    u128 best_s = 0;
    for (uint32_t M = ceil_log2_u64(Y); M <= 127; ++M) {
        u128 p = u128{1} << M;
        if (p > m_cap) break;
        u128 D = p / Y;
        if (D == 0) continue;
        u128 S = (X + D - 1) / D;
        if (S > s_cap) continue;
        if (!have || detail::cost_less(M, S, best_m, best_s)) {
            have = true;
            best_m = M;
            best_s = S;
        }
    }
    if (!have) throw std::logic_error("spill_params: no feasible parameters");
    SpillParams sp;
    sp.X = X;
    sp.Y = Y;
    sp.M = best_m;
    sp.D = (u128{1} << best_m) / Y;
    sp.S = static_cast<uint64_t>((X + sp.D - 1) / sp.D);
    return sp;
}

inline std::pair<u128, uint64_t> spill_encode(u128 x, uint64_t y, const SpillParams& p) {
    if (x >= p.X || y >= p.Y) throw std::invalid_argument("spill_encode: value out of range");
    u128 a = x / p.S;
    uint64_t s = static_cast<uint64_t>(x % p.S);
    u128 m = static_cast<u128>(y) * p.D + a;
    return {m, s};
}

inline uint64_t spill_decode_y(u128 m, const SpillParams& p) {
    if (m >= static_cast<u128>(p.Y) * p.D) throw std::runtime_error("spill_decode_y: corrupt block");
    return static_cast<uint64_t>(m / p.D);
}

inline u128 spill_decode_x(u128 m, uint64_t s, const SpillParams& p) {
    if (s >= p.S) throw std::runtime_error("spill_decode_x: corrupt spill");
    u128 a = m % p.D;
    if (a > p.X / p.S) throw std::runtime_error("spill_decode_x: corrupt block");
    u128 x = a * p.S + s;
    if (x >= p.X) throw std::runtime_error("spill_decode_x: corrupt pair");
    return x;
}

/// Default greedy group capacity: group products and every y*D stay well
/// inside 128-bit arithmetic, and two adjacent memory blocks span at most
/// 192 bits (four words at worst alignment).
inline constexpr u128 kChainTarget = u128{1} << 92;

template <typename U>
concept UniverseSeq = requires(const U& u, uint64_t i) {
    { u.size() } -> std::convertible_to<uint64_t>;
    { u[i] } -> std::convertible_to<uint64_t>;
};

struct ConstantUniverse {
    uint64_t sigma = 1;
    uint64_t count = 0;
    uint64_t size() const { return count; }
    uint64_t operator[](uint64_t) const { return sigma; }
};

/// U_i = n - i for 0-based i, i.e. the interval-length universes n, n-1, ..., 1.
struct DecreasingUniverse {
    uint64_t n = 0;
    uint64_t size() const { return n; }
    uint64_t operator[](uint64_t i) const { return n - i; }
};

struct VectorUniverse {
    std::vector<uint64_t> u;
    uint64_t size() const { return u.size(); }
    uint64_t operator[](uint64_t i) const { return u[i]; }
};

struct ChainLink {
    uint64_t elem_start = 0;
    uint64_t elem_count = 0;
    u128 universe = 1;   // product of element universes in this group
    SpillParams sp;      // X = universe, Y = previous link's S
    uint64_t bit_off = 0;  // offset of this block within the chain's bits
};

/// Deterministic function of the universe sequence alone; never serialized.
template <UniverseSeq U>
struct ChainPlan {
    U universes;
    u128 target = kChainTarget;
    std::vector<ChainLink> links;
    uint64_t n_elems = 0;
    uint64_t body_bits = 0;
    uint32_t tail_bits = 0;

    uint64_t total_bits() const { return body_bits + tail_bits; }

    size_t locate(uint64_t elem) const {
        size_t lo = 0, hi = links.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi + 1) / 2;
            if (links[mid].elem_start <= elem) lo = mid;
            else hi = mid - 1;
        }
        return lo;
    }
};

template <UniverseSeq U>
ChainPlan<U> make_plan(U universes, u128 target = kChainTarget) {
    ChainPlan<U> plan;
    plan.universes = universes;
    plan.target = target;
    plan.n_elems = universes.size();
    uint64_t i = 0;
    while (i < plan.n_elems) {
        uint64_t ui = universes[i];
        if (ui < 1) throw std::invalid_argument("group_plan: universe must be >= 1");
        if (static_cast<u128>(ui) > target)
            throw std::invalid_argument("group_plan: single universe exceeds target");
        ChainLink link;
        link.elem_start = i;
        u128 prod = ui;
        uint64_t j = i + 1;
        while (j < plan.n_elems) {
            uint64_t uj = universes[j];
            if (uj < 1) throw std::invalid_argument("group_plan: universe must be >= 1");
            if (prod > target / uj) break;
            prod *= uj;
            ++j;
        }
        link.elem_count = j - i;
        link.universe = prod;
        plan.links.push_back(link);
        i = j;
    }
    uint64_t spill_u = 1;
    uint64_t off = 0;
    for (ChainLink& link : plan.links) {
        link.sp = spill_params(link.universe, spill_u);
        link.bit_off = off;
        off += link.sp.M;
        spill_u = link.sp.S;
    }
    plan.body_bits = off;
    plan.tail_bits = plan.links.empty() ? 0 : ceil_log2_u64(plan.links.back().sp.S);
    return plan;
}

namespace detail {

template <UniverseSeq U>
u128 pack_group(const ChainPlan<U>& plan, const ChainLink& link, std::span<const uint64_t> values) {
    u128 acc = 0;
    for (uint64_t l = link.elem_start; l < link.elem_start + link.elem_count; ++l) {
        uint64_t u = plan.universes[l];
        uint64_t v = values[l];
        if (v >= u) throw std::invalid_argument("encode_chain: value out of universe");
        acc = acc * u + v;
    }
    return acc;
}

template <UniverseSeq U>
uint64_t unpack_slot(const ChainPlan<U>& plan, const ChainLink& link, u128 group_value, uint64_t elem) {
    u128 suffix = 1;
    for (uint64_t l = link.elem_start + link.elem_count - 1; l > elem; --l) suffix *= plan.universes[l];
    return static_cast<uint64_t>((group_value / suffix) % plan.universes[elem]);
}

}  // namespace detail

/// Appends the encoded chain (memory blocks then tail spill) to `out`;
/// returns the bit offset the chain starts at.
template <UniverseSeq U>
uint64_t encode_chain_append(const ChainPlan<U>& plan, std::span<const uint64_t> values, BitBuf& out) {
    if (values.size() != plan.n_elems) throw std::invalid_argument("encode_chain: value count mismatch");
    uint64_t base = out.bit_size();
    uint64_t spill = 0;
    for (const ChainLink& link : plan.links) {
        u128 group_value = detail::pack_group(plan, link, values);
        auto [m, s] = spill_encode(group_value, spill, link.sp);
        out.append(m, link.sp.M);
        spill = s;
    }
    out.append(spill, plan.tail_bits);
    return base;
}

/// Read-only cursor over one encoded chain living inside a shared bit buffer.
/// Decoding group g reads m_g plus the spill threaded through m_{g+1}
/// (the tail bits for the final group).
template <UniverseSeq U>
struct ChainView {
    const ChainPlan<U>* plan = nullptr;
    const BitBuf* bits = nullptr;
    uint64_t base = 0;

    uint64_t access(uint64_t elem, ProbeCounter* pc = nullptr) const {
        if (elem >= plan->n_elems) throw std::out_of_range("access_chain: index out of range");
        size_t g = plan->locate(elem);
        const ChainLink& link = plan->links[g];
        u128 m = bits->read(base + link.bit_off, link.sp.M, pc);
        uint64_t spill;
        if (g + 1 < plan->links.size()) {
            const ChainLink& next = plan->links[g + 1];
            u128 m_next = bits->read(base + next.bit_off, next.sp.M, pc);
            spill = spill_decode_y(m_next, next.sp);
        } else {
            spill = bits->read64(base + plan->body_bits, plan->tail_bits, pc);
        }
        u128 group_value = spill_decode_x(m, spill, link.sp);
        return detail::unpack_slot(*plan, link, group_value, elem);
    }
};

/// Owning encoded sequence: derived plan plus the stored bits.
template <UniverseSeq U>
struct SpillCode {
    ChainPlan<U> plan;
    BitBuf bits;

    uint64_t stored_bits() const { return plan.total_bits(); }
    uint64_t n_groups() const { return plan.links.size(); }
    ChainView<U> view() const { return {&plan, &bits, 0}; }
    uint64_t access(uint64_t elem, ProbeCounter* pc = nullptr) const { return view().access(elem, pc); }
};

template <UniverseSeq U>
SpillCode<U> encode_chain(U universes, std::span<const uint64_t> values, u128 target = kChainTarget) {
    SpillCode<U> code;
    code.plan = make_plan(universes, target);
    encode_chain_append(code.plan, values, code.bits);
    return code;
}

inline SpillCode<ConstantUniverse> encode_fixed(uint64_t sigma, std::span<const uint64_t> values,
                                                u128 target = kChainTarget) {
    return encode_chain(ConstantUniverse{sigma, values.size()}, values, target);
}

inline uint64_t access_fixed(const SpillCode<ConstantUniverse>& code, uint64_t i,
                             ProbeCounter* pc = nullptr) {
    return code.access(i, pc);
}

}  // namespace uig
