#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace uig {

/// Interval family in universal form: vertex i (1-based) owns [i, e_i] with
/// i <= e_i <= n, so the left endpoints are exactly 1..n.
struct UniversalRep {
    uint64_t n = 0;
    std::vector<uint64_t> e;  // e[i-1] is the right endpoint of vertex i

    uint64_t endpoint(uint64_t i) const { return e[i - 1]; }
    bool operator==(const UniversalRep&) const = default;
};

struct Violation {
    enum class Reason { WrongLength, BelowLeft, AboveN };
    Reason reason;
    uint64_t index;  // 1-based vertex, 0 for length mismatch

    std::string message() const {
        switch (reason) {
            case Reason::WrongLength: return "endpoint sequence length differs from n";
            case Reason::BelowLeft: return "e_" + std::to_string(index) + " < " + std::to_string(index);
            case Reason::AboveN: return "e_" + std::to_string(index) + " > n";
        }
        return "unknown";
    }
};

inline std::optional<Violation> validate_universal(const UniversalRep& rep) {
    if (rep.e.size() != rep.n) return Violation{Violation::Reason::WrongLength, 0};
    for (uint64_t i = 1; i <= rep.n; ++i) {
        if (rep.e[i - 1] < i) return Violation{Violation::Reason::BelowLeft, i};
        if (rep.e[i - 1] > rep.n) return Violation{Violation::Reason::AboveN, i};
    }
    return std::nullopt;
}

inline void require_valid(const UniversalRep& rep) {
    if (auto v = validate_universal(rep)) throw std::invalid_argument("invalid representation: " + v->message());
}

namespace detail {

/// Unbiased draw from [0, bound) via rejection; deterministic for a given engine state.
inline uint64_t bounded_draw(std::mt19937_64& eng, uint64_t bound) {
    if (bound <= 1) return 0;
    uint64_t threshold = -bound % bound;  // 2^64 mod bound
    while (true) {
        uint64_t v = eng();
        if (v >= threshold) return v % bound;
    }
}

}  // namespace detail

/// Each e_i drawn independently and uniformly from [i, n].
inline UniversalRep sample_uniform(uint64_t n, uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_uniform: n must be >= 1");
    std::mt19937_64 eng(seed);
    UniversalRep rep;
    rep.n = n;
    rep.e.resize(n);
    for (uint64_t i = 1; i <= n; ++i) rep.e[i - 1] = i + detail::bounded_draw(eng, n - i + 1);
    return rep;
}

/// Classic form: n closed intervals with 2n pairwise distinct integer
/// endpoints drawn from [1, 2n], L_i < R_i.
struct ClassicRep {
    uint64_t n = 0;
    std::vector<std::pair<uint64_t, uint64_t>> intervals;
};

inline void require_valid(const ClassicRep& c) {
    if (c.intervals.size() != c.n || c.n == 0)
        throw std::invalid_argument("invalid classic representation: bad interval count");
    std::vector<uint64_t> pts;
    pts.reserve(2 * c.n);
    for (auto [l, r] : c.intervals) {
        if (!(l < r)) throw std::invalid_argument("invalid classic representation: L >= R");
        if (l < 1 || r > 2 * c.n) throw std::invalid_argument("invalid classic representation: endpoint outside [1, 2n]");
        pts.push_back(l);
        pts.push_back(r);
    }
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
        throw std::invalid_argument("invalid classic representation: duplicate endpoint");
}

/// Maps arbitrary closed intervals order-preservingly onto distinct integers
/// in [1, 2n]. Ties are broken (value, left-before-right, original index) so
/// touching closed intervals stay adjacent.
inline ClassicRep normalize_to_classic(std::span<const std::pair<double, double>> raw) {
    if (raw.empty()) throw std::invalid_argument("normalize_to_classic: empty input");
    struct Rec {
        double value;
        int is_right;  // lefts sort before rights on equal value
        uint64_t idx;
    };
    std::vector<Rec> recs;
    recs.reserve(2 * raw.size());
    for (uint64_t i = 0; i < raw.size(); ++i) {
        auto [l, r] = raw[i];
        if (!(l <= r)) throw std::invalid_argument("normalize_to_classic: interval with left > right");
        recs.push_back({l, 0, i});
        recs.push_back({r, 1, i});
    }
    std::sort(recs.begin(), recs.end(), [](const Rec& a, const Rec& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.is_right != b.is_right) return a.is_right < b.is_right;
        return a.idx < b.idx;
    });
    ClassicRep out;
    out.n = raw.size();
    out.intervals.resize(out.n);
    for (uint64_t pos = 0; pos < recs.size(); ++pos) {
        const Rec& rec = recs[pos];
        (rec.is_right ? out.intervals[rec.idx].second : out.intervals[rec.idx].first) = pos + 1;
    }
    return out;
}

/// The vertex with the k-th smallest left endpoint becomes vertex k, and
/// e_k counts the left endpoints strictly below R_k.
inline UniversalRep classic_to_universal(const ClassicRep& c) {
    require_valid(c);
    std::vector<uint64_t> order(c.n);
    for (uint64_t i = 0; i < c.n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](uint64_t a, uint64_t b) { return c.intervals[a].first < c.intervals[b].first; });
    std::vector<uint64_t> lefts(c.n);
    for (uint64_t k = 0; k < c.n; ++k) lefts[k] = c.intervals[order[k]].first;
    UniversalRep rep;
    rep.n = c.n;
    rep.e.resize(c.n);
    for (uint64_t k = 0; k < c.n; ++k) {
        uint64_t r = c.intervals[order[k]].second;
        rep.e[k] = std::lower_bound(lefts.begin(), lefts.end(), r) - lefts.begin();
    }
    require_valid(rep);
    return rep;
}

inline void check_vertex(const UniversalRep& rep, uint64_t i) {
    if (i < 1 || i > rep.n) throw std::out_of_range("vertex out of range");
}

/// Brute-force adjacency: intervals [i, e_i] and [j, e_j] intersect iff
/// e_min >= max. adj(i, i) is true.
inline bool oracle_adj(const UniversalRep& rep, uint64_t i, uint64_t j) {
    check_vertex(rep, i);
    check_vertex(rep, j);
    uint64_t a = std::min(i, j), b = std::max(i, j);
    return rep.e[a - 1] >= b;
}

/// Brute-force degree: |{j < i : e_j >= i}| + (e_i - i).
inline uint64_t oracle_deg(const UniversalRep& rep, uint64_t i) {
    check_vertex(rep, i);
    uint64_t left = 0;
    for (uint64_t j = 1; j < i; ++j)
        if (rep.e[j - 1] >= i) ++left;
    return left + (rep.e[i - 1] - i);
}

/// All degrees in one O(n) sweep; matches oracle_deg pointwise.
/// Loop invariant at vertex i: crossing = |{j < i : e_j >= i}| and endings
/// holds the endpoint histogram of vertices before i.
inline std::vector<uint64_t> all_degrees(const UniversalRep& rep) {
    require_valid(rep);
    std::vector<uint64_t> deg(rep.n);
    std::vector<uint64_t> endings(rep.n + 1, 0);
    uint64_t crossing = 0;
    for (uint64_t i = 1; i <= rep.n; ++i) {
        uint64_t ei = rep.e[i - 1];
        deg[i - 1] = crossing + (ei - i);
        uint64_t die_here = endings[i];
        if (ei >= i + 1) ++crossing;
        crossing -= die_here;
        endings[ei]++;
    }
    return deg;
}

/// Binary search for the last j in [i, n] adjacent to i; that j is e_i.
/// Uses at most ceil(log2(n - i + 1)) + 1 adjacency calls.
inline uint64_t endpoint_via_adj(const std::function<bool(uint64_t, uint64_t)>& adj_fn, uint64_t i,
                                 uint64_t n, uint64_t* calls = nullptr) {
    if (i < 1 || i > n) throw std::out_of_range("endpoint_via_adj: vertex out of range");
    uint64_t lo = i, hi = n, used = 0;
    while (lo < hi) {
        uint64_t mid = lo + (hi - lo + 1) / 2;
        ++used;
        if (adj_fn(i, mid)) lo = mid;
        else hi = mid - 1;
    }
    if (calls) *calls = used;
    return lo;
}

/// Rebuilds the unique representation consistent with the degree callback:
/// e_k = k + deg(k) - k' with k' the already-decoded intervals crossing k.
inline UniversalRep reconstruct_from_degrees(const std::function<uint64_t(uint64_t)>& deg_fn, uint64_t n) {
    if (n == 0) throw std::invalid_argument("reconstruct_from_degrees: n must be >= 1");
    UniversalRep rep;
    rep.n = n;
    rep.e.resize(n);
    std::vector<uint64_t> endings(n + 1, 0);
    uint64_t crossing = 0;  // |{j < k : e_j >= k}|
    for (uint64_t k = 1; k <= n; ++k) {
        uint64_t d = deg_fn(k);
        if (d < crossing)
            throw std::runtime_error("reconstruct_from_degrees: inconsistent degree at vertex " +
                                     std::to_string(k));
        uint64_t ek = k + (d - crossing);
        if (ek > n)
            throw std::runtime_error("reconstruct_from_degrees: inconsistent degree at vertex " +
                                     std::to_string(k));
        rep.e[k - 1] = ek;
        uint64_t die_here = endings[k];
        if (ek >= k + 1) ++crossing;
        crossing -= die_here;
        endings[ek]++;
    }
    return rep;
}

}  // namespace uig
