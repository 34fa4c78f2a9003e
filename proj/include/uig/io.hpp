#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "uig/adj.hpp"
#include "uig/cellprobe.hpp"
#include "uig/core.hpp"
#include "uig/deg.hpp"

namespace uig {

/// Malformed or mismatched input files. Internal invariant failures keep
/// throwing logic_error; callers map the two onto different exit codes.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void write_u64le(std::ostream& os, uint64_t v) {
    for (int b = 0; b < 8; ++b) os.put(static_cast<char>((v >> (8 * b)) & 0xff));
}

inline uint64_t read_u64le(std::istream& is) {
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) {
        int c = is.get();
        if (c == EOF) throw FormatError("unexpected end of file");
        v |= static_cast<uint64_t>(c & 0xff) << (8 * b);
    }
    return v;
}

inline void expect_magic(std::istream& is, const char* magic) {
    char got[4];
    if (!is.read(got, 4) || std::string(got, 4) != magic)
        throw FormatError(std::string("bad magic, expected ") + magic);
}

inline constexpr uint64_t kMaxLoadN = uint64_t{1} << 32;

inline uint64_t read_checked_n(std::istream& is) {
    uint64_t n = read_u64le(is);
    if (n == 0 || n > kMaxLoadN) throw FormatError("vertex count out of supported range");
    return n;
}

}  // namespace detail

// ---- UIR: universal interval representation files ----

inline void write_uir_text(const UniversalRep& rep, std::ostream& os) {
    os << "UIR 1\n" << rep.n << "\n";
    for (uint64_t i = 0; i < rep.n; ++i) {
        if (i) os << ' ';
        os << rep.e[i];
    }
    os << "\n";
}

inline void write_uir_binary(const UniversalRep& rep, std::ostream& os) {
    os.write("UIR1", 4);
    detail::write_u64le(os, rep.n);
    for (uint64_t e : rep.e) detail::write_u64le(os, e);
}

inline UniversalRep read_uir_text(std::istream& is) {
    std::string header;
    if (!std::getline(is, header) || header != "UIR 1") throw FormatError("not a UIR text file");
    UniversalRep rep;
    std::string line;
    if (!std::getline(is, line)) throw FormatError("missing vertex count");
    try {
        rep.n = std::stoull(line);
    } catch (...) {
        throw FormatError("bad vertex count line");
    }
    if (rep.n == 0 || rep.n > detail::kMaxLoadN) throw FormatError("vertex count out of supported range");
    if (!std::getline(is, line)) throw FormatError("missing endpoint line");
    std::istringstream ls(line);
    rep.e.reserve(rep.n);
    uint64_t v;
    while (ls >> v) rep.e.push_back(v);
    if (!ls.eof()) throw FormatError("trailing junk on endpoint line");
    if (auto viol = validate_universal(rep)) throw FormatError("invalid representation: " + viol->message());
    return rep;
}

inline UniversalRep read_uir_binary(std::istream& is) {
    detail::expect_magic(is, "UIR1");
    UniversalRep rep;
    rep.n = detail::read_checked_n(is);
    rep.e.resize(rep.n);
    for (uint64_t i = 0; i < rep.n; ++i) rep.e[i] = detail::read_u64le(is);
    if (auto viol = validate_universal(rep)) throw FormatError("invalid representation: " + viol->message());
    return rep;
}

/// Dispatches on the 4th byte: binary files start "UIR1", text files "UIR ".
inline UniversalRep read_uir_any(std::istream& is) {
    int c0 = is.peek();
    if (c0 == EOF) throw FormatError("empty input");
    char head[4];
    is.read(head, 4);
    if (!is) throw FormatError("truncated input");
    for (int i = 3; i >= 0; --i) is.putback(head[i]);
    if (std::string(head, 4) == "UIR1") return read_uir_binary(is);
    return read_uir_text(is);
}

// ---- interval lists: one interval per line, two decimal numbers ----

inline std::vector<std::pair<double, double>> read_interval_list(std::istream& is) {
    std::vector<std::pair<double, double>> out;
    std::string line;
    uint64_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        double a, b;
        if (!(ls >> a)) {
            std::string rest;
            ls.clear();
            if (ls >> rest) throw FormatError("line " + std::to_string(lineno) + ": expected two numbers");
            continue;  // blank line
        }
        if (!(ls >> b)) throw FormatError("line " + std::to_string(lineno) + ": expected two numbers");
        std::string rest;
        if (ls >> rest) throw FormatError("line " + std::to_string(lineno) + ": trailing junk");
        out.push_back({a, b});
    }
    return out;
}

// ---- spill code payloads: 8-byte group count, body bytes, tail bytes ----

inline void write_spill_blob(std::ostream& os, uint64_t n_groups, const BitBuf& bits, uint64_t base,
                             uint64_t body_bits, uint32_t tail_bits) {
    detail::write_u64le(os, n_groups);
    bits.write_bytes(os, base, body_bits);
    bits.write_bytes(os, base + body_bits, tail_bits);
}

/// Appends body+tail contiguously to `out` so in-memory reads stay local.
inline void read_spill_blob(std::istream& is, uint64_t expect_groups, uint64_t body_bits,
                            uint32_t tail_bits, BitBuf& out) {
    uint64_t n_groups = detail::read_u64le(is);
    if (n_groups != expect_groups) throw FormatError("group count disagrees with derived plan");
    out.append_bytes(is, body_bits);
    out.append_bytes(is, tail_bits);
}

// ---- structure files ----

inline void save_adj(const AdjCode& code, std::ostream& os) {
    os.write("ADJ1", 4);
    detail::write_u64le(os, code.n());
    if (code.plain()) {
        code.plain_bits().write_bytes(os, 0, code.plain_bits().bit_size());
        return;
    }
    uint64_t base = 0;
    for (uint64_t k = 1; k <= code.n_blocks(); ++k) {
        const auto& plan = code.block_plan(k);
        write_spill_blob(os, plan.links.size(), code.body(), base, plan.body_bits, plan.tail_bits);
        base += plan.total_bits();
    }
}

inline AdjCode load_adj(std::istream& is) {
    detail::expect_magic(is, "ADJ1");
    AdjCode code = AdjCode::shell(detail::read_checked_n(is));
    if (code.plain()) {
        code.mutable_plain().append_bytes(is, code.n() * code.plain_width());
        return code;
    }
    for (uint64_t k = 1; k <= code.n_blocks(); ++k) {
        const auto& plan = code.block_plan(k);
        read_spill_blob(is, plan.links.size(), plan.body_bits, plan.tail_bits, code.mutable_body());
    }
    code.rebuild_offsets();
    return code;
}

inline void save_deg(const DegCode& code, std::ostream& os) {
    os.write("DEG1", 4);
    detail::write_u64le(os, code.n());
    if (code.plain()) {
        code.plain_bits().write_bytes(os, 0, code.plain_bits().bit_size());
        return;
    }
    code.span_array().bits().write_bytes(os, 0, code.span_array().bit_size());
    code.bcount_array().bits().write_bytes(os, 0, code.bcount_array().bit_size());
    uint64_t base = 0;
    for (uint64_t k = 1; k <= code.n_blocks(); ++k) {
        const auto& plan = code.block_plan(k);
        write_spill_blob(os, plan.links.size(), code.body(), base, plan.body_bits, plan.tail_bits);
        base += plan.total_bits();
    }
}

inline DegCode load_deg(std::istream& is) {
    detail::expect_magic(is, "DEG1");
    DegCode code = DegCode::shell(detail::read_checked_n(is));
    if (code.plain()) {
        code.mutable_plain().append_bytes(is, code.n() * code.plain_width());
        return code;
    }
    uint32_t w = word_aligned_width(ceil_log2_u64(code.n() + 1));
    code.mutable_span().set_shape(code.n_blocks(), w);
    code.mutable_span().bits().append_bytes(is, code.n_blocks() * w);
    code.mutable_bcount().set_shape(code.n_blocks(), w);
    code.mutable_bcount().bits().append_bytes(is, code.n_blocks() * w);
    code.derive_plans();
    for (uint64_t k = 1; k <= code.n_blocks(); ++k) {
        const auto& plan = code.block_plan(k);
        read_spill_blob(is, plan.links.size(), plan.body_bits, plan.tail_bits, code.mutable_body());
    }
    code.rebuild_offsets();
    return code;
}

inline void save_cellprobe(const CellProbeCode& code, std::ostream& os) {
    os.write("CPA1", 4);
    detail::write_u64le(os, code.n());
    const auto& plan = code.data().plan;
    write_spill_blob(os, plan.links.size(), code.data().bits, 0, plan.body_bits, plan.tail_bits);
}

inline CellProbeCode load_cellprobe(std::istream& is) {
    detail::expect_magic(is, "CPA1");
    CellProbeCode code = CellProbeCode::shell(detail::read_checked_n(is));
    const auto& plan = code.data().plan;
    read_spill_blob(is, plan.links.size(), plan.body_bits, plan.tail_bits, code.mutable_bits());
    return code;
}

/// Reads the 4-byte magic and rewinds; for CLI kind dispatch.
inline std::string sniff_magic(std::istream& is) {
    char head[4];
    is.read(head, 4);
    if (!is) throw FormatError("truncated input");
    for (int i = 3; i >= 0; --i) is.putback(head[i]);
    return std::string(head, 4);
}

}  // namespace uig
