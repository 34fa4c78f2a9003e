#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "uig/adj.hpp"
#include "uig/cellprobe.hpp"
#include "uig/core.hpp"
#include "uig/deg.hpp"

namespace uig {

enum class StructureKind { Adj, Deg, CellProbe };

inline const char* kind_name(StructureKind k) {
    switch (k) {
        case StructureKind::Adj: return "adj";
        case StructureKind::Deg: return "deg";
        case StructureKind::CellProbe: return "cellprobe";
    }
    return "?";
}

inline StructureKind kind_from_name(const std::string& s) {
    if (s == "adj") return StructureKind::Adj;
    if (s == "deg") return StructureKind::Deg;
    if (s == "cellprobe") return StructureKind::CellProbe;
    throw std::invalid_argument("unknown structure kind: " + s);
}

/// log2(n!) via compensated summation; relative error well under 1e-6.
inline double log_factorial_bits(uint64_t n) {
    double sum = 0.0, comp = 0.0;
    for (uint64_t k = 2; k <= n; ++k) {
        double y = std::log2(static_cast<double>(k)) - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

struct AuditReport {
    uint64_t n = 0;
    StructureKind kind = StructureKind::Adj;
    uint64_t measured_bits = 0;
    double benchmark_bits = 0.0;
    double redundancy = 0.0;
    double normalized_redundancy = 0.0;
    uint64_t probe_min = 0;
    double probe_mean = 0.0;
    uint64_t probe_max = 0;
    uint64_t meta_bits = 0;
};

inline double redundancy_normalizer(StructureKind kind, uint64_t n) {
    double v = 1.0;
    double lg = std::log2(static_cast<double>(n));
    if (kind == StructureKind::Adj) v = std::sqrt(static_cast<double>(n)) * lg;
    if (kind == StructureKind::Deg) v = std::cbrt(static_cast<double>(n)) * std::cbrt(static_cast<double>(n)) * lg;
    return v > 1.0 ? v : 1.0;
}

/// Builds the requested structure on sample_uniform(n, seed) and measures
/// space against log2(n!) plus instrumented word probes over random queries.
inline AuditReport redundancy_report(StructureKind kind, uint64_t n, uint64_t seed,
                                     uint64_t query_samples = 10000) {
    UniversalRep rep = sample_uniform(n, seed);
    AuditReport r;
    r.n = n;
    r.kind = kind;
    r.benchmark_bits = log_factorial_bits(n);

    std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ULL ^ static_cast<uint64_t>(kind));
    auto pick_vertex = [&] { return 1 + detail::bounded_draw(eng, n); };

    uint64_t pmin = UINT64_MAX, pmax = 0, ptotal = 0;
    auto note = [&](uint64_t probes) {
        pmin = std::min(pmin, probes);
        pmax = std::max(pmax, probes);
        ptotal += probes;
    };

    if (kind == StructureKind::Adj) {
        AdjCode code = build_adj(rep);
        r.measured_bits = code.measured_bits();
        for (uint64_t q = 0; q < query_samples; ++q) {
            ProbeCounter pc;
            code.adj(pick_vertex(), pick_vertex(), &pc);
            note(pc.count());
        }
    } else if (kind == StructureKind::Deg) {
        DegCode code = build_deg(rep);
        r.measured_bits = code.measured_bits();
        for (uint64_t q = 0; q < query_samples; ++q) {
            ProbeCounter pc;
            code.deg(pick_vertex(), &pc);
            note(pc.count());
        }
    } else {
        CellProbeCode code = build_cellprobe(rep);
        r.measured_bits = code.data_bits();
        r.meta_bits = code.meta_bits();
        for (uint64_t q = 0; q < query_samples; ++q) {
            ProbeCounter pc;
            code.adj(pick_vertex(), pick_vertex(), &pc);
            note(pc.count());
        }
    }
    if (query_samples == 0) pmin = 0;
    r.probe_min = pmin;
    r.probe_max = pmax;
    r.probe_mean = query_samples ? static_cast<double>(ptotal) / static_cast<double>(query_samples) : 0.0;
    r.redundancy = static_cast<double>(r.measured_bits) - r.benchmark_bits;
    if (r.redundancy < -1.0) throw std::logic_error("audit: structure claims to beat the benchmark");
    r.normalized_redundancy = r.redundancy / redundancy_normalizer(kind, n);
    return r;
}

inline std::vector<AuditReport> redundancy_curve(StructureKind kind, const std::vector<uint64_t>& n_list,
                                                 uint64_t seed, uint64_t query_samples = 10000) {
    if (n_list.empty()) throw std::invalid_argument("redundancy_curve: empty n list");
    std::vector<AuditReport> rows;
    rows.reserve(n_list.size());
    for (uint64_t n : n_list) rows.push_back(redundancy_report(kind, n, seed, query_samples));
    return rows;
}

inline std::string audit_csv_header() {
    return "n,kind,measured_bits,benchmark_bits,redundancy,normalized_redundancy,"
           "probe_min,probe_mean,probe_max,meta_bits";
}

inline std::string audit_csv_row(const AuditReport& r) {
    std::ostringstream os;
    os.precision(6);
    os << std::fixed;
    os << r.n << ',' << kind_name(r.kind) << ',' << r.measured_bits << ',' << r.benchmark_bits << ','
       << r.redundancy << ',' << r.normalized_redundancy << ',' << r.probe_min << ',' << r.probe_mean
       << ',' << r.probe_max << ',' << r.meta_bits;
    return os.str();
}

}  // namespace uig
