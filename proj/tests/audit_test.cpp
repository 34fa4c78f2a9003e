#include "uig/audit.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace uig {
namespace {

TEST(LogFactorial, SmallValues) {
    EXPECT_DOUBLE_EQ(log_factorial_bits(0), 0.0);
    EXPECT_DOUBLE_EQ(log_factorial_bits(1), 0.0);
    EXPECT_NEAR(log_factorial_bits(3), std::log2(6.0), 1e-12);
    EXPECT_NEAR(log_factorial_bits(10), std::log2(3628800.0), 1e-9);
}

TEST(LogFactorial, AgreesWithStirling) {
    double n = 1048576.0;
    double stirling = n * std::log2(n) - n / std::log(2.0) + 0.5 * std::log2(2 * M_PI * n);
    double direct = log_factorial_bits(1 << 20);
    EXPECT_LT(std::abs(direct - stirling) / direct, 1e-4);
}

TEST(Report, AdjWithinBudget) {
    AuditReport r = redundancy_report(StructureKind::Adj, 1 << 10, 3, 2000);
    EXPECT_LE(r.redundancy, 8.0 * std::sqrt(1024.0) * 10.0);
    EXPECT_GE(r.redundancy, -1.0);
    EXPECT_EQ(r.meta_bits, 0u);
}

TEST(Report, CellProbeSeparatesMeta) {
    AuditReport r = redundancy_report(StructureKind::CellProbe, 1 << 10, 3, 2000);
    EXPECT_LE(r.redundancy, 4.0);  // data bits only; <= ceil(log2 n!) + 3
    EXPECT_GT(r.meta_bits, 0u);
    EXPECT_EQ(r.normalized_redundancy, r.redundancy);  // normalizer 1
}

TEST(Report, DegProbesWithinBudget) {
    AuditReport r = redundancy_report(StructureKind::Deg, 1 << 10, 3, 2000);
    EXPECT_LE(r.probe_max, 12u);
    EXPECT_GE(r.probe_min, 1u);
    EXPECT_GE(r.probe_mean, static_cast<double>(r.probe_min));
    EXPECT_LE(r.probe_mean, static_cast<double>(r.probe_max));
}

TEST(Report, DeterministicGivenArguments) {
    AuditReport a = redundancy_report(StructureKind::Adj, 500, 11, 500);
    AuditReport b = redundancy_report(StructureKind::Adj, 500, 11, 500);
    EXPECT_EQ(audit_csv_row(a), audit_csv_row(b));
}

TEST(Curve, TrivialRowAndErrors) {
    auto rows = redundancy_curve(StructureKind::CellProbe, {1}, 1, 10);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_EQ(rows[0].benchmark_bits, 0.0);
    EXPECT_EQ(rows[0].measured_bits, 0u);
    EXPECT_THROW(redundancy_curve(StructureKind::Adj, {}, 1), std::invalid_argument);
}

TEST(Curve, CsvShape) {
    EXPECT_EQ(audit_csv_header(),
              "n,kind,measured_bits,benchmark_bits,redundancy,normalized_redundancy,"
              "probe_min,probe_mean,probe_max,meta_bits");
    auto rows = redundancy_curve(StructureKind::Deg, {256, 512}, 2, 200);
    for (const auto& r : rows) {
        std::string row = audit_csv_row(r);
        EXPECT_EQ(std::count(row.begin(), row.end(), ','), 9);
        EXPECT_NE(row.find("deg"), std::string::npos);
    }
}

TEST(KindNames, RoundTrip) {
    for (auto k : {StructureKind::Adj, StructureKind::Deg, StructureKind::CellProbe})
        EXPECT_EQ(kind_from_name(kind_name(k)), k);
    EXPECT_THROW(kind_from_name("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace uig
