#pragma once

#include "lptri/multi.hpp"
#include "lptri/outcome.hpp"
#include "lptri/pairwise.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace lptri::io {

/// On-disk pair document: weights, the two value arrays and p. Numbers
/// are serialized as decimal strings (locale-proof, shortest round-trip
/// form); plain JSON numbers are accepted on input.
struct PairFile {
    std::vector<double> weights;
    std::vector<double> f;
    std::vector<double> g;
    double p = 2.0;

    static PairFile from_pair(const PairInput& pair);
    PairInput to_pair() const;
};

/// Family document: weights, n value arrays and p.
struct FamilyFile {
    std::vector<double> weights;
    std::vector<std::vector<double>> functions;
    double p = 2.0;

    std::vector<WeightedFunction> to_functions() const;
};

PairFile read_pair_file(const std::filesystem::path& path);
void write_pair_file(const std::filesystem::path& path, const PairFile& pf);

FamilyFile read_family_file(const std::filesystem::path& path);
void write_family_file(const std::filesystem::path& path, const FamilyFile& ff);

/// One CSV line of a check report; the column set is a stable contract:
/// id,regime,lhs,rhs,margin,verdict,tier
struct ReportRow {
    std::string id;
    std::string regime;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    std::string verdict;
    std::string tier;
};

extern const char* const kReportHeader;

std::string to_csv(const std::vector<ReportRow>& rows);
void write_report_csv(const std::filesystem::path& path, const std::vector<ReportRow>& rows);

ReportRow make_row(std::string id, Regime regime, const CheckOutcome& outcome);

/// Shortest round-trip decimal form of a double (to_chars).
std::string format_double(double x);
/// Locale-independent parse; throws on trailing garbage.
double parse_double(const std::string& text);

/// Write-to-temp-then-rename; the target never holds a partial file.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace lptri::io
