#pragma once

#include <string>
#include <vector>

#include "metaward/hardy.hpp"
#include "metaward/verify.hpp"
#include "metaward/ward.hpp"

namespace metaward {

// 17 significant digits (std::to_chars, general form): locale-free and
// enough to round-trip any double exactly.
std::string format_double(double v);

// RFC 4180 quoting when the cell contains a comma, quote, or newline.
std::string csv_cell(const std::string& s);

enum class ReportFormat { Text, Json, Csv };
ReportFormat report_format_from_string(const std::string& name);

std::string render(const AlgebraReport& r, ReportFormat fmt);
std::string render(const ContractionResult& r, ReportFormat fmt);
std::string render(const WardReport& r, ReportFormat fmt);
std::string render(const WCollapseReport& r, ReportFormat fmt);
std::string render(const SymmetryReport& r, ReportFormat fmt);
std::string render(const BoundednessReport& r, ReportFormat fmt);
std::string render(const CausalityReport& r, ReportFormat fmt);
std::string render(const ContractionLimitReport& r, ReportFormat fmt);
std::string render(const std::vector<SingularityRow>& rows, ReportFormat fmt);
std::string render(const SpectrumReport& r, ReportFormat fmt);
std::string render(const RoundtripReport& r, ReportFormat fmt);

// Numeric vs closed-form second moment side by side.
std::string render_moment(const QuadratureResult& q, double closed, ReportFormat fmt);

// Correlator values over a grid (status: ok | zero | domain_error).
std::string render_correlator_table(const CorrelatorSpec& spec, const GridSpec& grid,
                                    ReportFormat fmt);

} // namespace metaward
