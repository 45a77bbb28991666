#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "dstbc/analysis.hpp"
#include "dstbc/harness.hpp"

namespace dstbc {

/// Numbers are written with 9 significant digits; wall-clock time is left out
/// of the CSV so that equal seeds give byte-identical files.
void write_ber_csv(std::ostream& os, std::span<const BerRecord> records);
void write_ber_json(std::ostream& os, std::span<const BerRecord> records);

void write_analytic_csv(std::ostream& os, std::span<const analysis::AnalyticPoint> points);
void write_analytic_json(std::ostream& os, std::span<const analysis::AnalyticPoint> points);

void write_compare_csv(std::ostream& os, std::span<const ComparePoint> points);
void write_compare_json(std::ostream& os, std::span<const ComparePoint> points);

/// Shortest round-trippable text is not needed; 9 significant digits.
[[nodiscard]] std::string format_number(double v);

}  // namespace dstbc
