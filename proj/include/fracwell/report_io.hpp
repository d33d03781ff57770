#ifndef FRACWELL_REPORT_IO_HPP
#define FRACWELL_REPORT_IO_HPP

#include <iosfwd>
#include <string>

#include "fracwell/consistency.hpp"

namespace fracwell {

inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

// Fixed CSV schema; golden-file tested.
const std::string& csv_header();

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

enum class OutputFormat { Csv, Json };

std::string render_csv(const ConsistencyReport& report);
std::string render_json(const ConsistencyReport& report);

// Write-once atomic emission (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// Flat key = value configuration with '#' comments. Unknown keys are
// rejected. Returns the parsed spec plus output options.
struct ScanConfig {
    ScanSpec spec;
    OutputFormat format = OutputFormat::Csv;
    std::string output_path = "scan.csv";
};

class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

ScanConfig parse_scan_config(std::istream& in);
ScanConfig load_scan_config(const std::string& path); // throws ConfigError

std::string fnv1a_hex(const std::string& bytes);
std::string iso8601_utc_now();

} // namespace fracwell

#endif
