#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gevrey {

inline constexpr int kSchemaVersion = 1;

/// Raised for configs that name an unknown suite or step outside a domain.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct GridConfig {
    int dim = 1;
    std::size_t points = 64;
    double length = 6.283185307179586;
};

struct SuiteConfig {
    int schema_version = kSchemaVersion;
    std::string suite;
    GridConfig grid;
    /// Parameter name → values. Which names a suite reads is listed by
    /// suite_sweep_names(); missing names fall back to the suite defaults.
    std::map<std::string, std::vector<double>> sweeps;
    long samples = 1000;
    std::uint64_t seed = 42;
    std::map<std::string, double> tolerances;
    std::string output_dir = "results";
    /// 0 picks the hardware concurrency.
    int threads = 0;

    double tolerance(const std::string& name, double fallback) const;
    /// Sweep values, or the fallback when the key is absent. A present but
    /// empty list stays empty.
    std::vector<double> sweep(const std::string& name, std::vector<double> fallback) const;
};

struct ResultRecord {
    std::string suite;
    std::string case_id;
    /// Values in the order given by suite_parameter_names(suite).
    std::vector<double> parameters;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    bool pass = false;
    double wall_ms = 0.0;
};

/// pass ⇔ margin ≥ −tolerance (NaN margins fail).
bool passes(double margin, double tolerance);

std::vector<std::string> suite_names();
std::string suite_description(const std::string& suite);
/// Column names between case_id and measured in the CSV.
std::vector<std::string> suite_parameter_names(const std::string& suite);
std::vector<std::string> suite_sweep_names(const std::string& suite);

SuiteConfig parse_config(const std::string& json_text);
SuiteConfig load_config(const std::filesystem::path& path);
/// Throws ConfigError naming the offending field and its domain.
void validate_config(const SuiteConfig& config);

/// Runs the named suite; records come back sorted by case_id.
std::vector<ResultRecord> run_suite(const SuiteConfig& config);

enum class ReportFormat { Csv, Json };
ReportFormat parse_format(const std::string& name);

/// Writes <dir>/<suite>.csv or .json plus <dir>/<suite>_summary.txt and
/// returns the paths. With allow_empty false an empty record set throws.
std::vector<std::filesystem::path> emit_report(const std::vector<ResultRecord>& records,
                                               const std::string& suite,
                                               const std::filesystem::path& dir,
                                               ReportFormat format, bool allow_empty = true);

std::string format_csv(const std::vector<ResultRecord>& records, const std::string& suite);
std::string format_json(const std::vector<ResultRecord>& records, const std::string& suite);
std::string format_summary(const std::vector<ResultRecord>& records, const std::string& suite);
/// Parses format_csv output back into records.
std::vector<ResultRecord> parse_csv(const std::string& text);

}  // namespace gevrey
