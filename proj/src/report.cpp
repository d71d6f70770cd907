#include "gevrey/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

namespace gevrey {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON has no NaN or infinity.
std::string json_num(double v) { return std::isfinite(v) ? num(v) : "null"; }

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

std::vector<std::string> header(const std::string& suite) {
    std::vector<std::string> h = {"suite", "case_id"};
    for (const auto& p : suite_parameter_names(suite)) h.push_back(p);
    for (const char* tail : {"measured", "bound", "margin", "pass", "wall_ms"}) h.push_back(tail);
    return h;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_num(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw std::runtime_error("parse_csv: bad number '" + s + "'");
    return v;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::Csv;
    if (name == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format '" + name + "' (csv | json)");
}

std::string format_csv(const std::vector<ResultRecord>& records, const std::string& suite) {
    const auto h = header(suite);
    std::string out;
    for (std::size_t i = 0; i < h.size(); ++i) out += (i ? "," : "") + h[i];
    out += '\n';
    const std::size_t np = suite_parameter_names(suite).size();
    for (const auto& r : records) {
        if (r.parameters.size() != np) throw std::logic_error("format_csv: parameter count mismatch in " + r.case_id);
        out += r.suite + "," + r.case_id;
        for (double p : r.parameters) out += "," + num(p);
        out += "," + num(r.measured) + "," + num(r.bound) + "," + num(r.margin) + "," + (r.pass ? "true" : "false") +
               "," + num(r.wall_ms) + "\n";
    }
    return out;
}

std::string format_json(const std::vector<ResultRecord>& records, const std::string& suite) {
    const auto names = suite_parameter_names(suite);
    std::string out = "[";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        if (r.parameters.size() != names.size()) throw std::logic_error("format_json: parameter count mismatch in " + r.case_id);
        out += k ? ",\n  {" : "\n  {";
        out += "\"suite\": " + json_string(r.suite) + ", \"case_id\": " + json_string(r.case_id);
        for (std::size_t i = 0; i < names.size(); ++i) out += ", " + json_string(names[i]) + ": " + json_num(r.parameters[i]);
        out += ", \"measured\": " + json_num(r.measured) + ", \"bound\": " + json_num(r.bound) +
               ", \"margin\": " + json_num(r.margin) + ", \"pass\": " + (r.pass ? "true" : "false") +
               ", \"wall_ms\": " + json_num(r.wall_ms) + "}";
    }
    out += records.empty() ? "]\n" : "\n]\n";
    return out;
}

std::string format_summary(const std::vector<ResultRecord>& records, const std::string& suite) {
    std::size_t failed = 0;
    double worst = std::numeric_limits<double>::infinity();
    std::string worst_id;
    for (const auto& r : records) {
        if (!r.pass) ++failed;
        if (!(r.margin >= worst)) {
            worst = r.margin;
            worst_id = r.case_id;
        }
    }
    std::ostringstream os;
    os << "suite: " << suite << "\n";
    os << "records: " << records.size() << "\n";
    os << "passed: " << records.size() - failed << "\n";
    os << "failed: " << failed << "\n";
    if (!records.empty()) os << "worst margin: " << num(worst) << " (" << worst_id << ")\n";
    for (const auto& r : records) {
        if (!r.pass) os << "FAIL " << r.case_id << " measured=" << num(r.measured) << " bound=" << num(r.bound)
                        << " margin=" << num(r.margin) << "\n";
    }
    os << "verdict: " << (failed == 0 ? "PASS" : "FAIL") << "\n";
    return os.str();
}

std::vector<ResultRecord> parse_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("parse_csv: empty input");
    const auto head = split(line, ',');
    if (head.size() < 7 || head[0] != "suite" || head[1] != "case_id") throw std::runtime_error("parse_csv: bad header");
    const std::size_t np = head.size() - 7;
    std::vector<ResultRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (f.size() != head.size()) throw std::runtime_error("parse_csv: row has wrong field count");
        ResultRecord r;
        r.suite = f[0];
        r.case_id = f[1];
        for (std::size_t i = 0; i < np; ++i) r.parameters.push_back(parse_num(f[2 + i]));
        r.measured = parse_num(f[2 + np]);
        r.bound = parse_num(f[3 + np]);
        r.margin = parse_num(f[4 + np]);
        if (f[5 + np] != "true" && f[5 + np] != "false") throw std::runtime_error("parse_csv: bad pass field");
        r.pass = f[5 + np] == "true";
        r.wall_ms = parse_num(f[6 + np]);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::filesystem::path> emit_report(const std::vector<ResultRecord>& records,
                                               const std::string& suite,
                                               const std::filesystem::path& dir, ReportFormat format,
                                               bool allow_empty) {
    if (records.empty() && !allow_empty) throw std::invalid_argument("emit_report: no records");
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw std::runtime_error("emit_report: output directory " + dir.string() + " is not writable");
    }
    const auto data = dir / (suite + (format == ReportFormat::Csv ? ".csv" : ".json"));
    const auto summary = dir / (suite + "_summary.txt");
    write_file(data, format == ReportFormat::Csv ? format_csv(records, suite) : format_json(records, suite));
    write_file(summary, format_summary(records, suite));
    return {data, summary};
}

}  // namespace gevrey
