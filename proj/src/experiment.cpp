#include "gevrey/experiment.hpp"

#include "gevrey/quantization.hpp"
#include "suites.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

namespace gevrey {

using nlohmann::json;

double SuiteConfig::tolerance(const std::string& name, double fallback) const {
    const auto it = tolerances.find(name);
    return it == tolerances.end() ? fallback : it->second;
}

std::vector<double> SuiteConfig::sweep(const std::string& name, std::vector<double> fallback) const {
    const auto it = sweeps.find(name);
    return it == sweeps.end() ? fallback : it->second;
}

bool passes(double margin, double tolerance) { return margin >= -tolerance; }

std::vector<std::string> suite_names() {
    std::vector<std::string> out;
    for (const auto& def : detail::suite_registry()) out.push_back(def.name);
    return out;
}

std::string suite_description(const std::string& suite) { return detail::find_suite(suite).description; }

std::vector<std::string> suite_parameter_names(const std::string& suite) {
    return detail::find_suite(suite).parameter_names;
}

std::vector<std::string> suite_sweep_names(const std::string& suite) {
    return detail::find_suite(suite).sweep_names;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T>
T get_field(const json& j, const char* key, const char* what) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' must be " + what);
    }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        if (!allowed.count(key)) throw ConfigError("unknown field '" + key + "' in " + where);
    }
}

}  // namespace

SuiteConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown(j, {"schema_version", "suite", "grid", "sweeps", "samples", "seed", "tolerances", "output_dir", "threads"},
                   "config");
    SuiteConfig c;
    if (!j.contains("schema_version")) throw ConfigError("config field 'schema_version' is required");
    c.schema_version = get_field<int>(j, "schema_version", "an integer");
    if (j.contains("suite")) c.suite = get_field<std::string>(j, "suite", "a string");
    if (j.contains("grid")) {
        const auto& g = j.at("grid");
        if (!g.is_object()) throw ConfigError("config field 'grid' must be an object");
        reject_unknown(g, {"dim", "points", "length"}, "grid");
        if (g.contains("dim")) c.grid.dim = get_field<int>(g, "dim", "an integer");
        if (g.contains("points")) c.grid.points = get_field<std::size_t>(g, "points", "a positive integer");
        if (g.contains("length")) c.grid.length = get_field<double>(g, "length", "a number");
    }
    if (j.contains("sweeps")) {
        const auto& s = j.at("sweeps");
        if (!s.is_object()) throw ConfigError("config field 'sweeps' must be an object");
        for (const auto& [key, value] : s.items()) {
            if (!value.is_array()) throw ConfigError("sweep '" + key + "' must be a list of numbers");
            std::vector<double> vals;
            for (const auto& v : value) {
                if (!v.is_number()) throw ConfigError("sweep '" + key + "' must be a list of numbers");
                vals.push_back(v.get<double>());
            }
            c.sweeps[key] = std::move(vals);
        }
    }
    if (j.contains("samples")) c.samples = get_field<long>(j, "samples", "an integer");
    if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed", "a nonnegative 64-bit integer");
    if (j.contains("tolerances")) {
        const auto& t = j.at("tolerances");
        if (!t.is_object()) throw ConfigError("config field 'tolerances' must be an object");
        for (const auto& [key, value] : t.items()) {
            if (!value.is_number()) throw ConfigError("tolerance '" + key + "' must be a number");
            c.tolerances[key] = value.get<double>();
        }
    }
    if (j.contains("output_dir")) c.output_dir = get_field<std::string>(j, "output_dir", "a string");
    if (j.contains("threads")) c.threads = get_field<int>(j, "threads", "an integer");
    return c;
}

SuiteConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

namespace {

bool is_power_of_two(std::size_t n) { return n >= 4 && (n & (n - 1)) == 0; }

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

void check_sweep_domain(const std::string& name, double v, const SuiteConfig& c) {
    const std::string at = "sweep '" + name + "' value " + std::to_string(v);
    require(std::isfinite(v), at + " must be finite");
    if (name == "s") require(v > 1.0, at + " outside domain s > 1");
    else if (name == "R") require(v > 0.0, at + " outside domain R > 0");
    else if (name == "sigma") require(v > 0.0 && v < 1.0, at + " outside domain 0 < sigma < 1");
    else if (name == "tau" || name == "tau_prime") require(v >= 0.0, at + " outside domain tau >= 0");
    else if (name == "delta") require(v >= 0.0 && v < 1.0, at + " outside domain 0 <= delta < 1");
    else if (name == "rho") require(v > 0.0 && v <= 1.0, at + " outside domain 0 < rho <= 1");
    else if (name == "K") require(v > 1.0, at + " outside domain K > 1");
    else if (name == "h") require(v >= 0.0 && v < 1.0 && is_dyadic(v), at + " outside domain: dyadic h in [0, 1)");
    else if (name == "d") require(v == 1.0 || v == 2.0 || v == 3.0, at + " outside domain d in {1, 2, 3}");
    else if (name == "tau_ratio") require(v > 0.0 && v < 1.0, at + " outside domain 0 < tau_ratio < 1");
    else if (name == "width") require(v > 0.0 && v < c.grid.length / 2.0, at + " outside domain 0 < width < L/2");
    else if (name == "k") require(v == std::floor(v) && v >= 0.0 && v <= 3.0, at + " outside domain k in {0, 1, 2, 3}");
    else if (name == "gap") require(v > 0.0, at + " outside domain gap > 0");
    else if (name == "band") {
        require(v == std::floor(v) && v >= 1.0, at + " outside domain: band must be a positive integer");
        require(4.0 * v < static_cast<double>(c.grid.points),
                at + " outside domain: 4 * band must stay below the grid's N");
    }
}

}  // namespace

void validate_config(const SuiteConfig& c) {
    require(c.schema_version == kSchemaVersion,
            "schema_version " + std::to_string(c.schema_version) + " unsupported (expected " +
                std::to_string(kSchemaVersion) + ")");
    const auto& def = detail::find_suite(c.suite);
    require(c.grid.dim >= 1 && c.grid.dim <= 3, "grid.dim must be 1, 2 or 3");
    require(is_power_of_two(c.grid.points), "grid.points must be a power of two >= 4");
    require(std::isfinite(c.grid.length) && c.grid.length > 0.0, "grid.length must be positive and finite");
    require(c.samples >= 0, "samples must be nonnegative");
    require(c.threads >= 0, "threads must be nonnegative");
    for (const auto& [name, values] : c.sweeps) {
        if (std::find(def.sweep_names.begin(), def.sweep_names.end(), name) == def.sweep_names.end()) {
            throw ConfigError("sweep '" + name + "' is not used by suite '" + c.suite + "'");
        }
        for (double v : values) check_sweep_domain(name, v, c);
    }
    for (const auto& [name, value] : c.tolerances) {
        require(std::isfinite(value) && value >= 0.0, "tolerance '" + name + "' must be finite and nonnegative");
    }
    if (c.suite == "embedding" || c.suite == "symbol5" || c.suite == "action") {
        require(c.grid.dim == 1, "suite '" + c.suite + "' needs grid.dim = 1");
    }
    if (c.suite == "symbol5") {
        require(std::numbers::pi * static_cast<double>(c.grid.points) / c.grid.length >= 16.0,
                "suite 'symbol5' needs a lattice reaching |xi| >= 16 (raise grid.points or lower grid.length)");
    }
    if (c.suite == "conjugation") {
        // The refinement corpus is band-limited to |k| <= 16.
        require(c.grid.points >= 64, "suite 'conjugation' needs grid.points >= 64");
    }
}

// ---------------------------------------------------------------------------

std::vector<ResultRecord> run_suite(const SuiteConfig& config) {
    validate_config(config);
    const auto& def = detail::find_suite(config.suite);
    const auto cases = def.build(config);
    const double tol = config.tolerance("margin", def.margin_tolerance);

    std::vector<ResultRecord> records(cases.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cases.size()) return;
            const auto& sc = cases[i];
            auto& r = records[i];
            r.suite = config.suite;
            r.case_id = sc.case_id;
            r.parameters = sc.parameters;
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto out = sc.run();
                r.measured = out.measured;
                r.bound = out.bound;
                r.margin = out.margin;
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = cases.size();
                return;
            }
            r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            r.pass = passes(r.margin, tol);
        }
    };

    unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cases.size(), 1))));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(records.begin(), records.end(),
              [](const ResultRecord& a, const ResultRecord& b) { return a.case_id < b.case_id; });
    return records;
}

}  // namespace gevrey
