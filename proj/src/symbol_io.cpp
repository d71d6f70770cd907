#include "gevrey/symbol_classes.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

namespace gevrey {

namespace {

constexpr const char* kMagic = "# gevrey-symbol v1";

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};

double parse_double(const std::string& token, const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw std::runtime_error("read_symbol: bad number '" + token + "' in field " + field);
    }
    return v;
}

std::vector<std::string> expect_field(std::istream& in, const std::string& name) {
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key != name) throw std::runtime_error("read_symbol: expected field '" + name + "', found '" + key + "'");
        std::vector<std::string> rest;
        for (std::string t; ls >> t;) rest.push_back(t);
        return rest;
    }
    throw std::runtime_error("read_symbol: missing field '" + name + "'");
}

double scalar_field(std::istream& in, const std::string& name) {
    const auto v = expect_field(in, name);
    if (v.size() != 1) throw std::runtime_error("read_symbol: field '" + name + "' takes one value");
    return parse_double(v[0], name);
}

}  // namespace

void write_symbol(const std::string& path, const SampledSymbol& a) {
    std::unique_ptr<std::FILE, FileCloser> f(std::fopen(path.c_str(), "w"));
    if (!f) throw std::runtime_error("write_symbol: cannot open " + path);
    const auto& g = a.grid();
    const auto& p = a.params();
    std::fprintf(f.get(), "%s\n", kMagic);
    std::fprintf(f.get(), "d %d\n", g.dim());
    std::fprintf(f.get(), "N %zu\n", g.points_per_axis());
    std::fprintf(f.get(), "L %.17g\n", g.length());
    std::fprintf(f.get(), "m %.17g\n", p.m);
    std::fprintf(f.get(), "rho %.17g\n", p.rho);
    std::fprintf(f.get(), "delta %.17g\n", p.delta);
    std::fprintf(f.get(), "s %.17g\n", p.s);
    std::fprintf(f.get(), "R %.17g\n", p.R);
    std::fprintf(f.get(), "support_center");
    for (int i = 0; i < g.dim(); ++i) std::fprintf(f.get(), " %.17g", a.support().center[i]);
    std::fprintf(f.get(), "\nsupport_radius %.17g\n", a.support().radius);
    std::fprintf(f.get(), "values\n");
    for (const auto& v : a.values()) std::fprintf(f.get(), "%.17g %.17g\n", v.real(), v.imag());
    if (std::ferror(f.get())) throw std::runtime_error("write_symbol: write failed for " + path);
}

SampledSymbol read_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_symbol: cannot open " + path);
    std::string first;
    std::getline(in, first);
    if (first != kMagic) throw std::runtime_error("read_symbol: not a v1 symbol file: " + path);

    const int d = static_cast<int>(scalar_field(in, "d"));
    const auto n = static_cast<std::size_t>(scalar_field(in, "N"));
    const double length = scalar_field(in, "L");
    const auto grid = GridSpec::make(d, n, length);
    SymbolClassParams p;
    p.m = scalar_field(in, "m");
    p.rho = scalar_field(in, "rho");
    p.delta = scalar_field(in, "delta");
    p.s = scalar_field(in, "s");
    p.R = scalar_field(in, "R");
    const auto center_tokens = expect_field(in, "support_center");
    if (static_cast<int>(center_tokens.size()) != d) throw std::runtime_error("read_symbol: support_center needs d values");
    SupportBox box{SpatialPoint::zero(d)};
    for (int i = 0; i < d; ++i) box.center[i] = parse_double(center_tokens[static_cast<std::size_t>(i)], "support_center");
    box.radius = scalar_field(in, "support_radius");
    if (!expect_field(in, "values").empty()) throw std::runtime_error("read_symbol: 'values' takes no arguments");

    std::vector<complex> values(grid.size() * grid.size());
    std::string re, im;
    for (auto& v : values) {
        if (!(in >> re >> im)) throw std::runtime_error("read_symbol: truncated values block");
        v = complex(parse_double(re, "values"), parse_double(im, "values"));
    }
    return SampledSymbol(grid, std::move(values), p, box);
}

}  // namespace gevrey
