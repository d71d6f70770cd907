#include <doctest.h>

#include "gevrey/symbol_classes.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

using namespace gevrey;

namespace {

double unit_bump(double s, double z) {
    if (std::abs(z) >= 1.0) return 0.0;
    return std::exp(-std::pow(1.0 - z * z, -1.0 / (s - 1.0)));
}

}  // namespace

TEST_CASE("class parameters") {
    SymbolClassParams p;
    CHECK_NOTHROW(p.validate());
    p.delta = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.rho = 0.5;
    p.delta = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.s = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("support box") {
    SupportBox b{SpatialPoint{0.5, 0.0}, 1.0};
    CHECK(b.contains(SpatialPoint{1.5, 0.0}));
    CHECK_FALSE(b.contains(SpatialPoint{1.6, 0.0}));
    CHECK(b.measure(1) == doctest::Approx(2.0));
    CHECK(b.measure(2) == doctest::Approx(std::numbers::pi));
    CHECK(b.measure(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
}

TEST_CASE("canonical symbol matches its closed form") {
    const auto g = GridSpec::make(1, 64, 2 * std::numbers::pi);
    SymbolClassParams p;
    p.m = 1.5;
    p.delta = 0.25;
    const SpatialPoint c(0.3);
    const auto a = canonical_symbol(p, g, 1.2, c);
    for (std::size_t k = 0; k < g.size(); k += 7) {
        const double b = bracket(g.frequency(k));
        for (std::size_t j = 0; j < g.size(); j += 3) {
            const double z = std::pow(b, 0.25) * (g.coordinate(j) - 0.3) / 1.2;
            CHECK(a.at(j, k).real() == doctest::Approx(std::pow(b, 1.5) * unit_bump(2.0, z)).epsilon(1e-13));
        }
    }
    CHECK(vanishes_outside_support(a));
    CHECK(a.has_evaluator());
    const auto col = a.evaluate_column(FrequencyPoint(2.5));
    const double b = bracket(2.5);
    CHECK(col[32].real() == doctest::Approx(std::pow(b, 1.5) * unit_bump(2.0, std::pow(b, 0.25) * (0.0 - 0.3) / 1.2)));
    CHECK_THROWS_AS(canonical_symbol(p, g, 3.0, SpatialPoint(0.2)), std::invalid_argument);
}

TEST_CASE("symbol derivatives against closed forms") {
    // Gevrey-2 bump: spectral x-derivatives converge like exp(−c√N), ~1e−3 at N = 128.
    const auto g = GridSpec::make(1, 256, 2 * std::numbers::pi);
    SymbolClassParams p;
    p.m = 1.5;
    const auto a = canonical_symbol(p, g, 1.5);
    const auto bump = gevrey_bump(2.0, SpatialPoint(0.0), 1.5);

    const auto dx = symbol_derivative(a, {1, 0, 0}, {0, 0, 0});
    const auto dxi = symbol_derivative(a, {0, 0, 0}, {1, 0, 0});
    const auto dxi2 = symbol_derivative(a, {0, 0, 0}, {2, 0, 0});
    for (std::size_t k = 0; k < g.size(); k += 9) {
        const double xi = g.frequency(k)[0];
        const double b = bracket(xi);
        for (std::size_t j = 0; j < g.size(); j += 5) {
            const auto d = bump.derivatives(g.coordinate(j), 1);
            CHECK(std::abs(dx[k * g.size() + j] - std::pow(b, 1.5) * d[1]) < 1e-4 * std::pow(b, 1.5));
            const double want1 = 1.5 * xi * std::pow(b, -0.5) * d[0];
            CHECK(std::abs(dxi[k * g.size() + j] - want1) < 1e-6 * std::pow(b, 0.5));
            const double want2 = (1.5 * std::pow(b, -0.5) - 0.75 * xi * xi * std::pow(b, -2.5)) * d[0];
            CHECK(std::abs(dxi2[k * g.size() + j] - want2) < 1e-4 * std::pow(b, -0.5));
        }
    }
}

TEST_CASE("lattice differences without an evaluator") {
    const auto g = GridSpec::make(1, 64, 2 * std::numbers::pi);
    SymbolClassParams p;
    p.m = 2.0;
    const auto with = SampledSymbol::multiplier(g, p, [](const FrequencyPoint& xi) { return complex(1.0 + xi.norm_squared(), 0.0); });
    const SampledSymbol without(g, std::vector<complex>(with.values().begin(), with.values().end()), p, with.support());
    CHECK_FALSE(without.has_evaluator());
    const auto d = symbol_derivative(without, {0, 0, 0}, {1, 0, 0});
    int nan_columns = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double xi = g.frequency(k)[0];
        if (std::isnan(d[k * g.size()].real())) {
            ++nan_columns;
            continue;
        }
        // A quadratic is differentiated exactly by central differences.
        CHECK(d[k * g.size() + 3].real() == doctest::Approx(2.0 * xi).epsilon(1e-9));
    }
    CHECK(nan_columns == 2);
}

TEST_CASE("seminorms and membership") {
    const auto g = GridSpec::make(1, 256, 2 * std::numbers::pi);
    SymbolClassParams p;
    p.m = 1.0;
    const auto mult = SampledSymbol::multiplier(g, p, [](const FrequencyPoint& xi) { return complex(bracket(xi), 0.0); });
    CHECK(estimate_seminorm(mult, {0, 0, 0}, {0, 0, 0}) == doctest::Approx(1.0));
    CHECK(estimate_seminorm(mult, {0, 0, 0}, {1, 0, 0}) <= 1.0 + 1e-6);
    CHECK(validate_class_membership(mult, 2, 2).bounded);

    SymbolClassParams wrong = p;
    wrong.m = 0.0;
    const auto misdeclared = SampledSymbol::multiplier(g, wrong, [](const FrequencyPoint& xi) { return complex(bracket(xi), 0.0); });
    const auto table = validate_class_membership(misdeclared, 1, 1);
    CHECK_FALSE(table.bounded);
    CHECK(table.max_growth_slope > 0.9);

    SymbolClassParams q;
    q.delta = 0.25;
    const auto a = canonical_symbol(q, g, 1.0);
    CHECK(fit_x_derivative_growth(a, {1, 0, 0}, 4.0) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(validate_class_membership(a, 3, 2).bounded);

    std::vector<double> quad(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) quad[k] = std::pow(bracket(g.frequency(k)), 2.0);
    CHECK(shell_growth_slope(g, quad) == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("text format round trip is bit exact") {
    const auto g = GridSpec::make(1, 16, 3.7);
    SymbolClassParams p;
    p.m = 0.75;
    p.delta = 0.2;
    p.R = 2.5;
    const auto a = canonical_symbol(p, g, 1.1, SpatialPoint(0.1)).scaled(complex(0.3, -1.0 / 3.0));
    const auto path = std::filesystem::temp_directory_path() / "gevrey_symbol_roundtrip.txt";
    write_symbol(path.string(), a);
    const auto b = read_symbol(path.string());
    std::filesystem::remove(path);
    CHECK(b.grid() == a.grid());
    CHECK(b.params().m == p.m);
    CHECK(b.params().delta == p.delta);
    CHECK(b.params().R == p.R);
    CHECK(b.support().radius == a.support().radius);
    REQUIRE(b.values().size() == a.values().size());
    for (std::size_t i = 0; i < a.values().size(); ++i) CHECK(b.values()[i] == a.values()[i]);
    CHECK_THROWS(read_symbol("/nonexistent/symbol.txt"));
}
