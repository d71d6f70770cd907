#include <doctest.h>

#include "gevrey/quantization.hpp"
#include "gevrey/random.hpp"

#include <cmath>
#include <numbers>

using namespace gevrey;

namespace {

const GridSpec kGrid = GridSpec::make(1, 32, 2 * std::numbers::pi);

SampledFunction band_limited(const GridSpec& g, std::uint64_t seed) {
    return random_gevrey_input(g, 0.5, 0.0, static_cast<long>(g.points_per_axis() / 4), seed, 0);
}

// Kohn–Nirenberg on the torus from its textbook form Σ_k a(x, ξ_k) û_k e^{iξ_k x}.
std::vector<complex> kn_reference(const SampledSymbol& a, const SampledFunction& u) {
    const auto& g = a.grid();
    std::vector<complex> out(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
        for (std::size_t k = 0; k < g.size(); ++k) {
            out[j] += a.at(j, k) * u.spectrum()[k] * std::polar(1.0, g.frequency(k)[0] * g.coordinate(j));
        }
    }
    return out;
}

SampledSymbol x_dependent(const GridSpec& g) {
    SymbolClassParams p;
    p.m = 0.5;
    return SampledSymbol::from_function(g, p, SupportBox{SpatialPoint(0.0)}, [](const SpatialPoint& x, const FrequencyPoint& xi) {
        return complex(std::cos(x[0]) + 0.3 * std::sin(2 * x[0]), 0.2 * std::cos(3 * x[0])) *
               std::pow(bracket(xi), 0.5);
    });
}

}  // namespace

TEST_CASE("rational forms") {
    auto r = rational_form(0.25);
    REQUIRE(r);
    CHECK(r->first == 1);
    CHECK(r->second == 4);
    r = rational_form(1.0 / 3.0);
    REQUIRE(r);
    CHECK(r->second == 3);
    CHECK_FALSE(rational_form(1.0 / std::numbers::pi));
    CHECK(is_dyadic(0.0));
    CHECK(is_dyadic(0.375));
    CHECK_FALSE(is_dyadic(1.0 / 3.0));
}

TEST_CASE("h = 0 agrees with the textbook sum") {
    const auto a = x_dependent(kGrid);
    const auto u = band_limited(kGrid, 3);
    const auto ref = kn_reference(a, u);
    CHECK(relative_l2_error(quantize_direct(a, u, 0.0).values(), ref) < 1e-12);
    CHECK(relative_l2_error(quantize_fourier_h0(a, u).values(), ref) < 1e-12);
}

TEST_CASE("Fourier multipliers ignore h") {
    SymbolClassParams p;
    p.m = 1.0;
    const auto a = SampledSymbol::multiplier(kGrid, p, [](const FrequencyPoint& xi) { return complex(bracket(xi), xi[0]); });
    const auto u = band_limited(kGrid, 5);
    std::vector<complex> spec(u.spectrum().begin(), u.spectrum().end());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto xi = kGrid.frequency(k);
        spec[k] *= complex(bracket(xi), xi[0]);
    }
    const auto want = SampledFunction::from_spectrum(kGrid, spec);
    for (double h : {0.0, 0.25, 0.5, 0.75}) {
        CHECK(relative_l2_error(quantize(a, u, h).values(), want.values()) < 1e-12);
        CHECK(relative_l2_error(quantize_direct(a, u, h).values(), want.values()) < 1e-12);
    }
}

TEST_CASE("multiplication symbols act pointwise for every h") {
    SymbolClassParams p;
    auto b = [](double x) { return complex(1.0 + 0.5 * std::cos(x), 0.25 * std::sin(2 * x)); };
    const auto a = SampledSymbol::from_function(kGrid, p, SupportBox{SpatialPoint(0.0)},
                                                [&](const SpatialPoint& x, const FrequencyPoint&) { return b(x[0]); });
    const auto u = band_limited(kGrid, 8);
    std::vector<complex> want(kGrid.size());
    for (std::size_t j = 0; j < want.size(); ++j) want[j] = b(kGrid.coordinate(j)) * u.values()[j];
    for (double h : {0.0, 0.25, 0.5, 1.0 / 3.0}) {
        CHECK(relative_l2_error(quantize_direct(a, u, h).values(), want) < 1e-12);
        CHECK(relative_l2_error(quantize(a, u, h).values(), want) < 1e-12);
    }
}

TEST_CASE("Fourier side matches the direct quadrature; the wrong kernels do not") {
    const auto a = x_dependent(kGrid);
    const auto u = band_limited(kGrid, 11);
    for (double h : {0.125, 0.25, 0.5, 0.75}) {
        const auto direct = quantize_direct(a, u, h);
        CHECK(relative_l2_error(quantize_fourier_h(a, u, h).values(), direct.values()) < 1e-12);
        CHECK(relative_l2_error(quantize_fourier_h(a, u, h, KernelVariant::FlippedSign).values(), direct.values()) > 1e-2);
    }
    const auto d0 = quantize_direct(a, u, 0.0);
    CHECK(relative_l2_error(quantize_fourier_h0(a, u, KernelVariant::SwappedH0).values(), d0.values()) > 1e-2);
    CHECK(relative_l2_error(quantize_fourier_h0(a, u, KernelVariant::FlippedSign).values(), d0.values()) > 1e-2);
}

TEST_CASE("argument checks") {
    const auto a = x_dependent(kGrid);
    const auto u = band_limited(kGrid, 1);
    CHECK_THROWS_AS(quantize_fourier_h(a, u, 1.0 / 3.0), std::invalid_argument);
    CHECK_THROWS_AS(quantize_fourier_h(a, u, 0.5, KernelVariant::SwappedH0), std::invalid_argument);
    CHECK_THROWS_AS(quantize_direct(a, u, 1.0 / std::numbers::pi), std::invalid_argument);
    CHECK_THROWS_AS(quantize(a, u, 1.5), std::invalid_argument);
    const SampledSymbol bare(kGrid, std::vector<complex>(a.values().begin(), a.values().end()), a.params(), a.support());
    CHECK_THROWS_AS(quantize_direct(bare, u, 0.5), std::invalid_argument);
    CHECK_NOTHROW(quantize_direct(bare, u, 0.0));
    const auto other = SampledFunction::zero(GridSpec::make(1, 64, 2 * std::numbers::pi));
    CHECK_THROWS_AS(quantize_direct(a, other, 0.0), std::invalid_argument);
}

TEST_CASE("random inputs are keyed per wavenumber") {
    const auto g1 = GridSpec::make(1, 64, 2 * std::numbers::pi);
    const auto g2 = GridSpec::make(1, 256, 2 * std::numbers::pi);
    const auto a = random_gevrey_input(g1, 0.5, 0.3, 16, 42, 3);
    const auto b = random_gevrey_input(g2, 0.5, 0.3, 16, 42, 3);
    for (long k = -16; k <= 16; ++k) {
        CHECK(a.spectrum()[g1.index_of_wavenumber(k)] == b.spectrum()[g2.index_of_wavenumber(k)]);
    }
    CHECK(a.spectrum()[g1.index_of_wavenumber(17)] == complex(0.0, 0.0));
    CHECK_THROWS_AS(random_gevrey_input(g1, 0.5, 0.3, 32, 1, 0), std::invalid_argument);
}

TEST_CASE("action norm hypotheses") {
    const auto g = GridSpec::make(1, 64, 2 * std::numbers::pi);
    SymbolClassParams p;
    p.delta = 0.25;
    const auto a = canonical_symbol(p, g, 1.0);
    CHECK_THROWS_AS(estimate_action_norm(a, 0.375, 0.4, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(estimate_action_norm(a, 0.5, 0.4, 0.2), std::invalid_argument);
    ActionNormOptions o;
    o.n_samples = 4;
    o.band_limit = 8;
    const auto r = estimate_action_norm(a, 0.375, 0.4, 0.2, o);
    CHECK(r.sample_count == 4);
    CHECK(std::isfinite(r.empirical_norm));
    CHECK(r.empirical_norm > 0.0);
    CHECK(r.empirical_norm <= r.bound);
    o.enforce_hypotheses = false;
    CHECK_NOTHROW(estimate_action_norm(a, 0.375, 0.4, 0.5, o));
}
