#include <doctest.h>

#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/symbol_classes.hpp"
#include "gevrey/taylor.hpp"

#include <cmath>
#include <numbers>

using namespace gevrey;

TEST_CASE("overflow guard") {
    CHECK_NOTHROW(check_weight_overflow(100.0, 0.5, 69.0));
    try {
        check_weight_overflow(100.0, 0.5, 71.0);
        FAIL("expected WeightOverflow");
    } catch (const WeightOverflow& e) {
        CHECK(e.max_tau() == doctest::Approx(70.0));
    }
    CHECK_THROWS_AS(check_weight_overflow(100.0, 0.5, -71.0), WeightOverflow);
}

TEST_CASE("parameter domains") {
    GevreyParams p;
    CHECK_NOTHROW(p.validate());
    p.s = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {};
    p.R = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = {2.0, 1.0, 0.5, 1.9};
    CHECK(p.embedding_admissible());
    p.tau = 2.0;
    CHECK_FALSE(p.embedding_admissible());
    p = {2.0, 1.0, 0.4, 0.1};
    CHECK_FALSE(p.embedding_admissible());
}

TEST_CASE("multi-indices") {
    CHECK(multi_indices_of_order(1, 4).size() == 1);
    CHECK(multi_indices_of_order(2, 3).size() == 4);
    CHECK(multi_indices_of_order(3, 2).size() == 6);
    for (const auto& a : multi_indices_of_order(3, 5)) CHECK(order(a) == 5);
    CHECK(log_factorial(10) == doctest::Approx(std::log(3628800.0)));
}

TEST_CASE("unit bump derivatives against the closed form") {
    // ψ = e^{−g}, g = (1−z²)^{−p}: ψ' = −2pz(1−z²)^{−p−1}ψ.
    for (double s : {1.5, 2.0, 3.0}) {
        const double p = 1.0 / (s - 1.0);
        for (double z : {-0.7, -0.2, 0.0, 0.35, 0.8}) {
            const auto d = taylor::unit_bump_derivatives(s, z, 2);
            const double psi = std::exp(-std::pow(1 - z * z, -p));
            const double d1 = -2 * p * z * std::pow(1 - z * z, -p - 1) * psi;
            CHECK(d[0] == doctest::Approx(psi).epsilon(1e-13));
            CHECK(d[1] == doctest::Approx(d1).epsilon(1e-12));
            auto first = [&](double t) {
                return -2 * p * t * std::pow(1 - t * t, -p - 1) * std::exp(-std::pow(1 - t * t, -p));
            };
            const double h = 1e-5;
            CHECK(d[2] == doctest::Approx((first(z + h) - first(z - h)) / (2 * h)).epsilon(1e-6));
        }
    }
    const auto outside = taylor::unit_bump(2.0, 1.0, 3);
    for (double c : outside) CHECK(c == 0.0);
}

TEST_CASE("partial derivatives") {
    const auto g = GridSpec::make(1, 64, 2 * std::numbers::pi);
    const auto f = SampledFunction::sample(g, [](const SpatialPoint& x) { return complex(std::exp(std::cos(x[0])), 0.0); });
    auto exact = [](double x, int k) {
        const double e = std::exp(std::cos(x));
        if (k == 1) return -std::sin(x) * e;
        return (std::sin(x) * std::sin(x) - std::cos(x)) * e;
    };
    for (int k : {1, 2}) {
        const auto spec = partial_derivative(f, {k, 0, 0}, DerivativeMethod::Spectral);
        const auto fd = partial_derivative(f, {k, 0, 0}, DerivativeMethod::FiniteDifference);
        for (std::size_t j = 0; j < g.size(); j += 5) {
            const double want = exact(g.coordinate(j), k);
            CHECK(std::abs(spec[j] - want) < 1e-11);
            CHECK(std::abs(fd[j] - want) < 1e-4);
        }
    }
    CHECK_THROWS_AS(partial_derivative(f, {9, 0, 0}, DerivativeMethod::FiniteDifference), std::invalid_argument);
    CHECK_THROWS(partial_derivative(f, {1, 0, 0}, DerivativeMethod::Analytic));
}

TEST_CASE("weighted norms of a single mode") {
    const auto g = GridSpec::make(1, 32, 3.0);
    const double xi = 5 * g.frequency_step();
    const auto f = SampledFunction::sample(g, [xi](const SpatialPoint& x) { return std::polar(2.0, xi * x[0]); });
    const double b = bracket(xi);
    const double base = 2.0 * std::sqrt(3.0);
    CHECK(fourier_gevrey_norm(f, 0.5, 0.7) == doctest::Approx(base * std::exp(0.7 * std::sqrt(b))).epsilon(1e-13));
    CHECK(sobolev_norm(f, 2.0) == doctest::Approx(base * b * b).epsilon(1e-13));
    CHECK(gevrey_sobolev_norm(f, 1.0, 0.5, 0.7) ==
          doctest::Approx(base * b * std::exp(0.7 * std::sqrt(b))).epsilon(1e-13));
}

TEST_CASE("weighted norm stays finite when individual weights are huge") {
    const auto g = GridSpec::make(1, 1024, 2 * std::numbers::pi);
    const auto f = SampledFunction::sample(g, [](const SpatialPoint& x) { return complex(std::exp(-x[0] * x[0] * 20), 0); });
    const double n = fourier_gevrey_norm(f, 0.5, 30.0);  // e^{2·30·√512} alone would overflow
    CHECK(std::isfinite(n));
    CHECK(n > 0.0);
}

TEST_CASE("embedding constant: series and per-term bound") {
    // Per-term bound behind c_s, checked directly with lgamma for n up to 400.
    for (double s : {1.1, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        const double sigma = 1.0 / s;
        const double cs = embedding_prefactor(s);
        CHECK(cs == doctest::Approx(std::pow(1.09, 2 * s) * std::pow(2 * std::numbers::pi, (s - 1) / 2) *
                                    std::pow(1 + sigma, 1.5 * s)));
        for (int n = 1; n <= 400; ++n) {
            const double a = n / s;
            const double m = std::floor(a);
            const double theta = a - m;
            const double lhs = s * (std::lgamma(m + 1) + theta * std::log(m + 1)) - std::lgamma(n + 1.0) - n * std::log(sigma);
            const double rhs = std::log(cs) + 0.5 * (3 * s - 1) * std::log(static_cast<double>(n));
            CHECK(lhs <= rhs + 1e-12);
        }
    }
    // Independent partial sum in long double.
    const double s = 2.0, R = 1.5, tau = 0.8;
    const long double y = tau * std::pow(R, 1.0 / s) / s;
    long double sum = 1.0L;
    for (int n = 1; n < 20000; ++n) sum += std::pow(static_cast<long double>(n), (3 * s - 1) / 2) * std::pow(y, n);
    const double want = static_cast<double>(std::exp(static_cast<long double>(tau)) * embedding_prefactor(s) * sum);
    CHECK(embedding_constant(s, R, tau) == doctest::Approx(want).epsilon(1e-10));
    CHECK_THROWS_AS(embedding_constant(2.0, 1.0, 2.0), std::domain_error);
}

TEST_CASE("seminorm and Gevrey scale") {
    SeminormEstimate e;
    e.order_sups = {2.0, 2.0 * 3.0, 2.0 * 9.0 * std::pow(2.0, 1.5), 2.0 * 27.0 * std::pow(6.0, 1.5)};
    CHECK(fit_gevrey_scale(e, 1.5) == doctest::Approx(3.0));

    const auto g = GridSpec::make(1, 512, 6.0);
    const auto bump = gevrey_bump(2.0, SpatialPoint::zero(1), 1.5);
    const auto f = SampledFunction::sample(g, [&](const SpatialPoint& x) { return complex(bump(x), 0.0); });
    const auto analytic = spatial_gevrey_seminorm(bump.provider(), g, 2.0, 1.0, 4);
    const auto spectral = spatial_gevrey_seminorm(f, 2.0, 1.0, 4, DerivativeMethod::Spectral);
    for (int k = 0; k <= 4; ++k) {
        CHECK(spectral.order_sups[static_cast<std::size_t>(k)] ==
              doctest::Approx(analytic.order_sups[static_cast<std::size_t>(k)]).epsilon(0.02));
    }
}

TEST_CASE("embedding check on a bump") {
    const auto g = GridSpec::make(1, 256, 8.0);
    const auto bump = gevrey_bump(2.0, SpatialPoint::zero(1), 1.0);
    const auto f = SampledFunction::sample(g, [&](const SpatialPoint& x) { return complex(bump(x), 0.0); });
    const auto est = spatial_gevrey_seminorm(bump.provider(), g, 2.0, 3.0, 16);
    const auto rep = verify_embedding(f, 2.0, 3.0, 0.5, 2.0, est);
    CHECK(rep.margin > 0.0);
    CHECK(rep.rhs == doctest::Approx(std::sqrt(2.0) * rep.constant * rep.seminorm));
    const auto g2 = GridSpec::make(2, 16, 8.0);
    CHECK_THROWS_AS(verify_embedding(SampledFunction::zero(g2), 2.0, 1.0, 0.5, 1.0, est), std::invalid_argument);
}
