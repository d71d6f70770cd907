#include <doctest.h>

#include "gevrey/random.hpp"
#include "gevrey/sharp_inequalities.hpp"

#include <cmath>

using namespace gevrey;

namespace {

long double lbracket(const FrequencyPoint& p) {
    long double s = 1.0L;
    for (int i = 0; i < p.dim(); ++i) s += static_cast<long double>(p[i]) * p[i];
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("tri1 constant lies in (0,1) on a log grid of (K, sigma)") {
    for (int i = 0; i <= 40; ++i) {
        const double K = 1.0 + std::pow(10.0, -3.0 + 0.15 * i);  // 1.001 .. 1e3
        for (int j = 1; j <= 99; ++j) {
            const double sigma = j / 100.0;
            const double c = tri1_constant(K, sigma);
            CHECK(c > 0.0);
            CHECK(c < 1.0);
        }
    }
    CHECK_THROWS_AS(tri1_constant(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(tri1_constant(2.0, 1.5), std::invalid_argument);
}

TEST_CASE("competing constant can exceed one where the sharp one cannot") {
    const auto r = compare_remark_constants(1.1, 0.9);
    CHECK(r.competing_constant > 1.0);
    CHECK(r.paper_constant < 1.0);
    CHECK(r.paper_smaller);
    CHECK(r.competing_constant == doctest::Approx(0.9 / std::pow(0.1, 0.1)));
}

TEST_CASE("reports agree with a long double oracle") {
    CounterRng rng(99);
    for (int n = 0; n < 2000; ++n) {
        const int d = 1 + static_cast<int>(rng.below(3));
        const double sigma = rng.uniform(0.05, 0.95);
        const double K = rng.log_uniform(1.1, 20.0);
        const auto s1 = draw_tri1_sample(rng, d, sigma, K);
        REQUIRE(in_tri1_region(s1.xi, s1.eta, K));
        const auto r1 = check_tri1(s1);
        const long double lhs = std::fabs(std::pow(lbracket(s1.xi), (long double)sigma) - std::pow(lbracket(s1.eta), (long double)sigma));
        const long double rhs = tri1_constant(K, sigma) * std::pow(lbracket(s1.xi - s1.eta), (long double)sigma);
        CHECK(r1.lhs == doctest::Approx(static_cast<double>(lhs)).epsilon(1e-9));
        CHECK(r1.rhs == doctest::Approx(static_cast<double>(rhs)).epsilon(1e-12));
        CHECK(r1.holds);
        CHECK(lhs <= rhs * (1 + 1e-12L));

        const auto s2 = draw_tri2_sample(rng, d, sigma, K);
        REQUIRE(in_tri2_region(s2.xi, s2.eta, K));
        const auto r2 = check_tri2(s2);
        const long double l2 = std::pow(lbracket(s2.xi), (long double)sigma);
        const long double q2 = std::pow(lbracket(s2.eta), (long double)sigma) +
                               tri2_constant(K, sigma) * std::pow(lbracket(s2.xi - s2.eta), (long double)sigma);
        CHECK(r2.holds);
        CHECK(l2 <= q2 * (1 + 1e-12L));
    }
}

TEST_CASE("polynomial-Gevrey constant is the exact maximum") {
    for (double m : {0.5, 1.0, 2.0, 4.0}) {
        for (double sigma : {0.2, 0.5, 0.8}) {
            // max over x of x^m e^{−x^σ} at x* = (m/σ)^{1/σ}
            const double xs = std::pow(m / sigma, 1.0 / sigma);
            const double peak = std::pow(xs, m) * std::exp(-std::pow(xs, sigma));
            CHECK(poly_gevrey_constant(m, sigma) == doctest::Approx(peak).epsilon(1e-12));
            double best = 0.0;
            for (int i = 1; i <= 20000; ++i) {
                const double x = xs * i / 10000.0;
                best = std::max(best, std::pow(x, m) * std::exp(-std::pow(x, sigma)));
            }
            CHECK(best <= poly_gevrey_constant(m, sigma) * (1 + 1e-12));
        }
    }
    CHECK(poly_gevrey_constant(0.0, 0.5) == 1.0);
    const auto r = check_poly_gevrey(FrequencyPoint{3.0, 4.0}, 0.5, 0.3, 2.0);
    CHECK(r.holds);
}

TEST_CASE("sweeps report no violations") {
    CounterRng rng(CounterRng::stream_key(7, "unit", 0));
    for (auto kind : {InequalityKind::Tri1, InequalityKind::Tri2, InequalityKind::Poly}) {
        for (int d = 1; d <= 3; ++d) {
            const auto s = sweep_inequality(kind, 3000, d, 0.37, 1.5, rng);
            CHECK(s.samples == 3000);
            CHECK(s.violations == 0);
            CHECK(s.worst_relative_defect >= -kIneqTolerance);
        }
    }
}

TEST_CASE("variant with c-tilde in the first branch fails somewhere") {
    long failures = 0;
    CounterRng rng(5);
    for (double sigma : {0.3, 0.6, 0.9}) {
        for (double K : {1.5, 2.0, 10.0}) {
            for (int n = 0; n < 20000; ++n) {
                const auto s = draw_tri2_sample(rng, 1, sigma, K);
                if (!check_tri2_with(s, tri2_constant_as_stated(K, sigma)).holds) ++failures;
                CHECK(check_tri2(s).holds);
            }
        }
    }
    CHECK(failures > 0);
}

TEST_CASE("sigma = 1 admits no constant below one") {
    for (double c : {0.5, 0.9, 0.99}) {
        const auto ce = find_sigma_one_counterexample(c, 2.0);
        REQUIRE(ce.found);
        CHECK_FALSE(ce.report.holds);
        const double lhs = std::fabs(bracket(ce.xi) - bracket(ce.eta));
        CHECK(lhs > c * bracket(ce.xi - ce.eta));
    }
}
