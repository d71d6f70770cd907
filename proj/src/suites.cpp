#include "suites.hpp"

#include "gevrey/conjugation.hpp"
#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/quantization.hpp"
#include "gevrey/random.hpp"
#include "gevrey/sharp_inequalities.hpp"
#include "gevrey/symbol_classes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace gevrey::detail {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string case_id(std::size_t index, const std::string& label) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%05zu_", index);
    return buf + label;
}

std::string fmt(const char* spec, double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

GridSpec config_grid(const SuiteConfig& c) {
    return GridSpec::make(c.grid.dim, c.grid.points, c.grid.length);
}

GridSpec scaled_grid(const SuiteConfig& c, std::size_t factor) {
    return GridSpec::make(c.grid.dim, c.grid.points * factor, c.grid.length);
}

double relative_margin(double measured, double bound) {
    if (!std::isfinite(measured) || !std::isfinite(bound) || !(bound > 0.0)) return kNaN;
    return (bound - measured) / bound;
}

// --- inequalities -------------------------------------------------------

/// Region label under R1 > R2 > R3 precedence, from the raw predicates.
int oracle_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K) {
    const double d = (xi - eta).norm();
    const double e = eta.norm();
    const bool r1 = K * d <= e;
    const bool r2 = K * e <= d;
    int labels = 0;
    int label = 0;
    if (r1) { ++labels; label = 1; }
    if (r2 && !r1) { ++labels; label = 2; }
    if (!r1 && !r2) { ++labels; label = 3; }
    return labels == 1 ? label : -labels;
}

CaseOutcome region_partition(long n, int d, std::uint64_t key) {
    CounterRng rng(key);
    long bad = 0;
    for (long i = 0; i < n; ++i) {
        const double K = rng.log_uniform(1.01, 100.0);
        FrequencyPoint eta = rng.log_uniform(1e-3, 1e5) * rng.direction(d);
        FrequencyPoint xi = FrequencyPoint::zero(d);
        switch (i % 5) {
            case 0: xi = eta + (eta.norm() / K) * rng.direction(d); break;  // R1/R3 edge
            case 1: xi = eta + (K * eta.norm()) * rng.direction(d); break;  // R2/R3 edge
            case 2: xi = eta; break;
            case 3: eta = FrequencyPoint::zero(d); xi = rng.log_uniform(1e-3, 1e5) * rng.direction(d); break;
            default: xi = rng.log_uniform(1e-3, 1e5) * rng.direction(d); break;
        }
        const int want = oracle_region(xi, eta, K);
        const Region got = classify_region(xi, eta, K);
        if (want <= 0 || static_cast<int>(got) + 1 != want) ++bad;
    }
    return {static_cast<double>(bad), 0.0, -static_cast<double>(bad)};
}

std::vector<SuiteCase> build_inequalities(const SuiteConfig& c) {
    const auto dims = c.sweep("d", {1, 2, 3});
    const auto sigmas = c.sweep("sigma", {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
    const auto Ks = c.sweep("K", {1.5, 2.0, 10.0});
    struct Spec {
        int kind;
        double d, sigma, K;
    };
    std::vector<Spec> specs;
    for (double d : dims) {
        for (double sigma : sigmas) {
            for (double K : Ks) {
                specs.push_back({1, d, sigma, K});
                specs.push_back({2, d, sigma, K});
            }
            specs.push_back({3, d, sigma, 0.0});
        }
        if (!sigmas.empty()) specs.push_back({4, d, 0.0, 0.0});
    }
    std::vector<SuiteCase> cases;
    if (specs.empty()) return cases;
    const long per_case = (c.samples + static_cast<long>(specs.size()) - 1) / static_cast<long>(specs.size());
    static const char* names[] = {"", "tri1", "tri2", "poly", "regions"};
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto sp = specs[i];
        const auto key = CounterRng::stream_key(c.seed, "inequalities", i);
        std::string label = std::string(names[sp.kind]) + "_d" + fmt("%g", sp.d);
        if (sp.kind <= 3) label += "_s" + fmt("%g", sp.sigma);
        if (sp.kind <= 2) label += "_K" + fmt("%g", sp.K);
        cases.push_back({case_id(i, label),
                         {static_cast<double>(sp.kind), sp.d, sp.sigma, sp.K, static_cast<double>(per_case)},
                         [sp, key, per_case]() -> CaseOutcome {
                             const int d = static_cast<int>(sp.d);
                             if (sp.kind == 4) return region_partition(per_case, d, key);
                             CounterRng rng(key);
                             const auto kind = sp.kind == 1   ? InequalityKind::Tri1
                                               : sp.kind == 2 ? InequalityKind::Tri2
                                                              : InequalityKind::Poly;
                             const double K = sp.kind == 3 ? 2.0 : sp.K;
                             const auto s = sweep_inequality(kind, per_case, d, sp.sigma, K, rng);
                             return {static_cast<double>(s.violations), 0.0, s.worst_relative_defect};
                         }});
    }
    return cases;
}

// --- embedding ----------------------------------------------------------

std::vector<SuiteCase> build_embedding(const SuiteConfig& c) {
    std::vector<SuiteCase> cases;
    std::size_t index = 0;
    const auto grid = config_grid(c);
    for (double s : c.sweep("s", {1.5, 2.0, 3.0})) {
        for (double width : c.sweep("width", {1.0})) {
            for (double ratio : c.sweep("tau_ratio", {0.25, 0.5, 0.75})) {
                const std::string label = "s" + fmt("%g", s) + "_w" + fmt("%g", width) + "_r" + fmt("%g", ratio);
                cases.push_back({case_id(index++, label), {s, ratio, width},
                                 [grid, s, width, ratio]() -> CaseOutcome {
                                     const auto bump = gevrey_bump(s, SpatialPoint::zero(1), width);
                                     const auto f = SampledFunction::sample(grid, [&](const SpatialPoint& x) {
                                         return complex(bump(x), 0.0);
                                     });
                                     const auto probe = spatial_gevrey_seminorm(bump.provider(), grid, s, 1.0, 20);
                                     const double R = fit_gevrey_scale(probe, s);
                                     const auto est = spatial_gevrey_seminorm(bump.provider(), grid, s, R, 20);
                                     const double tau = ratio * s * std::pow(R, -1.0 / s);
                                     const auto rep = verify_embedding(f, s, R, tau, 2.0 * width, est);
                                     return {rep.lhs, rep.rhs, relative_margin(rep.lhs, rep.rhs)};
                                 }});
            }
        }
    }
    return cases;
}

// --- quantization -------------------------------------------------------

SampledSymbol random_canonical(const GridSpec& grid, double m, double delta, CounterRng& rng) {
    SymbolClassParams p;
    p.m = m;
    p.delta = delta;
    const double L = grid.length();
    SpatialPoint center = SpatialPoint::zero(grid.dim());
    for (int a = 0; a < grid.dim(); ++a) center[a] = rng.uniform(-L / 8.0, L / 8.0);
    const double radius = rng.uniform(L / 8.0, L / 4.0);
    return canonical_symbol(p, grid, radius, center);
}

std::vector<SuiteCase> build_quantization(const SuiteConfig& c) {
    std::vector<SuiteCase> cases;
    const auto grid = config_grid(c);
    const double oracle = c.tolerance("oracle", 1e-8);
    std::size_t index = 0;
    for (double h : c.sweep("h", {0.0, 0.25, 0.5})) {
        for (double m : c.sweep("m", {0.0})) {
            for (double delta : c.sweep("delta", {0.25})) {
                for (long k = 0; k < c.samples; ++k) {
                    const auto key = CounterRng::stream_key(c.seed, "quantization", index);
                    const std::string label = "h" + fmt("%g", h) + "_m" + fmt("%g", m) + "_d" + fmt("%g", delta) +
                                              "_" + std::to_string(k);
                    cases.push_back({case_id(index++, label), {h, m, delta, static_cast<double>(k)},
                                     [grid, h, m, delta, key, oracle]() -> CaseOutcome {
                                         CounterRng rng(key);
                                         const auto a = random_canonical(grid, m, delta, rng);
                                         const long band = static_cast<long>(grid.points_per_axis() / 4);
                                         const auto u = random_gevrey_input(grid, 0.5, 0.0, band, rng.next(), 0);
                                         const auto fourier = h == 0.0 ? quantize_fourier_h0(a, u)
                                                                       : quantize_fourier_h(a, u, h);
                                         const auto direct = quantize_direct(a, u, h);
                                         const double err = relative_l2_error(fourier.values(), direct.values());
                                         return {err, oracle, oracle - err};
                                     }});
                }
            }
        }
    }
    return cases;
}

// --- conjugation --------------------------------------------------------

double prop31_constant(const GridSpec& grid, double sigma, double tau, double m, std::uint64_t seed,
                       int corpus) {
    ConjugationParams cp{sigma, tau, m};
    double C = 0.0;
    for (int i = 0; i < corpus; ++i) {
        const auto F = random_gevrey_input(grid, sigma, 2.0 * tau, 16, seed, 2 * i);
        const auto v = random_gevrey_input(grid, sigma, 0.0, 16, seed, 2 * i + 1);
        C = std::max(C, prop31_ratio(F, v, cp));
    }
    return C;
}

std::vector<SuiteCase> build_conjugation(const SuiteConfig& c) {
    std::vector<SuiteCase> cases;
    const auto grid = config_grid(c);
    const double identity_tol = c.tolerance("identity", 1e-6);
    const double stability_tol = c.tolerance("stability", 0.2);
    const auto sigmas = c.sweep("sigma", {0.5});
    const auto taus = c.sweep("tau", {0.3});
    const double N = static_cast<double>(grid.points_per_axis());
    std::size_t index = 0;

    for (double sigma : sigmas) {
        for (double tau : taus) {
            for (long k = 0; k < c.samples; ++k) {
                const auto key = CounterRng::stream_key(c.seed, "conjugation", index);
                const std::string label = "identity_s" + fmt("%g", sigma) + "_t" + fmt("%g", tau) + "_" + std::to_string(k);
                cases.push_back({case_id(index++, label), {1, sigma, tau, kNaN, kNaN, kNaN, kNaN, N},
                                 [grid, sigma, tau, key, identity_tol]() -> CaseOutcome {
                                     CounterRng rng(key);
                                     const auto a = random_canonical(grid, 0.0, 0.0, rng);
                                     const long band = static_cast<long>(grid.points_per_axis() / 4);
                                     const auto u = random_gevrey_input(grid, sigma, tau, band, rng.next(), 0);
                                     const auto at = conjugated_symbol(a, sigma, tau, ConjugationMode::Torus);
                                     const auto lhs = quantize_direct(at, u, 0.0);
                                     const auto rhs = conjugated_operator_apply(a, u, sigma, tau);
                                     const double err = relative_l2_error(lhs.values(), rhs.values());
                                     return {err, identity_tol, identity_tol - err};
                                 }});
            }
        }
    }

    for (double sigma : sigmas) {
        for (double tau : taus) {
            for (double tau_prime : c.sweep("tau_prime", {0.1})) {
                for (double delta : c.sweep("delta", {0.0})) {
                    for (double s : c.sweep("s", {2.0})) {
                        if (!(tau_prime < tau) || sigma > (1.0 - delta) / s) continue;
                        const double K = choose_K(tau, tau_prime, sigma, delta, s).K;
                        const auto key = CounterRng::stream_key(c.seed, "conjugation", index);
                        const long n = c.samples;
                        const int d = grid.dim();
                        const std::string label = "weight_s" + fmt("%g", sigma) + "_t" + fmt("%g", tau) + "_tp" +
                                                  fmt("%g", tau_prime) + "_d" + fmt("%g", delta) + "_gs" + fmt("%g", s);
                        cases.push_back({case_id(index++, label), {2, sigma, tau, tau_prime, delta, s, K, N},
                                         [=]() -> CaseOutcome {
                                             CounterRng rng(key);
                                             const WeightParams wp{sigma, tau, tau_prime, delta, s};
                                             double worst = -kInf;
                                             for (long i = 0; i < std::max(n, 1L); ++i) {
                                                 const auto eta = rng.log_uniform(1e-2, 1e6) * rng.direction(d);
                                                 const auto xi = eta + rng.log_uniform(1e-2, 1e6) * rng.direction(d);
                                                 const auto r = weight_W(xi, eta, wp, K);
                                                 worst = std::max(worst, (r.log_value - r.log_bound) /
                                                                             std::max(1.0, std::abs(r.log_bound)));
                                             }
                                             return {worst, 0.0, -worst};
                                         }});
                    }
                }
            }
        }
    }

    for (double sigma : sigmas) {
        for (double tau : taus) {
            for (double m : c.sweep("m", {1.0})) {
                const std::string label = "prop31_s" + fmt("%g", sigma) + "_t" + fmt("%g", tau) + "_m" + fmt("%g", m);
                const auto seed = CounterRng::stream_key(c.seed, "conjugation", index);
                cases.push_back({case_id(index++, label), {3, sigma, tau, kNaN, kNaN, kNaN, kNaN, N},
                                 [=]() -> CaseOutcome {
                                     const double base = prop31_constant(scaled_grid(c, 1), sigma, tau, m, seed, 20);
                                     double drift = 0.0;
                                     for (std::size_t f : {2u, 4u}) {
                                         const double Cf = prop31_constant(scaled_grid(c, f), sigma, tau, m, seed, 20);
                                         drift = std::max(drift, std::abs(Cf - base) / base);
                                     }
                                     return {drift, stability_tol, stability_tol - drift};
                                 }});
            }
        }
    }
    return cases;
}

// --- action -------------------------------------------------------------

std::vector<SuiteCase> build_action(const SuiteConfig& c) {
    std::vector<SuiteCase> cases;
    const double drift_tol = c.tolerance("drift", 0.2);
    const double growth_min = c.tolerance("growth", 10.0);
    const double N = static_cast<double>(c.grid.points);
    const int n_samples = static_cast<int>(std::clamp(c.samples, 1L, 1000L));
    std::size_t index = 0;
    for (double delta : c.sweep("delta", {0.25})) {
        for (double s : c.sweep("s", {2.0})) {
            const double sigma = (1.0 - delta) / s;
            for (double tau : c.sweep("tau", {0.4})) {
                for (double band : c.sweep("band", {16})) {
                    const std::string base = "d" + fmt("%g", delta) + "_s" + fmt("%g", s) + "_t" + fmt("%g", tau) +
                                             "_b" + fmt("%g", band);
                    auto norm_at = [=](std::size_t factor, double tau_prime, long b, bool enforce) {
                        const auto grid = scaled_grid(c, factor);
                        SymbolClassParams p;
                        p.delta = delta;
                        p.s = s;
                        const auto a = canonical_symbol(p, grid, 1.0);
                        ActionNormOptions o;
                        o.n_samples = n_samples;
                        o.band_limit = b;
                        o.seed = c.seed;
                        o.enforce_hypotheses = enforce;
                        return estimate_action_norm(a, sigma, tau, tau_prime, o);
                    };
                    const long b = static_cast<long>(band);
                    cases.push_back({case_id(index++, "norm_" + base), {1, delta, s, sigma, tau, tau / 2, band, N},
                                     [=]() -> CaseOutcome {
                                         const auto r = norm_at(1, tau / 2, b, true);
                                         if (!std::isfinite(r.bound)) {
                                             return {r.empirical_norm, r.bound, std::isfinite(r.empirical_norm) ? 0.0 : kNaN};
                                         }
                                         return {r.empirical_norm, r.bound, relative_margin(r.empirical_norm, r.bound)};
                                     }});
                    cases.push_back({case_id(index++, "drift_" + base), {2, delta, s, sigma, tau, tau / 2, band, N},
                                     [=]() -> CaseOutcome {
                                         const double e1 = norm_at(1, tau / 2, b, true).empirical_norm;
                                         const double e2 = norm_at(2, tau / 2, b, true).empirical_norm;
                                         const double drift = std::abs(e2 - e1) / e1;
                                         return {drift, drift_tol, std::isfinite(drift) ? drift_tol - drift : kNaN};
                                     }});
                    for (double tp : c.sweep("tau_prime", {2.0})) {
                        if (!(tp > tau)) continue;
                        cases.push_back({case_id(index++, "diagnostic_" + base + "_tp" + fmt("%g", tp)),
                                         {3, delta, s, sigma, tau, tp, band, 2 * N},
                                         [=]() -> CaseOutcome {
                                             const double lo = norm_at(2, tp, b, false).empirical_norm;
                                             const double hi = norm_at(2, tp, 4 * b, false).empirical_norm;
                                             const double growth = hi / lo;
                                             return {growth, growth_min, (growth - growth_min) / growth_min};
                                         }});
                    }
                }
            }
        }
    }
    return cases;
}

// --- symbol5 ------------------------------------------------------------

std::vector<SuiteCase> build_symbol5(const SuiteConfig& c) {
    std::vector<SuiteCase> cases;
    const auto grid = config_grid(c);
    const double slack = c.tolerance("order_slack", 0.3);
    const double membership = c.tolerance("growth_slope", kGrowthSlopeThreshold);
    const auto widths = c.sweep("width", {2.0});
    const auto sigmas = c.sweep("sigma", {0.5});
    const auto taus = c.sweep("tau", {0.3});
    std::size_t index = 0;
    auto symbol = [grid](double s, double width) {
        SymbolClassParams p;
        p.s = s;
        return canonical_symbol(p, grid, width);
    };
    for (double width : widths) {
        for (double sigma : sigmas) {
            for (double tau : taus) {
                for (double k : c.sweep("k", {0, 1, 2})) {
                    const std::string label = "expansion_w" + fmt("%g", width) + "_s" + fmt("%g", sigma) + "_t" +
                                              fmt("%g", tau) + "_k" + fmt("%g", k);
                    cases.push_back({case_id(index++, label), {1, k, kNaN, sigma, tau, width, kNaN},
                                     [=]() -> CaseOutcome {
                                         const auto r = expansion_remainder(symbol(2.0, width), static_cast<int>(k), sigma, tau);
                                         const double bound = r.predicted_order + slack;
                                         return {r.fitted_order, bound, bound - r.fitted_order};
                                     }});
                }
                const std::string label = "membership_w" + fmt("%g", width) + "_s" + fmt("%g", sigma) + "_t" + fmt("%g", tau);
                cases.push_back({case_id(index++, label), {3, kNaN, kNaN, sigma, tau, width, kNaN},
                                 [=]() -> CaseOutcome {
                                     const auto at = conjugated_symbol(symbol(2.0, width), sigma, tau);
                                     const auto table = validate_class_membership(at, 2, 2);
                                     return {table.max_growth_slope, membership, membership - table.max_growth_slope};
                                 }});
            }
        }
    }
    const auto gaps = c.sweep("gap", {0.4, 0.2, 0.1, 0.05});
    if (gaps.empty()) return cases;
    for (double s : c.sweep("s", {2.0})) {
        for (double width : widths) {
            for (double tau : taus) {
                const std::pair<int, int> orders[] = {{0, 0}, {1, 0}, {0, 1}};
                for (const auto& [na, nb] : orders) {
                    const std::string label = "lemma_gs" + fmt("%g", s) + "_w" + fmt("%g", width) + "_t" + fmt("%g", tau) +
                                              "_a" + std::to_string(na) + "_b" + std::to_string(nb);
                    const double gap_min = *std::min_element(gaps.begin(), gaps.end());
                    cases.push_back({case_id(index++, label), {2, double(na), double(nb), 1.0 / s, tau, width, gap_min},
                                     [=]() -> CaseOutcome {
                                         const auto r = lemma51_bound_check(symbol(s, width), MultiIndex{na, 0, 0},
                                                                            MultiIndex{nb, 0, 0}, tau, gaps);
                                         const bool ok = r.envelope_holds && std::isfinite(r.c_fit) && r.c_fit > 0.0;
                                         return {r.max_ratio, r.c_fit, ok ? 0.0 : -kInf};
                                     }});
                }
            }
        }
    }
    return cases;
}

}  // namespace

const std::vector<SuiteDef>& suite_registry() {
    static const std::vector<SuiteDef> registry = {
        {"inequalities",
         "triangle-type and polynomial-Gevrey inequalities on random in-region samples; region partition totality",
         {"kind", "d", "sigma", "K", "samples"},
         {"d", "sigma", "K"},
         kIneqTolerance,
         build_inequalities},
        {"embedding", "Gevrey bump embedding into the Fourier-weighted space (d = 1)",
         {"s", "tau_ratio", "width"}, {"s", "tau_ratio", "width"}, 0.0, build_embedding},
        {"conjugation",
         "conjugated-symbol operator identity, weight W region bounds, conjugated-multiply constant stability",
         {"kind", "sigma", "tau", "tau_prime", "delta", "s", "K", "N"},
         {"sigma", "tau", "tau_prime", "delta", "s", "m"},
         0.0,
         build_conjugation},
        {"quantization", "Fourier-side op_h against the direct quadrature",
         {"h", "m", "delta", "sample"}, {"h", "m", "delta"}, 0.0, build_quantization},
        {"action", "empirical action norm between Gevrey spaces, grid drift, tau' > tau diagnostic",
         {"kind", "delta", "s", "sigma", "tau", "tau_prime", "band", "N"},
         {"delta", "s", "tau", "tau_prime", "band"},
         0.0,
         build_action},
        {"symbol5", "conjugated symbol: expansion remainder order, seminorm envelope, class membership",
         {"kind", "k_or_alpha", "beta", "sigma", "tau", "width", "gap_min"},
         {"k", "sigma", "tau", "width", "gap", "s"},
         0.0,
         build_symbol5},
    };
    return registry;
}

const SuiteDef& find_suite(const std::string& name) {
    for (const auto& def : suite_registry()) {
        if (def.name == name) return def;
    }
    throw ConfigError("unknown suite '" + name + "'");
}

}  // namespace gevrey::detail
