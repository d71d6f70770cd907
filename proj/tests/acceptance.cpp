// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "gevrey/conjugation.hpp"
#include "gevrey/experiment.hpp"
#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/quantization.hpp"
#include "gevrey/random.hpp"
#include "gevrey/sharp_inequalities.hpp"
#include "gevrey/symbol_classes.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace gevrey;

namespace {

// Tolerances pinned by the criteria.
constexpr double kIneqRelTol = 1e-12;
constexpr double kIneqSeconds = 120.0;
constexpr double kEmbeddingSeconds = 60.0;
constexpr double kOracleTol = 1e-8;
constexpr double kOracleSeconds = 120.0;
constexpr double kIdentityTol = 1e-6;
constexpr double kIdentitySeconds = 120.0;
constexpr double kStabilityTol = 0.20;
constexpr double kDriftTol = 0.20;
constexpr double kGrowthMin = 10.0;
constexpr double kOrderSlack = 0.3;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Verdict {
    bool pass = false;
    std::string detail;
};

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string f(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void report(int id, const char* title, const std::function<Verdict()>& check) {
    Verdict v;
    try {
        v = check();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s [%2d] %s: %s\n", v.pass ? "PASS" : "FAIL", id, title, v.detail.c_str());
    std::fflush(stdout);
}

Verdict inequality_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr long kTotal = 1000000;
    const double sigmas[] = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    const double Ks[] = {1.5, 2.0, 10.0};
    long samples[3] = {0, 0, 0}, violations[3] = {0, 0, 0};
    double worst[3] = {0, 0, 0};
    std::uint64_t index = 0;
    for (int d = 1; d <= 3; ++d) {
        for (double sigma : sigmas) {
            for (int kind = 0; kind < 3; ++kind) {
                const int nK = kind == 2 ? 1 : 3;
                const long per = (kTotal + 27 * nK - 1) / (27 * nK);
                for (int ik = 0; ik < nK; ++ik) {
                    CounterRng rng(CounterRng::stream_key(42, "acceptance-inequalities", index++));
                    const auto k = kind == 0 ? InequalityKind::Tri1 : kind == 1 ? InequalityKind::Tri2 : InequalityKind::Poly;
                    const auto s = sweep_inequality(k, per, d, sigma, Ks[ik], rng);
                    samples[kind] += s.samples;
                    violations[kind] += s.violations;
                    worst[kind] = std::min(worst[kind], s.worst_relative_defect);
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    bool ok = secs <= kIneqSeconds;
    std::ostringstream os;
    const char* names[] = {"tri1", "tri2", "poly"};
    for (int k = 0; k < 3; ++k) {
        ok = ok && samples[k] >= kTotal && violations[k] == 0 && worst[k] >= -kIneqRelTol;
        os << names[k] << " " << violations[k] << "/" << samples[k] << " violations (worst rel. defect "
           << f("%.2e", worst[k]) << "), ";
    }
    os << f("%.1f", secs) << " s single-threaded (limit " << kIneqSeconds << " s)";
    return {ok, os.str()};
}

Verdict remark_constants() {
    long checked = 0;
    bool in_range = true;
    for (int i = 0; i <= 60; ++i) {
        const double K = 1.0 + std::pow(10.0, -4.0 + 0.125 * i);  // 1.0001 .. 1e3.5
        for (int j = 0; j <= 40; ++j) {
            const double sigma = std::pow(10.0, -3.0 + 3.0 * j / 40.0) * 0.999;  // 1e-3 .. 0.999
            const double c = tri1_constant(K, sigma);
            in_range = in_range && c > 0.0 && c < 1.0;
            ++checked;
        }
    }
    const auto w = compare_remark_constants(1.1, 0.9);
    const bool ok = in_range && w.competing_constant > 1.0 && w.paper_constant < 1.0;
    return {ok, std::to_string(checked) + " (K, sigma) log-grid points in (0,1): " + (in_range ? "yes" : "no") +
                    "; K=1.1, sigma=0.9: sigma/(K-1)^(1-sigma) = " + f("%.4f", w.competing_constant) +
                    ", K^sigma-(K-1)^sigma = " + f("%.4f", w.paper_constant)};
}

Verdict embedding_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    auto c = parse_config(R"({"schema_version": 1, "suite": "embedding",
        "grid": {"dim": 1, "points": 256, "length": 8.0},
        "sweeps": {"s": [1.5, 2, 3], "tau_ratio": [0.25, 0.5, 0.75], "width": [1.0]}, "threads": 1})");
    const auto records = run_suite(c);
    int passed = 0;
    double worst = 1.0;
    for (const auto& r : records) {
        passed += r.pass && r.margin >= 0.0;
        worst = std::min(worst, r.margin);
    }
    const double secs = seconds_since(t0);
    return {records.size() == 9 && passed == 9 && secs <= kEmbeddingSeconds,
            std::to_string(passed) + "/" + std::to_string(records.size()) + " margins >= 0 (smallest relative margin " +
                f("%.3f", worst) + "), " + f("%.2f", secs) + " s (limit " + f("%g", kEmbeddingSeconds) + " s)"};
}

Verdict quantization_oracle() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = GridSpec::make(1, 64, kTwoPi);
    const double hs[] = {0.0, 0.25, 0.5};
    int passed = 0;
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        CounterRng rng(CounterRng::stream_key(42, "acceptance-quantization", static_cast<std::uint64_t>(i)));
        SymbolClassParams p;
        p.m = rng.uniform(-1.0, 1.0);
        p.delta = rng.below(2) ? 0.25 : 0.0;
        const auto a = canonical_symbol(p, grid, rng.uniform(0.6, 1.6), SpatialPoint(rng.uniform(-0.8, 0.8)));
        const auto u = random_gevrey_input(grid, 0.5, 0.0, 16, rng.next(), 0);
        const double h = hs[i % 3];
        const auto fourier = h == 0.0 ? quantize_fourier_h0(a, u) : quantize_fourier_h(a, u, h);
        const auto direct = quantize_direct(a, u, h);
        const double err = relative_l2_error(fourier.values(), direct.values());
        worst = std::max(worst, err);
        passed += err <= kOracleTol;
    }
    const double secs = seconds_since(t0);
    return {passed == 100 && secs <= kOracleSeconds,
            std::to_string(passed) + "/100 cases within " + f("%g", kOracleTol) + " (worst " + f("%.2e", worst) + "), " +
                f("%.2f", secs) + " s"};
}

Verdict operator_identity() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = GridSpec::make(1, 128, kTwoPi);
    SymbolClassParams p;
    const auto a = canonical_symbol(p, grid, 1.3, SpatialPoint(0.2));
    const auto at = conjugated_symbol(a, 0.5, 0.3, ConjugationMode::Torus);
    const auto at_cont = conjugated_symbol(a, 0.5, 0.3, ConjugationMode::Continuum);
    int passed = 0;
    double worst = 0.0, worst_cont = 0.0;
    for (int i = 0; i < 50; ++i) {
        const auto u = random_gevrey_input(grid, 0.5, 0.3, 40, 4242, i);
        const auto rhs = conjugated_operator_apply(a, u, 0.5, 0.3);
        const double err = relative_l2_error(quantize_direct(at, u, 0.0).values(), rhs.values());
        worst_cont = std::max(worst_cont, relative_l2_error(quantize_direct(at_cont, u, 0.0).values(), rhs.values()));
        worst = std::max(worst, err);
        passed += err <= kIdentityTol;
    }
    const double secs = seconds_since(t0);
    return {passed == 50 && secs <= kIdentitySeconds,
            std::to_string(passed) + "/50 inputs within " + f("%g", kIdentityTol) + " (worst " + f("%.2e", worst) +
                "; unwrapped-frequency variant would give " + f("%.2e", worst_cont) + "), " + f("%.2f", secs) + " s"};
}

Verdict multiply_stability() {
    const ConjugationParams cp{0.5, 0.3, 1.0};
    double C[3];
    int idx = 0;
    for (std::size_t n : {64u, 128u, 256u}) {
        const auto grid = GridSpec::make(1, n, kTwoPi);
        double best = 0.0;
        for (int i = 0; i < 24; ++i) {
            const auto F = random_gevrey_input(grid, 0.5, 0.6, 16, 777, 2 * i);
            const auto v = random_gevrey_input(grid, 0.5, 0.0, 16, 777, 2 * i + 1);
            best = std::max(best, prop31_ratio(F, v, cp));
        }
        C[idx++] = best;
    }
    const double lo = std::min({C[0], C[1], C[2]});
    const double hi = std::max({C[0], C[1], C[2]});
    const double spread = (hi - lo) / lo;
    return {std::isfinite(spread) && spread <= kStabilityTol,
            "fitted C at N=64/128/256: " + f("%.6f", C[0]) + " / " + f("%.6f", C[1]) + " / " + f("%.6f", C[2]) +
                ", spread " + f("%.2e", spread) + " (limit " + f("%g", kStabilityTol) + ")"};
}

Verdict action_norm() {
    const double delta = 0.25, s = 2.0, sigma = (1.0 - delta) / s, tau = 0.4;
    auto norm = [&](std::size_t n, double tau_prime, long band, bool enforce) {
        const auto grid = GridSpec::make(1, n, kTwoPi);
        SymbolClassParams p;
        p.delta = delta;
        p.s = s;
        const auto a = canonical_symbol(p, grid, 1.0);
        ActionNormOptions o;
        o.n_samples = 16;
        o.band_limit = band;
        o.seed = 42;
        o.enforce_hypotheses = enforce;
        return estimate_action_norm(a, sigma, tau, tau_prime, o);
    };
    const auto r128 = norm(128, tau / 2, 16, true);
    const auto r256 = norm(256, tau / 2, 16, true);
    const double drift = std::abs(r256.empirical_norm - r128.empirical_norm) / r128.empirical_norm;
    const double lo = norm(256, 2.0, 16, false).empirical_norm;
    const double hi = norm(256, 2.0, 64, false).empirical_norm;
    const double growth = hi / lo;
    const bool ok = std::isfinite(r128.empirical_norm) && std::isfinite(r256.empirical_norm) && drift <= kDriftTol &&
                    growth >= kGrowthMin;
    return {ok, "norm N=128 " + f("%.6f", r128.empirical_norm) + ", N=256 " + f("%.6f", r256.empirical_norm) +
                    " (drift " + f("%.2e", drift) + ", bound " + f("%.3g", r256.bound) + "); tau'=2 > tau: ratio grows " +
                    f("%.1f", growth) + "x as band 16 -> 64 (need >= " + f("%g", kGrowthMin) + ")"};
}

Verdict expansion_order() {
    const auto grid = GridSpec::make(1, 512, kTwoPi);
    SymbolClassParams p;
    const auto a = canonical_symbol(p, grid, 2.0);
    bool ok = true;
    std::ostringstream os;
    for (int k = 0; k <= 2; ++k) {
        const auto r = expansion_remainder(a, k, 0.5, 0.3);
        ok = ok && r.fitted_order <= r.predicted_order + kOrderSlack;
        os << "k=" << k << " fitted " << f("%.3f", r.fitted_order) << " vs predicted " << f("%.2f", r.predicted_order)
           << (k < 2 ? "; " : "");
    }
    os << " (slack " << kOrderSlack << ")";
    return {ok, os.str()};
}

Verdict seminorm_envelope() {
    const auto grid = GridSpec::make(1, 256, kTwoPi);
    SymbolClassParams p;
    const auto a = canonical_symbol(p, grid, 2.0);
    const std::vector<double> gaps = {0.4, 0.2, 0.1, 0.05};
    const std::pair<int, int> orders[] = {{0, 0}, {1, 0}, {0, 1}};
    bool ok = true;
    std::ostringstream os;
    for (const auto& [na, nb] : orders) {
        const auto r = lemma51_bound_check(a, {na, 0, 0}, {nb, 0, 0}, 0.3, gaps);
        double lo = INFINITY;
        for (const auto& pt : r.points) lo = std::min(lo, pt.ratio);
        ok = ok && r.envelope_holds && std::isfinite(r.c_fit) && r.c_fit > 0.0;
        os << "(" << na << "," << nb << ") C_fit " << f("%.3e", r.c_fit) << " ratio spread " << f("%.2f", r.c_fit / lo)
           << "x" << (nb == 1 ? "" : "; ");
    }
    return {ok, os.str()};
}

Verdict region_totality() {
    CounterRng rng(CounterRng::stream_key(42, "acceptance-regions", 0));
    long multi = 0, none = 0, mismatch = 0, boundary = 0;
    constexpr long kN = 1000000;
    for (long i = 0; i < kN; ++i) {
        const int d = 1 + static_cast<int>(rng.below(3));
        const double K = rng.log_uniform(1.001, 1000.0);
        FrequencyPoint eta = rng.log_uniform(1e-4, 1e6) * rng.direction(d);
        FrequencyPoint xi = rng.log_uniform(1e-4, 1e6) * rng.direction(d);
        switch (i % 8) {
            case 0: xi = eta + (eta.norm() / K) * rng.direction(d); break;
            case 1: xi = eta + (K * eta.norm()) * rng.direction(d); break;
            case 2: xi = eta; break;
            case 3: eta = FrequencyPoint::zero(d); break;
            default: break;
        }
        const double dn = (xi - eta).norm(), en = eta.norm();
        // Raw membership before precedence; boundaries count as inside.
        const bool in1 = K * dn <= en;
        const bool in2 = K * en <= dn;
        const bool in3 = K * dn >= en && K * en >= dn;
        boundary += (in1 && in3) || (in2 && in3);
        // Labels after R1 > R2 > R3 precedence.
        const int labels = int(in1) + int(in2 && !in1) + int(in3 && !in1 && !in2);
        multi += labels > 1;
        none += labels == 0;
        const int want = in1 ? 0 : in2 ? 1 : 2;
        mismatch += static_cast<int>(classify_region(xi, eta, K)) != want;
    }
    return {multi == 0 && none == 0 && mismatch == 0,
            std::to_string(kN) + " samples: " + std::to_string(multi) + " multi-label, " + std::to_string(none) +
                " unlabelled, " + std::to_string(mismatch) + " disagreements with the predicate oracle (" +
                std::to_string(boundary) + " samples on a shared boundary)"};
}

std::string strip_wall_ms(const std::string& csv) {
    std::istringstream in(csv);
    std::string line, out;
    while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
    return out;
}

Verdict determinism() {
    const char* configs[] = {
        R"({"schema_version": 1, "suite": "inequalities", "samples": 50000, "seed": 42})",
        R"({"schema_version": 1, "suite": "embedding", "grid": {"points": 128, "length": 8.0}, "seed": 42})",
        R"({"schema_version": 1, "suite": "conjugation", "grid": {"points": 64}, "samples": 3, "seed": 42})",
        R"({"schema_version": 1, "suite": "quantization", "grid": {"points": 32}, "samples": 3, "seed": 42})",
        R"({"schema_version": 1, "suite": "action", "grid": {"points": 128}, "samples": 4, "seed": 42})",
        R"({"schema_version": 1, "suite": "symbol5", "grid": {"points": 128}, "seed": 42})",
    };
    int identical = 0;
    std::string diffs;
    for (const char* text : configs) {
        auto c = parse_config(text);
        c.threads = 0;
        const auto first = format_csv(run_suite(c), c.suite);
        c.threads = 1;
        const auto second = format_csv(run_suite(c), c.suite);
        if (strip_wall_ms(first) == strip_wall_ms(second)) {
            ++identical;
        } else {
            diffs += " " + c.suite;
        }
    }
    return {identical == 6, std::to_string(identical) + "/6 suites byte-identical on rerun (wall_ms excluded)" +
                                (diffs.empty() ? "" : ", differing:" + diffs)};
}

}  // namespace

int main() {
    report(1, "inequality suite", inequality_suite);
    report(2, "sharp constant range and competing constant", remark_constants);
    report(3, "Gevrey embedding", embedding_suite);
    report(4, "quantization oracle equivalence", quantization_oracle);
    report(5, "conjugated-symbol operator identity", operator_identity);
    report(6, "conjugated multiply constant under refinement", multiply_stability);
    report(7, "action norm drift and tau' > tau diagnostic", action_norm);
    report(8, "conjugated-symbol expansion remainder order", expansion_order);
    report(9, "conjugated-symbol seminorm envelope", seminorm_envelope);
    report(10, "region partition totality", region_totality);
    report(11, "determinism", determinism);
    std::printf("%d of 11 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
