#include "gevrey/sharp_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gevrey {

namespace {

void check_domain(double K, double sigma) {
    if (!(K > 1.0)) throw std::invalid_argument("K must exceed 1");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("sigma must lie in (0,1)");
}

double bpow(const FrequencyPoint& p, double sigma) { return std::pow(bracket(p), sigma); }

}  // namespace

IneqReport make_report(double lhs, double rhs, double constant) {
    IneqReport r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant;
    r.defect = rhs - lhs;
    r.holds = r.defect >= -kIneqTolerance * std::max(1.0, std::abs(rhs));
    return r;
}

double tri1_constant(double K, double sigma) {
    check_domain(K, sigma);
    return std::pow(K, sigma) - std::pow(K - 1.0, sigma);
}

double tri2_constant(double K, double sigma) {
    check_domain(K, sigma);
    const double kms = std::pow(K, -sigma);
    const double c_tilde = std::pow(1.0 + kms, 1.0 / sigma);
    const double c = std::sqrt(c_tilde);
    const double first = std::pow(c, sigma) - std::pow(c - 1.0, sigma);
    const double second = std::pow(c, sigma) / (1.0 + kms);
    return std::max(first, second);
}

double tri2_constant_as_stated(double K, double sigma) {
    check_domain(K, sigma);
    const double kms = std::pow(K, -sigma);
    const double c_tilde = std::pow(1.0 + kms, 1.0 / sigma);
    const double c = std::sqrt(c_tilde);
    const double first = std::pow(c_tilde, sigma) - std::pow(c_tilde - 1.0, sigma);
    const double second = std::pow(c, sigma) / (1.0 + kms);
    return std::max(first, second);
}

double poly_gevrey_constant(double m, double sigma) {
    if (!(m >= 0.0)) throw std::invalid_argument("poly_gevrey_constant: m must be nonnegative");
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("poly_gevrey_constant: sigma must lie in (0,1]");
    if (m == 0.0) return 1.0;
    return std::exp((m / sigma) * std::log(m / (sigma * std::numbers::e)));
}

bool in_tri1_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K) {
    return K * (xi - eta).norm() <= eta.norm();
}

bool in_tri2_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K) {
    const double z = (xi - eta).norm();
    const double e = eta.norm();
    return z <= K * e && e <= K * z;
}

IneqReport check_tri1(const IneqSample& sample) {
    const double c = tri1_constant(sample.K, sample.sigma);
    if (!in_tri1_region(sample.xi, sample.eta, sample.K)) {
        throw std::invalid_argument("check_tri1: sample not in region |xi-eta| <= |eta|/K");
    }
    const double lhs = std::abs(bpow(sample.xi, sample.sigma) - bpow(sample.eta, sample.sigma));
    return make_report(lhs, c * bpow(sample.xi - sample.eta, sample.sigma), c);
}

IneqReport check_tri2_with(const IneqSample& sample, double constant) {
    check_domain(sample.K, sample.sigma);
    if (!in_tri2_region(sample.xi, sample.eta, sample.K)) {
        throw std::invalid_argument("check_tri2: sample not in region |xi-eta|/K <= |eta| <= K|xi-eta|");
    }
    const double lhs = bpow(sample.xi, sample.sigma);
    const double rhs =
        bpow(sample.eta, sample.sigma) + constant * bpow(sample.xi - sample.eta, sample.sigma);
    return make_report(lhs, rhs, constant);
}

IneqReport check_tri2(const IneqSample& sample) {
    return check_tri2_with(sample, tri2_constant(sample.K, sample.sigma));
}

IneqReport check_poly_gevrey(const FrequencyPoint& xi, double sigma, double tau, double m) {
    if (!(tau > 0.0)) throw std::invalid_argument("check_poly_gevrey: tau must be positive");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("check_poly_gevrey: sigma must lie in (0,1)");
    const double c = poly_gevrey_constant(m, sigma);
    const double b = bracket(xi);
    const double lhs = std::pow(b, m);
    const double log_rhs = std::log(c) - (m / sigma) * std::log(tau) + tau * std::pow(b, sigma);
    return make_report(lhs, std::exp(log_rhs), c);
}

RemarkComparison compare_remark_constants(double K, double sigma) {
    RemarkComparison r;
    r.paper_constant = tri1_constant(K, sigma);
    r.competing_constant = sigma / std::pow(K - 1.0, 1.0 - sigma);
    r.paper_smaller = r.paper_constant < r.competing_constant;
    return r;
}

Counterexample find_sigma_one_counterexample(double constant, double K) {
    if (!(K > 1.0)) throw std::invalid_argument("find_sigma_one_counterexample: K must exceed 1");
    if (!(constant < 1.0)) throw std::invalid_argument("find_sigma_one_counterexample: constant must be below 1");
    Counterexample out;
    out.K = K;
    out.constant = constant;
    for (double t = 1.0; t < 1e15; t *= 2.0) {
        const FrequencyPoint eta(t);
        const FrequencyPoint xi(t * (1.0 + 1.0 / K));
        if (!in_tri1_region(xi, eta, K)) continue;
        const double lhs = std::abs(bracket(xi) - bracket(eta));
        const auto rep = make_report(lhs, constant * bracket(xi - eta), constant);
        if (rep.defect < 0.0 && !rep.holds) {
            out.found = true;
            out.xi = xi;
            out.eta = eta;
            out.report = rep;
            return out;
        }
    }
    return out;
}

namespace {

constexpr double kMinMagnitude = 1e-3;
constexpr double kMaxMagnitude = 1e5;

// Fraction of the admissible radius: half the draws uniform (mass near the
// boundary), half log-uniform (mass near the centre).
double radial_fraction(CounterRng& rng) {
    return rng.uniform() < 0.5 ? 1.0 - rng.uniform() : rng.log_uniform(1e-6, 1.0);
}

}  // namespace

IneqSample draw_tri1_sample(CounterRng& rng, int d, double sigma, double K) {
    for (;;) {
        const FrequencyPoint eta = rng.log_uniform(kMinMagnitude, kMaxMagnitude) * rng.direction(d);
        const double r = radial_fraction(rng) * eta.norm() / K;
        const FrequencyPoint xi = eta + r * rng.direction(d);
        if (in_tri1_region(xi, eta, K)) return {xi, eta, sigma, K};
    }
}

IneqSample draw_tri2_sample(CounterRng& rng, int d, double sigma, double K) {
    for (;;) {
        const FrequencyPoint zeta = rng.log_uniform(kMinMagnitude, kMaxMagnitude) * rng.direction(d);
        const double ratio = std::pow(K, rng.uniform(-1.0, 1.0));
        const FrequencyPoint eta = (ratio * zeta.norm()) * rng.direction(d);
        const FrequencyPoint xi = eta + zeta;
        if (in_tri2_region(xi, eta, K)) return {xi, eta, sigma, K};
    }
}

SweepSummary sweep_inequality(InequalityKind kind, long n, int d, double sigma, double K,
                              CounterRng& rng) {
    static constexpr double kOrders[] = {0.0, 1.0, 2.0, 4.0};
    SweepSummary sum;
    sum.worst_relative_defect = std::numeric_limits<double>::infinity();
    for (long i = 0; i < n; ++i) {
        IneqSample sample;
        IneqReport rep;
        switch (kind) {
            case InequalityKind::Tri1:
                sample = draw_tri1_sample(rng, d, sigma, K);
                rep = check_tri1(sample);
                break;
            case InequalityKind::Tri2:
                sample = draw_tri2_sample(rng, d, sigma, K);
                rep = check_tri2(sample);
                break;
            case InequalityKind::Poly: {
                const double m = kOrders[i % 4];
                double tau = 0.0;
                FrequencyPoint xi;
                do {
                    tau = rng.log_uniform(1e-2, 10.0);
                    xi = rng.log_uniform(kMinMagnitude, 1e6) * rng.direction(d);
                } while (tau * std::pow(bracket(xi), sigma) > 700.0);
                sample = {xi, FrequencyPoint::zero(d), sigma, tau};
                rep = check_poly_gevrey(xi, sigma, tau, m);
                break;
            }
        }
        ++sum.samples;
        if (!rep.holds) ++sum.violations;
        const double rel = rep.defect / std::max(1.0, std::abs(rep.rhs));
        if (rel < sum.worst_relative_defect) {
            sum.worst_relative_defect = rel;
            sum.worst = sample;
        }
    }
    if (n == 0) sum.worst_relative_defect = 0.0;
    return sum;
}

}  // namespace gevrey
