#include "gevrey/gevrey_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace gevrey {

void check_weight_overflow(double max_bracket, double sigma, double tau) {
    const double growth = std::pow(max_bracket, sigma);
    if (std::abs(tau) * growth > kMaxExponent) {
        std::ostringstream msg;
        msg.precision(6);
        msg << "weight overflow: |tau|*<xi_max>^sigma = " << std::abs(tau) * growth << " exceeds "
            << kMaxExponent << "; largest admissible tau on this grid is " << kMaxExponent / growth;
        throw WeightOverflow(msg.str(), kMaxExponent / growth);
    }
}

void GevreyParams::validate() const {
    if (!(s > 1.0)) throw std::invalid_argument("GevreyParams: s must exceed 1");
    if (!(R > 0.0)) throw std::invalid_argument("GevreyParams: R must be positive");
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("GevreyParams: sigma must lie in (0,1]");
    if (!(tau >= 0.0)) throw std::invalid_argument("GevreyParams: tau must be nonnegative");
}

bool GevreyParams::embedding_admissible() const {
    return std::abs(sigma - 1.0 / s) <= 1e-14 && tau < s * std::pow(R, -1.0 / s);
}

int order(const MultiIndex& alpha) {
    int k = 0;
    for (int a : alpha) k += a;
    return k;
}

std::vector<MultiIndex> multi_indices_of_order(int d, int k) {
    std::vector<MultiIndex> out;
    if (d == 1) {
        out.push_back({k, 0, 0});
    } else if (d == 2) {
        for (int a = k; a >= 0; --a) out.push_back({a, k - a, 0});
    } else {
        for (int a = k; a >= 0; --a) {
            for (int b = k - a; b >= 0; --b) out.push_back({a, b, k - a - b});
        }
    }
    return out;
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

std::string to_string(DerivativeMethod method) {
    switch (method) {
        case DerivativeMethod::Analytic: return "analytic";
        case DerivativeMethod::FiniteDifference: return "finite_difference";
        case DerivativeMethod::Spectral: return "spectral";
    }
    return "unknown";
}

namespace {

std::vector<complex> spectral_derivative(const SampledFunction& f, const MultiIndex& alpha) {
    const auto& grid = f.grid();
    std::vector<complex> spec(f.spectrum().begin(), f.spectrum().end());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const auto xi = grid.frequency(k);
        complex factor = 1.0;
        for (int a = 0; a < grid.dim(); ++a) {
            for (int r = 0; r < alpha[static_cast<std::size_t>(a)]; ++r) factor *= complex(0.0, xi[a]);
        }
        spec[k] *= factor;
    }
    return inverse_transform_values(spec, grid);
}

std::vector<complex> shifted(std::span<const complex> spectrum, const GridSpec& grid, int axis,
                             double shift) {
    std::vector<complex> spec(spectrum.begin(), spectrum.end());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] *= std::polar(1.0, grid.frequency(k)[axis] * shift);
    }
    return inverse_transform_values(spec, grid);
}

std::vector<complex> finite_difference(const SampledFunction& f, const MultiIndex& alpha) {
    const auto& grid = f.grid();
    std::vector<complex> cur(f.values().begin(), f.values().end());
    for (int a = 0; a < grid.dim(); ++a) {
        const int k = alpha[static_cast<std::size_t>(a)];
        if (k == 0) continue;
        const double h =
            std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (k + 2)) * grid.length();
        const auto spec = forward_transform(cur, grid);
        std::vector<complex> next(cur.size());
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            const double weight = (j % 2 == 0 ? 1.0 : -1.0) * binom;
            const auto g = shifted(spec, grid, a, (0.5 * k - j) * h);
            for (std::size_t i = 0; i < next.size(); ++i) next[i] += weight * g[i];
            binom = binom * (k - j) / (j + 1);
        }
        const double scale = std::pow(h, -k);
        for (auto& v : next) v *= scale;
        cur = std::move(next);
    }
    return cur;
}

double sup_abs(std::span<const complex> v) {
    double m = 0.0;
    for (const auto& c : v) m = std::max(m, std::abs(c));
    return m;
}

void finish_estimate(SeminormEstimate& est, double s, double R) {
    est.value = 0.0;
    for (std::size_t k = 0; k < est.order_sups.size(); ++k) {
        const double mk = est.order_sups[k];
        if (mk <= 0.0) continue;
        const int ki = static_cast<int>(k);
        const double term = std::exp(std::log(mk) - ki * std::log(R) - s * log_factorial(ki));
        est.value = std::max(est.value, term);
    }
}

void check_seminorm_args(double s, double R, int alpha_max) {
    if (!(R > 0.0)) throw std::invalid_argument("spatial_gevrey_seminorm: R must be positive");
    if (!(s >= 1.0)) throw std::invalid_argument("spatial_gevrey_seminorm: s must be at least 1");
    if (alpha_max < 0) throw std::invalid_argument("spatial_gevrey_seminorm: negative order");
}

}  // namespace

std::vector<complex> partial_derivative(const SampledFunction& f, const MultiIndex& alpha,
                                        DerivativeMethod method) {
    for (int a = f.grid().dim(); a < kMaxDim; ++a) {
        if (alpha[static_cast<std::size_t>(a)] != 0) {
            throw std::invalid_argument("partial_derivative: multi-index exceeds grid dimension");
        }
    }
    switch (method) {
        case DerivativeMethod::Spectral: return spectral_derivative(f, alpha);
        case DerivativeMethod::FiniteDifference:
            if (order(alpha) > kMaxFiniteDifferenceOrder) {
                throw std::invalid_argument("partial_derivative: finite differences above order 8 are noise-dominated");
            }
            return finite_difference(f, alpha);
        case DerivativeMethod::Analytic: break;
    }
    throw std::invalid_argument("partial_derivative: sampled functions have no analytic derivatives");
}

SeminormEstimate spatial_gevrey_seminorm(const SampledFunction& f, double s, double R,
                                         int alpha_max, DerivativeMethod method) {
    check_seminorm_args(s, R, alpha_max);
    if (method == DerivativeMethod::FiniteDifference && alpha_max > kMaxFiniteDifferenceOrder) {
        throw std::invalid_argument("spatial_gevrey_seminorm: alpha_max above 8 is not allowed with finite differences");
    }
    SeminormEstimate est;
    est.orders_checked = alpha_max;
    est.method = method;
    est.order_sups.assign(static_cast<std::size_t>(alpha_max) + 1, 0.0);
    est.order_sups[0] = sup_abs(f.values());
    for (int k = 1; k <= alpha_max; ++k) {
        double mk = 0.0;
        for (const auto& alpha : multi_indices_of_order(f.grid().dim(), k)) {
            mk = std::max(mk, sup_abs(partial_derivative(f, alpha, method)));
        }
        est.order_sups[static_cast<std::size_t>(k)] = mk;
    }
    finish_estimate(est, s, R);
    return est;
}

SeminormEstimate spatial_gevrey_seminorm(const DerivativeProvider& f, const GridSpec& grid,
                                         double s, double R, int alpha_max) {
    check_seminorm_args(s, R, alpha_max);
    if (grid.dim() != 1) throw std::invalid_argument("spatial_gevrey_seminorm: derivative providers are one-dimensional");
    SeminormEstimate est;
    est.orders_checked = alpha_max;
    est.method = DerivativeMethod::Analytic;
    est.order_sups.assign(static_cast<std::size_t>(alpha_max) + 1, 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto d = f(grid.coordinate(j), alpha_max);
        if (d.size() < est.order_sups.size()) throw std::invalid_argument("derivative provider returned too few orders");
        for (std::size_t k = 0; k < est.order_sups.size(); ++k) {
            est.order_sups[k] = std::max(est.order_sups[k], std::abs(d[k]));
        }
    }
    finish_estimate(est, s, R);
    return est;
}

double fit_gevrey_scale(const SeminormEstimate& estimate, double s) {
    if (estimate.order_sups.empty() || !(estimate.order_sups[0] > 0.0)) {
        throw std::invalid_argument("fit_gevrey_scale: function vanishes identically");
    }
    const double log_m0 = std::log(estimate.order_sups[0]);
    double r = 0.0;
    for (std::size_t k = 1; k < estimate.order_sups.size(); ++k) {
        if (!(estimate.order_sups[k] > 0.0)) continue;
        const int ki = static_cast<int>(k);
        const double lr = (std::log(estimate.order_sups[k]) - log_m0 - s * log_factorial(ki)) / ki;
        r = std::max(r, std::exp(lr));
    }
    return r;
}

namespace {

// Σ w_k² |c_k|² with w_k = ⟨ξ_k⟩^m e^{τ⟨ξ_k⟩^σ}, accumulated relative to the
// largest log-term so e^{2τ⟨ξ⟩^σ} never overflows.
double weighted_l2(const SampledFunction& f, double m, double sigma, double tau) {
    const auto& grid = f.grid();
    const auto spec = f.spectrum();
    std::vector<double> logs(spec.size(), -std::numeric_limits<double>::infinity());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < spec.size(); ++k) {
        const double a = std::abs(spec[k]);
        if (a == 0.0) continue;
        const double b = bracket(grid.frequency(k));
        logs[k] = std::log(a) + m * std::log(b) + tau * std::pow(b, sigma);
        top = std::max(top, logs[k]);
    }
    if (!std::isfinite(top)) return 0.0;
    double acc = 0.0;
    for (double l : logs) {
        if (std::isfinite(l)) acc += std::exp(2.0 * (l - top));
    }
    return std::exp(top) * std::sqrt(acc * grid.volume());
}

}  // namespace

double fourier_gevrey_norm(const SampledFunction& f, double sigma, double tau) {
    return gevrey_sobolev_norm(f, 0.0, sigma, tau);
}

double sobolev_norm(const SampledFunction& f, double m) {
    if (!(m >= 0.0)) throw std::invalid_argument("sobolev_norm: m must be nonnegative");
    return weighted_l2(f, m, 1.0, 0.0);
}

double gevrey_sobolev_norm(const SampledFunction& f, double m, double sigma, double tau) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("fourier_gevrey_norm: sigma must lie in (0,1]");
    if (!(tau >= 0.0)) throw std::invalid_argument("fourier_gevrey_norm: tau must be nonnegative");
    if (!(m >= 0.0)) throw std::invalid_argument("gevrey_sobolev_norm: m must be nonnegative");
    check_weight_overflow(f.grid().max_bracket(), sigma, tau);
    return weighted_l2(f, m, sigma, tau);
}

double embedding_prefactor(double s) {
    const double sigma = 1.0 / s;
    return std::pow(1.09, 2.0 * s) * std::pow(2.0 * std::numbers::pi, 0.5 * (s - 1.0)) *
           std::pow(1.0 + sigma, 1.5 * s);
}

double embedding_constant(double s, double R, double tau) {
    if (!(s > 1.0)) throw std::invalid_argument("embedding_constant: s must exceed 1");
    if (!(R > 0.0)) throw std::invalid_argument("embedding_constant: R must be positive");
    if (!(tau >= 0.0)) throw std::invalid_argument("embedding_constant: tau must be nonnegative");
    const double threshold = s * std::pow(R, -1.0 / s);
    const double y = tau * std::pow(R, 1.0 / s) / s;
    if (!(y < 1.0)) {
        std::ostringstream msg;
        msg << "embedding_constant: tau = " << tau << " is outside embedding range (needs tau < s*R^(-1/s) = "
            << threshold << ")";
        throw std::domain_error(msg.str());
    }
    const double p = 0.5 * (3.0 * s - 1.0);
    double sum = 1.0;
    if (y > 0.0) {
        const double ly = std::log(y);
        constexpr long kMaxTerms = 100'000'000;
        for (long n = 1;; ++n) {
            const double t = std::exp(p * std::log(static_cast<double>(n)) + n * ly);
            sum += t;
            if (!std::isfinite(sum)) throw std::overflow_error("embedding_constant: series overflows");
            // Terms after n shrink by at most q each step once q < 1.
            const double q = std::pow(1.0 + 1.0 / (n + 1.0), p) * y;
            const double next = t * std::pow(1.0 + 1.0 / n, p) * y;
            if (q < 1.0 && next / (1.0 - q) <= 1e-12 * sum) break;
            if (n >= kMaxTerms) throw std::runtime_error("embedding_constant: series did not converge");
        }
    }
    return std::exp(tau) * embedding_prefactor(s) * sum;
}

EmbeddingReport verify_embedding(const SampledFunction& f, double s, double R, double tau,
                                 double b_measure, const SeminormEstimate& seminorm) {
    if (f.grid().dim() != 1) throw std::invalid_argument("verify_embedding: only d = 1 is supported");
    if (!(b_measure > 0.0)) throw std::invalid_argument("verify_embedding: support measure must be positive");
    EmbeddingReport rep;
    rep.y = tau * std::pow(R, 1.0 / s) / s;
    rep.constant = embedding_constant(s, R, tau);
    rep.seminorm = seminorm.value;
    rep.lhs = fourier_gevrey_norm(f, 1.0 / s, tau);
    rep.rhs = std::sqrt(b_measure) * rep.constant * rep.seminorm;
    rep.margin = rep.rhs - rep.lhs;
    return rep;
}

EmbeddingReport verify_embedding(const SampledFunction& f, double s, double R, double tau,
                                 double b_measure) {
    const auto seminorm = spatial_gevrey_seminorm(f, s, R, 8, DerivativeMethod::Spectral);
    return verify_embedding(f, s, R, tau, b_measure, seminorm);
}

}  // namespace gevrey
