#include "gevrey/conjugation.hpp"

#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/quantization.hpp"
#include "gevrey/sharp_inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gevrey {

std::string to_string(Region r) {
    switch (r) {
        case Region::R1: return "R1";
        case Region::R2: return "R2";
        case Region::R3: return "R3";
    }
    return "?";
}

Region classify_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K) {
    if (!(K > 1.0)) throw std::invalid_argument("classify_region: K must exceed 1");
    const double diff = (xi - eta).norm();
    const double e = eta.norm();
    if (K * diff <= e) return Region::R1;
    if (K * e <= diff) return Region::R2;
    return Region::R3;
}

void ConjugationParams::validate() const {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("ConjugationParams: sigma must lie in (0,1)");
    if (!(tau >= 0.0)) throw std::invalid_argument("ConjugationParams: tau must be nonnegative");
    if (!(m >= 0.0)) throw std::invalid_argument("ConjugationParams: m must be nonnegative");
}

SampledFunction apply_weight(const SampledFunction& f, double sigma, double tau) {
    if (!(sigma > 0.0 && sigma <= 1.0)) throw std::invalid_argument("apply_weight: sigma must lie in (0,1]");
    const auto& grid = f.grid();
    check_weight_overflow(grid.max_bracket(), sigma, tau);
    std::vector<complex> spec(f.spectrum().begin(), f.spectrum().end());
    for (std::size_t k = 0; k < spec.size(); ++k) {
        spec[k] *= std::exp(tau * std::pow(bracket(grid.frequency(k)), sigma));
    }
    return SampledFunction::from_spectrum(grid, std::move(spec));
}

namespace {

void check_pair(const SampledFunction& F, const SampledFunction& v, const ConjugationParams& p) {
    p.validate();
    if (!(F.grid() == v.grid())) throw std::invalid_argument("conjugated_multiply: grid mismatch");
    check_weight_overflow(F.grid().max_bracket(), p.sigma, p.tau);
}

// Visits (output index, input index, kernel value) of the lattice sum.
template <typename Visit>
void for_each_kernel_term(const SampledFunction& F, const SampledFunction& v,
                          const ConjugationParams& p, Visit&& visit) {
    const auto& grid = F.grid();
    const auto fhat = F.spectrum();
    const auto vhat = v.spectrum();
    std::vector<double> growth(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        growth[k] = p.tau * std::pow(bracket(grid.frequency(k)), p.sigma);
    }
    for (std::size_t kx = 0; kx < grid.size(); ++kx) {
        const auto xi = grid.wavenumbers(kx);
        for (std::size_t ke = 0; ke < grid.size(); ++ke) {
            if (vhat[ke] == complex(0.0, 0.0)) continue;
            const auto eta = grid.wavenumbers(ke);
            std::array<long, kMaxDim> diff{};
            for (int a = 0; a < grid.dim(); ++a) {
                const auto i = static_cast<std::size_t>(a);
                diff[i] = xi[i] - eta[i];
            }
            const std::size_t kd = grid.flat_of_wavenumbers(diff);
            visit(kx, ke, std::exp(growth[kx] - growth[ke]) * fhat[kd] * vhat[ke]);
        }
    }
}

}  // namespace

SampledFunction conjugated_multiply(const SampledFunction& F, const SampledFunction& v,
                                    const ConjugationParams& params) {
    check_pair(F, v, params);
    const auto damped = apply_weight(v, params.sigma, -params.tau);
    std::vector<complex> prod(F.values().size());
    for (std::size_t j = 0; j < prod.size(); ++j) prod[j] = F.values()[j] * damped.values()[j];
    return apply_weight(SampledFunction::from_values(F.grid(), std::move(prod)), params.sigma,
                        params.tau);
}

SampledFunction conjugated_multiply_kernel(const SampledFunction& F, const SampledFunction& v,
                                           const ConjugationParams& params) {
    check_pair(F, v, params);
    std::vector<complex> out(F.grid().size());
    for_each_kernel_term(F, v, params,
                         [&](std::size_t kx, std::size_t, complex term) { out[kx] += term; });
    return SampledFunction::from_spectrum(F.grid(), std::move(out));
}

ParaproductSplit paraproduct_split(const SampledFunction& F, const SampledFunction& v,
                                   const ConjugationParams& params, double K) {
    check_pair(F, v, params);
    const auto& grid = F.grid();
    std::vector<complex> r1(grid.size()), r2(grid.size()), r3(grid.size());
    for_each_kernel_term(F, v, params, [&](std::size_t kx, std::size_t ke, complex term) {
        // Regions use the wrapped difference, the one the lattice sum carries.
        const auto eta = grid.frequency(ke);
        auto dk = grid.wavenumbers(kx);
        const auto ek = grid.wavenumbers(ke);
        for (int a = 0; a < grid.dim(); ++a) dk[static_cast<std::size_t>(a)] -= ek[static_cast<std::size_t>(a)];
        const auto diff = grid.frequency(grid.flat_of_wavenumbers(dk));
        switch (classify_region(eta + diff, eta, K)) {
            case Region::R1: r1[kx] += term; break;
            case Region::R2: r2[kx] += term; break;
            case Region::R3: r3[kx] += term; break;
        }
    });
    return {SampledFunction::from_spectrum(grid, std::move(r1)),
            SampledFunction::from_spectrum(grid, std::move(r2)),
            SampledFunction::from_spectrum(grid, std::move(r3))};
}

double prop31_ratio(const SampledFunction& F, const SampledFunction& v,
                    const ConjugationParams& params) {
    const auto out = conjugated_multiply(F, v, params);
    const double lhs = sobolev_norm(out, params.m);
    const double rhs = gevrey_sobolev_norm(F, params.m, params.sigma, params.tau) * sobolev_norm(v, 0.0) +
                       fourier_gevrey_norm(F, params.sigma, params.tau) * sobolev_norm(v, params.m);
    return rhs > 0.0 ? lhs / rhs : 0.0;
}

// ---------------------------------------------------------------------------

double log_weight_W(const FrequencyPoint& xi, const FrequencyPoint& eta, const WeightParams& p) {
    const double bx = bracket(xi);
    return p.tau_prime * std::pow(bx, p.sigma) - p.tau * std::pow(bracket(eta), p.sigma) -
           p.tau * std::pow(bx, -p.delta / p.s) * std::pow(bracket(xi - eta), 1.0 / p.s);
}

double log_weight_bound(Region region, const FrequencyPoint& xi, const FrequencyPoint& eta,
                        const WeightParams& p, double K) {
    const double c1 = std::pow(K, p.sigma) - std::pow(K - 1.0, p.sigma);
    const double eps = (1.0 - p.delta) / p.s;
    const double be = std::pow(bracket(eta), p.sigma);
    const double bd = std::pow(bracket(xi - eta), eps);
    switch (region) {
        case Region::R1: return -(p.tau - (1.0 + c1) * p.tau_prime) * be;
        case Region::R2:
            return -(p.tau - c1 * p.tau_prime) * be -
                   (p.tau * std::pow(1.0 + 1.0 / K, -p.delta / p.s) - p.tau_prime) * bd;
        case Region::R3:
            return -(p.tau - p.tau_prime) * be -
                   (p.tau * std::pow(1.0 + K, -p.delta / p.s) - p.tau_prime) * bd;
    }
    return 0.0;
}

WeightReport weight_W(const FrequencyPoint& xi, const FrequencyPoint& eta, const WeightParams& p,
                      double K) {
    if (!(p.sigma > 0.0 && p.sigma < 1.0)) throw std::invalid_argument("weight_W: sigma must lie in (0,1)");
    if (!(p.s > 1.0)) throw std::invalid_argument("weight_W: s must exceed 1");
    if (!(p.delta >= 0.0 && p.delta < 1.0)) throw std::invalid_argument("weight_W: delta must lie in [0,1)");
    if (!(p.sigma <= (1.0 - p.delta) / p.s + 1e-14)) throw std::invalid_argument("weight_W: need sigma <= (1-delta)/s");
    WeightReport r;
    r.log_value = log_weight_W(xi, eta, p);
    r.value = r.log_value > kMaxExponent ? std::nan("") : std::exp(r.log_value);
    r.region = classify_region(xi, eta, K);
    r.log_bound = log_weight_bound(r.region, xi, eta, p, K);
    r.bound_holds = r.log_value <= r.log_bound + kIneqTolerance * std::max(1.0, std::abs(r.log_bound));
    return r;
}

KChoice choose_K(double tau, double tau_prime, double sigma, double delta, double s) {
    if (!(tau_prime < tau)) throw std::invalid_argument("choose_K: requires tau' < tau");
    if (!(tau_prime >= 0.0)) throw std::invalid_argument("choose_K: tau' must be nonnegative");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("choose_K: sigma must lie in (0,1)");
    if (!(s > 1.0)) throw std::invalid_argument("choose_K: s must exceed 1");
    constexpr double kMargin = 1e-6;
    for (int e = 1; e <= 60; ++e) {
        KChoice c;
        c.K = std::ldexp(1.0, e);
        c.r1_margin = tau - (1.0 + std::pow(c.K, sigma) - std::pow(c.K - 1.0, sigma)) * tau_prime;
        c.r2_margin = tau * std::pow(1.0 + 1.0 / c.K, -delta / s) - tau_prime;
        c.r3_coefficient = tau * std::pow(1.0 + c.K, -delta / s) - tau_prime;
        if (c.r1_margin >= kMargin && c.r2_margin >= kMargin) return c;
    }
    throw std::runtime_error("choose_K: no K up to 2^60 satisfies the region conditions (tau' too close to tau)");
}

// ---------------------------------------------------------------------------

namespace {

double wrap_frequency(double t, double period) {
    return t - period * std::floor((t + 0.5 * period) / period);
}

std::vector<complex> conjugate_column(std::vector<complex> spec, const GridSpec& grid,
                                      const FrequencyPoint& xi, double sigma, double tau,
                                      ConjugationMode mode) {
    const double period = grid.frequency_step() * static_cast<double>(grid.points_per_axis());
    const double base = tau * std::pow(bracket(xi), sigma);
    for (std::size_t q = 0; q < spec.size(); ++q) {
        if (spec[q] == complex(0.0, 0.0)) continue;
        FrequencyPoint t = xi + grid.frequency(q);
        if (mode == ConjugationMode::Torus) {
            for (int a = 0; a < grid.dim(); ++a) t[a] = wrap_frequency(t[a], period);
        }
        spec[q] *= std::exp(tau * std::pow(bracket(t), sigma) - base);
    }
    return inverse_transform_values(spec, grid);
}

}  // namespace

SampledSymbol conjugated_symbol(const SampledSymbol& a, double sigma, double tau,
                                ConjugationMode mode) {
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("conjugated_symbol: sigma must lie in (0,1)");
    const auto& grid = a.grid();
    // ⟨ξ+η⟩^σ − ⟨ξ⟩^σ ≤ ⟨η⟩^σ, so the lattice corner bounds every exponent.
    check_weight_overflow(grid.max_bracket(), sigma, tau);
    const std::size_t n = grid.size();
    std::vector<complex> values(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto col = conjugate_column(a.column_spectrum(k), grid, grid.frequency(k), sigma, tau, mode);
        std::copy(col.begin(), col.end(), values.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    ColumnEvaluator ev;
    if (a.has_evaluator()) {
        ev = [inner = a.evaluator(), grid, sigma, tau, mode](const FrequencyPoint& xi) {
            return conjugate_column(forward_transform(inner(xi), grid), grid, xi, sigma, tau, mode);
        };
    }
    SymbolClassParams params = a.params();
    params.rho = 1.0;
    params.delta = 0.0;
    SupportBox everywhere{a.support().center};
    return SampledSymbol(grid, std::move(values), params, everywhere, std::move(ev));
}

SampledFunction conjugated_operator_apply(const SampledSymbol& a, const SampledFunction& u,
                                          double sigma, double tau) {
    const auto damped = apply_weight(u, sigma, -tau);
    return apply_weight(quantize_direct(a, damped, 0.0), sigma, tau);
}

// ---------------------------------------------------------------------------

Lemma51Report lemma51_bound_check(const SampledSymbol& a, const MultiIndex& alpha,
                                  const MultiIndex& beta, double tau,
                                  const std::vector<double>& gaps, int alpha_max) {
    const auto& p = a.params();
    const double threshold = p.s * std::pow(p.R, -1.0 / p.s);
    const double sigma = 1.0 / p.s;
    if (!a.support().bounded()) throw std::invalid_argument("lemma51_bound_check: symbol needs a bounded support box");
    if (gaps.empty()) throw std::invalid_argument("lemma51_bound_check: empty gap sweep");

    // Leibniz in ξ puts every β′ ≤ β on a, so the sup runs over those too.
    double sup_a = 0.0;
    for (int b0 = 0; b0 <= beta[0]; ++b0) {
        for (int b1 = 0; b1 <= beta[1]; ++b1) {
            for (int b2 = 0; b2 <= beta[2]; ++b2) {
                const MultiIndex bp{b0, b1, b2};
                for (int k = 0; k <= alpha_max; ++k) {
                    for (const auto& al : multi_indices_of_order(a.grid().dim(), k)) {
                        sup_a = std::max(sup_a, estimate_seminorm(a, al, bp));
                    }
                }
            }
        }
    }
    const auto& grid = a.grid();
    const double b_half = std::sqrt(a.support().measure(grid.dim()));
    const int na = order(alpha);
    const int nb = order(beta);
    const auto at = conjugated_symbol(a, sigma, tau, ConjugationMode::Continuum);
    const auto deriv = symbol_derivative(at, alpha, beta);

    double measured = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = std::pow(bracket(grid.frequency(k)), -p.m + nb);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            if (!a.support().contains(grid.point(j))) continue;
            const complex v = deriv[k * grid.size() + j];
            if (std::isnan(v.real())) continue;
            measured = std::max(measured, w * std::abs(v));
        }
    }

    Lemma51Report rep;
    for (double gap : gaps) {
        const double tau_bar = std::abs(tau) + gap;
        if (!(gap > 0.0 && tau_bar < threshold)) {
            throw std::invalid_argument("lemma51_bound_check: need |tau| < tau_bar < s R^(-1/s)");
        }
        Lemma51Point pt;
        pt.gap = gap;
        pt.tau = tau;
        pt.measured = measured;
        pt.curve = b_half * embedding_constant(p.s, p.R, tau_bar) * sup_a *
                   std::pow(gap, -(2.0 * nb + na) / sigma);
        pt.ratio = pt.curve > 0.0 ? pt.measured / pt.curve : 0.0;
        rep.c_fit = std::max(rep.c_fit, pt.ratio);
        rep.points.push_back(pt);
    }
    rep.max_ratio = rep.c_fit;
    for (const auto& pt : rep.points) {
        if (!(std::isfinite(pt.measured) && pt.measured <= rep.c_fit * pt.curve * (1.0 + 1e-12))) {
            rep.envelope_holds = false;
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

SampledSymbol expansion_partial_sum(const SampledSymbol& a, int k, double sigma, double tau,
                                    int sign) {
    if (k < 0 || k > 3) throw std::invalid_argument("expansion_partial_sum: k must lie in [0,3]");
    if (sign != 1 && sign != -1) throw std::invalid_argument("expansion_partial_sum: sign must be +1 or -1");
    const auto& grid = a.grid();
    const std::size_t n = grid.size();
    std::vector<complex> sum(a.values().begin(), a.values().end());
    const complex unit(0.0, static_cast<double>(sign));
    for (int order_k = 1; order_k <= k; ++order_k) {
        for (const auto& alpha : multi_indices_of_order(grid.dim(), order_k)) {
            const auto dx = symbol_derivative(a, alpha, MultiIndex{});
            double alpha_fact = 1.0;
            for (int v : alpha) alpha_fact *= std::exp(log_factorial(v));
            complex coeff = 1.0 / alpha_fact;
            for (int r = 0; r < order_k; ++r) coeff *= unit;
            for (std::size_t kx = 0; kx < n; ++kx) {
                const auto xi = grid.frequency(kx);
                const double b = bracket(xi);
                double factor = 1.0;
                for (int ax = 0; ax < grid.dim(); ++ax) {
                    const double g = tau * sigma * xi[ax] * std::pow(b, sigma - 2.0);
                    factor *= std::pow(g, alpha[static_cast<std::size_t>(ax)]);
                }
                for (std::size_t j = 0; j < n; ++j) sum[kx * n + j] += coeff * factor * dx[kx * n + j];
            }
        }
    }
    return SampledSymbol(grid, std::move(sum), a.params(), a.support());
}

int calibrate_expansion_sign(const GridSpec& grid, double sigma, double tau) {
    const double kappa = grid.frequency_step();
    SymbolClassParams params;
    const auto probe = SampledSymbol::from_function(
        grid, params, SupportBox{SpatialPoint::zero(grid.dim())},
        [kappa](const SpatialPoint& x, const FrequencyPoint&) { return std::polar(1.0, kappa * x[0]); });
    const auto exact = conjugated_symbol(probe, sigma, tau, ConjugationMode::Continuum);
    double best = std::numeric_limits<double>::infinity();
    int chosen = -1;
    for (int sign : {-1, 1}) {
        const auto approx = expansion_partial_sum(probe, 1, sigma, tau, sign);
        const double err = relative_l2_error(approx.values(), exact.values());
        if (err < best) {
            best = err;
            chosen = sign;
        }
    }
    return chosen;
}

ExpansionReport expansion_remainder(const SampledSymbol& a, int k, double sigma, double tau) {
    if (k < 0 || k > 3) throw std::invalid_argument("expansion_remainder: k must lie in [0,3]");
    const auto& grid = a.grid();
    const double top = grid.max_bracket();
    const double low = top / 8.0;
    if (low < 2.0) throw std::invalid_argument("expansion_remainder: frequency range too short for a three-octave fit");

    ExpansionReport rep;
    rep.k = k;
    rep.sign = calibrate_expansion_sign(grid, sigma, tau);
    rep.predicted_order = std::max(a.params().m - (k + 1) * (1.0 - sigma), a.params().m - 2.0 + sigma);

    const auto exact = conjugated_symbol(a, sigma, tau, ConjugationMode::Continuum);
    const auto partial = expansion_partial_sum(a, k, sigma, tau, rep.sign);
    const std::size_t n = grid.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t kx = 0; kx < n; ++kx) {
        const double b = bracket(grid.frequency(kx));
        if (b < low) continue;
        double sup = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            sup = std::max(sup, std::abs(exact.at(j, kx) - partial.at(j, kx)));
        }
        rep.remainder_samples.emplace_back(b, sup);
        if (!(sup > 0.0)) continue;
        const double x = std::log(b);
        const double y = std::log(sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    std::sort(rep.remainder_samples.begin(), rep.remainder_samples.end());
    if (count < 2) {
        rep.fitted_order = -std::numeric_limits<double>::infinity();
    } else {
        rep.fitted_order = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    }
    return rep;
}

// ---------------------------------------------------------------------------

FaaDiBrunoReport faa_di_bruno_check(int order_beta, double sigma, double tau,
                                    const std::vector<double>& box_limits) {
    if (order_beta < 1 || order_beta > 2) throw std::invalid_argument("faa_di_bruno_check: order must be 1 or 2");
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("faa_di_bruno_check: sigma must lie in (0,1)");
    FaaDiBrunoReport rep;
    rep.order = order_beta;
    rep.box_limits = box_limits;
    auto logE = [sigma, tau](double xi, double eta) {
        return tau * (std::pow(bracket(xi + eta), sigma) - std::pow(bracket(xi), sigma));
    };
    for (double limit : box_limits) {
        const long lim = static_cast<long>(limit);
        double best = 0.0;
        for (long xi = -lim; xi <= lim; ++xi) {
            const double bx = bracket(static_cast<double>(xi));
            const double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (order_beta + 2)) * bx;
            for (long eta = -lim; eta <= lim; ++eta) {
                const double x = static_cast<double>(xi);
                const double e = static_cast<double>(eta);
                const double base = logE(x, e);
                // Derivatives of E divided by E, from E(ξ ± ...) / E(ξ).
                double d;
                if (order_beta == 1) {
                    d = (std::exp(logE(x + 0.5 * h, e) - base) - std::exp(logE(x - 0.5 * h, e) - base)) / h;
                } else {
                    d = (std::exp(logE(x + h, e) - base) - 2.0 + std::exp(logE(x - h, e) - base)) / (h * h);
                }
                const double scale = std::pow(bx, -order_beta) * std::pow(bracket(e), 2.0 * order_beta);
                best = std::max(best, std::abs(d) / scale);
            }
        }
        rep.fitted_constants.push_back(best);
    }
    return rep;
}

}  // namespace gevrey
