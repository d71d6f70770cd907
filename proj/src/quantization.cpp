#include "gevrey/quantization.hpp"

#include "fft_backend.hpp"
#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gevrey {

std::optional<std::pair<long, long>> rational_form(double h, long max_q) {
    for (long q = 1; q <= max_q; ++q) {
        const double p = std::round(h * static_cast<double>(q));
        if (std::abs(h * static_cast<double>(q) - p) <= 1e-12 * static_cast<double>(q)) {
            return std::make_pair(static_cast<long>(p), q);
        }
    }
    return std::nullopt;
}

bool is_dyadic(double h) {
    if (!(h >= 0.0 && h <= 1.0)) return false;
    const auto r = rational_form(h, 1L << 20);
    return r && (r->second & (r->second - 1)) == 0;
}

namespace {

void check_same_grid(const SampledSymbol& a, const SampledFunction& u) {
    if (!(a.grid() == u.grid())) throw std::invalid_argument("quantization: symbol and input live on different grids");
}

long wrap(long k, long n) {
    long r = ((k + n / 2) % n + n) % n;
    return r - n / 2;
}

// Refined lattice Λ/q: per-axis integer n ∈ [−qN/2, qN/2) standing for n·Δξ/q,
// flattened row-major with offset qN/2.
struct FineLattice {
    int d;
    long qn;
    std::size_t size;

    FineLattice(int dim, long q, std::size_t n) : d(dim), qn(q * static_cast<long>(n)), size(1) {
        for (int a = 0; a < d; ++a) size *= static_cast<std::size_t>(qn);
    }

    std::array<long, kMaxDim> unravel(std::size_t flat) const {
        std::array<long, kMaxDim> k{};
        for (int a = d - 1; a >= 0; --a) {
            k[static_cast<std::size_t>(a)] = static_cast<long>(flat % static_cast<std::size_t>(qn)) - qn / 2;
            flat /= static_cast<std::size_t>(qn);
        }
        return k;
    }

    std::size_t ravel(const std::array<long, kMaxDim>& k) const {
        std::size_t flat = 0;
        for (int a = 0; a < d; ++a) {
            flat = flat * static_cast<std::size_t>(qn) +
                   static_cast<std::size_t>(wrap(k[static_cast<std::size_t>(a)], qn) + qn / 2);
        }
        return flat;
    }
};

// x-spectra â(·, η) of the symbol at every point of Λ/q.
std::vector<std::vector<complex>> fine_column_spectra(const SampledSymbol& a, long q) {
    const auto& grid = a.grid();
    const FineLattice fine(grid.dim(), q, grid.points_per_axis());
    if (q > 1 && !a.has_evaluator()) {
        throw std::invalid_argument("quantization: h with denominator > 1 needs the symbol's evaluator for off-lattice eta");
    }
    const double step = grid.frequency_step() / static_cast<double>(q);
    std::vector<std::vector<complex>> out(fine.size);
    for (std::size_t e = 0; e < fine.size; ++e) {
        const auto n = fine.unravel(e);
        if (q == 1) {
            out[e] = a.column_spectrum(grid.flat_of_wavenumbers(n));
        } else {
            FrequencyPoint eta = FrequencyPoint::zero(grid.dim());
            for (int ax = 0; ax < grid.dim(); ++ax) eta[ax] = step * static_cast<double>(n[static_cast<std::size_t>(ax)]);
            out[e] = forward_transform(a.evaluate_column(eta), grid);
        }
    }
    return out;
}

SampledFunction fourier_path(const SampledSymbol& a, const SampledFunction& u, long p, long q,
                             KernelVariant variant) {
    check_same_grid(a, u);
    const auto& grid = a.grid();
    const int d = grid.dim();
    const long n = static_cast<long>(grid.points_per_axis());
    const FineLattice fine(d, q, grid.points_per_axis());
    const auto spectra = fine_column_spectra(a, q);
    const auto uhat = u.spectrum();

    std::vector<complex> out(grid.size());
    for (std::size_t kx = 0; kx < grid.size(); ++kx) {
        const auto xi = grid.wavenumbers(kx);
        complex acc{};
        for (std::size_t kz = 0; kz < grid.size(); ++kz) {
            if (uhat[kz] == complex(0.0, 0.0)) continue;
            const auto zeta = grid.wavenumbers(kz);
            std::array<long, kMaxDim> theta{}, eta{}, read{};
            for (int ax = 0; ax < d; ++ax) {
                const auto i = static_cast<std::size_t>(ax);
                theta[i] = wrap(xi[i] - zeta[i], n);
                eta[i] = variant == KernelVariant::SwappedH0 ? xi[i] * q : zeta[i] * q + p * theta[i];
                read[i] = variant == KernelVariant::FlippedSign ? -theta[i] : theta[i];
            }
            acc += spectra[fine.ravel(eta)][grid.flat_of_wavenumbers(read)] * uhat[kz];
        }
        out[kx] = acc;
    }
    return SampledFunction::from_spectrum(grid, std::move(out));
}

// Values of the trigonometric interpolant of a(·, η) on the grid refined q
// times, x_i = −L/2 + iΔ/q.
std::vector<complex> refine_column(std::span<const complex> spectrum, const GridSpec& grid, long q) {
    const int d = grid.dim();
    const long n = static_cast<long>(grid.points_per_axis());
    const long qn = q * n;
    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(qn);
    std::vector<complex> fine(total);
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const auto kv = grid.wavenumbers(k);
        std::size_t flat = 0;
        long parity = 0;
        for (int a = 0; a < d; ++a) {
            const long w = kv[static_cast<std::size_t>(a)];
            flat = flat * static_cast<std::size_t>(qn) + static_cast<std::size_t>((w % qn + qn) % qn);
            parity += w;
        }
        fine[flat] = (parity % 2 != 0) ? -spectrum[k] : spectrum[k];
    }
    detail::fft_inplace(fine, d, static_cast<std::size_t>(qn), detail::FftDirection::Backward);
    return fine;
}

}  // namespace

SampledFunction quantize_direct(const SampledSymbol& a, const SampledFunction& u, double h) {
    check_same_grid(a, u);
    if (!(h >= 0.0 && h <= 1.0)) throw std::invalid_argument("quantize_direct: h must lie in [0,1]");
    const auto pq = rational_form(h, kMaxDirectDenominator);
    if (!pq) {
        std::ostringstream msg;
        msg << "quantize_direct: incommensurable h = " << h << " (denominator above " << kMaxDirectDenominator << ")";
        throw std::invalid_argument(msg.str());
    }
    const long p = pq->first;
    const long q = pq->second;
    const auto& grid = a.grid();
    const int d = grid.dim();
    const long n = static_cast<long>(grid.points_per_axis());
    const long qn = q * n;
    const FineLattice fine(d, q, grid.points_per_axis());
    const auto spectra = fine_column_spectra(a, q);

    std::vector<std::vector<complex>> refined(fine.size);
    for (std::size_t e = 0; e < fine.size; ++e) refined[e] = refine_column(spectra[e], grid, q);

    // e^{i w·η} with w = n_w Δ, η = n_η Δξ/q is a qN-th root of unity.
    std::vector<complex> roots(static_cast<std::size_t>(qn));
    for (long r = 0; r < qn; ++r) {
        roots[static_cast<std::size_t>(r)] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(qn));
    }
    const auto uv = u.values();
    // w = n_w Δ runs over the same index set as η.
    std::vector<std::array<long, kMaxDim>> idx(fine.size);
    for (std::size_t e = 0; e < fine.size; ++e) idx[e] = fine.unravel(e);

    std::vector<complex> out(grid.size());
    for (std::size_t jf = 0; jf < grid.size(); ++jf) {
        const auto j = grid.unravel(jf);
        complex acc{};
        for (std::size_t wf = 0; wf < fine.size; ++wf) {
            const auto& w = idx[wf];
            std::size_t ui = 0, xi_fine = 0;
            for (int ax = 0; ax < d; ++ax) {
                const auto i = static_cast<std::size_t>(ax);
                const long jj = static_cast<long>(j[i]);
                ui = ui * static_cast<std::size_t>(n) + static_cast<std::size_t>(((jj - w[i]) % n + n) % n);
                xi_fine = xi_fine * static_cast<std::size_t>(qn) +
                          static_cast<std::size_t>(((q * jj - p * w[i]) % qn + qn) % qn);
            }
            const complex uval = uv[ui];
            if (uval == complex(0.0, 0.0)) continue;
            complex inner{};
            for (std::size_t e = 0; e < fine.size; ++e) {
                const auto& eta = idx[e];
                long phase = 0;
                for (int ax = 0; ax < d; ++ax) phase += w[static_cast<std::size_t>(ax)] * eta[static_cast<std::size_t>(ax)];
                inner += roots[static_cast<std::size_t>(((phase % qn) + qn) % qn)] * refined[e][xi_fine];
            }
            acc += inner * uval;
        }
        out[jf] = acc / std::pow(static_cast<double>(qn), d);
    }
    return SampledFunction::from_values(grid, std::move(out));
}

SampledFunction quantize_fourier_h0(const SampledSymbol& a, const SampledFunction& u,
                                    KernelVariant variant) {
    return fourier_path(a, u, 0, 1, variant);
}

SampledFunction quantize_fourier_h(const SampledSymbol& a, const SampledFunction& u, double h,
                                   KernelVariant variant) {
    if (!(h > 0.0 && h < 1.0)) throw std::invalid_argument("quantize_fourier_h: h must lie in (0,1)");
    if (variant == KernelVariant::SwappedH0) throw std::invalid_argument("quantize_fourier_h: SwappedH0 applies to h = 0 only");
    if (!is_dyadic(h)) {
        std::ostringstream msg;
        msg << "quantize_fourier_h: incommensurable h = " << h << " (the constraint eta = h xi + (1-h) zeta leaves the dyadic lattice)";
        throw std::invalid_argument(msg.str());
    }
    const auto pq = rational_form(h, 1L << 20);
    return fourier_path(a, u, pq->first, pq->second, variant);
}

SampledFunction quantize(const SampledSymbol& a, const SampledFunction& u, double h) {
    if (!(h >= 0.0 && h <= 1.0)) throw std::invalid_argument("quantize: h must lie in [0,1]");
    if (h == 0.0) return quantize_fourier_h0(a, u);
    if (h < 1.0 && is_dyadic(h)) return quantize_fourier_h(a, u, h);
    return quantize_direct(a, u, h);
}

// ---------------------------------------------------------------------------

SampledFunction random_gevrey_input(const GridSpec& grid, double sigma, double tau, long band,
                                    std::uint64_t seed, int sample) {
    const long half = static_cast<long>(grid.points_per_axis() / 2);
    if (band < 0 || band >= half) throw std::invalid_argument("random_gevrey_input: band limit must lie in [0, N/2)");
    const std::uint64_t base = CounterRng::stream_key(seed, "gevrey-input", static_cast<std::uint64_t>(sample));
    std::vector<complex> spec(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto kv = grid.wavenumbers(k);
        bool inside = true;
        std::uint64_t key = base;
        for (int a = 0; a < grid.dim(); ++a) {
            const long w = kv[static_cast<std::size_t>(a)];
            if (std::abs(w) > band) inside = false;
            key = CounterRng::mix(key ^ static_cast<std::uint64_t>(w + (1L << 20)));
        }
        if (!inside) continue;
        CounterRng rng(key);
        const double re = rng.normal();
        const double im = rng.normal();
        const double weight = std::exp(-tau * std::pow(bracket(grid.frequency(k)), sigma));
        spec[k] = weight * complex(re, im) / std::numbers::sqrt2;
    }
    return SampledFunction::from_spectrum(grid, std::move(spec));
}

OperatorNormReport estimate_action_norm(const SampledSymbol& a, double sigma, double tau,
                                        double tau_prime, const ActionNormOptions& options) {
    const auto& p = a.params();
    if (!(sigma > 0.0 && sigma < 1.0)) throw std::invalid_argument("estimate_action_norm: sigma must lie in (0,1)");
    if (!(tau >= 0.0 && tau_prime >= 0.0)) throw std::invalid_argument("estimate_action_norm: radii must be nonnegative");
    if (options.n_samples < 1) throw std::invalid_argument("estimate_action_norm: need at least one sample");
    const double threshold = p.s * std::pow(p.R, -1.0 / p.s);
    if (options.enforce_hypotheses) {
        if (!(tau_prime < tau)) throw std::invalid_argument("estimate_action_norm: hypothesis tau' < tau violated (loss of Gevrey radius)");
        if (!(tau < threshold)) throw std::invalid_argument("estimate_action_norm: hypothesis tau < s R^(-1/s) violated");
        if (!(sigma <= (1.0 - p.delta) / p.s + 1e-14)) throw std::invalid_argument("estimate_action_norm: hypothesis sigma <= (1-delta)/s violated");
    }
    const double max_b = a.grid().max_bracket();
    check_weight_overflow(max_b, sigma, tau);
    check_weight_overflow(max_b, sigma, tau_prime);

    OperatorNormReport rep;
    rep.sigma = sigma;
    rep.tau = tau;
    rep.tau_prime = tau_prime;
    rep.band_limit = options.band_limit;
    rep.sample_count = options.n_samples;
    for (int i = 0; i < options.n_samples; ++i) {
        const auto u = random_gevrey_input(a.grid(), sigma, tau, options.band_limit, options.seed, i);
        const auto v = quantize_fourier_h0(a, u);
        const double den = fourier_gevrey_norm(u, sigma, tau);
        const double ratio = den > 0.0 ? fourier_gevrey_norm(v, sigma, tau_prime) / den : 0.0;
        rep.ratios.push_back(ratio);
        rep.empirical_norm = std::max(rep.empirical_norm, ratio);
    }

    rep.bound = std::nan("");
    if (tau < threshold && a.support().bounded()) {
        double sup_alpha = 0.0;
        for (int k = 0; k <= options.alpha_max; ++k) {
            for (const auto& alpha : multi_indices_of_order(a.grid().dim(), k)) {
                sup_alpha = std::max(sup_alpha, estimate_seminorm(a, alpha, MultiIndex{}));
            }
        }
        rep.bound = std::sqrt(a.support().measure(a.grid().dim())) *
                    embedding_constant(p.s, p.R, tau) * sup_alpha;
    }
    return rep;
}

}  // namespace gevrey
