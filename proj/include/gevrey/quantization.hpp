#pragma once

#include "gevrey/spectral_grid.hpp"
#include "gevrey/symbol_classes.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace gevrey {

/// h = p/q in lowest terms with q ≤ max_q, if one matches to 1e−12.
std::optional<std::pair<long, long>> rational_form(double h, long max_q = 64);
/// h ∈ [0,1] of the form k/2^r.
bool is_dyadic(double h);

/// Largest denominator accepted by the direct quadrature.
inline constexpr long kMaxDirectDenominator = 16;

/// op_h(a)u(x) = ∫∫ e^{i(x−y)·η} a(x − h(x−y), η) u(y) dy dη, discretized
/// on the torus. For h = p/q, with w = x − y:
///
///   op_h u(x_j) = (qN)^{−d} Σ_{η ∈ Λ/q} Σ_{w ∈ Δ·[−qN/2, qN/2)^d}
///                   e^{i w·η} a(x_j − h w, η) u(x_j − w),
///
/// Λ/q being the lattice refined q times (same extent), a(·, η) read off its
/// trigonometric interpolant and u taken periodically. Slow; the reference
/// for the Fourier routes. q > 1 needs the symbol's evaluator.
SampledFunction quantize_direct(const SampledSymbol& a, const SampledFunction& u, double h);

enum class KernelVariant {
    Standard,    // â(ξ − ζ, ζ + h(ξ − ζ))
    SwappedH0,   // h = 0 only: â(ξ − ζ, ξ)
    FlippedSign  // â(ζ − ξ, ζ + h(ξ − ζ))
};

/// F(op_0(a)u)(ξ) = Σ_ζ â(ξ − ζ, ζ) û(ζ), differences wrapped onto the lattice.
SampledFunction quantize_fourier_h0(const SampledSymbol& a, const SampledFunction& u,
                                    KernelVariant variant = KernelVariant::Standard);

/// F(op_h(a)u)(ξ) = Σ_ζ â(θ, η) û(ζ), θ = ξ − ζ, η = hξ + (1−h)ζ = ζ + hθ,
/// η wrapped periodically onto the refined lattice. Dyadic h ∈ (0,1) only.
SampledFunction quantize_fourier_h(const SampledSymbol& a, const SampledFunction& u, double h,
                                   KernelVariant variant = KernelVariant::Standard);

/// Fourier route when h is dyadic, direct quadrature otherwise.
SampledFunction quantize(const SampledSymbol& a, const SampledFunction& u, double h);

struct ActionNormOptions {
    int n_samples = 16;
    /// Largest |wavenumber| per axis carried by the random inputs.
    long band_limit = 16;
    std::uint64_t seed = 1;
    /// Off for the diagnostic that deliberately takes τ′ > τ.
    bool enforce_hypotheses = true;
    /// Orders used for sup_α |a|_{α,0} in the bound.
    int alpha_max = 6;
};

struct OperatorNormReport {
    double empirical_norm = 0.0;
    double bound = 0.0;
    int sample_count = 0;
    double sigma = 0.0;
    double tau = 0.0;
    double tau_prime = 0.0;
    long band_limit = 0;
    std::vector<double> ratios;
};

/// Random input with spectrum e^{−τ⟨k⟩^σ}·(complex gaussian) on |k_i| ≤ band,
/// each coefficient drawn from a stream keyed by (seed, sample, k) so the
/// same input appears on every grid that carries the band.
SampledFunction random_gevrey_input(const GridSpec& grid, double sigma, double tau, long band,
                                    std::uint64_t seed, int sample);

/// max over samples of |op_0(a)u|_{σ,τ′} / |u|_{σ,τ}, with the bound
/// |B|^{1/2} C(τ s^{−1} R^{1/s}) sup_α |a|_{α,0} for comparison.
OperatorNormReport estimate_action_norm(const SampledSymbol& a, double sigma, double tau,
                                        double tau_prime, const ActionNormOptions& options = {});

}  // namespace gevrey
