#pragma once

#include "gevrey/spectral_grid.hpp"

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gevrey {

/// Largest exponent fed to exp() anywhere in the library.
inline constexpr double kMaxExponent = 700.0;

/// Thrown when τ⟨ξ⟩^σ would exceed kMaxExponent somewhere on the lattice.
class WeightOverflow : public std::overflow_error {
public:
    WeightOverflow(const std::string& what, double max_tau)
        : std::overflow_error(what), max_tau_(max_tau) {}
    double max_tau() const { return max_tau_; }

private:
    double max_tau_;
};

/// Throws WeightOverflow if τ·b^σ > kMaxExponent, with b the largest bracket.
void check_weight_overflow(double max_bracket, double sigma, double tau);

struct GevreyParams {
    double s = 2.0;
    double R = 1.0;
    double sigma = 0.5;
    double tau = 0.0;

    /// Basic domains: s > 1, R > 0, σ ∈ (0,1], τ ≥ 0.
    void validate() const;
    /// σ = 1/s and τ < s R^{−1/s}.
    bool embedding_admissible() const;
};

using MultiIndex = std::array<int, kMaxDim>;

int order(const MultiIndex& alpha);
/// All multi-indices of total order k in d variables, lexicographic.
std::vector<MultiIndex> multi_indices_of_order(int d, int k);
double log_factorial(int n);

enum class DerivativeMethod { Analytic, FiniteDifference, Spectral };
std::string to_string(DerivativeMethod method);

/// ∂^α f sampled on the grid.
/// Spectral: multiply by (iξ)^α. FiniteDifference: real-space central
/// differences of order α_a along each axis with step eps^{1/(α_a+2)}·L;
/// the off-grid samples come from the trigonometric interpolant.
std::vector<complex> partial_derivative(const SampledFunction& f, const MultiIndex& alpha,
                                        DerivativeMethod method);

/// Maximum |α| accepted by the finite-difference route.
inline constexpr int kMaxFiniteDifferenceOrder = 8;

struct SeminormEstimate {
    double value = 0.0;
    int orders_checked = 0;
    DerivativeMethod method = DerivativeMethod::Spectral;
    /// M_k = max_{|α|=k} sup_x |∂^α f|, k = 0..orders_checked.
    std::vector<double> order_sups;
};

/// d = 1 derivative oracle: returns f(x), f'(x), ..., f^{(n)}(x).
using DerivativeProvider = std::function<std::vector<double>(double x, int n)>;

/// max_{|α| ≤ α_max} sup_{grid} |∂^α f| / (R^{|α|} |α|!^s).
SeminormEstimate spatial_gevrey_seminorm(const SampledFunction& f, double s, double R,
                                         int alpha_max,
                                         DerivativeMethod method = DerivativeMethod::Spectral);
SeminormEstimate spatial_gevrey_seminorm(const DerivativeProvider& f, const GridSpec& grid,
                                         double s, double R, int alpha_max);

/// Smallest R with M_k ≤ M_0 R^k k!^s for every checked order k ≥ 1.
double fit_gevrey_scale(const SeminormEstimate& estimate, double s);

/// |e^{τ⟨ξ⟩^σ} f̂|_{L²} on the lattice.
double fourier_gevrey_norm(const SampledFunction& f, double sigma, double tau);
/// |⟨ξ⟩^m f̂|_{L²}.
double sobolev_norm(const SampledFunction& f, double m);
/// |⟨ξ⟩^m e^{τ⟨ξ⟩^σ} f̂|_{L²}, i.e. |D^m f|_{σ,τ}.
double gevrey_sobolev_norm(const SampledFunction& f, double m, double sigma, double tau);

/// C(y) for the embedding G^s_R(B) ⊂ 𝒢^{1/s}_τ, y = τ R^{1/s}/s:
///
///   C = e^τ c_s (1 + Σ_{n≥1} n^{(3s−1)/2} y^n)
///
/// n = 0 contributes |û|_{L²} ≤ |B|^{1/2}|u|_{s,R}. For n ≥ 1 put a = n/s,
/// m = ⌊a⌋, θ = a − m. Hölder between |ξ|^m and |ξ|^{m+1} gives
/// |ξ|^a û ≤ |B|^{1/2} |u|_{s,R} R^a (m! (m+1)^θ)^s, and
///
///   (m! (m+1)^θ)^s / (n! σ^n) ≤ c_s n^{(3s−1)/2},
///   c_s = 1.09^{2s} (2π)^{(s−1)/2} (1+σ)^{3s/2},
///
/// from n! ≥ √(2πn)(n/e)^n and m! ≤ 1.09 √(2πm)(m/e)^m. The ratio is
/// largest at n = 1, where it equals s, so c_s is loose but valid.
double embedding_constant(double s, double R, double tau);
/// c_s above.
double embedding_prefactor(double s);

struct EmbeddingReport {
    double lhs = 0.0;       // |f|_{σ,τ}
    double rhs = 0.0;       // |B|^{1/2} C(y) |f|_{s,R}
    double margin = 0.0;    // rhs − lhs
    double constant = 0.0;  // C(y)
    double seminorm = 0.0;  // |f|_{s,R}
    double y = 0.0;
};

/// Checks |f|_{1/s,τ} ≤ |B|^{1/2} C(τ s^{−1} R^{1/s}) |f|_{s,R} for d = 1.
EmbeddingReport verify_embedding(const SampledFunction& f, double s, double R, double tau,
                                 double b_measure, const SeminormEstimate& seminorm);
/// Same, with the seminorm measured spectrally up to order 8.
EmbeddingReport verify_embedding(const SampledFunction& f, double s, double R, double tau,
                                 double b_measure);

}  // namespace gevrey
