#pragma once

#include "gevrey/spectral_grid.hpp"
#include "gevrey/symbol_classes.hpp"

#include <string>
#include <vector>

namespace gevrey {

enum class Region { R1, R2, R3 };
std::string to_string(Region r);

/// R1: |ξ−η| ≤ |η|/K; R2: |η| ≤ |ξ−η|/K; R3 otherwise. Shared boundaries go
/// to the lower-numbered region.
Region classify_region(const FrequencyPoint& xi, const FrequencyPoint& eta, double K);

struct ConjugationParams {
    double sigma = 0.5;
    double tau = 0.0;
    double m = 0.0;

    void validate() const;
};

/// Spectrum multiplied by e^{τ⟨ξ⟩^σ}; τ may be negative.
SampledFunction apply_weight(const SampledFunction& f, double sigma, double tau);

/// e^{τD^σ}(F · e^{−τD^σ} v), computed in physical space.
SampledFunction conjugated_multiply(const SampledFunction& F, const SampledFunction& v,
                                    const ConjugationParams& params);

/// The same operator as an explicit lattice sum
/// Σ_η e^{τ⟨ξ⟩^σ − τ⟨η⟩^σ} F̂(ξ − η) v̂(η), ξ − η wrapped.
SampledFunction conjugated_multiply_kernel(const SampledFunction& F, const SampledFunction& v,
                                           const ConjugationParams& params);

struct ParaproductSplit {
    SampledFunction r1;
    SampledFunction r2;
    SampledFunction r3;
};

/// The kernel sum restricted to each region; the three parts add up to it.
ParaproductSplit paraproduct_split(const SampledFunction& F, const SampledFunction& v,
                                   const ConjugationParams& params, double K);

/// |F^{(τ)}v|_{H^m} / (|D^m F|_{σ,τ}|v|_{L²} + |F|_{σ,τ}|v|_{H^m}).
double prop31_ratio(const SampledFunction& F, const SampledFunction& v,
                    const ConjugationParams& params);

struct WeightParams {
    double sigma = 0.25;
    double tau = 0.4;
    double tau_prime = 0.2;
    double delta = 0.0;
    double s = 2.0;
};

struct WeightReport {
    double log_value = 0.0;
    /// exp(log_value); NaN when log_value exceeds the overflow threshold.
    double value = 0.0;
    Region region = Region::R1;
    /// Upper bound on log_value for the sample's region.
    double log_bound = 0.0;
    bool bound_holds = true;
};

/// log W = τ′⟨ξ⟩^σ − τ⟨η⟩^σ − τ⟨ξ⟩^{−δ/s}⟨ξ−η⟩^{1/s}.
double log_weight_W(const FrequencyPoint& xi, const FrequencyPoint& eta, const WeightParams& p);

/// Region bounds on log W, with c₁ = K^σ − (K−1)^σ and ε = (1−δ)/s:
///   R1: −(τ − (1+c₁)τ′)⟨η⟩^σ
///   R2: −(τ − c₁τ′)⟨η⟩^σ − (τ(1+1/K)^{−δ/s} − τ′)⟨ξ−η⟩^ε
///   R3: −(τ − τ′)⟨η⟩^σ − (τ(1+K)^{−δ/s} − τ′)⟨ξ−η⟩^ε
double log_weight_bound(Region region, const FrequencyPoint& xi, const FrequencyPoint& eta,
                        const WeightParams& p, double K);

WeightReport weight_W(const FrequencyPoint& xi, const FrequencyPoint& eta, const WeightParams& p,
                      double K);

struct KChoice {
    double K = 2.0;
    double r1_margin = 0.0;  // τ − (1 + K^σ − (K−1)^σ)τ′
    double r2_margin = 0.0;  // τ(1+1/K)^{−δ/s} − τ′
    double r3_coefficient = 0.0;  // τ(1+K)^{−δ/s} − τ′, informational
};

/// Smallest K ∈ {2, 4, 8, ...} with r1_margin and r2_margin both ≥ 1e−6.
KChoice choose_K(double tau, double tau_prime, double sigma, double delta, double s);

enum class ConjugationMode {
    /// e^{τ⟨ξ+η⟩^σ − τ⟨ξ⟩^σ} with ξ + η taken literally.
    Continuum,
    /// ξ + η wrapped onto the lattice box; op_0(ã) then equals
    /// e^{τD^σ} op_0(a) e^{−τD^σ} exactly on the torus.
    Torus
};

/// ã(·, ξ) = inverse x-transform of η ↦ e^{τ⟨ξ+η⟩^σ − τ⟨ξ⟩^σ} â(η, ξ).
/// Keeps an evaluator when a has one.
SampledSymbol conjugated_symbol(const SampledSymbol& a, double sigma, double tau,
                                ConjugationMode mode = ConjugationMode::Continuum);

/// e^{τD^σ} op_0(a) e^{−τD^σ} u, through the direct quadrature.
SampledFunction conjugated_operator_apply(const SampledSymbol& a, const SampledFunction& u,
                                          double sigma, double tau);

struct Lemma51Point {
    double gap = 0.0;        // τ̄ − |τ|
    double tau = 0.0;
    double measured = 0.0;   // sup_{x∈B, ξ} ⟨ξ⟩^{−m+|β|} |∂_x^α ∂_ξ^β ã|
    double curve = 0.0;      // |B|^{1/2} C(τ̄/s R^{1/s}) sup_{α, β′≤β}|a|_{α,β′} gap^{−(2|β|+|α|)/σ}
    double ratio = 0.0;      // measured / curve
};

struct Lemma51Report {
    std::vector<Lemma51Point> points;
    /// Smallest C with measured ≤ C · curve at every gap of the sweep.
    double c_fit = 0.0;
    double max_ratio = 0.0;
    bool envelope_holds = true;
};

/// τ fixed, τ̄ = |τ| + gap for each gap; σ = 1/s. Needs a bounded support
/// box and τ̄ < s R^{−1/s} throughout.
Lemma51Report lemma51_bound_check(const SampledSymbol& a, const MultiIndex& alpha,
                                  const MultiIndex& beta, double tau,
                                  const std::vector<double>& gaps, int alpha_max = 6);

struct ExpansionReport {
    int k = 0;
    /// (⟨ξ⟩, sup_x |R(·, ξ)|) over the fitted frequency range.
    std::vector<std::pair<double, double>> remainder_samples;
    double fitted_order = 0.0;
    double predicted_order = 0.0;
    /// ±1: the expansion uses (sign·i)^{|α|}/α!.
    int sign = -1;
};

/// (sign·i)^{|α|}, sign chosen by a linear-phase probe: for a = e^{iκx}g(ξ)
/// the symbol ã is known in closed form and only one sign matches its first
/// order term.
int calibrate_expansion_sign(const GridSpec& grid, double sigma, double tau);

/// Σ_{|α| ≤ k} ((sign·i)^{|α|}/α!) ∂_x^α a Π_i (τ σ ξ_i ⟨ξ⟩^{σ−2})^{α_i}.
SampledSymbol expansion_partial_sum(const SampledSymbol& a, int k, double sigma, double tau,
                                    int sign);

/// R = ã − partial sum; least-squares slope of log sup_x|R| against log⟨ξ⟩
/// over the top three dyadic octaves of the lattice.
ExpansionReport expansion_remainder(const SampledSymbol& a, int k, double sigma, double tau);

struct FaaDiBrunoReport {
    int order = 1;
    /// max ratio |∂_ξ^β E| / (⟨ξ⟩^{−|β|}⟨η⟩^{2|β|} E) over each nested lattice box.
    std::vector<double> box_limits;
    std::vector<double> fitted_constants;
};

/// d = 1, E(ξ) = e^{τ⟨ξ+η⟩^σ − τ⟨ξ⟩^σ}, ξ-derivatives by central differences,
/// (ξ, η) on the integer lattice inside nested boxes |ξ|, |η| ≤ limit.
FaaDiBrunoReport faa_di_bruno_check(int order, double sigma, double tau,
                                    const std::vector<double>& box_limits);

}  // namespace gevrey
