#pragma once

#include "gevrey/gevrey_spaces.hpp"
#include "gevrey/spectral_grid.hpp"

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gevrey {

/// Membership data for S^m_{ρ,δ} G^s_R. δ = 0 is admitted.
struct SymbolClassParams {
    double m = 0.0;
    double rho = 1.0;
    double delta = 0.0;
    double s = 2.0;
    double R = 1.0;

    void validate() const;
};

/// Closed ball {|x − center| ≤ radius}; an infinite radius means no support
/// restriction (used by x-independent symbols).
struct SupportBox {
    SpatialPoint center;
    double radius = std::numeric_limits<double>::infinity();

    bool bounded() const { return radius < std::numeric_limits<double>::infinity(); }
    bool contains(const SpatialPoint& x) const;
    /// Lebesgue measure of the ball in dimension d.
    double measure(int d) const;
};

/// a(·, ξ) sampled on every grid point, for an arbitrary ξ.
using ColumnEvaluator = std::function<std::vector<complex>(const FrequencyPoint& xi)>;
/// Pointwise symbol a(x, ξ).
using SymbolFunction = std::function<complex(const SpatialPoint& x, const FrequencyPoint& xi)>;

/// Samples a(x_j, ξ_k) on grid × lattice, stored ξ-major: value(j, k) lives at
/// k·N^d + j, so each column a(·, ξ_k) is contiguous.
class SampledSymbol {
public:
    SampledSymbol(const GridSpec& grid, std::vector<complex> values, SymbolClassParams params,
                  SupportBox support, ColumnEvaluator evaluator = {});

    /// Samples f and keeps it as the off-lattice evaluator.
    static SampledSymbol from_function(const GridSpec& grid, const SymbolClassParams& params,
                                       const SupportBox& support, const SymbolFunction& f);
    /// x-independent symbol p(ξ).
    static SampledSymbol multiplier(const GridSpec& grid, const SymbolClassParams& params,
                                    const std::function<complex(const FrequencyPoint&)>& p);
    static SampledSymbol zero(const GridSpec& grid, const SymbolClassParams& params);

    const GridSpec& grid() const { return grid_; }
    const SymbolClassParams& params() const { return params_; }
    const SupportBox& support() const { return support_; }
    std::span<const complex> values() const { return values_; }
    std::span<const complex> column(std::size_t k) const;
    complex at(std::size_t j, std::size_t k) const { return values_[k * grid_.size() + j]; }

    bool has_evaluator() const { return static_cast<bool>(evaluator_); }
    const ColumnEvaluator& evaluator() const { return evaluator_; }
    /// a(·, ξ) at any ξ; throws std::logic_error without an evaluator.
    std::vector<complex> evaluate_column(const FrequencyPoint& xi) const;

    /// x-spectrum â(·, ξ_k) of column k.
    std::vector<complex> column_spectrum(std::size_t k) const;

    SampledSymbol scaled(complex factor) const;
    /// Product with an x-independent factor q(ξ), evaluator included.
    SampledSymbol times_multiplier(const std::function<complex(const FrequencyPoint&)>& q,
                                   const SymbolClassParams& params) const;
    SampledSymbol operator+(const SampledSymbol& other) const;

private:
    GridSpec grid_;
    std::vector<complex> values_;
    SymbolClassParams params_;
    SupportBox support_;
    ColumnEvaluator evaluator_;
};

/// ψ_s(x) = exp(−(1 − |(x − c)/w|²)^{−1/(s−1)}) inside the ball, 0 outside.
class GevreyBump {
public:
    GevreyBump(double s, SpatialPoint center, double width);

    double operator()(const SpatialPoint& x) const;
    /// d = 1: ψ^{(k)}(x) for k = 0..n, from Taylor-mode recurrences.
    std::vector<double> derivatives(double x, int n) const;
    DerivativeProvider provider() const;

    double s() const { return s_; }
    const SpatialPoint& center() const { return center_; }
    double width() const { return width_; }

private:
    double s_;
    SpatialPoint center_;
    double width_;
};

GevreyBump gevrey_bump(double s, const SpatialPoint& center, double width);

/// a(x, ξ) = ⟨ξ⟩^m ψ_s(⟨ξ⟩^δ |x − center| / r), zero for |x − center| ≥ r⟨ξ⟩^{−δ}.
/// Its x-Gevrey radius shrinks like ⟨ξ⟩^{−δ}. Requires r < L/2.
SampledSymbol canonical_symbol(const SymbolClassParams& params, const GridSpec& grid,
                               double radius, const SpatialPoint& center);
SampledSymbol canonical_symbol(const SymbolClassParams& params, const GridSpec& grid,
                               double radius = 1.0);

/// True if every sample outside the support box is exactly zero.
bool vanishes_outside_support(const SampledSymbol& a);

/// ∂_x^α ∂_ξ^β a on the whole grid × lattice (same layout as values()).
/// x-derivatives are spectral. ξ-derivatives are central differences:
/// through the evaluator with step eps^{1/(|β_i|+2)}⟨ξ⟩ when present,
/// otherwise on the lattice with step 2·(2π/L), skipping columns whose
/// stencil leaves the lattice (those entries are NaN).
std::vector<complex> symbol_derivative(const SampledSymbol& a, const MultiIndex& alpha,
                                       const MultiIndex& beta);

inline constexpr int kMaxSymbolAlpha = 8;
inline constexpr int kMaxSymbolBeta = 4;

/// sup over grid of |∂_x^α ∂_ξ^β a| R^{−|α+β|} |α|!^{−s} |β|!^{−1} ⟨ξ⟩^{−m+ρ|β|−δ|α|}.
double estimate_seminorm(const SampledSymbol& a, const MultiIndex& alpha, const MultiIndex& beta);

/// Per-ξ normalized sup over x of the seminorm integrand (NaN where undefined).
std::vector<double> normalized_column_sups(const SampledSymbol& a, const MultiIndex& alpha,
                                           const MultiIndex& beta);

/// Least-squares slope of log(sup_x |∂_x^α a(·, ξ)|) against log⟨ξ⟩ over
/// lattice points with |ξ| ≥ xi_min.
double fit_x_derivative_growth(const SampledSymbol& a, const MultiIndex& alpha, double xi_min = 1.0);

/// Log-log slope of per-octave maxima of `per_xi` against ⟨ξ⟩ over the top
/// `octaves` dyadic shells of the lattice.
double shell_growth_slope(const GridSpec& grid, std::span<const double> per_xi, int octaves = 3);

struct SeminormEntry {
    MultiIndex alpha{};
    MultiIndex beta{};
    double value = 0.0;
    double growth_slope = 0.0;
};

struct SeminormTable {
    std::vector<SeminormEntry> entries;
    int alpha_max = 0;
    int beta_max = 0;
    double max_entry = 0.0;
    double sup_alpha_beta0 = 0.0;  // sup_α |a|_{α,0}
    double max_growth_slope = 0.0;
    bool bounded = true;
};

/// Normalized entries whose shell maxima still grow with slope above this
/// are flagged as outside the declared class.
inline constexpr double kGrowthSlopeThreshold = 0.5;

SeminormTable validate_class_membership(const SampledSymbol& a, int alpha_max, int beta_max);

/// Text format, see docs/symbol_format.md.
void write_symbol(const std::string& path, const SampledSymbol& a);
SampledSymbol read_symbol(const std::string& path);

}  // namespace gevrey
