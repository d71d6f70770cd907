#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace gevrey {

using complex = std::complex<double>;

inline constexpr int kMaxDim = 3;

/// Real d-vector (d <= 3) used for frequencies ξ, η, ζ and, where convenient,
/// for spatial points.
class FrequencyPoint {
public:
    FrequencyPoint() = default;
    explicit FrequencyPoint(double x) : c_{x, 0.0, 0.0}, dim_(1) {}
    FrequencyPoint(std::initializer_list<double> xs);

    static FrequencyPoint zero(int dim);

    int dim() const { return dim_; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    double norm() const;
    double norm_squared() const;

    friend FrequencyPoint operator+(const FrequencyPoint& a, const FrequencyPoint& b);
    friend FrequencyPoint operator-(const FrequencyPoint& a, const FrequencyPoint& b);
    friend FrequencyPoint operator*(double t, const FrequencyPoint& a);
    friend bool operator==(const FrequencyPoint& a, const FrequencyPoint& b) = default;

private:
    std::array<double, kMaxDim> c_{};
    int dim_ = 1;
};

using SpatialPoint = FrequencyPoint;

/// Japanese bracket ⟨ξ⟩ = (1 + |ξ|²)^{1/2}.
double bracket(const FrequencyPoint& xi);
double bracket(double abs_xi);

/// Periodic grid of N^d points on [−L/2, L/2)^d and its dual lattice
/// (2π/L)·{−N/2, …, N/2−1}^d.
///
/// Flat indices are row-major (axis 0 slowest). Spectra are stored in FFT
/// order along each axis: index i carries wavenumber i for i < N/2 and
/// i − N otherwise.
class GridSpec {
public:
    static GridSpec make(int d, std::size_t n, double length);

    int dim() const { return dim_; }
    std::size_t points_per_axis() const { return n_; }
    double length() const { return length_; }
    double spacing() const { return length_ / static_cast<double>(n_); }
    double frequency_step() const;
    std::size_t size() const { return size_; }

    /// Δ^d, the quadrature weight of one grid cell.
    double cell_volume() const;
    /// L^d, the lattice weight that turns coefficient sums into L² norms.
    double volume() const;

    double coordinate(std::size_t j) const;
    int wavenumber(std::size_t i) const;
    std::size_t index_of_wavenumber(long k) const;

    std::array<std::size_t, kMaxDim> unravel(std::size_t flat) const;
    std::size_t ravel(const std::array<std::size_t, kMaxDim>& idx) const;

    SpatialPoint point(std::size_t flat) const;
    FrequencyPoint frequency(std::size_t flat) const;
    std::array<long, kMaxDim> wavenumbers(std::size_t flat) const;
    /// Flat spectral index of an integer wavenumber vector, wrapped mod N.
    std::size_t flat_of_wavenumbers(const std::array<long, kMaxDim>& k) const;

    /// Largest ⟨ξ⟩ on the lattice (the corner (−N/2, …, −N/2)).
    double max_bracket() const;

    friend bool operator==(const GridSpec& a, const GridSpec& b) = default;

private:
    GridSpec(int d, std::size_t n, double length);

    int dim_ = 1;
    std::size_t n_ = 0;
    double length_ = 0.0;
    std::size_t size_ = 0;
};

/// Forward DFT with the 1/N^d factor: f̂(ξ_k) = N^{−d} Σ_j f(x_j) e^{−i ξ_k·x_j}.
std::vector<complex> forward_transform(std::span<const complex> values, const GridSpec& grid);
/// Inverse of forward_transform: f(x_j) = Σ_k f̂(ξ_k) e^{i ξ_k·x_j}.
std::vector<complex> inverse_transform_values(std::span<const complex> spectrum,
                                              const GridSpec& grid);

/// Complex samples on a grid together with their spectrum. Immutable.
class SampledFunction {
public:
    static SampledFunction from_values(const GridSpec& grid, std::vector<complex> values);
    static SampledFunction from_spectrum(const GridSpec& grid, std::vector<complex> spectrum);
    static SampledFunction sample(const GridSpec& grid,
                                  const std::function<complex(const SpatialPoint&)>& f);
    static SampledFunction zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    std::span<const complex> values() const { return values_; }
    std::span<const complex> spectrum() const { return spectrum_; }

    /// Grid-weighted L² norm (Δ^d Σ |f_j|²)^{1/2}.
    double l2_norm() const;

    /// Evaluate the trigonometric interpolant at an arbitrary point.
    complex interpolate(const SpatialPoint& x) const;

    SampledFunction operator+(const SampledFunction& other) const;
    SampledFunction operator-(const SampledFunction& other) const;
    SampledFunction scaled(complex factor) const;

private:
    SampledFunction(GridSpec grid, std::vector<complex> values, std::vector<complex> spectrum)
        : grid_(grid), values_(std::move(values)), spectrum_(std::move(spectrum)) {}

    GridSpec grid_;
    std::vector<complex> values_;
    std::vector<complex> spectrum_;
};

std::vector<complex> forward_transform(const SampledFunction& f);
SampledFunction inverse_transform(std::vector<complex> spectrum, const GridSpec& grid);

/// Lattice-weighted L² norm (L^d Σ |c_k|²)^{1/2} of a coefficient array.
double spectral_l2_norm(std::span<const complex> spectrum, const GridSpec& grid);

/// Relative L² distance |a − b| / |b| (|a − b| when b vanishes).
double relative_l2_error(std::span<const complex> a, std::span<const complex> b);

}  // namespace gevrey
