#include "gevrey/spectral_grid.hpp"

#include "fft_backend.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gevrey {

FrequencyPoint::FrequencyPoint(std::initializer_list<double> xs) {
    if (xs.size() < 1 || xs.size() > static_cast<std::size_t>(kMaxDim)) {
        throw std::invalid_argument("FrequencyPoint: dimension must be 1, 2 or 3");
    }
    dim_ = static_cast<int>(xs.size());
    std::copy(xs.begin(), xs.end(), c_.begin());
}

FrequencyPoint FrequencyPoint::zero(int dim) {
    if (dim < 1 || dim > kMaxDim) {
        throw std::invalid_argument("FrequencyPoint: dimension must be 1, 2 or 3");
    }
    FrequencyPoint p;
    p.dim_ = dim;
    return p;
}

double FrequencyPoint::norm_squared() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)];
    return s;
}

double FrequencyPoint::norm() const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s = std::hypot(s, c_[static_cast<std::size_t>(i)]);
    return s;
}

FrequencyPoint operator+(const FrequencyPoint& a, const FrequencyPoint& b) {
    FrequencyPoint r = FrequencyPoint::zero(a.dim_);
    for (std::size_t i = 0; i < kMaxDim; ++i) r.c_[i] = a.c_[i] + b.c_[i];
    return r;
}

FrequencyPoint operator-(const FrequencyPoint& a, const FrequencyPoint& b) {
    FrequencyPoint r = FrequencyPoint::zero(a.dim_);
    for (std::size_t i = 0; i < kMaxDim; ++i) r.c_[i] = a.c_[i] - b.c_[i];
    return r;
}

FrequencyPoint operator*(double t, const FrequencyPoint& a) {
    FrequencyPoint r = FrequencyPoint::zero(a.dim_);
    for (std::size_t i = 0; i < kMaxDim; ++i) r.c_[i] = t * a.c_[i];
    return r;
}

double bracket(double abs_xi) { return std::hypot(1.0, abs_xi); }

double bracket(const FrequencyPoint& xi) { return std::sqrt(1.0 + xi.norm_squared()); }

// ---------------------------------------------------------------------------

GridSpec::GridSpec(int d, std::size_t n, double length) : dim_(d), n_(n), length_(length) {
    size_ = 1;
    for (int a = 0; a < d; ++a) size_ *= n;
}

GridSpec GridSpec::make(int d, std::size_t n, double length) {
    if (d < 1 || d > kMaxDim) {
        throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3, got " + std::to_string(d));
    }
    if (n < 4 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("GridSpec: N must be a power of two >= 4, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw std::invalid_argument("GridSpec: period length must be positive and finite");
    }
    return GridSpec(d, n, length);
}

double GridSpec::frequency_step() const { return 2.0 * std::numbers::pi / length_; }

double GridSpec::cell_volume() const { return std::pow(spacing(), dim_); }

double GridSpec::volume() const { return std::pow(length_, dim_); }

double GridSpec::coordinate(std::size_t j) const {
    return -0.5 * length_ + static_cast<double>(j) * spacing();
}

int GridSpec::wavenumber(std::size_t i) const {
    const auto half = n_ / 2;
    return i < half ? static_cast<int>(i) : static_cast<int>(i) - static_cast<int>(n_);
}

std::size_t GridSpec::index_of_wavenumber(long k) const {
    const long n = static_cast<long>(n_);
    long r = k % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
}

std::array<std::size_t, kMaxDim> GridSpec::unravel(std::size_t flat) const {
    std::array<std::size_t, kMaxDim> idx{};
    for (int a = dim_ - 1; a >= 0; --a) {
        idx[static_cast<std::size_t>(a)] = flat % n_;
        flat /= n_;
    }
    return idx;
}

std::size_t GridSpec::ravel(const std::array<std::size_t, kMaxDim>& idx) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) flat = flat * n_ + idx[static_cast<std::size_t>(a)];
    return flat;
}

SpatialPoint GridSpec::point(std::size_t flat) const {
    const auto idx = unravel(flat);
    SpatialPoint p = SpatialPoint::zero(dim_);
    for (int a = 0; a < dim_; ++a) p[a] = coordinate(idx[static_cast<std::size_t>(a)]);
    return p;
}

FrequencyPoint GridSpec::frequency(std::size_t flat) const {
    const auto idx = unravel(flat);
    FrequencyPoint p = FrequencyPoint::zero(dim_);
    const double step = frequency_step();
    for (int a = 0; a < dim_; ++a) p[a] = step * wavenumber(idx[static_cast<std::size_t>(a)]);
    return p;
}

std::array<long, kMaxDim> GridSpec::wavenumbers(std::size_t flat) const {
    const auto idx = unravel(flat);
    std::array<long, kMaxDim> k{};
    for (int a = 0; a < dim_; ++a) k[static_cast<std::size_t>(a)] = wavenumber(idx[static_cast<std::size_t>(a)]);
    return k;
}

std::size_t GridSpec::flat_of_wavenumbers(const std::array<long, kMaxDim>& k) const {
    std::array<std::size_t, kMaxDim> idx{};
    for (int a = 0; a < dim_; ++a) idx[static_cast<std::size_t>(a)] = index_of_wavenumber(k[static_cast<std::size_t>(a)]);
    return ravel(idx);
}

double GridSpec::max_bracket() const {
    const double corner = frequency_step() * static_cast<double>(n_ / 2);
    return std::sqrt(1.0 + dim_ * corner * corner);
}

// ---------------------------------------------------------------------------

namespace {

void check_length(std::size_t got, const GridSpec& grid, const char* what) {
    if (got != grid.size()) {
        throw std::invalid_argument(std::string(what) + ": array length " + std::to_string(got) +
                                    " does not match grid size " + std::to_string(grid.size()));
    }
}

// (−1)^{Σ i_a}: the phase that moves the FFT origin to x = −L/2.
void apply_centering_phase(std::span<complex> data, const GridSpec& grid) {
    for (std::size_t f = 0; f < data.size(); ++f) {
        const auto idx = grid.unravel(f);
        std::size_t parity = 0;
        for (int a = 0; a < grid.dim(); ++a) parity += idx[static_cast<std::size_t>(a)];
        if (parity & 1U) data[f] = -data[f];
    }
}

}  // namespace

std::vector<complex> forward_transform(std::span<const complex> values, const GridSpec& grid) {
    check_length(values.size(), grid, "forward_transform");
    std::vector<complex> out(values.begin(), values.end());
    detail::fft_inplace(out, grid.dim(), grid.points_per_axis(), detail::FftDirection::Forward);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (auto& c : out) c *= scale;
    apply_centering_phase(out, grid);
    return out;
}

std::vector<complex> inverse_transform_values(std::span<const complex> spectrum,
                                              const GridSpec& grid) {
    check_length(spectrum.size(), grid, "inverse_transform");
    std::vector<complex> out(spectrum.begin(), spectrum.end());
    apply_centering_phase(out, grid);
    detail::fft_inplace(out, grid.dim(), grid.points_per_axis(), detail::FftDirection::Backward);
    return out;
}

SampledFunction SampledFunction::from_values(const GridSpec& grid, std::vector<complex> values) {
    check_length(values.size(), grid, "SampledFunction");
    auto spectrum = forward_transform(values, grid);
    return SampledFunction(grid, std::move(values), std::move(spectrum));
}

SampledFunction SampledFunction::from_spectrum(const GridSpec& grid, std::vector<complex> spectrum) {
    check_length(spectrum.size(), grid, "SampledFunction");
    auto values = inverse_transform_values(spectrum, grid);
    return SampledFunction(grid, std::move(values), std::move(spectrum));
}

SampledFunction SampledFunction::sample(const GridSpec& grid,
                                        const std::function<complex(const SpatialPoint&)>& f) {
    std::vector<complex> values(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) values[j] = f(grid.point(j));
    return from_values(grid, std::move(values));
}

SampledFunction SampledFunction::zero(const GridSpec& grid) {
    return SampledFunction(grid, std::vector<complex>(grid.size()), std::vector<complex>(grid.size()));
}

double SampledFunction::l2_norm() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return std::sqrt(s * grid_.cell_volume());
}

complex SampledFunction::interpolate(const SpatialPoint& x) const {
    complex acc{};
    for (std::size_t k = 0; k < spectrum_.size(); ++k) {
        const auto xi = grid_.frequency(k);
        double phase = 0.0;
        for (int a = 0; a < grid_.dim(); ++a) phase += xi[a] * x[a];
        acc += spectrum_[k] * std::polar(1.0, phase);
    }
    return acc;
}

SampledFunction SampledFunction::operator+(const SampledFunction& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("SampledFunction: grid mismatch");
    std::vector<complex> v(values_.size()), s(values_.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = values_[i] + other.values_[i];
        s[i] = spectrum_[i] + other.spectrum_[i];
    }
    return SampledFunction(grid_, std::move(v), std::move(s));
}

SampledFunction SampledFunction::operator-(const SampledFunction& other) const {
    return *this + other.scaled(-1.0);
}

SampledFunction SampledFunction::scaled(complex factor) const {
    std::vector<complex> v(values_), s(spectrum_);
    for (auto& c : v) c *= factor;
    for (auto& c : s) c *= factor;
    return SampledFunction(grid_, std::move(v), std::move(s));
}

std::vector<complex> forward_transform(const SampledFunction& f) {
    return {f.spectrum().begin(), f.spectrum().end()};
}

SampledFunction inverse_transform(std::vector<complex> spectrum, const GridSpec& grid) {
    return SampledFunction::from_spectrum(grid, std::move(spectrum));
}

double spectral_l2_norm(std::span<const complex> spectrum, const GridSpec& grid) {
    check_length(spectrum.size(), grid, "spectral_l2_norm");
    double s = 0.0;
    for (const auto& c : spectrum) s += std::norm(c);
    return std::sqrt(s * grid.volume());
}

double relative_l2_error(std::span<const complex> a, std::span<const complex> b) {
    if (a.size() != b.size()) throw std::invalid_argument("relative_l2_error: length mismatch");
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::norm(a[i] - b[i]);
        den += std::norm(b[i]);
    }
    return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace gevrey
