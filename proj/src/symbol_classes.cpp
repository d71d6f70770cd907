#include "gevrey/symbol_classes.hpp"

#include "gevrey/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gevrey {

void SymbolClassParams::validate() const {
    if (!(delta >= 0.0 && delta < rho && rho <= 1.0)) {
        throw std::invalid_argument("SymbolClassParams: need 0 <= delta < rho <= 1");
    }
    if (!(s > 1.0)) throw std::invalid_argument("SymbolClassParams: s must exceed 1");
    if (!(R > 0.0)) throw std::invalid_argument("SymbolClassParams: R must be positive");
    if (!std::isfinite(m)) throw std::invalid_argument("SymbolClassParams: m must be finite");
}

bool SupportBox::contains(const SpatialPoint& x) const {
    if (!bounded()) return true;
    return (x - center).norm() <= radius;
}

double SupportBox::measure(int d) const {
    switch (d) {
        case 1: return 2.0 * radius;
        case 2: return std::numbers::pi * radius * radius;
        default: return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
    }
}

// ---------------------------------------------------------------------------

SampledSymbol::SampledSymbol(const GridSpec& grid, std::vector<complex> values,
                             SymbolClassParams params, SupportBox support,
                             ColumnEvaluator evaluator)
    : grid_(grid),
      values_(std::move(values)),
      params_(params),
      support_(support),
      evaluator_(std::move(evaluator)) {
    if (values_.size() != grid_.size() * grid_.size()) {
        throw std::invalid_argument("SampledSymbol: expected N^d x N^d samples");
    }
    if (support_.center.dim() != grid_.dim()) support_.center = SpatialPoint::zero(grid_.dim());
}

SampledSymbol SampledSymbol::from_function(const GridSpec& grid, const SymbolClassParams& params,
                                           const SupportBox& support, const SymbolFunction& f) {
    const std::size_t n = grid.size();
    std::vector<SpatialPoint> xs(n);
    for (std::size_t j = 0; j < n; ++j) xs[j] = grid.point(j);
    ColumnEvaluator ev = [xs, f](const FrequencyPoint& xi) {
        std::vector<complex> col(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) col[j] = f(xs[j], xi);
        return col;
    };
    std::vector<complex> values(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto col = ev(grid.frequency(k));
        std::copy(col.begin(), col.end(), values.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    return SampledSymbol(grid, std::move(values), params, support, std::move(ev));
}

SampledSymbol SampledSymbol::multiplier(const GridSpec& grid, const SymbolClassParams& params,
                                        const std::function<complex(const FrequencyPoint&)>& p) {
    return from_function(grid, params, SupportBox{SpatialPoint::zero(grid.dim())},
                         [p](const SpatialPoint&, const FrequencyPoint& xi) { return p(xi); });
}

SampledSymbol SampledSymbol::zero(const GridSpec& grid, const SymbolClassParams& params) {
    const std::size_t n = grid.size();
    ColumnEvaluator ev = [n](const FrequencyPoint&) { return std::vector<complex>(n); };
    return SampledSymbol(grid, std::vector<complex>(n * n), params,
                         SupportBox{SpatialPoint::zero(grid.dim()), 0.0}, std::move(ev));
}

std::span<const complex> SampledSymbol::column(std::size_t k) const {
    return std::span<const complex>(values_).subspan(k * grid_.size(), grid_.size());
}

std::vector<complex> SampledSymbol::evaluate_column(const FrequencyPoint& xi) const {
    if (!evaluator_) throw std::logic_error("SampledSymbol: no evaluator for off-lattice frequencies");
    auto col = evaluator_(xi);
    if (col.size() != grid_.size()) throw std::logic_error("SampledSymbol: evaluator returned a column of wrong length");
    return col;
}

std::vector<complex> SampledSymbol::column_spectrum(std::size_t k) const {
    return forward_transform(column(k), grid_);
}

SampledSymbol SampledSymbol::scaled(complex factor) const {
    std::vector<complex> v(values_);
    for (auto& c : v) c *= factor;
    ColumnEvaluator ev;
    if (evaluator_) {
        ev = [inner = evaluator_, factor](const FrequencyPoint& xi) {
            auto col = inner(xi);
            for (auto& c : col) c *= factor;
            return col;
        };
    }
    return SampledSymbol(grid_, std::move(v), params_, support_, std::move(ev));
}

SampledSymbol SampledSymbol::times_multiplier(const std::function<complex(const FrequencyPoint&)>& q,
                                              const SymbolClassParams& params) const {
    std::vector<complex> v(values_);
    const std::size_t n = grid_.size();
    for (std::size_t k = 0; k < n; ++k) {
        const complex f = q(grid_.frequency(k));
        for (std::size_t j = 0; j < n; ++j) v[k * n + j] *= f;
    }
    ColumnEvaluator ev;
    if (evaluator_) {
        ev = [inner = evaluator_, q](const FrequencyPoint& xi) {
            auto col = inner(xi);
            const complex f = q(xi);
            for (auto& c : col) c *= f;
            return col;
        };
    }
    return SampledSymbol(grid_, std::move(v), params, support_, std::move(ev));
}

SampledSymbol SampledSymbol::operator+(const SampledSymbol& other) const {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("SampledSymbol: grid mismatch");
    std::vector<complex> v(values_);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
    SupportBox box = support_;
    if (!support_.bounded() || !other.support_.bounded()) {
        box.radius = std::numeric_limits<double>::infinity();
    } else {
        box.radius = std::max(support_.radius,
                              (other.support_.center - support_.center).norm() + other.support_.radius);
    }
    ColumnEvaluator ev;
    if (evaluator_ && other.evaluator_) {
        ev = [a = evaluator_, b = other.evaluator_](const FrequencyPoint& xi) {
            auto col = a(xi);
            const auto rhs = b(xi);
            for (std::size_t j = 0; j < col.size(); ++j) col[j] += rhs[j];
            return col;
        };
    }
    return SampledSymbol(grid_, std::move(v), params_, box, std::move(ev));
}

// ---------------------------------------------------------------------------

GevreyBump::GevreyBump(double s, SpatialPoint center, double width)
    : s_(s), center_(center), width_(width) {
    if (!(s > 1.0)) throw std::invalid_argument("gevrey_bump: s must exceed 1 (no compactly supported analytic functions)");
    if (!(width > 0.0)) throw std::invalid_argument("gevrey_bump: width must be positive");
}

double GevreyBump::operator()(const SpatialPoint& x) const {
    const double z = (x - center_).norm() / width_;
    if (z >= 1.0) return 0.0;
    const double e = std::pow(1.0 - z * z, -1.0 / (s_ - 1.0));
    return e > kMaxExponent ? 0.0 : std::exp(-e);
}

std::vector<double> GevreyBump::derivatives(double x, int n) const {
    if (center_.dim() != 1) throw std::invalid_argument("GevreyBump::derivatives: one-dimensional only");
    auto d = taylor::unit_bump_derivatives(s_, (x - center_[0]) / width_, n);
    double scale = 1.0;
    for (auto& v : d) {
        v *= scale;
        scale /= width_;
    }
    return d;
}

DerivativeProvider GevreyBump::provider() const {
    return [bump = *this](double x, int n) { return bump.derivatives(x, n); };
}

GevreyBump gevrey_bump(double s, const SpatialPoint& center, double width) {
    return GevreyBump(s, center, width);
}

SampledSymbol canonical_symbol(const SymbolClassParams& params, const GridSpec& grid,
                               double radius, const SpatialPoint& center) {
    params.validate();
    if (!(radius > 0.0)) throw std::invalid_argument("canonical_symbol: radius must be positive");
    if (center.dim() != grid.dim()) throw std::invalid_argument("canonical_symbol: center dimension mismatch");
    for (int a = 0; a < grid.dim(); ++a) {
        if (std::abs(center[a]) + radius >= 0.5 * grid.length()) {
            throw std::invalid_argument("canonical_symbol: support exceeds the grid period");
        }
    }
    const GevreyBump unit(params.s, SpatialPoint::zero(grid.dim()), 1.0);
    const double m = params.m;
    const double delta = params.delta;
    auto f = [unit, m, delta, radius, center](const SpatialPoint& x, const FrequencyPoint& xi) {
        const double b = bracket(xi);
        const double scale = std::pow(b, delta) / radius;
        return complex(std::pow(b, m) * unit(scale * (x - center)), 0.0);
    };
    return SampledSymbol::from_function(grid, params, SupportBox{center, radius}, f);
}

SampledSymbol canonical_symbol(const SymbolClassParams& params, const GridSpec& grid,
                               double radius) {
    return canonical_symbol(params, grid, radius, SpatialPoint::zero(grid.dim()));
}

bool vanishes_outside_support(const SampledSymbol& a) {
    const auto& grid = a.grid();
    if (!a.support().bounded()) return true;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (a.support().contains(grid.point(j))) continue;
        for (std::size_t k = 0; k < grid.size(); ++k) {
            if (a.at(j, k) != complex(0.0, 0.0)) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

void check_orders(const GridSpec& grid, const MultiIndex& alpha, const MultiIndex& beta) {
    for (int a = 0; a < kMaxDim; ++a) {
        const auto i = static_cast<std::size_t>(a);
        if (alpha[i] < 0 || beta[i] < 0) throw std::invalid_argument("symbol derivative: negative multi-index");
        if (a >= grid.dim() && (alpha[i] != 0 || beta[i] != 0)) {
            throw std::invalid_argument("symbol derivative: multi-index exceeds grid dimension");
        }
    }
    if (order(alpha) > kMaxSymbolAlpha) throw std::invalid_argument("symbol derivative: |alpha| above 8");
    if (order(beta) > kMaxSymbolBeta) throw std::invalid_argument("symbol derivative: |beta| above 4 is noise-dominated");
}

double binomial(int n, int k) {
    return std::exp(log_factorial(n) - log_factorial(k) - log_factorial(n - k));
}

// Tensor central-difference stencil: calls visit(offsets in units of the
// per-axis step, weight) for every point.
template <typename Visit>
void for_each_stencil_point(int d, const MultiIndex& beta, Visit&& visit) {
    std::array<int, kMaxDim> j{};
    for (;;) {
        std::array<double, kMaxDim> offset{};
        double weight = 1.0;
        for (int a = 0; a < d; ++a) {
            const auto i = static_cast<std::size_t>(a);
            offset[i] = 0.5 * beta[i] - j[i];
            weight *= ((j[i] % 2) ? -1.0 : 1.0) * binomial(beta[i], j[i]);
        }
        visit(offset, weight);
        int a = 0;
        for (; a < d; ++a) {
            const auto i = static_cast<std::size_t>(a);
            if (++j[i] <= beta[i]) break;
            j[i] = 0;
        }
        if (a == d) return;
    }
}

std::vector<complex> xi_derivative_column(const SampledSymbol& a, const MultiIndex& beta,
                                          std::size_t k) {
    const auto& grid = a.grid();
    const std::size_t n = grid.size();
    if (order(beta) == 0) return {a.column(k).begin(), a.column(k).end()};

    std::vector<complex> out(n);
    const FrequencyPoint xi = grid.frequency(k);
    if (a.has_evaluator()) {
        std::array<double, kMaxDim> h{};
        double norm = 1.0;
        for (int ax = 0; ax < grid.dim(); ++ax) {
            const auto i = static_cast<std::size_t>(ax);
            if (beta[i] == 0) continue;
            h[i] = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (beta[i] + 2)) * bracket(xi);
            norm *= std::pow(h[i], -beta[i]);
        }
        for_each_stencil_point(grid.dim(), beta, [&](const std::array<double, kMaxDim>& off, double w) {
            FrequencyPoint probe = xi;
            for (int ax = 0; ax < grid.dim(); ++ax) {
                const auto i = static_cast<std::size_t>(ax);
                probe[ax] += off[i] * h[i];
            }
            const auto col = a.evaluate_column(probe);
            for (std::size_t j = 0; j < n; ++j) out[j] += w * col[j];
        });
        for (auto& v : out) v *= norm;
        return out;
    }

    // Lattice fallback: step 2Δξ keeps every stencil offset on the lattice.
    const double dxi = grid.frequency_step();
    const auto kv = grid.wavenumbers(k);
    const long half = static_cast<long>(grid.points_per_axis() / 2);
    double norm = 1.0;
    for (int ax = 0; ax < grid.dim(); ++ax) {
        norm *= std::pow(2.0 * dxi, -beta[static_cast<std::size_t>(ax)]);
    }
    bool inside = true;
    for_each_stencil_point(grid.dim(), beta, [&](const std::array<double, kMaxDim>& off, double w) {
        if (!inside) return;
        std::array<long, kMaxDim> probe = kv;
        for (int ax = 0; ax < grid.dim(); ++ax) {
            const auto i = static_cast<std::size_t>(ax);
            probe[i] += static_cast<long>(std::lround(2.0 * off[i]));
            if (probe[i] < -half || probe[i] >= half) inside = false;
        }
        if (!inside) return;
        const auto col = a.column(grid.flat_of_wavenumbers(probe));
        for (std::size_t j = 0; j < n; ++j) out[j] += w * col[j];
    });
    if (!inside) return std::vector<complex>(n, complex(std::nan(""), 0.0));
    for (auto& v : out) v *= norm;
    return out;
}

std::vector<complex> derivative_column(const SampledSymbol& a, const MultiIndex& alpha,
                                       const MultiIndex& beta, std::size_t k) {
    auto col = xi_derivative_column(a, beta, k);
    if (order(alpha) == 0 || std::isnan(col[0].real())) return col;
    const auto& grid = a.grid();
    auto spec = forward_transform(col, grid);
    for (std::size_t q = 0; q < spec.size(); ++q) {
        const auto eta = grid.frequency(q);
        complex f = 1.0;
        for (int ax = 0; ax < grid.dim(); ++ax) {
            for (int r = 0; r < alpha[static_cast<std::size_t>(ax)]; ++r) f *= complex(0.0, eta[ax]);
        }
        spec[q] *= f;
    }
    return inverse_transform_values(spec, grid);
}

}  // namespace

std::vector<complex> symbol_derivative(const SampledSymbol& a, const MultiIndex& alpha,
                                       const MultiIndex& beta) {
    check_orders(a.grid(), alpha, beta);
    const std::size_t n = a.grid().size();
    std::vector<complex> out(n * n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto col = derivative_column(a, alpha, beta, k);
        std::copy(col.begin(), col.end(), out.begin() + static_cast<std::ptrdiff_t>(k * n));
    }
    return out;
}

std::vector<double> normalized_column_sups(const SampledSymbol& a, const MultiIndex& alpha,
                                           const MultiIndex& beta) {
    check_orders(a.grid(), alpha, beta);
    const auto& p = a.params();
    const auto& grid = a.grid();
    const int na = order(alpha);
    const int nb = order(beta);
    const double log_norm =
        -(na + nb) * std::log(p.R) - p.s * log_factorial(na) - log_factorial(nb);
    std::vector<double> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto col = derivative_column(a, alpha, beta, k);
        if (std::isnan(col[0].real())) {
            out[k] = std::nan("");
            continue;
        }
        double sup = 0.0;
        for (const auto& c : col) sup = std::max(sup, std::abs(c));
        const double b = bracket(grid.frequency(k));
        out[k] = sup * std::exp(log_norm + (-p.m + p.rho * nb - p.delta * na) * std::log(b));
    }
    return out;
}

double estimate_seminorm(const SampledSymbol& a, const MultiIndex& alpha, const MultiIndex& beta) {
    double best = 0.0;
    for (double v : normalized_column_sups(a, alpha, beta)) {
        if (!std::isnan(v)) best = std::max(best, v);
    }
    return best;
}

double fit_x_derivative_growth(const SampledSymbol& a, const MultiIndex& alpha, double xi_min) {
    const auto& grid = a.grid();
    check_orders(grid, alpha, MultiIndex{});
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto xi = grid.frequency(k);
        if (xi.norm() < xi_min) continue;
        const auto col = derivative_column(a, alpha, MultiIndex{}, k);
        double sup = 0.0;
        for (const auto& c : col) sup = std::max(sup, std::abs(c));
        if (!(sup > 0.0)) continue;
        const double x = std::log(bracket(xi));
        const double y = std::log(sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) throw std::invalid_argument("fit_x_derivative_growth: not enough frequencies to fit");
    const double den = count * sxx - sx * sx;
    if (!(den > 0.0)) throw std::invalid_argument("fit_x_derivative_growth: degenerate frequency range");
    return (count * sxy - sx * sy) / den;
}

double shell_growth_slope(const GridSpec& grid, std::span<const double> per_xi, int octaves) {
    if (per_xi.size() != grid.size()) throw std::invalid_argument("shell_growth_slope: length mismatch");
    const int top = static_cast<int>(std::floor(std::log2(grid.max_bracket())));
    std::vector<double> best(static_cast<std::size_t>(top) + 1, 0.0);
    std::vector<double> where(best.size(), 0.0);
    for (std::size_t k = 0; k < per_xi.size(); ++k) {
        const double v = per_xi[k];
        if (std::isnan(v) || !(v > 0.0)) continue;
        const double b = bracket(grid.frequency(k));
        const auto o = static_cast<std::size_t>(std::clamp(static_cast<int>(std::floor(std::log2(b))), 0, top));
        if (v > best[o]) {
            best[o] = v;
            where[o] = b;
        }
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int o = top; o >= 0 && o > top - octaves; --o) {
        const auto i = static_cast<std::size_t>(o);
        if (!(best[i] > 0.0)) continue;
        const double x = std::log(where[i]);
        const double y = std::log(best[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count < 2) return 0.0;
    const double den = count * sxx - sx * sx;
    return den > 0.0 ? (count * sxy - sx * sy) / den : 0.0;
}

SeminormTable validate_class_membership(const SampledSymbol& a, int alpha_max, int beta_max) {
    if (alpha_max < 0 || alpha_max > kMaxSymbolAlpha) throw std::invalid_argument("validate_class_membership: alpha_max must lie in [0, 8]");
    if (beta_max < 0 || beta_max > kMaxSymbolBeta) throw std::invalid_argument("validate_class_membership: beta_max must lie in [0, 4]");
    SeminormTable table;
    table.alpha_max = alpha_max;
    table.beta_max = beta_max;
    const int d = a.grid().dim();
    for (int ka = 0; ka <= alpha_max; ++ka) {
        for (const auto& alpha : multi_indices_of_order(d, ka)) {
            for (int kb = 0; kb <= beta_max; ++kb) {
                for (const auto& beta : multi_indices_of_order(d, kb)) {
                    const auto sups = normalized_column_sups(a, alpha, beta);
                    SeminormEntry e;
                    e.alpha = alpha;
                    e.beta = beta;
                    for (double v : sups) {
                        if (!std::isnan(v)) e.value = std::max(e.value, v);
                    }
                    e.growth_slope = shell_growth_slope(a.grid(), sups);
                    table.max_entry = std::max(table.max_entry, e.value);
                    table.max_growth_slope = std::max(table.max_growth_slope, e.growth_slope);
                    if (kb == 0) table.sup_alpha_beta0 = std::max(table.sup_alpha_beta0, e.value);
                    if (!std::isfinite(e.value) || e.growth_slope > kGrowthSlopeThreshold) {
                        table.bounded = false;
                    }
                    table.entries.push_back(e);
                }
            }
        }
    }
    return table;
}

}  // namespace gevrey
