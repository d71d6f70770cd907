#include "gevrey/taylor.hpp"

#include <cmath>
#include <stdexcept>

namespace gevrey::taylor {

std::vector<double> power(const std::vector<double>& u, double p) {
    if (u.empty()) return {};
    if (!(u[0] > 0.0)) throw std::domain_error("taylor::power: u_0 must be positive");
    const std::size_t n = u.size();
    std::vector<double> v(n, 0.0);
    v[0] = std::pow(u[0], p);
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= j; ++k) {
            acc += ((p + 1.0) * static_cast<double>(k) - static_cast<double>(j)) * u[k] * v[j - k];
        }
        v[j] = acc / (static_cast<double>(j) * u[0]);
    }
    return v;
}

std::vector<double> exp(const std::vector<double>& w) {
    if (w.empty()) return {};
    const std::size_t n = w.size();
    std::vector<double> e(n, 0.0);
    e[0] = std::exp(w[0]);
    for (std::size_t j = 1; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 1; k <= j; ++k) acc += static_cast<double>(k) * w[k] * e[j - k];
        e[j] = acc / static_cast<double>(j);
    }
    return e;
}

std::vector<double> unit_bump(double s, double z, int n) {
    if (!(s > 1.0)) throw std::invalid_argument("unit_bump: s must exceed 1");
    if (n < 0) throw std::invalid_argument("unit_bump: negative order");
    const auto count = static_cast<std::size_t>(n) + 1;
    std::vector<double> zero(count, 0.0);
    if (std::abs(z) >= 1.0) return zero;

    std::vector<double> u(count, 0.0);
    u[0] = 1.0 - z * z;
    if (count > 1) u[1] = -2.0 * z;
    if (count > 2) u[2] = -1.0;

    const double p = -1.0 / (s - 1.0);
    if (std::pow(u[0], p) > 700.0) return zero;

    auto w = power(u, p);
    for (auto& c : w) c = -c;
    return exp(w);
}

std::vector<double> unit_bump_derivatives(double s, double z, int n) {
    auto c = unit_bump(s, z, n);
    double fact = 1.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        fact *= static_cast<double>(k);
        c[k] *= fact;
    }
    return c;
}

}  // namespace gevrey::taylor
