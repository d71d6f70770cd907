#pragma once

#include <vector>

namespace gevrey::taylor {

// Truncated Taylor arithmetic on coefficient vectors c_0..c_n (c_k = f^{(k)}/k!).

/// Coefficients of u^p given those of u; requires u_0 > 0.
std::vector<double> power(const std::vector<double>& u, double p);

/// Coefficients of exp(w).
std::vector<double> exp(const std::vector<double>& w);

/// Taylor coefficients at z of the unit bump exp(−(1 − z²)^{−1/(s−1)}), orders 0..n.
/// Zero outside |z| < 1 and wherever the exponent is below −700.
std::vector<double> unit_bump(double s, double z, int n);

/// Derivatives (not coefficients) of the same bump, orders 0..n.
std::vector<double> unit_bump_derivatives(double s, double z, int n);

}  // namespace gevrey::taylor
