#pragma once

#include <vector>

namespace manigraph {

// standard normal CDF / quantile (quantile is exact to ~1 ulp after polish)
double normal_cdf(double x);
double normal_quantile(double p);

// Exponentially scaled modified Bessel functions of the first kind:
// returns { e^-x I_0(x), ..., e^-x I_mmax(x) } for x >= 0. Safe for large x
// (the unscaled I_m overflows past x ~ 709).
std::vector<double> bessel_i_scaled(double x, int mmax);
double bessel_i0_scaled(double x);

struct Quadrature {
    std::vector<double> nodes;    // on [-1, 1], ascending
    std::vector<double> weights;  // sum to 2
};

// Gauss-Legendre rule with n points.
Quadrature gauss_legendre(int n);

// Same rule mapped to [a, b].
Quadrature gauss_legendre(int n, double a, double b);

}  // namespace manigraph
