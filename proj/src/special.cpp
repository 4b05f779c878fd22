#include "manigraph/special.hpp"

#include "manigraph/common.hpp"

#include <algorithm>
#include <cmath>

namespace manigraph {

double normal_cdf(double x) { return 0.5 * std::erfc(-x * 0.70710678118654752440); }

namespace {

// Acklam's rational approximation, accurate to ~1.15e-9 before refinement.
double quantile_initial(double p) {
    static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                -2.759285104469687e+02, 1.383577518672690e+02,
                                -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                -1.556989798598866e+02, 6.680131188771972e+01,
                                -1.328068155288572e+01};
    static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                -2.400758277161838e+00, -2.549732539343734e+00,
                                4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
               (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    }
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

}  // namespace

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal_quantile: p must lie in (0,1)");
    double x = quantile_initial(p);
    // one Halley step against erfc-based Phi brings the estimate to ~1 ulp
    const double e = normal_cdf(x) - p;
    const double u = e * 2.50662827463100050242 * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

std::vector<double> bessel_i_scaled(double x, int mmax) {
    require(x >= 0.0 && mmax >= 0, "bessel_i_scaled: need x >= 0, mmax >= 0");
    std::vector<double> out(static_cast<std::size_t>(mmax) + 1, 0.0);
    if (x == 0.0) {
        out[0] = 1.0;
        return out;
    }
    // e^-x I_m(x) = (1/pi) Int_0^pi e^{x(cos t - 1)} cos(mt) dt. The even
    // periodic extension makes the trapezoid rule spectrally accurate; node
    // count covers both the O(1/sqrt(x)) peak width and the cos(m t) modes.
    const int n = 64 + std::max(5 * static_cast<int>(std::ceil(std::sqrt(x))), 4 * (mmax + 1));
    const double h = 3.14159265358979323846 / n;
    for (int j = 0; j <= n; ++j) {
        const double t = h * j;
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        const double f = w * std::exp(x * (std::cos(t) - 1.0));
        // Chebyshev recurrence for cos(m t)
        const double ct = std::cos(t);
        double cm1 = 1.0, cm = ct;
        out[0] += f;
        if (mmax >= 1) out[1] += f * ct;
        for (int m = 2; m <= mmax; ++m) {
            const double c = 2.0 * ct * cm - cm1;
            cm1 = cm;
            cm = c;
            out[static_cast<std::size_t>(m)] += f * c;
        }
    }
    for (auto& v : out) v *= h / 3.14159265358979323846;
    return out;
}

double bessel_i0_scaled(double x) { return bessel_i_scaled(x, 0)[0]; }

Quadrature gauss_legendre(int n) {
    require(n >= 1, "gauss_legendre: n >= 1");
    Quadrature q;
    q.nodes.resize(static_cast<std::size_t>(n));
    q.weights.resize(static_cast<std::size_t>(n));
    const double pi = 3.14159265358979323846;
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double z = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        q.nodes[static_cast<std::size_t>(i)] = -z;
        q.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
        q.weights[static_cast<std::size_t>(i)] = w;
        q.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) q.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    return q;
}

Quadrature gauss_legendre(int n, double a, double b) {
    Quadrature q = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        q.nodes[i] = mid + half * q.nodes[i];
        q.weights[i] *= half;
    }
    return q;
}

}  // namespace manigraph
