#include "doctest.h"

#include "manigraph/expr.hpp"
#include "manigraph/rng.hpp"
#include "manigraph/special.hpp"

#include <cmath>

using namespace manigraph;

TEST_CASE("normal cdf and quantile invert each other") {
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
    CHECK(normal_cdf(1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
    CHECK(normal_cdf(-2.0) == doctest::Approx(0.02275013194817921).epsilon(1e-12));
    for (double p : {1e-12, 1e-6, 0.02, 0.3, 0.5, 0.7, 0.975, 1.0 - 1e-10}) {
        const double x = normal_quantile(p);
        CHECK(normal_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK_THROWS(normal_quantile(0.0));
    CHECK_THROWS(normal_quantile(1.0));
}

TEST_CASE("scaled Bessel I agrees with reference values") {
    // I_m(1), I_m(2), I_0(4) from standard tables
    const double e1 = std::exp(-1.0), e2 = std::exp(-2.0), e4 = std::exp(-4.0);
    auto i1 = bessel_i_scaled(1.0, 3);
    CHECK(i1[0] == doctest::Approx(1.2660658777520083 * e1).epsilon(1e-13));
    CHECK(i1[1] == doctest::Approx(0.5651591039924850 * e1).epsilon(1e-13));
    CHECK(i1[2] == doctest::Approx(0.1357476697670383 * e1).epsilon(1e-13));
    auto i2 = bessel_i_scaled(2.0, 1);
    CHECK(i2[0] == doctest::Approx(2.2795853023360673 * e2).epsilon(1e-13));
    CHECK(i2[1] == doctest::Approx(1.5906368546373291 * e2).epsilon(1e-13));
    CHECK(bessel_i0_scaled(4.0) == doctest::Approx(11.301921952136330 * e4).epsilon(1e-13));

    // identity: I0~ + 2 sum Im~ = 1 for any x (modes decay like exp(-m^2/2x))
    for (double x : {0.5, 3.0, 25.0, 400.0}) {
        auto v = bessel_i_scaled(x, 40 + static_cast<int>(9 * std::sqrt(x)));
        double total = v[0];
        for (std::size_t m = 1; m < v.size(); ++m) total += 2.0 * v[m];
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }

    // large argument against the Hankel expansion
    const double x = 3600.0;
    const double asym = (1.0 + 1.0 / (8 * x) + 9.0 / (128 * x * x)) /
                        std::sqrt(2.0 * 3.14159265358979323846 * x);
    CHECK(bessel_i0_scaled(x) == doctest::Approx(asym).epsilon(1e-9));
}

TEST_CASE("Gauss-Legendre integrates polynomials and smooth functions") {
    const Quadrature q = gauss_legendre(8);
    double s = 0.0, sx2 = 0.0;
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        s += q.weights[i];
        sx2 += q.weights[i] * q.nodes[i] * q.nodes[i];
    }
    CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sx2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    // int_0^pi sin = 2
    const Quadrature qs = gauss_legendre(32, 0.0, 3.14159265358979323846);
    double integral = 0.0;
    for (std::size_t i = 0; i < qs.nodes.size(); ++i) integral += qs.weights[i] * std::sin(qs.nodes[i]);
    CHECK(integral == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scale expressions") {
    CHECK(eval_scale_expr("n/2000", 2000) == doctest::Approx(1.0));
    CHECK(eval_scale_expr("sqrt(n)/10", 400) == doctest::Approx(2.0));
    CHECK(eval_scale_expr("3", 17) == doctest::Approx(3.0));
    CHECK(eval_scale_expr("2^3 + n*0.5", 10) == doctest::Approx(13.0));
    CHECK(eval_scale_expr("(n+1)/(n-1)", 3) == doctest::Approx(2.0));
    CHECK_THROWS(eval_scale_expr("n/", 10));
    CHECK_THROWS(eval_scale_expr("foo(n)", 10));
    CHECK_THROWS(eval_scale_expr("1/0", 10));
}

TEST_CASE("rng streams are reproducible and independent of order") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
    const std::uint64_t s1 = derive_stream(7, 0);
    const std::uint64_t s2 = derive_stream(7, 1);
    CHECK(s1 != s2);
    CHECK(derive_stream(7, 0) == s1);

    Rng u(123);
    double mean = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = u.uniform();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        mean += x;
    }
    mean /= n;
    CHECK(std::abs(mean - 0.5) < 4.0 / std::sqrt(12.0 * n));
}
