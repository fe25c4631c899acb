#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "dipolab/bessel.hpp"

using dipolab::radial::bessel_j;
using dipolab::radial::bessel_j_zero;

namespace {

// Independent oracle for integer order: J_n(x) = (1/pi) int_0^pi
// cos(n t - x sin t) dt, by composite Simpson.  Not used by the library.
double bessel_integral_oracle(int n, double x) {
    const int panels = 20000;
    const double h = M_PI / panels;
    double sum = std::cos(-0.0) + std::cos(n * M_PI);
    for (int i = 1; i < panels; ++i) {
        const double t = i * h;
        sum += (i % 2 ? 4.0 : 2.0) * std::cos(n * t - x * std::sin(t));
    }
    return sum * h / (3.0 * M_PI);
}

}  // namespace

TEST_CASE("series agrees with the integral-representation oracle") {
    for (int n = 0; n <= 3; ++n) {
        for (double x : {0.1, 0.5, 1.0, 2.0, 4.7, 7.3, 11.6}) {
            const double want = bessel_integral_oracle(n, x);
            CHECK(bessel_j(n, x) == doctest::Approx(want).epsilon(5e-13));
        }
    }
    CHECK(bessel_j(1.0, 2.0) == doctest::Approx(0.5767248077568736).epsilon(1e-12));
    CHECK(bessel_j(0.0, 1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-12));
}

TEST_CASE("half-integer order has the closed form sqrt(2/(pi x)) sin x") {
    for (double x : {0.3, 1.0, 2.0, 3.0, 5.5, 9.1}) {
        const double want = std::sqrt(2.0 / (M_PI * x)) * std::sin(x);
        CHECK(bessel_j(0.5, x) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK(std::fabs(bessel_j(0.5, M_PI)) < 1e-13);
}

TEST_CASE("limits and domain") {
    CHECK(bessel_j(0.0, 0.0) == 1.0);
    CHECK(bessel_j(1.0, 0.0) == 0.0);
    CHECK(bessel_j(0.0, 1e-8) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(bessel_j(-0.5, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), std::domain_error);
}

TEST_CASE("zeros of J_0 and J_1") {
    CHECK(bessel_j_zero(0.0, 1) == doctest::Approx(2.4048255576957724).epsilon(1e-10));
    CHECK(bessel_j_zero(0.0, 2) == doctest::Approx(5.520078110286311).epsilon(1e-10));
    CHECK(bessel_j_zero(0.0, 3) == doctest::Approx(8.653727912911013).epsilon(1e-10));
    CHECK(bessel_j_zero(1.0, 1) == doctest::Approx(3.8317059702075125).epsilon(1e-10));
    CHECK(bessel_j_zero(2.0, 1) == doctest::Approx(5.135622301840683).epsilon(1e-10));
    CHECK(bessel_j_zero(2.0, 3) == doctest::Approx(11.61984117214906).epsilon(1e-10));
}

TEST_CASE("zeros of J_{1/2} are n pi") {
    for (int n = 1; n <= 5; ++n)
        CHECK(bessel_j_zero(0.5, n) == doctest::Approx(n * M_PI).epsilon(1e-10));
}

TEST_CASE("the function vanishes at its computed zeros") {
    for (double nu : {0.0, 0.7, 1.0, 2.0}) {
        for (int n = 1; n <= 3; ++n) {
            const double z = bessel_j_zero(nu, n);
            CHECK(std::fabs(bessel_j(nu, z)) < 1e-10);
        }
    }
    CHECK_THROWS_AS(bessel_j_zero(-1.0, 1), std::domain_error);
    CHECK_THROWS_AS(bessel_j_zero(0.0, 0), std::domain_error);
}
