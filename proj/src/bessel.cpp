#include "dipolab/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace dipolab::radial {

double bessel_j(double nu, double x) {
    if (!(nu >= 0.0)) throw std::domain_error("bessel_j: order must be >= 0");
    if (!(x >= 0.0)) throw std::domain_error("bessel_j: argument must be >= 0");
    if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;

    // J_nu(x) = sum_j (-1)^j (x/2)^(nu+2j) / (j! Gamma(nu+j+1))
    const long double half_x = 0.5L * static_cast<long double>(x);
    const long double q = half_x * half_x;
    long double term = std::pow(half_x, static_cast<long double>(nu)) /
                       std::tgamma(static_cast<long double>(nu) + 1.0L);
    long double sum = term;
    const long double rel_cut = 1e-12L;
    for (int j = 1; j < 400; ++j) {
        term *= -q / (static_cast<long double>(j) * (static_cast<long double>(nu) + j));
        sum += term;
        // terms decrease monotonically once j > x/2; only then is the
        // remainder bounded by the last term
        if (j > half_x && std::fabs(term) <= rel_cut * std::fabs(sum)) break;
    }
    return static_cast<double>(sum);
}

double bessel_j_zero(double nu, int n) {
    if (!(nu >= 0.0)) throw std::domain_error("bessel_j_zero: order must be >= 0");
    if (n < 1) throw std::domain_error("bessel_j_zero: root index must be >= 1");

    // J_nu > 0 on (0, j_{nu,1}) and consecutive zeros are at least ~pi - O(1)
    // apart, so a pi/8 scan cannot skip a sign change.
    const double step = M_PI / 8.0;
    double a = std::max(0.5, nu);
    double fa = bessel_j(nu, a);
    int found = 0;
    for (long i = 0; i < 4000000L; ++i) {
        const double b = a + step;
        const double fb = bessel_j(nu, b);
        if ((fa < 0.0) != (fb < 0.0) || fb == 0.0) {
            ++found;
            if (found == n) {
                double lo = a, hi = b, flo = fa;
                while (hi - lo > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = bessel_j(nu, mid);
                    if ((flo < 0.0) != (fm < 0.0)) {
                        hi = mid;
                    } else {
                        lo = mid;
                        flo = fm;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
    }
    throw std::runtime_error("bessel_j_zero: scan exhausted without finding root");
}

}  // namespace dipolab::radial
