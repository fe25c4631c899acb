#include "dipolab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dipolab::radial {

double SymTridiag::inf_norm() const {
    const std::size_t n = size();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::fabs(diag[i]);
        if (i > 0) row += std::fabs(off[i - 1]);
        if (i + 1 < n) row += std::fabs(off[i]);
        best = std::max(best, row);
    }
    return best;
}

namespace {

// Gershgorin interval enclosing the whole spectrum.
std::pair<double, double> spectrum_bounds(const SymTridiag& t) {
    const std::size_t n = t.size();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::fabs(t.off[i - 1]);
        if (i + 1 < n) radius += std::fabs(t.off[i]);
        lo = std::min(lo, t.diag[i] - radius);
        hi = std::max(hi, t.diag[i] + radius);
    }
    const double pad = std::max(std::fabs(lo), std::fabs(hi)) * 1e-14 +
                       std::numeric_limits<double>::min();
    return {lo - pad, hi + pad};
}

double pivot_floor(const SymTridiag& t) {
    double max_off_sq = std::numeric_limits<double>::min();
    for (double e : t.off) max_off_sq = std::max(max_off_sq, e * e);
    return max_off_sq * std::numeric_limits<double>::min() +
           std::numeric_limits<double>::min();
}

}  // namespace

int eigenvalues_below(const SymTridiag& t, double lambda) {
    const std::size_t n = t.size();
    const double floor = pivot_floor(t);
    int count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = (i == 0) ? 0.0 : t.off[i - 1] * t.off[i - 1];
        q = t.diag[i] - lambda - (i == 0 ? 0.0 : e2 / q);
        if (std::fabs(q) < floor) q = -floor;
        if (q < 0.0) ++count;
    }
    return count;
}

double eigenvalue_bisect(const SymTridiag& t, int k) {
    const int n = static_cast<int>(t.size());
    if (k < 0 || k >= n) throw std::out_of_range("eigenvalue index out of range");
    auto [lo, hi] = spectrum_bounds(t);
    const double eps = std::numeric_limits<double>::epsilon();
    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval exhausted in this precision
        if (hi - lo <= 2.0 * eps * (std::fabs(lo) + std::fabs(hi)) + 1e-300) break;
        if (eigenvalues_below(t, mid) <= k) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<double> eigenvalues_bisect(const SymTridiag& t, int k_lo, int k_hi) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(0, k_hi - k_lo + 1)));
    for (int k = k_lo; k <= k_hi; ++k) out.push_back(eigenvalue_bisect(t, k));
    return out;
}

std::vector<double> inverse_iteration(const SymTridiag& t, double lambda) {
    const std::size_t n = t.size();
    if (n == 1) return {1.0};

    // LU of (T - lambda I) with partial pivoting; row swaps introduce a
    // second superdiagonal.
    std::vector<double> d(n), u1(n, 0.0), u2(n, 0.0), l(n, 0.0);
    std::vector<char> swapped(n, 0);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;
    for (std::size_t i = 0; i + 1 < n; ++i) u1[i] = t.off[i];

    const double tiny = t.inf_norm() * std::numeric_limits<double>::epsilon() +
                        std::numeric_limits<double>::min();
    std::vector<double> sub(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) sub[i + 1] = t.off[i];

    for (std::size_t i = 0; i + 1 < n; ++i) {
        double pivot = d[i];
        double below = sub[i + 1];
        if (std::fabs(below) > std::fabs(pivot)) {
            swapped[i] = 1;
            std::swap(d[i], sub[i + 1]);       // d[i] <-> below
            pivot = d[i];
            below = sub[i + 1];
            std::swap(u1[i], d[i + 1]);
            if (i + 2 < n) {
                u2[i] = u1[i + 1];
                u1[i + 1] = 0.0;
            }
        }
        if (std::fabs(pivot) < tiny) {
            d[i] = (pivot < 0.0 ? -tiny : tiny);
            pivot = d[i];
        }
        const double m = below / pivot;
        l[i + 1] = m;
        d[i + 1] -= m * u1[i];
        if (i + 2 < n) u1[i + 1] -= m * u2[i];
    }
    if (std::fabs(d[n - 1]) < tiny) d[n - 1] = tiny;

    auto solve = [&](std::vector<double>& b) {
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(b[i], b[i + 1]);
            b[i + 1] -= l[i + 1] * b[i];
        }
        for (std::size_t ii = n; ii-- > 0;) {
            double v = b[ii];
            if (ii + 1 < n) v -= u1[ii] * b[ii + 1];
            if (ii + 2 < n) v -= u2[ii] * b[ii + 2];
            b[ii] = v / d[ii];
        }
    };

    // Deterministic start vector with no special symmetry.
    std::vector<double> v(n);
    unsigned long long s = 0x9e3779b97f4a7c15ULL;
    for (std::size_t i = 0; i < n; ++i) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        v[i] = 0.5 + static_cast<double>(s >> 40) / static_cast<double>(1ULL << 24);
    }

    for (int iter = 0; iter < 5; ++iter) {
        solve(v);
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            std::fill(v.begin(), v.end(), 0.0);
            v[iter % n] = 1.0;
            continue;
        }
        for (double& x : v) x /= norm;
        if (iter >= 1 && eigen_residual(t, lambda, v) <=
                             1e-13 * (t.inf_norm() + std::fabs(lambda))) {
            break;
        }
    }
    // Fix an overall sign for reproducibility: largest component positive.
    std::size_t imax = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;
    return v;
}

double eigen_residual(const SymTridiag& t, double lambda,
                      const std::vector<double>& v) {
    const std::size_t n = t.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = (t.diag[i] - lambda) * v[i];
        if (i > 0) r += t.off[i - 1] * v[i - 1];
        if (i + 1 < n) r += t.off[i] * v[i + 1];
        sum += r * r;
    }
    return std::sqrt(sum);
}

}  // namespace dipolab::radial
