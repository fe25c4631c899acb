#pragma once

#include <cstddef>
#include <vector>

namespace dipolab::radial {

// Symmetric tridiagonal matrix: diag.size() = n, off.size() = n - 1.
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
    double inf_norm() const;
};

// Number of eigenvalues strictly below lambda (Sturm count via the LDL^T
// pivot signs, with the usual pivot floor to survive exact hits).
int eigenvalues_below(const SymTridiag& t, double lambda);

// k-th smallest eigenvalue, k in [0, n), by bisection on the Sturm count.
// Converges to ~4 ulp relative accuracy, which keeps even eigenvalues many
// orders of magnitude below the matrix norm meaningful.
double eigenvalue_bisect(const SymTridiag& t, int k);

std::vector<double> eigenvalues_bisect(const SymTridiag& t, int k_lo, int k_hi);

// Eigenvector for a computed eigenvalue, by inverse iteration with a
// partially pivoted tridiagonal solve.  Returns a unit 2-norm vector.
std::vector<double> inverse_iteration(const SymTridiag& t, double lambda);

// ||T v - lambda v||_2 for a unit vector v.
double eigen_residual(const SymTridiag& t, double lambda,
                      const std::vector<double>& v);

}  // namespace dipolab::radial
