#pragma once

// Per-channel radial problem
//
//   [ (1/r) d/dr r d/dr + eps - nu^2 / r^2 ] f(r) = 0,   eps = 2 M* E / hbar^2
//
// with Dirichlet walls.  The substitution u = sqrt(r) f flattens the measure:
// u'' + [eps - (nu^2 - 1/4)/r^2] u = 0.  On a logarithmic grid (s = log r,
// u = e^{s/2} w) the same equation becomes w'' + [eps e^{2s} - nu^2] w = 0,
// a symmetric-definite generalized problem that is symmetrized exactly by a
// diagonal scaling.  All discretizations below end in a real symmetric
// tridiagonal matrix solved by Sturm bisection plus inverse iteration.
//
// A supercritical channel (nu^2 < 0) has no lower bound without an inner
// cutoff; with a hard core at r_inner its bound states form a geometric
// tower with ratio exp(-2 pi / sqrt(-nu^2)).

#include <utility>
#include <vector>

#include "dipolab/bessel.hpp"

namespace dipolab::radial {

enum class GridSpacing { Linear, Logarithmic };

struct RadialGrid {
    int n_points = 4000;  // interior points, >= 64
    GridSpacing spacing = GridSpacing::Linear;
};

struct RadialProblem {
    double nu_sq;
    double r_inner;  // inner wall; 0 allowed only for nu_sq >= 0
    double r_outer;
    RadialGrid grid;
};

void validate(const RadialProblem& p);

struct SpectralResult {
    std::vector<double> eigenvalues;  // ascending dimensionless eps
    std::vector<std::vector<double>> eigenvectors;  // f on the grid, rows match eigenvalues
    std::vector<double> residual_norms;  // ||T z - eps z|| / ||T||_inf per pair
    std::vector<double> r;               // grid radii
    std::vector<double> measure_weights; // integral f g r dr ~ sum_i f_i g_i w_i
    double nu_sq = 0.0;
    double u_coefficient = 0.0;  // nu_sq - 1/4, the flat-measure coefficient
};

// Which discretization route to take on a linear grid.  SqrtSubstitution is
// the u-form central difference; DirectFiniteVolume discretizes the f-form
// flux (1/r)(r f')' directly and is the only route that handles r_inner = 0
// correctly for every nu^2 >= 0 (the u-form loses convergence there because
// u ~ sqrt(r) has unbounded derivatives at the axis).
enum class RadialForm { SqrtSubstitution, DirectFiniteVolume };

// J_nu(sqrt(eps) r): the solution of the channel equation regular at the
// origin, defined for nu >= 0 only.  Supercritical channels have no regular
// solution and are rejected.
double free_radial_solution(double nu, double eps, double r);

// Alias kept next to the solver interface: n-th positive zero of J_nu.
inline double bessel_zero(double nu, int n) { return bessel_j_zero(nu, n); }

// Lowest n_levels Dirichlet eigenpairs of the channel operator.  Requires
// n_levels <= n_points / 4 so every requested level keeps at least 8 grid
// steps per wavelength.
SpectralResult dirichlet_spectrum(const RadialProblem& p, int n_levels);

// Same problem through an explicitly chosen linear-grid discretization.
// SqrtSubstitution requires r_inner > 0.
SpectralResult dirichlet_spectrum(const RadialProblem& p, int n_levels,
                                  RadialForm form);

// All negative-eps bound states of the supercritical channel nu^2 = -nu_tilde^2
// regularized by a hard core.  Requires a logarithmic grid with
// r_outer / r_inner >= 1e4.
SpectralResult regularized_bound_spectrum(double nu_tilde, const RadialProblem& p);

// Ground-state energy as a function of the core radius, for fixed r_outer.
// The pure inverse-square operator is scale covariant, so eps_0(a) ~ C / a^2:
// no a -> 0 limit exists.  Cutoffs must be positive and descending.
std::vector<std::pair<double, double>> cutoff_scaling_probe(
    double nu_tilde, const std::vector<double>& cutoffs, double r_outer,
    int n_points = 4000);

}  // namespace dipolab::radial
