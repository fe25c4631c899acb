#include "dipolab/radial.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dipolab/tridiag.hpp"

namespace dipolab::radial {

void validate(const RadialProblem& p) {
    if (!(p.r_inner >= 0.0)) throw std::invalid_argument("r_inner must be >= 0");
    if (!(p.r_outer > p.r_inner)) throw std::invalid_argument("r_outer must exceed r_inner");
    if (p.grid.n_points < 64) throw std::invalid_argument("grid needs at least 64 points");
    if (p.grid.spacing == GridSpacing::Logarithmic && !(p.r_inner > 0.0))
        throw std::invalid_argument("logarithmic grid requires r_inner > 0");
    if (p.nu_sq < 0.0 && !(p.r_inner > 0.0))
        throw std::invalid_argument(
            "supercritical channel is unbounded below without an inner cutoff");
}

double free_radial_solution(double nu, double eps, double r) {
    if (!(nu >= 0.0))
        throw std::domain_error("no regular solution for nu < 0 (supercritical)");
    if (!(eps > 0.0)) throw std::domain_error("free solution requires eps > 0");
    if (!(r > 0.0)) throw std::domain_error("free solution requires r > 0");
    return bessel_j(nu, std::sqrt(eps) * r);
}

namespace {

struct Discretization {
    SymTridiag matrix;
    std::vector<double> r;
    std::vector<double> weights;    // r dr quadrature weights per node
    std::vector<double> from_z;     // f_i = from_z[i] * z_i
    double step;                    // grid step (in r or in s = log r)
};

// u-form on a vertex-centered linear grid: u'' + [eps - (nu^2 - 1/4)/r^2] u = 0,
// u = sqrt(r) f, Dirichlet u = 0 at both walls.
Discretization assemble_u_form(const RadialProblem& p) {
    const int n = p.grid.n_points;
    const double h = (p.r_outer - p.r_inner) / (n + 1);
    Discretization d;
    d.step = h;
    d.matrix.diag.resize(n);
    d.matrix.off.assign(n - 1, -1.0 / (h * h));
    d.r.resize(n);
    d.weights.resize(n);
    d.from_z.resize(n);
    const double c = p.nu_sq - 0.25;
    for (int i = 0; i < n; ++i) {
        const double r = p.r_inner + h * (i + 1);
        d.r[i] = r;
        d.matrix.diag[i] = 2.0 / (h * h) + c / (r * r);
        d.weights[i] = r * h;
        d.from_z[i] = 1.0 / std::sqrt(r);
    }
    return d;
}

// f-form finite volume on a linear grid, symmetrized by sqrt(r_i).  With
// r_inner = 0 the nodes sit at half-integer steps so the axis face carries
// zero flux (the natural regularity condition lim r f' = 0) and the outer
// ghost node lands exactly on the Dirichlet wall.
Discretization assemble_fv_form(const RadialProblem& p) {
    const int n = p.grid.n_points;
    Discretization d;
    d.matrix.diag.resize(n);
    d.matrix.off.resize(n - 1);
    d.r.resize(n);
    d.weights.resize(n);
    d.from_z.resize(n);
    double h;
    if (p.r_inner == 0.0) {
        h = p.r_outer / (n + 0.5);
        for (int i = 0; i < n; ++i) d.r[i] = (i + 0.5) * h;
    } else {
        h = (p.r_outer - p.r_inner) / (n + 1);
        for (int i = 0; i < n; ++i) d.r[i] = p.r_inner + h * (i + 1);
    }
    d.step = h;
    for (int i = 0; i < n; ++i) {
        const double r = d.r[i];
        // faces at r +- h/2; their radii sum to 2r, so the diagonal flux
        // term is 2/h^2 regardless of the axis
        d.matrix.diag[i] = 2.0 / (h * h) + p.nu_sq / (r * r);
        if (i + 1 < n) {
            const double face = r + 0.5 * h;
            d.matrix.off[i] = -face / (h * h * std::sqrt(r * d.r[i + 1]));
        }
        d.weights[i] = r * h;
        d.from_z[i] = 1.0 / std::sqrt(r);
    }
    return d;
}

// Log grid: s = log r, w'' + [eps e^{2s} - nu^2] w = 0 with w = f on the
// nodes.  A w = eps D w with D = diag(e^{2s}) becomes the standard problem
// for z = D^{1/2} w.
Discretization assemble_log_form(const RadialProblem& p) {
    const int n = p.grid.n_points;
    const double s0 = std::log(p.r_inner);
    const double s1 = std::log(p.r_outer);
    const double h = (s1 - s0) / (n + 1);
    Discretization d;
    d.step = h;
    d.matrix.diag.resize(n);
    d.matrix.off.resize(n - 1);
    d.r.resize(n);
    d.weights.resize(n);
    d.from_z.resize(n);
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = s0 + h * (i + 1);
    for (int i = 0; i < n; ++i) {
        const double e2s = std::exp(2.0 * s[i]);
        d.r[i] = std::exp(s[i]);
        d.matrix.diag[i] = (2.0 / (h * h) + p.nu_sq) / e2s;
        if (i + 1 < n)
            d.matrix.off[i] = -1.0 / (h * h * std::exp(s[i] + s[i + 1]));
        d.weights[i] = e2s * h;
        d.from_z[i] = std::exp(-s[i]);
    }
    return d;
}

SpectralResult solve_levels(const Discretization& d, int k_lo, int k_hi,
                            double nu_sq) {
    SpectralResult out;
    out.nu_sq = nu_sq;
    out.u_coefficient = nu_sq - 0.25;
    out.r = d.r;
    out.measure_weights = d.weights;
    const double norm = d.matrix.inf_norm();
    for (int k = k_lo; k <= k_hi; ++k) {
        const double eps = eigenvalue_bisect(d.matrix, k);
        std::vector<double> z = inverse_iteration(d.matrix, eps);
        out.residual_norms.push_back(eigen_residual(d.matrix, eps, z) / norm);
        // normalize to unit integral f^2 r dr, i.e. sum z^2 * step = 1
        double scale = 0.0;
        for (double v : z) scale += v * v;
        scale = 1.0 / std::sqrt(scale * d.step);
        std::vector<double> f(z.size());
        for (std::size_t i = 0; i < z.size(); ++i)
            f[i] = z[i] * scale * d.from_z[i];
        out.eigenvalues.push_back(eps);
        out.eigenvectors.push_back(std::move(f));
    }
    return out;
}

Discretization assemble_default(const RadialProblem& p) {
    if (p.grid.spacing == GridSpacing::Logarithmic) return assemble_log_form(p);
    if (p.r_inner == 0.0) return assemble_fv_form(p);
    return assemble_u_form(p);
}

void check_resolution(const RadialProblem& p, int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("n_levels must be >= 1");
    if (n_levels > p.grid.n_points / 4)
        throw std::invalid_argument(
            "requested " + std::to_string(n_levels) + " levels on " +
            std::to_string(p.grid.n_points) +
            " points: highest level would have fewer than 8 steps per wavelength");
}

}  // namespace

SpectralResult dirichlet_spectrum(const RadialProblem& p, int n_levels) {
    validate(p);
    check_resolution(p, n_levels);
    return solve_levels(assemble_default(p), 0, n_levels - 1, p.nu_sq);
}

SpectralResult dirichlet_spectrum(const RadialProblem& p, int n_levels,
                                  RadialForm form) {
    validate(p);
    check_resolution(p, n_levels);
    if (p.grid.spacing != GridSpacing::Linear)
        throw std::invalid_argument("explicit form selection applies to linear grids");
    if (form == RadialForm::SqrtSubstitution) {
        if (!(p.r_inner > 0.0))
            throw std::invalid_argument(
                "sqrt-substitution route needs r_inner > 0 (u ~ sqrt(r) spoils "
                "convergence at the axis)");
        return solve_levels(assemble_u_form(p), 0, n_levels - 1, p.nu_sq);
    }
    return solve_levels(assemble_fv_form(p), 0, n_levels - 1, p.nu_sq);
}

SpectralResult regularized_bound_spectrum(double nu_tilde, const RadialProblem& p) {
    if (!(nu_tilde > 0.0)) throw std::invalid_argument("nu_tilde must be > 0");
    RadialProblem q = p;
    q.nu_sq = -nu_tilde * nu_tilde;
    validate(q);
    if (q.grid.spacing != GridSpacing::Logarithmic)
        throw std::invalid_argument("regularized spectrum requires a logarithmic grid");
    if (!(q.r_outer / q.r_inner >= 1e4))
        throw std::invalid_argument("regularized spectrum requires r_outer/r_inner >= 1e4");

    const Discretization d = assemble_log_form(q);
    const int n_bound = eigenvalues_below(d.matrix, 0.0);
    if (n_bound == 0) {
        SpectralResult empty;
        empty.nu_sq = q.nu_sq;
        empty.u_coefficient = q.nu_sq - 0.25;
        empty.r = d.r;
        empty.measure_weights = d.weights;
        return empty;
    }
    return solve_levels(d, 0, n_bound - 1, q.nu_sq);
}

std::vector<std::pair<double, double>> cutoff_scaling_probe(
    double nu_tilde, const std::vector<double>& cutoffs, double r_outer,
    int n_points) {
    if (cutoffs.empty()) throw std::invalid_argument("cutoff list is empty");
    for (std::size_t i = 0; i < cutoffs.size(); ++i) {
        if (!(cutoffs[i] > 0.0)) throw std::invalid_argument("cutoffs must be positive");
        if (i > 0 && !(cutoffs[i] < cutoffs[i - 1]))
            throw std::invalid_argument("cutoffs must be strictly descending");
    }
    std::vector<std::pair<double, double>> out;
    out.reserve(cutoffs.size());
    for (double a : cutoffs) {
        RadialProblem p{-nu_tilde * nu_tilde, a, r_outer,
                        {n_points, GridSpacing::Logarithmic}};
        const SpectralResult s = regularized_bound_spectrum(nu_tilde, p);
        if (s.eigenvalues.empty())
            throw std::runtime_error("no bound state resolved at cutoff " +
                                     std::to_string(a));
        out.emplace_back(a, s.eigenvalues.front());
    }
    return out;
}

}  // namespace dipolab::radial
