#include "dipolab/phase.hpp"

#include <cmath>
#include <stdexcept>

#include "dipolab/quadrature.hpp"
#include "dipolab/radial.hpp"

namespace dipolab::phase {

namespace {

double segment_origin_distance(Vec2 a, Vec2 b) {
    const Vec2 d = b - a;
    const double len_sq = d.norm_sq();
    if (len_sq == 0.0) return a.norm();
    double t = -dot(a, d) / len_sq;
    t = std::clamp(t, 0.0, 1.0);
    return (a + d * t).norm();
}

}  // namespace

void validate(const LoopPath& path) {
    if (path.vertices.size() < 3)
        throw std::invalid_argument("loop path needs at least two segments");
    const Vec2 gap = path.vertices.front() - path.vertices.back();
    if (gap.norm() > 1e-12)
        throw std::invalid_argument("loop path is not closed");
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        if (segment_origin_distance(path.vertices[i], path.vertices[i + 1]) <
            LoopPath::origin_guard)
            throw std::invalid_argument("path segment passes through the origin guard");
    }
}

LoopPath make_circle(Vec2 center, double radius, int n_segments) {
    if (n_segments < 3) throw std::invalid_argument("need at least 3 segments");
    LoopPath p;
    p.vertices.reserve(n_segments + 1);
    for (int i = 0; i < n_segments; ++i) {
        const double t = 2.0 * M_PI * i / n_segments;
        p.vertices.push_back(center + Vec2{radius * std::cos(t), radius * std::sin(t)});
    }
    p.vertices.push_back(p.vertices.front());
    return p;
}

LoopPath make_ellipse(Vec2 center, double ax, double ay, int n_segments) {
    if (n_segments < 3) throw std::invalid_argument("need at least 3 segments");
    LoopPath p;
    p.vertices.reserve(n_segments + 1);
    for (int i = 0; i < n_segments; ++i) {
        const double t = 2.0 * M_PI * i / n_segments;
        p.vertices.push_back(center + Vec2{ax * std::cos(t), ay * std::sin(t)});
    }
    p.vertices.push_back(p.vertices.front());
    return p;
}

LoopPath make_square(Vec2 center, double side, int points_per_side) {
    if (points_per_side < 1) throw std::invalid_argument("need at least 1 point per side");
    const double half = 0.5 * side;
    const Vec2 corners[4] = {center + Vec2{half, -half}, center + Vec2{half, half},
                             center + Vec2{-half, half}, center + Vec2{-half, -half}};
    LoopPath p;
    for (int c = 0; c < 4; ++c) {
        const Vec2 a = corners[c];
        const Vec2 b = corners[(c + 1) % 4];
        for (int i = 0; i < points_per_side; ++i)
            p.vertices.push_back(a + (b - a) * (static_cast<double>(i) / points_per_side));
    }
    p.vertices.push_back(p.vertices.front());
    return p;
}

LoopPath make_polyline(std::vector<Vec2> vertices) {
    LoopPath p{std::move(vertices)};
    validate(p);
    return p;
}

LoopPath reversed(const LoopPath& path) {
    LoopPath p;
    p.vertices.assign(path.vertices.rbegin(), path.vertices.rend());
    return p;
}

LoopPath repeated(const LoopPath& path, int times) {
    if (times < 1) throw std::invalid_argument("repeat count must be >= 1");
    LoopPath p;
    p.vertices.reserve(path.segment_count() * times + 1);
    for (int t = 0; t < times; ++t)
        for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i)
            p.vertices.push_back(path.vertices[i]);
    p.vertices.push_back(path.vertices.front());
    return p;
}

int winding_number(const LoopPath& path) {
    validate(path);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        const Vec2 a = path.vertices[i];
        const Vec2 b = path.vertices[i + 1];
        total += std::atan2(cross(a, b), dot(a, b));
    }
    const double turns = total / (2.0 * M_PI);
    const double nearest = std::round(turns);
    if (std::fabs(turns - nearest) > 1e-6)
        throw std::runtime_error("winding angle sum is not an integer number of turns");
    return static_cast<int>(nearest);
}

PhaseResult loop_holonomy(const LoopPath& path,
                          const model::ParticleParams& particle,
                          const model::FieldConfig& fields) {
    validate(path);
    const model::Couplings c = model::reduce(particle, fields);
    if (!std::isfinite(c.a_B) || !std::isfinite(c.a_E))
        throw std::invalid_argument("couplings are not finite");

    const double total_tol = 1e-10;
    const double seg_tol = total_tol / static_cast<double>(path.segment_count());
    double phase = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
        const Vec2 a = path.vertices[i];
        const Vec2 d = path.vertices[i + 1] - a;
        auto integrand = [&](double t) {
            const Vec2 x = a + d * t;
            return dot(model::effective_gauge_potential(x, fields, particle), d);
        };
        const QuadratureResult q = integrate_adaptive(integrand, 0.0, 1.0, seg_tol);
        phase += q.value;
        err += q.error_estimate;
    }
    PhaseResult result;
    result.phase = phase / fields.hbar;
    result.winding = winding_number(path);
    result.quadrature_error = err / fields.hbar;
    result.verdict = model::well_posedness(c);
    return result;
}

double winding_phase(int n, const model::Couplings& c) {
    return -2.0 * M_PI * static_cast<double>(n) * c.a_B;
}

FringeShiftPrediction fringe_shift_prediction(const model::Couplings& c) {
    FringeShiftPrediction out;
    out.phase_difference = winding_phase(1, c);
    out.verdict = model::well_posedness(c);
    // a_B^2 = a_E * (alpha B^2 / M) for every physical input, so a nonzero
    // gauge coupling with a_E = 0 cannot come from any (M, alpha, k, B)
    out.couplings_consistent = !(c.a_B != 0.0 && c.a_E == 0.0);
    out.non_physical = c.a_E > 0.0;
    return out;
}

MassRenormalizationCheck mass_renormalization_check(
    const model::ParticleParams& particle, const model::FieldConfig& fields,
    double disk_radius, int n_levels, int m_max, int n_points) {
    if (fields.k != 0.0)
        throw std::invalid_argument("mass renormalization check requires k = 0");
    if (!(disk_radius > 0.0)) throw std::invalid_argument("disk radius must be > 0");
    if (m_max < 0 || n_levels < 1) throw std::invalid_argument("bad level request");

    const model::Couplings c = model::reduce(particle, fields);
    const double hbar_sq = fields.hbar * fields.hbar;
    const double r_sq = disk_radius * disk_radius;
    double worst = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        radial::RadialProblem p{static_cast<double>(m) * m, 0.0, disk_radius,
                                {n_points, radial::GridSpacing::Linear}};
        const radial::SpectralResult s = radial::dirichlet_spectrum(p, n_levels);
        for (int n = 1; n <= n_levels; ++n) {
            const double j = radial::bessel_zero(static_cast<double>(m), n);
            const double expected = hbar_sq * j * j / (2.0 * c.m_eff * r_sq);
            const double got = hbar_sq * s.eigenvalues[n - 1] / (2.0 * c.m_eff);
            worst = std::max(worst, std::fabs(got - expected) / expected);
        }
    }
    return MassRenormalizationCheck{worst};
}

}  // namespace dipolab::phase
