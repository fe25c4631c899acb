#pragma once

// Holonomy of the induced gauge potential A = alpha B Ebar around closed
// beam contours, and the spectral check that a pure magnetic field only
// renormalizes the mass.  A is closed away from the line charge, so the
// phase (1/hbar) \oint A . dl depends on the contour only through its
// winding number: it equals -2 pi n a_B under the eps_12 = +1 convention.
// Every phase result carries the well-posedness verdict of the underlying
// quantum problem, which is ill-posed whenever the electric field is on.

#include <vector>

#include "dipolab/model.hpp"
#include "dipolab/vec2.hpp"

namespace dipolab::phase {

// Closed polyline.  Circles and ellipses enter as fine polygonal
// parametrizations; the holonomy is winding-exact for any of them.
struct LoopPath {
    std::vector<Vec2> vertices;  // first == last within 1e-12

    static constexpr double origin_guard = 1e-9;

    std::size_t segment_count() const {
        return vertices.empty() ? 0 : vertices.size() - 1;
    }
};

// Throws unless the path is closed, has at least one segment, and no
// segment passes within origin_guard of the origin.
void validate(const LoopPath& path);

LoopPath make_circle(Vec2 center, double radius, int n_segments = 256);
// axes are the semi-axis lengths along x and y
LoopPath make_ellipse(Vec2 center, double ax, double ay, int n_segments = 256);
LoopPath make_square(Vec2 center, double side, int points_per_side = 16);
LoopPath make_polyline(std::vector<Vec2> vertices);

LoopPath reversed(const LoopPath& path);
LoopPath repeated(const LoopPath& path, int times);

// Signed winding number about the origin from summed segment angles.
// Throws if the angle sum is more than 1e-6 * 2pi away from an integer.
int winding_number(const LoopPath& path);

struct PhaseResult {
    double phase;    // radians
    int winding;
    double quadrature_error;  // accumulated estimate from the segment panels
    model::WellPosednessReport verdict;
};

// (1/hbar) \oint A . dl by adaptive Gauss-Kronrod quadrature per segment,
// to 1e-9 absolute over the whole loop.
PhaseResult loop_holonomy(const LoopPath& path,
                          const model::ParticleParams& particle,
                          const model::FieldConfig& fields);

// Closed form of the same quantity: -2 pi n a_B.
double winding_phase(int n, const model::Couplings& c);

struct FringeShiftPrediction {
    double phase_difference;  // two beams differing by one winding
    model::WellPosednessReport verdict;
    bool couplings_consistent;  // a_B != 0 with a_E = 0 cannot arise physically
    bool non_physical;          // a_E > 0: the underlying problem is ill-posed
};

FringeShiftPrediction fringe_shift_prediction(const model::Couplings& c);

struct MassRenormalizationCheck {
    double max_rel_error;  // worst |computed - expected| / expected over (m, n)
};

// With k = 0 the disk spectrum per channel m must equal
// hbar^2 j_{m,n}^2 / (2 (M + alpha B^2) R^2): the interaction acts only
// through the effective mass.  Rejects k != 0.
MassRenormalizationCheck mass_renormalization_check(
    const model::ParticleParams& particle, const model::FieldConfig& fields,
    double disk_radius, int n_levels, int m_max = 2, int n_points = 4000);

}  // namespace dipolab::phase
