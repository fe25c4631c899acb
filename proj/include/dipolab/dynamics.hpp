#pragma once

// Classical motion generated by
//
//   H = |p + alpha B Ebar(x)|^2 / (2 (M + alpha B^2)) - alpha k^2 / (2 r^2)
//
// integrated with an adaptive embedded Dormand-Prince 5(4) scheme.  Energy
// and canonical angular momentum p_theta = x1 p2 - x2 p1 are conserved by
// the flow and logged every accepted step; conservation is asserted by the
// tests rather than enforced structurally, because capture trajectories
// need aggressive step-size adaptation near the singularity.

#include <cstddef>
#include <vector>

#include "dipolab/model.hpp"
#include "dipolab/vec2.hpp"

namespace dipolab::dynamics {

struct TrajectoryState {
    Vec2 x;
    Vec2 p;
    double t = 0.0;
};

enum class OutcomeKind { Captured, Escaped, Bounded };

struct Outcome {
    OutcomeKind kind = OutcomeKind::Bounded;
    double t_event = 0.0;       // capture/escape time, or t_end for Bounded
    bool step_underflow = false;  // capture detected via step-size collapse
};

struct Trajectory {
    std::vector<TrajectoryState> samples;  // strictly increasing in t
    std::vector<double> energy_log;
    std::vector<double> p_theta_log;
    Outcome outcome;
    std::size_t steps_accepted = 0;
    std::size_t steps_rejected = 0;
};

struct IntegrateOptions {
    double capture_radius_factor = 1e-6;  // times |x(0)|
    double escape_radius_factor = 1e6;
    std::size_t max_steps = 50000000;
    std::size_t sample_stride = 1;  // keep every k-th accepted step
};

double hamiltonian_value(const TrajectoryState& s,
                         const model::ParticleParams& particle,
                         const model::FieldConfig& fields);

// Hamilton's equations with analytic gradients:
//   dx/dt = (p + A) / M*,      A = alpha B k (y, -x) / r^2
//   dp/dt = -J_A (p + A) / M* - alpha k^2 x / r^4
// where J_A is the (symmetric) position Jacobian of A.
void eom_rhs(const TrajectoryState& s, const model::ParticleParams& particle,
             const model::FieldConfig& fields, Vec2& dx_dt, Vec2& dp_dt);

double canonical_angular_momentum(const TrajectoryState& s);

Trajectory integrate(const TrajectoryState& s0, double t_end, double tol,
                     const model::ParticleParams& particle,
                     const model::FieldConfig& fields,
                     const IntegrateOptions& opts = {});

struct CapturePrediction {
    bool captured_predicted;
    double threshold;  // M alpha k^2
};

// B = 0 reduction: the radial effective potential coefficient is
// (p_theta^2 - M alpha k^2) / (2 M r^2), so capture is predicted exactly
// when p_theta^2 < M alpha k^2.  Rejects B != 0.
CapturePrediction capture_criterion(double p_theta,
                                    const model::ParticleParams& particle,
                                    const model::FieldConfig& fields);

}  // namespace dipolab::dynamics
