#include "dipolab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dipolab::dynamics {

namespace {

struct Derived {
    double m_eff;
    double gauge;  // alpha * B * k
    double ak2;    // alpha * k^2
};

Derived derive(const model::ParticleParams& particle, const model::FieldConfig& fields) {
    model::validate(particle);
    model::validate(fields);
    return {particle.mass + particle.alpha * fields.B * fields.B,
            particle.alpha * fields.B * fields.k,
            particle.alpha * fields.k * fields.k};
}

struct Rhs {
    Derived d;

    void operator()(const double y[4], double out[4]) const {
        const double x1 = y[0], x2 = y[1], p1 = y[2], p2 = y[3];
        const double r2 = x1 * x1 + x2 * x2;
        const double a1 = d.gauge * x2 / r2;
        const double a2 = -d.gauge * x1 / r2;
        const double v1 = (p1 + a1) / d.m_eff;
        const double v2 = (p2 + a2) / d.m_eff;
        // J_A = (gauge/r^4) [[-2 x1 x2, x1^2 - x2^2], [x1^2 - x2^2, 2 x1 x2]]
        const double c = d.gauge / (r2 * r2);
        const double j11 = -2.0 * x1 * x2 * c;
        const double j12 = (x1 * x1 - x2 * x2) * c;
        const double grad = d.ak2 / (r2 * r2);
        out[0] = v1;
        out[1] = v2;
        out[2] = -(j11 * v1 + j12 * v2) - grad * x1;
        out[3] = -(j12 * v1 - j11 * v2) - grad * x2;
    }
};

}  // namespace

double hamiltonian_value(const TrajectoryState& s,
                         const model::ParticleParams& particle,
                         const model::FieldConfig& fields) {
    const Derived d = derive(particle, fields);
    const double r2 = s.x.norm_sq();
    if (!(r2 > 0.0)) throw std::domain_error("state at the field singularity");
    const Vec2 a{d.gauge * s.x.y / r2, -d.gauge * s.x.x / r2};
    const Vec2 kin = s.p + a;
    return kin.norm_sq() / (2.0 * d.m_eff) - 0.5 * d.ak2 / r2;
}

void eom_rhs(const TrajectoryState& s, const model::ParticleParams& particle,
             const model::FieldConfig& fields, Vec2& dx_dt, Vec2& dp_dt) {
    const Derived d = derive(particle, fields);
    if (!(s.x.norm_sq() > 0.0)) throw std::domain_error("state at the field singularity");
    const Rhs rhs{d};
    const double y[4] = {s.x.x, s.x.y, s.p.x, s.p.y};
    double out[4];
    rhs(y, out);
    dx_dt = {out[0], out[1]};
    dp_dt = {out[2], out[3]};
}

double canonical_angular_momentum(const TrajectoryState& s) {
    return cross(s.x, s.p);
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                 e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                 e4 = 125.0 / 192.0 - 393.0 / 640.0,
                 e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                 e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;

double initial_step(const Rhs& rhs, const double y[4], double tol, double t_span) {
    double f[4];
    rhs(y, f);
    double ny = 0.0, nf = 0.0;
    for (int i = 0; i < 4; ++i) {
        ny = std::max(ny, std::fabs(y[i]));
        nf = std::max(nf, std::fabs(f[i]));
    }
    double h = (nf > 0.0) ? 0.01 * std::max(ny, 1.0) / nf : 1e-3 * t_span;
    h = std::min(h, 0.1 * t_span);
    // tighter tolerances deserve a smaller first step
    return h * std::pow(tol / 1e-6, 0.2);
}

}  // namespace

Trajectory integrate(const TrajectoryState& s0, double t_end, double tol,
                     const model::ParticleParams& particle,
                     const model::FieldConfig& fields,
                     const IntegrateOptions& opts) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be > 0");
    if (!(t_end > s0.t)) throw std::invalid_argument("t_end must exceed the start time");
    const double r0 = s0.x.norm();
    if (!(r0 > 0.0)) throw std::domain_error("initial state at the field singularity");

    const Derived d = derive(particle, fields);
    const Rhs rhs{d};
    const double capture_r = opts.capture_radius_factor * r0;
    const double escape_r = opts.escape_radius_factor * r0;

    Trajectory traj;
    auto log_state = [&](const double y[4], double t) {
        TrajectoryState s{{y[0], y[1]}, {y[2], y[3]}, t};
        traj.samples.push_back(s);
        traj.energy_log.push_back(hamiltonian_value(s, particle, fields));
        traj.p_theta_log.push_back(canonical_angular_momentum(s));
    };

    double y[4] = {s0.x.x, s0.x.y, s0.p.x, s0.p.y};
    double t = s0.t;
    log_state(y, t);

    double k1[4], k2[4], k3[4], k4[4], k5[4], k6[4], k7[4];
    rhs(y, k1);
    double h = initial_step(rhs, y, tol, t_end - s0.t);
    std::size_t since_sample = 0;

    while (t < t_end) {
        if (traj.steps_accepted + traj.steps_rejected >= opts.max_steps)
            throw std::runtime_error("integrator exceeded the step budget");
        h = std::min(h, t_end - t);
        const double h_floor =
            16.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(t), 1.0);
        if (h < h_floor) {
            // step size collapsed: the orbit is plunging into the singularity
            traj.outcome = {OutcomeKind::Captured, t, true};
            return traj;
        }

        double yt[4];
        for (int i = 0; i < 4; ++i) yt[i] = y[i] + h * a21 * k1[i];
        rhs(yt, k2);
        for (int i = 0; i < 4; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(yt, k3);
        for (int i = 0; i < 4; ++i)
            yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(yt, k4);
        for (int i = 0; i < 4; ++i)
            yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(yt, k5);
        for (int i = 0; i < 4; ++i)
            yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
        rhs(yt, k6);
        double y5[4];
        for (int i = 0; i < 4; ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                                b6 * k6[i]);

        const double r_new_sq = y5[0] * y5[0] + y5[1] * y5[1];
        if (!(r_new_sq > 0.0) || !std::isfinite(r_new_sq)) {
            traj.steps_rejected++;
            h *= 0.25;
            continue;
        }
        rhs(y5, k7);

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double scale = tol + tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / 4.0);
        if (!std::isfinite(err)) {
            traj.steps_rejected++;
            h *= 0.25;
            continue;
        }

        if (err <= 1.0) {
            t += h;
            for (int i = 0; i < 4; ++i) {
                y[i] = y5[i];
                k1[i] = k7[i];  // FSAL
            }
            traj.steps_accepted++;
            if (++since_sample >= opts.sample_stride || t >= t_end) {
                log_state(y, t);
                since_sample = 0;
            }
            const double r = std::sqrt(r_new_sq);
            if (r < capture_r) {
                if (since_sample != 0) log_state(y, t);
                traj.outcome = {OutcomeKind::Captured, t, false};
                return traj;
            }
            if (r > escape_r) {
                if (since_sample != 0) log_state(y, t);
                traj.outcome = {OutcomeKind::Escaped, t, false};
                return traj;
            }
        } else {
            traj.steps_rejected++;
        }
        const double factor =
            (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    traj.outcome = {OutcomeKind::Bounded, t_end, false};
    return traj;
}

CapturePrediction capture_criterion(double p_theta,
                                    const model::ParticleParams& particle,
                                    const model::FieldConfig& fields) {
    if (fields.B != 0.0)
        throw std::invalid_argument("capture criterion is derived for B = 0 only");
    model::validate(particle);
    model::validate(fields);
    const double threshold = particle.mass * particle.alpha * fields.k * fields.k;
    return {p_theta * p_theta < threshold, threshold};
}

}  // namespace dipolab::dynamics
