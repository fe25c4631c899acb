#pragma once

// Physical model of a neutral polarizable particle moving in the plane,
// subject to the radial electric field E = k/r of a line charge and a
// uniform perpendicular magnetic field B.  The canonical reduction of
// L = (1/2) M V^2 + (1/2) alpha (E + V x B)^2 produces
//
//   H = (p + alpha B Ebar)^2 / (2 (M + alpha B^2)) - (1/2) alpha E^2
//
// with Ebar the 90-degree rotation of E.  Everything downstream (channel
// coefficients, spectra, holonomies, classical orbits) is driven by the
// dimensionless couplings computed here.

#include <vector>

#include "dipolab/vec2.hpp"

namespace dipolab::model {

struct ParticleParams {
    double mass;   // M > 0
    double alpha;  // polarizability, >= 0
};

struct FieldConfig {
    double k;     // electric field scale, |E|(r) = k/r, >= 0
    double B;     // magnetic field magnitude, sign = orientation
    double hbar;  // > 0, fixed by the unit system
};

// Dimensionless reduction.  a_B = alpha*k*B/hbar, a_E = M*alpha*k^2/hbar^2,
// m_eff = M + alpha*B^2.  For any physical input, a_B^2 = a_E * (alpha B^2 / M).
struct Couplings {
    double a_B;
    double a_E;
    double m_eff;
};

enum class ChannelClass { Subcritical, Critical, Supercritical };

// One angular-momentum sector.  nu_sq is the coefficient of the 1/r^2 term
// in the radial equation: nu_sq = m^2 + 2 m a_B - a_E.
struct Channel {
    int m;
    double nu_sq;
    ChannelClass cls;
};

struct WellPosednessReport {
    bool well_posed;              // true iff violating_m is empty
    std::vector<int> violating_m; // sorted, all m with nu_sq(m) < 0
    int m_scan_bound;             // scan covered |m| <= m_scan_bound
};

void validate(const ParticleParams& p);
void validate(const FieldConfig& f);

// Canonical reduction to dimensionless couplings.  Rejects M <= 0,
// alpha < 0, hbar <= 0, k < 0.
Couplings reduce(const ParticleParams& particle, const FieldConfig& fields);

// nu_sq(m) = m^2 + 2 m a_B - a_E, evaluated in exactly this order.
double channel_coefficient(int m, const Couplings& c);

ChannelClass classify_channel(double nu_sq, double tol = 0.0);

Channel make_channel(int m, const Couplings& c, double tol = 0.0);

// Bound such that every integer root of nu_sq(m) lies strictly inside:
// ceil(|a_B| + sqrt(a_B^2 + a_E)) + 1.
int m_scan_bound(const Couplings& c);

// Scans all |m| <= m_scan_bound.  For couplings produced by reduce() the
// verdict is well-posed iff a_E = 0 (i.e. iff the electric field vanishes);
// nu_sq(0) = -a_E makes the m = 0 channel supercritical otherwise.
WellPosednessReport well_posedness(const Couplings& c);

// E(x) = k x / r^2 (magnitude k/r, radially outward).
Vec2 electric_field(Vec2 x, const FieldConfig& fields);

// Dual field Ebar_i = eps_ij E_j with eps_12 = +1: Ebar = k (y, -x) / r^2.
Vec2 dual_electric_field(Vec2 x, const FieldConfig& fields);

// Induced gauge potential alpha*B*Ebar at x.  Rejects x = 0.
Vec2 effective_gauge_potential(Vec2 x, const FieldConfig& fields,
                               const ParticleParams& particle);

// -(1/2) alpha E^2 = -alpha k^2 / (2 r^2).  Rejects r <= 0.
double scalar_potential(double r, const ParticleParams& particle,
                        const FieldConfig& fields);

const char* to_string(ChannelClass cls);

}  // namespace dipolab::model
