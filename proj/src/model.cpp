#include "dipolab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dipolab::model {

void validate(const ParticleParams& p) {
    if (!(p.mass > 0.0)) throw std::invalid_argument("particle mass must be > 0");
    if (!(p.alpha >= 0.0)) throw std::invalid_argument("polarizability must be >= 0");
}

void validate(const FieldConfig& f) {
    if (!(f.k >= 0.0)) throw std::invalid_argument("field scale k must be >= 0");
    if (!(f.hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
    if (!std::isfinite(f.B)) throw std::invalid_argument("B must be finite");
}

Couplings reduce(const ParticleParams& particle, const FieldConfig& fields) {
    validate(particle);
    validate(fields);
    Couplings c;
    c.a_B = particle.alpha * fields.k * fields.B / fields.hbar;
    c.a_E = particle.mass * particle.alpha * fields.k * fields.k /
            (fields.hbar * fields.hbar);
    c.m_eff = particle.mass + particle.alpha * fields.B * fields.B;
    return c;
}

double channel_coefficient(int m, const Couplings& c) {
    const double md = static_cast<double>(m);
    return md * md + 2.0 * md * c.a_B - c.a_E;
}

ChannelClass classify_channel(double nu_sq, double tol) {
    if (!(tol >= 0.0)) throw std::invalid_argument("classification tolerance must be >= 0");
    if (nu_sq < -tol) return ChannelClass::Supercritical;
    if (nu_sq <= tol) return ChannelClass::Critical;
    return ChannelClass::Subcritical;
}

Channel make_channel(int m, const Couplings& c, double tol) {
    const double nu_sq = channel_coefficient(m, c);
    return Channel{m, nu_sq, classify_channel(nu_sq, tol)};
}

int m_scan_bound(const Couplings& c) {
    const double root_radius =
        std::abs(c.a_B) + std::sqrt(c.a_B * c.a_B + std::max(c.a_E, 0.0));
    return static_cast<int>(std::ceil(root_radius)) + 1;
}

WellPosednessReport well_posedness(const Couplings& c) {
    WellPosednessReport report;
    report.m_scan_bound = m_scan_bound(c);
    for (int m = -report.m_scan_bound; m <= report.m_scan_bound; ++m) {
        if (channel_coefficient(m, c) < 0.0) report.violating_m.push_back(m);
    }
    report.well_posed = report.violating_m.empty();
    return report;
}

Vec2 electric_field(Vec2 x, const FieldConfig& fields) {
    const double r2 = x.norm_sq();
    if (!(r2 > 0.0)) throw std::domain_error("electric field is singular at the origin");
    return x * (fields.k / r2);
}

Vec2 dual_electric_field(Vec2 x, const FieldConfig& fields) {
    const double r2 = x.norm_sq();
    if (!(r2 > 0.0)) throw std::domain_error("electric field is singular at the origin");
    return Vec2{x.y, -x.x} * (fields.k / r2);
}

Vec2 effective_gauge_potential(Vec2 x, const FieldConfig& fields,
                               const ParticleParams& particle) {
    return dual_electric_field(x, fields) * (particle.alpha * fields.B);
}

double scalar_potential(double r, const ParticleParams& particle,
                        const FieldConfig& fields) {
    if (!(r > 0.0)) throw std::domain_error("scalar potential requires r > 0");
    const double e = fields.k / r;
    return -0.5 * particle.alpha * e * e;
}

const char* to_string(ChannelClass cls) {
    switch (cls) {
        case ChannelClass::Subcritical: return "subcritical";
        case ChannelClass::Critical: return "critical";
        case ChannelClass::Supercritical: return "supercritical";
    }
    return "?";
}

}  // namespace dipolab::model
