#include <doctest.h>

#include <stdexcept>
#include <cmath>

#include "dipolab/phase.hpp"
#include "dipolab/radial.hpp"

using namespace dipolab;
using namespace dipolab::phase;

namespace {

const model::ParticleParams kParticle{1.0, 1.0};
const model::FieldConfig kQuarter{1.0, 0.25, 1.0};  // a_B = 0.25

}  // namespace

TEST_CASE("winding numbers of standard paths") {
    CHECK(winding_number(make_circle({0, 0}, 1.0)) == 1);
    CHECK(winding_number(reversed(make_circle({0, 0}, 1.0))) == -1);
    CHECK(winding_number(repeated(make_circle({0, 0}, 1.0), 2)) == 2);
    CHECK(winding_number(make_square({5, 0}, 1.0)) == 0);
    CHECK(winding_number(make_ellipse({0, 0}, 1.0, 3.0)) == 1);
}

TEST_CASE("path validation") {
    // not closed
    LoopPath open;
    open.vertices = {{1, 0}, {0, 1}, {-1, 0}};
    CHECK_THROWS_AS(validate(open), std::invalid_argument);
    // segment through the origin
    LoopPath through;
    through.vertices = {{-1, 0}, {1, 0}, {1, 1}, {-1, 1}, {-1, 0}};
    CHECK_THROWS_AS(validate(through), std::invalid_argument);
    CHECK_THROWS_AS(make_polyline({{-1, -1}, {1, 1}, {1, -1}, {-1, -1}}),
                    std::invalid_argument);
}

TEST_CASE("holonomy of a unit circle is -2 pi a_B") {
    const PhaseResult r = loop_holonomy(make_circle({0, 0}, 1.0), kParticle, kQuarter);
    CHECK(r.winding == 1);
    CHECK(r.phase == doctest::Approx(-M_PI_2).epsilon(1e-10));
    // k > 0 makes the underlying quantum problem ill-posed, and the result says so
    CHECK_FALSE(r.verdict.well_posed);
}

TEST_CASE("zero-winding paths see no phase") {
    const PhaseResult sq = loop_holonomy(make_square({5, 0}, 1.0), kParticle, kQuarter);
    CHECK(sq.winding == 0);
    CHECK(std::fabs(sq.phase) < 1e-9);
}

TEST_CASE("no field, no phase") {
    const model::FieldConfig off{0.0, 0.25, 1.0};
    const PhaseResult r = loop_holonomy(make_circle({0, 0}, 1.0), kParticle, off);
    CHECK(r.phase == 0.0);
    CHECK(r.verdict.well_posed);
}

TEST_CASE("phase depends on the path only through its winding") {
    const double want = -2.0 * M_PI * 0.25;
    const PhaseResult c = loop_holonomy(make_circle({0, 0}, 1.0), kParticle, kQuarter);
    const PhaseResult e = loop_holonomy(make_ellipse({0, 0}, 1.0, 3.0), kParticle, kQuarter);
    const PhaseResult s = loop_holonomy(make_square({0, 0}, 4.0), kParticle, kQuarter);
    CHECK(std::fabs(c.phase - want) < 1e-8);
    CHECK(std::fabs(e.phase - want) < 1e-8);
    CHECK(std::fabs(s.phase - want) < 1e-8);
}

TEST_CASE("double traversal doubles the phase") {
    const LoopPath once = make_circle({0, 0}, 1.0, 64);
    const PhaseResult r1 = loop_holonomy(once, kParticle, kQuarter);
    const PhaseResult r2 = loop_holonomy(repeated(once, 2), kParticle, kQuarter);
    CHECK(r2.winding == 2);
    CHECK(std::fabs(r2.phase - 2.0 * r1.phase) < 1e-9);
}

TEST_CASE("reversal negates the phase") {
    const LoopPath path = make_ellipse({0.3, -0.2}, 1.2, 0.8, 96);
    const PhaseResult fwd = loop_holonomy(path, kParticle, kQuarter);
    const PhaseResult rev = loop_holonomy(reversed(path), kParticle, kQuarter);
    CHECK(std::fabs(fwd.phase + rev.phase) < 1e-13);
    CHECK(rev.winding == -fwd.winding);
}

TEST_CASE("winding phase closed form") {
    CHECK(winding_phase(1, {0.25, 0.1, 1.0}) == doctest::Approx(-M_PI_2).epsilon(1e-15));
    CHECK(winding_phase(0, {1.5, 0.1, 1.0}) == 0.0);
    CHECK(winding_phase(-2, {1.5, 0.1, 1.0}) == doctest::Approx(6.0 * M_PI).epsilon(1e-15));
}

TEST_CASE("fringe shift prediction carries the rebuttal") {
    SUBCASE("inconsistent raw couplings are flagged") {
        const FringeShiftPrediction f = fringe_shift_prediction({0.25, 0.0, 1.0});
        CHECK_FALSE(f.couplings_consistent);
    }
    SUBCASE("nonzero field: phase exists but the problem is ill-posed") {
        const FringeShiftPrediction f = fringe_shift_prediction({0.25, 0.1, 1.0});
        CHECK(f.couplings_consistent);
        CHECK(f.phase_difference == doctest::Approx(-M_PI_2).epsilon(1e-15));
        CHECK(f.non_physical);
        CHECK_FALSE(f.verdict.well_posed);
        REQUIRE(!f.verdict.violating_m.empty());
        CHECK(f.verdict.violating_m[0] == 0);
    }
    SUBCASE("no field: trivial and well-posed") {
        const FringeShiftPrediction f = fringe_shift_prediction({0.0, 0.0, 1.0});
        CHECK(f.phase_difference == 0.0);
        CHECK(f.verdict.well_posed);
        CHECK_FALSE(f.non_physical);
        CHECK(f.couplings_consistent);
    }
}

TEST_CASE("k = 0 disk spectrum shows pure mass renormalization") {
    const model::FieldConfig b2{0.0, 2.0, 1.0};
    const MassRenormalizationCheck chk =
        mass_renormalization_check(kParticle, b2, 1.0, 1, 0, 1500);
    CHECK(chk.max_rel_error < 1e-4);
    // with B = 0 the polarizability drops out entirely
    const MassRenormalizationCheck bare =
        mass_renormalization_check(kParticle, {0.0, 0.0, 1.0}, 1.0, 1, 0, 1500);
    CHECK(bare.max_rel_error == doctest::Approx(chk.max_rel_error).epsilon(1e-9));
    CHECK(model::reduce(kParticle, {0.0, 0.0, 1.0}).m_eff == kParticle.mass);
    CHECK_THROWS_AS(mass_renormalization_check(kParticle, {0.5, 2.0, 1.0}, 1.0, 1),
                    std::invalid_argument);
}

TEST_CASE("spectra depend on (M, alpha, B) only through the effective mass") {
    // (M=1, alpha=1, B=2) and (M=5, alpha=0, B=7) share M* = 5
    const model::Couplings c1 = model::reduce({1.0, 1.0}, {0.0, 2.0, 1.0});
    const model::Couplings c2 = model::reduce({5.0, 0.0}, {0.0, 7.0, 1.0});
    REQUIRE(c1.m_eff == c2.m_eff);
    radial::RadialProblem p{0.0, 0.0, 1.0, {1200, radial::GridSpacing::Linear}};
    const auto s = radial::dirichlet_spectrum(p, 3);
    for (int i = 0; i < 3; ++i) {
        const double e1 = s.eigenvalues[i] / (2.0 * c1.m_eff);
        const double e2 = s.eigenvalues[i] / (2.0 * c2.m_eff);
        CHECK(e1 == doctest::Approx(e2).epsilon(1e-14));
    }
    // ground level of the unit disk at M* = 5: j_{0,1}^2 / 10
    CHECK(s.eigenvalues[0] / (2.0 * c1.m_eff) ==
          doctest::Approx(0.578318596294678).epsilon(1e-5));
}
