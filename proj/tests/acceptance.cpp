// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Criterion 11 drives the actual CLI binary named by $DIPOLAB_CLI.

#include <chrono>
#include <algorithm>
#include <unistd.h>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "dipolab/dynamics.hpp"
#include "dipolab/model.hpp"
#include "dipolab/phase.hpp"
#include "dipolab/radial.hpp"

using namespace dipolab;
namespace fs = std::filesystem;

namespace {

constexpr double kExpMinusPi = 0.04321391826377225;

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------- 1
bool central_claim(std::string& detail) {
    std::mt19937_64 rng(1001);
    std::uniform_real_distribution<double> mass(0.1, 10.0);
    std::uniform_real_distribution<double> pos(0.01, 5.0);
    std::uniform_real_distribution<double> any(-5.0, 5.0);
    for (int i = 0; i < 1000; ++i) {
        const model::Couplings c =
            model::reduce({mass(rng), pos(rng)}, {pos(rng), any(rng), 1.0});
        if (!(c.a_E > 0.0)) {
            detail = "sampler produced a_E = 0";
            return false;
        }
        const model::WellPosednessReport r = model::well_posedness(c);
        if (r.well_posed ||
            std::find(r.violating_m.begin(), r.violating_m.end(), 0) ==
                r.violating_m.end()) {
            detail = "a_E > 0 case not flagged at m = 0";
            return false;
        }
    }
    for (int i = 0; i < 1000; ++i) {
        const model::Couplings c =
            model::reduce({mass(rng), pos(rng)}, {0.0, any(rng), 1.0});
        if (!model::well_posedness(c).well_posed) {
            detail = "k = 0 case reported ill-posed";
            return false;
        }
    }
    detail = "1000 ill-posed + 1000 well-posed verdicts correct";
    return true;
}

// ---------------------------------------------------------------- 2
bool channel_identity(std::string& detail) {
    std::mt19937_64 rng(1002);
    std::uniform_int_distribution<int> num(-(1 << 20), 1 << 20);
    std::uniform_int_distribution<int> nonneg(0, 1 << 20);
    std::uniform_int_distribution<int> mm(-1000, 1000);
    for (int i = 0; i < 100000; ++i) {
        // dyadic rationals keep every intermediate exactly representable
        const model::Couplings c{num(rng) / 1024.0, nonneg(rng) / 1024.0, 1.0};
        const int m = mm(rng);
        const double lhs =
            model::channel_coefficient(m, c) - model::channel_coefficient(-m, c);
        if (lhs != 4.0 * static_cast<double>(m) * c.a_B) {
            detail = "identity broke at m = " + std::to_string(m);
            return false;
        }
    }
    detail = "exact over 1e5 samples";
    return true;
}

// ---------------------------------------------------------------- 3
bool mass_renormalization(std::string& detail) {
    const model::ParticleParams particle{1.0, 1.0};
    const model::FieldConfig fields{0.0, 2.0, 1.0};
    const double e4000 =
        phase::mass_renormalization_check(particle, fields, 1.0, 3, 2, 4000).max_rel_error;
    const double e8000 =
        phase::mass_renormalization_check(particle, fields, 1.0, 3, 2, 8000).max_rel_error;
    std::ostringstream os;
    os << "max rel err " << e4000 << " at 4000, " << e8000 << " at 8000";
    detail = os.str();
    return e4000 <= 5e-3 && e8000 * 3.5 <= e4000;
}

// ---------------------------------------------------------------- 4
bool oracle_equivalence(std::string& detail) {
    double worst = 0.0;
    for (int nu : {0, 1, 2}) {
        radial::RadialProblem p{static_cast<double>(nu * nu), 0.0, 1.0,
                                {4000, radial::GridSpacing::Linear}};
        const radial::SpectralResult s = radial::dirichlet_spectrum(p, 3);
        for (int n = 1; n <= 3; ++n) {
            const double j = radial::bessel_zero(nu, n);
            worst = std::max(worst, std::fabs(s.eigenvalues[n - 1] - j * j) / (j * j));
        }
    }
    std::ostringstream os;
    os << "worst rel err vs bessel_zero^2: " << worst;
    detail = os.str();
    return worst <= 5e-3;
}

// ---------------------------------------------------------------- 5
bool geometric_tower(std::string& detail) {
    radial::RadialProblem p{0.0, 1.0, 1e6, {4000, radial::GridSpacing::Logarithmic}};
    const radial::SpectralResult s = radial::regularized_bound_spectrum(2.0, p);
    if (s.eigenvalues.size() < 3) {
        detail = "fewer than 3 bound states resolved";
        return false;
    }
    int good = 0;
    for (std::size_t i = 0; i + 1 < s.eigenvalues.size(); ++i) {
        const double ratio = s.eigenvalues[i + 1] / s.eigenvalues[i];
        if (std::fabs(ratio - kExpMinusPi) <= 0.1 * kExpMinusPi) ++good;
    }
    std::ostringstream os;
    os << s.eigenvalues.size() << " bound states, " << good
       << " successive ratios within 10% of exp(-pi)";
    detail = os.str();
    return good >= 2;
}

// ---------------------------------------------------------------- 6
bool cutoff_divergence(std::string& detail) {
    const auto probe = radial::cutoff_scaling_probe(2.0, {1.0, 0.5, 0.25}, 1e5, 4000);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [a, e0] : probe) {
        const double x = std::log(a), y = std::log(std::fabs(e0));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(probe.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    std::ostringstream os;
    os << "log-log slope " << slope;
    detail = os.str();
    return std::fabs(slope + 2.0) <= 0.1;
}

// ---------------------------------------------------------------- 7
bool holonomy(std::string& detail) {
    const model::ParticleParams particle{1.0, 1.0};
    const model::FieldConfig fields{1.0, 0.25, 1.0};  // a_B = 0.25
    const double want = -2.0 * M_PI * 0.25;
    const phase::LoopPath loops[3] = {phase::make_circle({0, 0}, 1.0),
                                      phase::make_ellipse({0, 0}, 1.0, 3.0),
                                      phase::make_square({0, 0}, 4.0)};
    double worst = 0.0;
    for (const auto& loop : loops) {
        const phase::PhaseResult r = phase::loop_holonomy(loop, particle, fields);
        if (r.winding != 1) {
            detail = "unexpected winding";
            return false;
        }
        worst = std::max(worst, std::fabs(r.phase - want));
    }
    const phase::PhaseResult far_sq =
        phase::loop_holonomy(phase::make_square({5, 0}, 1.0), particle, fields);
    const phase::PhaseResult far_ci =
        phase::loop_holonomy(phase::make_circle({10, 10}, 1.0), particle, fields);
    std::ostringstream os;
    os << "winding-1 max dev " << worst << ", winding-0 phases " << far_sq.phase << ", "
       << far_ci.phase;
    detail = os.str();
    return worst <= 1e-8 && std::fabs(far_sq.phase) <= 1e-9 &&
           std::fabs(far_ci.phase) <= 1e-9;
}

// ---------------------------------------------------------------- 8
bool classical_conservation(std::string& detail) {
    std::mt19937_64 rng(1008);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> up(0.1, 1.0);
    std::uniform_real_distribution<double> ur(0.5, 2.0);
    double worst_h = 0.0, worst_pt = 0.0;
    int kept = 0, attempts = 0;
    while (kept < 20 && ++attempts < 200) {
        const model::ParticleParams particle{0.5 + ur(rng), up(rng)};
        const model::FieldConfig fields{0.2 + 0.8 * up(rng), u(rng), 1.0};
        const double ang = M_PI * u(rng);
        const double r0 = ur(rng);
        const dynamics::TrajectoryState s0{{r0 * std::cos(ang), r0 * std::sin(ang)},
                                           {u(rng), u(rng)},
                                           0.0};
        dynamics::IntegrateOptions opts;
        opts.sample_stride = 4;
        const dynamics::Trajectory traj =
            dynamics::integrate(s0, 1e4, 1e-10, particle, fields, opts);
        // conservation is asserted away from capture events
        if (traj.outcome.kind == dynamics::OutcomeKind::Captured) continue;
        ++kept;
        const double h0 = traj.energy_log.front();
        const double pt0 = traj.p_theta_log.front();
        const double v0 = model::scalar_potential(s0.x.norm(), particle, fields);
        const double escale = std::max(std::fabs(h0), std::fabs(h0 - v0) + std::fabs(v0));
        const double pscale = std::max(std::fabs(pt0), s0.x.norm() * s0.p.norm()) + 1e-12;
        for (std::size_t i = 0; i < traj.energy_log.size(); ++i) {
            worst_h = std::max(worst_h, std::fabs(traj.energy_log[i] - h0) / escale);
            worst_pt = std::max(worst_pt, std::fabs(traj.p_theta_log[i] - pt0) / pscale);
        }
    }
    std::ostringstream os;
    os << kept << " trajectories, max drift H " << worst_h << ", p_theta " << worst_pt;
    detail = os.str();
    return kept == 20 && worst_h <= 1e-8 && worst_pt <= 1e-8;
}

// ---------------------------------------------------------------- 9
bool classical_capture(std::string& detail) {
    const model::ParticleParams particle{1.0, 1.0};
    const model::FieldConfig fields{1.0, 0.0, 1.0};  // threshold p_theta^2 = 1
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    dynamics::IntegrateOptions opts;
    opts.escape_radius_factor = 100.0;
    int done = 0, agreed = 0;
    while (done < 20) {
        const double p_theta = u(rng);
        if (std::fabs(p_theta * p_theta - 1.0) < 0.05) continue;  // marginal band
        ++done;
        // zero-energy initial data where it exists: p_r^2 = 1 - p_theta^2 at r0 = 1
        const double pr = -std::sqrt(std::max(1.0 - p_theta * p_theta, 0.0));
        const dynamics::TrajectoryState s0{{1.0, 0.0}, {pr, p_theta}, 0.0};
        const dynamics::Trajectory traj =
            dynamics::integrate(s0, 500.0, 1e-10, particle, fields, opts);
        const bool predicted =
            dynamics::capture_criterion(p_theta, particle, fields).captured_predicted;
        const bool captured = traj.outcome.kind == dynamics::OutcomeKind::Captured;
        if (predicted == captured) ++agreed;
    }
    std::ostringstream os;
    os << agreed << "/20 agreements";
    detail = os.str();
    return agreed == 20;
}

// ---------------------------------------------------------------- 10
bool gradient_check(std::string& detail) {
    std::mt19937_64 rng(1010);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::uniform_real_distribution<double> up(0.2, 2.0);
    const double h = 1e-6;
    double worst = 0.0;
    int done = 0;
    while (done < 100) {
        const model::ParticleParams particle{up(rng), up(rng)};
        const model::FieldConfig fields{up(rng), u(rng), 1.0};
        const dynamics::TrajectoryState s{{u(rng), u(rng)}, {u(rng), u(rng)}, 0.0};
        if (s.x.norm() < 0.3) continue;
        ++done;
        Vec2 dx, dp;
        dynamics::eom_rhs(s, particle, fields, dx, dp);
        auto H = [&](Vec2 x, Vec2 p) {
            return dynamics::hamiltonian_value({x, p, 0.0}, particle, fields);
        };
        const Vec2 fd_dx{
            (H(s.x, {s.p.x + h, s.p.y}) - H(s.x, {s.p.x - h, s.p.y})) / (2 * h),
            (H(s.x, {s.p.x, s.p.y + h}) - H(s.x, {s.p.x, s.p.y - h})) / (2 * h)};
        const Vec2 fd_dp{
            -(H({s.x.x + h, s.x.y}, s.p) - H({s.x.x - h, s.x.y}, s.p)) / (2 * h),
            -(H({s.x.x, s.x.y + h}, s.p) - H({s.x.x, s.x.y - h}, s.p)) / (2 * h)};
        const double scale = std::sqrt(dx.norm_sq() + dp.norm_sq()) + 1e-12;
        worst = std::max(worst, (dx - fd_dx).norm() / scale);
        worst = std::max(worst, (dp - fd_dp).norm() / scale);
    }
    std::ostringstream os;
    os << "worst relative deviation " << worst;
    detail = os.str();
    return worst <= 1e-6;
}

// ---------------------------------------------------------------- 11
struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& cmdline) {
    CliResult r;
    FILE* pipe = popen((cmdline + " 2>/dev/null").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
    return r;
}

bool cli_determinism(std::string& detail) {
    std::string cli;
    if (const char* env = std::getenv("DIPOLAB_CLI")) {
        cli = env;
    } else {
        for (const char* candidate :
             {"tools/dipolab", "./dipolab", "../tools/dipolab", "build/tools/dipolab"}) {
            if (fs::exists(candidate)) {
                cli = candidate;
                break;
            }
        }
    }
    if (cli.empty()) {
        detail = "DIPOLAB_CLI not set and no dipolab binary found nearby";
        return false;
    }
    const fs::path dir =
        fs::temp_directory_path() / ("dipolab_accept_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto write = [&](const char* name, const std::string& text) {
        std::ofstream f(dir / name, std::ios::binary);
        f << text;
        return (dir / name).string();
    };

    const std::string base = cli;
    const std::string cfg_k0 = write("k0.json",
        R"({"particle": {"M": 1.0, "alpha": 1.0}, "fields": {"k": 0.0, "B": 1.0}})");
    const std::string cfg_kpos = write("kpos.json",
        R"({"particle": {"M": 1.0, "alpha": 1.0}, "fields": {"k": 0.5, "B": 1.0}})");
    const std::string cfg_bad = write("bad.json",
        R"({"particle": {"M": 1.0,)");
    const std::string cfg_unknown = write("unknown.json",
        R"({"particle": {"M": 1.0, "alpha": 1.0}, "fields": {"k": 0.0, "B": 1.0}, "bogus": 1})");
    const std::string cfg_sweep = write("sweep.json", R"({
        "particle": {"M": 1.0, "alpha": 1.0},
        "fields": {"k": 1.0, "B": 1.0},
        "seed": 7,
        "sweep": {"alpha": [0.5, 1.0], "k": {"from": 0.0, "to": 1.0, "count": 5},
                  "B": [-1.0, 1.0], "M": 1.0, "include_phase": true}
    })");

    bool ok = true;
    std::ostringstream os;

    const CliResult well = run_cli(base + " channels --config " + cfg_k0);
    const CliResult ill = run_cli(base + " channels --config " + cfg_kpos);
    const CliResult bad = run_cli(base + " channels --config " + cfg_bad);
    const CliResult unknown = run_cli(base + " channels --config " + cfg_unknown);
    os << "exit codes k0/kpos/bad/unknown = " << well.exit_code << "/" << ill.exit_code
       << "/" << bad.exit_code << "/" << unknown.exit_code;
    ok = ok && well.exit_code == 0 && ill.exit_code == 2 && bad.exit_code == 1 &&
         unknown.exit_code == 1;

    const CliResult s1 = run_cli(base + " sweep --config " + cfg_sweep + " --threads 1");
    const CliResult s2 = run_cli(base + " sweep --config " + cfg_sweep + " --threads 1");
    const CliResult s4 = run_cli(base + " sweep --config " + cfg_sweep + " --threads 4");
    ok = ok && s1.exit_code == 0 && s1.out == s2.out && s1.out == s4.out;
    const long rows = std::count(s1.out.begin(), s1.out.end(), '\n');
    ok = ok && rows == 21;  // header + 2*5*2*1 points
    os << "; sweep bytes " << s1.out.size() << ", rows " << rows
       << (s1.out == s4.out ? ", threads agree" : ", THREAD MISMATCH");

    fs::remove_all(dir);
    detail = os.str();
    return ok;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "central claim: a_E > 0 breaks m = 0", 1.0, central_claim},
        {2, "channel asymmetry identity exact", 1.0, channel_identity},
        {3, "k = 0 mass renormalization spectrum", 30.0, mass_renormalization},
        {4, "dirichlet spectrum vs bessel zeros", 30.0, oracle_equivalence},
        {5, "fall-to-center geometric tower", 60.0, geometric_tower},
        {6, "cutoff scaling eps_0 ~ 1/a^2", 60.0, cutoff_divergence},
        {7, "holonomy equals -2 pi n a_B", 1.0, holonomy},
        {8, "classical energy/p_theta conservation", 60.0, classical_conservation},
        {9, "classical capture criterion agreement", 60.0, classical_capture},
        {10, "analytic gradients vs finite differences", 1.0, gradient_check},
        {11, "CLI determinism and exit codes", 5.0, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs < c.budget_s;
        if (!in_budget) detail += " [over runtime budget]";
        const bool pass = ok && in_budget;
        if (!pass) ++failures;
        std::printf("%s  %2d. %s (%.2fs) -- %s\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, secs, detail.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
