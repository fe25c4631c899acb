// dipolab command line front end: channel reports, radial spectra, holonomy
// phases, classical runs and parameter sweeps, driven by a strict JSON
// config.  Exit codes: 0 success / well-posed, 1 usage or config error,
// 2 ill-posed physics or refusal.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dipolab/dynamics.hpp"
#include "dipolab/model.hpp"
#include "dipolab/phase.hpp"
#include "dipolab/radial.hpp"

using nlohmann::json;
using nlohmann::ordered_json;
namespace model = dipolab::model;
namespace radial = dipolab::radial;
namespace phase = dipolab::phase;
namespace dynamics = dipolab::dynamics;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PhysicsRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& ctx) {
    if (!j.is_object()) throw ConfigError(ctx + " must be a JSON object");
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key \"" + item.key() + "\" in " + ctx);
    }
}

double get_num(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ConfigError(ctx + " is missing \"" + key + "\"");
    if (!j[key].is_number()) throw ConfigError(ctx + "." + key + " must be a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const std::string& key, double fallback,
                  const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw ConfigError(ctx + "." + key + " must be a number");
    return j[key].get<double>();
}

int get_int_or(const json& j, const std::string& key, int fallback,
               const std::string& ctx) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer())
        throw ConfigError(ctx + "." + key + " must be an integer");
    return j[key].get<int>();
}

dipolab::Vec2 get_vec2(const json& j, const std::string& key, const std::string& ctx) {
    if (!j.contains(key)) throw ConfigError(ctx + " is missing \"" + key + "\"");
    const json& v = j[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        throw ConfigError(ctx + "." + key + " must be [x, y]");
    return {v[0].get<double>(), v[1].get<double>()};
}

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format;  // "csv" or "json"; empty = command default
    int threads = 1;
    std::optional<double> M, alpha, k, B, hbar;
};

struct LoadedConfig {
    json root;
    model::ParticleParams particle{1.0, 0.0};
    model::FieldConfig fields{0.0, 0.0, 1.0};
};

LoadedConfig load_config(const CommonOpts& opts) {
    std::ifstream in(opts.config_path);
    if (!in) throw ConfigError("cannot open config file: " + opts.config_path);
    json root;
    try {
        root = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    check_keys(root,
               {"particle", "fields", "seed", "channels", "spectrum", "phase",
                "classical", "sweep"},
               "config");
    if (!root.contains("particle")) throw ConfigError("config is missing \"particle\"");
    if (!root.contains("fields")) throw ConfigError("config is missing \"fields\"");
    check_keys(root["particle"], {"M", "alpha"}, "particle");
    check_keys(root["fields"], {"k", "B", "hbar"}, "fields");
    if (root.contains("seed") && !root["seed"].is_number_integer())
        throw ConfigError("seed must be an integer");

    LoadedConfig cfg;
    cfg.root = root;
    cfg.particle.mass = get_num(root["particle"], "M", "particle");
    cfg.particle.alpha = get_num(root["particle"], "alpha", "particle");
    cfg.fields.k = get_num(root["fields"], "k", "fields");
    cfg.fields.B = get_num(root["fields"], "B", "fields");
    cfg.fields.hbar = get_num_or(root["fields"], "hbar", 1.0, "fields");

    // flag overrides beat file values
    if (opts.M) cfg.particle.mass = *opts.M;
    if (opts.alpha) cfg.particle.alpha = *opts.alpha;
    if (opts.k) cfg.fields.k = *opts.k;
    if (opts.B) cfg.fields.B = *opts.B;
    if (opts.hbar) cfg.fields.hbar = *opts.hbar;

    // a negative k only flips the radial direction convention
    cfg.fields.k = std::fabs(cfg.fields.k);

    try {
        model::validate(cfg.particle);
        model::validate(cfg.fields);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid physical parameters: ") + e.what());
    }
    return cfg;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.header.size(); ++i)
        os << t.header[i] << (i + 1 < t.header.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
}

class OutputSink {
  public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string pick_format(const CommonOpts& opts, const char* fallback) {
    if (opts.format.empty()) return fallback;
    if (opts.format != "csv" && opts.format != "json")
        throw ConfigError("--format must be csv or json");
    return opts.format;
}

// ---------------------------------------------------------------------------

int run_channels(const CommonOpts& opts) {
    const LoadedConfig cfg = load_config(opts);
    double tol = 0.0;
    if (cfg.root.contains("channels")) {
        check_keys(cfg.root["channels"], {"tol"}, "channels");
        tol = get_num_or(cfg.root["channels"], "tol", 0.0, "channels");
    }
    const model::Couplings c = model::reduce(cfg.particle, cfg.fields);
    const model::WellPosednessReport report = model::well_posedness(c);

    std::vector<model::Channel> channels;
    for (int m = -report.m_scan_bound; m <= report.m_scan_bound; ++m)
        channels.push_back(model::make_channel(m, c, tol));

    OutputSink sink(opts.out_path);
    if (pick_format(opts, "csv") == "csv") {
        Table t;
        t.header = {"m", "nu_sq", "class"};
        for (const auto& ch : channels)
            t.rows.push_back({std::to_string(ch.m), fmt17(ch.nu_sq), model::to_string(ch.cls)});
        write_csv(sink.stream(), t);
    } else {
        ordered_json out;
        out["a_B"] = c.a_B;
        out["a_E"] = c.a_E;
        out["m_eff"] = c.m_eff;
        out["m_scan_bound"] = report.m_scan_bound;
        out["well_posed"] = report.well_posed;
        out["violating_m"] = report.violating_m;
        ordered_json arr = ordered_json::array();
        for (const auto& ch : channels)
            arr.push_back(
                {{"m", ch.m}, {"nu_sq", ch.nu_sq}, {"class", model::to_string(ch.cls)}});
        out["channels"] = arr;
        sink.stream() << out.dump(2) << "\n";
    }

    if (report.well_posed) {
        std::cerr << "verdict: well-posed\n";
        return 0;
    }
    std::cerr << "verdict: ill-posed (violating m:";
    for (int m : report.violating_m) std::cerr << " " << m;
    std::cerr << ")\n";
    return 2;
}

int run_spectrum(const CommonOpts& opts) {
    const LoadedConfig cfg = load_config(opts);
    if (!cfg.root.contains("spectrum"))
        throw ConfigError("config is missing \"spectrum\"");
    const json& sp = cfg.root["spectrum"];
    check_keys(sp, {"m", "nu_sq", "r_inner", "r_outer", "n_points", "spacing", "n_levels"},
               "spectrum");

    double nu_sq;
    if (sp.contains("m") == sp.contains("nu_sq"))
        throw ConfigError("spectrum needs exactly one of \"m\" or \"nu_sq\"");
    if (sp.contains("m")) {
        const int m = get_int_or(sp, "m", 0, "spectrum");
        nu_sq = model::channel_coefficient(m, model::reduce(cfg.particle, cfg.fields));
    } else {
        nu_sq = get_num(sp, "nu_sq", "spectrum");
    }

    radial::RadialProblem p;
    p.nu_sq = nu_sq;
    p.r_inner = get_num_or(sp, "r_inner", 0.0, "spectrum");
    p.r_outer = get_num(sp, "r_outer", "spectrum");
    p.grid.n_points = get_int_or(sp, "n_points", 4000, "spectrum");
    std::string spacing = sp.contains("spacing") ? sp["spacing"].get<std::string>() : "";
    if (!spacing.empty() && spacing != "linear" && spacing != "log")
        throw ConfigError("spectrum.spacing must be \"linear\" or \"log\"");
    const int n_levels = get_int_or(sp, "n_levels", 6, "spectrum");

    radial::SpectralResult result;
    if (nu_sq < 0.0) {
        if (!(p.r_inner > 0.0))
            throw PhysicsRefusal(
                "supercritical channel (nu_sq = " + fmt17(nu_sq) +
                ") has no ground state without an inner cutoff: the radial "
                "problem is ill-posed; set spectrum.r_inner > 0");
        if (spacing == "linear")
            throw ConfigError("supercritical mode requires a logarithmic grid");
        p.grid.spacing = radial::GridSpacing::Logarithmic;
        result = radial::regularized_bound_spectrum(std::sqrt(-nu_sq), p);
        if (sp.contains("n_levels") &&
            result.eigenvalues.size() > static_cast<std::size_t>(n_levels)) {
            result.eigenvalues.resize(n_levels);
            result.residual_norms.resize(n_levels);
            result.eigenvectors.resize(n_levels);
        }
    } else {
        p.grid.spacing =
            (spacing == "log") ? radial::GridSpacing::Logarithmic : radial::GridSpacing::Linear;
        result = radial::dirichlet_spectrum(p, n_levels);
    }

    Table t;
    t.header = {"index", "epsilon", "residual"};
    for (std::size_t i = 0; i < result.eigenvalues.size(); ++i)
        t.rows.push_back({std::to_string(i + 1), fmt17(result.eigenvalues[i]),
                          fmt17(result.residual_norms[i])});

    OutputSink sink(opts.out_path);
    if (pick_format(opts, "csv") == "csv") {
        write_csv(sink.stream(), t);
    } else {
        ordered_json out;
        out["nu_sq"] = result.nu_sq;
        out["u_coefficient"] = result.u_coefficient;
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < result.eigenvalues.size(); ++i)
            arr.push_back({{"index", i + 1},
                           {"epsilon", result.eigenvalues[i]},
                           {"residual", result.residual_norms[i]}});
        out["levels"] = arr;
        sink.stream() << out.dump(2) << "\n";
    }
    return 0;
}

phase::LoopPath path_from_config(const json& pc) {
    check_keys(pc,
               {"type", "center", "radius", "axes", "side", "n_segments", "vertices",
                "repeats", "reverse"},
               "phase.path");
    if (!pc.contains("type")) throw ConfigError("phase.path is missing \"type\"");
    const std::string type = pc["type"].get<std::string>();
    const int n_segments = get_int_or(pc, "n_segments", 256, "phase.path");
    dipolab::Vec2 center{0.0, 0.0};
    if (pc.contains("center")) center = get_vec2(pc, "center", "phase.path");

    phase::LoopPath path;
    if (type == "circle") {
        path = phase::make_circle(center, get_num(pc, "radius", "phase.path"), n_segments);
    } else if (type == "ellipse") {
        const json& ax = pc.contains("axes") ? pc["axes"] : json();
        if (!ax.is_array() || ax.size() != 2)
            throw ConfigError("phase.path.axes must be [ax, ay]");
        path = phase::make_ellipse(center, ax[0].get<double>(), ax[1].get<double>(),
                                   n_segments);
    } else if (type == "square") {
        path = phase::make_square(center, get_num(pc, "side", "phase.path"),
                                  std::max(1, n_segments / 4));
    } else if (type == "polyline") {
        if (!pc.contains("vertices") || !pc["vertices"].is_array())
            throw ConfigError("phase.path.vertices must be an array of [x, y]");
        std::vector<dipolab::Vec2> verts;
        for (const auto& v : pc["vertices"]) {
            if (!v.is_array() || v.size() != 2)
                throw ConfigError("phase.path.vertices entries must be [x, y]");
            verts.push_back({v[0].get<double>(), v[1].get<double>()});
        }
        path = phase::make_polyline(std::move(verts));
    } else {
        throw ConfigError("phase.path.type must be circle, ellipse, square or polyline");
    }
    const int repeats = get_int_or(pc, "repeats", 1, "phase.path");
    if (repeats > 1) path = phase::repeated(path, repeats);
    if (pc.contains("reverse") && pc["reverse"].get<bool>()) path = phase::reversed(path);
    return path;
}

int run_phase(const CommonOpts& opts) {
    const LoadedConfig cfg = load_config(opts);
    if (!cfg.root.contains("phase")) throw ConfigError("config is missing \"phase\"");
    const json& ph = cfg.root["phase"];
    check_keys(ph, {"path"}, "phase");
    if (!ph.contains("path")) throw ConfigError("phase is missing \"path\"");

    phase::LoopPath path;
    try {
        path = path_from_config(ph["path"]);
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("invalid phase path: ") + e.what());
    }

    const phase::PhaseResult result = phase::loop_holonomy(path, cfg.particle, cfg.fields);
    const model::Couplings c = model::reduce(cfg.particle, cfg.fields);

    OutputSink sink(opts.out_path);
    if (pick_format(opts, "json") == "json") {
        ordered_json out;
        out["phase"] = result.phase;
        out["winding"] = result.winding;
        out["a_B"] = c.a_B;
        out["well_posed"] = result.verdict.well_posed;
        out["violating_m"] = result.verdict.violating_m;
        sink.stream() << out.dump(2) << "\n";
    } else {
        Table t;
        t.header = {"phase", "winding", "a_B", "well_posed", "violating_m"};
        std::string viol;
        for (std::size_t i = 0; i < result.verdict.violating_m.size(); ++i) {
            if (i) viol += ";";
            viol += std::to_string(result.verdict.violating_m[i]);
        }
        t.rows.push_back({fmt17(result.phase), std::to_string(result.winding),
                          fmt17(c.a_B), result.verdict.well_posed ? "true" : "false",
                          viol});
        write_csv(sink.stream(), t);
    }
    return 0;
}

int run_classical(const CommonOpts& opts) {
    const LoadedConfig cfg = load_config(opts);
    if (!cfg.root.contains("classical")) throw ConfigError("config is missing \"classical\"");
    const json& cl = cfg.root["classical"];
    check_keys(cl,
               {"x0", "p0", "t_end", "tol", "sample_stride", "capture_radius_factor",
                "escape_radius_factor"},
               "classical");

    dynamics::TrajectoryState s0;
    s0.x = get_vec2(cl, "x0", "classical");
    s0.p = get_vec2(cl, "p0", "classical");
    const double t_end = get_num(cl, "t_end", "classical");
    const double tol = get_num_or(cl, "tol", 1e-10, "classical");
    dynamics::IntegrateOptions iopts;
    iopts.sample_stride =
        static_cast<std::size_t>(get_int_or(cl, "sample_stride", 1, "classical"));
    iopts.capture_radius_factor =
        get_num_or(cl, "capture_radius_factor", 1e-6, "classical");
    iopts.escape_radius_factor =
        get_num_or(cl, "escape_radius_factor", 1e6, "classical");

    dynamics::Trajectory traj;
    try {
        traj = dynamics::integrate(s0, t_end, tol, cfg.particle, cfg.fields, iopts);
    } catch (const std::domain_error& e) {
        throw ConfigError(std::string("invalid initial state: ") + e.what());
    }

    const char* outcome_name =
        traj.outcome.kind == dynamics::OutcomeKind::Captured   ? "captured"
        : traj.outcome.kind == dynamics::OutcomeKind::Escaped ? "escaped"
                                                              : "bounded";

    OutputSink sink(opts.out_path);
    if (pick_format(opts, "csv") == "csv") {
        Table t;
        t.header = {"t", "x1", "x2", "p1", "p2", "H", "p_theta"};
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            const auto& s = traj.samples[i];
            t.rows.push_back({fmt17(s.t), fmt17(s.x.x), fmt17(s.x.y), fmt17(s.p.x),
                              fmt17(s.p.y), fmt17(traj.energy_log[i]),
                              fmt17(traj.p_theta_log[i])});
        }
        t.rows.push_back({"outcome", outcome_name, fmt17(traj.outcome.t_event),
                          traj.outcome.step_underflow ? "step_underflow" : "", "", "",
                          ""});
        write_csv(sink.stream(), t);
    } else {
        ordered_json out;
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < traj.samples.size(); ++i) {
            const auto& s = traj.samples[i];
            arr.push_back({{"t", s.t},
                           {"x", {s.x.x, s.x.y}},
                           {"p", {s.p.x, s.p.y}},
                           {"H", traj.energy_log[i]},
                           {"p_theta", traj.p_theta_log[i]}});
        }
        out["samples"] = arr;
        out["outcome"] = {{"kind", outcome_name},
                          {"t_event", traj.outcome.t_event},
                          {"step_underflow", traj.outcome.step_underflow}};
        sink.stream() << out.dump(2) << "\n";
    }
    return 0;
}

std::vector<double> parse_range(const json& j, const std::string& ctx) {
    if (j.is_number()) return {j.get<double>()};
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& v : j) {
            if (!v.is_number()) throw ConfigError(ctx + " entries must be numbers");
            out.push_back(v.get<double>());
        }
        if (out.empty()) throw ConfigError(ctx + " must not be empty");
        return out;
    }
    if (j.is_object()) {
        check_keys(j, {"from", "to", "count"}, ctx);
        const double from = get_num(j, "from", ctx);
        const double to = get_num(j, "to", ctx);
        const int count = get_int_or(j, "count", 2, ctx);
        if (count < 1) throw ConfigError(ctx + ".count must be >= 1");
        std::vector<double> out(count);
        for (int i = 0; i < count; ++i)
            out[i] = (count == 1) ? from
                                  : from + (to - from) * static_cast<double>(i) /
                                               static_cast<double>(count - 1);
        return out;
    }
    throw ConfigError(ctx + " must be a number, an array, or {from, to, count}");
}

int run_sweep(const CommonOpts& opts) {
    const LoadedConfig cfg = load_config(opts);
    if (!cfg.root.contains("sweep")) throw ConfigError("config is missing \"sweep\"");
    const json& sw = cfg.root["sweep"];
    check_keys(sw, {"alpha", "k", "B", "M", "include_phase"}, "sweep");

    auto range_or_default = [&](const char* key, double fallback) {
        return sw.contains(key) ? parse_range(sw[key], std::string("sweep.") + key)
                                : std::vector<double>{fallback};
    };
    const std::vector<double> alphas = range_or_default("alpha", cfg.particle.alpha);
    const std::vector<double> ks = range_or_default("k", cfg.fields.k);
    const std::vector<double> Bs = range_or_default("B", cfg.fields.B);
    const std::vector<double> Ms = range_or_default("M", cfg.particle.mass);
    const bool include_phase =
        sw.contains("include_phase") && sw["include_phase"].get<bool>();

    struct Point {
        double alpha, k, B, M;
    };
    std::vector<Point> points;
    points.reserve(alphas.size() * ks.size() * Bs.size() * Ms.size());
    for (double a : alphas)
        for (double k : ks)
            for (double B : Bs)
                for (double M : Ms) points.push_back({a, k, B, M});

    struct RowData {
        model::Couplings c;
        double nu0;
        bool well_posed;
        std::size_t n_violating;
        double phase1;
    };
    std::vector<RowData> rows(points.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= points.size()) return;
            const Point& pt = points[i];
            const model::ParticleParams particle{pt.M, pt.alpha};
            const model::FieldConfig fields{std::fabs(pt.k), pt.B, cfg.fields.hbar};
            const model::Couplings c = model::reduce(particle, fields);
            const model::WellPosednessReport rep = model::well_posedness(c);
            rows[i] = {c, model::channel_coefficient(0, c), rep.well_posed,
                       rep.violating_m.size(), phase::winding_phase(1, c)};
        }
    };

    const int n_threads = std::max(1, opts.threads);
    if (n_threads == 1 || points.size() < 2) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    OutputSink sink(opts.out_path);
    if (pick_format(opts, "csv") == "csv") {
        Table t;
        t.header = {"alpha", "k",     "B",        "M",          "a_B",
                    "a_E",   "m_eff", "nu_sq_m0", "well_posed", "n_violating"};
        if (include_phase) t.header.push_back("phase_winding1");
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Point& pt = points[i];
            const RowData& r = rows[i];
            std::vector<std::string> row{fmt17(pt.alpha), fmt17(pt.k), fmt17(pt.B),
                                         fmt17(pt.M), fmt17(r.c.a_B), fmt17(r.c.a_E),
                                         fmt17(r.c.m_eff), fmt17(r.nu0),
                                         r.well_posed ? "true" : "false",
                                         std::to_string(r.n_violating)};
            if (include_phase) row.push_back(fmt17(r.phase1));
            t.rows.push_back(std::move(row));
        }
        write_csv(sink.stream(), t);
    } else {
        ordered_json arr = ordered_json::array();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Point& pt = points[i];
            const RowData& r = rows[i];
            ordered_json obj{{"alpha", pt.alpha},    {"k", pt.k},
                             {"B", pt.B},            {"M", pt.M},
                             {"a_B", r.c.a_B},       {"a_E", r.c.a_E},
                             {"m_eff", r.c.m_eff},   {"nu_sq_m0", r.nu0},
                             {"well_posed", r.well_posed},
                             {"n_violating", r.n_violating}};
            if (include_phase) obj["phase_winding1"] = r.phase1;
            arr.push_back(obj);
        }
        sink.stream() << arr.dump(2) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dipolab: polarizable particle in a line-charge field"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opts.config_path, "JSON config file")->required();
        cmd->add_option("--out", opts.out_path, "output file (default: stdout)");
        cmd->add_option("--format", opts.format, "csv or json");
        cmd->add_option("--threads", opts.threads, "worker threads for sweeps");
        cmd->add_option("--M", opts.M, "override particle mass");
        cmd->add_option("--alpha", opts.alpha, "override polarizability");
        cmd->add_option("--k", opts.k, "override electric field scale");
        cmd->add_option("--B", opts.B, "override magnetic field");
        cmd->add_option("--hbar", opts.hbar, "override hbar");
    };

    CLI::App* cmd_channels =
        app.add_subcommand("channels", "per-channel coefficients and verdict");
    CLI::App* cmd_spectrum = app.add_subcommand("spectrum", "radial eigenvalues");
    CLI::App* cmd_phase = app.add_subcommand("phase", "loop holonomy of the gauge potential");
    CLI::App* cmd_classical = app.add_subcommand("classical", "integrate a trajectory");
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "couplings over parameter ranges");
    for (CLI::App* c : {cmd_channels, cmd_spectrum, cmd_phase, cmd_classical, cmd_sweep})
        add_common(c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*cmd_channels) return run_channels(opts);
        if (*cmd_spectrum) return run_spectrum(opts);
        if (*cmd_phase) return run_phase(opts);
        if (*cmd_classical) return run_classical(opts);
        if (*cmd_sweep) return run_sweep(opts);
    } catch (const PhysicsRefusal& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
