// ehdsim command line: configuration ingestion, subcommand dispatch and all
// file output. Every run echoes its effective config and stamps outputs with
// a provenance header (version, config hash, seed).

#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ehdsim/ehdsim.hpp"

namespace fs = std::filesystem;
using namespace ehd;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_dir;
    std::int64_t seed_override = -1;
    int workers = 1;
    bool reproducible = false;
};

std::string timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string provenance(const Config& cfg, const CliOptions& opt) {
    std::ostringstream os;
    os << "# ehdsim " << version_string << "\n";
    os << "# config = " << std::hex << std::setw(16) << std::setfill('0') << config_hash(cfg)
       << std::dec << "\n";
    os << "# seed = " << cfg.run_seed << "\n";
    if (!opt.reproducible) os << "# created = " << timestamp_utc() << "\n";
    return os.str();
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open output file '" + path.string() + "'");
    return f;
}

void write_effective_config(const Config& cfg, const CliOptions& opt) {
    auto f = open_output(fs::path(opt.out_dir) / "effective_config.txt");
    // comment lines parse away, so the echo still round-trips; the hash is
    // computed over the canonical serialization, not the file bytes
    f << provenance(cfg, opt);
    f << serialize_config(cfg);
    if (!f) throw IoError("failed writing effective_config.txt");
}

void cmd_field_map(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    const ArrayLayout layout = generate_layout(r.pattern, r.n_heads, r.spacing, r.process.standoff, r.head);
    const FieldSolution solution = solve_tip_charges(layout, r.process, r.constants);

    auto f = open_output(fs::path(opt.out_dir) / "field_map.csv");
    f << provenance(cfg, opt) << std::setprecision(17);
    f << "x,y,z,potential,ex,ey,ez\n";
    const auto axis = [](double lo, double hi, std::int64_t n, std::int64_t i) {
        return n > 1 ? lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1) : lo;
    };
    for (std::int64_t iz = 0; iz < cfg.field_map_nz; ++iz) {
        const double z = axis(cfg.field_map_z_min, cfg.field_map_z_max, cfg.field_map_nz, iz);
        for (std::int64_t iy = 0; iy < cfg.field_map_ny; ++iy) {
            const double y = axis(cfg.field_map_y_min, cfg.field_map_y_max, cfg.field_map_ny, iy);
            for (std::int64_t ix = 0; ix < cfg.field_map_nx; ++ix) {
                const double x = axis(cfg.field_map_x_min, cfg.field_map_x_max, cfg.field_map_nx, ix);
                const Vec3 p{x, y, z};
                const double v = potential_at(solution, p, r.constants);
                const Vec3 e = field_at(solution, p, r.constants);
                f << x << ',' << y << ',' << z << ',' << v << ',' << e.x << ',' << e.y << ',' << e.z
                  << '\n';
            }
        }
    }
    if (!f) throw IoError("failed writing field_map.csv");
}

void cmd_interference(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    if (cfg.interference_points < 2) throw ConfigError("interference.points must be >= 2");
    if (!(cfg.interference_spacing_min > 0.0 && cfg.interference_spacing_max > cfg.interference_spacing_min))
        throw ConfigError("interference sweep needs 0 < spacing_min < spacing_max");

    auto f = open_output(fs::path(opt.out_dir) / "interference.csv");
    f << provenance(cfg, opt) << std::setprecision(17);
    f << "spacing,head,tip,rho,active\n";
    const std::int64_t n = cfg.interference_points;
    for (std::int64_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k) / static_cast<double>(n - 1);
        const double s = cfg.interference_log_scale
                             ? cfg.interference_spacing_min *
                                   std::pow(cfg.interference_spacing_max / cfg.interference_spacing_min, t)
                             : cfg.interference_spacing_min +
                                   (cfg.interference_spacing_max - cfg.interference_spacing_min) * t;
        const ArrayLayout layout = generate_layout(r.pattern, r.n_heads, s, r.process.standoff, r.head);
        const auto rho = tip_interference_ratios(layout, r.process, r.constants);
        const auto active = cone_jet_active(rho, r.activity_threshold);
        const std::size_t tips_per_head = rho.size() / static_cast<std::size_t>(r.n_heads);
        for (std::size_t i = 0; i < rho.size(); ++i)
            f << s << ',' << i / tips_per_head << ',' << i % tips_per_head << ',' << rho[i] << ','
              << (active[i] ? 1 : 0) << '\n';
    }
    if (!f) throw IoError("failed writing interference.csv");
}

void write_stats(std::ostream& os, const PlumeStats& st) {
    os << std::setprecision(17);
    os << "emitted_parents = " << st.emitted << "\n";
    os << "total_droplets = " << st.total_droplets << "\n";
    os << "deposited = " << st.deposited << "\n";
    os << "aerosolized = " << st.aerosolized << "\n";
    os << "escaped = " << st.escaped << "\n";
    os << "in_flight = " << st.in_flight << "\n";
    os << "fission_events = " << st.fission_events << "\n";
    os << "max_generation = " << st.max_generation << "\n";
    os << "emitted_solid_mass_kg = " << st.emitted_solid_mass << "\n";
    os << "emitted_solvent_mass_kg = " << st.emitted_solvent_mass << "\n";
    os << "emitted_charge_C = " << st.emitted_charge << "\n";
    os << "deposited_solid_mass_kg = " << st.deposited_solid_mass << "\n";
    os << "aerosolized_solid_mass_kg = " << st.aerosolized_solid_mass << "\n";
    os << "escaped_solid_mass_kg = " << st.escaped_solid_mass << "\n";
    os << "in_flight_solid_mass_kg = " << st.in_flight_solid_mass << "\n";
    os << "deposited_charge_C = " << st.deposited_charge << "\n";
    os << "aerosolized_charge_C = " << st.aerosolized_charge << "\n";
    os << "escaped_charge_C = " << st.escaped_charge << "\n";
    os << "in_flight_charge_C = " << st.in_flight_charge << "\n";
    os << "terminal_solvent_mass_kg = " << st.terminal_solvent_mass << "\n";
}

PlumeResult run_plume_from(const Resolved& r, const CliOptions& opt) {
    const SprayStage stage = build_spray_stage(r);
    return run_plume(r, stage, opt.workers);
}

void write_events_csv(std::ostream& os, const std::vector<DepositionEvent>& events) {
    os << std::setprecision(17);
    os << "id,time,x,y,solid_volume,solvent_volume,generation\n";
    for (const auto& ev : events)
        os << ev.id << ',' << ev.time << ',' << ev.lab_x << ',' << ev.lab_y << ',' << ev.solid_volume
           << ',' << ev.solvent_volume << ',' << ev.generation << '\n';
}

void cmd_plume(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    const PlumeResult result = run_plume_from(r, opt);

    auto f = open_output(fs::path(opt.out_dir) / "plume_events.csv");
    f << provenance(cfg, opt);
    write_events_csv(f, result.events);
    if (!f) throw IoError("failed writing plume_events.csv");

    auto s = open_output(fs::path(opt.out_dir) / "plume_stats.txt");
    s << provenance(cfg, opt);
    write_stats(s, result.stats);
    if (!s) throw IoError("failed writing plume_stats.txt");
}

void cmd_deposit(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    const PlumeResult result = run_plume_from(r, opt);

    GridSpec spec = r.grid;
    const double w0 = spec.window_end > spec.window_start ? spec.window_start : 0.0;
    const double w1 = spec.window_end > spec.window_start ? spec.window_end : r.duration;
    const DepositionGrid grid = accumulate(result.events, r.motion, spec);

    {
        auto f = open_output(fs::path(opt.out_dir) / "thickness.csv");
        f << provenance(cfg, opt);
        write_grid_csv(f, grid);
        if (!f) throw IoError("failed writing thickness.csv");
    }
    {
        auto f = open_output(fs::path(opt.out_dir) / "thickness.bin");
        write_grid_binary(f, grid, provenance(cfg, opt));
        if (!f) throw IoError("failed writing thickness.bin");
    }
    {
        auto f = open_output(fs::path(opt.out_dir) / "deposit_report.txt");
        f << provenance(cfg, opt) << std::setprecision(17);
        f << "window_start_s = " << w0 << "\n";
        f << "window_end_s = " << w1 << "\n";
        f << "solid_rate_um3_s = " << deposition_rate(result.events, w0, w1, false) << "\n";
        f << "wet_rate_um3_s = " << deposition_rate(result.events, w0, w1, true) << "\n";
        double cv = std::numeric_limits<double>::quiet_NaN();
        try {
            cv = uniformity_cv(grid);
        } catch (const std::invalid_argument&) {
            // zero-mean grid (no deposits): cv undefined, reported as nan
        }
        f << "uniformity_cv = " << cv << "\n";
        f << "grid_solid_volume_m3 = " << grid.total_volume() << "\n";
        f << "overflow_solid_volume_m3 = " << grid.overflow_volume << "\n";
        f << "overflow_events = " << grid.overflow_events << "\n";
        write_stats(f, result.stats);
        if (!f) throw IoError("failed writing deposit_report.txt");
    }
}

void cmd_layout_opt(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    const double s = min_clear_spacing(r.pattern, r.n_heads, r.process, r.activity_threshold,
                                       cfg.layout_opt_s_lo, cfg.layout_opt_s_hi, cfg.layout_opt_tol,
                                       r.head, r.constants);
    auto f = open_output(fs::path(opt.out_dir) / "layout_opt.csv");
    f << provenance(cfg, opt) << std::setprecision(17);
    f << "pattern,n_heads,threshold,s_lo,s_hi,tol,min_clear_spacing\n";
    f << to_string(r.pattern) << ',' << r.n_heads << ',' << r.activity_threshold << ','
      << cfg.layout_opt_s_lo << ',' << cfg.layout_opt_s_hi << ',' << cfg.layout_opt_tol << ',' << s
      << '\n';
    if (!f) throw IoError("failed writing layout_opt.csv");
}

void cmd_rate(const Config& cfg, const Resolved& r, const CliOptions& opt) {
    const int n_min = config_detail::to_int("rate.n_min", cfg.rate_n_min, 1, 256);
    const int n_max = config_detail::to_int("rate.n_max", cfg.rate_n_max, 1, 256);
    const auto table = throughput_table(r.pattern, n_min, n_max, r.process, r.ink,
                                        r.activity_threshold, cfg.layout_opt_s_lo, cfg.layout_opt_s_hi,
                                        cfg.layout_opt_tol, r.head, r.constants);
    auto f = open_output(fs::path(opt.out_dir) / "rate.csv");
    f << provenance(cfg, opt) << std::setprecision(17);
    f << "n_heads,clear_spacing,active_tips,solid_rate_um3_s,wet_rate_um3_s\n";
    for (const auto& row : table)
        f << row.n_heads << ',' << row.clear_spacing << ',' << row.active_tips << ','
          << row.solid_rate << ',' << row.wet_rate << '\n';
    if (!f) throw IoError("failed writing rate.csv");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic multi-printhead EHD spray deposition simulator"};
    app.require_subcommand(0, 1);

    CliOptions opt;
    bool print_defaults = false;
    const char* env_out = std::getenv("EHDSIM_OUT_DIR");
    opt.out_dir = env_out ? env_out : ".";

    app.add_option("--config", opt.config_path, "path to the run configuration file");
    app.add_option("--seed", opt.seed_override, "override run.seed from the config");
    app.add_option("--workers", opt.workers, "worker threads for the transport stage")
        ->check(CLI::PositiveNumber);
    app.add_option("--out-dir", opt.out_dir, "output directory (default: $EHDSIM_OUT_DIR or .)");
    app.add_flag("--reproducible", opt.reproducible, "suppress timestamps for byte-stable outputs");
    app.add_flag("--print-defaults", print_defaults, "print the full default config and exit");

    auto* sc_field_map = app.add_subcommand("field-map", "grid of potential and field as CSV");
    auto* sc_interference = app.add_subcommand("interference", "per-tip interference ratios over a spacing sweep");
    auto* sc_plume = app.add_subcommand("plume", "deposition events and plume statistics");
    auto* sc_deposit = app.add_subcommand("deposit", "thickness grid, deposition rate and uniformity");
    auto* sc_layout_opt = app.add_subcommand("layout-opt", "minimum non-interfering head spacing");
    auto* sc_rate = app.add_subcommand("rate", "throughput table over head counts");
    for (auto* sc : {sc_field_map, sc_interference, sc_plume, sc_deposit, sc_layout_opt, sc_rate})
        sc->fallthrough(); // global flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (print_defaults) {
            std::cout << describe_defaults();
            return 0;
        }
        if (app.get_subcommands().empty()) {
            std::cerr << "config error: no subcommand given (see --help)\n";
            return 2;
        }
        if (opt.config_path.empty()) throw ConfigError("--config is required");

        Config cfg = load_config_file(opt.config_path);
        if (opt.seed_override >= 0) cfg.run_seed = opt.seed_override;
        const Resolved resolved = resolve_config(cfg);

        std::error_code ec;
        fs::create_directories(opt.out_dir, ec);
        if (ec) throw IoError("cannot create out-dir '" + opt.out_dir + "': " + ec.message());

        write_effective_config(cfg, opt);
        if (sc_field_map->parsed()) cmd_field_map(cfg, resolved, opt);
        else if (sc_interference->parsed()) cmd_interference(cfg, resolved, opt);
        else if (sc_plume->parsed()) cmd_plume(cfg, resolved, opt);
        else if (sc_deposit->parsed()) cmd_deposit(cfg, resolved, opt);
        else if (sc_layout_opt->parsed()) cmd_layout_opt(cfg, resolved, opt);
        else if (sc_rate->parsed()) cmd_rate(cfg, resolved, opt);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const GeometryError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
}
