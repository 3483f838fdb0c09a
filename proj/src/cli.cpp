// cli.cpp - sweep / audit / figures / oracle subcommands

#include "qcorr/cli.hpp"

#include "qcorr/output.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <optional>
#include <sstream>

namespace qcorr {

std::vector<AuditOutcome> run_audits(const Scenario& scenario,
                                     std::span<const Partition> partitions, Pipeline pipeline,
                                     const SweepOptions& options, const AuditToggles& toggles) {
    std::vector<AuditOutcome> audits;
    const SweepResult result = run_sweep(scenario, partitions, pipeline, options);
    if (toggles.agreement) {
        audits.insert(audits.end(), result.audits.begin(), result.audits.end());
    }

    const bool has_brute = pipeline != Pipeline::closed_form;
    const bool has_square_parts = std::all_of(
        kSquareSumPartitions.begin(), kSquareSumPartitions.end(), [&](Partition p) {
            return std::find(partitions.begin(), partitions.end(), p) != partitions.end();
        });
    if (toggles.sum_of_squares && has_brute && has_square_parts) {
        for (Measure m : {Measure::quantum, Measure::classical, Measure::concurrence}) {
            audits.push_back(sum_of_squares_audit(result, m).outcome);
        }
    }

    if (toggles.asymptotics && scenario.spectral.kind == SpectralKind::flat) {
        const double alpha2 = std::norm(scenario.alpha);
        const double beta2 = std::norm(scenario.beta);
        const double tail[] = {8.0, 10.0, 12.0};
        if (scenario.family == Family::two_exc) {
            const double far[] = {20.0};
            audits.push_back(check_asymptotic_flat_C(beta2, tail).outcome);
            audits.push_back(check_asymptotic_reservoir(Family::two_exc, alpha2, beta2, far).outcome);
        } else {
            audits.push_back(check_asymptotic_reservoir(Family::one_exc, alpha2, beta2, tail).outcome);
        }
    }
    return audits;
}

namespace {

struct Overrides {
    std::string out_dir;
    std::optional<int> grid;
    std::optional<int> refine;
    std::string side;
    std::string pipeline;
    std::optional<int> threads;
    bool svg{false};
};

void add_common_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--out", o.out_dir, "Output directory");
    cmd->add_option("--grid", o.grid, "Measurement search grid size per angle");
    cmd->add_option("--refine", o.refine, "Local refinement rounds");
    cmd->add_option("--side", o.side, "Measured party: first|second");
    cmd->add_option("--pipeline", o.pipeline, "closed|brute|both");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

void apply(const Overrides& o, RunConfig& cfg) {
    if (!o.out_dir.empty()) cfg.out_dir = o.out_dir;
    if (o.grid) {
        if (*o.grid < 2) throw ConfigError("--grid", "must be >= 2");
        cfg.optimizer.grid = *o.grid;
    }
    if (o.refine) {
        if (*o.refine < 0) throw ConfigError("--refine", "must be >= 0");
        cfg.optimizer.refine_iters = *o.refine;
    }
    try {
        if (!o.side.empty()) cfg.side = side_from_string(o.side);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("--side", e.what());
    }
    try {
        if (!o.pipeline.empty()) cfg.pipeline = pipeline_from_string(o.pipeline);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("--pipeline", e.what());
    }
    if (o.threads) {
        if (*o.threads < 0) throw ConfigError("--threads", "must be >= 0");
        cfg.threads = static_cast<unsigned>(*o.threads);
    }
    if (o.svg) cfg.svg = true;
    if (cfg.pipeline != Pipeline::brute_force && cfg.side != Side::second) {
        throw ConfigError("--side", "closed forms require side = second");
    }
    if (cfg.pipeline == Pipeline::closed_form) {
        for (Partition p : cfg.partitions) {
            if (!closed_form_covers(p)) {
                throw ConfigError("--pipeline", "closed pipeline has no closed form for " +
                                                    std::string(to_string(p)));
            }
        }
    }
}

bool report(const std::vector<AuditOutcome>& audits, std::ostream& out) {
    bool ok = true;
    for (const auto& a : audits) {
        out << (a.passed ? "PASS " : "FAIL ") << a.name << "  margin=" << a.margin << "  "
            << a.detail << "\n";
        ok = ok && a.passed;
    }
    return ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Correlation dynamics of two spins in independent bosonic reservoirs"};
    app.require_subcommand(1);

    Overrides sweep_o, audit_o, fig_o, oracle_o;
    std::string sweep_cfg, audit_cfg, oracle_cfg, builtin;

    auto* sweep = app.add_subcommand("sweep", "Run a sweep and write CSV (and optionally SVG)");
    sweep->add_option("config", sweep_cfg, "JSON configuration")->required();
    add_common_flags(sweep, sweep_o);
    sweep->add_flag("--svg", sweep_o.svg, "Also write sweep.svg");

    auto* audit = app.add_subcommand("audit", "Run every audit; exit 0 iff all pass");
    audit->add_option("config", audit_cfg, "JSON configuration");
    audit->add_option("--builtin", builtin, "Built-in figure scenario: fig1|fig2|fig3|fig4");
    add_common_flags(audit, audit_o);

    auto* figures = app.add_subcommand("figures", "Write the four built-in figure datasets");
    add_common_flags(figures, fig_o);

    auto* oracle = app.add_subcommand("oracle", "Brute-force-only sweep, CSV on stdout");
    oracle->add_option("config", oracle_cfg, "JSON configuration")->required();
    add_common_flags(oracle, oracle_o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*sweep) {
            RunConfig cfg = load_config(sweep_cfg);
            apply(sweep_o, cfg);
            const SweepResult result =
                run_sweep(cfg.scenario(), cfg.partitions, cfg.pipeline, cfg.sweep_options());
            const std::filesystem::path dir = cfg.out_dir;
            emit_csv(result, dir / "sweep.csv");
            out << "wrote " << (dir / "sweep.csv").string() << "\n";
            if (cfg.svg) {
                const PlotSeries series[] = {{"config", result}};
                const Measure measures[] = {Measure::quantum, Measure::classical};
                emit_svg_plot(series, measures, "sweep", dir / "sweep.svg");
                out << "wrote " << (dir / "sweep.svg").string() << "\n";
            }
            const bool ok = report(result.audits, out);
            return ok ? 0 : 1;
        }
        if (*audit) {
            std::vector<AuditOutcome> audits;
            if (!builtin.empty()) {
                if (!audit_cfg.empty()) throw ConfigError("--builtin", "give either a config or --builtin");
                RunConfig base;
                apply(audit_o, base);
                const auto figs = builtin_figures();
                const auto it = std::find_if(figs.begin(), figs.end(),
                                             [&](const FigureSpec& f) { return f.name == builtin; });
                if (it == figs.end()) throw ConfigError("--builtin", "unknown figure '" + builtin + "'");
                for (const auto& overlay : it->overlays) {
                    auto part = run_audits(overlay.scenario, kAllPartitions, base.pipeline,
                                           base.sweep_options(), base.audits);
                    for (auto& a : part) a.name = overlay.label + "/" + a.name;
                    audits.insert(audits.end(), part.begin(), part.end());
                }
            } else {
                if (audit_cfg.empty()) throw ConfigError("config", "audit needs a config or --builtin");
                RunConfig cfg = load_config(audit_cfg);
                apply(audit_o, cfg);
                audits = run_audits(cfg.scenario(), cfg.partitions, cfg.pipeline,
                                    cfg.sweep_options(), cfg.audits);
            }
            return report(audits, out) ? 0 : 1;
        }
        if (*figures) {
            RunConfig base;
            base.out_dir = "figures";
            apply(fig_o, base);
            for (const auto& p : write_figures(base.out_dir, base.sweep_options())) {
                out << "wrote " << p.string() << "\n";
            }
            return 0;
        }
        if (*oracle) {
            RunConfig cfg = load_config(oracle_cfg);
            oracle_o.pipeline = "brute";
            apply(oracle_o, cfg);
            const SweepResult result = run_sweep(cfg.scenario(), cfg.partitions,
                                                 Pipeline::brute_force, cfg.sweep_options());
            if (!oracle_o.out_dir.empty()) {
                emit_csv(result, std::filesystem::path(cfg.out_dir) / "oracle.csv");
            } else {
                out << format_csv(result);
            }
            return 0;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace qcorr
