#include "kolmo/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "kolmo/io.hpp"

namespace kolmo {

namespace {

using json = nlohmann::ordered_json;

struct SourceOptions {
    std::string config;
    std::string table;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shards;
};

void add_source_options(CLI::App* cmd, SourceOptions& o) {
    cmd->add_option("--config", o.config, "Config file (key = value)");
    cmd->add_option("--table", o.table, "Pairwise table CSV; replaces the angles of the config");
}

void add_run_options(CLI::App* cmd, SourceOptions& o) {
    cmd->add_option("--trials", o.trials, "Number of trials");
    cmd->add_option("--seed", o.seed, "64-bit seed");
    cmd->add_option("--shards", o.shards, "Number of generator shards");
}

SimulationConfig resolve_config(const SourceOptions& o) {
    if (o.config.empty() && o.table.empty()) throw ConfigError("give --config or --table");
    SimulationConfig cfg;
    cfg.angles.reset();
    if (!o.config.empty()) cfg = load_config(o.config);
    if (!o.table.empty()) {
        cfg.table = load_table(o.table);
        cfg.angles.reset();
    }
    if (o.trials) cfg.trials = *o.trials;
    if (o.seed) cfg.seed = *o.seed;
    if (o.shards) cfg.shards = *o.shards;
    cfg.validate();
    return cfg;
}

void emit(std::ostream& out, const std::string& format, const json& j, const std::string& text) {
    if (format == "text")
        out << text;
    else
        out << j.dump(2) << '\n';
}

std::ofstream open_output(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open '" + path + "' for writing");
    return f;
}

void run_qlogic_demo(std::ostream& out, const std::string& format) {
    CVector e1 = CVector::Unit(2, 0), e2 = CVector::Unit(2, 1);
    CVector v(2);
    v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    const Subspace pv = Subspace::make({v}, 2), pe1 = Subspace::make({e1}, 2), pe2 = Subspace::make({e2}, 2);

    const Subspace m1 = meet(pv, pe1), m2 = meet(pv, pe2), j12 = join(pe1, pe2);
    const DistributivityWitness w = distributivity_witness(pv, pe1, pe2);

    json j;
    j["v"] = to_json(pv);
    j["e1"] = to_json(pe1);
    j["e2"] = to_json(pe2);
    j["v_meet_e1"] = to_json(m1);
    j["v_meet_e2"] = to_json(m2);
    j["e1_join_e2"] = to_json(j12);
    j["lhs"] = to_json(w.lhs);
    j["rhs"] = to_json(w.rhs);
    j["violated"] = w.violated;
    j["v_commutes_e1"] = commutes(pv, pe1);

    std::ostringstream t;
    t << "H = C^2, e1 = (1,0), e2 = (0,1), v = (e1+e2)/sqrt(2)\n"
      << "dim(v meet e1)            = " << m1.dim() << '\n'
      << "dim(v meet e2)            = " << m2.dim() << '\n'
      << "dim(e1 join e2)           = " << j12.dim() << '\n'
      << "v meet (e1 join e2)       : dim " << w.lhs.dim() << (same_subspace(w.lhs, pv) ? " (= span{v})" : "") << '\n'
      << "(v meet e1) join (v meet e2): dim " << w.rhs.dim() << '\n'
      << "distributivity violated   : " << (w.violated ? "yes" : "no") << '\n';
    emit(out, format, j, t.str());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kolmogorov-space CHSH toolkit", "kolmo"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));

    SourceOptions exact_opts;
    auto* exact = app.add_subcommand("exact", "Exact evaluation on the unifying probability space");
    add_source_options(exact, exact_opts);

    SourceOptions sim_opts;
    std::string sim_out;
    bool sim_exact = false, sim_serial = false;
    int bootstrap = 0;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo of the randomized-settings experiment");
    add_source_options(sim, sim_opts);
    add_run_options(sim, sim_opts);
    sim->add_option("--out", sim_out, "Write the event log (CSV) here");
    sim->add_flag("--exact", sim_exact, "Append the exact report");
    sim->add_flag("--serial", sim_serial, "Use the serial reference kernel");
    sim->add_option("--bootstrap", bootstrap, "Bootstrap replicates for the S_C standard error");

    SourceOptions est_opts;
    std::string est_log;
    bool est_exact = false;
    auto* est = app.add_subcommand("estimate", "Estimate correlations from an event log");
    est->add_option("--log", est_log, "Event log CSV")->required();
    add_source_options(est, est_opts);
    est->add_flag("--exact", est_exact, "Append the exact report (needs --config or --table)");

    std::string joint_table;
    auto* joint = app.add_subcommand("joint", "Does a pairwise table admit a joint distribution?");
    joint->add_option("table", joint_table, "Table CSV")->required();

    app.add_subcommand("qlogic-demo", "Distributivity failure in the projector lattice");

    SourceOptions table_opts;
    std::string table_out;
    auto* table = app.add_subcommand("table", "Singlet pairwise table for the configured angles");
    table->add_option("--config", table_opts.config, "Config file with the four angles")->required();
    table->add_option("--out", table_out, "Output CSV (stdout if omitted)");

    // Options after a subcommand name belong to the subcommand; let
    // --format appear anywhere.
    for (auto* sub : app.get_subcommands({})) {
        if (sub->get_option_no_throw("--format") == nullptr)
            sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return 1;
    }

    try {
        if (exact->parsed()) {
            const SimulationConfig cfg = resolve_config(exact_opts);
            const ChshReport r = verify_bounds(build_chsh_space(cfg.resolved_table(), cfg.settings));
            emit(out, format, to_json(r), to_text(r));
        } else if (sim->parsed()) {
            const SimulationConfig cfg = resolve_config(sim_opts);
            const auto events = sim_serial ? simulate_serial(cfg) : simulate(cfg);
            if (!sim_out.empty()) {
                auto f = open_output(sim_out);
                write_event_log(f, events);
            }
            EstimateReport r = estimate(events, cfg.settings);
            if (bootstrap > 0) r.schat_bootstrap_stderr = bootstrap_schat_stderr(events, bootstrap, cfg.seed);
            if (sim_exact) r.exact = verify_bounds(build_chsh_space(cfg.resolved_table(), cfg.settings));
            emit(out, format, to_json(r), to_text(r));
        } else if (est->parsed()) {
            std::ifstream in(est_log, std::ios::binary);
            if (!in) throw ConfigError("cannot open event log '" + est_log + "'");
            const auto events = read_event_log(in);
            SettingDistribution settings = SettingDistribution::uniform();
            std::optional<SimulationConfig> cfg;
            if (!est_opts.config.empty() || !est_opts.table.empty()) {
                cfg = resolve_config(est_opts);
                settings = cfg->settings;
            }
            EstimateReport r = estimate(events, settings);
            if (est_exact) {
                if (!cfg) throw ConfigError("--exact needs --config or --table");
                r.exact = verify_bounds(build_chsh_space(cfg->resolved_table(), settings));
            }
            emit(out, format, to_json(r), to_text(r));
        } else if (joint->parsed()) {
            const FeasibilityResult r = joint_exists(load_table(joint_table));
            emit(out, format, to_json(r), to_text(r));
        } else if (table->parsed()) {
            const SimulationConfig cfg = load_config(table_opts.config);
            if (!cfg.angles) throw ConfigError("the table subcommand needs the four angles in the config");
            const PairwiseTable t = epr_bohm_table(*cfg.angles);
            if (table_out.empty()) {
                write_table(out, t);
            } else {
                auto f = open_output(table_out);
                write_table(f, t);
            }
        } else {
            run_qlogic_demo(out, format);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace kolmo
