// firm: command-line front end for fuzzy implicative rule mining.
//
// Exit status: 0 success (or adequate pair), 1 property failure, 2 config
// error, 3 input error. Failures print "ERROR <stage>: <message>" to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "firm/analysis.hpp"
#include "firm/errors.hpp"
#include "firm/miner.hpp"
#include "firm/operators.hpp"
#include "firm/run_config.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;

// Writes to `path`, or stdout when empty or "-".
template <typename Writer>
void write_output(const std::string& path, Writer&& writer) {
    if (path.empty() || path == "-") {
        writer(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw firm::InputError("cannot write '" + path + "'");
    writer(out);
    if (!out) throw firm::InputError("failed writing '" + path + "'");
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw firm::ConfigError("'" + item + "' is not a number");
        }
    }
    if (values.empty()) throw firm::ConfigError("empty value list");
    return values;
}

struct PairFlags {
    std::string pair;
    std::optional<double> lambda;
    std::optional<double> p;

    void add_to(CLI::App& app) {
        app.add_option("--pair", pair, "Operator pair: tp-iy, tlk-ilk, tss-kss, tlk-ip, tm-igd, tm-igg, tp-igg, crisp");
        app.add_option("--lambda", lambda, "Schweizer-Sklar lambda (< 0)");
        app.add_option("--p", p, "Exponent of the ip implication (> 0)");
    }

    void apply(firm::PairChoice& choice) const {
        if (!pair.empty()) {
            choice.shorthand = pair;
            choice.explicit_pair.reset();
        }
        if (lambda) choice.lambda = lambda;
        if (p) choice.p = p;
    }
};

struct MineFlags {
    std::string config_path;
    std::string input;
    PairFlags pair;
    std::optional<double> min_cov, min_supp, min_conf;
    std::optional<unsigned> max_size;
    bool no_prune = false;
    std::string mode;
    std::string target;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format;
    std::optional<unsigned> threads;
    std::string dump_mu;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_path, "JSON run configuration");
        app.add_option("--input", input, "Input CSV");
        pair.add_to(app);
        app.add_option("--min-cov", min_cov, "Minimum fuzzy coverage");
        app.add_option("--min-supp", min_supp, "Minimum fuzzy support");
        app.add_option("--min-conf", min_conf, "Minimum fuzzy confidence");
        app.add_option("--max-size", max_size, "Maximum itemset size");
        app.add_flag("--no-prune", no_prune, "Keep redundant rules");
        app.add_option("--mode", mode, "fuzzy or crisp")->check(CLI::IsMember({"fuzzy", "crisp"}));
        app.add_option("--target", target, "Only mine consequents on this column");
        app.add_option("--seed", seed, "Seed for randomized steps");
        app.add_option("--out", out, "Output file (default stdout)");
        app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        app.add_option("--threads", threads, "Worker threads, 0 = auto");
        app.add_option("--dump-mu", dump_mu, "Write the membership matrix as CSV");
    }

    firm::RunConfig resolve() const {
        firm::RunConfig c = config_path.empty() ? firm::RunConfig{} : firm::load_run_config(config_path);
        if (!input.empty()) c.input = input;
        pair.apply(c.pair);
        if (c.pair.shorthand == "crisp") c.mode = firm::RunMode::Crisp;
        if (min_cov) c.min_cov = *min_cov;
        if (min_supp) c.min_supp = *min_supp;
        if (min_conf) c.min_conf = *min_conf;
        if (max_size) c.max_itemset_size = *max_size;
        if (no_prune) c.prune = false;
        if (!mode.empty()) c.mode = mode == "crisp" ? firm::RunMode::Crisp : firm::RunMode::Fuzzy;
        if (!target.empty()) c.target_column = target;
        if (seed) c.seed = *seed;
        if (!out.empty()) c.output = out;
        if (!format.empty()) c.format = format == "csv" ? firm::OutputFormat::Csv : firm::OutputFormat::Json;
        if (threads) c.threads = *threads;
        if (!dump_mu.empty()) c.dump_mu = dump_mu;
        if (c.input.empty()) throw firm::ConfigError("no input file given (--input or config 'input')");
        c.validate();
        return c;
    }
};

int cmd_mine(const MineFlags& flags) {
    const firm::RunConfig run = flags.resolve();
    const firm::Dataset dataset = firm::load_csv(run.input, run.schema_overrides);
    const auto partitions = run.resolve_partitions(dataset);
    const auto matrix = firm::fuzzify(dataset, partitions);
    if (!run.dump_mu.empty()) {
        write_output(run.dump_mu, [&](std::ostream& os) { matrix.write_csv(os); });
    }
    firm::RuleSet rules = firm::mine(matrix, run.miner_config());
    rules.provenance.mode = run.mode == firm::RunMode::Crisp ? "crisp" : "fuzzy";
    rules.provenance.dataset_fingerprint = dataset.fingerprint;
    rules.provenance.dropped_rows = dataset.dropped_rows;
    if (dataset.dropped_rows > 0) {
        std::cerr << "warning: dropped " << dataset.dropped_rows << " rows with empty fields\n";
    }
    for (const auto& w : rules.provenance.warnings) std::cerr << "warning: " << w << '\n';

    write_output(run.output, [&](std::ostream& os) {
        if (run.format == firm::OutputFormat::Csv) {
            firm::write_rules_csv(os, rules);
        } else {
            os << nlohmann::json(rules).dump(2) << '\n';
        }
    });
    char line[160];
    std::snprintf(line, sizeof line, "rules=%zu mean_cov=%.4f mean_supp=%.4f mean_conf=%.4f", rules.rules.size(),
                  rules.mean_fcov(), rules.mean_fsupp(), rules.mean_fconf());
    // Keep stdout machine-readable when the rule set itself goes there.
    (run.output.empty() || run.output == "-" ? std::cerr : std::cout) << line << '\n';
    return kExitOk;
}

struct CheckFlags {
    std::string config_path;
    PairFlags pair;
    firm::GridSpec grid;
    std::string out;

    void add_to(CLI::App& app) {
        app.add_option("--config", config_path, "JSON file with a 'pair' entry");
        pair.add_to(app);
        app.add_option("--resolution", grid.resolution, "Uniform grid intervals (>= 2)");
        app.add_option("--random-points", grid.random_points, "Extra random grid points");
        app.add_option("--seed", grid.seed, "Seed for the random grid points");
        app.add_option("--out", out, "Report file (default stdout)");
    }
};

int cmd_check_pair(const CheckFlags& flags) {
    firm::PairChoice choice;
    if (!flags.config_path.empty()) choice = firm::load_run_config(flags.config_path).pair;
    flags.pair.apply(choice);
    const firm::OperatorPair pair = choice.resolve();

    auto reports = firm::check_axioms(pair.implication, flags.grid);
    reports.push_back(firm::check_tc(pair, flags.grid));
    reports.push_back(firm::check_mtc(pair, flags.grid));
    const bool adequate = reports[reports.size() - 2].holds && reports.back().holds;

    nlohmann::json doc = {{"pair", pair},
                          {"grid",
                           {{"resolution", flags.grid.resolution},
                            {"random_points", flags.grid.random_points},
                            {"seed", flags.grid.seed}}},
                          {"tolerance", firm::kPropertyTolerance},
                          {"reports", reports},
                          {"adequate", adequate}};
    write_output(flags.out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
    if (!flags.out.empty() && flags.out != "-") {
        std::cout << "pair=" << pair.label() << " adequate=" << (adequate ? "yes" : "no") << '\n';
    }
    return adequate ? kExitOk : kExitPropertyFailure;
}

firm::RuleSet read_ruleset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw firm::InputError("cannot read '" + path + "'");
    try {
        return firm::ruleset_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw firm::InputError("invalid JSON in '" + path + "': " + e.what());
    }
}

int cmd_similarity(const std::string& first, const std::string& second) {
    const auto result = firm::similarity(read_ruleset(first), read_ruleset(second));
    char line[64];
    std::snprintf(line, sizeof line, "similarity=%.2f", result.percent);
    std::cout << line << '\n';
    return kExitOk;
}

int cmd_synth(std::size_t n, std::uint64_t seed, const std::string& out) {
    const auto ds = firm::gen_synthetic_ab(n, seed);
    write_output(out, [&](std::ostream& os) { firm::write_csv(os, ds); });
    return kExitOk;
}

struct SweepParamFlags {
    std::string family = "lk_ip";
    std::string values = "0.01,0.1,0.5,1,2,5,10";
    std::string input;
    std::size_t n = 1000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string out;

    void add_to(CLI::App& app) {
        app.add_option("--family", family, "lk_ip (lukasiewicz, ip p) or ss (schweizer-sklar lambda)")
            ->check(CLI::IsMember({"lk_ip", "ss"}));
        app.add_option("--values", values, "Comma-separated parameter values");
        app.add_option("--input", input, "A/B dataset CSV (default: generate one)");
        app.add_option("--n", n, "Rows of the generated dataset");
        app.add_option("--seed", seed, "Seed of the generated dataset");
        app.add_option("--threads", threads, "Worker threads, 0 = auto");
        app.add_option("--out", out, "Output CSV (default stdout)");
    }
};

int cmd_sweep_param(const SweepParamFlags& flags) {
    const auto ds = flags.input.empty() ? firm::gen_synthetic_ab(flags.n, flags.seed) : firm::load_csv(flags.input);
    const auto family = flags.family == "ss" ? firm::SweepFamily::SchweizerSklar : firm::SweepFamily::LukasiewiczIp;
    const auto rows =
        firm::param_sweep(family, parse_list(flags.values), ds, firm::default_partitions(ds), flags.threads);
    write_output(flags.out, [&](std::ostream& os) { firm::write_sweep_csv(os, rows); });
    return kExitOk;
}

struct SweepThresholdFlags {
    MineFlags mine;
    std::string cov_values = "0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5";

    void add_to(CLI::App& app) {
        mine.add_to(app);
        app.add_option("--cov-values", cov_values, "Comma-separated coverage thresholds");
    }
};

int cmd_sweep_threshold(const SweepThresholdFlags& flags) {
    const firm::RunConfig run = flags.mine.resolve();
    const auto ds = firm::load_csv(run.input, run.schema_overrides);
    const auto rows =
        firm::threshold_sweep(ds, run.resolve_partitions(ds), run.miner_config(), parse_list(flags.cov_values));
    write_output(run.output, [&](std::ostream& os) { firm::write_threshold_csv(os, rows); });
    return kExitOk;
}

int exit_code_for(const firm::Error& e) {
    return dynamic_cast<const firm::ConfigError*>(&e) ? kExitConfig : kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fuzzy implicative rule mining"};
    app.require_subcommand(1);

    MineFlags mine_flags;
    auto* mine = app.add_subcommand("mine", "Mine fuzzy implicative association rules");
    mine_flags.add_to(*mine);

    CheckFlags check_flags;
    auto* check = app.add_subcommand("check-pair", "Certify a (t-norm, implication) pair on a grid");
    check_flags.add_to(*check);

    std::string sim_first, sim_second;
    auto* sim = app.add_subcommand("similarity", "Jaccard similarity of two rule set JSON files");
    sim->add_option("first", sim_first, "Rule set JSON")->required();
    sim->add_option("second", sim_second, "Rule set JSON")->required();

    std::size_t synth_n = 1000;
    std::uint64_t synth_seed = 42;
    std::string synth_out;
    auto* synth = app.add_subcommand("synth", "Generate the synthetic A/B dataset");
    synth->add_option("n", synth_n, "Number of rows");
    synth->add_option("seed", synth_seed, "Generator seed");
    synth->add_option("--out", synth_out, "Output CSV (default stdout)");

    SweepParamFlags sweep_param_flags;
    auto* sweep_param = app.add_subcommand("sweep-param", "Quality of A=High<->B=High over pair parameters");
    sweep_param_flags.add_to(*sweep_param);

    SweepThresholdFlags sweep_threshold_flags;
    auto* sweep_threshold = app.add_subcommand("sweep-threshold", "Rule count and quality over coverage thresholds");
    sweep_threshold_flags.add_to(*sweep_threshold);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR config: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (mine->parsed()) return cmd_mine(mine_flags);
        if (check->parsed()) return cmd_check_pair(check_flags);
        if (sim->parsed()) return cmd_similarity(sim_first, sim_second);
        if (synth->parsed()) return cmd_synth(synth_n, synth_seed, synth_out);
        if (sweep_param->parsed()) return cmd_sweep_param(sweep_param_flags);
        if (sweep_threshold->parsed()) return cmd_sweep_threshold(sweep_threshold_flags);
    } catch (const firm::Error& e) {
        std::cerr << "ERROR " << e.stage() << ": " << e.what() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "ERROR internal: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitConfig;
}
