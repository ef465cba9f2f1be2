// peerval: validate inputs, run the indicator analysis, generate synthetic data.
//
// Exit codes: 0 ok, 1 validation, 2 i/o, 3 numeric failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "peerval/analysis.hpp"
#include "peerval/config.hpp"
#include "peerval/dataset.hpp"
#include "peerval/synth.hpp"

namespace {

using peerval::Error;
using peerval::ErrorCode;
using peerval::ExitCode;

struct InputFlags {
    std::optional<std::string> teams;
    std::optional<std::string> outputs;
    std::optional<std::string> ratings;
    std::optional<std::string> categories;
    std::optional<std::string> data;
    std::optional<std::string> config;

    void add_to(CLI::App* cmd) {
        cmd->add_option("--teams", teams, "teams.csv path");
        cmd->add_option("--outputs", outputs, "outputs.csv path");
        cmd->add_option("--ratings", ratings, "ratings.csv path");
        cmd->add_option("--categories", categories, "categories.csv path");
        cmd->add_option("--data", data, "directory containing the four input CSVs");
        cmd->add_option("--config", config, "flat key = value run configuration file");
    }

    void apply(peerval::RunConfig& rc) const {
        if (config) peerval::apply_config_file(rc, *config);
        if (data) rc.inputs = peerval::input_files_in(*data);
        if (teams) rc.inputs.teams = *teams;
        if (outputs) rc.inputs.outputs = *outputs;
        if (ratings) rc.inputs.ratings = *ratings;
        if (categories) rc.inputs.categories = *categories;
    }
};

int to_int(ExitCode code) { return static_cast<int>(code); }

int report_error(const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return to_int(peerval::exit_code_for(e.code()));
}

// Loads the dataset, printing every issue. Returns nullopt with `exit_code`
// set when loading fails.
std::optional<peerval::Dataset> load_or_report(const peerval::InputFiles& files, int& exit_code) {
    std::vector<peerval::Issue> issues;
    try {
        return peerval::load_dataset(files, &issues);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::Io) {
            exit_code = report_error(e);
            return std::nullopt;
        }
        if (issues.empty()) issues.push_back(e.issue());
        for (const peerval::Issue& issue : issues) std::cerr << issue.describe() << '\n';
        std::cerr << issues.size() << " issue(s); input is not valid\n";
        exit_code = to_int(ExitCode::Validation);
        return std::nullopt;
    }
}

int cmd_validate(const InputFlags& flags) {
    try {
        peerval::RunConfig rc;
        flags.apply(rc);
        int exit_code = 0;
        auto ds = load_or_report(rc.inputs, exit_code);
        if (!ds) return exit_code;
        std::cout << "ok: " << ds->team_count() << " teams, " << ds->disciplines().size()
                  << " disciplines, " << ds->category_count() << " categories, " << ds->form_count()
                  << " rating forms\n";
        return to_int(ExitCode::Ok);
    } catch (const Error& e) {
        return report_error(e);
    }
}

struct AnalyzeFlags {
    std::optional<std::string> out;
    std::optional<double> alpha;
    std::optional<double> prevalence_threshold;
    std::optional<double> general_validity_min_fraction;
    std::optional<std::string> mode;
    bool compare = false;
    bool bonferroni = false;
    std::optional<std::size_t> reference_min_teams;
    std::optional<unsigned> threads;
    std::optional<std::string> formats;
    std::optional<std::string> scatter;
    std::optional<std::string> dump_normalized;
};

int cmd_analyze(const InputFlags& inputs, const AnalyzeFlags& flags) {
    try {
        peerval::RunConfig rc;
        inputs.apply(rc);
        const peerval::SourceLocation cli{"command line", 0, 0};
        if (flags.out) rc.out_dir = *flags.out;
        if (flags.alpha) rc.analysis.selection.alpha = *flags.alpha;
        if (flags.prevalence_threshold) rc.analysis.selection.prevalence_threshold = *flags.prevalence_threshold;
        if (flags.general_validity_min_fraction) {
            rc.analysis.selection.general_validity_min_fraction = *flags.general_validity_min_fraction;
        }
        if (flags.mode) peerval::apply_setting(rc, "mode", *flags.mode, cli);
        if (flags.compare) rc.analysis.compare = true;
        if (flags.bonferroni) rc.analysis.selection.bonferroni = true;
        if (flags.reference_min_teams) {
            peerval::apply_setting(rc, "reference_min_teams", std::to_string(*flags.reference_min_teams), cli);
        }
        if (flags.threads) peerval::apply_setting(rc, "threads", std::to_string(*flags.threads), cli);
        if (flags.formats) peerval::apply_setting(rc, "formats", *flags.formats, cli);
        if (flags.scatter) peerval::apply_setting(rc, "scatter", *flags.scatter, cli);
        rc.analysis.selection.validate();

        int exit_code = 0;
        auto ds = load_or_report(rc.inputs, exit_code);
        if (!ds) return exit_code;
        for (const auto& pair : rc.analysis.scatter_pairs) (void)ds->require_category(pair.category_id);

        // Thread count does not affect results, so it stays out of the report.
        auto snapshot = rc.to_json();
        const auto report = peerval::run_analysis(*ds, rc.analysis, snapshot);
        peerval::write_report(report, rc.out_dir, rc.formats);
        if (flags.dump_normalized) {
            peerval::write_normalized(peerval::normalize_dataset(*ds, rc.analysis.mode), *ds,
                                      *flags.dump_normalized);
        }
        std::cout << "selected " << report.pooled_set().selected.size() << " pooled indicator pair(s), "
                  << report.generally_valid.size() << " generally valid; report written to "
                  << rc.out_dir << '\n';
        return to_int(ExitCode::Ok);
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return to_int(ExitCode::Io);
    }
}

struct SynthFlags {
    std::optional<std::string> config;
    std::optional<std::uint64_t> seed;
    std::string out = "synth";
    double prevalence_threshold = 0.5;
    bool print_default = false;
};

int cmd_synth(const SynthFlags& flags) {
    try {
        peerval::SynthConfig config = peerval::default_synth_config();
        if (flags.config) {
            std::ifstream in(*flags.config);
            if (!in) throw Error(ErrorCode::Io, "cannot open synth config", {*flags.config, 0, 0});
            nlohmann::json j;
            try {
                in >> j;
            } catch (const nlohmann::json::exception& e) {
                throw Error(ErrorCode::InvalidConfig, e.what(), {*flags.config, 0, 0});
            }
            config = peerval::synth_config_from_json(j);
        }
        if (flags.seed) config.seed = *flags.seed;
        if (flags.print_default) {
            std::cout << peerval::to_json(config).dump(2) << '\n';
            return to_int(ExitCode::Ok);
        }
        for (const std::string& w : config.validate()) std::cerr << "warning: " << w << '\n';
        const auto ds = peerval::write_synth(config, flags.out, flags.prevalence_threshold);
        std::cout << "wrote " << ds.team_count() << " teams, " << ds.category_count() << " categories, "
                  << ds.form_count() << " rating forms to " << flags.out << '\n';
        return to_int(ExitCode::Ok);
    } catch (const Error& e) {
        return report_error(e);
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return to_int(ExitCode::Io);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Validate CV-based research performance categories against peer-review ratings"};
    app.require_subcommand(1);

    InputFlags validate_inputs;
    auto* validate = app.add_subcommand("validate", "Check that the input tables assemble into a valid dataset");
    validate_inputs.add_to(validate);

    InputFlags analyze_inputs;
    AnalyzeFlags analyze_flags;
    auto* analyze = app.add_subcommand("analyze", "Correlate, select indicators and write the report");
    analyze_inputs.add_to(analyze);
    analyze->add_option("--out", analyze_flags.out, "output directory");
    analyze->add_option("--alpha", analyze_flags.alpha, "significance level (default 0.05)");
    analyze->add_option("--prevalence-threshold", analyze_flags.prevalence_threshold,
                        "minimum share of teams with output (default 0.5, exclusive)");
    analyze->add_option("--general-validity-min-fraction", analyze_flags.general_validity_min_fraction,
                        "share of disciplines a generally valid pair must be selected in");
    analyze->add_option("--mode", analyze_flags.mode, "per_discipline or none");
    analyze->add_flag("--compare", analyze_flags.compare, "also report the normalization gain table");
    analyze->add_flag("--bonferroni", analyze_flags.bonferroni, "Bonferroni-correct alpha per scope");
    analyze->add_option("--reference-min-teams", analyze_flags.reference_min_teams,
                        "minimum population for a sufficient reference value (default 8)");
    analyze->add_option("--threads", analyze_flags.threads, "worker threads for the correlation grid");
    analyze->add_option("--formats", analyze_flags.formats, "comma list of json, markdown, csv");
    analyze->add_option("--scatter", analyze_flags.scatter, "comma list of CATEGORY:aspect scatter exports");
    analyze->add_option("--dump-normalized", analyze_flags.dump_normalized,
                        "directory for the normalized matrices");

    SynthFlags synth_flags;
    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with planted structure");
    synth->add_option("--config", synth_flags.config, "JSON generator configuration (default: 57 teams in 6 disciplines)");
    synth->add_option("--seed", synth_flags.seed, "64-bit seed (overrides the config)");
    synth->add_option("--out", synth_flags.out, "output directory (created if missing)");
    synth->add_option("--prevalence-threshold", synth_flags.prevalence_threshold,
                      "threshold used to mark planted pairs unrecoverable in truth.json");
    synth->add_flag("--print-config", synth_flags.print_default, "print the effective configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : to_int(ExitCode::Validation);
    }

    if (*validate) return cmd_validate(validate_inputs);
    if (*analyze) return cmd_analyze(analyze_inputs, analyze_flags);
    if (*synth) return cmd_synth(synth_flags);
    return to_int(ExitCode::Validation);
}
