#pragma once

// End-to-end pipeline: normalize, correlate every (category, aspect, scope),
// select, check general validity, build references and plot data.

#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "peerval/dataset.hpp"
#include "peerval/normalize.hpp"
#include "peerval/reference.hpp"
#include "peerval/report.hpp"
#include "peerval/select.hpp"
#include "peerval/stats.hpp"

namespace peerval {

struct AnalysisOptions {
    SelectionConfig selection;
    NormalizeMode mode = NormalizeMode::PerDiscipline;
    bool compare = false;  // also compute pooled r under the other mode
    std::size_t reference_min_teams = kDefaultReferenceMinTeams;
    unsigned threads = 1;
    // Pairs exported as scatter series; empty means every pair selected in
    // the pooled scope.
    std::vector<ValidPair> scatter_pairs;
};

inline nlohmann::ordered_json to_json(const AnalysisOptions& options) {
    nlohmann::ordered_json j;
    j["mode"] = std::string(to_string(options.mode));
    j["alpha"] = options.selection.alpha;
    j["prevalence_threshold"] = options.selection.prevalence_threshold;
    j["general_validity_min_fraction"] =
        options.selection.general_validity_min_fraction
            ? nlohmann::ordered_json(*options.selection.general_validity_min_fraction)
            : nlohmann::ordered_json("all_but_one");
    j["bonferroni"] = options.selection.bonferroni;
    j["compare"] = options.compare;
    j["reference_min_teams"] = options.reference_min_teams;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const ValidPair& p : options.scatter_pairs) {
        pairs.push_back(p.category_id + ":" + std::string(to_string(p.aspect)));
    }
    j["scatter"] = pairs;
    return j;
}

inline nlohmann::ordered_json method_description(const AnalysisOptions& options) {
    nlohmann::ordered_json m;
    m["rating_aggregation"] = "arithmetic mean of expert form scores per (team, aspect)";
    m["size_normalization"] = "count divided by FTE leading staff";
    m["discipline_normalization"] =
        options.mode == NormalizeMode::PerDiscipline
            ? "z-score per discipline of per-FTE measures and ratings, sample (n-1) standard "
              "deviation; zero-variance (discipline, column) pairs set to 0 and flagged"
            : "none: per-FTE measures and raw aggregated ratings";
    m["correlation"] = "Pearson product-moment";
    m["test"] = "one-sided t-test of r > 0 with df = n - 2";
    m["multiple_comparisons"] = options.selection.bonferroni
                                    ? "Bonferroni over all (category, aspect) pairs of a scope"
                                    : "none";
    m["pooled_scope"] = "all teams on the mode's values; degenerate only if the pooled column is constant";
    m["prevalence"] = "share of the scope's teams with a nonzero count; selection requires more than the threshold";
    m["ordering"] = "category id, aspect id, scope (disciplines by id, then pooled)";
    return m;
}

inline RunReport run_analysis(const Dataset& ds, const AnalysisOptions& options,
                              nlohmann::ordered_json config_snapshot = nullptr) {
    options.selection.validate();
    RunReport report;
    report.config = config_snapshot.is_null() ? to_json(options) : std::move(config_snapshot);
    report.method = method_description(options);
    report.dataset = summarize(ds);
    report.scopes = all_scopes(ds);

    const NormalizedDataset norm = normalize_dataset(ds, options.mode);
    report.correlations = correlation_grids(norm, ds, report.scopes, options.threads);

    std::vector<IndicatorSet> per_discipline;
    for (std::size_t s = 0; s < report.scopes.size(); ++s) {
        report.indicator_sets.push_back(
            select_indicators(report.correlations[s], ds, options.selection, report.scopes[s]));
    }
    per_discipline.assign(report.indicator_sets.begin(), report.indicator_sets.end() - 1);
    report.generally_valid = general_validity(per_discipline, report.pooled_set(), options.selection);
    report.references =
        reference_table(ds, per_discipline, report.generally_valid, options.reference_min_teams);

    const bool primary_normalized = options.mode == NormalizeMode::PerDiscipline;
    std::optional<NormalizedDataset> other;
    auto other_norm = [&]() -> const NormalizedDataset& {
        if (!other) {
            other = normalize_dataset(ds, primary_normalized ? NormalizeMode::None
                                                             : NormalizeMode::PerDiscipline);
        }
        return *other;
    };

    if (options.compare) {
        const std::vector<Scope> pooled{Scope::pooled()};
        const CorrelationGrid other_grid = correlation_grids(other_norm(), ds, pooled, options.threads)[0];
        const CorrelationGrid& primary_grid = report.correlations.back();
        report.gain = primary_normalized ? normalization_gain(other_grid, primary_grid)
                                         : normalization_gain(primary_grid, other_grid);
    }

    std::vector<ValidPair> scatter_pairs = options.scatter_pairs;
    if (scatter_pairs.empty()) {
        for (const IndicatorEntry& e : report.pooled_set().selected) {
            scatter_pairs.push_back({e.result.category_id, e.result.aspect});
        }
        std::sort(scatter_pairs.begin(), scatter_pairs.end());
    }
    const NormalizedDataset& z_norm = primary_normalized ? norm : other_norm();
    for (const ValidPair& p : scatter_pairs) {
        report.scatter.push_back({p.category_id, p.aspect,
                                  scatter_series(z_norm, ds, p.category_id, p.aspect, ScatterAxes::Raw),
                                  scatter_series(z_norm, ds, p.category_id, p.aspect,
                                                 ScatterAxes::Normalized)});
    }

    for (const DegenerateColumn& d : norm.degenerate_columns()) {
        report.warnings.push_back({d.is_measure ? "degenerate_measure" : "degenerate_rating", d.discipline_id,
                                   d.column_id, "zero variance within discipline; excluded from correlation"});
    }
    for (const ReferenceValue& r : report.references) {
        if (!r.sufficient) {
            report.warnings.push_back({"insufficient_population", r.scope.label(), r.category_id,
                                       "reference value based on " + std::to_string(r.n_teams) +
                                           " teams, below the minimum of " +
                                           std::to_string(options.reference_min_teams)});
        }
    }
    if (report.gain) {
        report.warnings.insert(report.warnings.end(), report.gain->warnings.begin(),
                               report.gain->warnings.end());
    }
    std::sort(report.warnings.begin(), report.warnings.end());
    return report;
}

}  // namespace peerval
