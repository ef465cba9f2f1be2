#pragma once

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "peerval/csv.hpp"
#include "peerval/dataset.hpp"
#include "peerval/normalize.hpp"
#include "peerval/reference.hpp"
#include "peerval/select.hpp"
#include "peerval/stats.hpp"

namespace peerval {

inline constexpr const char* kToolName = "peerval";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr const char* kReportSchemaVersion = "1";

// Report ordering key for a (category, aspect) pair: category id, then aspect id.
inline std::pair<std::string_view, std::string_view> pair_key(const std::string& category_id,
                                                              Aspect aspect) {
    return {category_id, to_string(aspect)};
}

// --- scatter export ------------------------------------------------------

enum class ScatterAxes { Normalized, Raw };

struct ScatterPoint {
    std::string team_id;
    std::string discipline_id;
    double x = 0.0;  // performance measure
    double y = 0.0;  // peer rating
};

// One point per team. Normalized axes read the NormalizedDataset; raw axes
// are the per-FTE rate and the aggregated rating.
inline std::vector<ScatterPoint> scatter_series(const NormalizedDataset& norm, const Dataset& raw,
                                                std::string_view category_id, Aspect aspect,
                                                ScatterAxes axes) {
    const std::size_t category = raw.require_category(category_id);
    std::vector<ScatterPoint> points;
    points.reserve(raw.team_count());
    for (std::size_t t = 0; t < raw.team_count(); ++t) {
        const Team& team = raw.teams()[t];
        ScatterPoint p{team.team_id, team.discipline_id, 0.0, 0.0};
        if (axes == ScatterAxes::Normalized) {
            p.x = norm.measures().at(t, category);
            p.y = norm.ratings().at(t, static_cast<std::size_t>(aspect));
        } else {
            p.x = raw.count(t, category) / team.fte_leading;
            p.y = raw.score(t, aspect);
        }
        points.push_back(std::move(p));
    }
    return points;
}

struct ScatterSeries {
    std::string category_id;
    Aspect aspect = Aspect::Overall;
    std::vector<ScatterPoint> raw;
    std::vector<ScatterPoint> normalized;
};

// --- normalization gain ----------------------------------------------------

struct GainRow {
    std::string category_id;
    Aspect aspect = Aspect::Overall;
    double r_raw = 0.0;
    double r_normalized = 0.0;
    std::optional<double> delta;  // absent when either side is degenerate
};

struct ReportWarning {
    std::string kind;
    std::string scope;
    std::string subject;
    std::string message;

    friend bool operator<(const ReportWarning& a, const ReportWarning& b) {
        return std::tie(a.kind, a.scope, a.subject, a.message) <
               std::tie(b.kind, b.scope, b.subject, b.message);
    }
};

struct GainTable {
    std::vector<GainRow> rows;
    std::vector<ReportWarning> warnings;
};

// delta = r_normalized - r_raw for every pooled (category, aspect) pair.
// Both grids must come from the same dataset.
inline GainTable normalization_gain(const CorrelationGrid& raw, const CorrelationGrid& normalized) {
    std::map<std::pair<std::string, Aspect>, const CorrelationResult*> raw_by_pair;
    for (const CorrelationResult& r : raw) raw_by_pair[{r.category_id, r.aspect}] = &r;

    GainTable table;
    for (const CorrelationResult& n : normalized) {
        auto it = raw_by_pair.find({n.category_id, n.aspect});
        if (it == raw_by_pair.end()) continue;
        const CorrelationResult& r = *it->second;
        GainRow row{n.category_id, n.aspect, r.r, n.r, std::nullopt};
        if (r.degenerate || n.degenerate) {
            table.warnings.push_back({"gain_unavailable", "pooled",
                                      n.category_id + "/" + std::string(to_string(n.aspect)),
                                      "pair is degenerate with or without normalization"});
        } else {
            row.delta = n.r - r.r;
        }
        table.rows.push_back(std::move(row));
    }
    std::sort(table.rows.begin(), table.rows.end(), [](const GainRow& a, const GainRow& b) {
        return pair_key(a.category_id, a.aspect) < pair_key(b.category_id, b.aspect);
    });
    return table;
}

// --- run report ------------------------------------------------------------

struct DatasetSummary {
    std::size_t teams = 0;
    std::size_t categories = 0;
    std::size_t rating_forms = 0;
    std::vector<std::pair<std::string, std::size_t>> teams_per_discipline;
    std::map<std::string, std::size_t> categories_per_kind;
};

inline DatasetSummary summarize(const Dataset& ds) {
    DatasetSummary s;
    s.teams = ds.team_count();
    s.categories = ds.category_count();
    s.rating_forms = ds.form_count();
    for (const DisciplineGroup& g : ds.disciplines()) s.teams_per_discipline.emplace_back(g.discipline_id, g.size());
    for (auto kind : {CategoryKind::Publication, CategoryKind::IndexDerived, CategoryKind::Funding}) {
        s.categories_per_kind[std::string(to_string(kind))] = 0;
    }
    for (const Category& c : ds.categories()) ++s.categories_per_kind[std::string(to_string(c.kind))];
    return s;
}

struct RunReport {
    nlohmann::ordered_json config;    // effective configuration snapshot
    nlohmann::ordered_json method;    // documented analysis choices
    DatasetSummary dataset;
    std::vector<Scope> scopes;                 // disciplines by id, then pooled
    std::vector<CorrelationGrid> correlations;  // one grid per scope
    std::vector<IndicatorSet> indicator_sets;   // one per scope
    std::vector<ValidPair> generally_valid;
    std::vector<ReferenceValue> references;
    std::optional<GainTable> gain;
    std::vector<ScatterSeries> scatter;
    std::vector<ReportWarning> warnings;

    const IndicatorSet& pooled_set() const { return indicator_sets.back(); }
    std::size_t selected_count() const {
        std::size_t n = 0;
        for (const IndicatorSet& s : indicator_sets) n += s.selected.size();
        return n;
    }
};

// Every correlation result in (category, aspect id, scope) order.
inline std::vector<const CorrelationResult*> ordered_correlations(const RunReport& report) {
    std::vector<const CorrelationResult*> all;
    for (const CorrelationGrid& grid : report.correlations) {
        for (const CorrelationResult& r : grid) all.push_back(&r);
    }
    std::sort(all.begin(), all.end(), [](const CorrelationResult* a, const CorrelationResult* b) {
        if (a->category_id != b->category_id) return a->category_id < b->category_id;
        if (a->aspect != b->aspect) return to_string(a->aspect) < to_string(b->aspect);
        return scope_less(a->scope, b->scope);
    });
    return all;
}

inline std::vector<const IndicatorEntry*> ordered_entries(const IndicatorSet& set, bool selected) {
    std::vector<const IndicatorEntry*> out;
    for (const IndicatorEntry& e : selected ? set.selected : set.excluded) out.push_back(&e);
    std::sort(out.begin(), out.end(), [](const IndicatorEntry* a, const IndicatorEntry* b) {
        return pair_key(a->result.category_id, a->result.aspect) <
               pair_key(b->result.category_id, b->result.aspect);
    });
    return out;
}

// --- rendering ---------------------------------------------------------------

// Finite values rounded to 6 significant digits; NaN and infinities as null.
inline nlohmann::ordered_json json_number(double value) {
    if (!std::isfinite(value)) return nullptr;
    return csv::round6(value);
}

inline nlohmann::ordered_json to_json(const ReferenceValue& ref) {
    return {{"category_id", ref.category_id},   {"scope", ref.scope.label()},
            {"mean_rate", json_number(ref.mean_rate)}, {"sd_rate", json_number(ref.sd_rate)},
            {"n_teams", ref.n_teams},           {"sufficient", ref.sufficient}};
}

inline nlohmann::ordered_json to_json(const CorrelationResult& r) {
    return {{"category_id", r.category_id},
            {"aspect_id", std::string(to_string(r.aspect))},
            {"scope", r.scope.label()},
            {"n", r.n},
            {"r", json_number(r.r)},
            {"t", json_number(r.t)},
            {"p_one_sided", json_number(r.p_one_sided)},
            {"degenerate", r.degenerate},
            {"perfect", r.perfect}};
}

inline nlohmann::ordered_json to_json(const RunReport& report) {
    using json = nlohmann::ordered_json;
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}, {"schema_version", kReportSchemaVersion}};
    j["config"] = report.config;
    j["method"] = report.method;

    json summary;
    summary["teams"] = report.dataset.teams;
    summary["disciplines"] = json::array();
    for (const auto& [id, n] : report.dataset.teams_per_discipline) {
        summary["disciplines"].push_back({{"id", id}, {"teams", n}});
    }
    summary["categories"] = report.dataset.categories;
    summary["categories_per_kind"] = report.dataset.categories_per_kind;
    summary["aspects"] = kAspectCount;
    summary["rating_forms"] = report.dataset.rating_forms;
    j["dataset"] = summary;

    j["correlations"] = json::array();
    for (const CorrelationResult* r : ordered_correlations(report)) j["correlations"].push_back(to_json(*r));

    j["indicator_sets"] = json::array();
    for (const IndicatorSet& set : report.indicator_sets) {
        json sj;
        sj["scope"] = set.scope.label();
        sj["effective_alpha"] = json_number(set.effective_alpha);
        sj["selected"] = json::array();
        for (const IndicatorEntry* e : ordered_entries(set, true)) {
            sj["selected"].push_back({{"category_id", e->result.category_id},
                                      {"aspect_id", std::string(to_string(e->result.aspect))},
                                      {"r", json_number(e->result.r)},
                                      {"p_one_sided", json_number(e->result.p_one_sided)},
                                      {"prevalence", json_number(e->prevalence)}});
        }
        sj["excluded"] = json::array();
        for (const IndicatorEntry* e : ordered_entries(set, false)) {
            sj["excluded"].push_back({{"category_id", e->result.category_id},
                                      {"aspect_id", std::string(to_string(e->result.aspect))},
                                      {"reason", std::string(to_string(*e->exclusion))},
                                      {"prevalence", json_number(e->prevalence)}});
        }
        j["indicator_sets"].push_back(std::move(sj));
    }

    j["generally_valid"] = json::array();
    for (const ValidPair& p : report.generally_valid) {
        j["generally_valid"].push_back(
            {{"category_id", p.category_id}, {"aspect_id", std::string(to_string(p.aspect))}});
    }

    j["references"] = json::array();
    for (const ReferenceValue& ref : report.references) j["references"].push_back(to_json(ref));

    if (report.gain) {
        j["normalization_gain"] = json::array();
        for (const GainRow& row : report.gain->rows) {
            j["normalization_gain"].push_back(
                {{"category_id", row.category_id},
                 {"aspect_id", std::string(to_string(row.aspect))},
                 {"r_raw", json_number(row.r_raw)},
                 {"r_normalized", json_number(row.r_normalized)},
                 {"delta", row.delta ? json_number(*row.delta) : json(nullptr)}});
        }
    } else {
        j["normalization_gain"] = nullptr;
    }

    j["scatter"] = json::array();
    for (const ScatterSeries& s : report.scatter) {
        json points = json::array();
        for (std::size_t i = 0; i < s.raw.size(); ++i) {
            points.push_back({{"team_id", s.raw[i].team_id},
                              {"discipline_id", s.raw[i].discipline_id},
                              {"x_raw", json_number(s.raw[i].x)},
                              {"y_raw", json_number(s.raw[i].y)},
                              {"x_normalized", json_number(s.normalized[i].x)},
                              {"y_normalized", json_number(s.normalized[i].y)}});
        }
        j["scatter"].push_back({{"category_id", s.category_id},
                                {"aspect_id", std::string(to_string(s.aspect))},
                                {"points", std::move(points)}});
    }

    j["warnings"] = json::array();
    for (const ReportWarning& w : report.warnings) {
        j["warnings"].push_back(
            {{"kind", w.kind}, {"scope", w.scope}, {"subject", w.subject}, {"message", w.message}});
    }
    return j;
}

inline std::string render_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }
inline std::string render_json(const RunReport& report) { return render_json(to_json(report)); }

inline std::string render_markdown(const RunReport& report) {
    std::ostringstream md;
    md << "# Indicator validation report\n\n";
    md << "Teams: " << report.dataset.teams << ", disciplines: " << report.dataset.teams_per_discipline.size()
       << ", categories: " << report.dataset.categories << ", rating forms: " << report.dataset.rating_forms
       << ".\n\n";
    md << "Normalization: `" << report.config.value("mode", std::string("per_discipline"))
       << "`. Significance: one-sided t-test on Pearson r, alpha " << report.config.value("alpha", 0.05)
       << (report.config.value("bonferroni", false) ? " (Bonferroni corrected per scope)" : "") << ".\n\n";

    if (report.selected_count() == 0) {
        md << "## No indicators selected\n\n"
              "No category is significantly positively correlated with any peer-rating aspect "
              "in any scope under the current configuration.\n\n";
    }

    md << "## Generally valid indicators\n\n";
    if (report.generally_valid.empty()) {
        md << "None.\n\n";
    } else {
        md << "| category | aspect |\n|---|---|\n";
        for (const ValidPair& p : report.generally_valid) {
            md << "| " << p.category_id << " | " << to_string(p.aspect) << " |\n";
        }
        md << "\n";
    }

    md << "## Selected indicators per scope\n\n";
    for (const IndicatorSet& set : report.indicator_sets) {
        md << "### " << set.scope.label() << "\n\n";
        auto entries = ordered_entries(set, true);
        if (entries.empty()) {
            md << "No indicators selected.\n\n";
            continue;
        }
        md << "| category | aspect | r | p (one-sided) | prevalence |\n|---|---|---|---|---|\n";
        for (const IndicatorEntry* e : entries) {
            md << "| " << e->result.category_id << " | " << to_string(e->result.aspect) << " | "
               << csv::format6(e->result.r) << " | " << csv::format6(e->result.p_one_sided) << " | "
               << csv::format6(e->prevalence) << " |\n";
        }
        md << "\n";
    }

    md << "## Reference values (per FTE)\n\n";
    if (report.references.empty()) {
        md << "None.\n\n";
    } else {
        md << "| category | scope | mean | sd | teams | sufficient |\n|---|---|---|---|---|---|\n";
        for (const ReferenceValue& r : report.references) {
            md << "| " << r.category_id << " | " << r.scope.label() << " | " << csv::format6(r.mean_rate)
               << " | " << csv::format6(r.sd_rate) << " | " << r.n_teams << " | "
               << (r.sufficient ? "yes" : "no") << " |\n";
        }
        md << "\n";
    }

    if (report.gain) {
        md << "## Normalization gain (pooled)\n\n";
        md << "| category | aspect | r raw | r normalized | delta |\n|---|---|---|---|---|\n";
        for (const GainRow& row : report.gain->rows) {
            md << "| " << row.category_id << " | " << to_string(row.aspect) << " | " << csv::format6(row.r_raw)
               << " | " << csv::format6(row.r_normalized) << " | "
               << (row.delta ? csv::format6(*row.delta) : std::string("n/a")) << " |\n";
        }
        md << "\n";
    }

    md << "## Warnings\n\n";
    if (report.warnings.empty()) {
        md << "None.\n";
    } else {
        for (const ReportWarning& w : report.warnings) {
            md << "- " << w.kind << " [" << w.scope << "] " << w.subject << ": " << w.message << "\n";
        }
    }
    return md.str();
}

inline std::string csv_bool(bool b) { return b ? "true" : "false"; }

inline std::string scatter_file_name(const std::string& category_id, Aspect aspect) {
    return "scatter_" + category_id + "_" + std::string(to_string(aspect)) + ".csv";
}

inline void write_csv_bundle(const RunReport& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto emit = [&](const std::string& name, auto&& writer) {
        const auto path = dir / name;
        auto out = detail::open_output(path);
        writer(out);
        detail::finish_output(out, path);
    };

    emit("correlations.csv", [&](std::ostream& out) {
        csv::write_row(out, {"category_id", "aspect_id", "scope", "n", "r", "t", "p_one_sided",
                             "degenerate", "perfect"});
        for (const CorrelationResult* r : ordered_correlations(report)) {
            csv::write_row(out, {r->category_id, std::string(to_string(r->aspect)), r->scope.label(),
                                 std::to_string(r->n), csv::format6(r->r), csv::format6(r->t),
                                 csv::format6(r->p_one_sided), csv_bool(r->degenerate),
                                 csv_bool(r->perfect)});
        }
    });

    emit("indicators.csv", [&](std::ostream& out) {
        std::set<ValidPair> valid(report.generally_valid.begin(), report.generally_valid.end());
        csv::write_row(out, {"scope", "category_id", "aspect_id", "r", "t", "p_one_sided", "prevalence",
                             "generally_valid"});
        for (const IndicatorSet& set : report.indicator_sets) {
            for (const IndicatorEntry* e : ordered_entries(set, true)) {
                const bool gv = set.scope.is_pooled() &&
                                valid.count(ValidPair{e->result.category_id, e->result.aspect}) > 0;
                csv::write_row(out, {set.scope.label(), e->result.category_id,
                                     std::string(to_string(e->result.aspect)), csv::format6(e->result.r),
                                     csv::format6(e->result.t), csv::format6(e->result.p_one_sided),
                                     csv::format6(e->prevalence), csv_bool(gv)});
            }
        }
    });

    emit("references.csv", [&](std::ostream& out) {
        csv::write_row(out, {"category_id", "scope", "mean_rate", "sd_rate", "n_teams", "sufficient"});
        for (const ReferenceValue& r : report.references) {
            csv::write_row(out, {r.category_id, r.scope.label(), csv::format6(r.mean_rate),
                                 csv::format6(r.sd_rate), std::to_string(r.n_teams), csv_bool(r.sufficient)});
        }
    });

    for (const ScatterSeries& s : report.scatter) {
        emit(scatter_file_name(s.category_id, s.aspect), [&](std::ostream& out) {
            csv::write_row(out, {"team_id", "discipline_id", "x_raw", "y_raw", "x_normalized", "y_normalized"});
            for (std::size_t i = 0; i < s.raw.size(); ++i) {
                csv::write_row(out, {s.raw[i].team_id, s.raw[i].discipline_id, csv::format6(s.raw[i].x),
                                     csv::format6(s.raw[i].y), csv::format6(s.normalized[i].x),
                                     csv::format6(s.normalized[i].y)});
            }
        });
    }

    if (report.gain) {
        emit("normalization_gain.csv", [&](std::ostream& out) {
            csv::write_row(out, {"category_id", "aspect_id", "r_raw", "r_normalized", "delta"});
            for (const GainRow& row : report.gain->rows) {
                csv::write_row(out, {row.category_id, std::string(to_string(row.aspect)),
                                     csv::format6(row.r_raw), csv::format6(row.r_normalized),
                                     row.delta ? csv::format6(*row.delta) : std::string()});
            }
        });
    }
}

struct ReportFormats {
    bool json = true;
    bool markdown = true;
    bool csv_bundle = true;
};

inline void write_report(const RunReport& report, const std::filesystem::path& dir,
                         const ReportFormats& formats = {}) {
    std::filesystem::create_directories(dir);
    auto emit_text = [&](const char* name, const std::string& text) {
        const auto path = dir / name;
        auto out = detail::open_output(path);
        out << text;
        detail::finish_output(out, path);
    };
    if (formats.json) emit_text("report.json", render_json(report));
    if (formats.markdown) emit_text("report.md", render_markdown(report));
    if (formats.csv_bundle) write_csv_bundle(report, dir);
}

}  // namespace peerval
