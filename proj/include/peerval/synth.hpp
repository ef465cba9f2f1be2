#pragma once

// Seeded synthetic dataset generator.
//
// Model, per team i of discipline d:
//   q_i            ~ N(0, 1)                       common quality factor
//   L_ia            = sqrt(w) q_i + sqrt(1 - w) s_ia,   s_ia ~ N(0, 1)
//                                                  latent standing on aspect a,
//                                                  w = aspect_commonality
//   Y_ic            = sum_a t_ca L_ia + sqrt(1 - t' S t) e_ic
//                                                  category signal; corr(Y, L_a) is
//                                                  (S t)_a, which is t_ca when only
//                                                  one aspect is planted
//   rate_ic         = max(floor_c, base_c (1 + offset_cd) + rate_sd_c Y_ic)
//   count_ic        = round2(rate_ic * fte_i) if team i is among the
//                     round(prevalence_c * n_d) teams drawn present in d, else 0
//   form scores     = round2(center + offset_ad + scale (L_ia + noise_sd z)),
//                     with min_forms..max_forms expert forms per team, each
//                     form scoring all 8 aspects
//
// Randomness comes from std::mt19937_64 seeded with `seed` (its output
// sequence is fixed by the C++ standard). Derived draws:
//   uniform  u = (next >> 11) * 2^-53                       in [0, 1)
//   normal   Box-Muller, one value per call: sqrt(-2 ln(1 - u1)) cos(2 pi u2)
//   integer  lo + floor(u * (hi - lo + 1))
// Draw order: disciplines in config order; per discipline, teams in order,
// each drawing fte, q, s_a for the 8 aspects, e_c for every category in
// config order, the form count, then per aspect one noise per form;
// after the teams, per category in config order a Fisher-Yates shuffle
// (i from n - 1 down to 1, j = integer(0, i)) whose first k indices are the
// teams where the category is present.

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "peerval/dataset.hpp"

namespace peerval {

struct SynthDiscipline {
    std::string discipline_id;
    int n_teams = 10;
};

struct SynthCategory {
    std::string category_id;
    CategoryKind kind = CategoryKind::Publication;
    std::string label;
    std::array<double, kAspectCount> target_r{};  // latent correlation with each aspect
    double prevalence = 1.0;                      // fraction of teams with a nonzero count
    double base_rate = 1.0;                       // per-FTE rate at zero signal and offset
    double rate_sd = 0.35;                        // per-FTE rate spread, in units of base_rate
    std::map<std::string, double> discipline_offset;  // relative shift of the base rate
    // Optional per-discipline replacement of target_r.
    std::map<std::string, std::array<double, kAspectCount>> discipline_target_r;

    const std::array<double, kAspectCount>& targets_for(const std::string& discipline) const {
        auto it = discipline_target_r.find(discipline);
        return it == discipline_target_r.end() ? target_r : it->second;
    }
};

struct SynthConfig {
    std::uint64_t seed = 42;
    std::vector<SynthDiscipline> disciplines;
    std::vector<SynthCategory> categories;
    double fte_min = 2.0;
    double fte_max = 7.25;
    double noise_sd = 1.0;  // per-form rating noise, latent sd units
    double aspect_commonality = 0.5;
    double rating_center = 3.5;
    double rating_scale = 0.6;
    int min_forms = 6;
    int max_forms = 9;
    // aspect id -> discipline id -> additive offset on the rating scale
    std::map<std::string, std::map<std::string, double>> rating_offsets;

    // Throws InvalidConfig for hard violations; returns advisory warnings
    // (e.g. discipline sizes outside the usual 9 to 11).
    std::vector<std::string> validate() const;
};

namespace detail {

// t' S t with S = w 11' + (1 - w) I.
inline double signal_variance(const std::array<double, kAspectCount>& t, double w) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : t) {
        sum += v;
        sum_sq += v * v;
    }
    return w * sum * sum + (1.0 - w) * sum_sq;
}

}  // namespace detail

inline std::vector<std::string> SynthConfig::validate() const {
    auto fail = [](const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); };
    std::vector<std::string> warnings;
    if (disciplines.empty()) fail("at least one discipline is required");
    std::set<std::string> seen;
    for (const SynthDiscipline& d : disciplines) {
        if (d.discipline_id.empty()) fail("discipline id must not be empty");
        if (!seen.insert(d.discipline_id).second) fail("duplicate discipline " + d.discipline_id);
        if (d.n_teams < static_cast<int>(kMinTeamsPerDiscipline)) {
            fail("discipline " + d.discipline_id + " needs at least 3 teams");
        }
        if (d.n_teams < 9 || d.n_teams > 11) {
            warnings.push_back("discipline " + d.discipline_id + " has " + std::to_string(d.n_teams) +
                               " teams, outside the usual 9 to 11");
        }
    }
    seen.clear();
    for (const SynthCategory& c : categories) {
        if (c.category_id.empty()) fail("category id must not be empty");
        if (!seen.insert(c.category_id).second) fail("duplicate category " + c.category_id);
        if (!(c.prevalence > 0.0 && c.prevalence <= 1.0)) {
            fail("category " + c.category_id + ": prevalence must lie in (0, 1]");
        }
        if (!(c.base_rate > 0.0)) fail("category " + c.category_id + ": base_rate must be > 0");
        if (!(c.rate_sd >= 0.0)) fail("category " + c.category_id + ": rate_sd must be >= 0");
        auto check_targets = [&](const std::array<double, kAspectCount>& t, const std::string& where) {
            for (double v : t) {
                if (!(v >= -1.0 && v <= 1.0)) fail(where + ": target_r must lie in [-1, 1]");
            }
            if (detail::signal_variance(t, aspect_commonality) > 1.0 + 1e-12) {
                fail(where + ": target correlations are jointly infeasible (explained variance > 1)");
            }
        };
        check_targets(c.target_r, "category " + c.category_id);
        for (const auto& [disc, t] : c.discipline_target_r) {
            check_targets(t, "category " + c.category_id + " in " + disc);
        }
    }
    if (!(fte_min > 0.0 && fte_min <= fte_max)) fail("fte range must satisfy 0 < min <= max");
    if (!(noise_sd > 0.0)) fail("noise_sd must be > 0");
    if (!(aspect_commonality >= 0.0 && aspect_commonality <= 1.0)) {
        fail("aspect_commonality must lie in [0, 1]");
    }
    if (!(rating_scale > 0.0)) fail("rating_scale must be > 0");
    if (min_forms < 1 || max_forms < min_forms) fail("form counts must satisfy 1 <= min <= max");
    for (const auto& [aspect, offsets] : rating_offsets) {
        if (!parse_aspect(aspect)) fail("rating_offsets: unknown aspect " + aspect);
    }
    return warnings;
}

// Deterministic draw helpers over mt19937_64; see the header comment.
class SynthRng {
public:
    explicit SynthRng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
    int integer(int lo, int hi) {
        return lo + static_cast<int>(std::floor(uniform() * static_cast<double>(hi - lo + 1)));
    }

private:
    std::mt19937_64 engine_;
};

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

inline std::string synth_team_id(const std::string& discipline, int index) {
    std::string num = std::to_string(index);
    if (num.size() < 2) num.insert(0, 2 - num.size(), '0');
    return discipline + "-" + num;
}

inline Dataset generate(const SynthConfig& config) {
    (void)config.validate();
    SynthRng rng(config.seed);
    const double w = config.aspect_commonality;
    DatasetParts parts;
    for (const SynthCategory& c : config.categories) {
        parts.categories.push_back({c.category_id, c.kind, c.label});
    }

    std::array<std::map<std::string, double>, kAspectCount> rating_offsets;
    for (const auto& [aspect, offsets] : config.rating_offsets) {
        rating_offsets[static_cast<std::size_t>(*parse_aspect(aspect))] = offsets;
    }
    auto lookup = [](const std::map<std::string, double>& m, const std::string& key) {
        auto it = m.find(key);
        return it == m.end() ? 0.0 : it->second;
    };

    for (const SynthDiscipline& disc : config.disciplines) {
        const auto n = static_cast<std::size_t>(disc.n_teams);
        std::vector<std::vector<double>> rates(config.categories.size(), std::vector<double>(n));
        std::vector<double> ftes(n);
        std::vector<std::string> ids(n);
        for (std::size_t i = 0; i < n; ++i) {
            ids[i] = synth_team_id(disc.discipline_id, static_cast<int>(i) + 1);
            ftes[i] = std::max(0.01, round2(rng.uniform(config.fte_min, config.fte_max)));
            parts.teams.push_back({ids[i], disc.discipline_id, ftes[i]});

            const double q = rng.normal();
            std::array<double, kAspectCount> latent{};
            for (double& l : latent) l = std::sqrt(w) * q + std::sqrt(1.0 - w) * rng.normal();

            for (std::size_t c = 0; c < config.categories.size(); ++c) {
                const SynthCategory& cat = config.categories[c];
                const auto& t = cat.targets_for(disc.discipline_id);
                double signal = 0.0;
                for (std::size_t a = 0; a < kAspectCount; ++a) signal += t[a] * latent[a];
                const double residual = std::sqrt(std::max(0.0, 1.0 - detail::signal_variance(t, w)));
                signal += residual * rng.normal();
                const double mean = cat.base_rate * (1.0 + lookup(cat.discipline_offset, disc.discipline_id));
                rates[c][i] = std::max(0.05 * cat.base_rate, mean + cat.rate_sd * cat.base_rate * signal);
            }

            const int forms = rng.integer(config.min_forms, config.max_forms);
            for (std::size_t a = 0; a < kAspectCount; ++a) {
                const double level = config.rating_center + lookup(rating_offsets[a], disc.discipline_id);
                for (int f = 0; f < forms; ++f) {
                    const double score =
                        level + config.rating_scale * (latent[a] + config.noise_sd * rng.normal());
                    parts.forms.push_back({ids[i], kAspects[a], round2(score), 0});
                }
            }
        }

        std::vector<std::size_t> order(n);
        for (std::size_t c = 0; c < config.categories.size(); ++c) {
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            for (std::size_t i = n - 1; i >= 1; --i) {
                const auto j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(i)));
                std::swap(order[i], order[j]);
            }
            const auto present = static_cast<std::size_t>(
                std::llround(config.categories[c].prevalence * static_cast<double>(n)));
            for (std::size_t k = 0; k < present; ++k) {
                const std::size_t i = order[k];
                const double count = std::max(0.01, round2(rates[c][i] * ftes[i]));
                parts.outputs.push_back({ids[i], config.categories[c].category_id, count, 0});
            }
        }
    }
    return assemble(std::move(parts));
}

struct PlantedPair {
    std::string category_id;
    Aspect aspect = Aspect::Overall;
    double target_r = 0.0;
    double prevalence = 1.0;
    bool recoverable = true;  // false when prevalence is a minority

    friend bool operator==(const PlantedPair&, const PlantedPair&) = default;
};

// Pairs the generator planted as positively correlated; the recovery
// target for end-to-end tests.
inline std::vector<PlantedPair> planted_truth(const SynthConfig& config,
                                              double prevalence_threshold = 0.5) {
    std::vector<PlantedPair> pairs;
    for (const SynthCategory& c : config.categories) {
        for (std::size_t a = 0; a < kAspectCount; ++a) {
            if (c.target_r[a] > 0.0) {
                pairs.push_back({c.category_id, kAspects[a], c.target_r[a], c.prevalence,
                                 c.prevalence > prevalence_threshold});
            }
        }
    }
    return pairs;
}

// --- configuration (de)serialization -------------------------------------

inline nlohmann::ordered_json targets_to_json(const std::array<double, kAspectCount>& t) {
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (std::size_t a = 0; a < kAspectCount; ++a) {
        if (t[a] != 0.0) out[std::string(kAspectIds[a])] = t[a];
    }
    return out;
}

inline std::array<double, kAspectCount> targets_from_json(const nlohmann::json& j) {
    std::array<double, kAspectCount> t{};
    for (const auto& [key, value] : j.items()) {
        auto aspect = parse_aspect(key);
        if (!aspect) throw Error(ErrorCode::InvalidConfig, "target_r: unknown aspect " + key);
        t[static_cast<std::size_t>(*aspect)] = value.get<double>();
    }
    return t;
}

inline nlohmann::ordered_json to_json(const SynthConfig& config) {
    nlohmann::ordered_json j;
    j["seed"] = config.seed;
    j["fte_range"] = {config.fte_min, config.fte_max};
    j["noise_sd"] = config.noise_sd;
    j["aspect_commonality"] = config.aspect_commonality;
    j["rating_center"] = config.rating_center;
    j["rating_scale"] = config.rating_scale;
    j["forms_per_team"] = {config.min_forms, config.max_forms};
    j["disciplines"] = nlohmann::ordered_json::array();
    for (const SynthDiscipline& d : config.disciplines) {
        j["disciplines"].push_back({{"id", d.discipline_id}, {"n_teams", d.n_teams}});
    }
    j["rating_offsets"] = config.rating_offsets;
    j["categories"] = nlohmann::ordered_json::array();
    for (const SynthCategory& c : config.categories) {
        nlohmann::ordered_json cj;
        cj["id"] = c.category_id;
        cj["kind"] = std::string(to_string(c.kind));
        cj["label"] = c.label;
        cj["prevalence"] = c.prevalence;
        cj["base_rate"] = c.base_rate;
        cj["rate_sd"] = c.rate_sd;
        cj["target_r"] = targets_to_json(c.target_r);
        cj["discipline_offset"] = c.discipline_offset;
        if (!c.discipline_target_r.empty()) {
            nlohmann::ordered_json overrides = nlohmann::ordered_json::object();
            for (const auto& [disc, t] : c.discipline_target_r) overrides[disc] = targets_to_json(t);
            cj["discipline_target_r"] = overrides;
        }
        j["categories"].push_back(std::move(cj));
    }
    return j;
}

// Missing keys keep their defaults.
inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
    try {
        SynthConfig config;
        config.seed = j.value("seed", config.seed);
        if (j.contains("fte_range")) {
            config.fte_min = j.at("fte_range").at(0).get<double>();
            config.fte_max = j.at("fte_range").at(1).get<double>();
        }
        config.noise_sd = j.value("noise_sd", config.noise_sd);
        config.aspect_commonality = j.value("aspect_commonality", config.aspect_commonality);
        config.rating_center = j.value("rating_center", config.rating_center);
        config.rating_scale = j.value("rating_scale", config.rating_scale);
        if (j.contains("forms_per_team")) {
            config.min_forms = j.at("forms_per_team").at(0).get<int>();
            config.max_forms = j.at("forms_per_team").at(1).get<int>();
        }
        for (const auto& d : j.value("disciplines", nlohmann::json::array())) {
            config.disciplines.push_back({d.at("id").get<std::string>(), d.at("n_teams").get<int>()});
        }
        if (j.contains("rating_offsets")) {
            config.rating_offsets =
                j.at("rating_offsets").get<std::map<std::string, std::map<std::string, double>>>();
        }
        for (const auto& cj : j.value("categories", nlohmann::json::array())) {
            SynthCategory c;
            c.category_id = cj.at("id").get<std::string>();
            const auto kind_text = cj.value("kind", std::string("publication"));
            auto kind = parse_category_kind(kind_text);
            if (!kind) throw Error(ErrorCode::InvalidConfig, "unknown category kind " + kind_text);
            c.kind = *kind;
            c.label = cj.value("label", c.category_id);
            c.prevalence = cj.value("prevalence", c.prevalence);
            c.base_rate = cj.value("base_rate", c.base_rate);
            c.rate_sd = cj.value("rate_sd", c.rate_sd);
            if (cj.contains("target_r")) c.target_r = targets_from_json(cj.at("target_r"));
            if (cj.contains("discipline_offset")) {
                c.discipline_offset = cj.at("discipline_offset").get<std::map<std::string, double>>();
            }
            if (cj.contains("discipline_target_r")) {
                for (const auto& [disc, t] : cj.at("discipline_target_r").items()) {
                    c.discipline_target_r[disc] = targets_from_json(t);
                }
            }
            config.categories.push_back(std::move(c));
        }
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("synth config: ") + e.what());
    }
}

inline nlohmann::ordered_json truth_to_json(const SynthConfig& config,
                                            double prevalence_threshold = 0.5) {
    nlohmann::ordered_json j;
    j["seed"] = config.seed;
    j["prevalence_threshold"] = prevalence_threshold;
    j["planted"] = nlohmann::ordered_json::array();
    for (const PlantedPair& p : planted_truth(config, prevalence_threshold)) {
        j["planted"].push_back({{"category_id", p.category_id},
                                {"aspect_id", std::string(to_string(p.aspect))},
                                {"target_r", p.target_r},
                                {"prevalence", p.prevalence},
                                {"recoverable", p.recoverable},
                                {"reason", p.recoverable ? nlohmann::ordered_json(nullptr)
                                                         : nlohmann::ordered_json("minority")}});
    }
    j["config"] = to_json(config);
    return j;
}

// --- default configuration --------------------------------------------------

namespace detail {

// Relative base-rate shifts per discipline, in the order of kDefaultDisciplines.
enum class Profile { Journal, Book, Neutral, Academic, Applied, Policy };

inline constexpr std::array<const char*, 6> kDefaultDisciplineIds{"ECON", "ENG", "INF",
                                                                  "LAW",  "PHIL", "POLSOC"};
inline constexpr std::array<int, 6> kDefaultDisciplineSizes{10, 11, 9, 9, 9, 9};

inline std::array<double, 6> profile_offsets(Profile p) {
    switch (p) {
    case Profile::Journal: return {0.1, 0.4, 0.3, -0.5, -0.4, 0.0};
    case Profile::Book: return {0.0, -0.5, -0.4, 0.4, 0.5, 0.2};
    case Profile::Neutral: return {0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    case Profile::Academic: return {0.0, 0.2, 0.2, -0.2, -0.1, -0.1};
    case Profile::Applied: return {0.0, 0.6, 0.4, -0.5, -0.5, -0.2};
    case Profile::Policy: return {0.2, -0.2, -0.2, 0.3, -0.3, 0.4};
    }
    return {};
}

struct CategorySeed {
    const char* id;
    CategoryKind kind;
    const char* label;
    double prevalence;
    double base_rate;
    Profile profile;
    std::vector<std::pair<Aspect, double>> targets;
};

}  // namespace detail

// Six disciplines (57 teams, 9 to 11 each), 23 publication categories plus
// one index-derived category, 21 funding categories.
inline SynthConfig default_synth_config(std::uint64_t seed = 42) {
    using detail::Profile;
    using K = CategoryKind;
    using A = Aspect;
    const std::vector<detail::CategorySeed> seeds{
        {"PUB_INT_REF", K::Publication, "Articles in journals with international referee system", 0.95, 2.5, Profile::Journal, {{A::TeamQuality, 0.85}}},
        {"PUB_NAT_REF", K::Publication, "Articles in journals with national referee system", 0.7, 1.0, Profile::Neutral, {{A::TeamQuality, 0.15}}},
        {"PUB_NO_REF", K::Publication, "Articles in journals without referee system", 0.6, 0.8, Profile::Book, {{A::TeamQuality, -0.1}}},
        {"PROC_INT", K::Publication, "Communications at international conferences integrally published in proceedings", 0.85, 2.0, Profile::Journal, {{A::Overall, 0.6}}},
        {"PROC_NAT", K::Publication, "Communications at national conferences integrally published in proceedings", 0.55, 0.6, Profile::Neutral, {}},
        {"ABSTR_INT", K::Publication, "Abstracts of communications at international conferences", 0.6, 0.8, Profile::Journal, {}},
        {"ABSTR_NAT", K::Publication, "Abstracts of communications at national conferences", 0.4, 0.4, Profile::Neutral, {}},
        {"BOOK_AUTH", K::Publication, "Books as author", 0.55, 0.3, Profile::Book, {{A::ScientificMerit, 0.2}}},
        {"BOOK_EDIT", K::Publication, "Books as editor", 0.45, 0.2, Profile::Book, {}},
        {"BOOK_CHAP", K::Publication, "Chapters in books", 0.8, 1.2, Profile::Book, {{A::Innovation, 0.15}}},
        {"BOOK_REVIEW", K::Publication, "Book reviews", 0.4, 0.3, Profile::Book, {}},
        {"REPORT_RES", K::Publication, "Research reports", 0.7, 0.9, Profile::Neutral, {{A::Planning, 0.2}}},
        {"REPORT_POLICY", K::Publication, "Policy reports for public authorities", 0.5, 0.5, Profile::Policy, {{A::Productivity, 0.2}}},
        {"PATENT", K::Publication, "Patents", 0.15, 0.1, Profile::Applied, {{A::Innovation, 0.3}}},
        {"SOFTWARE", K::Publication, "Software and databases", 0.3, 0.2, Profile::Applied, {}},
        {"PHD_THESIS", K::Publication, "Doctoral theses supervised", 0.85, 0.5, Profile::Academic, {{A::Productivity, 0.35}}},
        {"EDITOR_JOURNAL", K::Publication, "Editorial board memberships of international journals", 0.65, 0.4, Profile::Journal, {{A::ScientificImpact, 0.3}}},
        {"INVITED_LECTURE", K::Publication, "Invited lectures at international conferences", 0.75, 0.8, Profile::Neutral, {{A::ScientificImpact, 0.35}}},
        {"POPULAR", K::Publication, "Popularizing publications", 0.5, 0.6, Profile::Policy, {}},
        {"TEXTBOOK", K::Publication, "Textbooks and course material", 0.4, 0.2, Profile::Book, {}},
        {"TRANSLATION", K::Publication, "Translations and critical editions", 0.3, 0.15, Profile::Book, {}},
        {"LEGAL_COMMENT", K::Publication, "Case notes and legislative commentaries", 0.25, 0.3, Profile::Policy, {}},
        {"CATALOGUE", K::Publication, "Exhibition catalogues and other artefacts", 0.15, 0.1, Profile::Book, {}},
        {"ISI", K::IndexDerived, "Publications in journals indexed by SCIE, SSCI or AHCI", 0.9, 2.0, Profile::Journal, {{A::TeamQuality, 0.8}, {A::ScientificImpact, 0.1}}},
        {"FUND_EU", K::Funding, "European framework programme projects", 0.55, 0.3, Profile::Applied, {{A::Feasibility, 0.2}}},
        {"FUND_EU_STRUCT", K::Funding, "European structural funds", 0.3, 0.1, Profile::Policy, {}},
        {"FUND_FOUNDATION_NAT", K::Funding, "National research foundation projects", 0.9, 0.6, Profile::Academic, {{A::TeamQuality, 0.3}}},
        {"FUND_FELLOWSHIP", K::Funding, "Research foundation fellowships", 0.7, 0.5, Profile::Academic, {{A::ScientificMerit, 0.25}}},
        {"FUND_INNOVATION", K::Funding, "Innovation agency projects", 0.4, 0.3, Profile::Applied, {{A::Innovation, 0.25}}},
        {"FUND_UNIV_SPECIAL", K::Funding, "University special research fund", 0.95, 0.8, Profile::Neutral, {}},
        {"FUND_FEDERAL_SCIENCE", K::Funding, "Federal science policy programmes", 0.5, 0.2, Profile::Policy, {}},
        {"FUND_REGIONAL_GOV", K::Funding, "Regional government contracts", 0.6, 0.3, Profile::Policy, {{A::Productivity, 0.15}}},
        {"FUND_FEDERAL_GOV", K::Funding, "Federal government contracts", 0.45, 0.2, Profile::Policy, {}},
        {"FUND_LOCAL_GOV", K::Funding, "Local authority contracts", 0.25, 0.1, Profile::Policy, {}},
        {"FUND_INDUSTRY", K::Funding, "Industrial research contracts", 0.5, 0.4, Profile::Applied, {{A::Innovation, 0.2}}},
        {"FUND_SME", K::Funding, "Contracts with small and medium enterprises", 0.3, 0.1, Profile::Applied, {}},
        {"FUND_PRIVATE_FOUNDATION", K::Funding, "Private foundations", 0.4, 0.15, Profile::Neutral, {}},
        {"FUND_INTL_ORG", K::Funding, "International organisations", 0.35, 0.1, Profile::Policy, {}},
        {"FUND_BILATERAL", K::Funding, "Bilateral cooperation programmes", 0.45, 0.1, Profile::Neutral, {}},
        {"FUND_DEV_COOP", K::Funding, "Development cooperation", 0.3, 0.1, Profile::Policy, {}},
        {"FUND_INTERUNIV_POLES", K::Funding, "Interuniversity attraction poles", 0.35, 0.2, Profile::Academic, {{A::ScientificImpact, 0.2}}},
        {"FUND_SPACE", K::Funding, "Space agency programmes", 0.1, 0.05, Profile::Applied, {}},
        {"FUND_CULTURAL", K::Funding, "Public broadcasting and cultural institutions", 0.15, 0.05, Profile::Book, {}},
        {"FUND_SERVICE", K::Funding, "Scientific service provision", 0.55, 0.3, Profile::Applied, {}},
        {"FUND_OTHER", K::Funding, "Other external funding", 0.6, 0.2, Profile::Neutral, {}},
    };

    SynthConfig config;
    config.seed = seed;
    for (std::size_t d = 0; d < detail::kDefaultDisciplineIds.size(); ++d) {
        config.disciplines.push_back(
            {detail::kDefaultDisciplineIds[d], detail::kDefaultDisciplineSizes[d]});
    }
    for (const auto& s : seeds) {
        SynthCategory c;
        c.category_id = s.id;
        c.kind = s.kind;
        c.label = s.label;
        c.prevalence = s.prevalence;
        c.base_rate = s.base_rate;
        const auto offsets = detail::profile_offsets(s.profile);
        for (std::size_t d = 0; d < offsets.size(); ++d) {
            if (offsets[d] != 0.0) c.discipline_offset[detail::kDefaultDisciplineIds[d]] = offsets[d];
        }
        for (const auto& [aspect, r] : s.targets) c.target_r[static_cast<std::size_t>(aspect)] = r;
        config.categories.push_back(std::move(c));
    }
    // Discipline-dependent evaluation levels, shared by all aspects.
    const std::array<double, 6> levels{0.1, 0.3, -0.1, 0.4, -0.2, -0.3};
    for (auto aspect : kAspectIds) {
        auto& row = config.rating_offsets[std::string(aspect)];
        for (std::size_t d = 0; d < levels.size(); ++d) row[detail::kDefaultDisciplineIds[d]] = levels[d];
    }
    return config;
}

// Writes the four input CSVs and truth.json into `dir`.
inline Dataset write_synth(const SynthConfig& config, const std::filesystem::path& dir,
                           double prevalence_threshold = 0.5) {
    Dataset ds = generate(config);
    write_dataset(ds, dir);
    const auto path = dir / "truth.json";
    auto out = detail::open_output(path);
    out << truth_to_json(config, prevalence_threshold).dump(2) << '\n';
    detail::finish_output(out, path);
    return ds;
}

}  // namespace peerval
