#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "peerval/dataset.hpp"
#include "peerval/stats.hpp"

namespace peerval {

struct SelectionConfig {
    double alpha = 0.05;
    // A category must be present (count > 0) in strictly more than this
    // fraction of the scope's teams.
    double prevalence_threshold = 0.5;
    // Fraction of disciplines a pair must be selected in to be generally
    // valid; unset means all but one, (D - 1) / D.
    std::optional<double> general_validity_min_fraction;
    bool bonferroni = false;

    void validate() const {
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "alpha must lie in (0, 1)");
        }
        if (!(prevalence_threshold > 0.0 && prevalence_threshold <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "prevalence_threshold must lie in (0, 1]");
        }
        if (general_validity_min_fraction &&
            !(*general_validity_min_fraction >= 0.0 && *general_validity_min_fraction <= 1.0)) {
            throw Error(ErrorCode::InvalidConfig, "general_validity_min_fraction must lie in [0, 1]");
        }
    }
};

enum class ExclusionReason { Degenerate, MinorityPrevalence, NegativeCorrelation, NotSignificant };

inline std::string_view to_string(ExclusionReason reason) {
    switch (reason) {
    case ExclusionReason::Degenerate: return "degenerate";
    case ExclusionReason::MinorityPrevalence: return "minority_prevalence";
    case ExclusionReason::NegativeCorrelation: return "negative_correlation";
    case ExclusionReason::NotSignificant: return "not_significant";
    }
    return "not_significant";
}

struct IndicatorEntry {
    CorrelationResult result;
    double prevalence = 0.0;
    std::optional<ExclusionReason> exclusion;  // nullopt = selected
};

struct IndicatorSet {
    Scope scope;
    double effective_alpha = 0.05;
    std::vector<IndicatorEntry> selected;
    std::vector<IndicatorEntry> excluded;

    const IndicatorEntry* find(std::string_view category_id, Aspect aspect) const {
        for (const auto* list : {&selected, &excluded}) {
            for (const IndicatorEntry& e : *list) {
                if (e.result.category_id == category_id && e.result.aspect == aspect) return &e;
            }
        }
        return nullptr;
    }
    bool is_selected(std::string_view category_id, Aspect aspect) const {
        const IndicatorEntry* e = find(category_id, aspect);
        return e != nullptr && !e->exclusion;
    }
};

// Fraction of the scope's teams with a nonzero count for the category.
inline double prevalence(const Dataset& ds, std::string_view category_id, const Scope& scope) {
    const std::size_t category = ds.require_category(category_id);
    auto counts = ds.counts(category);
    if (!scope.is_pooled()) {
        const DisciplineGroup& g = ds.disciplines()[ds.require_discipline(*scope.discipline)];
        counts = counts.subspan(g.begin, g.size());
    }
    if (counts.empty()) return 0.0;
    const auto present = std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0.0; });
    return static_cast<double>(present) / static_cast<double>(counts.size());
}

// Significance level after the optional Bonferroni correction over every
// (category, aspect) pair tested in the scope.
inline double effective_alpha(const SelectionConfig& config, std::size_t tests_in_scope) {
    if (!config.bonferroni || tests_in_scope == 0) return config.alpha;
    return config.alpha / static_cast<double>(tests_in_scope);
}

// Applies the selection rule to one scope. Exclusion precedence:
// degenerate > minority_prevalence > negative_correlation > not_significant.
inline IndicatorSet select_indicators(const CorrelationGrid& results, const Dataset& ds,
                                      const SelectionConfig& config, const Scope& scope) {
    config.validate();
    IndicatorSet set;
    set.scope = scope;
    set.effective_alpha = effective_alpha(config, results.size());

    std::map<std::string, double, std::less<>> prevalence_cache;
    for (const CorrelationResult& result : results) {
        if (!(result.scope == scope)) {
            throw Error(ErrorCode::InvalidConfig,
                        "result for scope " + result.scope.label() + " passed to scope " + scope.label());
        }
        auto it = prevalence_cache.find(result.category_id);
        if (it == prevalence_cache.end()) {
            it = prevalence_cache.emplace(result.category_id, prevalence(ds, result.category_id, scope))
                     .first;
        }
        IndicatorEntry entry{result, it->second, std::nullopt};
        if (result.degenerate) {
            entry.exclusion = ExclusionReason::Degenerate;
        } else if (entry.prevalence <= config.prevalence_threshold) {
            entry.exclusion = ExclusionReason::MinorityPrevalence;
        } else if (result.r < 0.0) {
            entry.exclusion = ExclusionReason::NegativeCorrelation;
        } else if (!(result.r > 0.0) || !(result.p_one_sided <= set.effective_alpha)) {
            entry.exclusion = ExclusionReason::NotSignificant;
        }
        (entry.exclusion ? set.excluded : set.selected).push_back(std::move(entry));
    }
    return set;
}

// True when the entry's correlation is negative and significant at the set's level.
inline bool significantly_negative(const IndicatorEntry& entry, double alpha) {
    const CorrelationResult& r = entry.result;
    return !r.degenerate && r.r < 0.0 && r.p_lower() <= alpha;
}

struct ValidPair {
    std::string category_id;
    Aspect aspect = Aspect::Overall;

    friend bool operator==(const ValidPair&, const ValidPair&) = default;
    friend bool operator<(const ValidPair& a, const ValidPair& b) {
        return std::tie(a.category_id, a.aspect) < std::tie(b.category_id, b.aspect);
    }
};

inline std::size_t required_discipline_count(const SelectionConfig& config, std::size_t disciplines) {
    if (disciplines == 0) return 0;
    const double fraction = config.general_validity_min_fraction.value_or(
        static_cast<double>(disciplines - 1) / static_cast<double>(disciplines));
    return static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(disciplines) - 1e-9));
}

// Pairs selected in the pooled scope and in enough disciplines, with no
// discipline showing a significant negative correlation.
inline std::vector<ValidPair> general_validity(const std::vector<IndicatorSet>& per_discipline,
                                               const IndicatorSet& pooled,
                                               const SelectionConfig& config) {
    const std::size_t required = required_discipline_count(config, per_discipline.size());
    std::vector<ValidPair> valid;
    for (const IndicatorEntry& entry : pooled.selected) {
        const auto& id = entry.result.category_id;
        const Aspect aspect = entry.result.aspect;
        std::size_t selected_in = 0;
        bool negative = false;
        for (const IndicatorSet& set : per_discipline) {
            const IndicatorEntry* e = set.find(id, aspect);
            if (e == nullptr) continue;
            if (!e->exclusion) ++selected_in;
            if (significantly_negative(*e, set.effective_alpha)) negative = true;
        }
        if (!negative && selected_in >= required) valid.push_back({id, aspect});
    }
    std::sort(valid.begin(), valid.end());
    return valid;
}

}  // namespace peerval
