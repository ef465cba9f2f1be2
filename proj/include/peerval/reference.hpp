#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "peerval/dataset.hpp"
#include "peerval/normalize.hpp"
#include "peerval/select.hpp"

namespace peerval {

inline constexpr std::size_t kDefaultReferenceMinTeams = 8;

// Institution-internal benchmark of a category's per-FTE rate over a scope.
struct ReferenceValue {
    std::string category_id;
    Scope scope;
    double mean_rate = 0.0;
    double sd_rate = 0.0;  // sample sd; 0 for a single team
    std::size_t n_teams = 0;
    bool sufficient = false;
};

inline ReferenceValue institution_reference(const Dataset& ds, std::string_view category_id,
                                            const Scope& scope,
                                            std::size_t min_teams = kDefaultReferenceMinTeams) {
    const std::size_t category = ds.require_category(category_id);
    std::size_t begin = 0;
    std::size_t end = ds.team_count();
    if (!scope.is_pooled()) {
        const DisciplineGroup& g = ds.disciplines()[ds.require_discipline(*scope.discipline)];
        begin = g.begin;
        end = g.end;
    }
    std::vector<double> rates;
    rates.reserve(end - begin);
    for (std::size_t t = begin; t < end; ++t) {
        rates.push_back(ds.count(t, category) / ds.teams()[t].fte_leading);
    }
    ReferenceValue ref;
    ref.category_id = std::string(category_id);
    ref.scope = scope;
    ref.n_teams = rates.size();
    ref.mean_rate = rates.empty() ? 0.0 : mean_of(rates);
    ref.sd_rate = sample_sd(rates);
    ref.sufficient = ref.n_teams >= min_teams;
    return ref;
}

// One row per (category selected for any aspect in a discipline, that
// discipline) and per (generally valid category, pooled). Disciplines first
// in id order, then pooled; categories in id order within each scope.
inline std::vector<ReferenceValue> reference_table(const Dataset& ds,
                                                   const std::vector<IndicatorSet>& per_discipline,
                                                   const std::vector<ValidPair>& generally_valid,
                                                   std::size_t min_teams = kDefaultReferenceMinTeams) {
    std::vector<ReferenceValue> table;
    std::vector<const IndicatorSet*> ordered;
    for (const IndicatorSet& set : per_discipline) ordered.push_back(&set);
    std::sort(ordered.begin(), ordered.end(),
              [](const IndicatorSet* a, const IndicatorSet* b) { return scope_less(a->scope, b->scope); });
    for (const IndicatorSet* set : ordered) {
        std::set<std::string> categories;
        for (const IndicatorEntry& e : set->selected) categories.insert(e.result.category_id);
        for (const std::string& id : categories) {
            table.push_back(institution_reference(ds, id, set->scope, min_teams));
        }
    }
    std::set<std::string> pooled;
    for (const ValidPair& p : generally_valid) pooled.insert(p.category_id);
    for (const std::string& id : pooled) {
        table.push_back(institution_reference(ds, id, Scope::pooled(), min_teams));
    }
    return table;
}

}  // namespace peerval
