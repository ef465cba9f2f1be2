// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "peerval/analysis.hpp"
#include "peerval/synth.hpp"
#include "test_util.hpp"

using namespace peerval;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

int run_cli(const std::string& args, const fs::path& scratch) {
    const std::string cmd = std::string(PEERVAL_CLI) + " " + args + " > " + (scratch / "cli.out").string() +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

// 1. Shape of the default synthetic dataset; validate exits 0.
Outcome shape_fidelity() {
    const Dataset ds = generate(default_synth_config(42));
    std::size_t publication = 0;
    std::size_t funding = 0;
    for (const auto& c : ds.categories()) (c.kind == CategoryKind::Funding ? funding : publication)++;
    bool sizes_ok = true;
    for (const auto& g : ds.disciplines()) sizes_ok = sizes_ok && g.size() >= 9 && g.size() <= 11;
    bool aspects_ok = ds.ratings().size() == ds.team_count() * kAspectCount;

    peerval::testutil::TempDir dir("accept-shape");
    write_synth(default_synth_config(42), dir.path() / "data");
    const int code = run_cli("validate --data " + (dir.path() / "data").string(), dir.path());

    Outcome o;
    o.pass = ds.disciplines().size() == 6 && ds.team_count() == 57 && sizes_ok && aspects_ok &&
             publication == 24 && funding == 21 && code == 0;
    o.detail = std::to_string(ds.disciplines().size()) + " disciplines, " + std::to_string(ds.team_count()) +
               " teams, " + std::to_string(publication) + " publication-type + " + std::to_string(funding) +
               " funding categories, validate exit " + std::to_string(code);
    return o;
}

double direct_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    long double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    const long double n = static_cast<long double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        syy += static_cast<long double>(y[i]) * y[i];
        sxy += static_cast<long double>(x[i]) * y[i];
    }
    return static_cast<double>((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

double trapezoid_tail(double t, long df) {
    const double nu = static_cast<double>(df);
    const double log_c = std::lgamma((nu + 1) / 2) - std::lgamma(nu / 2) - 0.5 * std::log(nu * M_PI);
    auto f = [&](double u) { return std::exp(log_c - (nu + 1) / 2 * std::log1p(u * u / nu)); };
    const int steps = 200000;
    const double h = t / steps;
    double sum = 0.5 * (f(0) + f(t));
    for (int i = 1; i < steps; ++i) sum += f(i * h);
    return 0.5 - sum * h;
}

// 2. Statistics against independent oracles.
Outcome statistics_oracle() {
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> n_dist(3, 60);
    std::normal_distribution<double> z;
    double worst_r = 0.0;
    for (int i = 0; i < 100; ++i) {
        const int n = n_dist(rng);
        std::vector<double> x(n), y(n);
        for (int k = 0; k < n; ++k) {
            x[k] = z(rng);
            y[k] = 0.5 * x[k] + z(rng);
        }
        worst_r = std::max(worst_r, std::abs(pearson(x, y) - direct_pearson(x, y)));
    }
    std::uniform_real_distribution<double> t_dist(-4.0, 4.0);
    std::uniform_int_distribution<long> df_dist(1, 60);
    double worst_p = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double t = t_dist(rng);
        const long df = df_dist(rng);
        worst_p = std::max(worst_p, std::abs(p_one_sided(t, df) - trapezoid_tail(t, df)));
    }
    const double p1 = p_one_sided(1.812, 10);
    const double p2 = p_one_sided(2.306, 8);
    Outcome o;
    o.pass = worst_r <= 1e-12 && worst_p <= 1e-6 && std::abs(p1 - 0.050) <= 5e-4 && std::abs(p2 - 0.025) <= 5e-4;
    o.detail = "max |r - oracle| " + fmt(worst_r) + ", max |p - integral| " + fmt(worst_p) + ", p(1.812,10) " +
               fmt(p1) + ", p(2.306,8) " + fmt(p2);
    return o;
}

std::set<std::tuple<std::string, std::string, std::string>> selected_keys(const RunReport& report) {
    std::set<std::tuple<std::string, std::string, std::string>> keys;
    for (const auto& set : report.indicator_sets) {
        for (const auto& e : set.selected) {
            keys.insert({set.scope.label(), e.result.category_id, std::string(to_string(e.result.aspect))});
        }
    }
    return keys;
}

// 3. z-score moments, and invariance of pooled r and selection under scaling
// of one category's counts.
Outcome normalization_invariants() {
    const Dataset ds = generate(default_synth_config(42));
    const auto norm = normalize_dataset(ds, NormalizeMode::PerDiscipline);
    double worst_moment = 0.0;
    for (std::size_t d = 0; d < ds.disciplines().size(); ++d) {
        const auto& g = ds.disciplines()[d];
        for (std::size_t c = 0; c < ds.category_count(); ++c) {
            if (norm.measure_degenerate(d, c)) continue;
            auto col = norm.measure_column(c).subspan(g.begin, g.size());
            worst_moment = std::max({worst_moment, std::abs(mean_of(col)), std::abs(sample_sd(col) - 1.0)});
        }
        for (Aspect a : kAspects) {
            if (norm.rating_degenerate(d, a)) continue;
            auto col = norm.rating_column(a).subspan(g.begin, g.size());
            worst_moment = std::max({worst_moment, std::abs(mean_of(col)), std::abs(sample_sd(col) - 1.0)});
        }
    }

    const RunReport base = run_analysis(ds, {});
    const auto base_keys = selected_keys(base);
    double worst_r = 0.0;
    int set_changes = 0;
    for (double k : {0.1, 3.0, 1000.0}) {
        for (std::size_t c = 0; c < ds.category_count(); ++c) {
            DatasetParts parts = ds.parts();
            for (auto& rec : parts.outputs) {
                if (rec.category_id == ds.categories()[c].category_id) rec.count *= k;
            }
            const RunReport scaled = run_analysis(assemble(parts), {});
            const auto& a = base.correlations.back();
            const auto& b = scaled.correlations.back();
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (a[i].degenerate != b[i].degenerate) ++set_changes;
                if (!a[i].degenerate) worst_r = std::max(worst_r, std::abs(a[i].r - b[i].r));
            }
            if (selected_keys(scaled) != base_keys) ++set_changes;
        }
    }
    Outcome o;
    o.pass = worst_moment <= 1e-9 && worst_r <= 1e-9 && set_changes == 0;
    o.detail = "max moment error " + fmt(worst_moment) + ", max pooled r change " + fmt(worst_r) +
               ", selection changes " + std::to_string(set_changes) + " over 3 factors x " +
               std::to_string(ds.category_count()) + " categories";
    return o;
}

// 4. Discipline offsets on a category and an aspect: normalized pooled r
// exceeds raw pooled r.
Outcome figure_one_property() {
    int wins = 0;
    double smallest_gain = 1e9;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Dataset ds = generate(peerval::testutil::offset_config(seed));
        const std::vector<Scope> pooled{Scope::pooled()};
        const double raw = correlate(normalize_dataset(ds, NormalizeMode::None), ds, "FIG", Aspect::TeamQuality,
                                     Scope::pooled()).r;
        const double z = correlate(normalize_dataset(ds, NormalizeMode::PerDiscipline), ds, "FIG",
                                   Aspect::TeamQuality, Scope::pooled()).r;
        if (z > raw) ++wins;
        smallest_gain = std::min(smallest_gain, z - raw);
    }
    Outcome o;
    o.pass = wins == 20;
    o.detail = std::to_string(wins) + "/20 seeds, smallest gain " + fmt(smallest_gain);
    return o;
}

SynthConfig null_config(std::uint64_t seed) {
    SynthConfig config = default_synth_config(seed);
    for (auto& c : config.categories) c.target_r.fill(0.0);
    return config;
}

// 5. Recovery of one planted pair; false-selection rate with nothing planted.
Outcome selection_recovery() {
    int recovered = 0;
    std::size_t false_selected = 0;
    std::size_t tested = 0;
    double worst_scope_rate = 0.0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per_scope;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SynthConfig config = null_config(seed);
        config.categories.push_back(peerval::testutil::planted_category("PLANTED", Aspect::TeamQuality, 0.8, 0.9));
        const RunReport planted = run_analysis(generate(config), {});
        if (planted.pooled_set().is_selected("PLANTED", Aspect::TeamQuality)) ++recovered;

        const RunReport null = run_analysis(generate(null_config(seed + 1000)), {});
        for (const auto& set : null.indicator_sets) {
            auto& [sel, all] = per_scope[set.scope.label()];
            sel += set.selected.size();
            all += set.selected.size() + set.excluded.size();
            false_selected += set.selected.size();
            tested += set.selected.size() + set.excluded.size();
        }
    }
    for (const auto& [scope, counts] : per_scope) {
        worst_scope_rate = std::max(worst_scope_rate, static_cast<double>(counts.first) / counts.second);
    }
    Outcome o;
    o.pass = recovered >= 45 && worst_scope_rate < 0.15;
    o.detail = "planted pair selected pooled in " + std::to_string(recovered) +
               "/50 seeds; null false-selection rate overall " +
               fmt(static_cast<double>(false_selected) / static_cast<double>(tested)) + ", worst scope " +
               fmt(worst_scope_rate);
    return o;
}

// 6. A strongly planted pair at prevalence 0.3 is always a minority exclusion.
Outcome minority_prevalence() {
    int scopes_ok = 0;
    int scopes = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SynthConfig config = null_config(seed);
        config.categories.push_back(peerval::testutil::planted_category("RARE", Aspect::Overall, 0.9, 0.3));
        const RunReport report = run_analysis(generate(config), {});
        for (const auto& set : report.indicator_sets) {
            ++scopes;
            const IndicatorEntry* e = set.find("RARE", Aspect::Overall);
            if (e != nullptr && e->exclusion == ExclusionReason::MinorityPrevalence) ++scopes_ok;
        }
    }
    Outcome o;
    o.pass = scopes_ok == scopes;
    o.detail = std::to_string(scopes_ok) + "/" + std::to_string(scopes) +
               " (seed, scope) cases excluded as minority_prevalence";
    return o;
}

// 7. A significant negative correlation in one discipline vetoes general
// validity.
Outcome general_validity_veto() {
    // Hand-built: selected pooled and in five disciplines, significantly
    // negative in the sixth.
    std::vector<IndicatorSet> disciplines;
    for (int d = 0; d < 6; ++d) {
        IndicatorSet set;
        set.scope = Scope::of("D" + std::to_string(d));
        IndicatorEntry e;
        e.result.category_id = "C";
        e.result.scope = set.scope;
        e.result.n = 10;
        e.prevalence = 1.0;
        if (d < 5) {
            e.result.r = 0.8;
            e.result.p_one_sided = 0.003;
            set.selected.push_back(e);
        } else {
            e.result.r = -0.8;
            e.result.p_one_sided = 0.997;
            e.exclusion = ExclusionReason::NegativeCorrelation;
            set.excluded.push_back(e);
        }
        disciplines.push_back(set);
    }
    IndicatorSet pooled;
    IndicatorEntry pe;
    pe.result.category_id = "C";
    pe.result.r = 0.5;
    pe.result.p_one_sided = 1e-4;
    pooled.selected.push_back(pe);
    const bool hand_ok = general_validity(disciplines, pooled, {}).empty();

    // Generated: planted positive in five disciplines, negative in the sixth.
    int violations = 0;
    int scenario = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        SynthConfig config = null_config(seed);
        SynthCategory c = peerval::testutil::planted_category("SPLIT", Aspect::TeamQuality, 0.85, 1.0);
        std::array<double, kAspectCount> negative{};
        negative[static_cast<std::size_t>(Aspect::TeamQuality)] = -0.85;
        c.discipline_target_r[config.disciplines.back().discipline_id] = negative;
        config.categories.push_back(c);
        const RunReport report = run_analysis(generate(config), {});

        int selected_in = 0;
        bool negative_sig = false;
        for (std::size_t s = 0; s + 1 < report.indicator_sets.size(); ++s) {
            const auto& set = report.indicator_sets[s];
            const IndicatorEntry* e = set.find("SPLIT", Aspect::TeamQuality);
            if (!e->exclusion) ++selected_in;
            if (significantly_negative(*e, set.effective_alpha)) negative_sig = true;
        }
        const bool pooled_selected = report.pooled_set().is_selected("SPLIT", Aspect::TeamQuality);
        const bool valid = std::count(report.generally_valid.begin(), report.generally_valid.end(),
                                      ValidPair{"SPLIT", Aspect::TeamQuality}) > 0;
        if (pooled_selected && selected_in >= 5 && negative_sig) {
            ++scenario;
            if (valid) ++violations;
        }
    }
    Outcome o;
    o.pass = hand_ok && violations == 0 && scenario > 0;
    o.detail = std::string("hand-built case ") + (hand_ok ? "rejected" : "ACCEPTED") + "; " +
               std::to_string(scenario) + "/50 generated seeds met the scenario, " + std::to_string(violations) +
               " reported generally valid";
    return o;
}

// 8. Byte-identical report.json across runs and thread counts.
Outcome determinism() {
    peerval::testutil::TempDir dir("accept-det");
    const fs::path data = dir.path() / "data";
    int codes = run_cli("synth --seed 42 --out " + data.string(), dir.path());
    std::vector<std::string> reports;
    for (const char* threads : {"1", "8", "1", "3"}) {
        const fs::path out = dir.path() / "report";
        codes += run_cli("analyze --data " + data.string() + " --compare --threads " + threads + " --out " +
                             out.string(),
                         dir.path());
        reports.push_back(peerval::testutil::read_file(out / "report.json"));
    }
    bool same = !reports[0].empty();
    for (const auto& r : reports) same = same && r == reports[0];
    Outcome o;
    o.pass = codes == 0 && same;
    o.detail = std::to_string(reports.size()) + " runs with threads 1, 8, 1, 3: " +
               (same ? "identical" : "DIFFERENT") + " (" + std::to_string(reports[0].size()) + " bytes)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 shape fidelity", shape_fidelity},
        {"2 statistics oracle", statistics_oracle},
        {"3 normalization invariants", normalization_invariants},
        {"4 normalization raises pooled r under discipline offsets", figure_one_property},
        {"5 selection-rule recovery", selection_recovery},
        {"6 minority-prevalence rule", minority_prevalence},
        {"7 general-validity veto", general_validity_veto},
        {"8 determinism", determinism},
    };
    int failures = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << "  [" << o.detail << "]\n";
    }
    const auto seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (failures == 0 ? "all criteria met" : std::to_string(failures) + " criteria not met") << " in "
              << fmt(seconds) << " s\n";
    return failures == 0 ? 0 : 1;
}
