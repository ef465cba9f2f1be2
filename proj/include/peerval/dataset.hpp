#pragma once

// Input tables (teams, categories, output counts, per-form peer ratings) and
// the immutable, validated Dataset they assemble into.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "peerval/csv.hpp"
#include "peerval/error.hpp"

namespace peerval {

enum class CategoryKind { Publication, Funding, IndexDerived };

inline std::string_view to_string(CategoryKind kind) {
    switch (kind) {
    case CategoryKind::Publication: return "publication";
    case CategoryKind::Funding: return "funding";
    case CategoryKind::IndexDerived: return "index_derived";
    }
    return "publication";
}

inline std::optional<CategoryKind> parse_category_kind(std::string_view text) {
    if (text == "publication") return CategoryKind::Publication;
    if (text == "funding") return CategoryKind::Funding;
    if (text == "index_derived") return CategoryKind::IndexDerived;
    return std::nullopt;
}

// The eight peer-review aspects. Closed set; the numeric value doubles as the
// column index of the ratings matrix.
enum class Aspect : std::uint8_t {
    Overall,
    ScientificMerit,
    Planning,
    Innovation,
    TeamQuality,
    Feasibility,
    Productivity,
    ScientificImpact,
};

inline constexpr std::size_t kAspectCount = 8;

inline constexpr std::array<Aspect, kAspectCount> kAspects{
    Aspect::Overall,     Aspect::ScientificMerit, Aspect::Planning,     Aspect::Innovation,
    Aspect::TeamQuality, Aspect::Feasibility,     Aspect::Productivity, Aspect::ScientificImpact,
};

inline constexpr std::array<std::string_view, kAspectCount> kAspectIds{
    "overall",     "scientific_merit", "planning",     "innovation",
    "team_quality", "feasibility",     "productivity", "scientific_impact",
};

inline std::string_view to_string(Aspect aspect) {
    return kAspectIds[static_cast<std::size_t>(aspect)];
}

inline std::optional<Aspect> parse_aspect(std::string_view text) {
    for (std::size_t i = 0; i < kAspectCount; ++i) {
        if (kAspectIds[i] == text) return kAspects[i];
    }
    return std::nullopt;
}

struct Team {
    std::string team_id;
    std::string discipline_id;
    double fte_leading = 0.0;

    friend bool operator==(const Team&, const Team&) = default;
};

struct Category {
    std::string category_id;
    CategoryKind kind = CategoryKind::Publication;
    std::string label;

    friend bool operator==(const Category&, const Category&) = default;
};

struct OutputRecord {
    std::string team_id;
    std::string category_id;
    double count = 0.0;
    std::size_t source_line = 0;

    friend bool operator==(const OutputRecord& a, const OutputRecord& b) {
        return a.team_id == b.team_id && a.category_id == b.category_id && a.count == b.count;
    }
};

// One expert form's score for one aspect, before aggregation.
struct RatingForm {
    std::string team_id;
    Aspect aspect = Aspect::Overall;
    double score = 0.0;
    std::size_t source_line = 0;

    friend bool operator==(const RatingForm& a, const RatingForm& b) {
        return a.team_id == b.team_id && a.aspect == b.aspect && a.score == b.score;
    }
};

struct PeerRating {
    std::string team_id;
    Aspect aspect = Aspect::Overall;
    double score = 0.0;
    int form_count = 0;

    friend bool operator==(const PeerRating&, const PeerRating&) = default;
};

struct DisciplineGroup {
    std::string discipline_id;
    std::size_t begin = 0;  // team index range [begin, end)
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    friend bool operator==(const DisciplineGroup&, const DisciplineGroup&) = default;
};

inline constexpr std::size_t kMinTeamsPerDiscipline = 3;

inline constexpr std::array<std::string_view, 3> kTeamsHeader{"team_id", "discipline_id",
                                                              "fte_leading"};
inline constexpr std::array<std::string_view, 3> kCategoriesHeader{"category_id", "kind", "label"};
inline constexpr std::array<std::string_view, 3> kOutputsHeader{"team_id", "category_id", "count"};
inline constexpr std::array<std::string_view, 3> kRatingsHeader{"team_id", "aspect_id", "score"};

namespace detail {

inline bool check_arity(const csv::Row& row, std::size_t expected, const std::string& file,
                        IssueReporter& issues) {
    if (row.fields.size() == expected) return true;
    issues.report(ErrorCode::MalformedRow,
                  "expected " + std::to_string(expected) + " fields, found " +
                      std::to_string(row.fields.size()),
                  {file, row.line, std::min(row.fields.size(), expected) + 1});
    return false;
}

inline bool check_key(const csv::Row& row, std::size_t column, const std::string& file,
                      IssueReporter& issues) {
    if (!csv::trim(row.fields[column]).empty()) return true;
    issues.report(ErrorCode::MalformedRow, "empty key field", {file, row.line, column + 1});
    return false;
}

inline std::optional<double> number_field(const csv::Row& row, std::size_t column,
                                          const std::string& file, IssueReporter& issues) {
    auto value = csv::parse_double(row.fields[column]);
    if (!value) {
        issues.report(ErrorCode::NonNumeric, "'" + row.fields[column] + "' is not a number",
                      {file, row.line, column + 1});
    }
    return value;
}

}  // namespace detail

inline std::vector<Team> parse_teams(std::istream& in, const std::string& file = "teams.csv",
                                     std::vector<Issue>* collect = nullptr) {
    IssueReporter issues(collect);
    csv::Reader reader(in, file);
    std::vector<Team> teams;
    if (!csv::expect_header(reader, kTeamsHeader, issues)) return teams;
    std::set<std::string, std::less<>> seen;
    csv::Row row;
    while (reader.next(row)) {
        if (!detail::check_arity(row, 3, file, issues)) continue;
        if (!detail::check_key(row, 0, file, issues) || !detail::check_key(row, 1, file, issues)) {
            continue;
        }
        auto fte = detail::number_field(row, 2, file, issues);
        if (!fte) continue;
        Team team{std::string(csv::trim(row.fields[0])), std::string(csv::trim(row.fields[1])),
                  *fte};
        if (team.fte_leading <= 0.0) {
            issues.report(ErrorCode::NonpositiveFte,
                          "team " + team.team_id + " has fte_leading " + row.fields[2],
                          {file, row.line, 3});
            continue;
        }
        if (!seen.insert(team.team_id).second) {
            issues.report(ErrorCode::DuplicateTeam, "team " + team.team_id + " listed twice",
                          {file, row.line, 1});
            continue;
        }
        teams.push_back(std::move(team));
    }
    return teams;
}

inline std::vector<Category> parse_categories(std::istream& in,
                                              const std::string& file = "categories.csv",
                                              std::vector<Issue>* collect = nullptr) {
    IssueReporter issues(collect);
    csv::Reader reader(in, file);
    std::vector<Category> categories;
    if (!csv::expect_header(reader, kCategoriesHeader, issues)) return categories;
    std::set<std::string, std::less<>> seen;
    csv::Row row;
    while (reader.next(row)) {
        if (!detail::check_arity(row, 3, file, issues)) continue;
        if (!detail::check_key(row, 0, file, issues)) continue;
        auto kind = parse_category_kind(csv::trim(row.fields[1]));
        if (!kind) {
            issues.report(ErrorCode::UnknownKind,
                          "kind '" + row.fields[1] +
                              "' is not one of publication, funding, index_derived",
                          {file, row.line, 2});
            continue;
        }
        Category category{std::string(csv::trim(row.fields[0])), *kind, row.fields[2]};
        if (!seen.insert(category.category_id).second) {
            issues.report(ErrorCode::DuplicateCategory,
                          "category " + category.category_id + " listed twice", {file, row.line, 1});
            continue;
        }
        categories.push_back(std::move(category));
    }
    return categories;
}

inline std::vector<OutputRecord> parse_outputs(std::istream& in,
                                               const std::string& file = "outputs.csv",
                                               std::vector<Issue>* collect = nullptr) {
    IssueReporter issues(collect);
    csv::Reader reader(in, file);
    std::vector<OutputRecord> outputs;
    if (!csv::expect_header(reader, kOutputsHeader, issues)) return outputs;
    std::set<std::pair<std::string, std::string>> seen;
    csv::Row row;
    while (reader.next(row)) {
        if (!detail::check_arity(row, 3, file, issues)) continue;
        if (!detail::check_key(row, 0, file, issues) || !detail::check_key(row, 1, file, issues)) {
            continue;
        }
        auto count = detail::number_field(row, 2, file, issues);
        if (!count) continue;
        OutputRecord record{std::string(csv::trim(row.fields[0])),
                            std::string(csv::trim(row.fields[1])), *count, row.line};
        if (record.count < 0.0) {
            issues.report(ErrorCode::NegativeCount,
                          "negative count " + row.fields[2] + " for (" + record.team_id + ", " +
                              record.category_id + ")",
                          {file, row.line, 3});
            continue;
        }
        if (!seen.emplace(record.team_id, record.category_id).second) {
            issues.report(ErrorCode::DuplicatePair,
                          "pair (" + record.team_id + ", " + record.category_id + ") listed twice",
                          {file, row.line, 1});
            continue;
        }
        outputs.push_back(std::move(record));
    }
    return outputs;
}

inline std::vector<RatingForm> parse_ratings(std::istream& in,
                                             const std::string& file = "ratings.csv",
                                             std::vector<Issue>* collect = nullptr) {
    IssueReporter issues(collect);
    csv::Reader reader(in, file);
    std::vector<RatingForm> forms;
    // An empty file yields no forms; completeness is checked at assembly.
    if (in.peek() == std::char_traits<char>::eof()) return forms;
    if (!csv::expect_header(reader, kRatingsHeader, issues)) return forms;
    csv::Row row;
    while (reader.next(row)) {
        if (!detail::check_arity(row, 3, file, issues)) continue;
        if (!detail::check_key(row, 0, file, issues)) continue;
        auto aspect = parse_aspect(csv::trim(row.fields[1]));
        if (!aspect) {
            issues.report(ErrorCode::UnknownAspect,
                          "aspect '" + row.fields[1] + "' is not one of the 8 review aspects",
                          {file, row.line, 2});
            continue;
        }
        auto score = detail::number_field(row, 2, file, issues);
        if (!score) continue;
        forms.push_back({std::string(csv::trim(row.fields[0])), *aspect, *score, row.line});
    }
    return forms;
}

// Mean score per (team, aspect). Forms are summed in (team, aspect, score)
// order so the result does not depend on input row order.
inline std::vector<PeerRating> aggregate_ratings(std::vector<RatingForm> forms) {
    std::sort(forms.begin(), forms.end(), [](const RatingForm& a, const RatingForm& b) {
        return std::tie(a.team_id, a.aspect, a.score) < std::tie(b.team_id, b.aspect, b.score);
    });
    std::vector<PeerRating> ratings;
    for (std::size_t i = 0; i < forms.size();) {
        std::size_t j = i;
        double sum = 0.0;
        while (j < forms.size() && forms[j].team_id == forms[i].team_id &&
               forms[j].aspect == forms[i].aspect) {
            sum += forms[j].score;
            ++j;
        }
        const auto n = static_cast<int>(j - i);
        ratings.push_back({forms[i].team_id, forms[i].aspect, sum / n, n});
        i = j;
    }
    return ratings;
}

// Everything needed to build a Dataset, in no particular order.
struct DatasetParts {
    std::vector<Team> teams;
    std::vector<Category> categories;
    std::vector<OutputRecord> outputs;
    std::vector<RatingForm> forms;
};

struct InputFiles {
    std::string teams = "teams.csv";
    std::string categories = "categories.csv";
    std::string outputs = "outputs.csv";
    std::string ratings = "ratings.csv";
};

class Dataset;
Dataset assemble(DatasetParts parts, const InputFiles& files = {},
                 std::vector<Issue>* collect = nullptr);

// Validated analysis dataset. Teams are stored grouped by discipline
// (disciplines sorted by id, teams sorted by id within each), categories
// sorted by id. Immutable once assembled.
class Dataset {
public:
    const std::vector<Team>& teams() const noexcept { return teams_; }
    const std::vector<Category>& categories() const noexcept { return categories_; }
    const std::vector<OutputRecord>& outputs() const noexcept { return outputs_; }
    const std::vector<RatingForm>& forms() const noexcept { return forms_; }
    const std::vector<PeerRating>& ratings() const noexcept { return ratings_; }
    const std::vector<DisciplineGroup>& disciplines() const noexcept { return disciplines_; }

    std::size_t team_count() const noexcept { return teams_.size(); }
    std::size_t category_count() const noexcept { return categories_.size(); }

    // Dense counts, column-major: one contiguous column per category.
    std::span<const double> counts(std::size_t category) const {
        return {counts_.data() + category * teams_.size(), teams_.size()};
    }
    double count(std::size_t team, std::size_t category) const {
        return counts_[category * teams_.size() + team];
    }
    // Aggregated ratings, column-major: one contiguous column per aspect.
    std::span<const double> scores(Aspect aspect) const {
        return {scores_.data() + static_cast<std::size_t>(aspect) * teams_.size(), teams_.size()};
    }
    double score(std::size_t team, Aspect aspect) const {
        return scores_[static_cast<std::size_t>(aspect) * teams_.size() + team];
    }

    std::optional<std::size_t> find_team(std::string_view id) const {
        auto it = team_index_.find(std::string(id));
        if (it == team_index_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::size_t> find_category(std::string_view id) const {
        auto it = std::lower_bound(
            categories_.begin(), categories_.end(), id,
            [](const Category& c, std::string_view key) { return c.category_id < key; });
        if (it == categories_.end() || it->category_id != id) return std::nullopt;
        return static_cast<std::size_t>(it - categories_.begin());
    }
    std::optional<std::size_t> find_discipline(std::string_view id) const {
        for (std::size_t i = 0; i < disciplines_.size(); ++i) {
            if (disciplines_[i].discipline_id == id) return i;
        }
        return std::nullopt;
    }

    std::size_t require_category(std::string_view id) const {
        auto index = find_category(id);
        if (!index) throw Error(ErrorCode::UnknownCategory, "unknown category " + std::string(id));
        return *index;
    }
    std::size_t require_discipline(std::string_view id) const {
        auto index = find_discipline(id);
        if (!index) {
            throw Error(ErrorCode::UnknownDiscipline, "unknown discipline " + std::string(id));
        }
        return *index;
    }

    std::size_t form_count() const noexcept { return forms_.size(); }

    DatasetParts parts() const { return {teams_, categories_, outputs_, forms_}; }

    friend bool operator==(const Dataset& a, const Dataset& b) {
        return a.teams_ == b.teams_ && a.categories_ == b.categories_ &&
               a.outputs_ == b.outputs_ && a.forms_ == b.forms_;
    }

private:
    friend Dataset assemble(DatasetParts parts, const InputFiles& files,
                            std::vector<Issue>* collect);
    Dataset() = default;

    std::vector<Team> teams_;
    std::vector<Category> categories_;
    std::vector<OutputRecord> outputs_;
    std::vector<RatingForm> forms_;
    std::vector<PeerRating> ratings_;
    std::vector<DisciplineGroup> disciplines_;
    std::unordered_map<std::string, std::size_t> team_index_;
    std::vector<double> counts_;
    std::vector<double> scores_;
};

// Enforces referential integrity and the Dataset invariants. Throws on the
// first problem, or records all of them in `collect` and then throws a
// summary error if any were found.
inline Dataset assemble(DatasetParts parts, const InputFiles& files, std::vector<Issue>* collect) {
    IssueReporter issues(collect);
    Dataset ds;

    ds.teams_ = std::move(parts.teams);
    std::sort(ds.teams_.begin(), ds.teams_.end(), [](const Team& a, const Team& b) {
        return std::tie(a.discipline_id, a.team_id) < std::tie(b.discipline_id, b.team_id);
    });
    for (std::size_t i = 0; i < ds.teams_.size(); ++i) {
        const Team& team = ds.teams_[i];
        if (team.fte_leading <= 0.0) {
            issues.report(ErrorCode::NonpositiveFte, "team " + team.team_id + " has fte_leading <= 0",
                          {files.teams, 0, 3});
        }
        if (!ds.team_index_.emplace(team.team_id, i).second) {
            issues.report(ErrorCode::DuplicateTeam, "team " + team.team_id + " listed twice",
                          {files.teams, 0, 1});
        }
    }

    for (std::size_t i = 0; i < ds.teams_.size();) {
        std::size_t j = i;
        while (j < ds.teams_.size() && ds.teams_[j].discipline_id == ds.teams_[i].discipline_id) ++j;
        ds.disciplines_.push_back({ds.teams_[i].discipline_id, i, j});
        if (j - i < kMinTeamsPerDiscipline) {
            issues.report(ErrorCode::DisciplineTooSmall,
                          "discipline " + ds.teams_[i].discipline_id + " has " +
                              std::to_string(j - i) + " teams; at least " +
                              std::to_string(kMinTeamsPerDiscipline) + " are required",
                          {files.teams, 0, 2});
        }
        i = j;
    }

    ds.categories_ = std::move(parts.categories);
    std::sort(ds.categories_.begin(), ds.categories_.end(),
              [](const Category& a, const Category& b) { return a.category_id < b.category_id; });
    for (std::size_t i = 1; i < ds.categories_.size(); ++i) {
        if (ds.categories_[i].category_id == ds.categories_[i - 1].category_id) {
            issues.report(ErrorCode::DuplicateCategory,
                          "category " + ds.categories_[i].category_id + " listed twice",
                          {files.categories, 0, 1});
        }
    }

    const std::size_t n_teams = ds.teams_.size();
    ds.counts_.assign(n_teams * ds.categories_.size(), 0.0);
    ds.outputs_ = std::move(parts.outputs);
    std::sort(ds.outputs_.begin(), ds.outputs_.end(), [](const OutputRecord& a, const OutputRecord& b) {
        return std::tie(a.team_id, a.category_id) < std::tie(b.team_id, b.category_id);
    });
    for (std::size_t i = 0; i < ds.outputs_.size(); ++i) {
        const OutputRecord& rec = ds.outputs_[i];
        const SourceLocation where{files.outputs, rec.source_line, 0};
        if (i > 0 && rec.team_id == ds.outputs_[i - 1].team_id &&
            rec.category_id == ds.outputs_[i - 1].category_id) {
            issues.report(ErrorCode::DuplicatePair,
                          "pair (" + rec.team_id + ", " + rec.category_id + ") listed twice", where);
            continue;
        }
        if (rec.count < 0.0) {
            issues.report(ErrorCode::NegativeCount, "negative count for (" + rec.team_id + ", " +
                                                        rec.category_id + ")",
                          where);
            continue;
        }
        auto team = ds.find_team(rec.team_id);
        if (!team) {
            issues.report(ErrorCode::DanglingTeam,
                          "output row references unknown team " + rec.team_id,
                          {files.outputs, rec.source_line, 1});
            continue;
        }
        auto category = ds.find_category(rec.category_id);
        if (!category) {
            issues.report(ErrorCode::DanglingCategory,
                          "output row references unknown category " + rec.category_id,
                          {files.outputs, rec.source_line, 2});
            continue;
        }
        ds.counts_[*category * n_teams + *team] = rec.count;
    }

    ds.forms_ = std::move(parts.forms);
    std::sort(ds.forms_.begin(), ds.forms_.end(), [](const RatingForm& a, const RatingForm& b) {
        return std::tie(a.team_id, a.aspect, a.score) < std::tie(b.team_id, b.aspect, b.score);
    });
    for (const RatingForm& form : ds.forms_) {
        if (!ds.find_team(form.team_id)) {
            issues.report(ErrorCode::DanglingTeam, "rating row references unknown team " + form.team_id,
                          {files.ratings, form.source_line, 1});
        }
    }
    ds.ratings_ = aggregate_ratings(ds.forms_);
    ds.scores_.assign(n_teams * kAspectCount, 0.0);
    std::vector<std::uint8_t> present(n_teams * kAspectCount, 0);
    for (const PeerRating& rating : ds.ratings_) {
        auto team = ds.find_team(rating.team_id);
        if (!team) continue;
        const std::size_t cell = static_cast<std::size_t>(rating.aspect) * n_teams + *team;
        ds.scores_[cell] = rating.score;
        present[cell] = 1;
    }
    for (std::size_t t = 0; t < n_teams; ++t) {
        for (Aspect aspect : kAspects) {
            if (!present[static_cast<std::size_t>(aspect) * n_teams + t]) {
                issues.report(ErrorCode::MissingAspect,
                              "team " + ds.teams_[t].team_id + " has no rating for aspect " +
                                  std::string(to_string(aspect)),
                              {files.ratings, 0, 0});
            }
        }
    }

    if (issues.count() > 0) {
        throw Error(ErrorCode::MalformedRow,
                    std::to_string(issues.count()) + " validation issue(s) found");
    }
    return ds;
}

namespace detail {

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open input file", {path, 0, 0});
    return in;
}

}  // namespace detail

// Reads and assembles the four input files. I/O failures always throw
// (ErrorCode::Io); content problems are collected when `collect` is given.
inline Dataset load_dataset(const InputFiles& files, std::vector<Issue>* collect = nullptr) {
    auto teams_in = detail::open_input(files.teams);
    auto categories_in = detail::open_input(files.categories);
    auto outputs_in = detail::open_input(files.outputs);
    auto ratings_in = detail::open_input(files.ratings);

    const std::size_t before = collect ? collect->size() : 0;
    DatasetParts parts;
    parts.teams = parse_teams(teams_in, files.teams, collect);
    parts.categories = parse_categories(categories_in, files.categories, collect);
    parts.outputs = parse_outputs(outputs_in, files.outputs, collect);
    parts.forms = parse_ratings(ratings_in, files.ratings, collect);
    if (collect && collect->size() > before) {
        // Assembly still runs to surface cross-file problems in the same pass.
        try {
            (void)assemble(std::move(parts), files, collect);
        } catch (const Error&) {
        }
        throw Error(ErrorCode::MalformedRow,
                    std::to_string(collect->size() - before) + " validation issue(s) found");
    }
    return assemble(std::move(parts), files, collect);
}

inline void write_teams(std::ostream& out, std::span<const Team> teams) {
    csv::write_row(out, {"team_id", "discipline_id", "fte_leading"});
    for (const Team& t : teams) {
        csv::write_row(out, {t.team_id, t.discipline_id, csv::format_exact(t.fte_leading)});
    }
}

inline void write_categories(std::ostream& out, std::span<const Category> categories) {
    csv::write_row(out, {"category_id", "kind", "label"});
    for (const Category& c : categories) {
        csv::write_row(out, {c.category_id, std::string(to_string(c.kind)), c.label});
    }
}

inline void write_outputs(std::ostream& out, std::span<const OutputRecord> outputs) {
    csv::write_row(out, {"team_id", "category_id", "count"});
    for (const OutputRecord& r : outputs) {
        csv::write_row(out, {r.team_id, r.category_id, csv::format_exact(r.count)});
    }
}

inline void write_ratings(std::ostream& out, std::span<const RatingForm> forms) {
    csv::write_row(out, {"team_id", "aspect_id", "score"});
    for (const RatingForm& f : forms) {
        csv::write_row(out, {f.team_id, std::string(to_string(f.aspect)), csv::format_exact(f.score)});
    }
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open output file", {path.string(), 0, 0});
    return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed", {path.string(), 0, 0});
}

}  // namespace detail

// Writes teams.csv, categories.csv, outputs.csv and ratings.csv into `dir`.
inline void write_dataset(const Dataset& ds, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto emit = [&](const char* name, auto&& writer) {
        const auto path = dir / name;
        auto out = detail::open_output(path);
        writer(out);
        detail::finish_output(out, path);
    };
    emit("teams.csv", [&](std::ostream& o) { write_teams(o, ds.teams()); });
    emit("categories.csv", [&](std::ostream& o) { write_categories(o, ds.categories()); });
    emit("outputs.csv", [&](std::ostream& o) { write_outputs(o, ds.outputs()); });
    emit("ratings.csv", [&](std::ostream& o) { write_ratings(o, ds.forms()); });
}

inline InputFiles input_files_in(const std::filesystem::path& dir) {
    return {(dir / "teams.csv").string(), (dir / "categories.csv").string(),
            (dir / "outputs.csv").string(), (dir / "ratings.csv").string()};
}

}  // namespace peerval
