#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <numeric>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "peerval/dataset.hpp"

namespace peerval {

// Column-major dense matrix; columns are contiguous so they can be handed
// out as spans.
class ColumnMatrix {
public:
    ColumnMatrix() = default;
    ColumnMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& at(std::size_t row, std::size_t col) { return data_[col * rows_ + row]; }
    double at(std::size_t row, std::size_t col) const { return data_[col * rows_ + row]; }

    std::span<double> col(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
    std::span<const double> col(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

    friend bool operator==(const ColumnMatrix&, const ColumnMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// Team x category matrix of count / fte_leading.
using RateMatrix = ColumnMatrix;

inline RateMatrix per_fte(const Dataset& ds) {
    RateMatrix rates(ds.team_count(), ds.category_count());
    for (std::size_t c = 0; c < ds.category_count(); ++c) {
        for (std::size_t t = 0; t < ds.team_count(); ++t) {
            rates.at(t, c) = ds.count(t, c) / ds.teams()[t].fte_leading;
        }
    }
    return rates;
}

inline bool is_constant(std::span<const double> values) {
    if (values.empty()) return true;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    return *lo == *hi;
}

inline double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

// Sample (n - 1) standard deviation.
inline double sample_sd(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double mean = mean_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

// z-scores one group in place. A group whose values are all identical (or
// that has fewer than two members) is set to zero and reported degenerate.
inline bool zscore_group(std::span<double> values) {
    if (values.size() < 2 || is_constant(values)) {
        std::fill(values.begin(), values.end(), 0.0);
        return true;
    }
    const double mean = mean_of(values);
    const double sd = sample_sd(values);
    for (double& v : values) v = (v - mean) / sd;
    return false;
}

struct ZScoreResult {
    std::vector<double> z;
    std::vector<std::string> degenerate_groups;  // sorted group labels
};

// Per-group z-scoring of `values`, where labels[i] names the group of element i.
inline ZScoreResult discipline_zscore(std::span<const double> values,
                                      std::span<const std::string> labels) {
    if (values.size() != labels.size()) {
        throw Error(ErrorCode::LengthMismatch, "values and group labels differ in length");
    }
    std::map<std::string, std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);

    ZScoreResult result;
    result.z.assign(values.size(), 0.0);
    std::vector<double> group;
    for (const auto& [label, indices] : members) {
        group.clear();
        for (std::size_t i : indices) group.push_back(values[i]);
        if (zscore_group(group)) result.degenerate_groups.push_back(label);
        for (std::size_t k = 0; k < indices.size(); ++k) result.z[indices[k]] = group[k];
    }
    return result;
}

enum class NormalizeMode { PerDiscipline, None };

inline std::string_view to_string(NormalizeMode mode) {
    return mode == NormalizeMode::PerDiscipline ? "per_discipline" : "none";
}

inline std::optional<NormalizeMode> parse_normalize_mode(std::string_view text) {
    if (text == "per_discipline") return NormalizeMode::PerDiscipline;
    if (text == "none") return NormalizeMode::None;
    return std::nullopt;
}

struct DegenerateColumn {
    std::string discipline_id;
    std::string column_id;  // category id or aspect id
    bool is_measure = true;

    friend bool operator==(const DegenerateColumn&, const DegenerateColumn&) = default;
};

// Analysis-ready matrices. Rows follow the Dataset's team order.
class NormalizedDataset {
public:
    NormalizeMode mode() const noexcept { return mode_; }
    const ColumnMatrix& measures() const noexcept { return measures_; }
    const ColumnMatrix& ratings() const noexcept { return ratings_; }
    const std::vector<DisciplineGroup>& disciplines() const noexcept { return disciplines_; }
    const std::vector<DegenerateColumn>& degenerate_columns() const noexcept {
        return degenerate_list_;
    }

    bool measure_degenerate(std::size_t discipline, std::size_t category) const {
        return measure_flags_[discipline * measures_.cols() + category] != 0;
    }
    bool rating_degenerate(std::size_t discipline, Aspect aspect) const {
        return rating_flags_[discipline * kAspectCount + static_cast<std::size_t>(aspect)] != 0;
    }

    std::span<const double> measure_column(std::size_t category) const {
        return measures_.col(category);
    }
    std::span<const double> rating_column(Aspect aspect) const {
        return ratings_.col(static_cast<std::size_t>(aspect));
    }

    friend NormalizedDataset normalize_dataset(const Dataset& ds, NormalizeMode mode);

private:
    NormalizeMode mode_ = NormalizeMode::PerDiscipline;
    ColumnMatrix measures_;
    ColumnMatrix ratings_;
    std::vector<DisciplineGroup> disciplines_;
    std::vector<std::uint8_t> measure_flags_;
    std::vector<std::uint8_t> rating_flags_;
    std::vector<DegenerateColumn> degenerate_list_;
};

// Size normalization (per FTE) always; discipline z-scoring of measures and
// ratings in PerDiscipline mode. In None mode values pass through raw but
// zero-variance (discipline, column) pairs are still flagged.
inline NormalizedDataset normalize_dataset(const Dataset& ds, NormalizeMode mode) {
    NormalizedDataset out;
    out.mode_ = mode;
    out.disciplines_ = ds.disciplines();
    out.measures_ = per_fte(ds);
    out.ratings_ = ColumnMatrix(ds.team_count(), kAspectCount);
    for (Aspect aspect : kAspects) {
        auto src = ds.scores(aspect);
        std::copy(src.begin(), src.end(), out.ratings_.col(static_cast<std::size_t>(aspect)).begin());
    }

    const std::size_t n_disc = ds.disciplines().size();
    out.measure_flags_.assign(n_disc * ds.category_count(), 0);
    out.rating_flags_.assign(n_disc * kAspectCount, 0);

    auto process = [&](std::span<double> group) {
        if (mode == NormalizeMode::PerDiscipline) return zscore_group(group);
        return group.size() < 2 || is_constant(group);
    };

    for (std::size_t d = 0; d < n_disc; ++d) {
        const DisciplineGroup& g = ds.disciplines()[d];
        for (std::size_t c = 0; c < ds.category_count(); ++c) {
            if (process(out.measures_.col(c).subspan(g.begin, g.size()))) {
                out.measure_flags_[d * ds.category_count() + c] = 1;
                out.degenerate_list_.push_back({g.discipline_id, ds.categories()[c].category_id, true});
            }
        }
        for (Aspect aspect : kAspects) {
            const auto a = static_cast<std::size_t>(aspect);
            if (process(out.ratings_.col(a).subspan(g.begin, g.size()))) {
                out.rating_flags_[d * kAspectCount + a] = 1;
                out.degenerate_list_.push_back({g.discipline_id, std::string(to_string(aspect)), false});
            }
        }
    }
    return out;
}

// Debug dump: normalized_measures.csv, normalized_ratings.csv, degenerate.csv.
inline void write_normalized(const NormalizedDataset& norm, const Dataset& ds,
                             const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    {
        const auto path = dir / "normalized_measures.csv";
        auto out = detail::open_output(path);
        std::vector<std::string> header{"team_id"};
        for (const Category& c : ds.categories()) header.push_back(c.category_id);
        csv::write_row(out, header);
        for (std::size_t t = 0; t < ds.team_count(); ++t) {
            std::vector<std::string> row{ds.teams()[t].team_id};
            for (std::size_t c = 0; c < ds.category_count(); ++c) {
                row.push_back(csv::format_exact(norm.measures().at(t, c)));
            }
            csv::write_row(out, row);
        }
        detail::finish_output(out, path);
    }
    {
        const auto path = dir / "normalized_ratings.csv";
        auto out = detail::open_output(path);
        std::vector<std::string> header{"team_id"};
        for (auto id : kAspectIds) header.emplace_back(id);
        csv::write_row(out, header);
        for (std::size_t t = 0; t < ds.team_count(); ++t) {
            std::vector<std::string> row{ds.teams()[t].team_id};
            for (std::size_t a = 0; a < kAspectCount; ++a) {
                row.push_back(csv::format_exact(norm.ratings().at(t, a)));
            }
            csv::write_row(out, row);
        }
        detail::finish_output(out, path);
    }
    {
        const auto path = dir / "degenerate.csv";
        auto out = detail::open_output(path);
        csv::write_row(out, {"discipline_id", "column_id"});
        for (const DegenerateColumn& d : norm.degenerate_columns()) {
            csv::write_row(out, {d.discipline_id, d.column_id});
        }
        detail::finish_output(out, path);
    }
}

}  // namespace peerval
