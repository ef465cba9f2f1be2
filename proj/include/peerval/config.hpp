#pragma once

// Run configuration for the CLI.
//
// Config files are flat `key = value` lines. `#` starts a comment, blank
// lines are ignored, keys are case-sensitive, and a key may appear once.
// Recognised keys:
//
//   teams, outputs, ratings, categories   input CSV paths
//   data                                  directory holding all four CSVs
//   out                                   output directory
//   mode                                  per_discipline | none
//   alpha                                 significance level, (0, 1)
//   prevalence_threshold                  (0, 1]
//   general_validity_min_fraction         [0, 1]; omitted = all but one
//   bonferroni, compare                   true | false
//   reference_min_teams                   positive integer
//   formats                               comma list of json, markdown, csv
//   threads                               worker threads for the grid
//   scatter                               comma list of CATEGORY:aspect
//
// Relative input paths in a config file resolve against the file's directory.

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "peerval/analysis.hpp"
#include "peerval/csv.hpp"
#include "peerval/error.hpp"

namespace peerval {

struct RunConfig {
    InputFiles inputs;
    std::string out_dir = "report";
    AnalysisOptions analysis;
    ReportFormats formats;
    std::optional<std::string> config_file;

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["config_file"] = config_file ? nlohmann::ordered_json(*config_file) : nlohmann::ordered_json(nullptr);
        j["teams"] = inputs.teams;
        j["outputs"] = inputs.outputs;
        j["ratings"] = inputs.ratings;
        j["categories"] = inputs.categories;
        j["out"] = out_dir;
        const auto options = peerval::to_json(analysis);
        for (const auto& [key, value] : options.items()) j[key] = value;
        std::vector<std::string> formats_list;
        if (formats.json) formats_list.emplace_back("json");
        if (formats.markdown) formats_list.emplace_back("markdown");
        if (formats.csv_bundle) formats_list.emplace_back("csv");
        j["formats"] = formats_list;
        return j;
    }
};

using KeyValues = std::map<std::string, std::pair<std::string, std::size_t>>;  // key -> (value, line)

inline KeyValues parse_key_values(std::istream& in, const std::string& file) {
    KeyValues kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto text = csv::trim(line);
        if (text.empty() || text == "\r") continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::InvalidConfig, "expected 'key = value'", {file, line_no, 0});
        }
        std::string key(csv::trim(text.substr(0, eq)));
        std::string value(csv::trim(text.substr(eq + 1)));
        if (!value.empty() && value.back() == '\r') value.pop_back();
        if (key.empty()) throw Error(ErrorCode::InvalidConfig, "empty key", {file, line_no, 1});
        if (!kv.emplace(key, std::make_pair(value, line_no)).second) {
            throw Error(ErrorCode::InvalidConfig, "key '" + key + "' given twice", {file, line_no, 1});
        }
    }
    return kv;
}

namespace detail {

inline bool parse_bool_value(const std::string& text, const SourceLocation& where) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw Error(ErrorCode::InvalidConfig, "expected true or false, got '" + text + "'", where);
}

inline double parse_number_value(const std::string& text, const SourceLocation& where) {
    auto v = csv::parse_double(text);
    if (!v) throw Error(ErrorCode::InvalidConfig, "expected a number, got '" + text + "'", where);
    return *v;
}

inline std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto t = csv::trim(item);
        if (!t.empty()) items.emplace_back(t);
    }
    return items;
}

}  // namespace detail

inline ValidPair parse_pair_spec(const std::string& text) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) {
        throw Error(ErrorCode::InvalidConfig, "pair '" + text + "' must be CATEGORY:aspect");
    }
    auto aspect = parse_aspect(text.substr(colon + 1));
    if (!aspect) throw Error(ErrorCode::InvalidConfig, "pair '" + text + "' names an unknown aspect");
    return {text.substr(0, colon), *aspect};
}

inline ReportFormats parse_formats(const std::string& text) {
    ReportFormats formats{false, false, false};
    for (const std::string& f : detail::split_list(text)) {
        if (f == "json") formats.json = true;
        else if (f == "markdown" || f == "md") formats.markdown = true;
        else if (f == "csv" || f == "csv_bundle") formats.csv_bundle = true;
        else throw Error(ErrorCode::InvalidConfig, "unknown report format '" + f + "'");
    }
    return formats;
}

// Applies one setting. `base` resolves relative paths (empty = as given).
inline void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                          const SourceLocation& where, const std::filesystem::path& base = {}) {
    auto path = [&](const std::string& v) {
        std::filesystem::path p(v);
        return (p.is_relative() && !base.empty() ? base / p : p).string();
    };
    if (key == "teams") config.inputs.teams = path(value);
    else if (key == "outputs") config.inputs.outputs = path(value);
    else if (key == "ratings") config.inputs.ratings = path(value);
    else if (key == "categories") config.inputs.categories = path(value);
    else if (key == "data") config.inputs = input_files_in(path(value));
    else if (key == "out") config.out_dir = path(value);
    else if (key == "mode") {
        auto mode = parse_normalize_mode(value);
        if (!mode) throw Error(ErrorCode::InvalidConfig, "mode must be per_discipline or none", where);
        config.analysis.mode = *mode;
    } else if (key == "alpha") config.analysis.selection.alpha = detail::parse_number_value(value, where);
    else if (key == "prevalence_threshold") {
        config.analysis.selection.prevalence_threshold = detail::parse_number_value(value, where);
    } else if (key == "general_validity_min_fraction") {
        config.analysis.selection.general_validity_min_fraction = detail::parse_number_value(value, where);
    } else if (key == "bonferroni") config.analysis.selection.bonferroni = detail::parse_bool_value(value, where);
    else if (key == "compare") config.analysis.compare = detail::parse_bool_value(value, where);
    else if (key == "reference_min_teams") {
        const double n = detail::parse_number_value(value, where);
        if (n < 1 || n != std::floor(n)) {
            throw Error(ErrorCode::InvalidConfig, "reference_min_teams must be a positive integer", where);
        }
        config.analysis.reference_min_teams = static_cast<std::size_t>(n);
    } else if (key == "threads") {
        const double n = detail::parse_number_value(value, where);
        if (n < 1 || n != std::floor(n)) {
            throw Error(ErrorCode::InvalidConfig, "threads must be a positive integer", where);
        }
        config.analysis.threads = static_cast<unsigned>(n);
    } else if (key == "formats") config.formats = parse_formats(value);
    else if (key == "scatter") {
        config.analysis.scatter_pairs.clear();
        for (const std::string& p : detail::split_list(value)) {
            config.analysis.scatter_pairs.push_back(parse_pair_spec(p));
        }
    } else {
        throw Error(ErrorCode::InvalidConfig, "unknown configuration key '" + key + "'", where);
    }
}

inline void apply_config_file(RunConfig& config, const std::string& file) {
    std::ifstream in(file);
    if (!in) throw Error(ErrorCode::Io, "cannot open config file", {file, 0, 0});
    const KeyValues kv = parse_key_values(in, file);
    const auto base = std::filesystem::path(file).parent_path();
    // `data` first so that explicit per-file keys refine it.
    if (auto it = kv.find("data"); it != kv.end()) {
        apply_setting(config, it->first, it->second.first, {file, it->second.second, 0}, base);
    }
    for (const auto& [key, entry] : kv) {
        if (key == "data") continue;
        apply_setting(config, key, entry.first, {file, entry.second, 0}, base);
    }
    config.config_file = file;
}

}  // namespace peerval
