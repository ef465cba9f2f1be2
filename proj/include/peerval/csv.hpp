#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "peerval/error.hpp"

namespace peerval::csv {

struct Row {
    std::size_t line = 0;  // 1-based physical line where the record starts
    std::vector<std::string> fields;
};

// Minimal RFC 4180 reader: comma separated, optional double-quoted fields
// with "" escapes, CRLF or LF line endings. Blank lines are skipped.
class Reader {
public:
    Reader(std::istream& in, std::string file) : in_(in), file_(std::move(file)) {}

    const std::string& file() const noexcept { return file_; }

    // Returns false at end of input. Throws MalformedRow on an unterminated quote.
    bool next(Row& row) {
        row.fields.clear();
        std::string line;
        while (true) {
            if (!std::getline(in_, line)) return false;
            ++line_no_;
            strip_cr(line);
            if (line_no_ == 1) strip_bom(line);
            if (!line.empty()) break;
        }
        row.line = line_no_;

        std::string field;
        bool quoted = false;
        bool in_quotes = false;
        std::size_t i = 0;
        while (true) {
            if (i == line.size()) {
                if (in_quotes) {
                    // quoted field spans a newline
                    std::string more;
                    if (!std::getline(in_, more)) {
                        throw Error(ErrorCode::MalformedRow, "unterminated quoted field",
                                    {file_, row.line, row.fields.size() + 1});
                    }
                    ++line_no_;
                    strip_cr(more);
                    field += '\n';
                    line = std::move(more);
                    i = 0;
                    continue;
                }
                row.fields.push_back(std::move(field));
                return true;
            }
            const char c = line[i];
            if (in_quotes) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field += '"';
                        ++i;
                    } else {
                        in_quotes = false;
                    }
                } else {
                    field += c;
                }
            } else if (c == '"' && field.empty() && !quoted) {
                in_quotes = true;
                quoted = true;
            } else if (c == ',') {
                row.fields.push_back(std::move(field));
                field.clear();
                quoted = false;
            } else {
                field += c;
            }
            ++i;
        }
    }

private:
    static void strip_cr(std::string& s) {
        if (!s.empty() && s.back() == '\r') s.pop_back();
    }
    static void strip_bom(std::string& s) {
        if (s.size() >= 3 && s.compare(0, 3, "\xEF\xBB\xBF") == 0) s.erase(0, 3);
    }

    std::istream& in_;
    std::string file_;
    std::size_t line_no_ = 0;
};

// Reads the header row and checks it names exactly `expected`, in order.
// Reports UnknownColumn with the offending column position otherwise.
template <std::size_t N>
bool expect_header(Reader& reader, const std::array<std::string_view, N>& expected,
                   IssueReporter& issues) {
    Row row;
    if (!reader.next(row)) {
        issues.report(ErrorCode::MalformedRow, "missing header row", {reader.file(), 1, 0});
        return false;
    }
    for (std::size_t i = 0; i < std::max(N, row.fields.size()); ++i) {
        if (i >= N) {
            issues.report(ErrorCode::UnknownColumn, "unexpected column '" + row.fields[i] + "'",
                          {reader.file(), row.line, i + 1});
            return false;
        }
        if (i >= row.fields.size()) {
            issues.report(ErrorCode::MalformedRow,
                          "header is missing column '" + std::string(expected[i]) + "'",
                          {reader.file(), row.line, i + 1});
            return false;
        }
        if (row.fields[i] != expected[i]) {
            issues.report(ErrorCode::UnknownColumn,
                          "expected column '" + std::string(expected[i]) + "', found '" +
                              row.fields[i] + "'",
                          {reader.file(), row.line, i + 1});
            return false;
        }
    }
    return true;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

// Strict decimal parse ('.' separator, no trailing garbage, finite).
inline std::optional<double> parse_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

// Shortest decimal string that parses back to exactly `value`.
inline std::string format_exact(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

// Rounds to 6 significant digits, the precision used for every reported value.
inline double round6(double value) {
    if (value == 0.0) return 0.0;
    if (!std::isfinite(value)) return value;
    std::array<char, 64> buf{};
    std::snprintf(buf.data(), buf.size(), "%.6g", value);
    return std::strtod(buf.data(), nullptr);
}

inline std::string format6(double value) {
    if (std::isnan(value)) return "";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return format_exact(round6(value));
}

inline std::string quote(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out << ',';
        out << quote(fields[i]);
    }
    out << '\n';
}

}  // namespace peerval::csv
