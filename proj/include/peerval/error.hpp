#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace peerval {

enum class ErrorCode {
    MalformedRow,
    UnknownColumn,
    NonNumeric,
    DuplicateTeam,
    DuplicateCategory,
    NonpositiveFte,
    NegativeCount,
    DuplicatePair,
    UnknownAspect,
    UnknownKind,
    DanglingTeam,
    DanglingCategory,
    MissingAspect,
    DisciplineTooSmall,
    UnknownCategory,
    UnknownDiscipline,
    LengthMismatch,
    ConstantInput,
    PerfectCorrelation,
    NumericFailure,
    InvalidConfig,
    Io,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NonNumeric: return "NonNumeric";
    case ErrorCode::DuplicateTeam: return "DuplicateTeam";
    case ErrorCode::DuplicateCategory: return "DuplicateCategory";
    case ErrorCode::NonpositiveFte: return "NonpositiveFte";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::UnknownAspect: return "UnknownAspect";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::DanglingTeam: return "DanglingTeam";
    case ErrorCode::DanglingCategory: return "DanglingCategory";
    case ErrorCode::MissingAspect: return "MissingAspect";
    case ErrorCode::DisciplineTooSmall: return "DisciplineTooSmall";
    case ErrorCode::UnknownCategory: return "UnknownCategory";
    case ErrorCode::UnknownDiscipline: return "UnknownDiscipline";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::PerfectCorrelation: return "PerfectCorrelation";
    case ErrorCode::NumericFailure: return "NumericFailure";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

// Position of a problem inside an input file. line and column are 1-based;
// 0 means "not applicable" (e.g. a whole-file or cross-file problem).
struct SourceLocation {
    std::string file;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct Issue {
    ErrorCode code;
    SourceLocation where;
    std::string reason;

    std::string describe() const {
        std::string out;
        if (!where.file.empty()) {
            out += where.file;
            if (where.line > 0) {
                out += ':' + std::to_string(where.line);
                if (where.column > 0) out += ':' + std::to_string(where.column);
            }
            out += ": ";
        }
        out += to_string(code);
        out += ": ";
        out += reason;
        return out;
    }
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string reason, SourceLocation where = {})
        : std::runtime_error(Issue{code, where, reason}.describe()),
          issue_{code, std::move(where), std::move(reason)} {}

    explicit Error(Issue issue)
        : std::runtime_error(issue.describe()), issue_(std::move(issue)) {}

    ErrorCode code() const noexcept { return issue_.code; }
    const Issue& issue() const noexcept { return issue_; }

private:
    Issue issue_;
};

// Either throws on the first issue or collects every issue, depending on
// whether a sink vector was supplied. Parsers and assembly use it so that
// `validate` can list all problems in one pass.
class IssueReporter {
public:
    IssueReporter() = default;
    explicit IssueReporter(std::vector<Issue>* sink) : sink_(sink) {}

    void report(ErrorCode code, std::string reason, SourceLocation where = {}) {
        Issue issue{code, std::move(where), std::move(reason)};
        if (sink_ == nullptr) throw Error(std::move(issue));
        sink_->push_back(std::move(issue));
        ++count_;
    }

    bool collecting() const noexcept { return sink_ != nullptr; }
    std::size_t count() const noexcept { return count_; }

private:
    std::vector<Issue>* sink_ = nullptr;
    std::size_t count_ = 0;
};

// Stable process exit codes for the CLI.
enum class ExitCode : int { Ok = 0, Validation = 1, Io = 2, Numeric = 3 };

inline ExitCode exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::Io: return ExitCode::Io;
    case ErrorCode::NumericFailure: return ExitCode::Numeric;
    default: return ExitCode::Validation;
    }
}

}  // namespace peerval
