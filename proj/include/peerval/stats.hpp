#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "peerval/dataset.hpp"
#include "peerval/error.hpp"
#include "peerval/normalize.hpp"

namespace peerval {

// Product-moment correlation, two-pass (centered) form, clamped to [-1, 1].
inline double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw Error(ErrorCode::LengthMismatch, "pearson: vectors differ in length (" +
                                                   std::to_string(x.size()) + " vs " +
                                                   std::to_string(y.size()) + ")");
    }
    if (x.size() < 3) {
        throw Error(ErrorCode::LengthMismatch, "pearson: at least 3 observations are required");
    }
    if (is_constant(x) || is_constant(y)) {
        throw Error(ErrorCode::ConstantInput, "pearson: constant input vector");
    }
    const double mx = mean_of(x);
    const double my = mean_of(y);
    double sxx = 0.0;
    double syy = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double t_statistic(double r, long n) {
    if (n < 3) throw Error(ErrorCode::LengthMismatch, "t_statistic: n must be at least 3");
    if (std::abs(r) >= 1.0) {
        throw Error(ErrorCode::PerfectCorrelation, "t_statistic: |r| = 1 has no finite t");
    }
    return r * std::sqrt(static_cast<double>(n - 2)) / std::sqrt(1.0 - r * r);
}

namespace detail {

inline constexpr int kBetaMaxIterations = 300;
inline constexpr double kBetaEpsilon = 1e-10;
inline constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (modified Lentz). Converges quickly for
// x < (a + 1) / (a + b + 2).
inline double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kBetaEpsilon) return h;
    }
    throw Error(ErrorCode::NumericFailure,
                "incomplete beta continued fraction did not converge in " +
                    std::to_string(kBetaMaxIterations) + " iterations");
}

// I_x(a, b) given both x and y = 1 - x, so callers can pass a complement
// that was computed without cancellation.
inline double regularized_beta(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log(y);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::NumericFailure, "regularized_incomplete_beta: argument out of domain");
    }
    return detail::regularized_beta(a, b, x, 1.0 - x);
}

// Upper tail P(T >= t) of Student's t with `df` degrees of freedom.
inline double p_one_sided(double t, long df) {
    if (df < 1) throw Error(ErrorCode::NumericFailure, "p_one_sided: df must be at least 1");
    if (std::isnan(t)) throw Error(ErrorCode::NumericFailure, "p_one_sided: t is NaN");
    if (t == std::numeric_limits<double>::infinity()) return 0.0;
    if (t == -std::numeric_limits<double>::infinity()) return 1.0;
    const double nu = static_cast<double>(df);
    const double t2 = t * t;
    // P(|T| >= |t|) = I_{nu / (nu + t^2)}(nu / 2, 1 / 2)
    const double x = nu / (nu + t2);
    const double y = t2 / (nu + t2);
    const double half_tail = 0.5 * detail::regularized_beta(0.5 * nu, 0.5, x, y);
    return t >= 0.0 ? half_tail : 1.0 - half_tail;
}

// Analysis scope: one discipline or the pooled population.
struct Scope {
    std::optional<std::string> discipline;  // nullopt = pooled

    static Scope pooled() { return {}; }
    static Scope of(std::string discipline_id) { return {std::move(discipline_id)}; }

    bool is_pooled() const noexcept { return !discipline.has_value(); }
    std::string label() const { return discipline ? *discipline : std::string("pooled"); }

    friend bool operator==(const Scope&, const Scope&) = default;
};

// Disciplines in id order, then pooled.
inline bool scope_less(const Scope& a, const Scope& b) {
    if (a.is_pooled() != b.is_pooled()) return b.is_pooled();
    if (a.is_pooled()) return false;
    return *a.discipline < *b.discipline;
}

struct CorrelationResult {
    std::string category_id;
    Aspect aspect = Aspect::Overall;
    Scope scope;
    long n = 0;
    double r = std::numeric_limits<double>::quiet_NaN();
    double t = std::numeric_limits<double>::quiet_NaN();
    double p_one_sided = std::numeric_limits<double>::quiet_NaN();
    bool degenerate = false;
    bool perfect = false;  // |r| = 1; t is +/-inf and p is 0 or 1

    // P(T <= t): the one-sided p-value for a negative correlation.
    double p_lower() const { return 1.0 - p_one_sided; }
};

// Correlates one category with one aspect over a scope. Discipline scopes use
// only that discipline's rows; the pooled scope uses every row of the
// (already per-discipline normalized) matrices.
inline CorrelationResult correlate(const NormalizedDataset& norm, const Dataset& ds,
                                   std::string_view category_id, Aspect aspect,
                                   const Scope& scope) {
    const std::size_t category = ds.require_category(category_id);
    CorrelationResult result;
    result.category_id = std::string(category_id);
    result.aspect = aspect;
    result.scope = scope;

    auto x = norm.measure_column(category);
    auto y = norm.rating_column(aspect);
    if (!scope.is_pooled()) {
        const std::size_t d = ds.require_discipline(*scope.discipline);
        const DisciplineGroup& g = norm.disciplines()[d];
        x = x.subspan(g.begin, g.size());
        y = y.subspan(g.begin, g.size());
        if (norm.measure_degenerate(d, category) || norm.rating_degenerate(d, aspect)) {
            result.n = static_cast<long>(g.size());
            result.degenerate = true;
            return result;
        }
    }
    result.n = static_cast<long>(x.size());
    if (x.size() < 3 || is_constant(x) || is_constant(y)) {
        result.degenerate = true;
        return result;
    }

    try {
        result.r = pearson(x, y);
        if (std::abs(result.r) >= 1.0) {
            result.perfect = true;
            result.t = std::copysign(std::numeric_limits<double>::infinity(), result.r);
            result.p_one_sided = result.r > 0.0 ? 0.0 : 1.0;
            return result;
        }
        result.t = t_statistic(result.r, result.n);
        result.p_one_sided = p_one_sided(result.t, result.n - 2);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NumericFailure) {
            throw Error(ErrorCode::NumericFailure,
                        e.issue().reason + " (category " + result.category_id + ", aspect " +
                            std::string(to_string(aspect)) + ", scope " + scope.label() + ")");
        }
        throw;
    }
    return result;
}

inline std::vector<Scope> all_scopes(const Dataset& ds) {
    std::vector<Scope> scopes;
    for (const DisciplineGroup& g : ds.disciplines()) scopes.push_back(Scope::of(g.discipline_id));
    scopes.push_back(Scope::pooled());
    return scopes;
}

// Correlations for one scope, ordered by (category id, aspect).
using CorrelationGrid = std::vector<CorrelationResult>;

// Full (scope x category x aspect) grid. Each cell is computed into its own
// preallocated slot, so the result is identical for any thread count.
inline std::vector<CorrelationGrid> correlation_grids(const NormalizedDataset& norm,
                                                      const Dataset& ds,
                                                      const std::vector<Scope>& scopes,
                                                      unsigned threads = 1) {
    const std::size_t per_scope = ds.category_count() * kAspectCount;
    const std::size_t total = scopes.size() * per_scope;
    std::vector<CorrelationGrid> grids(scopes.size(), CorrelationGrid(per_scope));

    auto compute = [&](std::size_t cell) {
        const std::size_t s = cell / per_scope;
        const std::size_t within = cell % per_scope;
        const std::size_t c = within / kAspectCount;
        const Aspect aspect = kAspects[within % kAspectCount];
        grids[s][within] = correlate(norm, ds, ds.categories()[c].category_id, aspect, scopes[s]);
    };

    threads = std::max(1u, threads);
    if (threads == 1 || total < 2) {
        for (std::size_t cell = 0; cell < total; ++cell) compute(cell);
        return grids;
    }

    std::vector<std::exception_ptr> failures(threads);
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
            try {
                for (std::size_t cell = w; cell < total; cell += threads) compute(cell);
            } catch (...) {
                failures[w] = std::current_exception();
            }
        });
    }
    for (auto& worker : workers) worker.join();
    for (auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return grids;
}

}  // namespace peerval
