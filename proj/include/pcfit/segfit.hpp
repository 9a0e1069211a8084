#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcfit/errors.hpp"
#include "pcfit/series.hpp"

namespace pcfit {

/// Inclusive year window.
struct YearWindow {
    int start = 0;
    int end = 0;
    [[nodiscard]] int length() const { return end - start + 1; }
    [[nodiscard]] bool contains(int year) const { return year >= start && year <= end; }
    friend bool operator==(const YearWindow&, const YearWindow&) = default;
};

enum class PredictorKind { labour_force_change, unemployment };

[[nodiscard]] inline std::string_view predictor_kind_name(PredictorKind k) {
    return k == PredictorKind::labour_force_change ? "labour_force_change" : "unemployment";
}

/**
 * @brief One predictor of the model with its admissible integer lag grid.
 *
 * Labour-force-change lags must be non-negative (the driver precedes the
 * response); unemployment lags may be negative. lag_lo == lag_hi pins the
 * lag instead of searching.
 */
struct PredictorSpec {
    std::string series_id;
    PredictorKind kind = PredictorKind::labour_force_change;
    int lag_lo = 0;
    int lag_hi = 0;

    [[nodiscard]] static PredictorSpec fixed(std::string id, PredictorKind k, int lag) {
        return PredictorSpec{std::move(id), k, lag, lag};
    }
};

/**
 * @brief Model specification: target, predictors with lag grids, fit window,
 * break year (fixed or searched) and optional excluded interval.
 *
 * With an excluded interval [g1, g2] the two segments are
 * [window.start, g1-1] and [g2+1, window.end]; excluded years enter no
 * error statistic. Without one, a break year b splits the window into
 * [window.start, b] and [b+1, window.end].
 */
struct ModelSpec {
    std::string target_id;
    std::vector<PredictorSpec> predictors;  // 1 or 2; two-predictor order: labour force, unemployment
    YearWindow fit_window;
    std::optional<int> break_year;          // fixed break
    std::optional<YearWindow> break_range;  // searched break (ignored when break_year or excluded set)
    std::optional<YearWindow> excluded;     // definitional-transition gap
    std::optional<double> pin_gamma;        // fix the unemployment slope (e.g. -1)
};

/**
 * @brief Estimated coefficients of one segment.
 *
 * For single-predictor models the slope lives in beta regardless of the
 * predictor kind; gamma is the unemployment slope of two-predictor models.
 * Standard errors come from the annual-rate OLS design evaluated at these
 * point estimates (see standard_errors).
 */
struct SegmentCoefficients {
    YearWindow window;
    double alpha = 0.0;
    double beta = 0.0;
    std::optional<double> gamma;
    double alpha_se = 0.0;
    double beta_se = 0.0;
    std::optional<double> gamma_se;
};

/// One grid-search candidate and its total cumulative SSE.
struct GridPoint {
    std::vector<int> lags;
    std::optional<int> break_year;
    double sse_cumulative = 0.0;
};

struct FitResult {
    ModelSpec spec;  ///< resolved: lags pinned, break filled in
    std::vector<SegmentCoefficients> segments;
    AnnualSeries residual_annual;  ///< observed minus predicted rate over the fit window
    double rmse_annual = 0.0;
    double rmse_cumulative = 0.0;
    double r2_annual = 0.0;
    double r2_cumulative = 0.0;
    double free_term_C = 0.0;  ///< free term of the integral solution, fixed to 0
    int base_year = 0;         ///< cumulative curves anchor at fit_window.start
    std::vector<GridPoint> grid;  ///< every evaluated (lags, break) candidate
};

namespace detail {

/// Constraint-eliminated design of one segment.
///
/// With Y(t) = anchor + sum of the observed rate over [start, t],
/// X_j(t) the window-cumulated lagged predictor and n_t = t - start + 1,
/// the model Yhat(t) = anchor + sum_j b_j X_j(t) + alpha n_t under the
/// endpoint constraint Yhat(end) = Y(end) reduces to ordinary least
/// squares on the detrended columns
///   ytil(t) = (Y(t) - anchor) - (n_t / N) S,
///   xtil_j(t) = X_j(t) - (n_t / N) X_j(end),
/// since alpha = (S - sum_j b_j X_j(end)) / N, where S is the total
/// observed sum over the window. Note Y(t) - Yhat(t) = ytil - sum b xtil.
struct SegmentDesign {
    int n = 0;
    double total_sum = 0.0;               // S
    std::vector<double> ytil;
    std::vector<std::vector<double>> xtil;
    std::vector<double> x_end;            // X_j(end)
    std::vector<double> x_scale;          // sum of X_j(t)^2, degeneracy scale
};

inline SegmentDesign build_segment_design(const AnnualSeries& obs_rate,
                                          std::span<const AnnualSeries> predictors,
                                          std::span<const int> lags, YearWindow window) {
    const std::size_t p = predictors.size();
    if (p < 1 || p > 2) throw BadSpec("fit_segment supports 1 or 2 predictors");
    if (lags.size() != p) throw BadSpec("one lag per predictor required");
    const int min_len = p == 2 ? 4 : 3;
    if (window.length() < min_len)
        throw WindowTooShort("segment [" + std::to_string(window.start) + ", " +
                             std::to_string(window.end) + "] shorter than " + std::to_string(min_len));
    if (!obs_rate.covers(window.start, window.end))
        throw YearOutOfRange("target series does not cover the segment window");
    for (std::size_t j = 0; j < p; ++j)
        if (!predictors[j].covers(window.start - lags[j], window.end - lags[j]))
            throw MissingPredictorYears("predictor '" + predictors[j].name() +
                                        "' does not cover the lag-shifted segment window");

    SegmentDesign d;
    d.n = window.length();
    const double N = d.n;
    std::vector<double> ycum(static_cast<std::size_t>(d.n));
    std::vector<std::vector<double>> xcum(p, std::vector<double>(static_cast<std::size_t>(d.n)));
    double acc = 0.0;
    for (int i = 0; i < d.n; ++i) {
        acc += obs_rate.at_year(window.start + i);
        ycum[static_cast<std::size_t>(i)] = acc;
    }
    d.total_sum = ycum.back();
    for (std::size_t j = 0; j < p; ++j) {
        double a = 0.0;
        for (int i = 0; i < d.n; ++i) {
            a += predictors[j].at_year(window.start + i - lags[j]);
            xcum[j][static_cast<std::size_t>(i)] = a;
        }
    }
    d.ytil.resize(static_cast<std::size_t>(d.n));
    d.xtil.assign(p, std::vector<double>(static_cast<std::size_t>(d.n)));
    d.x_end.resize(p);
    d.x_scale.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) d.x_end[j] = xcum[j].back();
    for (int i = 0; i < d.n; ++i) {
        const double frac = (i + 1) / N;
        d.ytil[static_cast<std::size_t>(i)] = ycum[static_cast<std::size_t>(i)] - frac * d.total_sum;
        for (std::size_t j = 0; j < p; ++j) {
            d.xtil[j][static_cast<std::size_t>(i)] =
                xcum[j][static_cast<std::size_t>(i)] - frac * d.x_end[j];
            d.x_scale[j] += xcum[j][static_cast<std::size_t>(i)] * xcum[j][static_cast<std::size_t>(i)];
        }
    }
    return d;
}

struct SegmentSolution {
    double alpha = 0.0;
    std::vector<double> slopes;  // one per predictor
    double sse_cumulative = 0.0;
};

inline SegmentSolution solve_segment(const SegmentDesign& d, std::optional<double> pin_second) {
    const std::size_t p = d.xtil.size();
    constexpr double kDegenerate = 1e-20;  // relative to the raw cumulative scale
    const auto degenerate = [&](std::size_t j, double sxx) {
        return d.x_scale[j] == 0.0 || sxx <= kDegenerate * d.x_scale[j];
    };
    SegmentSolution sol;
    sol.slopes.resize(p);
    if (p == 1) {
        double sxx = 0.0, sxy = 0.0;
        for (int i = 0; i < d.n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            sxx += d.xtil[0][k] * d.xtil[0][k];
            sxy += d.xtil[0][k] * d.ytil[k];
        }
        if (degenerate(0, sxx))
            throw DegeneratePredictor("predictor cumulative proportional to the time index");
        sol.slopes[0] = sxy / sxx;
    } else if (pin_second) {
        double sxx = 0.0, sxy = 0.0;
        for (int i = 0; i < d.n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            const double y_adj = d.ytil[k] - *pin_second * d.xtil[1][k];
            sxx += d.xtil[0][k] * d.xtil[0][k];
            sxy += d.xtil[0][k] * y_adj;
        }
        if (degenerate(0, sxx))
            throw DegeneratePredictor("predictor cumulative proportional to the time index");
        sol.slopes[0] = sxy / sxx;
        sol.slopes[1] = *pin_second;
    } else {
        double g00 = 0.0, g01 = 0.0, g11 = 0.0, c0 = 0.0, c1 = 0.0;
        for (int i = 0; i < d.n; ++i) {
            const auto k = static_cast<std::size_t>(i);
            g00 += d.xtil[0][k] * d.xtil[0][k];
            g01 += d.xtil[0][k] * d.xtil[1][k];
            g11 += d.xtil[1][k] * d.xtil[1][k];
            c0 += d.xtil[0][k] * d.ytil[k];
            c1 += d.xtil[1][k] * d.ytil[k];
        }
        if (degenerate(0, g00) || degenerate(1, g11))
            throw DegeneratePredictor("predictor cumulative proportional to the time index");
        const double det = g00 * g11 - g01 * g01;
        if (det <= 1e-12 * g00 * g11)
            throw CollinearPredictors("constrained two-predictor design is rank-deficient");
        sol.slopes[0] = (g11 * c0 - g01 * c1) / det;
        sol.slopes[1] = (g00 * c1 - g01 * c0) / det;
    }
    double slope_dot_xend = 0.0;
    for (std::size_t j = 0; j < p; ++j) slope_dot_xend += sol.slopes[j] * d.x_end[j];
    sol.alpha = (d.total_sum - slope_dot_xend) / d.n;
    double sse = 0.0;
    for (int i = 0; i < d.n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        double r = d.ytil[k];
        for (std::size_t j = 0; j < p; ++j) r -= sol.slopes[j] * d.xtil[j][k];
        sse += r * r;
    }
    sol.sse_cumulative = sse;
    return sol;
}

}  // namespace detail

/**
 * @brief Fit one segment by least squares on cumulative curves with the
 * segment-end equality constraint.
 *
 * Minimizes the sum over the window of (Y(t) - Yhat(t))^2 where
 * Yhat(t) = anchor_value + sum_j slope_j X_j(t) + alpha n_t, subject to
 * Yhat(end) = Y(end). The constraint eliminates alpha, leaving a one- or
 * two-dimensional unconstrained linear least-squares problem solved in
 * closed form. Standard errors are not filled in here; see standard_errors.
 */
[[nodiscard]] inline SegmentCoefficients fit_segment(const AnnualSeries& obs_rate,
                                                     std::span<const AnnualSeries> predictors,
                                                     std::span<const int> lags, YearWindow window,
                                                     double /*anchor_value*/ = 0.0,
                                                     std::optional<double> pin_second = std::nullopt) {
    const auto design = detail::build_segment_design(obs_rate, predictors, lags, window);
    const auto sol = detail::solve_segment(design, pin_second);
    SegmentCoefficients coefs;
    coefs.window = window;
    coefs.alpha = sol.alpha;
    coefs.beta = sol.slopes[0];
    if (sol.slopes.size() == 2) coefs.gamma = sol.slopes[1];
    return coefs;
}

/**
 * @brief Annual-OLS standard errors for a fitted segment.
 *
 * Classical homoskedastic formula on the annual-rate design
 * [1, x_1(t - lag_1), x_2(t - lag_2)] over the segment window, with the
 * residual variance taken at the constrained-fit point estimates:
 * s^2 = sum e(t)^2 / (n - p - 1), se_j = sqrt(s^2 [(X'X)^-1]_jj).
 */
[[nodiscard]] inline SegmentCoefficients standard_errors(const AnnualSeries& target,
                                                         std::span<const AnnualSeries> predictors,
                                                         std::span<const int> lags,
                                                         SegmentCoefficients seg,
                                                         bool gamma_is_free = true) {
    const std::size_t p = predictors.size();
    const int n = seg.window.length();
    const std::size_t k_free = 1 + (p == 2 && !gamma_is_free ? 1 : p);  // alpha + free slopes
    if (n < static_cast<int>(p) + 2)
        throw WindowTooShort("standard_errors needs at least p + 2 observations");
    Eigen::MatrixXd design(n, static_cast<Eigen::Index>(k_free));
    Eigen::VectorXd resid(n);
    for (int i = 0; i < n; ++i) {
        const int t = seg.window.start + i;
        design(i, 0) = 1.0;
        design(i, 1) = predictors[0].at_year(t - lags[0]);
        double fitted = seg.alpha + seg.beta * design(i, 1);
        if (p == 2) {
            const double x2 = predictors[1].at_year(t - lags[1]);
            if (gamma_is_free) design(i, 2) = x2;
            fitted += seg.gamma.value_or(0.0) * x2;
        }
        resid(i) = target.at_year(t) - fitted;
    }
    const int dof = n - 1 - static_cast<int>(p);
    const double s2 = resid.squaredNorm() / dof;
    const Eigen::MatrixXd xtx_inv =
        (design.transpose() * design)
            .ldlt()
            .solve(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k_free),
                                             static_cast<Eigen::Index>(k_free)));
    seg.alpha_se = std::sqrt(std::max(0.0, s2 * xtx_inv(0, 0)));
    seg.beta_se = std::sqrt(std::max(0.0, s2 * xtx_inv(1, 1)));
    if (p == 2) seg.gamma_se = gamma_is_free ? std::sqrt(std::max(0.0, s2 * xtx_inv(2, 2))) : 0.0;
    return seg;
}

namespace detail {

struct Segmentation {
    std::vector<YearWindow> segments;  // 1 or 2
    std::optional<int> break_year;
};

inline void validate_spec(const ModelSpec& spec, const AnnualSeries& target,
                          std::span<const AnnualSeries> predictors) {
    if (spec.predictors.empty() || spec.predictors.size() > 2)
        throw BadSpec("ModelSpec requires 1 or 2 predictors");
    if (predictors.size() != spec.predictors.size())
        throw BadSpec("predictor series count does not match ModelSpec");
    if (spec.fit_window.length() < 3) throw WindowTooShort("fit window shorter than 3 years");
    for (const auto& ps : spec.predictors) {
        if (ps.lag_lo > ps.lag_hi) throw BadSpec("predictor lag range is empty");
        if (ps.kind == PredictorKind::labour_force_change && (ps.lag_lo < 0 || ps.lag_hi > 5))
            throw BadSpec("labour-force-change lag must lie in [0, 5]");
        if (ps.kind == PredictorKind::unemployment && (ps.lag_lo < -5 || ps.lag_hi > 5))
            throw BadSpec("unemployment lag must lie in [-5, 5]");
    }
    if (spec.predictors.size() == 2 &&
        (spec.predictors[0].kind != PredictorKind::labour_force_change ||
         spec.predictors[1].kind != PredictorKind::unemployment))
        throw BadSpec("two-predictor models order predictors as (labour force, unemployment)");
    if (spec.pin_gamma && spec.predictors.size() != 2)
        throw BadSpec("pin_gamma requires a two-predictor model");
    if (!target.covers(spec.fit_window.start, spec.fit_window.end))
        throw YearOutOfRange("target series does not cover the fit window");
    for (std::size_t j = 0; j < predictors.size(); ++j) {
        const auto& ps = spec.predictors[j];
        if (!predictors[j].covers(spec.fit_window.start - ps.lag_hi, spec.fit_window.end - ps.lag_lo))
            throw MissingPredictorYears("predictor '" + ps.series_id +
                                        "' does not cover the window for the requested lag range");
    }
    if (spec.excluded) {
        const auto [g1, g2] = *spec.excluded;
        if (g1 > g2 || g1 <= spec.fit_window.start || g2 >= spec.fit_window.end)
            throw BadSpec("excluded interval must lie strictly inside the fit window");
        if (spec.break_year && (*spec.break_year < g1 - 1 || *spec.break_year > g2))
            throw BadSpec("break year must abut or lie inside the excluded interval");
    } else if (spec.break_year) {
        if (*spec.break_year <= spec.fit_window.start || *spec.break_year >= spec.fit_window.end)
            throw BadSpec("break year must lie strictly inside the fit window");
    }
}

/// Candidate segmentations in ascending break order; infeasible break years
/// (either segment shorter than the minimum) are dropped.
inline std::vector<Segmentation> enumerate_segmentations(const ModelSpec& spec, int min_len) {
    const auto [s, e] = spec.fit_window;
    std::vector<Segmentation> out;
    const auto two_piece_ok = [&](int seg1_end, int seg2_start) {
        return seg1_end - s + 1 >= min_len && e - seg2_start + 1 >= min_len;
    };
    if (spec.excluded) {
        const auto [g1, g2] = *spec.excluded;
        if (!two_piece_ok(g1 - 1, g2 + 1))
            throw WindowTooShort("segments around the excluded interval are too short");
        out.push_back({{{s, g1 - 1}, {g2 + 1, e}}, spec.break_year});
    } else if (spec.break_year) {
        const int b = *spec.break_year;
        if (!two_piece_ok(b, b + 1)) throw WindowTooShort("segments around the break are too short");
        out.push_back({{{s, b}, {b + 1, e}}, b});
    } else if (spec.break_range) {
        for (int b = spec.break_range->start; b <= spec.break_range->end; ++b) {
            if (b <= s || b >= e || !two_piece_ok(b, b + 1)) continue;
            out.push_back({{{s, b}, {b + 1, e}}, b});
        }
    } else {
        out.push_back({{{s, e}}, std::nullopt});
    }
    return out;
}

/// Lag tuples in ascending lexicographic order (ties in SSE then resolve
/// to the smaller lag, and within a lag tuple to the earlier break).
inline std::vector<std::vector<int>> enumerate_lag_tuples(const ModelSpec& spec) {
    std::vector<std::vector<int>> tuples{{}};
    for (const auto& ps : spec.predictors) {
        std::vector<std::vector<int>> next;
        for (const auto& partial : tuples)
            for (int lag = ps.lag_lo; lag <= ps.lag_hi; ++lag) {
                auto t = partial;
                t.push_back(lag);
                next.push_back(std::move(t));
            }
        tuples = std::move(next);
    }
    return tuples;
}

inline double rate_at(const std::vector<SegmentCoefficients>& segments,
                      std::span<const AnnualSeries> predictors, std::span<const int> lags, int year) {
    // Years in the gap between segments use the earlier segment's coefficients.
    const SegmentCoefficients* seg = &segments.front();
    if (segments.size() == 2 && year >= segments[1].window.start) seg = &segments[1];
    double r = seg->alpha + seg->beta * predictors[0].at_year(year - lags[0]);
    if (predictors.size() == 2) r += seg->gamma.value_or(0.0) * predictors[1].at_year(year - lags[1]);
    return r;
}

}  // namespace detail

/// Predicted annual rate of a fitted model at a given year.
[[nodiscard]] inline double model_rate(const FitResult& fit, std::span<const AnnualSeries> predictors,
                                       int year) {
    std::vector<int> lags;
    lags.reserve(fit.spec.predictors.size());
    for (const auto& ps : fit.spec.predictors) lags.push_back(ps.lag_lo);
    return detail::rate_at(fit.segments, predictors, lags, year);
}

/// True when the year falls between the two fitted segments (excluded gap).
[[nodiscard]] inline bool in_gap(const FitResult& fit, int year) {
    return fit.segments.size() == 2 && year > fit.segments[0].window.end &&
           year < fit.segments[1].window.start;
}

/**
 * @brief Exhaustive grid search over predictor lags and the break year.
 *
 * Each candidate fits segment 1 on [window.start, break] anchored at
 * cumulative 0 and segment 2 on [break+1, window.end] anchored at the
 * observed cumulative level at the break, so the two segment fits are
 * independent. The candidate minimizing the total cumulative SSE wins;
 * ties break toward the smaller lag, then the earlier break. Excluded
 * years contribute to no SSE, RMSE or R^2.
 */
[[nodiscard]] inline FitResult fit_model(const ModelSpec& spec, const AnnualSeries& target,
                                         std::span<const AnnualSeries> predictors) {
    detail::validate_spec(spec, target, predictors);
    const int min_len = spec.predictors.size() == 2 ? 4 : 3;
    const auto segmentations = detail::enumerate_segmentations(spec, min_len);
    const auto lag_tuples = detail::enumerate_lag_tuples(spec);
    if (segmentations.empty() || lag_tuples.empty()) throw EmptyGrid("no feasible (lag, break) candidate");

    const auto [ws, we] = spec.fit_window;
    struct Candidate {
        std::vector<int> lags;
        detail::Segmentation segmentation;
        std::vector<detail::SegmentSolution> solutions;
        double sse = 0.0;
    };
    std::optional<Candidate> best;
    std::vector<GridPoint> grid;
    grid.reserve(lag_tuples.size() * segmentations.size());
    for (const auto& lags : lag_tuples) {
        for (const auto& segmentation : segmentations) {
            Candidate cand{lags, segmentation, {}, 0.0};
            for (const auto& w : segmentation.segments) {
                const auto design = detail::build_segment_design(target, predictors, lags, w);
                auto sol = detail::solve_segment(design, spec.pin_gamma);
                cand.sse += sol.sse_cumulative;
                cand.solutions.push_back(std::move(sol));
            }
            grid.push_back({lags, segmentation.break_year, cand.sse});
            if (!best || cand.sse < best->sse) best = std::move(cand);
        }
    }

    FitResult fit;
    fit.spec = spec;
    fit.spec.break_range.reset();
    fit.spec.break_year = best->segmentation.break_year;
    for (std::size_t j = 0; j < spec.predictors.size(); ++j) {
        fit.spec.predictors[j].lag_lo = best->lags[j];
        fit.spec.predictors[j].lag_hi = best->lags[j];
    }
    fit.base_year = ws;
    fit.grid = std::move(grid);

    for (std::size_t si = 0; si < best->segmentation.segments.size(); ++si) {
        const auto& sol = best->solutions[si];
        SegmentCoefficients seg;
        seg.window = best->segmentation.segments[si];
        seg.alpha = sol.alpha;
        seg.beta = sol.slopes[0];
        if (sol.slopes.size() == 2) seg.gamma = sol.slopes[1];
        seg = standard_errors(target, predictors, best->lags, seg, !spec.pin_gamma.has_value());
        fit.segments.push_back(seg);
    }

    // Annual residuals over the whole window; gap years use segment 1.
    std::vector<double> resid(static_cast<std::size_t>(spec.fit_window.length()));
    for (int t = ws; t <= we; ++t)
        resid[static_cast<std::size_t>(t - ws)] =
            target.at_year(t) - detail::rate_at(fit.segments, predictors, best->lags, t);
    fit.residual_annual =
        AnnualSeries(target.name() + "_resid", Unit::fraction_per_year, ws, std::move(resid));

    // Error statistics over segment years only.
    double sse_a = 0.0, sst_a = 0.0, sse_c = 0.0, sst_c = 0.0, mean_y = 0.0, mean_cum = 0.0;
    int count = 0;
    std::vector<std::pair<int, double>> obs_cum;  // (year, cumulative) on segment years
    {
        double acc = 0.0;
        for (int t = ws; t <= we; ++t) {
            acc += target.at_year(t);
            if (!in_gap(fit, t)) {
                obs_cum.emplace_back(t, acc);
                mean_y += target.at_year(t);
                mean_cum += acc;
                ++count;
            }
        }
    }
    mean_y /= count;
    mean_cum /= count;
    std::size_t idx = 0;
    for (const auto& seg : fit.segments) {
        double pred_acc = (seg.window.start == ws) ? 0.0 : target.sum_over(ws, seg.window.start - 1);
        for (int t = seg.window.start; t <= seg.window.end; ++t, ++idx) {
            const double e_annual = fit.residual_annual.at_year(t);
            sse_a += e_annual * e_annual;
            sst_a += (target.at_year(t) - mean_y) * (target.at_year(t) - mean_y);
            pred_acc += detail::rate_at(fit.segments, predictors, best->lags, t);
            const double e_cum = obs_cum[idx].second - pred_acc;
            sse_c += e_cum * e_cum;
            sst_c += (obs_cum[idx].second - mean_cum) * (obs_cum[idx].second - mean_cum);
        }
    }
    fit.rmse_annual = std::sqrt(sse_a / count);
    fit.rmse_cumulative = std::sqrt(sse_c / count);
    fit.r2_annual = sst_a > 0.0 ? 1.0 - sse_a / sst_a : 1.0;
    fit.r2_cumulative = sst_c > 0.0 ? 1.0 - sse_c / sst_c : 1.0;
    return fit;
}

/**
 * @brief Two independent regime fits around a definitional-transition gap,
 * both predictors at lag 0 (unemployment follows the labour force with no
 * delay). The excluded years enter no error statistic.
 */
[[nodiscard]] inline FitResult fit_unemployment(const ModelSpec& spec, const AnnualSeries& target,
                                                std::span<const AnnualSeries> predictors) {
    if (!spec.excluded) throw BadSpec("fit_unemployment requires an excluded interval");
    for (const auto& ps : spec.predictors)
        if (ps.lag_lo != 0 || ps.lag_hi != 0)
            throw BadSpec("fit_unemployment fixes every lag at 0");
    return fit_model(spec, target, predictors);
}

/// Bivariate model: inflation on labour-force change and unemployment.
[[nodiscard]] inline FitResult fit_generalized(const ModelSpec& spec, const AnnualSeries& target,
                                               std::span<const AnnualSeries> predictors) {
    if (spec.predictors.size() != 2)
        throw BadSpec("fit_generalized requires exactly 2 predictors");
    return fit_model(spec, target, predictors);
}

/// Plot-ready observed/predicted curves of a fitted model.
struct CurvePoint {
    int year = 0;
    double observed_rate = 0.0;
    double predicted_rate = 0.0;
    double observed_cumulative = 0.0;
    double predicted_cumulative = 0.0;
    double residual = 0.0;  // observed_rate - predicted_rate
    bool in_gap = false;
};

/**
 * @brief Year-by-year curves over the fit window. Predicted cumulatives
 * accumulate predicted rates per segment from the segment anchor; gap
 * years extend segment 1, so the second segment restarts agreement at
 * its anchor.
 */
[[nodiscard]] inline std::vector<CurvePoint> fitted_curves(const FitResult& fit,
                                                           const AnnualSeries& target,
                                                           std::span<const AnnualSeries> predictors) {
    const auto [ws, we] = fit.spec.fit_window;
    std::vector<CurvePoint> out;
    out.reserve(static_cast<std::size_t>(fit.spec.fit_window.length()));
    double obs_acc = 0.0, pred_acc = 0.0;
    for (int t = ws; t <= we; ++t) {
        CurvePoint cp;
        cp.year = t;
        cp.observed_rate = target.at_year(t);
        cp.predicted_rate = model_rate(fit, predictors, t);
        cp.residual = cp.observed_rate - cp.predicted_rate;
        cp.in_gap = in_gap(fit, t);
        obs_acc += cp.observed_rate;
        if (fit.segments.size() == 2 && t == fit.segments[1].window.start)
            pred_acc = target.sum_over(ws, fit.segments[1].window.start - 1);  // re-anchor
        pred_acc += cp.predicted_rate;
        cp.observed_cumulative = obs_acc;
        cp.predicted_cumulative = pred_acc;
        out.push_back(cp);
    }
    return out;
}

}  // namespace pcfit
