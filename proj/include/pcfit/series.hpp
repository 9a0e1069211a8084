#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcfit/errors.hpp"

namespace pcfit {

/// Measurement unit of an annual series.
enum class Unit {
    fraction_per_year,  ///< dimensionless annual rate (e.g. 0.02 = 2%/yr)
    level,              ///< raw level (price index, labour force count, ...)
    percent             ///< annual rate in percent; normalized to fraction at ingestion
};

[[nodiscard]] inline std::string_view unit_name(Unit u) {
    switch (u) {
        case Unit::fraction_per_year: return "fraction-per-year";
        case Unit::level: return "level";
        case Unit::percent: return "percent";
    }
    return "?";
}

[[nodiscard]] inline Unit unit_from_name(std::string_view s) {
    if (s == "fraction-per-year") return Unit::fraction_per_year;
    if (s == "level") return Unit::level;
    if (s == "percent") return Unit::percent;
    throw UnknownUnit("unknown unit: " + std::string(s));
}

/**
 * @brief Immutable year-indexed sequence of finite real values.
 *
 * Years are consecutive integers starting at first_year(); value(i)
 * belongs to year first_year() + i. Gapped data must be split into
 * separate series before construction. All operations on series are
 * pure functions, so instances are safe to share across threads.
 */
class AnnualSeries {
public:
    AnnualSeries(std::string name, Unit unit, int first_year, std::vector<double> values)
        : name_(std::move(name)), unit_(unit), first_year_(first_year), values_(std::move(values)) {
        if (values_.empty()) throw TooShort("AnnualSeries '" + name_ + "' must have length >= 1");
        for (double v : values_) {
            if (!std::isfinite(v))
                throw NonFiniteValue("AnnualSeries '" + name_ + "' contains a non-finite value");
        }
    }

    [[nodiscard]] const std::string& name() const { return name_; }
    [[nodiscard]] Unit unit() const { return unit_; }
    [[nodiscard]] int first_year() const { return first_year_; }
    [[nodiscard]] int last_year() const { return first_year_ + static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const { return values_; }

    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }

    /// Value for a calendar year; throws YearOutOfRange when not covered.
    [[nodiscard]] double at_year(int year) const {
        if (!covers(year, year))
            throw YearOutOfRange("series '" + name_ + "' has no year " + std::to_string(year));
        return values_[static_cast<std::size_t>(year - first_year_)];
    }

    [[nodiscard]] bool covers(int from_year, int to_year) const {
        return from_year >= first_year_ && to_year <= last_year() && from_year <= to_year;
    }

    /// Sum of values over the inclusive year window [from_year, to_year].
    [[nodiscard]] double sum_over(int from_year, int to_year) const {
        if (!covers(from_year, to_year))
            throw YearOutOfRange("sum_over window outside series '" + name_ + "'");
        auto b = values_.begin() + (from_year - first_year_);
        auto e = values_.begin() + (to_year - first_year_) + 1;
        return std::accumulate(b, e, 0.0);
    }

    [[nodiscard]] AnnualSeries with_name(std::string new_name) const {
        return AnnualSeries(std::move(new_name), unit_, first_year_, values_);
    }

    friend bool operator==(const AnnualSeries& a, const AnnualSeries& b) {
        return a.first_year_ == b.first_year_ && a.unit_ == b.unit_ && a.values_ == b.values_;
    }

private:
    std::string name_;
    Unit unit_;
    int first_year_;
    std::vector<double> values_;
};

/**
 * @brief Running sum of an annual rate series from a fixed base year.
 *
 * value(base_year) equals the rate at base_year; the anchor is
 * conceptually 0 at base_year - 1. Cumulative inflation from a rate
 * series approximates the log price level up to a constant.
 */
class CumulativeSeries {
public:
    CumulativeSeries(std::string name, int base_year, std::vector<double> values)
        : series_(std::move(name), Unit::level, base_year, std::move(values)) {}

    [[nodiscard]] const std::string& name() const { return series_.name(); }
    [[nodiscard]] int base_year() const { return series_.first_year(); }
    [[nodiscard]] int first_year() const { return series_.first_year(); }
    [[nodiscard]] int last_year() const { return series_.last_year(); }
    [[nodiscard]] std::size_t size() const { return series_.size(); }
    [[nodiscard]] std::span<const double> values() const { return series_.values(); }
    [[nodiscard]] double operator[](std::size_t i) const { return series_[i]; }
    [[nodiscard]] double at_year(int year) const { return series_.at_year(year); }
    [[nodiscard]] bool covers(int a, int b) const { return series_.covers(a, b); }

    /// View as a plain level series (for unit-root tests on cumulatives).
    [[nodiscard]] const AnnualSeries& as_series() const { return series_; }

private:
    AnnualSeries series_;
};

/**
 * @brief Backward log-difference of a strictly positive level series.
 *
 * out(t) = ln x(t) - ln x(t-1). This discretization makes cumulative
 * rates telescope exactly back to log-level differences.
 */
[[nodiscard]] inline AnnualSeries log_change(const AnnualSeries& x) {
    if (x.unit() != Unit::level)
        throw UnitMismatch("log_change requires a level series, got " + std::string(unit_name(x.unit())));
    if (x.size() < 2) throw TooShort("log_change needs at least 2 values");
    for (double v : x.values())
        if (v <= 0.0) throw NonPositiveLevel("log_change requires strictly positive levels");
    std::vector<double> out(x.size() - 1);
    for (std::size_t i = 1; i < x.size(); ++i)
        out[i - 1] = std::log(x[i]) - std::log(x[i - 1]);
    return AnnualSeries(x.name() + "_dln", Unit::fraction_per_year, x.first_year() + 1, std::move(out));
}

/// Cumulative sum of an annual rate from base_year through the series end.
[[nodiscard]] inline CumulativeSeries cumulative(const AnnualSeries& r, int base_year) {
    if (r.unit() != Unit::fraction_per_year)
        throw UnitMismatch("cumulative expects a fraction-per-year series");
    if (base_year < r.first_year() || base_year > r.last_year())
        throw YearOutOfRange("cumulative base_year " + std::to_string(base_year) + " outside series range");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(r.last_year() - base_year + 1));
    double acc = 0.0;
    for (int y = base_year; y <= r.last_year(); ++y) {
        acc += r.at_year(y);
        out.push_back(acc);
    }
    return CumulativeSeries(r.name() + "_cum", base_year, std::move(out));
}

/**
 * @brief Centered moving average; output trimmed by (window-1)/2 at each end.
 *
 * Trimming (rather than padding) keeps smoothed comparisons free of
 * fabricated edge values.
 */
[[nodiscard]] inline AnnualSeries moving_average(const AnnualSeries& x, int window) {
    if (window < 1 || window % 2 == 0 || static_cast<std::size_t>(window) > x.size())
        throw BadWindow("moving_average window must be odd, >= 1 and <= length");
    const int half = (window - 1) / 2;
    const int n = static_cast<int>(x.size());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n - window + 1));
    for (int i = half; i + half < n; ++i) {
        double s = 0.0;
        for (int k = -half; k <= half; ++k) s += x[static_cast<std::size_t>(i + k)];
        out.push_back(s / window);
    }
    return AnnualSeries(x.name() + "_ma" + std::to_string(window), x.unit(),
                        x.first_year() + half, std::move(out));
}

/// Time shift: out(t) = x(t - lag); lag may be negative.
[[nodiscard]] inline AnnualSeries shift(const AnnualSeries& x, int lag) {
    return AnnualSeries(x.name(), x.unit(), x.first_year() + lag,
                        std::vector<double>(x.values().begin(), x.values().end()));
}

/**
 * @brief Pearson correlation of a(t) with b(t - lag) over their overlap.
 *
 * Requires at least 3 overlapping points and non-constant values on
 * the overlap for both series.
 */
[[nodiscard]] inline double pearson_r(const AnnualSeries& a, const AnnualSeries& b, int lag = 0) {
    const AnnualSeries bs = shift(b, lag);
    const int from = std::max(a.first_year(), bs.first_year());
    const int to = std::min(a.last_year(), bs.last_year());
    const int n = to - from + 1;
    if (n < 3) throw InsufficientOverlap("pearson_r needs >= 3 overlapping points");
    double ma = 0.0, mb = 0.0;
    for (int y = from; y <= to; ++y) {
        ma += a.at_year(y);
        mb += bs.at_year(y);
    }
    ma /= n;
    mb /= n;
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (int y = from; y <= to; ++y) {
        const double da = a.at_year(y) - ma;
        const double db = bs.at_year(y) - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0) throw ZeroVariance("pearson_r on a constant series");
    return sab / std::sqrt(saa * sbb);
}

/**
 * @brief Remove a step revision by redistributing it over the preceding years.
 *
 * Subtracts step_amount from every value at and after step_year, then adds
 * it back as a linear ramp over [first_year, step_year]. First and last
 * values are preserved exactly; only the path between them changes.
 */
[[nodiscard]] inline AnnualSeries redistribute_step(const AnnualSeries& x, int step_year, double step_amount) {
    if (x.unit() != Unit::level)
        throw UnitMismatch("redistribute_step expects a level series");
    if (step_year <= x.first_year() || step_year >= x.last_year())
        throw YearOutOfRange("step_year must lie strictly inside the series range");
    const double span = step_year - x.first_year();
    std::vector<double> out(x.values().begin(), x.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int y = x.first_year() + static_cast<int>(i);
        if (y >= step_year) out[i] -= step_amount;
        const double ramp = (y >= step_year) ? step_amount : step_amount * (y - x.first_year()) / span;
        out[i] += ramp;
    }
    return AnnualSeries(x.name(), x.unit(), x.first_year(), std::move(out));
}

}  // namespace pcfit
