#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pcfit/errors.hpp"
#include "pcfit/series.hpp"

namespace pcfit {

/**
 * @brief Parse a series CSV: header `year,value`, one `year,value` row per
 * line, `#`-prefixed comment lines ignored, UTF-8.
 *
 * Years must be consecutive integers. The declared unit is attached as-is;
 * unit normalization happens in load_series.
 */
[[nodiscard]] inline AnnualSeries read_series_csv(const std::filesystem::path& path,
                                                  const std::string& name, Unit unit) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open series file: " + path.string());
    std::string line;
    bool header_seen = false;
    int first_year = 0;
    int expected_year = 0;
    std::vector<double> values;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string_view sv(line);
        // strip leading whitespace
        while (!sv.empty() && (sv.front() == ' ' || sv.front() == '\t')) sv.remove_prefix(1);
        if (sv.empty() || sv.front() == '#') continue;
        if (!header_seen) {
            if (sv != "year,value")
                throw ParseError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected header 'year,value'");
            header_seen = true;
            continue;
        }
        const auto comma = sv.find(',');
        if (comma == std::string_view::npos)
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": expected 'year,value'");
        int year = 0;
        {
            const auto ystr = sv.substr(0, comma);
            auto [p, ec] = std::from_chars(ystr.data(), ystr.data() + ystr.size(), year);
            if (ec != std::errc{} || p != ystr.data() + ystr.size())
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad year");
        }
        double value = 0.0;
        {
            const auto vstr = std::string(sv.substr(comma + 1));
            try {
                std::size_t pos = 0;
                value = std::stod(vstr, &pos);
                while (pos < vstr.size() && (vstr[pos] == ' ' || vstr[pos] == '\t')) ++pos;
                if (pos != vstr.size()) throw std::invalid_argument("trailing garbage");
            } catch (const std::exception&) {
                throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad value");
            }
        }
        if (!std::isfinite(value))
            throw NonFiniteValue(path.string() + ":" + std::to_string(lineno) + ": non-finite value");
        if (values.empty()) {
            first_year = year;
        } else if (year != expected_year) {
            throw NonConsecutiveYears(path.string() + ":" + std::to_string(lineno) + ": year " +
                                      std::to_string(year) + " follows " + std::to_string(expected_year - 1));
        }
        expected_year = year + 1;
        values.push_back(value);
    }
    if (!header_seen) throw ParseError(path.string() + ": missing 'year,value' header");
    if (values.empty()) throw ParseError(path.string() + ": no data rows");
    return AnnualSeries(name, unit, first_year, std::move(values));
}

/// Shortest decimal representation that round-trips the exact double.
[[nodiscard]] inline std::string format_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

/// Serialize a series to the `year,value` CSV schema with full precision.
inline void write_series_csv(const AnnualSeries& s, std::ostream& out) {
    out << "year,value\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << (s.first_year() + static_cast<int>(i)) << ',' << format_double(s[i]) << '\n';
}

inline void write_series_csv(const AnnualSeries& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write series file: " + path.string());
    write_series_csv(s, out);
}

}  // namespace pcfit
