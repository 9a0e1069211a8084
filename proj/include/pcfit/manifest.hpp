#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcfit/csv.hpp"
#include "pcfit/errors.hpp"
#include "pcfit/series.hpp"

namespace pcfit {

/// Variable kind a manifest entry represents.
enum class Variable { cpi, dgdp, unemployment, labour_force, population };

[[nodiscard]] inline std::string_view variable_name(Variable v) {
    switch (v) {
        case Variable::cpi: return "cpi";
        case Variable::dgdp: return "dgdp";
        case Variable::unemployment: return "unemployment";
        case Variable::labour_force: return "labour_force";
        case Variable::population: return "population";
    }
    return "?";
}

[[nodiscard]] inline Variable variable_from_name(std::string_view s) {
    if (s == "cpi") return Variable::cpi;
    if (s == "dgdp") return Variable::dgdp;
    if (s == "unemployment") return Variable::unemployment;
    if (s == "labour_force") return Variable::labour_force;
    if (s == "population") return Variable::population;
    throw ParseError("unknown variable: " + std::string(s));
}

struct ManifestEntry {
    std::string series_id;
    std::string path;  // relative to the manifest file's directory
    Variable variable = Variable::cpi;
    std::string source;
    Unit unit = Unit::fraction_per_year;
    std::vector<std::string> sum_of;  // composite: sum of other entries' levels
};

/**
 * @brief Validated collection of series declarations loaded from a
 * manifest JSON file. Paths resolve relative to the manifest location.
 */
class DatasetManifest {
public:
    DatasetManifest() = default;

    DatasetManifest(std::filesystem::path base_dir, std::vector<ManifestEntry> entries)
        : base_dir_(std::move(base_dir)), entries_(std::move(entries)) {
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            auto [it, inserted] = index_.emplace(entries_[i].series_id, i);
            if (!inserted)
                throw DuplicateSeriesId("duplicate series_id: " + entries_[i].series_id);
        }
    }

    [[nodiscard]] const std::vector<ManifestEntry>& entries() const { return entries_; }
    [[nodiscard]] const std::filesystem::path& base_dir() const { return base_dir_; }

    [[nodiscard]] bool has(const std::string& series_id) const { return index_.count(series_id) > 0; }

    [[nodiscard]] const ManifestEntry& entry(const std::string& series_id) const {
        auto it = index_.find(series_id);
        if (it == index_.end()) throw MissingSeries("series_id not in manifest: " + series_id);
        return entries_[it->second];
    }

private:
    std::filesystem::path base_dir_;
    std::vector<ManifestEntry> entries_;
    std::map<std::string, std::size_t> index_;
};

/// Parse and validate a manifest JSON file.
[[nodiscard]] inline DatasetManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open manifest: " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("manifest " + path.string() + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw ParseError("manifest " + path.string() + ": top-level 'entries' array required");
    std::vector<ManifestEntry> entries;
    for (const auto& e : j["entries"]) {
        ManifestEntry m;
        try {
            m.series_id = e.at("series_id").get<std::string>();
            m.variable = variable_from_name(e.at("variable").get<std::string>());
            m.source = e.value("source", std::string{});
            m.unit = unit_from_name(e.at("unit").get<std::string>());
            if (e.contains("sum_of"))
                m.sum_of = e.at("sum_of").get<std::vector<std::string>>();
            else
                m.path = e.at("path").get<std::string>();
        } catch (const UnknownUnit&) {
            throw;
        } catch (const nlohmann::json::exception& ex) {
            throw ParseError("manifest " + path.string() + ": bad entry: " + ex.what());
        }
        entries.push_back(std::move(m));
    }
    return DatasetManifest(path.parent_path(), std::move(entries));
}

/**
 * @brief Load a series by id, normalizing units.
 *
 * Percent-declared series are divided by 100 so all rates share the
 * fraction-per-year unit; loading a fraction-unit file applies no scaling.
 * `sum_of` entries load each component and sum values over the common
 * year range (labour force supplied as unemployment + employment levels).
 */
[[nodiscard]] inline AnnualSeries load_series(const DatasetManifest& manifest, const std::string& series_id) {
    const ManifestEntry& e = manifest.entry(series_id);
    if (!e.sum_of.empty()) {
        std::optional<AnnualSeries> acc;
        for (const auto& part_id : e.sum_of) {
            if (part_id == series_id) throw ParseError("sum_of entry refers to itself: " + series_id);
            AnnualSeries part = load_series(manifest, part_id);
            if (!acc) {
                acc = part.with_name(series_id);
                continue;
            }
            if (part.unit() != acc->unit())
                throw UnitMismatch("sum_of components of '" + series_id + "' have mixed units");
            const int from = std::max(acc->first_year(), part.first_year());
            const int to = std::min(acc->last_year(), part.last_year());
            if (from > to) throw InsufficientOverlap("sum_of components of '" + series_id + "' do not overlap");
            std::vector<double> vals;
            vals.reserve(static_cast<std::size_t>(to - from + 1));
            for (int y = from; y <= to; ++y) vals.push_back(acc->at_year(y) + part.at_year(y));
            acc = AnnualSeries(series_id, acc->unit(), from, std::move(vals));
        }
        if (!acc) throw ParseError("sum_of entry '" + series_id + "' lists no components");
        return *acc;
    }
    const auto file = manifest.base_dir() / e.path;
    AnnualSeries raw = read_series_csv(file, series_id, e.unit);
    if (e.unit != Unit::percent) return raw;
    std::vector<double> scaled(raw.values().begin(), raw.values().end());
    for (double& v : scaled) v /= 100.0;
    return AnnualSeries(series_id, Unit::fraction_per_year, raw.first_year(), std::move(scaled));
}

}  // namespace pcfit
