#pragma once

#include <array>
#include <istream>
#include <string>
#include <vector>

#include "weaver/time_series.hpp"

namespace weaver {

/// A named daily traffic pattern: one mean value per hour of the day, in
/// normalized traffic units. The value at hour h is the mean over [h, h+1).
struct DatasetRecord {
    std::string name;  // unique lowercase snake token
    std::array<double, 24> hourly{};
    std::string description;
};

/// The bundled registry (19 example patterns), sorted by name.
const std::vector<DatasetRecord>& builtin_datasets();

/// Sorted names of all bundled patterns.
std::vector<std::string> list_datasets();

/// Loads a bundled pattern as a series with x = 0..23 hours.
/// Unknown names raise a ValidationError listing near-matches.
TimeSeries load_dataset(const std::string& name);

/// Same lookup against an explicit registry (external records take priority
/// over bundled ones when names collide).
TimeSeries load_dataset(const std::string& name, const std::vector<DatasetRecord>& extra);

/// Parses the pattern text format: one record per line, `name,v0,...,v23`;
/// blank lines and lines starting with '#' are skipped.
std::vector<DatasetRecord> parse_patterns(std::istream& in, const std::string& origin);

/// Reads an external pattern file for extending the registry.
std::vector<DatasetRecord> load_patterns_file(const std::string& path);

TimeSeries to_series(const DatasetRecord& record);

}  // namespace weaver
